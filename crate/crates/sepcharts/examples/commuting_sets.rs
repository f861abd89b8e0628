//! Each coordinate system is characterized by a complete set of commuting
//! second-order operators: the wave operator plus the symmetry operators of
//! the subgroup chain. The operators live in the Weyl algebra over Gaussian
//! rationals, so the commutators here are exact zeros, not small numbers.

use sepcharts::algebra::SpaceId;
use sepcharts::charts::chart_catalog;
use sepcharts::opsets::{chart_operators, op_commutator, verify_opset, DiffOp, Poly};

fn main() {
    let chart = chart_catalog(SpaceId::M4C)
        .into_iter()
        .find(|c| c.id == "C_M41")
        .expect("catalog chart");

    let ops = chart_operators(&chart);
    println!("{}: {} symmetry operators", chart.id, ops.len());
    for (name, op) in &ops {
        println!("  {name}  =>  {op}");
    }
    for (i, (na, a)) in ops.iter().enumerate() {
        for (nb, b) in ops.iter().skip(i + 1) {
            let cm = op_commutator(a, b);
            println!("  [{na}, {nb}] zero: {}", cm.is_zero());
        }
    }

    // perturbing a single operator destroys the commuting structure
    let corrupt = ops[0].1.add(&DiffOp::from_poly(Poly::var(2)));
    let broken = op_commutator(&corrupt, &ops[1].1);
    println!("\nafter adding x3 to {}:", ops[0].0);
    println!("  commutator with {} = {broken}", ops[1].0);

    // the packaged verifier runs the same checks for the whole catalog
    println!("\nfull catalog:");
    for space in [
        SpaceId::M4C,
        SpaceId::M3C,
        SpaceId::M4R,
        SpaceId::M31,
        SpaceId::M22,
    ] {
        for ch in chart_catalog(space) {
            if ch.stub {
                continue;
            }
            let rep = verify_opset(&ch);
            println!(
                "  {:10} {:4}  {}",
                ch.id,
                ch.space.to_string(),
                if rep.pass { "commuting set verified" } else { "FAIL" }
            );
        }
    }
}
