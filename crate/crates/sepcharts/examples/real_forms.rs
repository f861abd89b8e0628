//! Real-form charts must land on real ambient points with the correct sign of
//! the invariant quadratic form, and the degenerate subalgebra acts with
//! lower-dimensional orbits than its generator count suggests. This example
//! checks both, the first numerically over random real parameter draws and
//! the second with exact rational rank computations.

use sepcharts::algebra::{masa_by_id, SpaceId};
use sepcharts::charts::{chart_catalog, orbit_rank, reality_check};
use sepcharts::exact::qi;

fn main() {
    println!("reality of the real-form charts, 100 samples each:");
    for space in [SpaceId::M4R, SpaceId::M31, SpaceId::M22] {
        for ch in chart_catalog(space) {
            if ch.stub {
                continue;
            }
            let rep = reality_check(&ch, 100, 5).expect("real form");
            println!(
                "  {:10} {:4}  max imaginary part {:.2e}  norm-sign ok {}  {}",
                ch.id,
                ch.space.to_string(),
                rep.max_imag,
                rep.norm_sign_ok,
                if rep.pass { "ok" } else { "FAIL" }
            );
        }
    }

    let m = masa_by_id("M47_2").expect("degenerate subalgebra");
    let point = vec![qi(2), qi(3), qi(5), qi(7)];
    println!(
        "\n{}: {} generators, orbit rank {} at a generic rational point",
        m.id,
        m.generators.len(),
        orbit_rank(&m, &point)
    );
}
