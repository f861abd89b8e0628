//! Every non-stub chart carries two independent descriptions of the same
//! embedding: a closed-form coordinate map and a product of one-parameter
//! group actions applied to a base point. This example samples random complex
//! parameter values and confirms the two paths land on the same ambient point,
//! and that the induced metric does not feel the ignorable parameters.

use sepcharts::algebra::SpaceId;
use sepcharts::charts::{
    chart_catalog, dual_path_check, eval_closed_form, eval_group_action, sample_params,
};
use sepcharts::rng::SplitMix64;

fn main() {
    // one chart in detail first
    let chart = chart_catalog(SpaceId::M4C)
        .into_iter()
        .find(|c| c.id == "C_M42")
        .expect("catalog chart");
    let mut rng = SplitMix64::new(7);
    let params = sample_params(&chart, &mut rng).expect("sampling");
    let closed = eval_closed_form(&chart, &params).expect("closed form");
    let action = eval_group_action(&chart, &params).expect("group action");
    println!("{} at a random parameter point:", chart.id);
    for (i, (a, b)) in closed.iter().zip(&action).enumerate() {
        println!(
            "  x{}  closed {:+.6}{:+.6}i   action {:+.6}{:+.6}i   |diff| {:.2e}",
            i + 1,
            a.re,
            a.im,
            b.re,
            b.im,
            (a - b).norm()
        );
    }

    // then the whole catalog at 100 samples per chart
    println!("\nfull catalog, 100 samples each:");
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
            let rep = dual_path_check(&ch, 100, 7).expect("sampling");
            println!(
                "  {:10} {:4}  path dev {:.2e}  ignorable-metric dev {:.2e}  {}",
                rep.chart_id,
                ch.space.to_string(),
                rep.max_rel_dev,
                rep.max_ignorable_dev,
                if rep.pass { "ok" } else { "MISMATCH" }
            );
        }
    }
}
