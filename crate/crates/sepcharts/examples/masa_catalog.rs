//! Walk the catalog of maximal Abelian subalgebras and re-prove its claims
//! with exact arithmetic: every listed subalgebra really is Abelian, consists
//! of isometries, and is its own centralizer inside the full isometry algebra.

use sepcharts::algebra::{
    centralizer_check, commutator, is_isometry, masa_catalog, SpaceId,
};

fn main() {
    for space in [
        SpaceId::M4C,
        SpaceId::M3C,
        SpaceId::M4R,
        SpaceId::M31,
        SpaceId::M22,
    ] {
        let catalog = masa_catalog(space);
        println!("{space}: {} maximal Abelian subalgebras", catalog.len());
        for m in catalog {
            // pairwise brackets, checked as exact zero matrices
            let mut abelian = true;
            for (i, a) in m.generators.iter().enumerate() {
                for b in m.generators.iter().skip(i + 1) {
                    abelian &= commutator(a, b).expect("same space").mat.rank() == 0;
                }
            }
            let isometric = m
                .generators
                .iter()
                .all(|g| is_isometry(g, &m.metric));
            let cz = centralizer_check(&m);
            println!(
                "  {:8} dim {}  abelian={}  isometric={}  centralizer dim {} (maximal={}){}",
                m.id,
                m.generators.len(),
                abelian,
                isometric,
                cz.centralizer_dim,
                cz.is_maximal,
                if m.degenerate { "  [degenerate orbits]" } else { "" },
            );
            if let Some(parent) = &m.descends_from {
                println!("           descends from {parent}");
            }
        }
    }
}
