//! The classification diagrams of subgroup chains can be exported as Graphviz
//! DOT, one digraph per coordinate system. Node shapes follow the diagram
//! conventions: boxes for group levels, ellipses for compact factors, and
//! dashed ellipses (annotated with their real form) where only a semicircular
//! real slice of a complex factor appears. This example drives the embedded
//! CLI the same way the `sepcharts` binary does.

use sepcharts::cli;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["sepcharts", "chains", "--space", "m31", "--format", "dot"],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    std::process::exit(code);
}
