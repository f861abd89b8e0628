//! Command-line front end: catalog browsing, verification suites, JSON
//! export and DOT subgroup-chain diagrams.
//!
//! Streams are kept separate so pipelines compose: the payload (text table,
//! JSON or DOT) goes to stdout or `--out`, the human summary goes to stderr.
//! Exit codes: 0 pass, 1 verification failure, 2 usage error. Identical
//! argv and `--seed` produce byte-identical JSON. The optional
//! `SEPCHARTS_THREADS` variable caps verification parallelism.

use crate::algebra::SpaceId;
use crate::calculus::{verify_all_laplacians, verify_laplacian, LaplacianReport};
use crate::charts::{
    chart_by_id, chart_catalog, chart_to_json, dual_path_check, reality_check, Chart,
    DualPathReport, NodeShape, RealityReport,
};
use crate::opsets::{verify_opset, OpsetReport};
use crate::separation::{recipe, verify_separation, SeparationReport, RECIPE_IDS};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

const ALL_SPACES: [SpaceId; 5] = [
    SpaceId::M4C,
    SpaceId::M3C,
    SpaceId::M4R,
    SpaceId::M31,
    SpaceId::M22,
];

#[derive(Parser)]
#[command(
    name = "sepcharts",
    about = "executable catalog of subgroup-type separable coordinates in flat 4-spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// space selector: m4c, m3c, m4r, m31 or m22
    #[arg(long)]
    space: Option<String>,
    /// chart id, e.g. C_M41
    #[arg(long)]
    chart: Option<String>,
    /// PRNG seed for all sampled checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// random samples per check
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// residual tolerance for sampled verification
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// output format: text, json or dot
    #[arg(long, default_value = "text")]
    format: String,
    /// write the payload to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// print the chart catalog
    List {
        #[command(flatten)]
        common: Common,
    },
    /// print one chart in detail
    Show {
        #[command(flatten)]
        common: Common,
    },
    /// run every verification suite for a chart or a space
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// check the tabulated Laplacians against the induced metric
    Laplacian {
        #[command(flatten)]
        common: Common,
    },
    /// exact commuting-operator checks
    Opsets {
        #[command(flatten)]
        common: Common,
    },
    /// build and verify the separated solutions
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// emit the subgroup-chain diagrams
    Chains {
        #[command(flatten)]
        common: Common,
    },
    /// export the JSON chart catalog
    Export {
        #[command(flatten)]
        common: Common,
    },
}

/// Runs the CLI against explicit streams; returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = match cli.cmd {
        Cmd::List { common } => cmd_list(&common, stdout, stderr),
        Cmd::Show { common } => cmd_show(&common, stdout, stderr),
        Cmd::Verify { common } => cmd_verify(&common, stdout, stderr),
        Cmd::Laplacian { common } => cmd_laplacian(&common, stdout, stderr),
        Cmd::Opsets { common } => cmd_opsets(&common, stdout, stderr),
        Cmd::Solve { common } => cmd_solve(&common, stdout, stderr),
        Cmd::Chains { common } => cmd_chains(&common, stdout, stderr),
        Cmd::Export { common } => cmd_export(&common, stdout, stderr),
    };
    match res {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

struct Usage(String);

fn spaces_of(common: &Common) -> Result<Vec<SpaceId>, Usage> {
    match &common.space {
        None => Ok(ALL_SPACES.to_vec()),
        Some(s) => SpaceId::parse(s)
            .map(|sp| vec![sp])
            .ok_or_else(|| Usage(format!("unknown space '{s}' (use m4c, m3c, m4r, m31, m22)"))),
    }
}

/// Charts selected by `--chart`/`--space`, catalog order.
fn charts_of(common: &Common) -> Result<Vec<Chart>, Usage> {
    if let Some(id) = &common.chart {
        let ch = chart_by_id(id).ok_or_else(|| Usage(format!("unknown chart id '{id}'")))?;
        if let Some(s) = &common.space {
            let sp = SpaceId::parse(s)
                .ok_or_else(|| Usage(format!("unknown space '{s}'")))?;
            if ch.space != sp {
                return Err(Usage(format!("chart '{id}' is not in space '{s}'")));
            }
        }
        return Ok(vec![ch]);
    }
    Ok(spaces_of(common)?
        .into_iter()
        .flat_map(chart_catalog)
        .collect())
}

fn emit(payload: &str, common: &Common, stdout: &mut dyn Write) -> i32 {
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, payload) {
                let _ = writeln!(stdout, "{payload}");
                eprintln!("error writing {}: {e}", path.display());
                return 1;
            }
            0
        }
        None => {
            let _ = writeln!(stdout, "{payload}");
            0
        }
    }
}

fn json_payload<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Maps items to reports on up to `SEPCHARTS_THREADS` worker threads
/// (default: available parallelism), preserving input order.
fn par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = std::env::var("SEPCHARTS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                *results[i].lock().unwrap() = Some(f(&items[i]));
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

// ---------------------------------------------------------------------------
// list / show / export
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ListRow {
    id: String,
    space: String,
    figure_ref: String,
    ignorable: usize,
    class: &'static str,
}

fn chart_class(ch: &Chart) -> &'static str {
    if ch.stub {
        "stub"
    } else if ch.nonmaximal {
        "nonmaximal"
    } else {
        "masa-chain"
    }
}

fn cmd_list(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let mut rows: Vec<ListRow> = charts_of(common)?
        .iter()
        .map(|ch| ListRow {
            id: ch.id.clone(),
            space: ch.space.to_string(),
            figure_ref: ch.figure_ref.clone(),
            ignorable: ch.ignorable_count(),
            class: chart_class(ch),
        })
        .collect();
    rows.sort_by(|a, b| (&a.space, &a.id).cmp(&(&b.space, &b.id)));
    let payload = if common.format == "json" {
        json_payload(&rows)
    } else {
        let mut t = format!(
            "{:<10} {:<6} {:<8} {:>9}  {}\n",
            "id", "space", "figure", "ignorable", "class"
        );
        for r in &rows {
            t.push_str(&format!(
                "{:<10} {:<6} {:<8} {:>9}  {}\n",
                r.id, r.space, r.figure_ref, r.ignorable, r.class
            ));
        }
        t.trim_end().to_string()
    };
    let _ = writeln!(stderr, "{} charts", rows.len());
    Ok(emit(&payload, common, stdout))
}

fn cmd_show(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let id = common
        .chart
        .as_ref()
        .ok_or_else(|| Usage("show requires --chart".into()))?;
    let ch = chart_by_id(id).ok_or_else(|| Usage(format!("unknown chart id '{id}'")))?;
    let j = chart_to_json(&ch);
    let payload = if common.format == "json" {
        json_payload(&j)
    } else {
        let mut t = format!(
            "{} ({}, {})\nchain: {}\nclass: {}\n",
            j.id,
            j.space,
            j.figure_ref,
            j.chain.join(" > "),
            chart_class(&ch),
        );
        t.push_str("params:\n");
        for p in &j.params {
            t.push_str(&format!(
                "  {} ({:?}{})\n",
                p.name,
                p.domain,
                if p.ignorable { ", ignorable" } else { "" }
            ));
        }
        if !j.closed_form.is_empty() {
            t.push_str("closed form:\n");
            for (i, s) in j.closed_form.iter().enumerate() {
                t.push_str(&format!("  x{} = {}\n", i + 1, s));
            }
        }
        t.trim_end().to_string()
    };
    let _ = writeln!(stderr, "{id}");
    Ok(emit(&payload, common, stdout))
}

fn cmd_export(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let mut charts = charts_of(common)?;
    charts.sort_by(|a, b| (a.space.to_string(), &a.id).cmp(&(b.space.to_string(), &b.id)));
    let out: Vec<_> = charts.iter().map(chart_to_json).collect();
    let payload = json_payload(&out);
    let _ = writeln!(stderr, "exported {} charts", out.len());
    Ok(emit(&payload, common, stdout))
}

// ---------------------------------------------------------------------------
// chains (DOT)
// ---------------------------------------------------------------------------

fn dot_shape(shape: NodeShape) -> (&'static str, bool) {
    match shape {
        NodeShape::Box => ("box", false),
        NodeShape::Ellipse => ("ellipse", false),
        NodeShape::Trapezium => ("trapezium", false),
        NodeShape::DashedEllipse => ("ellipse", true),
    }
}

fn chain_dot(ch: &Chart) -> String {
    let mut s = format!("digraph \"{}\" {{\n  rankdir=TB;\n", ch.id);
    for (i, node) in ch.chain.iter().enumerate() {
        let (shape, dashed) = dot_shape(node.shape);
        let extra = if dashed {
            ", style=dashed, real_form=\"semicircle\""
        } else {
            ""
        };
        s.push_str(&format!(
            "  n{} [label=\"{}\", shape={}{}];\n",
            i, node.label, shape, extra
        ));
    }
    for i in 1..ch.chain.len() {
        s.push_str(&format!("  n{} -> n{};\n", i - 1, i));
    }
    s.push('}');
    s
}

#[derive(Serialize)]
struct ChainJson {
    chart_id: String,
    chain: Vec<crate::charts::ChainNode>,
}

fn cmd_chains(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let mut charts = charts_of(common)?;
    charts.retain(|ch| !ch.chain.is_empty());
    charts.sort_by(|a, b| (a.space.to_string(), &a.id).cmp(&(b.space.to_string(), &b.id)));
    let payload = match common.format.as_str() {
        "json" => json_payload(
            &charts
                .iter()
                .map(|ch| ChainJson {
                    chart_id: ch.id.clone(),
                    chain: ch.chain.clone(),
                })
                .collect::<Vec<_>>(),
        ),
        "dot" => charts
            .iter()
            .map(chain_dot)
            .collect::<Vec<_>>()
            .join("\n"),
        _ => charts
            .iter()
            .map(|ch| {
                format!(
                    "{}: {}",
                    ch.id,
                    ch.chain
                        .iter()
                        .map(|n| n.label.as_str())
                        .collect::<Vec<_>>()
                        .join(" > ")
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let _ = writeln!(stderr, "{} chains", charts.len());
    Ok(emit(&payload, common, stdout))
}

// ---------------------------------------------------------------------------
// verification commands
// ---------------------------------------------------------------------------

/// Composite verification record for one chart: every suite that applies to
/// it, or the error that interrupted verification.
#[derive(Serialize)]
pub struct VerifyReport {
    pub chart_id: String,
    pub space: String,
    pub dual_path: Option<DualPathReport>,
    pub reality: Option<RealityReport>,
    pub laplacian: Option<LaplacianReport>,
    pub opsets: Option<OpsetReport>,
    pub separation: Option<SeparationReport>,
    pub error: Option<String>,
    pub pass: bool,
}

/// Runs every applicable suite for one chart.
pub fn verify_chart(ch: &Chart, points: usize, seed: u64, tol: f64) -> VerifyReport {
    let mut rep = VerifyReport {
        chart_id: ch.id.clone(),
        space: ch.space.to_string(),
        dual_path: None,
        reality: None,
        laplacian: None,
        opsets: None,
        separation: None,
        error: None,
        pass: false,
    };
    let mut pass = true;
    fn fail(pass: &mut bool, err_slot: &mut Option<String>, e: String) {
        *pass = false;
        if err_slot.is_none() {
            *err_slot = Some(e);
        }
    }

    match dual_path_check(ch, points, seed) {
        Ok(r) => {
            pass &= r.pass;
            rep.dual_path = Some(r);
        }
        Err(e) => fail(&mut pass, &mut rep.error, e.to_string()),
    }

    if !ch.space.is_complex() {
        match reality_check(ch, points.max(100), seed) {
            Ok(r) => {
                pass &= r.pass;
                rep.reality = Some(r);
            }
            Err(e) => fail(&mut pass, &mut rep.error, e.to_string()),
        }
    }

    if ch.laplacian_table.is_some() {
        match verify_laplacian(ch, points.max(20), 5, seed, 1e-8) {
            Ok(r) => {
                pass &= r.pass;
                rep.laplacian = Some(r);
            }
            Err(e) => fail(&mut pass, &mut rep.error, e.to_string()),
        }
    }

    let or = verify_opset(ch);
    pass &= or.pass;
    rep.opsets = Some(or);

    if let Some(sol) = recipe(&ch.id, seed) {
        match verify_separation(&sol, points.min(20), seed, tol) {
            Ok(r) => {
                pass &= r.pass;
                rep.separation = Some(r);
            }
            Err(e) => fail(&mut pass, &mut rep.error, e.to_string()),
        }
    }

    rep.pass = pass;
    rep
}

fn finish_reports<T: Serialize>(
    reports: Vec<T>,
    all_pass: bool,
    summary: &[String],
    common: &Common,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    for line in summary {
        let _ = writeln!(stderr, "{line}");
    }
    let payload = if common.format == "json" {
        json_payload(&reports)
    } else {
        summary.join("\n")
    };
    let code = emit(&payload, common, stdout);
    Ok(if code != 0 {
        code
    } else if all_pass {
        0
    } else {
        1
    })
}

fn cmd_verify(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let mut charts = charts_of(common)?;
    charts.retain(|ch| !ch.stub);
    charts.sort_by(|a, b| a.id.cmp(&b.id));
    let (points, seed, tol) = (common.points, common.seed, common.tol);
    let reports = par_map(charts, |ch| verify_chart(ch, points, seed, tol));
    let all = reports.iter().all(|r| r.pass);
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{:<10} {:<5} {}",
                r.chart_id,
                r.space,
                if r.pass { "pass" } else { "FAIL" }
            )
        })
        .collect();
    finish_reports(reports, all, &summary, common, stdout, stderr)
}

fn cmd_laplacian(
    common: &Common,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    let reports: Vec<LaplacianReport> = if let Some(id) = &common.chart {
        let ch = chart_by_id(id).ok_or_else(|| Usage(format!("unknown chart id '{id}'")))?;
        if ch.laplacian_table.is_none() {
            return Err(Usage(format!("chart '{id}' has no tabulated operator")));
        }
        vec![verify_laplacian(&ch, common.points.max(20), 5, common.seed, 1e-8)
            .map_err(|e| Usage(e.to_string()))?]
    } else {
        let mut v = verify_all_laplacians(common.points.max(20), 5, common.seed, 1e-8);
        if let Some(s) = &common.space {
            let sp = SpaceId::parse(s).ok_or_else(|| Usage(format!("unknown space '{s}'")))?;
            let keep: Vec<String> = chart_catalog(sp).iter().map(|c| c.id.clone()).collect();
            v.retain(|r| keep.contains(&r.chart_id));
        }
        v
    };
    let mut reports = reports;
    reports.sort_by(|a, b| a.chart_id.cmp(&b.chart_id));
    let all = reports.iter().all(|r| r.pass);
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            let mut line = format!(
                "{:<10} {:<10} max_dev {:.3e} {}",
                r.chart_id,
                r.table_key,
                r.max_dev,
                if r.pass { "pass" } else { "FAIL" }
            );
            if let Some(pd) = r.printed_dev {
                line.push_str(&format!("  (verbatim table deviates by {pd:.3e})"));
            }
            line
        })
        .collect();
    finish_reports(reports, all, &summary, common, stdout, stderr)
}

fn cmd_opsets(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let mut charts = charts_of(common)?;
    charts.retain(|ch| !ch.stub);
    charts.sort_by(|a, b| a.id.cmp(&b.id));
    let mut reports: Vec<OpsetReport> = charts.iter().map(verify_opset).collect();
    reports.sort_by(|a, b| a.chart_id.cmp(&b.chart_id));
    let all = reports.iter().all(|r| r.pass);
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{:<10} {} operators {}",
                r.chart_id,
                r.operators.len(),
                if r.pass { "pass" } else { "FAIL" }
            )
        })
        .collect();
    finish_reports(reports, all, &summary, common, stdout, stderr)
}

fn cmd_solve(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Usage> {
    let ids: Vec<&str> = match &common.chart {
        Some(id) => {
            if !RECIPE_IDS.contains(&id.as_str()) {
                return Err(Usage(format!(
                    "chart '{id}' has no separated-solution recipe (available: {})",
                    RECIPE_IDS.join(", ")
                )));
            }
            vec![RECIPE_IDS[RECIPE_IDS.iter().position(|r| *r == id).unwrap()]]
        }
        None => {
            let spaces = spaces_of(common)?;
            RECIPE_IDS
                .iter()
                .copied()
                .filter(|id| {
                    let ch = chart_by_id(id).expect("recipe chart");
                    spaces.contains(&ch.space)
                })
                .collect()
        }
    };
    let (points, seed, tol) = (common.points.min(20).max(3), common.seed, common.tol);
    let mut reports: Vec<SeparationReport> = par_map(ids, |id| {
        let sol = recipe(id, seed).expect("known recipe");
        verify_separation(&sol, points, seed, tol).unwrap_or_else(|e| SeparationReport {
            chart_id: id.to_string(),
            paper_eq: String::new(),
            constants: vec![],
            energy: [0.0, 0.0],
            samples: 0,
            ode_max: vec![],
            tabulated_min: vec![],
            pde_max: f64::INFINITY,
            note: Some(e.to_string()),
            pass: false,
        })
    });
    reports.sort_by(|a, b| a.chart_id.cmp(&b.chart_id));
    let all = reports.iter().all(|r| r.pass);
    let summary: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{:<10} pde_max {:.3e} {}",
                r.chart_id,
                r.pde_max,
                if r.pass { "pass" } else { "FAIL" }
            )
        })
        .collect();
    finish_reports(reports, all, &summary, common, stdout, stderr)
}
