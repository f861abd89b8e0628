//! The executable coordinate-chart catalog: group-action recipes, closed-form
//! maps, parameter domains and real-form restrictions, with dual-path
//! evaluation (one-parameter exponentials vs. closed forms).
//!
//! Every chart stores both an ordered product of one-parameter subgroup
//! factors acting on the origin and an independent closed-form map written as
//! a jet-valued closure. Agreement of the two paths is the main correctness
//! oracle for the catalog.

use crate::algebra::{elem, one_param_exp, AlgebraElement, AlgebraError, Masa, MetricForm, SpaceId};
use crate::exact::{qi, qi_im, qimat_to_c, Qi, QiMat};
use crate::jet::Jet2;
use crate::rng::SplitMix64;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type C = Complex64;

/// Map from chart parameters (as jets) to ambient coordinates (as jets).
pub type ClosedMap = Arc<dyn Fn(&[Jet2]) -> Vec<Jet2> + Send + Sync>;

/// A sampling-margin constraint keeping evaluation points away from the
/// coordinate singularities of a chart (r = 0, sin c = 0, ...).
#[derive(Clone)]
pub struct Constraint {
    pub desc: &'static str,
    pub check: Arc<dyn Fn(&[C]) -> bool + Send + Sync>,
}

/// Declared per-parameter region. `Real` bounds may be infinite; the
/// sampling range of each parameter is stored separately and always finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Domain {
    Complex,
    Real { lo: f64, hi: f64 },
}

#[derive(Clone, Debug)]
pub struct ChartParam {
    pub name: &'static str,
    pub ignorable: bool,
    pub domain: Domain,
    /// finite range the deterministic sampler draws from (modulus range for
    /// complex parameters)
    pub sample: (f64, f64),
}

/// One factor of the ordered group action `g_1 g_2 ... g_n |0>`, stored
/// outermost first.
#[derive(Clone)]
pub struct ActionFactor {
    pub gen: AlgebraElement,
    pub param_index: usize,
    pub scale: C,
}

/// What the ambient K-norm of a chart point looks like.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum NormInvariant {
    /// <x, Kx> = coef * r^2 with r = params[0], independent of all other
    /// parameters (sphere/hyperboloid orbits)
    RSq { coef: f64 },
    /// <x, Kx> = 2 z r (null-plane orbits)
    TwoZR { z_index: usize, r_index: usize },
    NonConstant,
}

/// DOT shape assigned to a subgroup-chain node.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum NodeShape {
    /// Euclidean groups
    Box,
    /// orthogonal groups
    Ellipse,
    /// terminal maximal Abelian subgroup
    Trapezium,
    /// indefinite orthogonal real forms O(p,q)
    DashedEllipse,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainNode {
    pub label: String,
    pub shape: NodeShape,
}

#[derive(Clone)]
pub struct Chart {
    pub id: String,
    pub space: SpaceId,
    pub metric: MetricForm,
    pub action: Vec<ActionFactor>,
    pub params: Vec<ChartParam>,
    pub closed: Option<ClosedMap>,
    /// stringified closed-form expressions, one per ambient coordinate
    pub closed_form_str: Vec<&'static str>,
    pub constraints: Vec<Constraint>,
    /// key into the tabulated Laplacian coefficients (module `calculus`)
    pub laplacian_table: Option<&'static str>,
    pub figure_ref: String,
    pub chain: Vec<ChainNode>,
    pub paper_eq: String,
    /// chart from a nonmaximal Abelian subgroup chain
    pub nonmaximal: bool,
    /// referenced in the source but detail out of scope: no action/closed form
    pub stub: bool,
    pub norm: NormInvariant,
    /// catalog MASA this chart descends from, when there is one
    pub masa_id: Option<&'static str>,
}

impl Chart {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ignorable_count(&self) -> usize {
        self.params.iter().filter(|p| p.ignorable).count()
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}, {}, {})", self.id, self.space, self.figure_ref)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChartError {
    WrongParamCount { expected: usize, got: usize },
    OutOfDomain { param: &'static str, detail: String },
    StubChart { id: String },
    NotRealForm { id: String },
    CoordinateSingularity { id: String },
    Algebra(AlgebraError),
    SamplingFailed { id: String },
}

impl fmt::Display for ChartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartError::WrongParamCount { expected, got } => {
                write!(f, "expected {expected} parameters, got {got}")
            }
            ChartError::OutOfDomain { param, detail } => {
                write!(f, "parameter {param} out of domain: {detail}")
            }
            ChartError::StubChart { id } => {
                write!(f, "chart {id} is a stub (detail out of scope)")
            }
            ChartError::NotRealForm { id } => write!(f, "chart {id} is not a real form"),
            ChartError::CoordinateSingularity { id } => {
                write!(f, "coordinate singularity in chart {id}")
            }
            ChartError::Algebra(e) => write!(f, "{e}"),
            ChartError::SamplingFailed { id } => {
                write!(f, "could not sample a point in the domain of {id}")
            }
        }
    }
}

impl std::error::Error for ChartError {}

impl From<AlgebraError> for ChartError {
    fn from(e: AlgebraError) -> Self {
        ChartError::Algebra(e)
    }
}

// ---------------------------------------------------------------------------
// catalog construction helpers
// ---------------------------------------------------------------------------

pub(crate) fn cparam(name: &'static str, ignorable: bool) -> ChartParam {
    ChartParam {
        name,
        ignorable,
        domain: Domain::Complex,
        sample: (0.3, 2.0),
    }
}

fn rparam(
    name: &'static str,
    ignorable: bool,
    lo: f64,
    hi: f64,
    sample: (f64, f64),
) -> ChartParam {
    ChartParam {
        name,
        ignorable,
        domain: Domain::Real { lo, hi },
        sample,
    }
}

fn factor(gen: AlgebraElement, param_index: usize) -> ActionFactor {
    ActionFactor {
        gen,
        param_index,
        scale: C::new(1.0, 0.0),
    }
}

fn factor_scaled(gen: AlgebraElement, param_index: usize, scale: C) -> ActionFactor {
    ActionFactor {
        gen,
        param_index,
        scale,
    }
}

fn con<F>(desc: &'static str, f: F) -> Constraint
where
    F: Fn(&[C]) -> bool + Send + Sync + 'static,
{
    Constraint {
        desc,
        check: Arc::new(f),
    }
}

/// |params[i]| >= 0.1
fn c_mag(desc: &'static str, i: usize) -> Constraint {
    con(desc, move |p| p[i].norm() >= 0.1)
}

fn t(c: i64, i: usize, k: usize) -> (Qi, usize, usize) {
    (qi(c), i, k)
}

fn ti(c: i64, i: usize, k: usize) -> (Qi, usize, usize) {
    (qi_im(c), i, k)
}

fn node(label: &str, shape: NodeShape) -> ChainNode {
    ChainNode {
        label: label.into(),
        shape,
    }
}

fn chain(nodes: &[(&str, NodeShape)]) -> Vec<ChainNode> {
    nodes.iter().map(|(l, s)| node(l, *s)).collect()
}

/// Base chart with empty action/params, to be filled in by the catalog.
#[allow(clippy::too_many_arguments)]
fn base(
    id: &str,
    space: SpaceId,
    metric: MetricForm,
    paper_eq: &str,
    figure_ref: &str,
    norm: NormInvariant,
) -> Chart {
    Chart {
        id: id.into(),
        space,
        metric,
        action: Vec::new(),
        params: Vec::new(),
        closed: None,
        closed_form_str: Vec::new(),
        constraints: Vec::new(),
        laplacian_table: None,
        figure_ref: figure_ref.into(),
        chain: Vec::new(),
        paper_eq: paper_eq.into(),
        nonmaximal: false,
        stub: false,
        norm,
        masa_id: None,
    }
}

// ---------------------------------------------------------------------------
// closed forms, shared between complex charts and their real restrictions
// ---------------------------------------------------------------------------

fn cf_m41() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cos() * a.cos(),
            r * c.cos() * a.sin(),
            r * c.sin() * b.cos(),
            r * c.sin() * b.sin(),
        ]
    })
}

fn cf_m42() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        let (ea, ema) = (a.exp(), (-a).exp());
        let (ec, emc) = (c.exp(), (-c).exp());
        vec![
            r * ea * (ec + b * emc) * 0.5,
            r * ea * emc * 0.5,
            r * ema * emc * 0.5,
            r * ema * (ec - b * emc) * 0.5,
        ]
    })
}

fn cf_m43() -> ClosedMap {
    // params (z, r, a1, a2)
    Arc::new(|p: &[Jet2]| {
        let (z, r, a1, a2) = (p[0], p[1], p[2], p[3]);
        vec![z - r * (a1 * a1 + a2 * a2) * 0.5, r * a1, r * a2, r]
    })
}

fn cf_m44(beta: f64) -> ClosedMap {
    // params (z, r, a1, a2)
    Arc::new(move |p: &[Jet2]| {
        let (z, r, a1, a2) = (p[0], p[1], p[2], p[3]);
        let rp1 = r + 1.0;
        let rpb = r + beta;
        vec![
            z - rp1 * a1 * a1 * 0.5 - rpb * a2 * a2 * 0.5,
            rp1 * a1,
            rpb * a2,
            r,
        ]
    })
}

fn cf_m45(kappa: f64) -> ClosedMap {
    // params (z, r, a1, a2)
    Arc::new(move |p: &[Jet2]| {
        let (z, r, a1, a2) = (p[0], p[1], p[2], p[3]);
        let rpk = r + kappa;
        vec![z - rpk * a1 * a2 - a2 * a2 * 0.5, rpk * a2, rpk * a1 + a2, r]
    })
}

fn cf_m46() -> ClosedMap {
    // params (z, a1, a2, r)
    Arc::new(|p: &[Jet2]| {
        let (z, a1, a2, r) = (p[0], p[1], p[2], p[3]);
        vec![a1 + z * z * 0.5, a2 - r * z, r, z]
    })
}

fn cf_4c1() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cos() * b.cos() * a.cos(),
            r * c.cos() * b.cos() * a.sin(),
            r * c.cos() * b.sin(),
            r * c.sin(),
        ]
    })
}

fn cf_4c2() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        let i = C::new(0.0, 1.0);
        let eib = (b * i).exp();
        let half_a2 = a * a * 0.5;
        vec![
            r * c.cos() * (b.cos() - half_a2 * eib),
            r * c.cos() * a * eib,
            r * c.cos() * (b.sin() - half_a2 * eib * i),
            r * c.sin(),
        ]
    })
}

fn cf_4c3() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        let i = C::new(0.0, 1.0);
        let eic = (c * i).exp();
        let half_b2 = b * b * 0.5;
        vec![
            r * (c.cos() - half_b2 * eic),
            r * b * eic * a.cos(),
            r * b * eic * a.sin(),
            r * (c.sin() - half_b2 * eic * i),
        ]
    })
}

fn cf_4c4() -> ClosedMap {
    // params (r, c, a1, a2)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a1, a2) = (p[0], p[1], p[2], p[3]);
        let i = C::new(0.0, 1.0);
        let eic = (c * i).exp();
        let half_s = (a1 * a1 + a2 * a2) * 0.5;
        vec![
            r * (c.cos() - half_s * eic),
            r * a1 * eic,
            r * a2 * eic,
            r * (c.sin() - half_s * eic * i),
        ]
    })
}

fn cf_3c_k0() -> ClosedMap {
    // params (z, r, a)
    Arc::new(|p: &[Jet2]| {
        let (z, r, a) = (p[0], p[1], p[2]);
        vec![z - r * a * a * 0.5, -(a * r), r]
    })
}

fn cf_3c_k1() -> ClosedMap {
    // params (z, r, a)
    Arc::new(|p: &[Jet2]| {
        let (z, r, a) = (p[0], p[1], p[2]);
        vec![z + a * r + a * a * a * (1.0 / 6.0), r + a * a * 0.5, -a]
    })
}

fn cf_m31_cyl() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.sinh() * a.cos(),
            r * c.sinh() * a.sin(),
            r * c.cosh() * b.sinh(),
            r * c.cosh() * b.cosh(),
        ]
    })
}

fn cf_e22_a() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cosh() * a.cos(),
            r * c.cosh() * a.sin(),
            r * c.sinh() * b.cos(),
            r * c.sinh() * b.sin(),
        ]
    })
}

fn cf_e22_b() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cosh() * a.cosh(),
            r * c.sinh() * b.sinh(),
            r * c.cosh() * a.sinh(),
            r * c.sinh() * b.cosh(),
        ]
    })
}

fn cf_e22_c() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        let s = 1.0 / 2f64.sqrt();
        let (ea, ema) = (a.exp(), (-a).exp());
        let (ch, sh) = (c.cosh(), c.sinh());
        let (cb, sb) = (b.cos(), b.sin());
        vec![
            r * ea * (ch * cb - sh * sb) * s,
            r * ea * (ch * sb + sh * cb) * s,
            r * ema * (ch * cb + sh * sb) * s,
            r * ema * (ch * sb - sh * cb) * s,
        ]
    })
}

fn cf_e22_e() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        let s = 1.0 / 2f64.sqrt();
        let (ec, emc) = (c.exp(), (-c).exp());
        let (ca, sa) = (a.cos(), a.sin());
        vec![
            r * (ec * ca + b * emc * sa) * s,
            r * (ec * sa - b * emc * ca) * s,
            r * emc * ca * s,
            r * emc * sa * s,
        ]
    })
}

fn cf_e22_na() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cosh() * b.cosh() * a.cos(),
            r * c.cosh() * b.cosh() * a.sin(),
            r * c.cosh() * b.sinh(),
            r * c.sinh(),
        ]
    })
}

fn cf_e22_nb() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        vec![
            r * c.cosh() * b.cos() * a.cosh(),
            r * c.cosh() * b.sin(),
            r * c.cosh() * b.cos() * a.sinh(),
            r * c.sinh(),
        ]
    })
}

fn cf_e22_nc() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        let eb = b.exp();
        let half_a2 = a * a * 0.5;
        vec![
            r * c.cosh() * (b.cosh() - half_a2 * eb),
            r * c.cosh() * a * eb,
            r * c.cosh() * (b.sinh() + half_a2 * eb),
            r * c.sinh(),
        ]
    })
}

fn cf_e22_nd() -> ClosedMap {
    // params (r, c, b, a)
    Arc::new(|p: &[Jet2]| {
        let (r, c, b, a) = (p[0], p[1], p[2], p[3]);
        let ec = c.exp();
        let half_b2 = b * b * 0.5;
        vec![
            r * (c.cosh() - half_b2 * ec),
            r * b * ec * a.cosh(),
            r * b * ec * a.sinh(),
            r * (c.sinh() + half_b2 * ec),
        ]
    })
}

fn cf_e22_ne() -> ClosedMap {
    // params (r, c, a, b)
    Arc::new(|p: &[Jet2]| {
        let (r, c, a, b) = (p[0], p[1], p[2], p[3]);
        let ec = c.exp();
        let half = (a * a - b * b) * 0.5;
        vec![
            r * (c.cosh() - half * ec),
            r * a * ec,
            r * b * ec,
            r * (c.sinh() + half * ec),
        ]
    })
}

// ---------------------------------------------------------------------------
// shared action builders
// ---------------------------------------------------------------------------

fn act_m41() -> Vec<ActionFactor> {
    vec![
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 2),
        factor(elem(4, "-E34+E43", &[t(-1, 3, 4), t(1, 4, 3)]), 3),
        factor(elem(4, "-E13+E31", &[t(-1, 1, 3), t(1, 3, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ]
}

fn act_m42() -> Vec<ActionFactor> {
    vec![
        factor(
            elem(
                4,
                "E11+E22-E33-E44",
                &[t(1, 1, 1), t(1, 2, 2), t(-1, 3, 3), t(-1, 4, 4)],
            ),
            2,
        ),
        factor(elem(4, "E12-E43", &[t(1, 1, 2), t(-1, 4, 3)]), 3),
        factor(
            elem(
                4,
                "E11-E22-E33+E44",
                &[t(1, 1, 1), t(-1, 2, 2), t(-1, 3, 3), t(1, 4, 4)],
            ),
            1,
        ),
        factor_scaled(
            elem(
                4,
                "E15+E25+E35+E45",
                &[t(1, 1, 5), t(1, 2, 5), t(1, 3, 5), t(1, 4, 5)],
            ),
            0,
            C::new(0.5, 0.0),
        ),
    ]
}

fn act_m43() -> Vec<ActionFactor> {
    vec![
        factor(elem(4, "-E12+E24", &[t(-1, 1, 2), t(1, 2, 4)]), 2),
        factor(elem(4, "-E13+E34", &[t(-1, 1, 3), t(1, 3, 4)]), 3),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
        factor(elem(4, "E45", &[t(1, 4, 5)]), 1),
    ]
}

fn act_m44() -> Vec<ActionFactor> {
    // beta = 1/2 structural default
    vec![
        factor(
            elem(4, "-E12+E24+E25", &[t(-1, 1, 2), t(1, 2, 4), t(1, 2, 5)]),
            2,
        ),
        factor(
            elem(
                4,
                "-E13+E34+(1/2)E35",
                &[t(-1, 1, 3), t(1, 3, 4), (crate::algebra::default_beta(), 3, 5)],
            ),
            3,
        ),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
        factor(elem(4, "E45", &[t(1, 4, 5)]), 1),
    ]
}

fn act_m45() -> Vec<ActionFactor> {
    // kappa = 0 structural default
    vec![
        factor(elem(4, "-E12+E34", &[t(-1, 1, 2), t(1, 3, 4)]), 2),
        factor(
            elem(4, "-E13+E24+E35", &[t(-1, 1, 3), t(1, 2, 4), t(1, 3, 5)]),
            3,
        ),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
        factor(elem(4, "E45", &[t(1, 4, 5)]), 1),
    ]
}

fn act_m46() -> Vec<ActionFactor> {
    vec![
        factor(
            elem(4, "E14-E23+E45", &[t(1, 1, 4), t(-1, 2, 3), t(1, 4, 5)]),
            0,
        ),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 1),
        factor(elem(4, "E25", &[t(1, 2, 5)]), 2),
        factor(elem(4, "E35", &[t(1, 3, 5)]), 3),
    ]
}

fn act_4c1() -> Vec<ActionFactor> {
    vec![
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 3),
        factor(elem(4, "-E13+E31", &[t(-1, 1, 3), t(1, 3, 1)]), 2),
        factor(elem(4, "-E14+E41", &[t(-1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ]
}

fn x1_gen() -> AlgebraElement {
    elem(
        4,
        "-E12+E21+iE24-iE42",
        &[t(-1, 1, 2), t(1, 2, 1), ti(1, 2, 4), ti(-1, 4, 2)],
    )
}

fn x2_gen() -> AlgebraElement {
    elem(
        4,
        "-E13+E31+iE34-iE43",
        &[t(-1, 1, 3), t(1, 3, 1), ti(1, 3, 4), ti(-1, 4, 3)],
    )
}

fn mans_cparams() -> Vec<ChartParam> {
    vec![
        cparam("z", true),
        cparam("r", false),
        cparam("a1", true),
        cparam("a2", true),
    ]
}

fn mans_rparams() -> Vec<ChartParam> {
    vec![
        rparam("z", true, f64::NEG_INFINITY, f64::INFINITY, (-2.0, 2.0)),
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("a1", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("a2", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ]
}

const M43_STRS: [&str; 4] = ["z - r(a1^2+a2^2)/2", "r a1", "r a2", "r"];
const M44_STRS: [&str; 4] = [
    "z - (r+1)a1^2/2 - (r+b)a2^2/2",
    "(r+1) a1",
    "(r+b) a2",
    "r",
];
const M45_STRS: [&str; 4] = ["z - r a1 a2 - a2^2/2", "r a2", "r a1 + a2", "r"];
const M46_STRS: [&str; 4] = ["a1 + z^2/2", "a2 - r z", "r", "z"];

// ---------------------------------------------------------------------------
// the catalog
// ---------------------------------------------------------------------------

/// All charts of the given space. Counts: M4C 10, M3C 2, M4R 2,
/// M31 3 + 6 stubs, M22 9 + 5 nonmaximal.
pub fn chart_catalog(space: SpaceId) -> Vec<Chart> {
    match space {
        SpaceId::M4C => m4c_charts(),
        SpaceId::M3C => m3c_charts(),
        SpaceId::M4R => m4r_charts(),
        SpaceId::M31 => m31_charts(),
        SpaceId::M22 => m22_charts(),
    }
}

fn m4c_charts() -> Vec<Chart> {
    let e4c = ("E(4,C)", NodeShape::Box);
    let o4c = ("O(4,C)", NodeShape::Ellipse);
    let mut out = Vec::new();

    // complex cylindrical
    let mut ch = base(
        "C_M41",
        SpaceId::M4C,
        MetricForm::identity(4),
        "3.V4100",
        "Fig 1a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_m41();
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("a", true),
        cparam("b", true),
    ];
    ch.closed = Some(cf_m41());
    ch.closed_form_str = vec![
        "r cos c cos a",
        "r cos c sin a",
        "r sin c cos b",
        "r sin c sin b",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|sin c| >= 0.1", |p| p[1].sin().norm() >= 0.1),
        con("|cos c| >= 0.1", |p| p[1].cos().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_M41");
    ch.chain = chain(&[e4c, o4c, ("O(2,C)xO(2,C)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M41_0");
    out.push(ch);

    let mut ch = base(
        "C_M42",
        SpaceId::M4C,
        MetricForm::antidiag_blocks(),
        "3.V4200",
        "Fig 1b",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_m42();
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("a", true),
        cparam("b", true),
    ];
    ch.closed = Some(cf_m42());
    ch.closed_form_str = vec![
        "r e^a (e^c + b e^-c)/2",
        "r e^a e^-c / 2",
        "r e^-a e^-c / 2",
        "r e^-a (e^c - b e^-c)/2",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.laplacian_table = Some("lap_M42");
    ch.chain = chain(&[e4c, o4c, ("exp M42(0)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M42_0");
    out.push(ch);

    let mut ch = base(
        "C_M43",
        SpaceId::M4C,
        MetricForm::light_cone(),
        "3.V431",
        "Fig 1c",
        NormInvariant::TwoZR {
            z_index: 0,
            r_index: 1,
        },
    );
    ch.action = act_m43();
    ch.params = mans_cparams();
    ch.closed = Some(cf_m43());
    ch.closed_form_str = M43_STRS.to_vec();
    ch.constraints = vec![c_mag("|r| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_M43");
    ch.chain = chain(&[e4c, ("exp M43(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M43_1");
    out.push(ch);

    let mut ch = base(
        "C_M44",
        SpaceId::M4C,
        MetricForm::light_cone(),
        "3.V441",
        "Fig 1d",
        NormInvariant::NonConstant,
    );
    ch.action = act_m44();
    ch.params = mans_cparams();
    ch.closed = Some(cf_m44(0.5));
    ch.closed_form_str = M44_STRS.to_vec();
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 1),
        con("|r+1| >= 0.1", |p| (p[1] + 1.0).norm() >= 0.1),
        con("|r+b| >= 0.1", |p| (p[1] + 0.5).norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_M44");
    ch.chain = chain(&[e4c, ("exp M44(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M44_1");
    out.push(ch);

    let mut ch = base(
        "C_M45",
        SpaceId::M4C,
        MetricForm::full_antidiag(),
        "3.V451",
        "Fig 1e",
        NormInvariant::NonConstant,
    );
    ch.action = act_m45();
    ch.params = mans_cparams();
    ch.closed = Some(cf_m45(0.0));
    ch.closed_form_str = M45_STRS.to_vec();
    ch.constraints = vec![c_mag("|r+k| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_M45");
    ch.chain = chain(&[e4c, ("exp M45(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M45_1");
    out.push(ch);

    let mut ch = base(
        "C_M46",
        SpaceId::M4C,
        MetricForm::antidiag_blocks(),
        "3.V462",
        "Fig 1f",
        NormInvariant::NonConstant,
    );
    ch.action = act_m46();
    ch.params = vec![
        cparam("z", true),
        cparam("a1", true),
        cparam("a2", true),
        cparam("r", false),
    ];
    ch.closed = Some(cf_m46());
    ch.closed_form_str = M46_STRS.to_vec();
    ch.laplacian_table = Some("lap_M46");
    ch.chain = chain(&[e4c, ("exp M46(2)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M46_2");
    out.push(ch);

    // nonmaximal chains
    let mut ch = base(
        "C_4C1",
        SpaceId::M4C,
        MetricForm::identity(4),
        "3.4C1",
        "Fig 2a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_4c1();
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("b", false),
        cparam("a", true),
    ];
    ch.closed = Some(cf_4c1());
    ch.closed_form_str = vec![
        "r cos c cos b cos a",
        "r cos c cos b sin a",
        "r cos c sin b",
        "r sin c",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|cos c| >= 0.1", |p| p[1].cos().norm() >= 0.1),
        con("|cos b| >= 0.1", |p| p[2].cos().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_4C1");
    ch.chain = chain(&[
        e4c,
        o4c,
        ("O(3,C)", NodeShape::Ellipse),
        ("O(2,C)", NodeShape::Ellipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "C_4C2",
        SpaceId::M4C,
        MetricForm::identity(4),
        "3.4C2",
        "Fig 2b",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(
            elem(
                4,
                "-E12+E21+iE23-iE32",
                &[t(-1, 1, 2), t(1, 2, 1), ti(1, 2, 3), ti(-1, 3, 2)],
            ),
            3,
        ),
        factor(elem(4, "-E13+E31", &[t(-1, 1, 3), t(1, 3, 1)]), 2),
        factor(elem(4, "-E14+E41", &[t(-1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("b", false),
        cparam("a", true),
    ];
    ch.closed = Some(cf_4c2());
    ch.closed_form_str = vec![
        "r cos c (cos b - a^2 e^ib / 2)",
        "r cos c a e^ib",
        "r cos c (sin b - i a^2 e^ib / 2)",
        "r sin c",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|cos c| >= 0.1", |p| p[1].cos().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_4C2");
    ch.chain = chain(&[
        e4c,
        o4c,
        ("O(3,C)", NodeShape::Ellipse),
        ("E(1,C)", NodeShape::Box),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "C_4C3",
        SpaceId::M4C,
        MetricForm::identity(4),
        "3.4C3",
        "Fig 2c",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "-E23+E32", &[t(-1, 2, 3), t(1, 3, 2)]), 3),
        factor(x1_gen(), 2),
        factor(elem(4, "-E14+E41", &[t(-1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("b", false),
        cparam("a", true),
    ];
    ch.closed = Some(cf_4c3());
    ch.closed_form_str = vec![
        "r (cos c - b^2 e^ic / 2)",
        "r b e^ic cos a",
        "r b e^ic sin a",
        "r (sin c - i b^2 e^ic / 2)",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0), c_mag("|b| >= 0.1", 2)];
    ch.laplacian_table = Some("lap_4C3");
    ch.chain = chain(&[
        e4c,
        o4c,
        ("E(2,C)", NodeShape::Box),
        ("O(2,C)", NodeShape::Ellipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "C_4C4",
        SpaceId::M4C,
        MetricForm::identity(4),
        "3.4C4",
        "Fig 2d",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(x1_gen(), 2),
        factor(x2_gen(), 3),
        factor(elem(4, "-E14+E41", &[t(-1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        cparam("r", false),
        cparam("c", false),
        cparam("a1", true),
        cparam("a2", true),
    ];
    ch.closed = Some(cf_4c4());
    ch.closed_form_str = vec![
        "r (cos c - (a1^2+a2^2) e^ic / 2)",
        "r a1 e^ic",
        "r a2 e^ic",
        "r (sin c - i (a1^2+a2^2) e^ic / 2)",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.laplacian_table = Some("lap_4C4");
    ch.chain = chain(&[
        e4c,
        o4c,
        ("E(2,C)", NodeShape::Box),
        ("E(1,C)xE(1,C)", NodeShape::Box),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    out
}

fn m3c_charts() -> Vec<Chart> {
    let e3c = ("E(3,C)", NodeShape::Box);
    let mut out = Vec::new();

    let mut ch = base(
        "C_3C_k0",
        SpaceId::M3C,
        MetricForm::light_cone_3(),
        "3.eqM3C_kapa0",
        "-",
        NormInvariant::TwoZR {
            z_index: 0,
            r_index: 1,
        },
    );
    ch.action = vec![
        factor(elem(3, "E12-E23", &[t(1, 1, 2), t(-1, 2, 3)]), 2),
        factor(elem(3, "E14", &[t(1, 1, 4)]), 0),
        factor(elem(3, "E34", &[t(1, 3, 4)]), 1),
    ];
    ch.params = vec![cparam("z", true), cparam("r", false), cparam("a", true)];
    ch.closed = Some(cf_3c_k0());
    ch.closed_form_str = vec!["z - r a^2/2", "-a r", "r"];
    ch.constraints = vec![c_mag("|r| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_3C_k0");
    ch.chain = chain(&[e3c, ("exp M3(k=0)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M3_k0");
    out.push(ch);

    let mut ch = base(
        "C_3C_k1",
        SpaceId::M3C,
        MetricForm::light_cone_3(),
        "3.eqM3C_kapa1",
        "-",
        NormInvariant::NonConstant,
    );
    ch.action = vec![
        factor(
            elem(3, "E12-E23-E34", &[t(1, 1, 2), t(-1, 2, 3), t(-1, 3, 4)]),
            2,
        ),
        factor(elem(3, "E14", &[t(1, 1, 4)]), 0),
        factor(elem(3, "E24", &[t(1, 2, 4)]), 1),
    ];
    ch.params = vec![cparam("z", true), cparam("r", false), cparam("a", true)];
    ch.closed = Some(cf_3c_k1());
    ch.closed_form_str = vec!["z + a r + a^3/6", "r + a^2/2", "-a"];
    ch.laplacian_table = Some("lap_3C_k1");
    ch.chain = chain(&[e3c, ("exp M3(k=1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M3_k1");
    out.push(ch);

    out
}

fn m4r_charts() -> Vec<Chart> {
    let e4 = ("E(4)", NodeShape::Box);
    let o4 = ("O(4)", NodeShape::Ellipse);
    let mut out = Vec::new();

    let mut ch = base(
        "R4_cyl",
        SpaceId::M4R,
        MetricForm::identity(4),
        "3.V4100",
        "Fig 1a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_m41();
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, 0.0, PI / 2.0, (0.15, 1.42)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
        rparam("b", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
    ];
    ch.closed = Some(cf_m41());
    ch.closed_form_str = vec![
        "r cos c cos a",
        "r cos c sin a",
        "r sin c cos b",
        "r sin c sin b",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|sin c| >= 0.1", |p| p[1].sin().norm() >= 0.1),
        con("|cos c| >= 0.1", |p| p[1].cos().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_M41");
    ch.chain = chain(&[e4, o4, ("O(2)xO(2)", NodeShape::Trapezium)]);
    ch.masa_id = Some("R4_cartan");
    out.push(ch);

    let mut ch = base(
        "R4_sph",
        SpaceId::M4R,
        MetricForm::identity(4),
        "3.4C1",
        "Fig 2a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_4c1();
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, 0.0, PI, (0.15, 1.42)),
        rparam("b", false, 0.0, PI, (0.15, 1.42)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
    ];
    ch.closed = Some(cf_4c1());
    ch.closed_form_str = vec![
        "r cos c cos b cos a",
        "r cos c cos b sin a",
        "r cos c sin b",
        "r sin c",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|cos c| >= 0.1", |p| p[1].cos().norm() >= 0.1),
        con("|cos b| >= 0.1", |p| p[2].cos().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_4C1");
    ch.chain = chain(&[
        e4,
        o4,
        ("O(3)", NodeShape::Ellipse),
        ("O(2)", NodeShape::Ellipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    out
}

fn m31_charts() -> Vec<Chart> {
    let e31 = ("E(3,1)", NodeShape::Box);
    let o31 = ("O(3,1)", NodeShape::DashedEllipse);
    let mut out = Vec::new();

    let mut ch = base(
        "M31_cyl",
        SpaceId::M31,
        MetricForm::diag_minkowski(),
        "4.1",
        "Fig 3a",
        NormInvariant::RSq { coef: -1.0 },
    );
    ch.action = vec![
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 2),
        factor(elem(4, "E34+E43", &[t(1, 3, 4), t(1, 4, 3)]), 3),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E45", &[t(1, 4, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, 0.0, f64::INFINITY, (0.15, 1.5)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
        rparam("b", true, 0.0, f64::INFINITY, (0.15, 1.5)),
    ];
    ch.closed = Some(cf_m31_cyl());
    ch.closed_form_str = vec![
        "r sinh c cos a",
        "r sinh c sin a",
        "r cosh c sinh b",
        "r cosh c cosh b",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|sinh c| >= 0.1", |p| p[1].sinh().norm() >= 0.1),
    ];
    ch.chain = chain(&[e31, o31, ("O(2)xO(1,1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M31_cartan");
    out.push(ch);

    let mut ch = base(
        "M31_M43",
        SpaceId::M31,
        MetricForm::light_cone(),
        "3.V431",
        "Fig 3b",
        NormInvariant::TwoZR {
            z_index: 0,
            r_index: 1,
        },
    );
    ch.action = act_m43();
    ch.params = mans_rparams();
    ch.closed = Some(cf_m43());
    ch.closed_form_str = M43_STRS.to_vec();
    ch.constraints = vec![c_mag("|r| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_M43");
    ch.chain = chain(&[e31, ("exp M43(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M31_M43");
    out.push(ch);

    let mut ch = base(
        "M31_M44",
        SpaceId::M31,
        MetricForm::light_cone(),
        "3.V441",
        "Fig 3c",
        NormInvariant::NonConstant,
    );
    ch.action = act_m44();
    ch.params = mans_rparams();
    ch.closed = Some(cf_m44(0.5));
    ch.closed_form_str = M44_STRS.to_vec();
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 1),
        con("|r+1| >= 0.1", |p| (p[1] + 1.0).norm() >= 0.1),
        con("|r+b| >= 0.1", |p| (p[1] + 0.5).norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_M44");
    ch.chain = chain(&[e31, ("exp M44(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M31_M44");
    out.push(ch);

    // the six H^3 chain stubs: the source lists the chains but defers the
    // hyperboloid coordinate details to the literature
    let stubs: [(&str, &str, &[(&str, NodeShape)]); 6] = [
        (
            "M31_H3_a",
            "Fig 4a",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("O(3)", NodeShape::Ellipse),
                ("O(2)", NodeShape::Ellipse),
            ],
        ),
        (
            "M31_H3_b",
            "Fig 4b",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("O(2,1)", NodeShape::DashedEllipse),
                ("O(2)", NodeShape::Ellipse),
            ],
        ),
        (
            "M31_H3_c",
            "Fig 4c",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("O(2,1)", NodeShape::DashedEllipse),
                ("O(1,1)", NodeShape::DashedEllipse),
            ],
        ),
        (
            "M31_H3_d",
            "Fig 4d",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("O(2,1)", NodeShape::DashedEllipse),
                ("E(1)", NodeShape::Box),
            ],
        ),
        (
            "M31_H3_e",
            "Fig 4e",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("E(2)", NodeShape::Box),
                ("O(2)", NodeShape::Ellipse),
            ],
        ),
        (
            "M31_H3_f",
            "Fig 4f",
            &[
                ("E(3,1)", NodeShape::Box),
                ("O(3,1)", NodeShape::DashedEllipse),
                ("E(2)", NodeShape::Box),
                ("E(1)xE(1)", NodeShape::Box),
            ],
        ),
    ];
    for (id, fig, nodes) in stubs {
        let mut ch = base(
            id,
            SpaceId::M31,
            MetricForm::diag_minkowski(),
            "4.2",
            fig,
            NormInvariant::NonConstant,
        );
        ch.chain = chain(nodes);
        ch.stub = true;
        ch.nonmaximal = true;
        out.push(ch);
    }

    out
}

fn m22_charts() -> Vec<Chart> {
    let e22 = ("E(2,2)", NodeShape::Box);
    let o22 = ("O(2,2)", NodeShape::DashedEllipse);
    let mut out = Vec::new();

    let mut ch = base(
        "E22_a",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.4",
        "Fig 5a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 2),
        factor(elem(4, "-E34+E43", &[t(-1, 3, 4), t(1, 4, 3)]), 3),
        factor(elem(4, "E13+E31", &[t(1, 1, 3), t(1, 3, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, 0.0, f64::INFINITY, (0.15, 1.5)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
        rparam("b", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
    ];
    ch.closed = Some(cf_e22_a());
    ch.closed_form_str = vec![
        "r cosh c cos a",
        "r cosh c sin a",
        "r sinh c cos b",
        "r sinh c sin b",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|sinh c| >= 0.1", |p| p[1].sinh().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_E22_a");
    ch.chain = chain(&[e22, o22, ("O(2)xO(2)", NodeShape::Trapezium)]);
    ch.masa_id = Some("CartanCompact");
    out.push(ch);

    let mut ch = base(
        "E22_b",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.10",
        "Fig 5b",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "E13+E31", &[t(1, 1, 3), t(1, 3, 1)]), 2),
        factor(elem(4, "E24+E42", &[t(1, 2, 4), t(1, 4, 2)]), 3),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, 0.0, f64::INFINITY, (0.15, 1.5)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("b", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_e22_b());
    ch.closed_form_str = vec![
        "r cosh c cosh a",
        "r sinh c sinh b",
        "r cosh c sinh a",
        "r sinh c cosh b",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|sinh c| >= 0.1", |p| p[1].sinh().norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_E22_b");
    ch.chain = chain(&[e22, o22, ("O(1,1)xO(1,1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("CartanNoncompact");
    out.push(ch);

    let mut ch = base(
        "E22_c",
        SpaceId::M22,
        MetricForm::antidiag_blocks(),
        "5.16",
        "Fig 5c",
        NormInvariant::RSq { coef: 1.0 },
    );
    let inv_sqrt2 = C::new(1.0 / 2f64.sqrt(), 0.0);
    ch.action = vec![
        factor(
            elem(
                4,
                "E11+E22-E33-E44",
                &[t(1, 1, 1), t(1, 2, 2), t(-1, 3, 3), t(-1, 4, 4)],
            ),
            2,
        ),
        factor(
            elem(
                4,
                "-E12+E21-E34+E43",
                &[t(-1, 1, 2), t(1, 2, 1), t(-1, 3, 4), t(1, 4, 3)],
            ),
            3,
        ),
        factor(
            elem(
                4,
                "E12+E21-E34-E43",
                &[t(1, 1, 2), t(1, 2, 1), t(-1, 3, 4), t(-1, 4, 3)],
            ),
            1,
        ),
        factor_scaled(
            elem(4, "E15+E35", &[t(1, 1, 5), t(1, 3, 5)]),
            0,
            inv_sqrt2,
        ),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("b", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
    ];
    ch.closed = Some(cf_e22_c());
    ch.closed_form_str = vec![
        "r e^a (cosh c cos b - sinh c sin b)/sqrt2",
        "r e^a (cosh c sin b + sinh c cos b)/sqrt2",
        "r e^-a (cosh c cos b + sinh c sin b)/sqrt2",
        "r e^-a (cosh c sin b - sinh c cos b)/sqrt2",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.laplacian_table = Some("lap_E22_c");
    ch.chain = chain(&[e22, o22, ("O(2)xO(1,1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("CartanMixed");
    out.push(ch);

    let mut ch = base(
        "E22_d",
        SpaceId::M22,
        MetricForm::antidiag_blocks(),
        "3.V4200",
        "Fig 5d",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = act_m42();
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (-1.2, 1.2)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("b", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_m42());
    ch.closed_form_str = vec![
        "r e^a (e^c + b e^-c)/2",
        "r e^a e^-c / 2",
        "r e^-a e^-c / 2",
        "r e^-a (e^c - b e^-c)/2",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.laplacian_table = Some("lap_M42");
    ch.chain = chain(&[e22, o22, ("exp M1(0)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M1_0");
    out.push(ch);

    let mut ch = base(
        "E22_e",
        SpaceId::M22,
        MetricForm::antidiag_blocks(),
        "5.527M20",
        "Fig 5e",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(
            elem(
                4,
                "-E12+E21-E34+E43",
                &[t(-1, 1, 2), t(1, 2, 1), t(-1, 3, 4), t(1, 4, 3)],
            ),
            2,
        ),
        factor(elem(4, "E14-E23", &[t(1, 1, 4), t(-1, 2, 3)]), 3),
        factor(
            elem(
                4,
                "E11+E22-E33-E44",
                &[t(1, 1, 1), t(1, 2, 2), t(-1, 3, 3), t(-1, 4, 4)],
            ),
            1,
        ),
        factor_scaled(
            elem(4, "E15+E35", &[t(1, 1, 5), t(1, 3, 5)]),
            0,
            inv_sqrt2,
        ),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (-1.2, 1.2)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
        rparam("b", true, 0.0, f64::INFINITY, (0.3, 2.0)),
    ];
    ch.closed = Some(cf_e22_e());
    ch.closed_form_str = vec![
        "r (e^c cos a + b e^-c sin a)/sqrt2",
        "r (e^c sin a - b e^-c cos a)/sqrt2",
        "r e^-c cos a / sqrt2",
        "r e^-c sin a / sqrt2",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.laplacian_table = Some("lap_E22_e");
    ch.chain = chain(&[e22, o22, ("exp M2(0)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M2_0");
    out.push(ch);

    // k0 = 1 and k0 = 2 MANS charts: same forms as the complex case with all
    // variables real
    let mut ch = base(
        "E22_f",
        SpaceId::M22,
        MetricForm::light_cone(),
        "3.V431",
        "Fig 5f",
        NormInvariant::TwoZR {
            z_index: 0,
            r_index: 1,
        },
    );
    ch.action = act_m43();
    ch.params = mans_rparams();
    ch.closed = Some(cf_m43());
    ch.closed_form_str = M43_STRS.to_vec();
    ch.constraints = vec![c_mag("|r| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_M43");
    ch.chain = chain(&[e22, ("exp M43(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M22_M43");
    out.push(ch);

    let mut ch = base(
        "E22_g",
        SpaceId::M22,
        MetricForm::light_cone(),
        "3.V441",
        "Fig 5g",
        NormInvariant::NonConstant,
    );
    ch.action = act_m44();
    ch.params = mans_rparams();
    ch.closed = Some(cf_m44(0.5));
    ch.closed_form_str = M44_STRS.to_vec();
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 1),
        con("|r+1| >= 0.1", |p| (p[1] + 1.0).norm() >= 0.1),
        con("|r+b| >= 0.1", |p| (p[1] + 0.5).norm() >= 0.1),
    ];
    ch.laplacian_table = Some("lap_M44");
    ch.chain = chain(&[e22, ("exp M44(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M22_M44");
    out.push(ch);

    let mut ch = base(
        "E22_h",
        SpaceId::M22,
        MetricForm::full_antidiag(),
        "3.V451",
        "Fig 5h",
        NormInvariant::NonConstant,
    );
    ch.action = act_m45();
    ch.params = mans_rparams();
    ch.closed = Some(cf_m45(0.0));
    ch.closed_form_str = M45_STRS.to_vec();
    ch.constraints = vec![c_mag("|r+k| >= 0.1", 1)];
    ch.laplacian_table = Some("lap_M45");
    ch.chain = chain(&[e22, ("exp M45(1)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M22_M45");
    out.push(ch);

    let mut ch = base(
        "E22_i",
        SpaceId::M22,
        MetricForm::antidiag_blocks(),
        "3.V462",
        "Fig 5i",
        NormInvariant::NonConstant,
    );
    ch.action = act_m46();
    ch.params = vec![
        rparam("z", true, f64::NEG_INFINITY, f64::INFINITY, (-2.0, 2.0)),
        rparam("a1", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("a2", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("r", false, f64::NEG_INFINITY, f64::INFINITY, (0.3, 2.0)),
    ];
    ch.closed = Some(cf_m46());
    ch.closed_form_str = M46_STRS.to_vec();
    ch.laplacian_table = Some("lap_M46");
    ch.chain = chain(&[e22, ("exp M46(2)", NodeShape::Trapezium)]);
    ch.masa_id = Some("M22_M46");
    out.push(ch);

    // the five nonmaximal chains with the diagonal split metric
    let mut ch = base(
        "E22_na",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.531",
        "Fig 6a",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 3),
        factor(elem(4, "E13+E31", &[t(1, 1, 3), t(1, 3, 1)]), 2),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (0.15, 1.5)),
        rparam("b", false, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("a", true, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
    ];
    ch.closed = Some(cf_e22_na());
    ch.closed_form_str = vec![
        "r cosh c cosh b cos a",
        "r cosh c cosh b sin a",
        "r cosh c sinh b",
        "r sinh c",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.chain = chain(&[
        e22,
        o22,
        ("O(2,1)", NodeShape::DashedEllipse),
        ("O(2)", NodeShape::Ellipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "E22_nb",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.532",
        "Fig 6b",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "E13+E31", &[t(1, 1, 3), t(1, 3, 1)]), 3),
        factor(elem(4, "-E12+E21", &[t(-1, 1, 2), t(1, 2, 1)]), 2),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (0.15, 1.5)),
        rparam("b", false, 0.0, 2.0 * PI, (0.0, 2.0 * PI)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_e22_nb());
    ch.closed_form_str = vec![
        "r cosh c cos b cosh a",
        "r cosh c sin b",
        "r cosh c cos b sinh a",
        "r sinh c",
    ];
    ch.constraints = vec![
        c_mag("|r| >= 0.1", 0),
        con("|cos b| >= 0.1", |p| p[2].cos().norm() >= 0.1),
    ];
    ch.chain = chain(&[
        e22,
        o22,
        ("O(2,1)", NodeShape::DashedEllipse),
        ("O(1,1)", NodeShape::DashedEllipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "E22_nc",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.533",
        "Fig 6c",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(
            elem(
                4,
                "-E12+E21+E23+E32",
                &[t(-1, 1, 2), t(1, 2, 1), t(1, 2, 3), t(1, 3, 2)],
            ),
            3,
        ),
        factor(elem(4, "E13+E31", &[t(1, 1, 3), t(1, 3, 1)]), 2),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (0.15, 1.5)),
        rparam("b", false, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_e22_nc());
    ch.closed_form_str = vec![
        "r cosh c (cosh b - a^2 e^b / 2)",
        "r cosh c a e^b",
        "r cosh c (sinh b + a^2 e^b / 2)",
        "r sinh c",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.chain = chain(&[
        e22,
        o22,
        ("O(2,1)", NodeShape::DashedEllipse),
        ("E(1)", NodeShape::Box),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "E22_nd",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.534",
        "Fig 6d",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(elem(4, "E23+E32", &[t(1, 2, 3), t(1, 3, 2)]), 3),
        factor(
            elem(
                4,
                "-E12+E21+E24+E42",
                &[t(-1, 1, 2), t(1, 2, 1), t(1, 2, 4), t(1, 4, 2)],
            ),
            2,
        ),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (-1.2, 1.2)),
        rparam("b", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_e22_nd());
    ch.closed_form_str = vec![
        "r (cosh c - b^2 e^c / 2)",
        "r b e^c cosh a",
        "r b e^c sinh a",
        "r (sinh c + b^2 e^c / 2)",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0), c_mag("|b| >= 0.1", 2)];
    ch.chain = chain(&[
        e22,
        o22,
        ("E(1,1)", NodeShape::Box),
        ("O(1,1)", NodeShape::DashedEllipse),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    let mut ch = base(
        "E22_ne",
        SpaceId::M22,
        MetricForm::diag_split(),
        "5.535",
        "Fig 6e",
        NormInvariant::RSq { coef: 1.0 },
    );
    ch.action = vec![
        factor(
            elem(
                4,
                "-E12+E21+E24+E42",
                &[t(-1, 1, 2), t(1, 2, 1), t(1, 2, 4), t(1, 4, 2)],
            ),
            2,
        ),
        factor(
            elem(
                4,
                "E13+E31+E34-E43",
                &[t(1, 1, 3), t(1, 3, 1), t(1, 3, 4), t(-1, 4, 3)],
            ),
            3,
        ),
        factor(elem(4, "E14+E41", &[t(1, 1, 4), t(1, 4, 1)]), 1),
        factor(elem(4, "E15", &[t(1, 1, 5)]), 0),
    ];
    ch.params = vec![
        rparam("r", false, 0.0, f64::INFINITY, (0.3, 2.0)),
        rparam("c", false, f64::NEG_INFINITY, f64::INFINITY, (-1.2, 1.2)),
        rparam("a", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
        rparam("b", true, f64::NEG_INFINITY, f64::INFINITY, (-1.5, 1.5)),
    ];
    ch.closed = Some(cf_e22_ne());
    ch.closed_form_str = vec![
        "r (cosh c - (a^2-b^2) e^c / 2)",
        "r a e^c",
        "r b e^c",
        "r (sinh c + (a^2-b^2) e^c / 2)",
    ];
    ch.constraints = vec![c_mag("|r| >= 0.1", 0)];
    ch.chain = chain(&[
        e22,
        o22,
        ("E(1,1)", NodeShape::Box),
        ("E(1)xE(1)", NodeShape::Box),
    ]);
    ch.nonmaximal = true;
    out.push(ch);

    out
}

pub fn chart_by_id(id: &str) -> Option<Chart> {
    for space in [
        SpaceId::M4C,
        SpaceId::M3C,
        SpaceId::M4R,
        SpaceId::M31,
        SpaceId::M22,
    ] {
        if let Some(c) = chart_catalog(space).into_iter().find(|c| c.id == id) {
            return Some(c);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

fn check_params(chart: &Chart, params: &[C]) -> Result<(), ChartError> {
    if chart.stub {
        return Err(ChartError::StubChart {
            id: chart.id.clone(),
        });
    }
    if params.len() != chart.params.len() {
        return Err(ChartError::WrongParamCount {
            expected: chart.params.len(),
            got: params.len(),
        });
    }
    for (p, v) in chart.params.iter().zip(params) {
        if let Domain::Real { lo, hi } = p.domain {
            if v.im.abs() > 1e-9 {
                return Err(ChartError::OutOfDomain {
                    param: p.name,
                    detail: format!("imaginary part {} on a real-form chart", v.im),
                });
            }
            if v.re < lo - 1e-9 || v.re > hi + 1e-9 {
                return Err(ChartError::OutOfDomain {
                    param: p.name,
                    detail: format!("{} outside [{lo}, {hi}]", v.re),
                });
            }
        }
    }
    Ok(())
}

/// Closed-form evaluation with full second-order jets: the returned vector
/// holds ambient coordinates with gradients and Hessians with respect to the
/// chart parameters.
pub fn eval_jets(chart: &Chart, params: &[C]) -> Result<Vec<Jet2>, ChartError> {
    check_params(chart, params)?;
    let closed = chart.closed.as_ref().ok_or_else(|| ChartError::StubChart {
        id: chart.id.clone(),
    })?;
    let seeds: Vec<Jet2> = params
        .iter()
        .enumerate()
        .map(|(i, &v)| Jet2::var(i, v))
        .collect();
    Ok(closed(&seeds))
}

/// The printed closed-form map.
pub fn eval_closed_form(chart: &Chart, params: &[C]) -> Result<Vec<C>, ChartError> {
    Ok(eval_jets(chart, params)?.into_iter().map(|j| j.v).collect())
}

/// The ordered product of one-parameter subgroup exponentials applied to the
/// origin.
pub fn eval_group_action(chart: &Chart, params: &[C]) -> Result<Vec<C>, ChartError> {
    check_params(chart, params)?;
    if chart.action.is_empty() {
        return Err(ChartError::StubChart {
            id: chart.id.clone(),
        });
    }
    let n = chart.dim();
    let mut v = vec![C::zero(); n + 1];
    v[n] = C::new(1.0, 0.0);
    // action is stored outermost first; apply to the origin innermost first
    for f in chart.action.iter().rev() {
        let m = one_param_exp(&f.gen, f.scale * params[f.param_index])?;
        v = m.mul_vec(&v);
    }
    v.truncate(n);
    Ok(v)
}

/// J[i][j] = dx_i / du_j.
pub fn jacobian(chart: &Chart, params: &[C]) -> Result<Vec<Vec<C>>, ChartError> {
    let jets = eval_jets(chart, params)?;
    let n = chart.dim();
    Ok((0..n)
        .map(|i| (0..n).map(|j| jets[i].d[j]).collect())
        .collect())
}

/// g = J^T K J in chart coordinates.
pub fn induced_metric(chart: &Chart, params: &[C]) -> Result<Vec<Vec<C>>, ChartError> {
    let jets = eval_jets(chart, params)?;
    Ok(metric_from_jets(chart, &jets))
}

/// The induced metric from an already-computed jet evaluation.
pub fn metric_from_jets(chart: &Chart, jets: &[Jet2]) -> Vec<Vec<C>> {
    let n = chart.dim();
    let k = qimat_to_c(&chart.metric.mat);
    let mut g = vec![vec![C::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = C::zero();
            for p in 0..n {
                for q in 0..n {
                    let kpq = k[(p, q)];
                    if kpq.norm() == 0.0 {
                        continue;
                    }
                    s += kpq * jets[p].d[i] * jets[q].d[j];
                }
            }
            g[i][j] = s;
        }
    }
    g
}

/// First derivatives of the induced metric: dg[k][i][j] = d g_ij / d u_k,
/// assembled from the same second-order jets.
pub fn metric_derivatives_from_jets(chart: &Chart, jets: &[Jet2]) -> Vec<Vec<Vec<C>>> {
    let n = chart.dim();
    let k = qimat_to_c(&chart.metric.mat);
    let mut dg = vec![vec![vec![C::zero(); n]; n]; n];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = C::zero();
                for p in 0..n {
                    for q in 0..n {
                        let kpq = k[(p, q)];
                        if kpq.norm() == 0.0 {
                            continue;
                        }
                        s += kpq * (jets[p].h[m][i] * jets[q].d[j] + jets[p].d[i] * jets[q].h[m][j]);
                    }
                }
                dg[m][i][j] = s;
            }
        }
    }
    dg
}

/// <x, K x> of the chart point.
pub fn norm_invariant(chart: &Chart, params: &[C]) -> Result<C, ChartError> {
    let x = eval_closed_form(chart, params)?;
    let n = chart.dim();
    let k = qimat_to_c(&chart.metric.mat);
    let mut s = C::zero();
    for p in 0..n {
        for q in 0..n {
            s += k[(p, q)] * x[p] * x[q];
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// deterministic domain sampling
// ---------------------------------------------------------------------------

/// Draws a parameter tuple from the chart domain, retrying until all
/// singular-margin constraints hold.
pub fn sample_params(chart: &Chart, rng: &mut SplitMix64) -> Result<Vec<C>, ChartError> {
    if chart.stub {
        return Err(ChartError::StubChart {
            id: chart.id.clone(),
        });
    }
    for _ in 0..1000 {
        let params: Vec<C> = chart
            .params
            .iter()
            .map(|p| match p.domain {
                Domain::Complex => {
                    let m = rng.uniform(p.sample.0, p.sample.1);
                    let phi = rng.uniform(0.0, 2.0 * PI);
                    C::new(m * phi.cos(), m * phi.sin())
                }
                Domain::Real { .. } => C::new(rng.uniform(p.sample.0, p.sample.1), 0.0),
            })
            .collect();
        if chart.constraints.iter().all(|c| (c.check)(&params)) {
            return Ok(params);
        }
    }
    Err(ChartError::SamplingFailed {
        id: chart.id.clone(),
    })
}

// ---------------------------------------------------------------------------
// real-form checks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct RealityReport {
    pub chart_id: String,
    pub samples: usize,
    pub max_imag: f64,
    pub norm_sign_ok: bool,
    pub max_norm_dev: f64,
    pub pass: bool,
}

/// Samples the stated real ranges and checks that all ambient coordinates are
/// real and that the K-norm matches the chart's orbit type.
pub fn reality_check(
    chart: &Chart,
    n_samples: usize,
    seed: u64,
) -> Result<RealityReport, ChartError> {
    if chart.space.is_complex() {
        return Err(ChartError::NotRealForm {
            id: chart.id.clone(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut max_imag: f64 = 0.0;
    let mut norm_sign_ok = true;
    let mut max_norm_dev: f64 = 0.0;
    for _ in 0..n_samples {
        let params = sample_params(chart, &mut rng)?;
        let x = eval_closed_form(chart, &params)?;
        for xi in &x {
            max_imag = max_imag.max(xi.im.abs());
        }
        let nv = norm_invariant(chart, &params)?;
        match chart.norm {
            NormInvariant::RSq { coef } => {
                let expect = coef * params[0].re * params[0].re;
                max_norm_dev = max_norm_dev.max((nv.re - expect).abs());
                if expect != 0.0 && nv.re.signum() != expect.signum() {
                    norm_sign_ok = false;
                }
            }
            NormInvariant::TwoZR { z_index, r_index } => {
                let expect = 2.0 * params[z_index].re * params[r_index].re;
                max_norm_dev = max_norm_dev.max((nv.re - expect).abs());
            }
            NormInvariant::NonConstant => {}
        }
    }
    let pass = max_imag <= 1e-10 && norm_sign_ok && max_norm_dev <= 1e-9;
    Ok(RealityReport {
        chart_id: chart.id.clone(),
        samples: n_samples,
        max_imag,
        norm_sign_ok,
        max_norm_dev,
        pass,
    })
}

// ---------------------------------------------------------------------------
// dual-path agreement
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct DualPathReport {
    pub chart_id: String,
    pub samples: usize,
    /// max relative deviation between the group-action and closed-form paths
    pub max_rel_dev: f64,
    /// max relative change of the induced metric under a fresh draw of an
    /// ignorable parameter
    pub max_ignorable_dev: f64,
    pub pass: bool,
}

/// Checks that the two evaluation paths agree at random domain samples
/// (relative tolerance `1e-11`) and that the induced metric does not depend
/// on any ignorable parameter (relative tolerance `1e-10`).
pub fn dual_path_check(
    chart: &Chart,
    n_samples: usize,
    seed: u64,
) -> Result<DualPathReport, ChartError> {
    let mut rng = SplitMix64::new(seed);
    let mut max_rel: f64 = 0.0;
    let mut max_ign: f64 = 0.0;
    for _ in 0..n_samples {
        let p = sample_params(chart, &mut rng)?;
        let xc = eval_closed_form(chart, &p)?;
        let xg = eval_group_action(chart, &p)?;
        let num: f64 = xc.iter().zip(&xg).map(|(a, b)| (a - b).norm()).sum();
        let den: f64 = 1.0 + xc.iter().map(|z| z.norm()).sum::<f64>();
        max_rel = max_rel.max(num / den);

        let g0 = induced_metric(chart, &p)?;
        let gnorm: f64 = g0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .sum::<f64>()
            .max(1.0);
        for (i, prm) in chart.params.iter().enumerate() {
            if !prm.ignorable {
                continue;
            }
            let mut shifted = p.clone();
            shifted[i] = match prm.domain {
                Domain::Complex => {
                    let m = rng.uniform(prm.sample.0, prm.sample.1);
                    let phi = rng.uniform(0.0, 2.0 * PI);
                    C::new(m * phi.cos(), m * phi.sin())
                }
                Domain::Real { .. } => C::new(rng.uniform(prm.sample.0, prm.sample.1), 0.0),
            };
            let g1 = induced_metric(chart, &shifted)?;
            let diff: f64 = g0
                .iter()
                .flatten()
                .zip(g1.iter().flatten())
                .map(|(a, b)| (a - b).norm())
                .sum();
            max_ign = max_ign.max(diff / gnorm);
        }
    }
    let pass = max_rel <= 1e-11 && max_ign <= 1e-10;
    Ok(DualPathReport {
        chart_id: chart.id.clone(),
        samples: n_samples,
        max_rel_dev: max_rel,
        max_ignorable_dev: max_ign,
        pass,
    })
}

// ---------------------------------------------------------------------------
// degenerate-orbit rank
// ---------------------------------------------------------------------------

/// Dimension of the subspace of the tangent space spanned by the generator
/// vector fields of a MASA at the given ambient point, computed exactly.
pub fn orbit_rank(masa: &Masa, point: &[Qi]) -> usize {
    let n = masa.metric.dim();
    assert_eq!(point.len(), n);
    let mut rows = Vec::new();
    for g in &masa.generators {
        // vector field at x: linear part times x plus the translation
        let lin = g.linear_part();
        let mut affine = vec![Qi::zero(); n + 1];
        affine[..n].clone_from_slice(point);
        affine[n] = qi(1);
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = Qi::zero();
            for j in 0..n {
                s = s + lin[(i, j)].clone() * point[j].clone();
            }
            s = s + g.mat[(i, n)].clone();
            row.push(s);
        }
        rows.push(row);
    }
    QiMat::from_rows(rows).rank()
}

// ---------------------------------------------------------------------------
// decomposable trivial factors
// ---------------------------------------------------------------------------

/// A 1- or 2-dimensional factor chart entering the decomposable coordinate
/// systems (Cartesian, polar, hyperbolic polar).
#[derive(Clone)]
pub struct FactorChart {
    pub id: &'static str,
    pub dim: usize,
    pub description: &'static str,
    pub closed: ClosedMap,
}

/// The three indecomposable low-dimensional factors every decomposable
/// system is built from.
pub fn decomposition_factors() -> Vec<FactorChart> {
    vec![
        FactorChart {
            id: "factor_cartesian",
            dim: 1,
            description: "one Cartesian coordinate on a 1-dimensional factor",
            closed: Arc::new(|p: &[Jet2]| vec![p[0]]),
        },
        FactorChart {
            id: "factor_polar",
            dim: 2,
            description: "polar coordinates on a definite 2-dimensional factor",
            closed: Arc::new(|p: &[Jet2]| vec![p[0] * p[1].cos(), p[0] * p[1].sin()]),
        },
        FactorChart {
            id: "factor_hyperbolic_polar",
            dim: 2,
            description: "hyperbolic polar coordinates on an indefinite 2-dimensional factor",
            closed: Arc::new(|p: &[Jet2]| vec![p[0] * p[1].cosh(), p[0] * p[1].sinh()]),
        },
    ]
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct ChartParamJson {
    pub name: String,
    pub ignorable: bool,
    pub domain: Domain,
}

#[derive(Serialize)]
pub struct ChartJson {
    pub id: String,
    pub space: String,
    pub figure_ref: String,
    pub chain: Vec<String>,
    pub params: Vec<ChartParamJson>,
    pub closed_form: Vec<String>,
    pub nonmaximal: bool,
    pub stub: bool,
    pub paper_eq: String,
}

pub fn chart_to_json(c: &Chart) -> ChartJson {
    ChartJson {
        id: c.id.clone(),
        space: c.space.to_string(),
        figure_ref: c.figure_ref.clone(),
        chain: c.chain.iter().map(|n| n.label.clone()).collect(),
        params: c
            .params
            .iter()
            .map(|p| ChartParamJson {
                name: p.name.into(),
                ignorable: p.ignorable,
                domain: p.domain,
            })
            .collect(),
        closed_form: c.closed_form_str.iter().map(|s| s.to_string()).collect(),
        nonmaximal: c.nonmaximal,
        stub: c.stub,
        paper_eq: c.paper_eq.clone(),
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::masa_by_id;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    fn cv(vals: &[f64]) -> Vec<C> {
        vals.iter().map(|&v| c(v)).collect()
    }

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn catalog_counts() {
        assert_eq!(chart_catalog(SpaceId::M4C).len(), 10);
        assert_eq!(chart_catalog(SpaceId::M3C).len(), 2);
        assert_eq!(chart_catalog(SpaceId::M4R).len(), 2);
        let m31 = chart_catalog(SpaceId::M31);
        assert_eq!(m31.iter().filter(|c| !c.stub).count(), 3);
        assert_eq!(m31.iter().filter(|c| c.stub).count(), 6);
        let m22 = chart_catalog(SpaceId::M22);
        assert_eq!(m22.iter().filter(|c| !c.nonmaximal).count(), 9);
        assert_eq!(m22.iter().filter(|c| c.nonmaximal).count(), 5);
    }

    #[test]
    fn ignorable_counts_match_chain_type() {
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
                let expected = match (ch.masa_id, space) {
                    (Some(id), _) => {
                        let m = masa_by_id(id).unwrap();
                        m.dim()
                    }
                    // nonmaximal chains carry their own Abelian subgroup dims
                    (None, _) => match ch.id.as_str() {
                        "C_4C4" | "E22_ne" => 2,
                        _ => 1,
                    },
                };
                assert_eq!(ch.ignorable_count(), expected, "{}", ch.id);
            }
        }
    }

    #[test]
    fn closed_form_spec_points() {
        let m41 = chart_by_id("C_M41").unwrap();
        let x = eval_closed_form(&m41, &cv(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        for (xi, e) in x.iter().zip([1.0, 0.0, 0.0, 0.0]) {
            assert!(close(*xi, c(e), 1e-14));
        }

        let m43 = chart_by_id("C_M43").unwrap();
        let x = eval_closed_form(&m43, &cv(&[1.0, 2.0, 1.0, 0.0])).unwrap();
        for (xi, e) in x.iter().zip([0.0, 2.0, 0.0, 2.0]) {
            assert!(close(*xi, c(e), 1e-14));
        }

        let e22a = chart_by_id("E22_a").unwrap();
        let x = eval_closed_form(&e22a, &cv(&[1.0, 0.0, PI, 0.0])).unwrap();
        for (xi, e) in x.iter().zip([-1.0, 0.0, 0.0, 0.0]) {
            assert!(close(*xi, c(e), 1e-14));
        }
    }

    #[test]
    fn group_action_spec_points() {
        let m41 = chart_by_id("C_M41").unwrap();
        let x = eval_group_action(&m41, &cv(&[3.0, 0.0, 0.0, 0.0])).unwrap();
        for (xi, e) in x.iter().zip([3.0, 0.0, 0.0, 0.0]) {
            assert!(close(*xi, c(e), 1e-13));
        }

        let m46 = chart_by_id("C_M46").unwrap();
        let x = eval_group_action(&m46, &cv(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        for (xi, e) in x.iter().zip([0.5, 0.0, 0.0, 1.0]) {
            assert!(close(*xi, c(e), 1e-13));
        }

        let m42 = chart_by_id("C_M42").unwrap();
        // (r, c, a, b) = (2, 0, 0, 0)
        let x = eval_group_action(&m42, &cv(&[2.0, 0.0, 0.0, 0.0])).unwrap();
        for xi in &x {
            assert!(close(*xi, c(1.0), 1e-13));
        }
    }

    #[test]
    fn jacobian_spec_points() {
        let m41 = chart_by_id("C_M41").unwrap();
        let j = jacobian(&m41, &cv(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        // column d/dr = (1, 0, 0, 0)
        assert!(close(j[0][0], c(1.0), 1e-14));
        for i in 1..4 {
            assert!(close(j[i][0], c(0.0), 1e-14));
        }
        // dx2/da at (2, pi/6, 0, 0) = 2 cos(pi/6) = sqrt 3
        let j = jacobian(&m41, &cv(&[2.0, PI / 6.0, 0.0, 0.0])).unwrap();
        assert!(close(j[1][2], c(3f64.sqrt()), 1e-13));

        let m43 = chart_by_id("C_M43").unwrap();
        let mut rng = SplitMix64::new(3);
        for _ in 0..5 {
            let p = sample_params(&m43, &mut rng).unwrap();
            let j = jacobian(&m43, &p).unwrap();
            // x4 = r is independent of a1
            assert!(close(j[3][2], c(0.0), 1e-14));
        }
    }

    #[test]
    fn cylindrical_metric_is_diagonal() {
        let m41 = chart_by_id("C_M41").unwrap();
        let (r, cc) = (1.3, 0.7);
        let g = induced_metric(&m41, &cv(&[r, cc, 0.4, 2.1])).unwrap();
        let expect = [
            1.0,
            r * r,
            r * r * cc.cos() * cc.cos(),
            r * r * cc.sin() * cc.sin(),
        ];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { expect[i] } else { 0.0 };
                assert!(close(g[i][j], c(e), 1e-12), "({i},{j})");
            }
        }
    }

    #[test]
    fn null_chart_metric_structure() {
        let m43 = chart_by_id("C_M43").unwrap();
        let g = induced_metric(&m43, &cv(&[0.7, 1.4, 0.3, -0.2])).unwrap();
        // null coordinates: g_zz = g_rr = 0, g_zr = 1
        assert!(close(g[0][0], c(0.0), 1e-13));
        assert!(close(g[1][1], c(0.0), 1e-13));
        assert!(close(g[0][1], c(1.0), 1e-13));
        assert!(close(g[2][2], c(1.4 * 1.4), 1e-13));
    }

    #[test]
    fn dual_path_agreement_all_charts() {
        let mut rng = SplitMix64::new(2024);
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
                for _ in 0..20 {
                    let p = sample_params(&ch, &mut rng).unwrap();
                    let xc = eval_closed_form(&ch, &p).unwrap();
                    let xg = eval_group_action(&ch, &p).unwrap();
                    let num: f64 = xc.iter().zip(&xg).map(|(a, b)| (a - b).norm()).sum();
                    let den: f64 = 1.0 + xc.iter().map(|z| z.norm()).sum::<f64>();
                    assert!(num <= 1e-11 * den, "{}: {:e}", ch.id, num / den);
                }
            }
        }
    }

    #[test]
    fn ignorable_params_absent_from_metric() {
        let mut rng = SplitMix64::new(55);
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
                for _ in 0..5 {
                    let p = sample_params(&ch, &mut rng).unwrap();
                    let g0 = induced_metric(&ch, &p).unwrap();
                    let gnorm: f64 = g0
                        .iter()
                        .flat_map(|r| r.iter())
                        .map(|z| z.norm())
                        .sum::<f64>()
                        .max(1.0);
                    for (i, prm) in ch.params.iter().enumerate() {
                        if !prm.ignorable {
                            continue;
                        }
                        let mut shifted = p.clone();
                        shifted[i] = match prm.domain {
                            Domain::Complex => {
                                let m = rng.uniform(prm.sample.0, prm.sample.1);
                                let phi = rng.uniform(0.0, 2.0 * PI);
                                C::new(m * phi.cos(), m * phi.sin())
                            }
                            Domain::Real { .. } => {
                                C::new(rng.uniform(prm.sample.0, prm.sample.1), 0.0)
                            }
                        };
                        let g1 = induced_metric(&ch, &shifted).unwrap();
                        let diff: f64 = g0
                            .iter()
                            .flatten()
                            .zip(g1.iter().flatten())
                            .map(|(a, b)| (a - b).norm())
                            .sum();
                        assert!(diff <= 1e-10 * gnorm, "{} param {}", ch.id, prm.name);
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_norm_invariants() {
        let mut rng = SplitMix64::new(99);
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
                for _ in 0..10 {
                    let p = sample_params(&ch, &mut rng).unwrap();
                    let nv = norm_invariant(&ch, &p).unwrap();
                    match ch.norm {
                        NormInvariant::RSq { coef } => {
                            let expect = p[0] * p[0] * coef;
                            assert!(close(nv, expect, 1e-11 * (1.0 + expect.norm())), "{}", ch.id);
                        }
                        NormInvariant::TwoZR { z_index, r_index } => {
                            let expect = p[z_index] * p[r_index] * 2.0;
                            assert!(close(nv, expect, 1e-11 * (1.0 + expect.norm())), "{}", ch.id);
                        }
                        NormInvariant::NonConstant => {}
                    }
                }
            }
        }
    }

    #[test]
    fn metric_determinant_nonzero_at_samples() {
        use crate::exact::CMat;
        let mut rng = SplitMix64::new(7);
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
                for _ in 0..5 {
                    let p = sample_params(&ch, &mut rng).unwrap();
                    let g = induced_metric(&ch, &p).unwrap();
                    let n = ch.dim();
                    let gm = CMat::from_fn(n, n, |i, j| g[i][j]);
                    assert!(gm.det().norm() > 1e-8, "{}", ch.id);
                }
            }
        }
    }

    #[test]
    fn reality_checks_pass() {
        for space in [SpaceId::M4R, SpaceId::M31, SpaceId::M22] {
            for ch in chart_catalog(space) {
                if ch.stub {
                    continue;
                }
                let rep = reality_check(&ch, 100, 11).unwrap();
                assert!(
                    rep.pass,
                    "{}: max_imag {:e}, sign ok {}, dev {:e}",
                    rep.chart_id, rep.max_imag, rep.norm_sign_ok, rep.max_norm_dev
                );
            }
        }
    }

    #[test]
    fn minkowski_cylindrical_norm_is_minus_r_squared() {
        let ch = chart_by_id("M31_cyl").unwrap();
        let nv = norm_invariant(&ch, &cv(&[1.5, 0.8, 1.0, 0.4])).unwrap();
        assert!(close(nv, c(-1.5 * 1.5), 1e-12));
    }

    #[test]
    fn degenerate_masa_orbits_are_two_dimensional() {
        let m47 = masa_by_id("M47_2").unwrap();
        let point = vec![qi(1), qi(2), qi(3), qi(5)];
        assert_eq!(orbit_rank(&m47, &point), 2);
        // the nondegenerate k0=2 MASA has full 3-dimensional orbits
        let m46 = masa_by_id("M46_2").unwrap();
        assert_eq!(orbit_rank(&m46, &point), 3);
    }

    #[test]
    fn stub_charts_refuse_evaluation() {
        let ch = chart_by_id("M31_H3_a").unwrap();
        assert!(matches!(
            eval_closed_form(&ch, &cv(&[1.0, 1.0, 1.0, 1.0])),
            Err(ChartError::StubChart { .. })
        ));
    }

    #[test]
    fn sampler_respects_constraints() {
        let ch = chart_by_id("C_4C3").unwrap();
        let mut rng = SplitMix64::new(17);
        for _ in 0..50 {
            let p = sample_params(&ch, &mut rng).unwrap();
            assert!(p[0].norm() >= 0.1);
            assert!(p[2].norm() >= 0.1);
        }
    }

    #[test]
    fn out_of_domain_real_chart_errors() {
        let ch = chart_by_id("R4_cyl").unwrap();
        let err = eval_closed_form(&ch, &cv(&[-1.0, 0.5, 1.0, 1.0])).unwrap_err();
        assert!(matches!(err, ChartError::OutOfDomain { param: "r", .. }));
    }

    #[test]
    fn decomposition_factor_maps() {
        let factors = decomposition_factors();
        assert_eq!(factors.len(), 3);
        let polar = &factors[1];
        let p = [Jet2::var(0, c(2.0)), Jet2::var(1, c(PI / 3.0))];
        let x = (polar.closed)(&p);
        assert!(close(x[0].v, c(1.0), 1e-13));
        assert!(close(x[1].v, c(3f64.sqrt()), 1e-13));
    }

    #[test]
    fn json_export_shape() {
        let ch = chart_by_id("E22_c").unwrap();
        let j = chart_to_json(&ch);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"paper_eq\":\"5.16\""));
        assert!(s.contains("O(2)xO(1,1)"));
    }
}
