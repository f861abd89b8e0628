//! Matrix realization of the flat-space isometry algebras e(4,C), e(4),
//! e(3,1), e(2,2) and e(3,C): metrics, commutators, the maximal Abelian
//! subalgebra (MASA) catalog, exact one-parameter exponentials and
//! metric-change conjugations.

use crate::exact::{qi, qi_frac, qimat_to_c, qi_to_string, CMat, FieldScalar, Qi, QiMat};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;

/// Which flat space a MASA or chart lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SpaceId {
    M4C,
    M3C,
    M4R,
    M31,
    M22,
}

impl SpaceId {
    pub fn dim(self) -> usize {
        match self {
            SpaceId::M3C => 3,
            _ => 4,
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, SpaceId::M4C | SpaceId::M3C)
    }

    pub fn parse(s: &str) -> Option<SpaceId> {
        match s.to_ascii_lowercase().as_str() {
            "m4c" => Some(SpaceId::M4C),
            "m3c" => Some(SpaceId::M3C),
            "m4r" => Some(SpaceId::M4R),
            "m31" => Some(SpaceId::M31),
            "m22" => Some(SpaceId::M22),
            _ => None,
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceId::M4C => "M4C",
            SpaceId::M3C => "M3C",
            SpaceId::M4R => "M4R",
            SpaceId::M31 => "M31",
            SpaceId::M22 => "M22",
        };
        f.write_str(s)
    }
}

/// Named shapes of the symmetric metric matrix K.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum MetricFormId {
    /// I_4 (or I_3 on the 3-space)
    Identity,
    /// [[0, I2], [I2, 0]]
    AntidiagBlocks,
    /// 1+2+1 light-cone block form: antidiag on (1,4), identity on (2,3)
    LightCone,
    /// full antidiagonal
    FullAntidiag,
    /// diag(1,1,-1,-1)
    DiagSplit,
    /// diag(1,1,1,-1)
    DiagMinkowski,
    Custom,
}

/// The symmetric nonsingular matrix defining the quadratic form of the space.
#[derive(Clone, PartialEq, Debug)]
pub struct MetricForm {
    pub mat: QiMat,
    pub form_id: MetricFormId,
    /// (positive, negative) eigenvalue counts for real forms
    pub signature: Option<(usize, usize)>,
}

impl MetricForm {
    pub fn new(mat: QiMat, form_id: MetricFormId, signature: Option<(usize, usize)>) -> Self {
        assert_eq!(mat.rows, mat.cols);
        assert_eq!(mat, mat.transpose(), "metric must be symmetric");
        assert!(!mat.det().is_zero(), "metric must be nonsingular");
        MetricForm {
            mat,
            form_id,
            signature,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(
            QiMat::identity(n),
            MetricFormId::Identity,
            Some((n, 0)),
        )
    }

    /// [[0, I2], [I2, 0]]
    pub fn antidiag_blocks() -> Self {
        let mut m = QiMat::zeros(4, 4);
        m[(0, 2)] = qi(1);
        m[(1, 3)] = qi(1);
        m[(2, 0)] = qi(1);
        m[(3, 1)] = qi(1);
        Self::new(m, MetricFormId::AntidiagBlocks, Some((2, 2)))
    }

    /// antidiag on coordinates (1,4), identity on (2,3)
    pub fn light_cone() -> Self {
        let mut m = QiMat::zeros(4, 4);
        m[(0, 3)] = qi(1);
        m[(3, 0)] = qi(1);
        m[(1, 1)] = qi(1);
        m[(2, 2)] = qi(1);
        Self::new(m, MetricFormId::LightCone, Some((3, 1)))
    }

    pub fn full_antidiag() -> Self {
        let mut m = QiMat::zeros(4, 4);
        for i in 0..4 {
            m[(i, 3 - i)] = qi(1);
        }
        Self::new(m, MetricFormId::FullAntidiag, Some((2, 2)))
    }

    pub fn diag_split() -> Self {
        let mut m = QiMat::identity(4);
        m[(2, 2)] = qi(-1);
        m[(3, 3)] = qi(-1);
        Self::new(m, MetricFormId::DiagSplit, Some((2, 2)))
    }

    pub fn diag_minkowski() -> Self {
        let mut m = QiMat::identity(4);
        m[(3, 3)] = qi(-1);
        Self::new(m, MetricFormId::DiagMinkowski, Some((3, 1)))
    }

    /// 3-space light-cone metric: antidiag on (1,3), identity on 2.
    pub fn light_cone_3() -> Self {
        let mut m = QiMat::zeros(3, 3);
        m[(0, 2)] = qi(1);
        m[(2, 0)] = qi(1);
        m[(1, 1)] = qi(1);
        Self::new(m, MetricFormId::LightCone, Some((2, 1)))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }
}

/// An element of the isometry algebra in the (n+1)x(n+1) affine realization:
/// linear part X in the top-left n x n block, translation in the last column,
/// last row zero.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement {
    pub mat: QiMat,
    pub label: String,
}

impl AlgebraElement {
    pub fn new(mat: QiMat, label: impl Into<String>) -> Self {
        let n = mat.rows - 1;
        assert_eq!(mat.rows, mat.cols);
        for j in 0..=n {
            assert!(mat[(n, j)].is_zero(), "last row must vanish");
        }
        AlgebraElement {
            mat,
            label: label.into(),
        }
    }

    pub fn space_dim(&self) -> usize {
        self.mat.rows - 1
    }

    pub fn linear_part(&self) -> QiMat {
        let n = self.space_dim();
        QiMat::from_fn(n, n, |i, j| self.mat[(i, j)].clone())
    }

    pub fn translation(&self) -> Vec<Qi> {
        let n = self.space_dim();
        (0..n).map(|i| self.mat[(i, n)].clone()).collect()
    }

    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            mat: QiMat::zeros(n + 1, n + 1),
            label: "0".into(),
        }
    }

    pub fn scale(&self, s: &Qi) -> Self {
        AlgebraElement {
            mat: self.mat.scale(s),
            label: self.label.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            mat: self.mat.add(&other.mat),
            label: format!("{}+{}", self.label, other.label),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgebraElement {}:", self.label)?;
        write!(f, "{:?}", self.mat)
    }
}

/// E_ik basis matrix in the affine (n+1)-dimensional realization.
/// Indices are 1-based; index n+1 addresses the translation column.
pub fn e_mat(n: usize, i: usize, k: usize) -> QiMat {
    let mut m = QiMat::zeros(n + 1, n + 1);
    m[(i - 1, k - 1)] = qi(1);
    m
}

/// Builds an element from a list of (coefficient, i, k) terms over E_ik.
pub fn elem(n: usize, label: &str, terms: &[(Qi, usize, usize)]) -> AlgebraElement {
    let mut m = QiMat::zeros(n + 1, n + 1);
    for (c, i, k) in terms {
        m[(i - 1, k - 1)] = m[(i - 1, k - 1)].clone() + c.clone();
    }
    AlgebraElement::new(m, label)
}

fn term(c: i64, i: usize, k: usize) -> (Qi, usize, usize) {
    (qi(c), i, k)
}

pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if a.mat.rows != b.mat.rows {
        return Err(AlgebraError::DimensionMismatch {
            left: a.mat.rows,
            right: b.mat.rows,
        });
    }
    let m = a.mat.mul(&b.mat).sub(&b.mat.mul(&a.mat));
    Ok(AlgebraElement {
        mat: m,
        label: format!("[{},{}]", a.label, b.label),
    })
}

/// X K + K X^T = 0, checked exactly on the linear part only.
pub fn is_isometry(x: &AlgebraElement, k: &MetricForm) -> bool {
    let lin = x.linear_part();
    lin.mul(&k.mat).add(&k.mat.mul(&lin.transpose())).is_zero()
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraError {
    DimensionMismatch { left: usize, right: usize },
    SingularMatrix,
    ExpDidNotConverge { residual: f64 },
    RankDeficientSample,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            AlgebraError::SingularMatrix => write!(f, "singular matrix"),
            AlgebraError::ExpDidNotConverge { residual } => {
                write!(f, "matrix exponential did not converge (residual {residual:e})")
            }
            AlgebraError::RankDeficientSample => {
                write!(f, "rank computation failed at all sampled parameter values")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// Exact closed-form structure of a one-parameter generator, decided over Q(i).
enum ExpClass {
    /// X^m = 0: terminating polynomial
    Nilpotent(usize),
    /// X^3 = X: cosh/sinh blocks
    CubeSelf,
    /// X^3 = -X: cos/sin blocks
    CubeNegSelf,
    Generic,
}

fn classify(x: &QiMat) -> ExpClass {
    let n = x.rows;
    let mut p = x.clone();
    for m in 1..=n {
        if p.is_zero() {
            return ExpClass::Nilpotent(m);
        }
        p = p.mul(x);
    }
    let x3 = x.mul(x).mul(x);
    if x3 == *x {
        return ExpClass::CubeSelf;
    }
    if x3 == x.scale(&qi(-1)) {
        return ExpClass::CubeNegSelf;
    }
    ExpClass::Generic
}

/// exp(t X) for a catalog generator, in closed form where the exact
/// classification allows it and by scaling-and-squaring otherwise.
pub fn one_param_exp(x: &AlgebraElement, t: Complex64) -> Result<CMat, AlgebraError> {
    let n1 = x.mat.rows;
    let xf = qimat_to_c(&x.mat);
    match classify(&x.mat) {
        ExpClass::Nilpotent(order) => {
            // sum_{k<order} t^k X^k / k!
            let mut out = CMat::identity(n1);
            let mut pw = CMat::identity(n1);
            let mut fact = 1.0;
            for k in 1..order {
                pw = pw.mul(&xf);
                fact *= k as f64;
                out = out.add(&pw.scale(&(t.powu(k as u32) / fact)));
            }
            Ok(out)
        }
        ExpClass::CubeSelf => {
            // exp(tX) = I + sinh(t) X + (cosh(t)-1) X^2
            let x2 = xf.mul(&xf);
            Ok(CMat::identity(n1)
                .add(&xf.scale(&t.sinh()))
                .add(&x2.scale(&(t.cosh() - 1.0))))
        }
        ExpClass::CubeNegSelf => {
            // exp(tX) = I + sin(t) X + (1-cos(t)) X^2
            let x2 = xf.mul(&xf);
            Ok(CMat::identity(n1)
                .add(&xf.scale(&t.sin()))
                .add(&x2.scale(&(1.0 - t.cos()))))
        }
        ExpClass::Generic => exp_series(&xf.scale(&t)),
    }
}

/// Scaling-and-squaring Taylor fallback at relative tolerance 1e-13.
fn exp_series(a: &CMat) -> Result<CMat, AlgebraError> {
    let n = a.rows;
    let norm: f64 = a.data.iter().map(|z| z.norm()).sum();
    let mut squarings = 0u32;
    let mut scaled = a.clone();
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
        let f = Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0);
        scaled = a.scale(&f);
    }
    let mut out = CMat::identity(n);
    let mut pw = CMat::identity(n);
    let mut fact = 1.0;
    let mut converged = false;
    for k in 1..40 {
        pw = pw.mul(&scaled);
        fact *= k as f64;
        let term = pw.scale(&Complex64::new(1.0 / fact, 0.0));
        let tn: f64 = term.data.iter().map(|z| z.norm()).sum();
        out = out.add(&term);
        if tn < 1e-16 * (1.0 + out.data.iter().map(|z| z.norm()).sum::<f64>()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(AlgebraError::ExpDidNotConverge { residual: f64::NAN });
    }
    for _ in 0..squarings {
        out = out.mul(&out);
    }
    Ok(out)
}

/// MASA decomposability classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum DecompClass {
    /// orthogonally decomposable
    Od,
    /// orthogonally indecomposable but decomposable
    OidButD,
    /// orthogonally indecomposable and indecomposable
    OidAndId,
    /// absolutely orthogonally indecomposable but decomposable
    AoidButD,
    /// absolutely orthogonally indecomposable, indecomposable, not absolutely indecomposable
    AoidIdNaid,
    /// maximal Abelian nilpotent subalgebra
    Mans,
    Cartan,
}

/// A maximal Abelian subalgebra from the catalog. `generators` is a basis,
/// one element per parameter of the defining matrix family.
#[derive(Clone, Debug)]
pub struct Masa {
    pub id: String,
    pub space: SpaceId,
    pub metric: MetricForm,
    pub generators: Vec<AlgebraElement>,
    pub k0: usize,
    pub class: DecompClass,
    /// true when the subgroup orbits are lower-dimensional and the MASA
    /// yields no coordinate system
    pub degenerate: bool,
    /// complex-catalog ancestor for the real forms
    pub descends_from: Option<String>,
    pub paper_eq: String,
}

impl Masa {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

/// Default structural parameter for the beta families: beta = 1/2.
pub fn default_beta() -> Qi {
    qi_frac(1, 2)
}

fn masa(
    id: &str,
    space: SpaceId,
    metric: MetricForm,
    generators: Vec<AlgebraElement>,
    k0: usize,
    class: DecompClass,
    degenerate: bool,
    descends_from: Option<&str>,
    paper_eq: &str,
) -> Masa {
    Masa {
        id: id.into(),
        space,
        metric,
        generators,
        k0,
        class,
        degenerate,
        descends_from: descends_from.map(String::from),
        paper_eq: paper_eq.into(),
    }
}

fn m43_generators(beta: Option<&Qi>) -> Vec<AlgebraElement> {
    // beta = None gives M_{4,3}(1); Some(beta) gives M_{4,4}(1).
    match beta {
        None => vec![
            elem(4, "-E12+E24", &[term(-1, 1, 2), term(1, 2, 4)]),
            elem(4, "-E13+E34", &[term(-1, 1, 3), term(1, 3, 4)]),
            elem(4, "E15", &[term(1, 1, 5)]),
        ],
        Some(b) => vec![
            elem(4, "-E12+E24+E25", &[term(-1, 1, 2), term(1, 2, 4), term(1, 2, 5)]),
            elem(
                4,
                "-E13+E34+bE35",
                &[term(-1, 1, 3), term(1, 3, 4), (b.clone(), 3, 5)],
            ),
            elem(4, "E15", &[term(1, 1, 5)]),
        ],
    }
}

fn m45_generators(kappa: i64) -> Vec<AlgebraElement> {
    vec![
        elem(
            4,
            "-E12+E34+kE35",
            &[term(-1, 1, 2), term(1, 3, 4), term(kappa, 3, 5)],
        ),
        elem(
            4,
            "-E13+E24+E35+kE25",
            &[term(-1, 1, 3), term(1, 2, 4), term(1, 3, 5), term(kappa, 2, 5)],
        ),
        elem(4, "E15", &[term(1, 1, 5)]),
    ]
}

fn m46_generators(with_translation: bool) -> Vec<AlgebraElement> {
    // with_translation = true gives M_{4,6}(2); false the degenerate M_{4,7}(2)
    let z = if with_translation {
        elem(4, "E14-E23+E45", &[term(1, 1, 4), term(-1, 2, 3), term(1, 4, 5)])
    } else {
        elem(4, "E14-E23", &[term(1, 1, 4), term(-1, 2, 3)])
    };
    vec![
        z,
        elem(4, "E15", &[term(1, 1, 5)]),
        elem(4, "E25", &[term(1, 2, 5)]),
    ]
}

/// The MASA catalog per space. Real-form entries record the complex MASA
/// they descend from; structural parameters (beta, kappa) are stored at
/// their catalog defaults.
pub fn masa_catalog(space: SpaceId) -> Vec<Masa> {
    match space {
        SpaceId::M4C => vec![
            masa(
                "M41_0",
                space,
                MetricForm::identity(4),
                vec![
                    elem(4, "-E12+E21", &[term(-1, 1, 2), term(1, 2, 1)]),
                    elem(4, "-E34+E43", &[term(-1, 3, 4), term(1, 4, 3)]),
                ],
                0,
                DecompClass::Cartan,
                false,
                None,
                "3.MV41",
            ),
            masa(
                "M42_0",
                space,
                MetricForm::antidiag_blocks(),
                vec![
                    elem(
                        4,
                        "E11+E22-E33-E44",
                        &[term(1, 1, 1), term(1, 2, 2), term(-1, 3, 3), term(-1, 4, 4)],
                    ),
                    elem(4, "E12-E43", &[term(1, 1, 2), term(-1, 4, 3)]),
                ],
                0,
                DecompClass::OidButD,
                false,
                None,
                "3.M420",
            ),
            masa(
                "M43_1",
                space,
                MetricForm::light_cone(),
                m43_generators(None),
                1,
                DecompClass::Mans,
                false,
                None,
                "3.321",
            ),
            masa(
                "M44_1",
                space,
                MetricForm::light_cone(),
                m43_generators(Some(&default_beta())),
                1,
                DecompClass::Mans,
                false,
                None,
                "3.326",
            ),
            masa(
                "M45_1",
                space,
                MetricForm::full_antidiag(),
                m45_generators(0),
                1,
                DecompClass::Mans,
                false,
                None,
                "3.330",
            ),
            masa(
                "M46_2",
                space,
                MetricForm::antidiag_blocks(),
                m46_generators(true),
                2,
                DecompClass::Mans,
                false,
                None,
                "3.334",
            ),
            masa(
                "M47_2",
                space,
                MetricForm::antidiag_blocks(),
                m46_generators(false),
                2,
                DecompClass::Mans,
                true,
                None,
                "3.338",
            ),
        ],
        SpaceId::M3C => vec![
            masa(
                "M3_k0",
                space,
                MetricForm::light_cone_3(),
                vec![
                    elem(3, "E12-E23", &[term(1, 1, 2), term(-1, 2, 3)]),
                    elem(3, "E14", &[term(1, 1, 4)]),
                ],
                1,
                DecompClass::Mans,
                false,
                None,
                "3.344",
            ),
            masa(
                "M3_k1",
                space,
                MetricForm::light_cone_3(),
                vec![
                    elem(3, "E12-E23-E34", &[term(1, 1, 2), term(-1, 2, 3), term(-1, 3, 4)]),
                    elem(3, "E14", &[term(1, 1, 4)]),
                ],
                1,
                DecompClass::Mans,
                false,
                None,
                "3.344",
            ),
        ],
        SpaceId::M4R => vec![masa(
            "R4_cartan",
            space,
            MetricForm::identity(4),
            vec![
                elem(4, "-E12+E21", &[term(-1, 1, 2), term(1, 2, 1)]),
                elem(4, "-E34+E43", &[term(-1, 3, 4), term(1, 4, 3)]),
            ],
            0,
            DecompClass::Cartan,
            false,
            Some("M41_0"),
            "3.MV41",
        )],
        SpaceId::M31 => vec![
            masa(
                "M31_cartan",
                space,
                MetricForm::diag_minkowski(),
                vec![
                    elem(4, "-E12+E21", &[term(-1, 1, 2), term(1, 2, 1)]),
                    elem(4, "E34+E43", &[term(1, 3, 4), term(1, 4, 3)]),
                ],
                0,
                DecompClass::Cartan,
                false,
                Some("M41_0"),
                "4.1",
            ),
            masa(
                "M31_M43",
                space,
                MetricForm::light_cone(),
                m43_generators(None),
                1,
                DecompClass::Mans,
                false,
                Some("M43_1"),
                "3.321",
            ),
            masa(
                "M31_M44",
                space,
                MetricForm::light_cone(),
                m43_generators(Some(&default_beta())),
                1,
                DecompClass::Mans,
                false,
                Some("M44_1"),
                "3.326",
            ),
        ],
        SpaceId::M22 => vec![
            masa(
                "CartanCompact",
                space,
                MetricForm::diag_split(),
                vec![
                    elem(4, "-E12+E21", &[term(-1, 1, 2), term(1, 2, 1)]),
                    elem(4, "-E34+E43", &[term(-1, 3, 4), term(1, 4, 3)]),
                ],
                0,
                DecompClass::Cartan,
                false,
                Some("M41_0"),
                "5.3",
            ),
            masa(
                "CartanNoncompact",
                space,
                MetricForm::diag_split(),
                vec![
                    elem(4, "E13+E31", &[term(1, 1, 3), term(1, 3, 1)]),
                    elem(4, "E24+E42", &[term(1, 2, 4), term(1, 4, 2)]),
                ],
                0,
                DecompClass::Cartan,
                false,
                Some("M41_0"),
                "5.8",
            ),
            masa(
                "CartanMixed",
                space,
                MetricForm::antidiag_blocks(),
                vec![
                    elem(
                        4,
                        "E11+E22-E33-E44",
                        &[term(1, 1, 1), term(1, 2, 2), term(-1, 3, 3), term(-1, 4, 4)],
                    ),
                    elem(
                        4,
                        "-E12+E21-E34+E43",
                        &[term(-1, 1, 2), term(1, 2, 1), term(-1, 3, 4), term(1, 4, 3)],
                    ),
                ],
                0,
                DecompClass::Cartan,
                false,
                Some("M41_0"),
                "5.14",
            ),
            masa(
                "M1_0",
                space,
                MetricForm::antidiag_blocks(),
                vec![
                    elem(
                        4,
                        "E11+E22-E33-E44",
                        &[term(1, 1, 1), term(1, 2, 2), term(-1, 3, 3), term(-1, 4, 4)],
                    ),
                    elem(4, "E12-E43", &[term(1, 1, 2), term(-1, 4, 3)]),
                ],
                0,
                DecompClass::AoidButD,
                false,
                Some("M42_0"),
                "3.M420",
            ),
            masa(
                "M2_0",
                space,
                MetricForm::antidiag_blocks(),
                vec![
                    elem(
                        4,
                        "E12-E21+E34-E43",
                        &[term(1, 1, 2), term(-1, 2, 1), term(1, 3, 4), term(-1, 4, 3)],
                    ),
                    elem(4, "E14-E23", &[term(1, 1, 4), term(-1, 2, 3)]),
                ],
                0,
                DecompClass::AoidIdNaid,
                false,
                Some("M42_0"),
                "5.M2_0",
            ),
            masa(
                "M22_M43",
                space,
                MetricForm::light_cone(),
                m43_generators(None),
                1,
                DecompClass::Mans,
                false,
                Some("M43_1"),
                "3.321",
            ),
            masa(
                "M22_M44",
                space,
                MetricForm::light_cone(),
                m43_generators(Some(&default_beta())),
                1,
                DecompClass::Mans,
                false,
                Some("M44_1"),
                "3.326",
            ),
            masa(
                "M22_M45",
                space,
                MetricForm::full_antidiag(),
                m45_generators(0),
                1,
                DecompClass::Mans,
                false,
                Some("M45_1"),
                "3.330",
            ),
            masa(
                "M22_M46",
                space,
                MetricForm::antidiag_blocks(),
                m46_generators(true),
                2,
                DecompClass::Mans,
                false,
                Some("M46_2"),
                "3.334",
            ),
            masa(
                "M22_M47",
                space,
                MetricForm::antidiag_blocks(),
                m46_generators(false),
                2,
                DecompClass::Mans,
                true,
                Some("M47_2"),
                "3.338",
            ),
        ],
    }
}

pub fn masa_by_id(id: &str) -> Option<Masa> {
    for space in [SpaceId::M4C, SpaceId::M3C, SpaceId::M4R, SpaceId::M31, SpaceId::M22] {
        if let Some(m) = masa_catalog(space).into_iter().find(|m| m.id == id) {
            return Some(m);
        }
    }
    None
}

/// Basis of the full isometry algebra of the metric: the exact nullspace of
/// X K + K X^T = 0 (rotational part) plus the n translations.
pub fn isometry_basis(k: &MetricForm) -> Vec<AlgebraElement> {
    let n = k.dim();
    // constraint rows over the n^2 entries of X
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            // (X K + K X^T)_{ab} = sum_j X_{aj} K_{jb} + K_{aj} X_{bj}
            let mut row = vec![Qi::zero(); n * n];
            for j in 0..n {
                row[a * n + j] = row[a * n + j].clone() + k.mat[(j, b)].clone();
                row[b * n + j] = row[b * n + j].clone() + k.mat[(a, j)].clone();
            }
            rows.push(row);
        }
    }
    let cons = QiMat::from_rows(rows);
    let mut basis = Vec::new();
    for (idx, v) in cons.nullspace().into_iter().enumerate() {
        let mut m = QiMat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i * n + j].clone();
            }
        }
        basis.push(AlgebraElement::new(m, format!("R{idx}")));
    }
    for i in 1..=n {
        basis.push(elem(n, &format!("T{i}"), &[term(1, i, n + 1)]));
    }
    basis
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralizerReport {
    pub masa_id: String,
    pub algebra_dim: usize,
    pub centralizer_dim: usize,
    pub span_dim: usize,
    pub is_maximal: bool,
}

/// Solves [X_i, Y] = 0 exactly for Y over the full isometry algebra, for each
/// generator X_i, and compares the joint solution space with the span of the
/// generators.
pub fn centralizer_check(m: &Masa) -> CentralizerReport {
    centralizer_of(&m.id, &m.generators, &m.metric)
}

pub fn centralizer_of(id: &str, gens: &[AlgebraElement], k: &MetricForm) -> CentralizerReport {
    let basis = isometry_basis(k);
    let nb = basis.len();
    let n1 = k.dim() + 1;
    // rows: entries of [X_i, B_j]-combination coefficients
    let mut rows = Vec::new();
    for x in gens {
        let brackets: Vec<QiMat> = basis
            .iter()
            .map(|b| x.mat.mul(&b.mat).sub(&b.mat.mul(&x.mat)))
            .collect();
        for r in 0..n1 {
            for c in 0..n1 {
                let row: Vec<Qi> = brackets.iter().map(|bm| bm[(r, c)].clone()).collect();
                if row.iter().all(|x| x.is_zero()) {
                    continue;
                }
                rows.push(row);
            }
        }
    }
    let centralizer_dim = if rows.is_empty() {
        nb
    } else {
        nb - QiMat::from_rows(rows).rank()
    };
    // dimension of the generator span inside the isometry algebra
    let mut coord_rows = Vec::new();
    for x in gens {
        coord_rows.push(coords_in_basis(x, &basis));
    }
    let span_dim = QiMat::from_rows(coord_rows).rank();
    CentralizerReport {
        masa_id: id.into(),
        algebra_dim: nb,
        centralizer_dim,
        span_dim,
        is_maximal: centralizer_dim == span_dim,
    }
}

/// Expresses x in the given basis by exact linear solve; panics when x is
/// outside the span (catalog generators never are).
fn coords_in_basis(x: &AlgebraElement, basis: &[AlgebraElement]) -> Vec<Qi> {
    let n1 = x.mat.rows;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..n1 {
        for c in 0..n1 {
            rows.push(
                basis
                    .iter()
                    .map(|b| b.mat[(r, c)].clone())
                    .collect::<Vec<_>>(),
            );
            rhs.push(x.mat[(r, c)].clone());
        }
    }
    // least structured path: augment and reduce
    let nb = basis.len();
    let mut aug = QiMat::zeros(rows.len(), nb + 1);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            aug[(i, j)] = v.clone();
        }
        aug[(i, nb)] = rhs[i].clone();
    }
    let pivots = aug.rref();
    assert!(
        !pivots.contains(&nb),
        "element is not in the span of the basis"
    );
    let mut coeffs = vec![Qi::zero(); nb];
    for (pr, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = aug[(pr, nb)].clone();
    }
    coeffs
}

/// Metric-change conjugation: K -> g K g^T and X -> g X g^{-1} on linear
/// parts with translations mapped by g.
pub fn conjugate(
    g: &QiMat,
    k1: &MetricForm,
    elements: &[AlgebraElement],
) -> Result<(MetricForm, Vec<AlgebraElement>), AlgebraError> {
    let n = k1.dim();
    assert_eq!(g.rows, n);
    let ginv = g.inverse().ok_or(AlgebraError::SingularMatrix)?;
    let k2 = g.mul(&k1.mat).mul(&g.transpose());
    let out = elements
        .iter()
        .map(|e| {
            let lin = g.mul(&e.linear_part()).mul(&ginv);
            let tr = g.mul_vec(&e.translation());
            let mut m = QiMat::zeros(n + 1, n + 1);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = lin[(i, j)].clone();
                }
                m[(i, n)] = tr[i].clone();
            }
            AlgebraElement::new(m, format!("g({})g^-1", e.label))
        })
        .collect();
    Ok((
        MetricForm::new(k2, MetricFormId::Custom, k1.signature),
        out,
    ))
}

/// The metric-change matrix of the mixed-Cartan reduction: g K_D g^T maps
/// I_4 to the antidiagonal-block metric.
pub fn mixed_cartan_transform() -> QiMat {
    let h = qi_frac(1, 2);
    let hi = Qi::new(crate::exact::q(0, 1), crate::exact::q(1, 2));
    let nhi = -hi.clone();
    let nh = -h.clone();
    QiMat::from_rows(vec![
        vec![h.clone(), hi.clone(), h.clone(), hi.clone()],
        vec![nhi.clone(), h.clone(), hi.clone(), nh.clone()],
        vec![h.clone(), nhi.clone(), h.clone(), hi.clone() * qi(-1)],
        vec![hi.clone(), h.clone(), nhi.clone(), nh.clone()],
    ])
}

/// The similarity transformation carrying M_{4,2}(0) to the M2(0) real form,
/// preserving the antidiagonal-block metric. Entries involve 1/sqrt(2), so it
/// is returned as floating point.
pub fn m2_transform() -> CMat {
    let s = 1.0 / 2f64.sqrt();
    let z = Complex64::new(0.0, 0.0);
    let r = Complex64::new(s, 0.0);
    let i = Complex64::new(0.0, s);
    let ni = Complex64::new(0.0, -s);
    CMat::from_rows(vec![
        vec![r, z, z, r],
        vec![i, z, z, ni],
        vec![z, r, r, z],
        vec![z, i, ni, z],
    ])
}

#[derive(Serialize)]
pub struct MasaJson {
    pub id: String,
    pub space: String,
    pub metric_form: String,
    pub generators: Vec<Vec<String>>,
    pub k0: usize,
    pub class: String,
    pub paper_eq: String,
}

pub fn masa_to_json(m: &Masa) -> MasaJson {
    MasaJson {
        id: m.id.clone(),
        space: m.space.to_string(),
        metric_form: format!("{:?}", m.metric.form_id),
        generators: m
            .generators
            .iter()
            .map(|g| g.mat.data.iter().map(qi_to_string).collect())
            .collect(),
        k0: m.k0,
        class: format!("{:?}", m.class),
        paper_eq: m.paper_eq.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn l(i: usize, k: usize) -> AlgebraElement {
        // L_ik = E_ik - E_ki
        elem(4, &format!("L{i}{k}"), &[term(1, i, k), term(-1, k, i)])
    }

    #[test]
    fn commutator_disjoint_blocks() {
        let c = commutator(&l(1, 2), &l(3, 4)).unwrap();
        assert!(c.mat.is_zero());
    }

    #[test]
    fn commutator_l12_l13_is_minus_l23() {
        let c = commutator(&l(1, 2), &l(1, 3)).unwrap();
        assert_eq!(c.mat, l(2, 3).mat.scale(&qi(-1)));
    }

    #[test]
    fn commutator_self_is_zero() {
        let a = elem(4, "x", &[term(2, 1, 3), term(1, 2, 5)]);
        let c = commutator(&a, &a).unwrap();
        assert!(c.mat.is_zero());
    }

    #[test]
    fn commutator_dim_mismatch() {
        let a = elem(4, "a", &[term(1, 1, 2)]);
        let b = elem(3, "b", &[term(1, 1, 2)]);
        assert!(commutator(&a, &b).is_err());
    }

    #[test]
    fn isometry_checks() {
        let k_id = MetricForm::identity(4);
        assert!(is_isometry(&l(1, 2), &k_id));
        let boost = elem(4, "E13+E31", &[term(1, 1, 3), term(1, 3, 1)]);
        assert!(!is_isometry(&boost, &k_id));
        assert!(is_isometry(&boost, &MetricForm::diag_split()));
    }

    #[test]
    fn exp_zero_is_identity() {
        let x = l(1, 2);
        let e = one_param_exp(&x, Complex64::new(0.0, 0.0)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((e[(i, j)] - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn exp_rotation_quarter_turn() {
        let x = elem(4, "E12-E21", &[term(1, 1, 2), term(-1, 2, 1)]);
        let e = one_param_exp(&x, Complex64::new(std::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        assert!((e[(0, 1)] - 1.0).norm() < 1e-14);
        assert!((e[(1, 0)] + 1.0).norm() < 1e-14);
        assert!(e[(0, 0)].norm() < 1e-14);
        // orthogonality of the linear block
        let lin = CMat::from_fn(4, 4, |i, j| e[(i, j)]);
        let p = lin.mul(&lin.transpose());
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - expect).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn exp_nilpotent_translation() {
        let x = elem(4, "E15", &[term(1, 1, 5)]);
        let z = Complex64::new(0.7, -0.3);
        let e = one_param_exp(&x, z).unwrap();
        assert!((e[(0, 4)] - z).norm() < 1e-15);
    }

    #[test]
    fn catalog_counts() {
        assert_eq!(masa_catalog(SpaceId::M4C).len(), 7);
        assert_eq!(
            masa_catalog(SpaceId::M4C)
                .iter()
                .filter(|m| m.degenerate)
                .count(),
            1
        );
        assert_eq!(masa_catalog(SpaceId::M31).len(), 3);
        assert_eq!(
            masa_catalog(SpaceId::M22)
                .iter()
                .filter(|m| m.k0 == 2)
                .count(),
            2
        );
    }

    #[test]
    fn catalog_commutes_and_preserves_metric() {
        for space in [SpaceId::M4C, SpaceId::M3C, SpaceId::M4R, SpaceId::M31, SpaceId::M22] {
            for m in masa_catalog(space) {
                for a in &m.generators {
                    assert!(is_isometry(a, &m.metric), "{} {}", m.id, a.label);
                    for b in &m.generators {
                        let c = commutator(a, b).unwrap();
                        assert!(c.mat.is_zero(), "{}: [{},{}] != 0", m.id, a.label, b.label);
                    }
                }
            }
        }
    }

    #[test]
    fn isometry_basis_dims() {
        assert_eq!(isometry_basis(&MetricForm::identity(4)).len(), 10);
        assert_eq!(isometry_basis(&MetricForm::antidiag_blocks()).len(), 10);
        assert_eq!(isometry_basis(&MetricForm::light_cone_3()).len(), 6);
    }

    #[test]
    fn cartan_centralizer() {
        let m = &masa_catalog(SpaceId::M4C)[0];
        let rep = centralizer_check(m);
        assert!(rep.is_maximal);
        assert_eq!(rep.centralizer_dim, 2);
    }

    #[test]
    fn single_translation_not_maximal() {
        let gens = vec![elem(4, "E15", &[term(1, 1, 5)])];
        let rep = centralizer_of("span{E15}", &gens, &MetricForm::identity(4));
        assert!(!rep.is_maximal);
        assert!(rep.centralizer_dim > 1);
    }

    #[test]
    fn m43_centralizer_dim_3() {
        let m = masa_by_id("M43_1").unwrap();
        let rep = centralizer_check(&m);
        assert!(rep.is_maximal);
        assert_eq!(rep.centralizer_dim, 3);
    }

    #[test]
    fn all_catalog_masas_maximal() {
        for space in [SpaceId::M4C, SpaceId::M3C, SpaceId::M4R, SpaceId::M31, SpaceId::M22] {
            for m in masa_catalog(space) {
                let rep = centralizer_check(&m);
                assert!(rep.is_maximal, "{} centralizer dim {}", m.id, rep.centralizer_dim);
            }
        }
    }

    #[test]
    fn conjugate_identity_is_noop() {
        let m = masa_by_id("M42_0").unwrap();
        let (k2, els) = conjugate(&QiMat::identity(4), &m.metric, &m.generators).unwrap();
        assert_eq!(k2.mat, m.metric.mat);
        for (a, b) in els.iter().zip(&m.generators) {
            assert_eq!(a.mat, b.mat);
        }
    }

    #[test]
    fn mixed_cartan_transform_maps_identity_metric() {
        // g I g^T equals the antidiagonal-block metric
        let g = mixed_cartan_transform();
        let (k2, _) = conjugate(&g, &MetricForm::identity(4), &[]).unwrap();
        assert_eq!(k2.mat, MetricForm::antidiag_blocks().mat);
    }

    #[test]
    fn m2_transform_preserves_metric() {
        let g = m2_transform();
        let k = qimat_to_c(&MetricForm::antidiag_blocks().mat);
        let p = g.mul(&k).mul(&g.transpose());
        for i in 0..4 {
            for j in 0..4 {
                assert!((p[(i, j)] - k[(i, j)]).norm() < 1e-14, "({i},{j})");
            }
        }
    }

    #[test]
    fn exp_group_law_all_catalog_generators() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(42);
        for space in [SpaceId::M4C, SpaceId::M22] {
            for m in masa_catalog(space) {
                for g in &m.generators {
                    for _ in 0..100 {
                        let s = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                        let t = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                        let est = one_param_exp(g, s + t).unwrap();
                        let e1 = one_param_exp(g, s).unwrap();
                        let e2 = one_param_exp(g, t).unwrap();
                        let prod = e1.mul(&e2);
                        let num: f64 = est
                            .data
                            .iter()
                            .zip(&prod.data)
                            .map(|(a, b)| (a - b).norm())
                            .sum();
                        let den: f64 = est.data.iter().map(|z| z.norm()).sum();
                        assert!(num <= 1e-12 * den, "{} {}", m.id, g.label);
                    }
                }
            }
        }
    }

    #[test]
    fn exp_preserves_metric_rotational_generators() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(7);
        for space in [SpaceId::M4C, SpaceId::M22, SpaceId::M31] {
            for m in masa_catalog(space) {
                let kf = qimat_to_c(&m.metric.mat);
                for g in &m.generators {
                    if !g.translation().iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let t = Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5));
                    let e = one_param_exp(g, t).unwrap();
                    let lin = CMat::from_fn(4, 4, |i, j| e[(i, j)]);
                    let p = lin.mul(&kf).mul(&lin.transpose());
                    let num: f64 = p
                        .data
                        .iter()
                        .zip(&kf.data)
                        .map(|(a, b)| (a - b).norm())
                        .sum();
                    assert!(num < 1e-12 * (1.0 + kf.data.iter().map(|z| z.norm()).sum::<f64>()));
                }
            }
        }
    }

    #[test]
    fn generic_rational_instantiation_still_commutes() {
        use crate::rng::SplitMix64;
        // random small-rational combinations of the generators stay Abelian
        let mut rng = SplitMix64::new(11);
        for m in masa_catalog(SpaceId::M4C) {
            let mut a = AlgebraElement::zero(4);
            let mut b = AlgebraElement::zero(4);
            for g in &m.generators {
                let ca = Qi::new(q(rng.range_i64(-5, 5), rng.range_i64(1, 7)), q(0, 1));
                let cb = Qi::new(q(rng.range_i64(-5, 5), rng.range_i64(1, 7)), q(0, 1));
                a = a.add(&g.scale(&ca));
                b = b.add(&g.scale(&cb));
            }
            assert!(commutator(&a, &b).unwrap().mat.is_zero(), "{}", m.id);
        }
    }
}
