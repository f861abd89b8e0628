//! Exact differential-operator algebra with polynomial coefficients.
//!
//! Operators are finite sums `p(x) d^alpha` with Gaussian-rational
//! polynomial coefficients, so commutators evaluate to exact zero (or an
//! exact nonzero certificate) instead of a small float. This is how the
//! commuting symmetry sets attached to each chart are checked.

use crate::algebra::{isometry_basis, masa_by_id, AlgebraElement, MetricForm};
use crate::charts::Chart;
use crate::exact::{qi, Qi};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Multi-index over at most four ambient variables.
pub type MIdx = [u8; 4];

fn midx_add(a: MIdx, b: MIdx) -> MIdx {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn midx_order(a: MIdx) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

/// All gamma with gamma <= alpha componentwise.
fn sub_indices(alpha: MIdx) -> Vec<MIdx> {
    let mut out = Vec::new();
    for g0 in 0..=alpha[0] {
        for g1 in 0..=alpha[1] {
            for g2 in 0..=alpha[2] {
                for g3 in 0..=alpha[3] {
                    out.push([g0, g1, g2, g3]);
                }
            }
        }
    }
    out
}

fn binom(n: u8, k: u8) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn multi_binom(alpha: MIdx, gamma: MIdx) -> Qi {
    let mut r = 1i64;
    for i in 0..4 {
        r *= binom(alpha[i], gamma[i]);
    }
    qi(r)
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// A polynomial in the ambient variables with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<MIdx, Qi>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Qi) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; 4], c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Qi::one())
    }

    pub fn var(i: usize) -> Self {
        let mut idx = [0u8; 4];
        idx[i] = 1;
        let mut p = Poly::zero();
        p.add_term(idx, Qi::one());
        p
    }

    pub fn add_term(&mut self, idx: MIdx, c: Qi) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Qi::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(*idx, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&qi(-1))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Qi) -> Poly {
        let mut out = Poly::zero();
        for (idx, v) in &self.terms {
            out.add_term(*idx, v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                out.add_term(midx_add(*ia, *ib), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// d/dx_i.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (idx, c) in &self.terms {
            if idx[i] == 0 {
                continue;
            }
            let mut nidx = *idx;
            nidx[i] -= 1;
            out.add_term(nidx, c.clone() * qi(idx[i] as i64));
        }
        out
    }

    /// Repeated derivative d^gamma.
    pub fn derivative_multi(&self, gamma: MIdx) -> Poly {
        let mut p = self.clone();
        for (i, &g) in gamma.iter().enumerate() {
            for _ in 0..g {
                p = p.derivative(i);
                if p.is_zero() {
                    return p;
                }
            }
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&i| midx_order(i)).max().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", crate::exact::qi_to_string(c))?;
            for (i, &e) in idx.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " x{}", i + 1)?,
                    _ => write!(f, " x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// differential operators
// ---------------------------------------------------------------------------

/// A differential operator `sum_alpha p_alpha(x) d^alpha` with exact
/// polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<MIdx, Poly>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    /// Multiplication by a polynomial (order-zero operator).
    pub fn from_poly(p: Poly) -> Self {
        let mut op = DiffOp::zero();
        op.add_term([0; 4], p);
        op
    }

    /// d/dx_i.
    pub fn d(i: usize) -> Self {
        let mut idx = [0u8; 4];
        idx[i] = 1;
        let mut op = DiffOp::zero();
        op.add_term(idx, Poly::one());
        op
    }

    pub fn add_term(&mut self, idx: MIdx, p: Poly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(Poly::zero);
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (idx, p) in &other.terms {
            out.add_term(*idx, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Qi) -> DiffOp {
        let mut out = DiffOp::zero();
        for (idx, p) in &self.terms {
            out.add_term(*idx, p.scale(c));
        }
        out
    }

    /// Operator composition `self . other` by the Leibniz rule:
    /// `p d^a . q d^b = sum_{g <= a} C(a, g) p (d^g q) d^{a - g + b}`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (alpha, p) in &self.terms {
            for (beta, q) in &other.terms {
                for gamma in sub_indices(*alpha) {
                    let dq = q.derivative_multi(gamma);
                    if dq.is_zero() {
                        continue;
                    }
                    let coef = multi_binom(*alpha, gamma);
                    let rem = [
                        alpha[0] - gamma[0],
                        alpha[1] - gamma[1],
                        alpha[2] - gamma[2],
                        alpha[3] - gamma[3],
                    ];
                    out.add_term(midx_add(rem, *beta), p.mul(&dq).scale(&coef));
                }
            }
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&i| midx_order(i)).max().unwrap_or(0)
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (alpha, p) in &self.terms {
            let df = f.derivative_multi(*alpha);
            if df.is_zero() {
                continue;
            }
            out = out.add(&p.mul(&df));
        }
        out
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{p}]")?;
            for (i, &e) in idx.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " d{}", i + 1)?,
                    _ => write!(f, " d{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[a, b] = a . b - b . a`, exactly.
pub fn op_commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.compose(b).sub(&b.compose(a))
}

// ---------------------------------------------------------------------------
// from algebra elements to operators
// ---------------------------------------------------------------------------

/// The first-order operator of the vector field induced by an affine
/// isometry generator: `sum_i ((A x)_i + t_i) d_i`.
pub fn generator_operator(g: &AlgebraElement) -> DiffOp {
    let n = g.space_dim();
    let lin = g.linear_part();
    let mut op = DiffOp::zero();
    for i in 0..n {
        let mut coef = Poly::zero();
        for j in 0..n {
            let a = lin[(i, j)].clone();
            if !a.is_zero() {
                coef = coef.add(&Poly::var(j).scale(&a));
            }
        }
        let t = g.mat[(i, n)].clone();
        if !t.is_zero() {
            coef = coef.add(&Poly::constant(t));
        }
        if !coef.is_zero() {
            let mut idx = [0u8; 4];
            idx[i] = 1;
            op.add_term(idx, coef);
        }
    }
    op
}

/// The flat-space wave/Laplace operator `sum K^{pq} d_p d_q` of a constant
/// metric, with the exact inverse of K.
pub fn box_operator(metric: &MetricForm) -> DiffOp {
    let n = metric.dim();
    let kinv = metric
        .mat
        .inverse()
        .expect("metric forms are invertible by construction");
    let mut op = DiffOp::zero();
    for p in 0..n {
        for q in 0..n {
            let c = kinv[(p, q)].clone();
            if c.is_zero() {
                continue;
            }
            let mut idx = [0u8; 4];
            idx[p] += 1;
            idx[q] += 1;
            op.add_term(idx, Poly::constant(c));
        }
    }
    op
}

/// Rotation generator `L_ab` preserving the form K: the vector field of the
/// linear map `(E_ab - E_ba) K^{-1}`.
pub fn rotation_operator(metric: &MetricForm, a: usize, b: usize) -> DiffOp {
    let n = metric.dim();
    let kinv = metric.mat.inverse().expect("invertible metric");
    let mut op = DiffOp::zero();
    for i in 0..n {
        // row i of (E_ab - E_ba) K^{-1}
        let mut coef = Poly::zero();
        for j in 0..n {
            let mut c = Qi::zero();
            if i == a {
                c = c + kinv[(b, j)].clone();
            }
            if i == b {
                c = c - kinv[(a, j)].clone();
            }
            if !c.is_zero() {
                coef = coef.add(&Poly::var(j).scale(&c));
            }
        }
        if !coef.is_zero() {
            let mut idx = [0u8; 4];
            idx[i] = 1;
            op.add_term(idx, coef);
        }
    }
    op
}

/// The second-order rotational Casimir `C2 = (1/2) sum_ab L^{ab} L_{ab}`
/// with indices raised and lowered by K.
pub fn casimir_operator(metric: &MetricForm) -> DiffOp {
    let n = metric.dim();
    let k = &metric.mat;
    let mut out = DiffOp::zero();
    let half = crate::exact::qi_frac(1, 2);
    // raised generators L^{ab} = rotation_operator(a, b); lowered by
    // contracting both indices with K
    let raised: Vec<Vec<DiffOp>> = (0..n)
        .map(|a| (0..n).map(|b| rotation_operator(metric, a, b)).collect())
        .collect();
    for a in 0..n {
        for b in 0..n {
            // L_{ab} = K_ac K_bd L^{cd}
            let mut lowered = DiffOp::zero();
            for cc in 0..n {
                for d in 0..n {
                    let coef = k[(a, cc)].clone() * k[(b, d)].clone();
                    if coef.is_zero() {
                        continue;
                    }
                    lowered = lowered.add(&raised[cc][d].scale(&coef));
                }
            }
            if lowered.is_zero() {
                continue;
            }
            out = out.add(&raised[a][b].compose(&lowered).scale(&half));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// per-chart commuting sets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct OpsetReport {
    pub chart_id: String,
    pub operators: Vec<String>,
    pub pairwise_commute: bool,
    pub commute_with_box: bool,
    pub first_failure: Option<String>,
    pub pass: bool,
}

/// The commuting operator set attached to a chart: the catalog subalgebra
/// generators when the chart descends from one, otherwise the generators of
/// its ignorable action parameters.
pub fn chart_operators(chart: &Chart) -> Vec<(String, DiffOp)> {
    if let Some(id) = chart.masa_id {
        if let Some(m) = masa_by_id(id) {
            return m
                .generators
                .iter()
                .map(|g| (g.label.clone(), generator_operator(g)))
                .collect();
        }
    }
    let ignorable: Vec<usize> = chart
        .params
        .iter()
        .enumerate()
        .filter(|(_, p)| p.ignorable)
        .map(|(i, _)| i)
        .collect();
    chart
        .action
        .iter()
        .filter(|f| ignorable.contains(&f.param_index))
        .map(|f| (f.gen.label.clone(), generator_operator(&f.gen)))
        .collect()
}

/// Exact verification that the chart's operator set commutes pairwise and
/// with the flat-space Laplacian of its metric.
pub fn verify_opset(chart: &Chart) -> OpsetReport {
    let ops = chart_operators(chart);
    let boxop = box_operator(&chart.metric);
    let mut pairwise = true;
    let mut with_box = true;
    let mut first_failure = None;
    for (i, (la, a)) in ops.iter().enumerate() {
        for (lb, b) in ops.iter().skip(i + 1) {
            let c = op_commutator(a, b);
            if !c.is_zero() {
                pairwise = false;
                if first_failure.is_none() {
                    first_failure = Some(format!("[{la}, {lb}] = {c}"));
                }
            }
        }
        let c = op_commutator(a, &boxop);
        if !c.is_zero() {
            with_box = false;
            if first_failure.is_none() {
                first_failure = Some(format!("[{la}, box] = {c}"));
            }
        }
    }
    OpsetReport {
        chart_id: chart.id.clone(),
        operators: ops.into_iter().map(|(l, _)| l).collect(),
        pairwise_commute: pairwise,
        commute_with_box: with_box,
        first_failure,
        pass: pairwise && with_box,
    }
}

// ---------------------------------------------------------------------------
// exact orbit rank of operator sets
// ---------------------------------------------------------------------------

/// Determinant of a small polynomial matrix by Laplace expansion.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(jj, _)| *jj != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let mut term = entry.mul(&poly_det(&minor));
        if j % 2 == 1 {
            term = term.neg();
        }
        det = det.add(&term);
    }
    det
}

/// Generic rank of the span of the vector fields of an operator set: the
/// largest k with a nonvanishing k x k polynomial minor of the coefficient
/// matrix.
pub fn operator_span_rank(ops: &[DiffOp], nvars: usize) -> usize {
    // coefficient matrix: row per operator, column per variable
    let rows: Vec<Vec<Poly>> = ops
        .iter()
        .map(|op| {
            (0..nvars)
                .map(|i| {
                    let mut idx = [0u8; 4];
                    idx[i] = 1;
                    op.terms.get(&idx).cloned().unwrap_or_else(Poly::zero)
                })
                .collect()
        })
        .collect();
    let nr = rows.len();
    for k in (1..=nr.min(nvars)).rev() {
        // all k-subsets of rows and columns
        for ri in subsets(nr, k) {
            for ci in subsets(nvars, k) {
                let sub: Vec<Vec<Poly>> = ri
                    .iter()
                    .map(|&r| ci.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                if !poly_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The generic orbit rank of a catalog subalgebra, from the exact polynomial
/// rank of its generator vector fields.
pub fn masa_span_rank(masa_id: &str) -> Option<usize> {
    let m = masa_by_id(masa_id)?;
    let n = m.metric.dim();
    let ops: Vec<DiffOp> = m.generators.iter().map(generator_operator).collect();
    Some(operator_span_rank(&ops, n))
}

/// Exercises the full isometry algebra of a metric form: every generator
/// must commute with the box operator, exactly.
pub fn isometries_commute_with_box(metric: &MetricForm) -> bool {
    let boxop = box_operator(metric);
    isometry_basis(metric)
        .iter()
        .all(|g| op_commutator(&generator_operator(g), &boxop).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{commutator, elem, SpaceId};
    use crate::charts::{chart_by_id, chart_catalog};
    use crate::exact::qi_im;

    #[test]
    fn leibniz_basics() {
        // [d_1, x_1] = 1
        let d1 = DiffOp::d(0);
        let x1 = DiffOp::from_poly(Poly::var(0));
        let c = op_commutator(&d1, &x1);
        assert_eq!(c, DiffOp::from_poly(Poly::one()));

        // d_1 . x_1^2 d_1 = x_1^2 d_1^2 + 2 x_1 d_1
        let x1sq_d1 = DiffOp::from_poly(Poly::var(0).mul(&Poly::var(0))).compose(&DiffOp::d(0));
        let comp = d1.compose(&x1sq_d1);
        let mut expect = DiffOp::zero();
        expect.add_term([2, 0, 0, 0], Poly::var(0).mul(&Poly::var(0)));
        expect.add_term([1, 0, 0, 0], Poly::var(0).scale(&qi(2)));
        assert_eq!(comp, expect);
    }

    #[test]
    fn operator_map_is_antihomomorphism() {
        // vector-field commutators reverse the matrix bracket:
        // op([a, b]) = -[op(a), op(b)]
        let a = elem(4, "a", &[(qi(1), 1, 2), (qi(-1), 2, 1), (qi(1), 1, 5)]);
        let b = elem(4, "b", &[(qi(1), 2, 3), (qi(-1), 3, 2), (qi_im(1), 4, 5)]);
        let lhs = generator_operator(&commutator(&a, &b).unwrap());
        let rhs = op_commutator(&generator_operator(&a), &generator_operator(&b)).scale(&qi(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn box_commutes_with_all_isometries() {
        for metric in [
            MetricForm::identity(4),
            MetricForm::antidiag_blocks(),
            MetricForm::light_cone(),
            MetricForm::full_antidiag(),
            MetricForm::diag_split(),
            MetricForm::diag_minkowski(),
            MetricForm::light_cone_3(),
        ] {
            assert!(isometries_commute_with_box(&metric));
        }
    }

    #[test]
    fn casimir_commutes_with_rotations_and_box() {
        for metric in [
            MetricForm::identity(4),
            MetricForm::diag_split(),
            MetricForm::antidiag_blocks(),
        ] {
            let c2 = casimir_operator(&metric);
            assert!(!c2.is_zero());
            assert_eq!(c2.order(), 2);
            let n = metric.dim();
            for a in 0..n {
                for b in (a + 1)..n {
                    let rot = rotation_operator(&metric, a, b);
                    assert!(op_commutator(&c2, &rot).is_zero(), "a={a} b={b}");
                }
            }
            assert!(op_commutator(&c2, &box_operator(&metric)).is_zero());
        }
    }

    #[test]
    fn all_chart_opsets_commute() {
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
                assert!(!rep.operators.is_empty(), "{}", ch.id);
                assert!(
                    rep.pass,
                    "{}: {:?}",
                    ch.id,
                    rep.first_failure.as_deref().unwrap_or("-")
                );
            }
        }
    }

    #[test]
    fn degenerate_subalgebra_has_rank_two_span() {
        assert_eq!(masa_span_rank("M47_2"), Some(2));
        assert_eq!(masa_span_rank("M46_2"), Some(3));
        assert_eq!(masa_span_rank("M41_0"), Some(2));
        assert_eq!(masa_span_rank("M43_1"), Some(3));
    }

    #[test]
    fn corrupted_set_fails() {
        let ch = chart_by_id("C_M41").unwrap();
        let mut ops = chart_operators(&ch);
        // corrupt the first operator with a rotation that breaks commutativity
        let bad = elem(4, "bad", &[(qi(1), 1, 3), (qi(-1), 3, 1)]);
        let op0 = ops[0].1.clone();
        ops[0].1 = op0.add(&generator_operator(&bad));
        let boxop = box_operator(&ch.metric);
        let mut broken = false;
        for (i, (_, a)) in ops.iter().enumerate() {
            for (_, b) in ops.iter().skip(i + 1) {
                if !op_commutator(a, b).is_zero() {
                    broken = true;
                }
            }
        }
        // the corrupted generator still commutes with box (it is a rotation)
        // but no longer with its partners
        assert!(broken);
        assert!(op_commutator(&ops[0].1, &boxop).is_zero());
    }

    #[test]
    fn apply_operator_to_polynomial() {
        // box on <x,Kx> gives 2n for the identity metric
        let metric = MetricForm::identity(4);
        let boxop = box_operator(&metric);
        let mut norm = Poly::zero();
        for i in 0..4 {
            norm = norm.add(&Poly::var(i).mul(&Poly::var(i)));
        }
        assert_eq!(boxop.apply(&norm), Poly::constant(qi(8)));
    }
}
