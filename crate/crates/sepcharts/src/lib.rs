//! Executable catalog of subgroup-type separable coordinate systems in flat
//! four-dimensional (and degenerate three-dimensional) spaces.
//!
//! The crate materializes the full pipeline:
//!
//! * [`algebra`] — exact matrix realizations of the isometry algebras, the
//!   catalog of maximal Abelian subalgebras (MASAs), and one-parameter
//!   exponentials;
//! * [`charts`] — coordinate charts induced by each MASA, with two
//!   independent evaluation paths (group action vs. closed form);
//! * [`calculus`] — induced metrics and Laplace–Beltrami operators obtained
//!   by automatic differentiation, checked against tabulated coefficients;
//! * [`opsets`] — exact differential-operator algebra over polynomial
//!   coefficients, used to verify the commuting sets that characterize each
//!   chart;
//! * [`specfun`] — the complex special functions entering the separated
//!   solutions;
//! * [`separation`] — separated Schrödinger/Laplace solutions verified as
//!   PDE residuals;
//! * [`cli`] — the `sepcharts` command-line interface.
//!
//! Everything that can be checked exactly (commutators, isometry conditions,
//! centralizers, operator brackets) is checked over Gaussian rationals; the
//! remaining analytic identities are verified numerically at pinned
//! tolerances on deterministically sampled points.

pub mod algebra;
pub mod calculus;
pub mod charts;
pub mod cli;
pub mod exact;
pub mod jet;
pub mod opsets;
pub mod rng;
pub mod separation;
pub mod specfun;
