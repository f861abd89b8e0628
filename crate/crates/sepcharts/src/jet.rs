//! Forward-mode automatic differentiation carrying value, gradient and
//! Hessian with respect to up to four curvilinear coordinates.
//!
//! All arithmetic is complex, so the same jets serve the holomorphic charts
//! on the complex spaces and the real forms (with zero imaginary parts).

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub const NVARS: usize = 4;

type C = Complex64;

fn cz() -> C {
    C::new(0.0, 0.0)
}

/// A degree-2 Taylor jet in at most [`NVARS`] variables: value, gradient and
/// symmetric Hessian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: C,
    pub d: [C; NVARS],
    pub h: [[C; NVARS]; NVARS],
}

impl Jet2 {
    pub fn constant(v: C) -> Self {
        Jet2 {
            v,
            d: [cz(); NVARS],
            h: [[cz(); NVARS]; NVARS],
        }
    }

    pub fn constant_re(v: f64) -> Self {
        Self::constant(C::new(v, 0.0))
    }

    /// The i-th independent coordinate seeded at `v`.
    pub fn var(i: usize, v: C) -> Self {
        let mut j = Self::constant(v);
        j.d[i] = C::new(1.0, 0.0);
        j
    }

    /// Applies a scalar function given its value and first two derivatives at
    /// `self.v`, by the chain rule.
    pub fn apply1(&self, f: C, df: C, d2f: C) -> Jet2 {
        let mut out = Jet2::constant(f);
        for i in 0..NVARS {
            out.d[i] = df * self.d[i];
        }
        for i in 0..NVARS {
            for k in 0..NVARS {
                out.h[i][k] = df * self.h[i][k] + d2f * self.d[i] * self.d[k];
            }
        }
        out
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.v.exp();
        self.apply1(e, e, e)
    }

    pub fn ln(&self) -> Jet2 {
        let inv = 1.0 / self.v;
        self.apply1(self.v.ln(), inv, -inv * inv)
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.apply1(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = (self.v.sin(), self.v.cos());
        self.apply1(c, -s, -c)
    }

    pub fn tan(&self) -> Jet2 {
        self.sin() / self.cos()
    }

    pub fn sinh(&self) -> Jet2 {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.apply1(s, c, s)
    }

    pub fn cosh(&self) -> Jet2 {
        let (s, c) = (self.v.sinh(), self.v.cosh());
        self.apply1(c, s, c)
    }

    pub fn tanh(&self) -> Jet2 {
        self.sinh() / self.cosh()
    }

    pub fn sqrt(&self) -> Jet2 {
        let s = self.v.sqrt();
        self.apply1(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn recip(&self) -> Jet2 {
        let inv = 1.0 / self.v;
        self.apply1(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    pub fn powi(&self, n: i32) -> Jet2 {
        match n {
            0 => Jet2::constant(C::new(1.0, 0.0)),
            1 => *self,
            _ => {
                let f = self.v.powi(n);
                let df = C::new(n as f64, 0.0) * self.v.powi(n - 1);
                let d2f = C::new((n * (n - 1)) as f64, 0.0) * self.v.powi(n - 2);
                self.apply1(f, df, d2f)
            }
        }
    }

    /// Principal-branch complex power with constant exponent.
    pub fn powc(&self, a: C) -> Jet2 {
        let f = self.v.powc(a);
        let df = a * self.v.powc(a - 1.0);
        let d2f = a * (a - 1.0) * self.v.powc(a - 2.0);
        self.apply1(f, df, d2f)
    }

    pub fn scale(&self, s: C) -> Jet2 {
        let mut out = *self;
        out.v *= s;
        for i in 0..NVARS {
            out.d[i] *= s;
            for k in 0..NVARS {
                out.h[i][k] *= s;
            }
        }
        out
    }

    /// Largest absolute entry across value, gradient and Hessian.
    pub fn max_norm(&self) -> f64 {
        let mut m = self.v.norm();
        for i in 0..NVARS {
            m = m.max(self.d[i].norm());
            for k in 0..NVARS {
                m = m.max(self.h[i][k].norm());
            }
        }
        m
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        let mut out = self;
        out.v += rhs.v;
        for i in 0..NVARS {
            out.d[i] += rhs.d[i];
            for k in 0..NVARS {
                out.h[i][k] += rhs.h[i][k];
            }
        }
        out
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(C::new(-1.0, 0.0))
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let mut out = Jet2::constant(self.v * rhs.v);
        for i in 0..NVARS {
            out.d[i] = self.d[i] * rhs.v + self.v * rhs.d[i];
        }
        for i in 0..NVARS {
            for k in 0..NVARS {
                out.h[i][k] = self.h[i][k] * rhs.v
                    + self.d[i] * rhs.d[k]
                    + self.d[k] * rhs.d[i]
                    + self.v * rhs.h[i][k];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Add<C> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: C) -> Jet2 {
        let mut out = self;
        out.v += rhs;
        out
    }
}

impl Sub<C> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: C) -> Jet2 {
        let mut out = self;
        out.v -= rhs;
        out
    }
}

impl Mul<C> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: C) -> Jet2 {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(C::new(rhs, 0.0))
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: f64) -> Jet2 {
        self + C::new(rhs, 0.0)
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: f64) -> Jet2 {
        self - C::new(rhs, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn product_rule() {
        // f(x, y) = x^2 y at (2, 3): fx = 2xy = 12, fxx = 2y = 6, fxy = 2x = 4
        let x = Jet2::var(0, C::new(2.0, 0.0));
        let y = Jet2::var(1, C::new(3.0, 0.0));
        let f = x * x * y;
        assert!(close(f.v, C::new(12.0, 0.0), 1e-14));
        assert!(close(f.d[0], C::new(12.0, 0.0), 1e-14));
        assert!(close(f.d[1], C::new(4.0, 0.0), 1e-14));
        assert!(close(f.h[0][0], C::new(6.0, 0.0), 1e-14));
        assert!(close(f.h[0][1], C::new(4.0, 0.0), 1e-14));
        assert!(close(f.h[1][1], cz(), 1e-14));
    }

    #[test]
    fn chain_rule_exp_sin() {
        // f(x) = exp(sin x): f' = cos x e^{sin x}, f'' = (cos^2 x - sin x) e^{sin x}
        let x0 = C::new(0.7, 0.2);
        let x = Jet2::var(0, x0);
        let f = x.sin().exp();
        let e = x0.sin().exp();
        assert!(close(f.v, e, 1e-13));
        assert!(close(f.d[0], x0.cos() * e, 1e-13));
        assert!(close(f.h[0][0], (x0.cos() * x0.cos() - x0.sin()) * e, 1e-12));
    }

    #[test]
    fn division_and_sqrt() {
        let x0 = C::new(1.3, -0.4);
        let x = Jet2::var(0, x0);
        let f = Jet2::constant(C::new(1.0, 0.0)) / x.sqrt();
        // f = x^{-1/2}: f' = -1/2 x^{-3/2}, f'' = 3/4 x^{-5/2}
        assert!(close(f.v, x0.powf(-0.5), 1e-13));
        assert!(close(f.d[0], -0.5 * x0.powf(-1.5), 1e-13));
        assert!(close(f.h[0][0], 0.75 * x0.powf(-2.5), 1e-12));
    }

    #[test]
    fn hessian_symmetry() {
        let x = Jet2::var(0, C::new(0.3, 0.1));
        let y = Jet2::var(1, C::new(-0.8, 0.4));
        let z = Jet2::var(2, C::new(1.1, 0.0));
        let f = (x * y).exp() * z.cosh() + (y * z).sin();
        for i in 0..NVARS {
            for k in 0..NVARS {
                assert!(close(f.h[i][k], f.h[k][i], 1e-13));
            }
        }
    }

    #[test]
    fn powc_matches_ln_exp() {
        let x = Jet2::var(0, C::new(0.9, 0.3));
        let a = C::new(0.5, -1.2);
        let f = x.powc(a);
        let g = (x.ln().scale(a)).exp();
        assert!(close(f.v, g.v, 1e-12));
        assert!(close(f.d[0], g.d[0], 1e-12));
        assert!(close(f.h[0][0], g.h[0][0], 1e-11));
    }
}
