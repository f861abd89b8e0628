//! Exact Gaussian-rational scalars and a small dense linear algebra kernel.
//!
//! Catalog matrices live in Q(i), so commutators, isometry conditions and
//! centralizer solves are decided exactly, with no tolerances. The same
//! matrix type is reused over `Complex64` for the floating-point paths.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Gaussian rational: a + b i with a, b in Q.
pub type Qi = num_complex::Complex<BigRational>;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(re: i64) -> Qi {
    Qi::new(q(re, 1), q(0, 1))
}

pub fn qi_frac(re_n: i64, re_d: i64) -> Qi {
    Qi::new(q(re_n, re_d), q(0, 1))
}

pub fn qi_im(im: i64) -> Qi {
    Qi::new(q(0, 1), q(im, 1))
}

/// Scalar field usable by the matrix kernel.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Approximate magnitude, used only for pivot selection.
    fn pivot_mag(&self) -> f64;
}

impl FieldScalar for Qi {
    fn zero() -> Self {
        Qi::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Qi::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn pivot_mag(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::MAX);
        let im = self.im.to_f64().unwrap_or(f64::MAX);
        re.abs() + im.abs()
    }
}

impl FieldScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn pivot_mag(&self) -> f64 {
        self.norm()
    }
}

/// Dense row-major matrix over an exact or floating field.
#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: FieldScalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.clone() * s.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() + y.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() - y.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..self.cols {
                    s = s + self[(i, j)].clone() * v[j].clone();
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            // best pivot by magnitude keeps the float instantiation stable
            let mut best = r;
            let mut best_mag = self[(r, c)].pivot_mag();
            for i in (r + 1)..self.rows {
                let mag = self[(i, c)].pivot_mag();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if self[(best, c)].is_zero() {
                continue;
            }
            self.swap_rows(r, best);
            let inv = T::one() / self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let t = f.clone() * self[(r, j)].clone();
                        self[(i, j)] = self[(i, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one Vec per basis vector.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![T::zero(); self.cols];
                v[fc] = T::one();
                for (pr, &pc) in pivots.iter().enumerate() {
                    v[pc] = T::zero() - m[(pr, fc)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = T::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let mut best = c;
            let mut best_mag = m[(c, c)].pivot_mag();
            for i in (c + 1)..n {
                let mag = m[(i, c)].pivot_mag();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if m[(best, c)].is_zero() {
                return T::zero();
            }
            if best != c {
                m.swap_rows(c, best);
                det = T::zero() - det;
            }
            det = det * m[(c, c)].clone();
            let inv = T::one() / m[(c, c)].clone();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let t = f.clone() * m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - t;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub type QiMat = Mat<Qi>;
pub type CMat = Mat<Complex64>;

pub fn qi_to_c(x: &Qi) -> Complex64 {
    Complex64::new(x.re.to_f64().unwrap(), x.im.to_f64().unwrap())
}

pub fn qimat_to_c(m: &QiMat) -> CMat {
    Mat {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(qi_to_c).collect(),
    }
}

/// Renders a Gaussian rational as "re+im i" for the JSON catalog export.
pub fn qi_to_string(x: &Qi) -> String {
    if x.im.is_zero() {
        format!("{}", x.re)
    } else if x.re.is_zero() {
        format!("{}i", x.im)
    } else if x.im < BigRational::zero() {
        format!("{}{}i", x.re, x.im)
    } else {
        format!("{}+{}i", x.re, x.im)
    }
}

impl fmt::Debug for Mat<Qi> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}\t", qi_to_string(&self[(i, j)]))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
