//! Small dense vectors and matrices for low-dimensional decision spaces.
//!
//! Decision spaces here have at most [`MAX_DIM`] coordinates, so a
//! [`Vector`] is a fixed-capacity, stack-allocated `Copy` value. The
//! per-round loops of the learners never touch the heap.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{OcoError, Result};

/// Largest supported decision-space dimension.
pub const MAX_DIM: usize = 16;

/// A point or gradient in `R^d`, `1 <= d <= MAX_DIM`.
#[derive(Clone, Copy)]
pub struct Vector {
    dim: usize,
    data: [f64; MAX_DIM],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "vector dimension {dim} outside 1..={MAX_DIM}"
        );
        Self {
            dim,
            data: [0.0; MAX_DIM],
        }
    }

    pub fn filled(dim: usize, value: f64) -> Self {
        let mut v = Self::zeros(dim);
        v.as_mut_slice().fill(value);
        v
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v[i] = 1.0;
        v
    }

    /// Builds a vector from a slice, rejecting empty, oversized or non-finite input.
    pub fn try_from_slice(coords: &[f64]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(OcoError::InvalidParameter(format!(
                "vector length {} outside 1..={MAX_DIM}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(OcoError::NonFinite(format!("vector entry {bad}")));
        }
        let mut v = Self::zeros(coords.len());
        v.as_mut_slice().copy_from_slice(coords);
        Ok(v)
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn from_slice(coords: &[f64]) -> Self {
        Self::try_from_slice(coords).expect("invalid vector literal")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data[..self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.as_slice().iter()
    }

    #[inline]
    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `ℓ_p` norm for `p >= 1` (finite).
    pub fn norm_p(&self, p: f64) -> f64 {
        if p == 2.0 {
            return self.norm();
        }
        if p == 1.0 {
            return self.iter().map(|c| c.abs()).sum();
        }
        // Scale by the max entry to avoid overflow in |x|^p.
        let m = self.norm_inf();
        if m == 0.0 {
            return 0.0;
        }
        m * self.iter().map(|c| pow_abs(c / m, p)).sum::<f64>().powf(1.0 / p)
    }

    pub fn norm_inf(&self) -> f64 {
        self.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    pub fn dist_sq(&self, other: &Vector) -> f64 {
        (*self - *other).norm_sq()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn scale(&self, s: f64) -> Vector {
        let mut out = *self;
        out.as_mut_slice().iter_mut().for_each(|c| *c *= s);
        out
    }

    /// `self + s * other`.
    #[inline]
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        let mut out = *self;
        for (o, b) in out.as_mut_slice().iter_mut().zip(other.as_slice()) {
            *o += s * b;
        }
        out
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Vector {
        let mut out = *self;
        out.as_mut_slice().iter_mut().for_each(|c| *c = f(*c));
        out
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|c| c.is_finite())
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.as_slice().to_vec()
    }
}

impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for Vector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.as_mut_slice()[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(self, rhs: Vector) -> Vector {
        self.axpy(1.0, &rhs)
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(self, rhs: Vector) -> Vector {
        self.axpy(-1.0, &rhs)
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Vector) {
        *self = *self + rhs;
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, rhs: Vector) {
        *self = *self - rhs;
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(self, s: f64) -> Vector {
        self.scale(s)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(deserializer)?;
        Vector::try_from_slice(&coords).map_err(serde::de::Error::custom)
    }
}

/// `|a|^p`, with `powi` for small integer exponents.
#[inline]
pub(crate) fn pow_abs(a: f64, p: f64) -> f64 {
    let a = a.abs();
    if p.fract() == 0.0 && (0.0..=16.0).contains(&p) {
        a.powi(p as i32)
    } else {
        a.powf(p)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = s;
        }
        Self { dim, data }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::scaled_identity(diag.len(), 0.0);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = *d;
        }
        m
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend_from_slice(r);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn mul_vec(&self, v: &Vector) -> Vector {
        debug_assert_eq!(v.dim(), self.dim);
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            out[i] = row.iter().zip(v.as_slice()).map(|(a, b)| a * b).sum();
        }
        out
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
    }

    /// `vᵀ M v`.
    #[inline]
    pub fn quad_form(&self, v: &Vector) -> f64 {
        v.dot(&self.mul_vec(v))
    }

    /// `M += s · u uᵀ`.
    pub fn add_outer(&mut self, u: &Vector, s: f64) {
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i * self.dim + j] += s * u[i] * u[j];
            }
        }
    }

    pub fn add_scaled_identity(&mut self, s: f64) {
        for i in 0..self.dim {
            self.data[i * self.dim + i] += s;
        }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// Cholesky factorization; `None` if the matrix is not positive definite.
    pub fn cholesky(&self) -> Option<Vec<f64>> {
        let n = self.dim;
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return None;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Some(l)
    }

    /// Solves `M x = b` for symmetric positive-definite `M`.
    pub fn solve_spd(&self, b: &Vector) -> Option<Vector> {
        self.solve_spd_shifted(&Vector::zeros(self.dim), b)
    }

    /// Solves `(M + diag(shift)) x = b`, factoring on the stack.
    pub fn solve_spd_shifted(&self, shift: &Vector, b: &Vector) -> Option<Vector> {
        let n = self.dim;
        debug_assert!(n <= MAX_DIM && shift.dim() == n && b.dim() == n);
        let mut l = [0.0; MAX_DIM * MAX_DIM];
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.get(i, j);
                if i == j {
                    s += shift[i];
                }
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 || !s.is_finite() {
                        return None;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        let mut y = *b;
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[i * n + k] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[k * n + i] * y[k];
            }
            y[i] = s / l[i * n + i];
        }
        Some(y)
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
    ///
    /// Returns the eigenvalues and a matrix whose columns are the matching
    /// orthonormal eigenvectors.
    pub fn symmetric_eigen(&self) -> (Vector, Matrix) {
        let n = self.dim;
        debug_assert!(n <= MAX_DIM);
        let mut a = self.data.clone();
        let mut v = Matrix::identity(n);
        let scale = self.max_abs();
        for _ in 0..64 {
            let mut off = 0.0;
            for i in 0..n {
                for j in 0..i {
                    off += a[i * n + j] * a[i * n + j];
                }
            }
            if off.sqrt() <= 1e-17 * scale || off == 0.0 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v.data[k * n + p];
                        let vkq = v.data[k * n + q];
                        v.data[k * n + p] = c * vkp - s * vkq;
                        v.data[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        let mut values = Vector::zeros(n);
        for i in 0..n {
            values[i] = a[i * n + i];
        }
        (values, v)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric(1e-12 * (1.0 + self.max_abs())) && self.cholesky().is_some()
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, b| a.max(b.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_eigen_reconstructs() {
        let m = Matrix::from_rows(&[&[4.0, 1.0, -2.0], &[1.0, 3.0, 0.5], &[-2.0, 0.5, 5.0]]);
        let (vals, vecs) = m.symmetric_eigen();
        for j in 0..3 {
            let mut col = Vector::zeros(3);
            for i in 0..3 {
                col[i] = vecs.get(i, j);
            }
            let mv = m.mul_vec(&col);
            assert!(mv.dist(&col.scale(vals[j])) < 1e-12);
            assert!((col.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn spd_solve_recovers_rhs() {
        let m = Matrix::from_rows(&[&[4.0, 1.0], &[1.0, 3.0]]);
        let b = Vector::from_slice(&[1.0, 2.0]);
        let x = m.solve_spd(&b).unwrap();
        assert!(m.mul_vec(&x).dist(&b) < 1e-14);
        assert!(Matrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).solve_spd(&b).is_none());
    }

    #[test]
    fn norms() {
        let v = Vector::from_slice(&[3.0, -4.0]);
        assert_eq!(v.norm(), 5.0);
        assert_eq!(v.norm_inf(), 4.0);
        assert!((v.norm_p(1.0) - 7.0).abs() < 1e-15);
        assert!((v.norm_p(4.0) - (81.0f64 + 256.0).powf(0.25)).abs() < 1e-13);
    }

    #[test]
    fn rejects_oversized_and_nonfinite_input() {
        assert!(Vector::try_from_slice(&[0.0; MAX_DIM + 1]).is_err());
        assert!(Vector::try_from_slice(&[]).is_err());
        assert!(Vector::try_from_slice(&[f64::NAN]).is_err());
    }
}
