use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::Sl2Error;
use crate::scalar::{epsilon, Scalar};

/// A 2x2 complex matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m11: Scalar,
    pub m12: Scalar,
    pub m21: Scalar,
    pub m22: Scalar,
}

impl Mat2 {
    pub fn new(m11: Scalar, m12: Scalar, m21: Scalar, m22: Scalar) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    /// Builds a matrix and rejects it unless its determinant is one
    /// (exactly on the exact backend, within the global tolerance otherwise).
    pub fn unimodular(m11: Scalar, m12: Scalar, m21: Scalar, m22: Scalar) -> Result<Self, Sl2Error> {
        let m = Mat2::new(m11, m12, m21, m22);
        m.check_unimodular()?;
        Ok(m)
    }

    pub fn ints(m11: i64, m12: i64, m21: i64, m22: i64) -> Self {
        Mat2::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn identity() -> Self {
        Mat2::ints(1, 0, 0, 1)
    }

    pub fn scalar(s: Scalar) -> Self {
        Mat2::new(s.clone(), Scalar::zero(), Scalar::zero(), s)
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat2 {
        Mat2::new(f(&self.m11), f(&self.m12), f(&self.m21), f(&self.m22))
    }

    pub fn is_exact(&self) -> bool {
        self.entries().iter().all(|s| s.is_exact())
    }

    pub fn to_float(&self) -> Mat2 {
        self.map(Scalar::to_float)
    }

    pub fn trace(&self) -> Scalar {
        &self.m11 + &self.m22
    }

    pub fn det(&self) -> Scalar {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        self.map(|x| x * s)
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 + &other.m11,
            &self.m12 + &other.m12,
            &self.m21 + &other.m21,
            &self.m22 + &other.m22,
        )
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        self.add(&-other)
    }

    /// `[[m22, -m12], [-m21, m11]]`; the inverse of a unimodular matrix.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.m22.clone(), -&self.m12, -&self.m21, self.m11.clone())
    }

    pub fn inverse(&self) -> Result<Mat2, Sl2Error> {
        let det = self.det();
        let inv_det = det.checked_inv().ok_or(Sl2Error::Singular)?;
        Ok(self.adjugate().scale(&inv_det))
    }

    pub fn check_unimodular(&self) -> Result<(), Sl2Error> {
        let det = self.det();
        if det.near(&Scalar::one()) {
            Ok(())
        } else {
            Err(Sl2Error::NotUnimodular((det - Scalar::one()).abs()))
        }
    }

    /// `self * other * self^-1` for unimodular `self`.
    pub fn conjugate(&self, other: &Mat2) -> Mat2 {
        self * other * self.adjugate()
    }

    /// Rescales to determinant one by `1/sqrt(det)`.
    pub fn normalized(&self) -> Result<Mat2, Sl2Error> {
        let root = self.det().sqrt();
        let inv = root.checked_inv().ok_or(Sl2Error::Singular)?;
        Ok(self.scale(&inv))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(a, b)| (a.to_c64() - b.to_c64()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|s| s.abs()).fold(0.0, f64::max)
    }

    /// Entrywise equality: exact for exact matrices, else within `eps`.
    pub fn approx_eq(&self, other: &Mat2, eps: f64) -> bool {
        self.entries()
            .iter()
            .zip(other.entries())
            .all(|(a, b)| a.approx_eq(b, eps))
    }

    pub fn near(&self, other: &Mat2) -> bool {
        self.approx_eq(other, epsilon())
    }

    /// Equal up to an overall sign.
    pub fn near_up_to_sign(&self, other: &Mat2, eps: f64) -> bool {
        self.approx_eq(other, eps) || self.approx_eq(&-other, eps)
    }

    pub fn is_plus_minus_identity(&self, eps: f64) -> bool {
        self.near_up_to_sign(&Mat2::identity(), eps)
    }

    pub fn from_c64(rows: [[num_complex::Complex64; 2]; 2]) -> Mat2 {
        Mat2::new(rows[0][0].into(), rows[0][1].into(), rows[1][0].into(), rows[1][1].into())
    }
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        )
    }
}

impl Mul<Mat2> for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Mul<&Mat2> for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        &self * rhs
    }
}

impl Mul<Mat2> for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        self * &rhs
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.map(|x| -x)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m11, self.m12, self.m21, self.m22)
    }
}

/// Product of a sequence of matrices, left to right.
pub fn product<'a>(ms: impl IntoIterator<Item = &'a Mat2>) -> Mat2 {
    ms.into_iter().fold(Mat2::identity(), |acc, m| acc * m)
}
