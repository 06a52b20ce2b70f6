use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::sum::csum;

/// A point of `C^k`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CPoint(Vec<Complex64>);

impl CPoint {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("point must have at least one component"));
        }
        Ok(CPoint(entries))
    }

    pub fn from_reals(entries: &[f64]) -> Result<Self> {
        CPoint::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(k: usize) -> Self {
        CPoint(vec![Complex64::new(0.0, 0.0); k])
    }

    pub fn splat(k: usize, value: Complex64) -> Self {
        CPoint(vec![value; k])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    /// `<x> = x_1 + ... + x_k`, compensated.
    pub fn angle(&self) -> Complex64 {
        csum(self.0.iter().copied())
    }

    /// `|x_1| + ... + |x_k|`.
    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &CPoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::domain(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// Componentwise product `x ∘ y`.
    pub fn hadamard(&self, other: &CPoint) -> Result<CPoint> {
        self.check_dim(other)?;
        Ok(CPoint(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    /// Componentwise quotient `x / y`; every denominator must be nonzero.
    pub fn quotient(&self, other: &CPoint) -> Result<CPoint> {
        self.check_dim(other)?;
        if let Some(i) = other.0.iter().position(|z| *z == Complex64::new(0.0, 0.0)) {
            return Err(Error::domain(format!("division by zero component {i}")));
        }
        Ok(CPoint(self.0.iter().zip(&other.0).map(|(a, b)| a / b).collect()))
    }

    /// `x^n = x_1^{n_1} ... x_k^{n_k}` (with `0^0 = 1`).
    pub fn power(&self, n: &MultiIndex) -> Result<Complex64> {
        if self.dim() != n.dim() {
            return Err(Error::domain(format!(
                "dimension mismatch: point {} vs index {}",
                self.dim(),
                n.dim()
            )));
        }
        Ok(self
            .0
            .iter()
            .zip(n.entries())
            .map(|(z, &e)| z.powu(e as u32))
            .product())
    }

    pub fn scale(&self, c: Complex64) -> CPoint {
        CPoint(self.0.iter().map(|z| z * c).collect())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> CPoint {
        CPoint(self.0.iter().map(|&z| f(z)).collect())
    }

    /// Reorders the components: `result[i] = self[perm[i]]`.
    pub fn permute(&self, perm: &[usize]) -> CPoint {
        CPoint(perm.iter().map(|&i| self.0[i]).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Index<usize> for CPoint {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl Add for &CPoint {
    type Output = CPoint;
    fn add(self, rhs: &CPoint) -> CPoint {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CPoint {
    type Output = CPoint;
    fn sub(self, rhs: &CPoint) -> CPoint {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        CPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &CPoint {
    type Output = CPoint;
    fn neg(self) -> CPoint {
        CPoint(self.0.iter().map(|z| -z).collect())
    }
}

impl Mul<Complex64> for &CPoint {
    type Output = CPoint;
    fn mul(self, rhs: Complex64) -> CPoint {
        self.scale(rhs)
    }
}

impl From<CPoint> for Vec<Complex64> {
    fn from(p: CPoint) -> Self {
        p.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn algebra() {
        let x = CPoint::new(vec![c(1.0, 1.0), c(2.0, 0.0)]).unwrap();
        let y = CPoint::new(vec![c(0.0, 1.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(x.angle(), c(3.0, 1.0));
        assert_eq!(x.hadamard(&y).unwrap().entries(), &[c(-1.0, 1.0), c(8.0, 0.0)]);
        assert_eq!(x.quotient(&y).unwrap().entries(), &[c(1.0, -1.0), c(0.5, 0.0)]);
        let n = MultiIndex::new(vec![2, 3]).unwrap();
        assert_eq!(x.power(&n).unwrap(), c(0.0, 2.0) * 8.0);
    }

    #[test]
    fn mismatches_and_zero_denominators() {
        let x = CPoint::from_reals(&[1.0, 2.0]).unwrap();
        let y = CPoint::from_reals(&[1.0]).unwrap();
        assert!(x.hadamard(&y).is_err());
        assert!(x.quotient(&CPoint::from_reals(&[1.0, 0.0]).unwrap()).is_err());
        assert!(x.power(&MultiIndex::zeros(3)).is_err());
    }
}
