//! Vectors of the ambient space spanned by the orthonormal basis `l_1..l_n`,
//! plus the tolerances shared across the crate.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::DVector;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (inner products, matrix relations).
pub const EPS: f64 = 1e-12;

/// Default tolerance for geometric deduplication of projected points.
pub const EPS_GEO_DEFAULT: f64 = 1e-6;

/// Environment variable that overrides [`EPS_GEO_DEFAULT`].
pub const EPS_GEO_ENV: &str = "QLAT_EPS_GEO";

/// Geometric deduplication tolerance, read once from `QLAT_EPS_GEO` if set.
pub fn eps_geo() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        std::env::var(EPS_GEO_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
            .unwrap_or(EPS_GEO_DEFAULT)
    })
}

/// A vector in `R^n`, expressed in the orthonormal basis `l_1..l_n`.
#[derive(Clone, PartialEq)]
pub struct VectorN(DVector<f64>);

impl VectorN {
    pub fn zeros(n: usize) -> Self {
        Self(DVector::zeros(n))
    }

    /// The basis vector `l_{i+1}` (zero-based index `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = DVector::zeros(n);
        v[i] = 1.0;
        Self(v)
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Self(DVector::from_column_slice(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(DVector::from_iterator(
            coords.len(),
            coords.iter().map(|&c| c as f64),
        ))
    }

    pub fn from_dvector(v: DVector<f64>) -> Self {
        Self(v)
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_dvector(self) -> DVector<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(&self.0 * s)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.0.iter().all(|c| c.abs() <= tol)
    }

    /// Largest coordinate-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                got: self.dim(),
            })
        }
    }
}

impl Index<usize> for VectorN {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &VectorN {
    type Output = VectorN;

    fn add(self, rhs: &VectorN) -> VectorN {
        VectorN(&self.0 + &rhs.0)
    }
}

impl Sub for &VectorN {
    type Output = VectorN;

    fn sub(self, rhs: &VectorN) -> VectorN {
        VectorN(&self.0 - &rhs.0)
    }
}

impl Add for VectorN {
    type Output = VectorN;

    fn add(self, rhs: VectorN) -> VectorN {
        VectorN(self.0 + rhs.0)
    }
}

impl Sub for VectorN {
    type Output = VectorN;

    fn sub(self, rhs: VectorN) -> VectorN {
        VectorN(self.0 - rhs.0)
    }
}

impl Neg for &VectorN {
    type Output = VectorN;

    fn neg(self) -> VectorN {
        VectorN(-&self.0)
    }
}

impl Neg for VectorN {
    type Output = VectorN;

    fn neg(self) -> VectorN {
        VectorN(-self.0)
    }
}

impl Mul<f64> for &VectorN {
    type Output = VectorN;

    fn mul(self, rhs: f64) -> VectorN {
        self.scale(rhs)
    }
}

impl fmt::Debug for VectorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for VectorN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let a = VectorN::from_slice(&[1.0, -2.0, 0.5]);
        let b = VectorN::unit(3, 1);
        assert_eq!((&a + &b).coords(), &[1.0, -1.0, 0.5]);
        assert_eq!((&a - &b).coords(), &[1.0, -3.0, 0.5]);
        assert_eq!(a.dot(&b), -2.0);
        assert!((a.norm_sq() - 5.25).abs() < EPS);
        assert_eq!((-&b).coords(), &[0.0, -1.0, 0.0]);
    }

    #[test]
    fn geo_tolerance_defaults() {
        if std::env::var(EPS_GEO_ENV).is_err() {
            assert_eq!(eps_geo(), EPS_GEO_DEFAULT);
        }
    }
}
