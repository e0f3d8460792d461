//! Point and affine reflections, and affine group elements `(g, λ)` acting as
//! `x ↦ g x + λ`.
//!
//! Two affine reflection formulas are provided. [`ReflectionFormula::RootLattice`]
//! reflects in the hyperplane `(x, α) = k`; [`ReflectionFormula::VoronoiLattice`]
//! adds `kα` after the point reflection, so it fixes the hyperplane
//! `2(x, α)/(α, α) = k`. The two agree for long roots (`(α, α) = 2`) and, for the
//! short roots, the Voronoi formula at `2k` equals the root-lattice formula at `k`.
//! Lattice and tiling code uses the Voronoi formula throughout.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::vector::{VectorN, EPS};

/// Which affine reflection formula to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectionFormula {
    /// `λ − 2((λ, α) − k) α / (α, α)`
    RootLattice,
    /// `λ − 2(λ, α) α / (α, α) + k α`
    VoronoiLattice,
}

fn check_root(alpha: &VectorN) -> Result<f64> {
    let nn = alpha.norm_sq();
    if nn <= EPS {
        Err(Error::ZeroRoot)
    } else {
        Ok(nn)
    }
}

/// Point reflection of `v` in the hyperplane orthogonal to `alpha`.
pub fn reflect(v: &VectorN, alpha: &VectorN) -> Result<VectorN> {
    let nn = check_root(alpha)?;
    v.check_dim(alpha.dim())?;
    Ok(v - &alpha.scale(2.0 * v.dot(alpha) / nn))
}

/// Affine reflection in the hyperplane `(x, α) = k`.
pub fn affine_reflect_root_lattice(v: &VectorN, alpha: &VectorN, k: i64) -> Result<VectorN> {
    let nn = check_root(alpha)?;
    v.check_dim(alpha.dim())?;
    Ok(v - &alpha.scale(2.0 * (v.dot(alpha) - k as f64) / nn))
}

/// Affine reflection for the lattice generated by the Voronoi cell: `r_α(v) + kα`.
pub fn affine_reflect_voronoi_lattice(v: &VectorN, alpha: &VectorN, k: i64) -> Result<VectorN> {
    let reflected = reflect(v, alpha)?;
    Ok(&reflected + &alpha.scale(k as f64))
}

/// An affine map `x ↦ linear · x + translation`.
///
/// Composition follows `(g₁, λ₁)(g₂, λ₂) = (g₁g₂, g₁λ₂ + λ₁)`: the right
/// operand acts first.
#[derive(Clone, PartialEq)]
pub struct AffineElement {
    linear: DMatrix<f64>,
    translation: VectorN,
}

impl AffineElement {
    pub fn new(linear: DMatrix<f64>, translation: VectorN) -> Result<Self> {
        let n = translation.dim();
        if linear.nrows() != n || linear.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: linear.nrows().max(linear.ncols()),
            });
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: DMatrix::identity(n, n),
            translation: VectorN::zeros(n),
        }
    }

    pub fn translation_by(t: VectorN) -> Self {
        Self {
            linear: DMatrix::identity(t.dim(), t.dim()),
            translation: t,
        }
    }

    /// A point transformation (zero translation).
    pub fn linear_only(linear: DMatrix<f64>) -> Result<Self> {
        let n = linear.nrows();
        Self::new(linear, VectorN::zeros(n))
    }

    /// Build from the `(n+1)×(n+1)` augmented matrix `[[g, λ], [0, 1]]`.
    pub fn from_augmented(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let n = m.nrows() - 1;
        let linear = m.view((0, 0), (n, n)).into_owned();
        let t: DVector<f64> = m.view((0, n), (n, 1)).column(0).into_owned();
        Self::new(linear, VectorN::from_dvector(t))
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn translation(&self) -> &VectorN {
        &self.translation
    }

    /// The `(n+1)×(n+1)` augmented matrix representation.
    pub fn augmented(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::identity(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&self.linear);
        for i in 0..n {
            m[(i, n)] = self.translation[i];
        }
        m
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rhs.dim(),
            });
        }
        let linear = &self.linear * &rhs.linear;
        let t = &self.linear * rhs.translation.as_dvector() + self.translation.as_dvector();
        Ok(Self {
            linear,
            translation: VectorN::from_dvector(t),
        })
    }

    pub fn apply(&self, v: &VectorN) -> Result<VectorN> {
        v.check_dim(self.dim())?;
        Ok(VectorN::from_dvector(
            &self.linear * v.as_dvector() + self.translation.as_dvector(),
        ))
    }

    /// `(g⁻¹, −g⁻¹λ)`, using `g⁻¹ = gᵀ` for orthogonal `g`.
    pub fn inverse(&self) -> Self {
        let inv = self.linear.transpose();
        let t = -(&inv * self.translation.as_dvector());
        Self {
            linear: inv,
            translation: VectorN::from_dvector(t),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same dimension");
        }
        acc
    }

    /// The point part `(g, 0)`.
    pub fn point_part(&self) -> Self {
        Self {
            linear: self.linear.clone(),
            translation: VectorN::zeros(self.dim()),
        }
    }

    /// Largest entrywise distance between augmented matrices.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let dl = (&self.linear - &other.linear).abs().max();
        dl.max(self.translation.max_abs_diff(&other.translation))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::identity(self.dim()), tol)
    }

    /// Largest entry of `|gᵀg − I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        (self.linear.transpose() * &self.linear - DMatrix::<f64>::identity(n, n))
            .abs()
            .max()
    }

    /// Entries rounded to multiples of `tol`, usable as a hash key for
    /// deduplicating group elements.
    pub fn canonical_key(&self, tol: f64) -> Vec<i64> {
        self.linear
            .iter()
            .chain(self.translation.coords().iter())
            .map(|x| (x / tol).round() as i64)
            .collect()
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineElement{}", self.augmented())
    }
}

/// The affine element realizing the reflection in `alpha` with offset `k`.
/// `k = 0` gives the point reflection for either formula.
pub fn reflection_element(
    alpha: &VectorN,
    k: i64,
    formula: ReflectionFormula,
) -> Result<AffineElement> {
    let nn = check_root(alpha)?;
    let n = alpha.dim();
    let a = alpha.as_dvector();
    let linear = DMatrix::<f64>::identity(n, n) - (a * a.transpose()) * (2.0 / nn);
    let translation = match formula {
        ReflectionFormula::RootLattice => alpha.scale(2.0 * k as f64 / nn),
        ReflectionFormula::VoronoiLattice => alpha.scale(k as f64),
    };
    AffineElement::new(linear, translation)
}
