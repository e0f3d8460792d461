//! Principal planes of `B_n` from the eigenvectors of its Cartan matrix.
//!
//! The Cartan matrix `C = G·D` (Gram matrix `G`, `D = diag(2/(α_j, α_j))`) is
//! not symmetric, but `D^{1/2} G D^{1/2}` is and shares its eigenvalues; right
//! eigenvectors of `C` are recovered as `X = D^{−1/2} y`. Each `X` is scaled so
//! its last component is 1, then
//!
//! `x̂_i = (h λ_i)^{−1/2} Σ_j (2α_j/(α_j, α_j)) X_{ji}`.
//!
//! Eigenvalues are sorted in decreasing order, which pairs them with the
//! exponents `m_i = 1, 3, …, 2n−1` through `λ_i = 2[1 + cos(m_i π/h)]`.
//! Plane `p` (1-based) is spanned by `(x̂_p, x̂_{n+1−p})`; plane 1 is the
//! Coxeter plane.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reflection::AffineElement;
use crate::roots::RootSystem;
use crate::vector::VectorN;

/// Largest off-block entry tolerated by [`block_diagonalize`].
pub const BLOCK_TOL: f64 = 1e-9;

/// A point of a principal plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

#[allow(clippy::should_implement_trait)]
impl PlanarPoint {
    pub const ORIGIN: PlanarPoint = PlanarPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Polar angle in `(−π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Rotation by `theta` about `center`.
    pub fn rotate_about(self, center: Self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let d = self.sub(center);
        center.add(Self::new(c * d.x - s * d.y, s * d.x + c * d.y))
    }

    /// Mirror image across the line through `center` with direction angle `phi`.
    pub fn reflect_about(self, center: Self, phi: f64) -> Self {
        let (s, c) = (2.0 * phi).sin_cos();
        let d = self.sub(center);
        center.add(Self::new(c * d.x + s * d.y, s * d.x - c * d.y))
    }

    pub fn distance(self, o: Self) -> f64 {
        self.sub(o).norm()
    }
}

impl fmt::Display for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Orthonormal axes `x̂_1..x̂_n` adapted to the Coxeter element.
#[derive(Clone, Debug)]
pub struct PrincipalBasis {
    pub n: usize,
    pub h: usize,
    pub exponents: Vec<usize>,
    pub eigenvalues: Vec<f64>,
    /// Right eigenvectors of the Cartan matrix with last component 1.
    pub eigenvectors: Vec<DVector<f64>>,
    pub axes: Vec<VectorN>,
    /// 1-based `(i, n+1−i)` pairs, one per plane.
    pub plane_pairs: Vec<(usize, usize)>,
    /// 1-based index of the unpaired axis for odd `n`.
    pub middle_axis: Option<usize>,
}

impl PrincipalBasis {
    pub fn plane_count(&self) -> usize {
        self.plane_pairs.len()
    }

    /// Exponent attached to plane `p` (1-based).
    pub fn plane_exponent(&self, plane: usize) -> Result<usize> {
        self.check_plane(plane)?;
        Ok(self.exponents[plane - 1])
    }

    fn check_plane(&self, plane: usize) -> Result<(usize, usize)> {
        if plane == 0 || plane > self.plane_pairs.len() {
            return Err(Error::InvalidPlane {
                plane,
                rank: self.n,
            });
        }
        Ok(self.plane_pairs[plane - 1])
    }

    /// Axes in block order `x̂_1, x̂_n, x̂_2, x̂_{n−1}, …`, middle axis last;
    /// rows of the change-of-basis matrix.
    pub fn block_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        for &(a, b) in &self.plane_pairs {
            order.push(a);
            order.push(b);
        }
        if let Some(m) = self.middle_axis {
            order.push(m);
        }
        order
    }

    /// Orthogonal matrix whose rows are the axes in block order.
    pub fn change_of_basis(&self) -> DMatrix<f64> {
        let order = self.block_order();
        DMatrix::from_fn(self.n, self.n, |r, c| self.axes[order[r] - 1][c])
    }

    /// Components of `v` along all axes, in block order.
    pub fn components(&self, v: &VectorN) -> Result<Vec<f64>> {
        v.check_dim(self.n)?;
        Ok(self
            .block_order()
            .into_iter()
            .map(|i| v.dot(&self.axes[i - 1]))
            .collect())
    }
}

/// Eigen-decompose the Cartan matrix and build the principal axes.
pub fn principal_basis(rs: &RootSystem) -> Result<PrincipalBasis> {
    let n = rs.n;
    let h = rs.h();
    let roots = &rs.simple_roots;
    let gram = DMatrix::from_fn(n, n, |i, j| roots[i].dot(&roots[j]));
    let d: Vec<f64> = roots.iter().map(|a| 2.0 / a.norm_sq()).collect();
    let sym = DMatrix::from_fn(n, n, |i, j| d[i].sqrt() * gram[(i, j)] * d[j].sqrt());
    let eig = SymmetricEigen::try_new(sym, 1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Cartan eigen-solver did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    let mut axes = Vec::with_capacity(n);
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        if lambda <= 0.0 {
            return Err(Error::Numerical(format!("non-positive eigenvalue {lambda}")));
        }
        let y = eig.eigenvectors.column(k);
        let mut x = DVector::from_fn(n, |j, _| y[j] / d[j].sqrt());
        let last = x[n - 1];
        if last.abs() < 1e-12 {
            return Err(Error::Numerical("eigenvector with vanishing last component".into()));
        }
        x /= last;
        let mut axis = VectorN::zeros(n);
        for j in 0..n {
            axis = &axis + &roots[j].scale(d[j] * x[j]);
        }
        axis = axis.scale(1.0 / (h as f64 * lambda).sqrt());
        eigenvalues.push(lambda);
        eigenvectors.push(x);
        axes.push(axis);
    }

    let exponents = (0..n).map(|i| 2 * i + 1).collect();
    let plane_pairs = (1..=n / 2).map(|i| (i, n + 1 - i)).collect();
    let middle_axis = (n % 2 == 1).then_some(n.div_ceil(2));
    Ok(PrincipalBasis {
        n,
        h,
        exponents,
        eigenvalues,
        eigenvectors,
        axes,
        plane_pairs,
        middle_axis,
    })
}

/// `((v, x̂_i), (v, x̂_{n+1−i}))` for plane `i` (1-based).
pub fn project(v: &VectorN, basis: &PrincipalBasis, plane: usize) -> Result<PlanarPoint> {
    let (a, b) = basis.check_plane(plane)?;
    v.check_dim(basis.n)?;
    Ok(PlanarPoint::new(
        v.dot(&basis.axes[a - 1]),
        v.dot(&basis.axes[b - 1]),
    ))
}

/// Projections of `l_1..l_n` onto a plane.
pub fn projected_units(basis: &PrincipalBasis, plane: usize) -> Result<Vec<PlanarPoint>> {
    (0..basis.n)
        .map(|i| project(&VectorN::unit(basis.n, i), basis, plane))
        .collect()
}

/// The linear part of an element written in the principal axes.
#[derive(Clone, Debug)]
pub struct BlockForm {
    /// One 2×2 block per plane, in plane order.
    pub blocks: Vec<DMatrix<f64>>,
    /// The 1×1 block on the middle axis (odd `n`).
    pub middle: Option<f64>,
    /// Largest entry outside the blocks.
    pub off_block: f64,
}

/// Conjugate the linear part of `e` into the principal axes and split it into
/// plane blocks.
pub fn block_diagonalize(e: &AffineElement, basis: &PrincipalBasis) -> Result<BlockForm> {
    if e.dim() != basis.n {
        return Err(Error::DimensionMismatch {
            expected: basis.n,
            got: e.dim(),
        });
    }
    let q = basis.change_of_basis();
    let m = &q * e.linear() * q.transpose();
    let n = basis.n;
    let block_of = |i: usize| i / 2;
    let mut off_block: f64 = 0.0;
    for r in 0..n {
        for c in 0..n {
            if block_of(r) != block_of(c) {
                off_block = off_block.max(m[(r, c)].abs());
            }
        }
    }
    if off_block > BLOCK_TOL {
        return Err(Error::Numerical(format!(
            "element is not block diagonal in the principal axes (residual {off_block:e})"
        )));
    }
    let blocks = (0..n / 2)
        .map(|p| m.view((2 * p, 2 * p), (2, 2)).into_owned())
        .collect();
    let middle = (n % 2 == 1).then(|| m[(n - 1, n - 1)]);
    Ok(BlockForm {
        blocks,
        middle,
        off_block,
    })
}

/// Signed rotation angle of a 2×2 rotation block.
pub fn rotation_angle(block: &DMatrix<f64>) -> f64 {
    block[(1, 0)].atan2(block[(0, 0)])
}

/// `(β_i, β_{n+1−i})` for plane `i`:
/// `β = √2 [sin(m_iπ/2h) x̂_i ± cos(m_iπ/2h) x̂_{n+1−i}]`.
pub fn beta_roots(basis: &PrincipalBasis, plane: usize) -> Result<(VectorN, VectorN)> {
    let (a, b) = basis.check_plane(plane)?;
    let m = basis.exponents[plane - 1] as f64;
    let t = m * PI / (2.0 * basis.h as f64);
    let (s, c) = t.sin_cos();
    let xa = &basis.axes[a - 1];
    let xb = &basis.axes[b - 1];
    let r2 = 2f64.sqrt();
    let beta_a = (&xa.scale(s) + &xb.scale(c)).scale(r2);
    let beta_b = (&xa.scale(s) - &xb.scale(c)).scale(r2);
    Ok((beta_a, beta_b))
}
