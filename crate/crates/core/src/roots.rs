//! Simple roots, extended root and Cartan matrix of `B_n`.
//!
//! The Cartan matrix uses the row convention `C[i][j] = 2(α_i, α_j)/(α_j, α_j)`,
//! so for the standard ordering the asymmetric pair sits in the last row and
//! column: `C[n-2][n-1] = -2`, `C[n-1][n-2] = -1`.
//!
//! A *cyclic* basis is one for which the Coxeter element `R = R₁R₂`, with `R₁`
//! the product of reflections in the odd-indexed roots and `R₂` in the even
//! ones, sends `l_1 → l_2 → … → l_n → −l_1`. Ranks 3, 4 and 5 use the
//! tabulated orderings; other ranks are obtained by conjugating the standard
//! basis with the signed permutation that straightens the orbit of `l_1`.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reflection::reflect;
use crate::vector::{VectorN, EPS};

/// Which simple-root ordering to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisChoice {
    /// `α_i = l_i − l_{i+1}` for `i < n`, `α_n = l_n`.
    Standard,
    /// Roots whose Coxeter element cyclically permutes `l_1..l_n` with a sign flip.
    Cyclic,
}

impl fmt::Display for BasisChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisChoice::Standard => f.write_str("standard"),
            BasisChoice::Cyclic => f.write_str("cyclic"),
        }
    }
}

/// The simple roots of `B_n`, in Dynkin order: long roots `α_1..α_{n−1}`
/// forming a chain, then the short root `α_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    pub n: usize,
    pub simple_roots: Vec<VectorN>,
    /// Negative of the highest root.
    pub extended_root: VectorN,
    pub cartan: DMatrix<i64>,
    pub basis_choice: BasisChoice,
}

impl RootSystem {
    /// Coxeter number `h = 2n`.
    pub fn h(&self) -> usize {
        2 * self.n
    }
}

/// `2α/(α, α)`.
pub fn coroot(alpha: &VectorN) -> Result<VectorN> {
    let nn = alpha.norm_sq();
    if nn <= EPS {
        return Err(Error::ZeroRoot);
    }
    Ok(alpha.scale(2.0 / nn))
}

/// `C[i][j] = 2(α_i, α_j)/(α_j, α_j)`, rejecting non-integral entries and
/// linearly dependent input.
pub fn cartan_matrix(roots: &[VectorN]) -> Result<DMatrix<i64>> {
    let k = roots.len();
    if k == 0 {
        return Err(Error::InvalidRoots("empty root list".into()));
    }
    let dim = roots[0].dim();
    for r in roots {
        r.check_dim(dim)?;
        if r.norm_sq() <= EPS {
            return Err(Error::ZeroRoot);
        }
    }
    let gram = DMatrix::from_fn(k, k, |i, j| roots[i].dot(&roots[j]));
    if gram.clone().determinant().abs() <= 1e-9 {
        return Err(Error::InvalidRoots("roots are linearly dependent".into()));
    }
    let mut c = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let v = 2.0 * gram[(i, j)] / gram[(j, j)];
            let r = v.round();
            if (v - r).abs() > 1e-9 {
                return Err(Error::InvalidRoots(format!(
                    "non-integral Cartan entry {v} at ({i}, {j})"
                )));
            }
            c[(i, j)] = r as i64;
        }
    }
    Ok(c)
}

fn standard_roots(n: usize) -> Vec<VectorN> {
    (0..n)
        .map(|i| {
            if i + 1 < n {
                &VectorN::unit(n, i) - &VectorN::unit(n, i + 1)
            } else {
                VectorN::unit(n, i)
            }
        })
        .collect()
}

fn ints(n: usize, entries: &[(usize, i64)]) -> VectorN {
    let mut c = vec![0i64; n];
    for &(i, v) in entries {
        c[i - 1] = v;
    }
    VectorN::from_ints(&c)
}

fn tabulated_cyclic_roots(n: usize) -> Option<Vec<VectorN>> {
    let roots = match n {
        3 => vec![
            ints(3, &[(2, 1), (3, -1)]),
            ints(3, &[(3, 1), (1, -1)]),
            ints(3, &[(1, 1)]),
        ],
        4 => vec![
            ints(4, &[(2, 1), (3, -1)]),
            ints(4, &[(3, 1), (1, -1)]),
            ints(4, &[(1, 1), (4, -1)]),
            ints(4, &[(4, 1)]),
        ],
        5 => vec![
            ints(5, &[(2, 1), (3, -1)]),
            ints(5, &[(3, 1), (1, -1)]),
            ints(5, &[(1, 1), (4, -1)]),
            ints(5, &[(4, 1), (5, 1)]),
            ints(5, &[(5, -1)]),
        ],
        _ => return None,
    };
    Some(roots)
}

/// Apply `R₁R₂` (odd-indexed reflections after even-indexed ones) to `v`.
pub(crate) fn apply_coxeter(roots: &[VectorN], v: &VectorN) -> Result<VectorN> {
    let mut out = v.clone();
    // R₂ acts first: reflections in the even-indexed (1-based) roots.
    for parity in [1usize, 0] {
        for (i, a) in roots.iter().enumerate().rev() {
            if i % 2 == parity {
                out = reflect(&out, a)?;
            }
        }
    }
    Ok(out)
}

/// Whether `R₁R₂` maps `l_i → l_{i+1}` and `l_n → −l_1`.
pub fn is_cyclic_basis(roots: &[VectorN]) -> Result<bool> {
    let n = roots.len();
    for i in 0..n {
        let image = apply_coxeter(roots, &VectorN::unit(n, i))?;
        let expected = if i + 1 < n {
            VectorN::unit(n, i + 1)
        } else {
            -&VectorN::unit(n, 0)
        };
        if !image.approx_eq(&expected, EPS) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjugate the standard basis by the signed permutation `w` with
/// `w(R_std^{k−1} l_1) = l_k`.
fn synthesize_cyclic_roots(n: usize) -> Result<Vec<VectorN>> {
    let std = standard_roots(n);
    // orbit[k] = (axis, sign) with R_std^k l_1 = sign · l_axis.
    let mut orbit = Vec::with_capacity(n);
    let mut v = VectorN::unit(n, 0);
    for _ in 0..n {
        let (axis, &c) = v
            .coords()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .ok_or(Error::CyclicSynthesis(n))?;
        if (c.abs() - 1.0).abs() > EPS || (v.norm_sq() - 1.0).abs() > EPS {
            return Err(Error::CyclicSynthesis(n));
        }
        orbit.push((axis, c.signum()));
        v = apply_coxeter(&std, &v)?;
    }
    // w maps l_axis to sign · l_{k+1}.
    let mut image = vec![None; n];
    for (k, &(axis, sign)) in orbit.iter().enumerate() {
        if image[axis].is_some() {
            return Err(Error::CyclicSynthesis(n));
        }
        image[axis] = Some((k, sign));
    }
    let w = |a: &VectorN| -> VectorN {
        let mut out = vec![0.0; n];
        for (axis, slot) in image.iter().enumerate() {
            let (k, sign) = slot.expect("orbit covers every axis");
            out[k] += sign * a[axis];
        }
        VectorN::from_slice(&out)
    };
    Ok(std.iter().map(w).collect())
}

fn extended_root_of(roots: &[VectorN]) -> VectorN {
    let n = roots.len();
    if n == 1 {
        return -&roots[0];
    }
    let mut highest = roots[0].clone();
    for r in &roots[1..] {
        highest = &highest + &r.scale(2.0);
    }
    -highest
}

/// Build the root system of `B_n` for the given ordering.
pub fn build_root_system(n: usize, basis_choice: BasisChoice) -> Result<RootSystem> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let simple_roots = match basis_choice {
        BasisChoice::Standard => standard_roots(n),
        BasisChoice::Cyclic => match (n, tabulated_cyclic_roots(n)) {
            (_, Some(r)) => r,
            (1 | 2, None) => standard_roots(n),
            _ => synthesize_cyclic_roots(n)?,
        },
    };
    if basis_choice == BasisChoice::Cyclic && !is_cyclic_basis(&simple_roots)? {
        return Err(Error::CyclicSynthesis(n));
    }
    let cartan = cartan_matrix(&simple_roots)?;
    let extended_root = extended_root_of(&simple_roots);
    Ok(RootSystem {
        n,
        simple_roots,
        extended_root,
        cartan,
        basis_choice,
    })
}
