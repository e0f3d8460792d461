//! The dihedral subgroup `W(I₂(h)) ⊂ W(B_n)`, `h = 2n`, and its affine
//! extensions.
//!
//! `R₁` is the product of the (Voronoi-lattice) affine reflections in the
//! odd-indexed simple roots and `R₂` the product over the even-indexed ones.
//! Roots within each class are mutually orthogonal, so the order of the
//! factors does not matter.

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::reflection::{reflection_element, AffineElement, ReflectionFormula};
use crate::roots::RootSystem;
use crate::vector::{VectorN, EPS};

/// Tolerance used when deduplicating group elements.
const GROUP_TOL: f64 = 1e-9;

/// Generators, reflections and the `h′` label of one affine dihedral group.
#[derive(Clone, Debug)]
pub struct DihedralData {
    pub n: usize,
    pub h: usize,
    pub r1: AffineElement,
    pub r2: AffineElement,
    /// `R₁, R₂, (R₁R₂)ⁱR₁` for `i = 1..h−2`.
    pub reflections: Vec<AffineElement>,
    /// `2h/(h−2)`; `None` for rank 1, where `h = 2`.
    pub h_prime: Option<Ratio<i64>>,
}

impl DihedralData {
    pub fn new(rs: &RootSystem, offsets: &[i64]) -> Result<Self> {
        let (r1, r2) = dihedral_generators(rs, offsets)?;
        let h = rs.h();
        let reflections = reflection_elements(&r1, &r2, h);
        let h_prime = if h >= 4 { Some(h_prime(h)?) } else { None };
        Ok(Self {
            n: rs.n,
            h,
            r1,
            r2,
            reflections,
            h_prime,
        })
    }

    /// Point group data (all offsets zero).
    pub fn point(rs: &RootSystem) -> Result<Self> {
        Self::new(rs, &vec![0; rs.n])
    }

    pub fn coxeter(&self) -> AffineElement {
        coxeter_element(&self.r1, &self.r2)
    }

    pub fn extended(&self) -> AffineElement {
        extended_generator(&self.r1, &self.r2, self.n)
    }
}

/// `(R₁, R₂)` built from one integer offset per simple root.
pub fn dihedral_generators(
    rs: &RootSystem,
    offsets: &[i64],
) -> Result<(AffineElement, AffineElement)> {
    if offsets.len() != rs.n {
        return Err(Error::OffsetCount {
            expected: rs.n,
            got: offsets.len(),
        });
    }
    let mut r1 = AffineElement::identity(rs.n);
    let mut r2 = AffineElement::identity(rs.n);
    for (i, (alpha, &k)) in rs.simple_roots.iter().zip(offsets).enumerate() {
        let r = reflection_element(alpha, k, ReflectionFormula::VoronoiLattice)?;
        // Index i is zero-based: even i is an odd-indexed root.
        if i % 2 == 0 {
            r1 = r1.compose(&r)?;
        } else {
            r2 = r2.compose(&r)?;
        }
    }
    Ok((r1, r2))
}

/// `R = R₁R₂`.
pub fn coxeter_element(r1: &AffineElement, r2: &AffineElement) -> AffineElement {
    r1.compose(r2).expect("generators share a dimension")
}

/// The `h` reflections `{R₁, R₂, (R₁R₂)ⁱR₁ : i = 1..h−2}`.
pub fn reflection_elements(r1: &AffineElement, r2: &AffineElement, h: usize) -> Vec<AffineElement> {
    let r = coxeter_element(r1, r2);
    let mut out = vec![r1.clone(), r2.clone()];
    let mut power = r.clone();
    for _ in 1..h.saturating_sub(1) {
        out.push(power.compose(r1).expect("same dimension"));
        power = power.compose(&r).expect("same dimension");
    }
    out
}

/// `R_{0,1} = (R₁R₂)ⁿ R₁`.
pub fn extended_generator(r1: &AffineElement, r2: &AffineElement, n: usize) -> AffineElement {
    coxeter_element(r1, r2)
        .pow(n)
        .compose(r1)
        .expect("same dimension")
}

/// `h′ = 2h/(h−2)`, exact.
pub fn h_prime(h: usize) -> Result<Ratio<i64>> {
    if h < 4 || !h.is_multiple_of(2) {
        return Err(Error::InvalidCoxeterNumber(h));
    }
    Ok(Ratio::new(2 * h as i64, h as i64 - 2))
}

/// Determinant of the Gram matrix of the extended diagram `h′ — h — h′`
/// joined as a chain `R₀ — R₁ — R₂` with marks `h` and `h′`:
/// `[[2, −2cos(π/h), 0], [−2cos(π/h), 2, −2cos(π/h′)], [0, −2cos(π/h′), 2]]`.
pub fn affine_extension_determinant(h: usize, h_prime: f64) -> f64 {
    let a = (std::f64::consts::PI / h as f64).cos();
    let b = (std::f64::consts::PI / h_prime).cos();
    let m = DMatrix::from_row_slice(
        3,
        3,
        &[2.0, -2.0 * a, 0.0, -2.0 * a, 2.0, -2.0 * b, 0.0, -2.0 * b, 2.0],
    );
    m.determinant()
}

/// The point fixed by the affine generators built from `offsets`, found by
/// solving `(g − I)λ = −t` for the Coxeter element `(g, t)` and checked
/// against both generators.
pub fn fixed_point(rs: &RootSystem, offsets: &[i64]) -> Result<VectorN> {
    let (r1, r2) = dihedral_generators(rs, offsets)?;
    let r = coxeter_element(&r1, &r2);
    let n = rs.n;
    let a = r.linear() - DMatrix::<f64>::identity(n, n);
    let b = -r.translation().as_dvector();
    let lu = a.lu();
    let sol = lu
        .solve(&b)
        .ok_or_else(|| Error::Numerical("Coxeter element fixes a line".into()))?;
    let lambda = VectorN::from_dvector(sol);
    for g in [&r1, &r2] {
        let image = g.apply(&lambda)?;
        if !image.approx_eq(&lambda, 1e-9) {
            return Err(Error::Numerical(format!(
                "generator moves the fixed point {lambda} to {image}"
            )));
        }
    }
    Ok(lambda)
}

/// Closure of the point parts of `{R₁, R₂}` under composition, in breadth-first
/// order from the identity. Stops with an error past `limit` elements.
pub fn point_closure(
    r1: &AffineElement,
    r2: &AffineElement,
    limit: usize,
) -> Result<Vec<AffineElement>> {
    let gens = [r1.point_part(), r2.point_part()];
    let id = AffineElement::identity(r1.dim());
    let mut seen = BTreeSet::new();
    seen.insert(id.canonical_key(GROUP_TOL));
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let next = e.compose(g)?;
            if seen.insert(next.canonical_key(GROUP_TOL)) {
                if out.len() >= limit {
                    return Err(Error::Numerical(format!(
                        "group closure exceeded {limit} elements"
                    )));
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Smallest `k ≥ 1` with `gᵏ = I` (within tolerance), up to `max`.
pub fn element_order(g: &AffineElement, max: usize) -> Option<usize> {
    let mut p = g.clone();
    for k in 1..=max {
        if p.is_identity(GROUP_TOL) {
            return Some(k);
        }
        p = p.compose(g).ok()?;
    }
    None
}

/// Whether `R·l_i = l_{i+1}` and `R·l_n = −l_1` for the point part of `r`.
pub fn is_cyclic_coxeter(r: &AffineElement) -> bool {
    let n = r.dim();
    (0..n).all(|i| {
        let image = VectorN::from_dvector(r.linear() * VectorN::unit(n, i).as_dvector());
        let expected = if i + 1 < n {
            VectorN::unit(n, i + 1)
        } else {
            -&VectorN::unit(n, 0)
        };
        image.approx_eq(&expected, EPS)
    })
}
