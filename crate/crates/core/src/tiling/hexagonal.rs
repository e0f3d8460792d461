//! Rank 3: the projected cubic lattice is the triangular lattice spanned by
//! `l_p1` and `l_p3`, with `l_p2 = l_p1 + l_p3`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::error::Result;
use crate::planar::polygon_key;
use crate::principal::{principal_basis, projected_units, PlanarPoint};
use crate::roots::{build_root_system, BasisChoice};
use crate::vector::eps_geo;

/// Equilateral triangles on the points `k₁a + k₃b` with hexagonal distance
/// `max(|k₁|, |k₃|, |k₁ − k₃|) ≤ extent`.
#[derive(Clone, Debug)]
pub struct HexagonalLattice {
    pub a: PlanarPoint,
    pub b: PlanarPoint,
    pub extent: usize,
    pub points: Vec<PlanarPoint>,
    pub triangles: Vec<[PlanarPoint; 3]>,
}

fn hex_distance(k1: i64, k3: i64) -> i64 {
    k1.abs().max(k3.abs()).max((k1 - k3).abs())
}

pub fn hexagonal_lattice(extent: usize) -> Result<HexagonalLattice> {
    let basis = principal_basis(&build_root_system(3, BasisChoice::Cyclic)?)?;
    let units = projected_units(&basis, 1)?;
    let (a, b) = (units[0], units[2]);
    let e = extent.max(1) as i64;
    let at = |k1: i64, k3: i64| a.scale(k1 as f64).add(b.scale(k3 as f64));
    let inside = |k1: i64, k3: i64| hex_distance(k1, k3) <= e;
    let mut points = Vec::new();
    let mut triangles = Vec::new();
    for k1 in -e..=e {
        for k3 in -e..=e {
            if !inside(k1, k3) {
                continue;
            }
            points.push(at(k1, k3));
            // Angle(a, b) is 120°, so a + b completes both triangles.
            if inside(k1 + 1, k3) && inside(k1 + 1, k3 + 1) {
                triangles.push([at(k1, k3), at(k1 + 1, k3), at(k1 + 1, k3 + 1)]);
            }
            if inside(k1 + 1, k3 + 1) && inside(k1, k3 + 1) {
                triangles.push([at(k1, k3), at(k1 + 1, k3 + 1), at(k1, k3 + 1)]);
            }
        }
    }
    Ok(HexagonalLattice {
        a,
        b,
        extent: e as usize,
        points,
        triangles,
    })
}

impl HexagonalLattice {
    pub fn keys(&self) -> BTreeSet<Vec<(i64, i64)>> {
        self.triangles
            .iter()
            .map(|t| polygon_key(t, eps_geo()))
            .collect()
    }

    /// Whether rotating by `π/3` about `center` maps every triangle within
    /// `radius` of it onto a triangle of the patch.
    pub fn sixfold_about(&self, center: PlanarPoint, radius: f64) -> bool {
        let keys = self.keys();
        self.triangles
            .iter()
            .filter(|t| t.iter().all(|p| p.distance(center) <= radius + 1e-9))
            .all(|t| {
                let img = t.map(|p| p.rotate_about(center, PI / 3.0));
                keys.contains(&polygon_key(&img, eps_geo()))
            })
    }

    /// Radius of the largest disc about the origin covered by the patch.
    pub fn inner_radius(&self) -> f64 {
        self.extent as f64 * self.a.norm() * (PI / 6.0).cos()
    }
}
