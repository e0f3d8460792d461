//! Seed patches and layer-by-layer growth.
//!
//! A layer is grown in two phases, both of which only ever add whole orbits
//! of the dihedral group about the patch centre, so the patch stays symmetric:
//!
//! 1. *Copy phase.* Every rotated subtiling is translated so that one of its
//!    corners lands on a corner of the patch. Copies are visited nearest
//!    first; a copy's orbit is accepted iff each of its tiles either coincides
//!    with a tile already present or is interior-disjoint from all of them.
//! 2. *Tile phase.* Tiles of those copies that share an edge with the patch
//!    are tried one orbit at a time under the same rule, in repeated passes
//!    until a pass adds nothing. This fills gaps where no whole copy fits,
//!    which happens for the decagonal case.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::planar::point_key;
use crate::principal::{project, PlanarPoint, PrincipalBasis};
use crate::vector::eps_geo;
use crate::voronoi::{half_vector, project_voronoi, voronoi_cell, Rhomb};

use super::{tile_key, DihedralFrame, Placement, SubTiling, TileKey, TileSet, TilingPatch};

/// Outer vertex used as the rotation centre when none is given.
pub fn default_seed_vertex(n: usize) -> Option<Vec<i8>> {
    match n {
        4 => Some(vec![1, 1, -1, -1]),
        5 => Some(vec![1; 5]),
        _ => None,
    }
}

/// Union of the `h` rotations of `s` about `p`.
pub fn seed_rotation_patch(
    s: &SubTiling,
    basis: &PrincipalBasis,
    p: PlanarPoint,
) -> Result<TilingPatch> {
    let h = basis.h;
    let mut set = TileSet::new();
    for k in 0..h {
        let theta = 2.0 * PI * k as f64 / h as f64;
        let rotated = s.tiles.iter().map(|t| t.map(|q| q.rotate_about(p, theta)));
        let fresh = set.admit(rotated).ok_or_else(|| {
            Error::GeometryDefect(format!("rotated copies overlap about {p}"))
        })?;
        for t in fresh {
            set.insert(t);
        }
    }
    Ok(TilingPatch {
        n: basis.n,
        h,
        frame: DihedralFrame::for_basis(basis, p),
        layers: 1,
        set,
    })
}

fn parse_seed(n: usize, signs: &[i8]) -> Result<()> {
    if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::InvalidSeed(format!(
            "expected {n} signs of ±1, got {signs:?}"
        )));
    }
    Ok(())
}

/// Rotate the first subtiling whose mirror line passes through the seed
/// vertex about that vertex. Returns the subtiling index and the patch.
///
/// Without an explicit seed the default vertex is used, or else the outer
/// vertices are tried in order.
pub fn anchor_seed(
    subs: &[SubTiling],
    basis: &PrincipalBasis,
    seed: Option<&[i8]>,
) -> Result<(usize, TilingPatch)> {
    let n = basis.n;
    let cell = voronoi_cell(n)?;
    let report = project_voronoi(&cell, basis, 1)?;
    let outer_radius = report
        .polygons
        .first()
        .map(|p| p.radius)
        .ok_or_else(|| Error::GeometryDefect("no projected polygon".into()))?;
    let is_outer = |p: PlanarPoint| (p.norm() - outer_radius).abs() < eps_geo();

    let try_vertex = |signs: &[i8]| -> Result<Option<(usize, TilingPatch)>> {
        let p = project(&half_vector(signs), basis, 1)?;
        if !is_outer(p) {
            return Err(Error::InvalidSeed(format!(
                "{signs:?} does not project onto the outer {}-gon",
                basis.h
            )));
        }
        for (k, s) in subs.iter().enumerate() {
            if s.line_passes_through(p) {
                if let Ok(patch) = seed_rotation_patch(s, basis, p) {
                    return Ok(Some((k, patch)));
                }
            }
        }
        Ok(None)
    };

    let explicit = seed.map(<[i8]>::to_vec).or_else(|| default_seed_vertex(n));
    if let Some(signs) = explicit {
        parse_seed(n, &signs)?;
        return try_vertex(&signs)?.ok_or_else(|| {
            Error::InvalidSeed(format!("no subtiling rotates cleanly about {signs:?}"))
        });
    }
    for i in &report.polygons[0].vertices {
        if let Some(found) = try_vertex(&cell.vertices[*i])? {
            return Ok(found);
        }
    }
    Err(Error::InvalidSeed("no outer vertex anchors a seed patch".into()))
}

/// Per-layer bookkeeping from [`grow_patch`].
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct GrowthReport {
    pub layers_requested: usize,
    pub layers_completed: usize,
    /// Tile count after each completed layer, starting with the input.
    pub tiles_per_layer: Vec<usize>,
    /// Orbits accepted in the copy phase, per layer.
    pub copy_orbits: Vec<usize>,
    /// Orbits accepted in the tile phase, per layer.
    pub tile_orbits: Vec<usize>,
    /// Why growth stopped early, if it did.
    pub diagnostic: Option<String>,
}

impl GrowthReport {
    pub fn is_complete(&self) -> bool {
        self.diagnostic.is_none()
    }
}

type EdgeKey = ((i64, i64), (i64, i64));

fn edge_keys(r: &Rhomb, eps: f64) -> [EdgeKey; 4] {
    std::array::from_fn(|i| {
        let a = point_key(r.vertices[i], eps);
        let b = point_key(r.vertices[(i + 1) % 4], eps);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    })
}

struct Copy {
    tiles: Vec<Rhomb>,
}

fn candidate_copies(set: &TileSet, subs: &[SubTiling], center: PlanarPoint) -> Vec<Copy> {
    let eps = eps_geo();
    let mut corners: BTreeMap<(i64, i64), PlanarPoint> = BTreeMap::new();
    for t in set.tiles() {
        for &v in &t.vertices {
            corners.entry(point_key(v, eps)).or_insert(v);
        }
    }
    // (rounded distance, subtiling, shift key) → (subtiling, shift)
    type ShiftKey = (i64, usize, (i64, i64));
    let mut shifts: BTreeMap<ShiftKey, (usize, PlanarPoint)> = BTreeMap::new();
    for (k, s) in subs.iter().enumerate() {
        for w in s.vertices() {
            for &v in corners.values() {
                let t = v.sub(w);
                let dist = (t.distance(center) * 1e6).round() as i64;
                shifts
                    .entry((dist, k, point_key(t, eps)))
                    .or_insert((k, t));
            }
        }
    }
    shifts
        .into_values()
        .map(|(k, t)| Copy {
            tiles: subs[k].tiles.iter().map(|r| r.map(|p| p.add(t))).collect(),
        })
        .collect()
}

fn orbit(frame: &DihedralFrame, tiles: &[Rhomb]) -> Vec<Rhomb> {
    frame
        .ops()
        .into_iter()
        .flat_map(|op| tiles.iter().map(move |t| frame.apply_rhomb(op, t)))
        .collect()
}

fn grow_layer(patch: &mut TilingPatch, subs: &[SubTiling]) -> (usize, usize) {
    let eps = eps_geo();
    let frame = patch.frame;
    let copies = candidate_copies(&patch.set, subs, frame.center);

    // Rejections against the layer's starting patch stay valid as it grows.
    let start = &patch.set;
    let viable: Vec<bool> = copies
        .par_iter()
        .map(|c| {
            let mut any_free = false;
            for t in &c.tiles {
                match start.classify(t) {
                    Placement::Conflict => return false,
                    Placement::Free => any_free = true,
                    Placement::Existing => {}
                }
            }
            any_free
        })
        .collect();

    let mut copy_orbits = 0;
    for (c, _) in copies.iter().zip(&viable).filter(|(_, &ok)| ok) {
        if let Some(fresh) = patch.set.admit(orbit(&frame, &c.tiles)) {
            if !fresh.is_empty() {
                for t in fresh {
                    patch.set.insert(t);
                }
                copy_orbits += 1;
            }
        }
    }

    let mut loose: BTreeMap<TileKey, Rhomb> = BTreeMap::new();
    for c in &copies {
        for t in &c.tiles {
            let k = tile_key(t);
            if !patch.set.contains(&k) {
                loose.entry(k).or_insert_with(|| t.clone());
            }
        }
    }

    let mut tile_orbits = 0;
    loop {
        let edges: BTreeSet<EdgeKey> = patch
            .set
            .tiles()
            .flat_map(|t| edge_keys(t, eps))
            .collect();
        let set = &patch.set;
        let mut pending: Vec<(i64, &TileKey, &Rhomb)> = loose
            .par_iter()
            .filter(|(k, t)| {
                !set.contains(k)
                    && edge_keys(t, eps).iter().any(|e| edges.contains(e))
                    && set.classify(t) == Placement::Free
            })
            .map(|(k, t)| {
                let d = (t.centroid().distance(frame.center) * 1e6).round() as i64;
                (d, k, t)
            })
            .collect();
        pending.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));

        let mut accepted = 0;
        let mut added_keys = Vec::new();
        for (_, k, t) in pending {
            if patch.set.contains(k) {
                continue;
            }
            if let Some(fresh) = patch.set.admit(orbit(&frame, std::slice::from_ref(t))) {
                if !fresh.is_empty() {
                    for r in fresh {
                        added_keys.push(tile_key(&r));
                        patch.set.insert(r);
                    }
                    accepted += 1;
                }
            }
        }
        for k in added_keys {
            loose.remove(&k);
        }
        tile_orbits += accepted;
        if accepted == 0 {
            break;
        }
    }
    (copy_orbits, tile_orbits)
}

/// Grow `layers` further layers around `patch` using the rotated subtilings.
///
/// Stops early, returning the partial patch with a diagnostic, if a layer
/// adds no tiles.
pub fn grow_patch(
    patch: &TilingPatch,
    subs: &[SubTiling],
    layers: usize,
) -> Result<(TilingPatch, GrowthReport)> {
    if subs.is_empty() {
        return Err(Error::GeometryDefect("no subtilings to grow with".into()));
    }
    let mut out = patch.clone();
    let mut report = GrowthReport {
        layers_requested: layers,
        tiles_per_layer: vec![out.len()],
        ..Default::default()
    };
    for layer in 0..layers {
        let before = out.len();
        let (copies, tiles) = grow_layer(&mut out, subs);
        if out.len() <= before {
            report.diagnostic = Some(format!(
                "layer {} added no tiles; stopping at {} tiles",
                layer + 1,
                before
            ));
            break;
        }
        out.layers += 1;
        report.layers_completed += 1;
        report.tiles_per_layer.push(out.len());
        report.copy_orbits.push(copies);
        report.tile_orbits.push(tiles);
    }
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::principal::{principal_basis, projected_units};
    use crate::roots::{build_root_system, BasisChoice};
    use crate::tiling::{dissociate, edge_direction_defect};

    fn setup(n: usize) -> (PrincipalBasis, Vec<SubTiling>) {
        let b = principal_basis(&build_root_system(n, BasisChoice::Cyclic).unwrap()).unwrap();
        let subs = dissociate(&voronoi_cell(n).unwrap(), &b).unwrap();
        (b, subs)
    }

    #[test]
    fn default_seeds() {
        for (n, k, tiles) in [(4, 6, 24), (5, 5, 40)] {
            let (b, subs) = setup(n);
            let (got_k, patch) = anchor_seed(&subs, &b, None).unwrap();
            assert_eq!(got_k, k);
            assert_eq!(patch.len(), tiles);
            assert!(patch.symmetry_defects().is_empty());
            assert!(patch.set.max_overlap() < 1e-8);
        }
    }

    #[test]
    fn seed_vertex_validation() {
        let (b, subs) = setup(4);
        // The opposite vertex is the good end of the half-turned subtiling.
        let (k, patch) = anchor_seed(&subs, &b, Some(&[-1, -1, 1, 1])).unwrap();
        assert_eq!(k, 2);
        assert_eq!(patch.len(), 24);
        assert!(anchor_seed(&subs, &b, Some(&[1, 1])).is_err());
        // An inner-octagon vertex is not a valid centre.
        assert!(anchor_seed(&subs, &b, Some(&[1, -1, 1, -1])).is_err());
    }

    #[test]
    fn zero_layers_is_identity() {
        let (b, subs) = setup(4);
        let (_, seed) = anchor_seed(&subs, &b, None).unwrap();
        let (grown, report) = grow_patch(&seed, &subs, 0).unwrap();
        assert_eq!(grown.keys(), seed.keys());
        assert!(report.is_complete());
    }

    #[test]
    fn one_layer_octagonal() {
        let (b, subs) = setup(4);
        let (_, seed) = anchor_seed(&subs, &b, None).unwrap();
        let (grown, report) = grow_patch(&seed, &subs, 1).unwrap();
        assert!(report.is_complete(), "{report:?}");
        assert!(grown.len() > seed.len());
        assert!(grown.symmetry_defects().is_empty());
        assert!(grown.set.max_overlap() < 1e-8);
        let units = projected_units(&b, 1).unwrap();
        assert!(edge_direction_defect(grown.tiles(), &units) < 1e-6);
    }
}
