//! Splitting the projected Voronoi cell into `h` rhombic `h`-gons.
//!
//! One projected face is chosen for every pair of axes `(i, j)`, which gives
//! `C(n, 2)` rhombs: exactly one of each edge-direction pair, as in a zonogon
//! tiling. The search walks pairs in lexicographic order and faces in sign
//! order, backtracking on overlaps; the first tiling that is symmetric about a
//! mirror line of the dihedral group becomes subtiling 0.

use std::f64::consts::PI;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::planar::overlap_area;
use crate::principal::{PlanarPoint, PrincipalBasis};
use crate::voronoi::{project_faces, Rhomb, VoronoiCell};

use super::{tile_key, DihedralFrame, PlanarOp, TileKey, OVERLAP_TOL};

/// One rhombic `h`-gon centred at the origin.
#[derive(Clone, Debug)]
pub struct SubTiling {
    pub h: usize,
    pub tiles: Vec<Rhomb>,
    /// Angle of the mirror line through the origin, in `[0, π)`.
    pub symmetry_line: f64,
    pub rotation_index: usize,
}

impl SubTiling {
    pub fn direction(&self) -> PlanarPoint {
        PlanarPoint::polar(1.0, self.symmetry_line)
    }

    pub fn area(&self) -> f64 {
        self.tiles.iter().map(Rhomb::area).sum()
    }

    pub fn keys(&self) -> Vec<TileKey> {
        let mut k: Vec<_> = self.tiles.iter().map(tile_key).collect();
        k.sort();
        k
    }

    /// Whether the mirror line passes through `p`.
    pub fn line_passes_through(&self, p: PlanarPoint) -> bool {
        self.direction().cross(p).abs() < 1e-9
    }

    /// Distinct corners, sorted by key.
    pub fn vertices(&self) -> Vec<PlanarPoint> {
        let mut pts: Vec<PlanarPoint> = self.tiles.iter().flat_map(|t| t.vertices).collect();
        let eps = crate::vector::eps_geo();
        pts.sort_by_key(|&p| crate::planar::point_key(p, eps));
        pts.dedup_by_key(|p| crate::planar::point_key(*p, eps));
        pts
    }
}

/// Indices `j` of the frame's mirror lines leaving `tiles` invariant.
pub fn symmetry_lines(tiles: &[Rhomb], frame: &DihedralFrame) -> Vec<usize> {
    let mut original: Vec<TileKey> = tiles.iter().map(tile_key).collect();
    original.sort();
    (0..frame.h)
        .filter(|&j| {
            let mut image: Vec<TileKey> = tiles
                .iter()
                .map(|t| tile_key(&frame.apply_rhomb(PlanarOp::Reflect(j), t)))
                .collect();
            image.sort();
            image == original
        })
        .collect()
}

fn search(
    by_pair: &[Vec<Rhomb>],
    chosen: &mut Vec<Rhomb>,
    visit: &mut dyn FnMut(&[Rhomb]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let depth = chosen.len();
    if depth == by_pair.len() {
        return visit(chosen);
    }
    for f in &by_pair[depth] {
        if chosen
            .iter()
            .all(|g| overlap_area(&f.vertices, &g.vertices) < OVERLAP_TOL)
        {
            chosen.push(f.clone());
            search(by_pair, chosen, visit)?;
            chosen.pop();
        }
    }
    ControlFlow::Continue(())
}

fn faces_by_pair(cell: &VoronoiCell, basis: &PrincipalBasis) -> Result<Vec<Vec<Rhomb>>> {
    if cell.n < 3 {
        return Err(Error::RankOutOfRange {
            rank: cell.n,
            min: 3,
            max: crate::voronoi::MAX_RANK,
        });
    }
    let mut by_pair: Vec<Vec<Rhomb>> = Vec::new();
    let mut last = None;
    for r in project_faces(cell, basis, 1)? {
        let axes = r.source.as_ref().map(|f| f.axes);
        if axes != last {
            by_pair.push(Vec::new());
            last = axes;
        }
        by_pair.last_mut().unwrap().push(r);
    }
    Ok(by_pair)
}

/// Number of overlap-free choices of one face per axis pair.
pub fn count_dissociations(cell: &VoronoiCell, basis: &PrincipalBasis) -> Result<usize> {
    let by_pair = faces_by_pair(cell, basis)?;
    let mut count = 0;
    let _ = search(&by_pair, &mut Vec::new(), &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// The `h` rotated copies of the first mirror-symmetric tiling.
pub fn dissociate(cell: &VoronoiCell, basis: &PrincipalBasis) -> Result<Vec<SubTiling>> {
    let by_pair = faces_by_pair(cell, basis)?;
    let frame = DihedralFrame::for_basis(basis, PlanarPoint::ORIGIN);
    let mut found = None;
    let _ = search(&by_pair, &mut Vec::new(), &mut |tiles| {
        match symmetry_lines(tiles, &frame).first() {
            Some(&j) => {
                found = Some((tiles.to_vec(), frame.mirror_angle(j).rem_euclid(PI)));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    let (tiles, line) = found.ok_or(Error::DissociationInfeasible(cell.n))?;
    let base = SubTiling {
        h: basis.h,
        tiles,
        symmetry_line: line,
        rotation_index: 0,
    };
    Ok((0..basis.h).map(|k| rotate_subtiling(&base, k)).collect())
}

/// Rotate about the origin by `2πk/h`.
pub fn rotate_subtiling(s: &SubTiling, k: usize) -> SubTiling {
    let theta = 2.0 * PI * k as f64 / s.h as f64;
    SubTiling {
        h: s.h,
        tiles: s
            .tiles
            .iter()
            .map(|t| t.map(|p| p.rotate_about(PlanarPoint::ORIGIN, theta)))
            .collect(),
        symmetry_line: (s.symmetry_line + theta).rem_euclid(PI),
        rotation_index: (s.rotation_index + k) % s.h,
    }
}
