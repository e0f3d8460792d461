//! Rhombic tilings built from the projected Voronoi cell.
//!
//! * [`dissociate`] splits the projected cell into `h` rotated copies of one
//!   mirror-symmetric rhombic `h`-gon tiling.
//! * [`seed_rotation_patch`] rotates one copy about an outer vertex.
//! * [`grow_patch`] adds layers by translating and rotating copies, keeping
//!   the whole patch dihedrally symmetric about its centre.
//! * [`hexagonal_lattice`] covers the rank-3 case, where the projection is a
//!   periodic triangular lattice.

mod dissociate;
mod growth;
mod hexagonal;

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

pub use dissociate::{
    count_dissociations, dissociate, rotate_subtiling, symmetry_lines, SubTiling,
};
pub use growth::{
    anchor_seed, default_seed_vertex, grow_patch, seed_rotation_patch, GrowthReport,
};
pub use hexagonal::{hexagonal_lattice, HexagonalLattice};

use crate::planar::{bboxes_overlap, overlap_area, polygon_key};
use crate::principal::{PlanarPoint, PrincipalBasis};
use crate::vector::eps_geo;
use crate::voronoi::{AngleClass, Rhomb};

/// Intersection area above which two tiles count as overlapping.
pub const OVERLAP_TOL: f64 = 1e-8;

pub type TileKey = Vec<(i64, i64)>;

/// The `2h` rotations and reflections about a centre.
///
/// Mirror lines pass through `center` at angles `mirror_phase + jπ/h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DihedralFrame {
    pub center: PlanarPoint,
    pub h: usize,
    pub mirror_phase: f64,
}

/// One element of a [`DihedralFrame`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlanarOp {
    /// Rotation by `2πk/h`.
    Rotate(usize),
    /// Reflection in the `j`-th mirror line.
    Reflect(usize),
}

impl DihedralFrame {
    /// Frame whose mirrors are the lines spanned by the projected `±l_i` and
    /// their bisectors.
    pub fn for_basis(basis: &PrincipalBasis, center: PlanarPoint) -> Self {
        let l1 = crate::principal::project(&crate::vector::VectorN::unit(basis.n, 0), basis, 1)
            .expect("plane 1 exists for n ≥ 2");
        Self {
            center,
            h: basis.h,
            mirror_phase: l1.angle().rem_euclid(PI / basis.h as f64),
        }
    }

    pub fn with_center(self, center: PlanarPoint) -> Self {
        Self { center, ..self }
    }

    pub fn ops(&self) -> Vec<PlanarOp> {
        (0..self.h)
            .map(PlanarOp::Rotate)
            .chain((0..self.h).map(PlanarOp::Reflect))
            .collect()
    }

    pub fn mirror_angle(&self, j: usize) -> f64 {
        self.mirror_phase + PI * j as f64 / self.h as f64
    }

    pub fn apply(&self, op: PlanarOp, p: PlanarPoint) -> PlanarPoint {
        match op {
            PlanarOp::Rotate(k) => {
                p.rotate_about(self.center, 2.0 * PI * k as f64 / self.h as f64)
            }
            PlanarOp::Reflect(j) => p.reflect_about(self.center, self.mirror_angle(j)),
        }
    }

    pub fn apply_rhomb(&self, op: PlanarOp, r: &Rhomb) -> Rhomb {
        r.map(|p| self.apply(op, p))
    }
}

/// Result of testing one tile against a [`TileSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// Same rhomb already present.
    Existing,
    /// Interior-disjoint from every tile.
    Free,
    /// Overlaps some tile with positive area.
    Conflict,
}

const GRID_CELL: f64 = 0.5;

fn grid_cells(r: &Rhomb) -> impl Iterator<Item = (i64, i64)> {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &r.vertices {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let c = |v: f64| (v / GRID_CELL).floor() as i64;
    let (cx0, cy0, cx1, cy1) = (c(x0), c(y0), c(x1), c(y1));
    (cx0..=cx1).flat_map(move |x| (cy0..=cy1).map(move |y| (x, y)))
}

/// Deduplicated tiles with a spatial index for overlap queries.
#[derive(Clone, Debug, Default)]
pub struct TileSet {
    tiles: BTreeMap<TileKey, Rhomb>,
    grid: HashMap<(i64, i64), Vec<TileKey>>,
}

impl TileSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_tiles(tiles: impl IntoIterator<Item = Rhomb>) -> Self {
        let mut s = Self::new();
        for t in tiles {
            s.insert(t);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn contains(&self, key: &TileKey) -> bool {
        self.tiles.contains_key(key)
    }

    /// Tiles in key order.
    pub fn tiles(&self) -> impl Iterator<Item = &Rhomb> {
        self.tiles.values()
    }

    pub fn keys(&self) -> impl Iterator<Item = &TileKey> {
        self.tiles.keys()
    }

    /// Insert unless an identical tile exists; returns whether it was new.
    pub fn insert(&mut self, r: Rhomb) -> bool {
        let key = tile_key(&r);
        if self.tiles.contains_key(&key) {
            return false;
        }
        for cell in grid_cells(&r) {
            self.grid.entry(cell).or_default().push(key.clone());
        }
        self.tiles.insert(key, r);
        true
    }

    pub fn classify(&self, r: &Rhomb) -> Placement {
        let key = tile_key(r);
        if self.tiles.contains_key(&key) {
            return Placement::Existing;
        }
        for cell in grid_cells(r) {
            if let Some(keys) = self.grid.get(&cell) {
                for k in keys {
                    let u = &self.tiles[k];
                    if bboxes_overlap(&r.vertices, &u.vertices)
                        && overlap_area(&r.vertices, &u.vertices) > OVERLAP_TOL
                    {
                        return Placement::Conflict;
                    }
                }
            }
        }
        Placement::Free
    }

    /// New tiles among `candidates` if none conflicts with the set or with
    /// each other; `None` on any conflict.
    pub fn admit(&self, candidates: impl IntoIterator<Item = Rhomb>) -> Option<Vec<Rhomb>> {
        let mut fresh: Vec<(TileKey, Rhomb)> = Vec::new();
        for r in candidates {
            match self.classify(&r) {
                Placement::Existing => continue,
                Placement::Conflict => return None,
                Placement::Free => {}
            }
            let key = tile_key(&r);
            if fresh.iter().any(|(k, _)| *k == key) {
                continue;
            }
            if fresh.iter().any(|(_, u)| {
                bboxes_overlap(&r.vertices, &u.vertices)
                    && overlap_area(&r.vertices, &u.vertices) > OVERLAP_TOL
            }) {
                return None;
            }
            fresh.push((key, r));
        }
        Some(fresh.into_iter().map(|(_, r)| r).collect())
    }

    /// Largest pairwise overlap area, checked through the spatial index.
    pub fn max_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for keys in self.grid.values() {
            for (i, a) in keys.iter().enumerate() {
                for b in &keys[i + 1..] {
                    let (ra, rb) = (&self.tiles[a], &self.tiles[b]);
                    worst = worst.max(overlap_area(&ra.vertices, &rb.vertices));
                }
            }
        }
        worst
    }
}

/// Canonical identity of a tile: its corners rounded to the `εgeo` grid.
pub fn tile_key(r: &Rhomb) -> TileKey {
    polygon_key(&r.vertices, eps_geo())
}

/// How a tile is drawn and labelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TileKind {
    Thin,
    Thick,
    Square,
    Other,
}

/// Square for `π/2`, thin for the narrowest class `2π/h`, thick for the widest
/// class below `π/2`.
pub fn tile_kind(class: AngleClass, h: usize) -> TileKind {
    if class.is_right() {
        return TileKind::Square;
    }
    // Acute classes are multiples of 2π/h, below π/2.
    let value = class.num as f64 / class.den as f64;
    let step = 2.0 / h as f64;
    let widest = ((0.5 / step).ceil() - 1.0) * step;
    if (value - step).abs() < 1e-12 {
        TileKind::Thin
    } else if (value - widest).abs() < 1e-12 {
        TileKind::Thick
    } else {
        TileKind::Other
    }
}

/// A deduplicated set of rhombs with a symmetry centre.
#[derive(Clone, Debug)]
pub struct TilingPatch {
    pub n: usize,
    pub h: usize,
    pub frame: DihedralFrame,
    pub layers: usize,
    pub set: TileSet,
}

impl TilingPatch {
    pub fn center(&self) -> PlanarPoint {
        self.frame.center
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn tiles(&self) -> impl Iterator<Item = &Rhomb> {
        self.set.tiles()
    }

    /// Sorted tile keys.
    pub fn keys(&self) -> Vec<TileKey> {
        self.set.keys().cloned().collect()
    }

    /// Ops of the frame that fail to map the tile set onto itself.
    pub fn symmetry_defects(&self) -> Vec<PlanarOp> {
        let tiles: Vec<&Rhomb> = self.set.tiles().collect();
        symmetry_defects(&self.frame, tiles.iter().copied())
    }

    pub fn total_area(&self) -> f64 {
        self.tiles().map(Rhomb::area).sum()
    }
}

/// Ops of `frame` under which `tiles` is not invariant (key-set equality).
pub fn symmetry_defects<'a>(
    frame: &DihedralFrame,
    tiles: impl Iterator<Item = &'a Rhomb> + Clone,
) -> Vec<PlanarOp> {
    let mut original: Vec<TileKey> = tiles.clone().map(tile_key).collect();
    original.sort();
    frame
        .ops()
        .into_iter()
        .filter(|&op| {
            let mut image: Vec<TileKey> = tiles
                .clone()
                .map(|t| tile_key(&frame.apply_rhomb(op, t)))
                .collect();
            image.sort();
            image != original
        })
        .collect()
}

/// Largest distance from a tile edge to the nearest `±l_pi`.
pub fn edge_direction_defect<'a>(
    tiles: impl Iterator<Item = &'a Rhomb>,
    units: &[PlanarPoint],
) -> f64 {
    let mut worst: f64 = 0.0;
    for t in tiles {
        for e in t.edges() {
            let d = units
                .iter()
                .flat_map(|&u| [e.distance(u), e.distance(u.scale(-1.0))])
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
    }
    worst
}
