//! The Voronoi cell `V(0)` of `ℤⁿ` (the unit cube centred at the origin), its
//! projection onto a principal plane, and the Table 1 census.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar::{point_key, polygon_key, signed_area};
use crate::principal::{principal_basis, project, PlanarPoint, PrincipalBasis};
use crate::roots::{build_root_system, BasisChoice};
use crate::vector::{eps_geo, VectorN};

/// Largest rank handled by the enumeration routines.
pub const MAX_RANK: usize = 12;

/// Snapped angles must lie this close to a multiple of `π/(2h)`.
const ANGLE_SNAP_TOL: f64 = 1e-9;

/// A 2-face of the cube: `center ± ½l_i ± ½l_j`, stored as a sign vector with
/// zeros on the two free axes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face2 {
    /// Zero-based free axes, `i < j`.
    pub axes: (usize, usize),
    pub signs: Vec<i8>,
}

impl Face2 {
    pub fn center(&self) -> VectorN {
        VectorN::from_slice(&self.signs.iter().map(|&s| 0.5 * s as f64).collect::<Vec<_>>())
    }

    /// Sign vectors of the corners in cyclic order `(−,−), (+,−), (+,+), (−,+)`.
    pub fn corner_signs(&self) -> [Vec<i8>; 4] {
        let (i, j) = self.axes;
        let corner = |a: i8, b: i8| {
            let mut s = self.signs.clone();
            s[i] = a;
            s[j] = b;
            s
        };
        [corner(-1, -1), corner(1, -1), corner(1, 1), corner(-1, 1)]
    }

    pub fn corners(&self) -> [VectorN; 4] {
        self.corner_signs().map(|s| half_vector(&s))
    }
}

/// `½ Σ s_k l_k`.
pub fn half_vector(signs: &[i8]) -> VectorN {
    VectorN::from_slice(&signs.iter().map(|&s| 0.5 * s as f64).collect::<Vec<_>>())
}

/// Vertices `½(±l_1 ± … ± l_n)` and square 2-faces of `V(0)`.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub n: usize,
    /// Sign vectors in lexicographic order, `−1` before `+1`.
    pub vertices: Vec<Vec<i8>>,
    /// Faces ordered by free axes, then sign vector.
    pub faces: Vec<Face2>,
}

impl VoronoiCell {
    pub fn vertex(&self, i: usize) -> VectorN {
        half_vector(&self.vertices[i])
    }
}

fn sign_vectors(len: usize) -> Vec<Vec<i8>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|j| if bits >> (len - 1 - j) & 1 == 1 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

pub fn voronoi_cell(n: usize) -> Result<VoronoiCell> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 1,
            max: MAX_RANK,
        });
    }
    let vertices = sign_vectors(n);
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for rest in sign_vectors(n - 2) {
                let mut it = rest.into_iter();
                let signs = (0..n)
                    .map(|k| if k == i || k == j { 0 } else { it.next().unwrap() })
                    .collect();
                faces.push(Face2 { axes: (i, j), signs });
            }
        }
    }
    Ok(VoronoiCell { n, vertices, faces })
}

/// An acute angle `num/den · π` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngleClass {
    pub num: u32,
    pub den: u32,
}

impl AngleClass {
    fn reduced(num: u32, den: u32) -> Self {
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    /// Snap `theta` (radians) to the nearest multiple of `π/(2h)`.
    pub fn snap(theta: f64, h: usize) -> Result<Self> {
        let unit = PI / (2 * h) as f64;
        let k = (theta / unit).round();
        if (theta - k * unit).abs() > ANGLE_SNAP_TOL || k < 0.0 {
            return Err(Error::GeometryDefect(format!(
                "angle {theta} is not a multiple of π/{}",
                2 * h
            )));
        }
        Ok(Self::reduced(k as u32, 2 * h as u32))
    }

    pub fn radians(self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }

    /// `π − θ`.
    pub fn supplement(self) -> Self {
        Self::reduced(self.den - self.num, self.den)
    }

    pub fn is_right(self) -> bool {
        self.num * 2 == self.den
    }

    fn format_with(self, pi: &str) -> String {
        let num = if self.num == 1 {
            String::new()
        } else {
            self.num.to_string()
        };
        if self.den == 1 {
            format!("{num}{pi}")
        } else {
            format!("{num}{pi}/{}", self.den)
        }
    }

    /// ASCII label such as `2pi/5`.
    pub fn label(self) -> String {
        self.format_with("pi")
    }

    /// Label such as `2π/5`.
    pub fn unicode_label(self) -> String {
        self.format_with("π")
    }
}

impl Ord for AngleClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for AngleClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AngleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unicode_label())
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A projected square face: four planar corners in counter-clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct Rhomb {
    pub vertices: [PlanarPoint; 4],
    pub angle_class: AngleClass,
    pub source: Option<Face2>,
}

impl Rhomb {
    /// Build from corners in cyclic order; reorders to counter-clockwise.
    pub fn from_corners(mut vertices: [PlanarPoint; 4], h: usize) -> Result<Self> {
        let a = signed_area(&vertices);
        if a.abs() < 1e-12 {
            return Err(Error::GeometryDefect("degenerate rhomb".into()));
        }
        if a < 0.0 {
            vertices.swap(1, 3);
        }
        let e1 = vertices[1].sub(vertices[0]);
        let e2 = vertices[3].sub(vertices[0]);
        let theta = e1.cross(e2).atan2(e1.dot(e2));
        let acute = theta.min(PI - theta);
        Ok(Self {
            vertices,
            angle_class: AngleClass::snap(acute, h)?,
            source: None,
        })
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices).abs()
    }

    pub fn key(&self, eps: f64) -> Vec<(i64, i64)> {
        polygon_key(&self.vertices, eps)
    }

    pub fn centroid(&self) -> PlanarPoint {
        self.vertices
            .iter()
            .fold(PlanarPoint::ORIGIN, |acc, &p| acc.add(p))
            .scale(0.25)
    }

    pub fn edges(&self) -> [PlanarPoint; 4] {
        std::array::from_fn(|i| self.vertices[(i + 1) % 4].sub(self.vertices[i]))
    }

    /// Apply a planar map to every corner, keeping the angle class.
    pub fn map(&self, f: impl Fn(PlanarPoint) -> PlanarPoint) -> Self {
        let mut vertices = self.vertices.map(f);
        if signed_area(&vertices) < 0.0 {
            vertices.swap(1, 3);
        }
        Self {
            vertices,
            angle_class: self.angle_class,
            source: self.source.clone(),
        }
    }
}

/// Project one face onto plane `plane` of `basis`.
pub fn project_face(face: &Face2, basis: &PrincipalBasis, plane: usize) -> Result<Rhomb> {
    let corners = face.corners();
    let mut pts = [PlanarPoint::ORIGIN; 4];
    for (p, c) in pts.iter_mut().zip(&corners) {
        *p = project(c, basis, plane)?;
    }
    let mut r = Rhomb::from_corners(pts, basis.h)?;
    r.source = Some(face.clone());
    Ok(r)
}

/// One `h`-gon orbit of projected vertices.
#[derive(Clone, Debug, Serialize)]
pub struct HGon {
    pub radius: f64,
    /// Smallest polar angle of the orbit, reduced modulo `2π/h`.
    pub phase: f64,
    /// Indices into the cell's vertex list, sorted by polar angle.
    pub vertices: Vec<usize>,
}

/// Decomposition of the projected vertices into concentric `h`-gons.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub h: usize,
    pub plane: usize,
    pub projected: Vec<PlanarPoint>,
    pub origin_vertices: Vec<usize>,
    /// Ordered by decreasing radius, then phase.
    pub polygons: Vec<HGon>,
}

impl OrbitReport {
    pub fn origin_count(&self) -> usize {
        self.origin_vertices.len()
    }

    /// Distinct radii, decreasing.
    pub fn radii(&self) -> Vec<f64> {
        let mut r: Vec<f64> = Vec::new();
        for p in &self.polygons {
            if r.last().is_none_or(|&last| (last - p.radius).abs() > eps_geo()) {
                r.push(p.radius);
            }
        }
        r
    }
}

fn cluster_sorted(values: &[(f64, usize)], tol: f64) -> Vec<Vec<(f64, usize)>> {
    let mut out: Vec<Vec<(f64, usize)>> = Vec::new();
    for &v in values {
        match out.last_mut() {
            Some(c) if v.0 - c.last().unwrap().0 <= tol => c.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

/// Project every vertex of `cell` and split the non-zero ones into `h`-gons.
pub fn project_voronoi(
    cell: &VoronoiCell,
    basis: &PrincipalBasis,
    plane: usize,
) -> Result<OrbitReport> {
    let eps = eps_geo();
    let h = basis.h;
    let projected = (0..cell.vertices.len())
        .map(|i| project(&cell.vertex(i), basis, plane))
        .collect::<Result<Vec<_>>>()?;
    let mut origin_vertices = Vec::new();
    let mut by_radius = Vec::new();
    for (i, p) in projected.iter().enumerate() {
        let r = p.norm();
        if r < eps {
            origin_vertices.push(i);
        } else {
            by_radius.push((r, i));
        }
    }
    by_radius.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let sector = 2.0 * PI / h as f64;
    let mut polygons = Vec::new();
    for shell in cluster_sorted(
        &by_radius.iter().map(|&(r, i)| (-r, i)).collect::<Vec<_>>(),
        eps,
    ) {
        let radius = -shell[0].0;
        // Phase tolerance scales with radius so it bounds arc length.
        let tol = eps / radius;
        let mut phases: Vec<(f64, usize)> = shell
            .iter()
            .map(|&(_, i)| {
                let mut ph = projected[i].angle().rem_euclid(sector);
                if sector - ph <= tol {
                    ph = 0.0;
                }
                (ph, i)
            })
            .collect();
        phases.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for group in cluster_sorted(&phases, tol) {
            // From rank 6 on, distinct vertices can project to the same point;
            // such a group holds `k` stacked copies of one h-gon.
            if group.len() % h != 0 {
                return Err(Error::GeometryDefect(format!(
                    "orbit at radius {radius} has {} vertices, not a multiple of {h}",
                    group.len()
                )));
            }
            let k = group.len() / h;
            let mut vertices: Vec<usize> = group.iter().map(|&(_, i)| i).collect();
            let polar = |i: usize| {
                let a = projected[i].angle().rem_euclid(2.0 * PI);
                if 2.0 * PI - a <= tol {
                    0.0
                } else {
                    a
                }
            };
            vertices.sort_by(|&a, &b| {
                let (pa, pb) = (polar(a), polar(b));
                if (pa - pb).abs() <= tol {
                    a.cmp(&b)
                } else {
                    pa.total_cmp(&pb)
                }
            });
            for chunk in vertices.chunks(k) {
                if chunk.iter().any(|&i| projected[i].distance(projected[chunk[0]]) > eps) {
                    return Err(Error::GeometryDefect(format!(
                        "orbit at radius {radius} is not a stack of {k} h-gons"
                    )));
                }
            }
            for layer in 0..k {
                polygons.push(HGon {
                    radius,
                    phase: group[0].0,
                    vertices: vertices.iter().skip(layer).step_by(k).copied().collect(),
                });
            }
        }
    }
    Ok(OrbitReport {
        n: cell.n,
        h,
        plane,
        projected,
        origin_vertices,
        polygons,
    })
}

/// Projected rhombs of all 2-faces, in face order.
pub fn project_faces(
    cell: &VoronoiCell,
    basis: &PrincipalBasis,
    plane: usize,
) -> Result<Vec<Rhomb>> {
    cell.faces
        .iter()
        .map(|f| project_face(f, basis, plane))
        .collect()
}

/// Acute angle class of every projected face, with multiplicities.
pub fn rhomb_classes(
    cell: &VoronoiCell,
    basis: &PrincipalBasis,
) -> Result<BTreeMap<AngleClass, usize>> {
    let mut out = BTreeMap::new();
    if basis.plane_count() == 0 {
        return Ok(out);
    }
    for r in project_faces(cell, basis, 1)? {
        *out.entry(r.angle_class).or_insert(0) += 1;
    }
    Ok(out)
}

/// One line of the projection census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub vertices: usize,
    /// Number of concentric `h`-gons; `None` for the rank-1 segment.
    pub polygons: Option<usize>,
    pub polygon_label: String,
    pub origin: Option<usize>,
    /// `(acute, obtuse)` pairs in increasing order of the acute angle.
    pub angle_classes: Vec<(AngleClass, AngleClass)>,
}

impl Table1Row {
    pub fn origin_label(&self) -> String {
        match self.origin {
            None | Some(0) => "none".into(),
            Some(k) => k.to_string(),
        }
    }

    pub fn angles_label(&self) -> String {
        if self.angle_classes.is_empty() {
            return "-".into();
        }
        self.angle_classes
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {} | {}",
            self.n,
            self.vertices,
            self.polygon_label,
            self.origin_label(),
            self.angles_label()
        )
    }
}

fn polygon_label(n: usize, count: usize) -> String {
    let name = match n {
        1 => return "line-segment".into(),
        2 => return "square".into(),
        3 => "hexagon",
        4 => "octagon",
        5 => "decagon",
        6 => "dodecagon",
        _ => return format!("{count}, {}-gons", 2 * n),
    };
    if count == 1 {
        format!("{count} {name}")
    } else {
        format!("{count} {name}s")
    }
}

/// Census row for rank `n`.
pub fn table1_row(n: usize) -> Result<Table1Row> {
    let cell = voronoi_cell(n)?;
    if n == 1 {
        return Ok(Table1Row {
            n,
            vertices: cell.vertices.len(),
            polygons: None,
            polygon_label: polygon_label(1, 0),
            origin: None,
            angle_classes: Vec::new(),
        });
    }
    let basis = principal_basis(&build_root_system(n, BasisChoice::Cyclic)?)?;
    let report = project_voronoi(&cell, &basis, 1)?;
    let classes = rhomb_classes(&cell, &basis)?;
    Ok(Table1Row {
        n,
        vertices: cell.vertices.len(),
        polygons: Some(report.polygons.len()),
        polygon_label: polygon_label(n, report.polygons.len()),
        origin: Some(report.origin_count()),
        angle_classes: classes.keys().map(|&a| (a, a.supplement())).collect(),
    })
}

pub fn table1(max_n: usize) -> Result<Vec<Table1Row>> {
    if max_n == 0 || max_n > MAX_RANK {
        return Err(Error::RankOutOfRange {
            rank: max_n,
            min: 1,
            max: MAX_RANK,
        });
    }
    (1..=max_n).map(table1_row).collect()
}

/// Grid keys of a planar point set, sorted; used for set comparisons.
pub fn point_set_key(points: &[PlanarPoint], eps: f64) -> Vec<(i64, i64)> {
    let mut k: Vec<_> = points.iter().map(|&p| point_key(p, eps)).collect();
    k.sort_unstable();
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralData;
    use crate::principal::block_diagonalize;
    use proptest::prelude::*;

    fn basis(n: usize) -> PrincipalBasis {
        principal_basis(&build_root_system(n, BasisChoice::Cyclic).unwrap()).unwrap()
    }

    #[test]
    fn cell_counts() {
        for n in 1..=8 {
            let c = voronoi_cell(n).unwrap();
            assert_eq!(c.vertices.len(), 1 << n);
            let faces = if n >= 2 { n * (n - 1) / 2 * (1 << (n - 2)) } else { 0 };
            assert_eq!(c.faces.len(), faces);
            for i in 0..c.vertices.len() {
                assert!((c.vertex(i).norm_sq() - n as f64 / 4.0).abs() < 1e-12);
            }
            let verts: std::collections::BTreeSet<_> = c.vertices.iter().cloned().collect();
            for f in &c.faces {
                for s in f.corner_signs() {
                    assert!(verts.contains(&s));
                }
                let [a, b, _, d] = f.corners();
                assert!(((&b - &a).norm_sq() - 1.0).abs() < 1e-12);
                assert!((&b - &a).dot(&(&d - &a)).abs() < 1e-12);
            }
        }
        assert!(voronoi_cell(0).is_err());
        assert!(voronoi_cell(13).is_err());
    }

    #[test]
    fn rank_three_hexagon() {
        let c = voronoi_cell(3).unwrap();
        let r = project_voronoi(&c, &basis(3), 1).unwrap();
        assert_eq!(r.polygons.len(), 1);
        let mut origin: Vec<Vec<i8>> = r.origin_vertices.iter().map(|&i| c.vertices[i].clone()).collect();
        origin.sort();
        assert_eq!(origin, vec![vec![-1, 1, -1], vec![1, -1, 1]]);
    }

    #[test]
    fn rank_four_octagons() {
        let r = project_voronoi(&voronoi_cell(4).unwrap(), &basis(4), 1).unwrap();
        let radii = r.radii();
        assert_eq!(radii.len(), 2);
        assert_eq!(r.origin_count(), 0);
        assert!((radii[0] / radii[1] - 1.0 / (PI / 8.0).tan()).abs() < 1e-12);
    }

    #[test]
    fn rank_five_decagons() {
        let r = project_voronoi(&voronoi_cell(5).unwrap(), &basis(5), 1).unwrap();
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        let s = (0.4f64).sqrt();
        let radii = r.radii();
        assert_eq!(radii.len(), 3);
        for (got, want) in radii.iter().zip([s * tau, s, s / tau]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(r.origin_count(), 2);
    }

    #[test]
    fn angle_class_labels() {
        let a = AngleClass::snap(PI / 5.0, 10).unwrap();
        assert_eq!(a.label(), "pi/5");
        assert_eq!(a.supplement().unicode_label(), "4π/5");
        assert_eq!(AngleClass::snap(PI / 2.0, 8).unwrap().label(), "pi/2");
        assert!(AngleClass::snap(0.3, 8).is_err());
        assert!(AngleClass::snap(PI / 4.0, 8).unwrap() < AngleClass::snap(PI / 2.0, 8).unwrap());
    }

    #[test]
    fn table_rows() {
        let rows = table1(6).unwrap();
        assert_eq!(rows[0].to_string(), "1 | 2 | line-segment | none | -");
        assert_eq!(rows[1].to_string(), "2 | 4 | square | none | (π/2,π/2)");
        assert_eq!(
            rows[4].to_string(),
            "5 | 32 | 3 decagons | 2 | (π/5,4π/5),(2π/5,3π/5)"
        );
        assert_eq!(
            rows[5].to_string(),
            "6 | 64 | 5 dodecagons | 4 | (π/6,5π/6),(π/3,2π/3),(π/2,π/2)"
        );
        assert!(table1(0).is_err());
    }

    #[test]
    fn face_classes_sum_to_face_count() {
        for n in 2..=8 {
            let c = voronoi_cell(n).unwrap();
            let total: usize = rhomb_classes(&c, &basis(n)).unwrap().values().sum();
            assert_eq!(total, c.faces.len());
        }
    }

    #[test]
    fn projected_vertices_are_dihedral_invariant() {
        for n in 3..=7 {
            let rs = build_root_system(n, BasisChoice::Cyclic).unwrap();
            let b = principal_basis(&rs).unwrap();
            let r = project_voronoi(&voronoi_cell(n).unwrap(), &b, 1).unwrap();
            let eps = 1e-6;
            let key = point_set_key(&r.projected, eps);
            let d = DihedralData::point(&rs).unwrap();
            for g in d.reflections.iter().chain([&d.coxeter()]) {
                let m = &block_diagonalize(g, &b).unwrap().blocks[0];
                let moved: Vec<_> = r
                    .projected
                    .iter()
                    .map(|p| PlanarPoint::new(m[(0, 0)] * p.x + m[(0, 1)] * p.y, m[(1, 0)] * p.x + m[(1, 1)] * p.y))
                    .collect();
                assert_eq!(point_set_key(&moved, eps), key, "rank {n}");
            }
        }
    }

    proptest! {
        #[test]
        fn orbits_partition_vertices(n in 3usize..9) {
            let c = voronoi_cell(n).unwrap();
            let r = project_voronoi(&c, &basis(n), 1).unwrap();
            let covered: usize = r.polygons.iter().map(|p| p.vertices.len()).sum();
            prop_assert_eq!(covered + r.origin_count(), c.vertices.len());
            for p in &r.polygons {
                prop_assert_eq!(p.vertices.len(), 2 * n);
            }
        }
    }
}
