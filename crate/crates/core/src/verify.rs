//! Self-check suite behind `qlat verify`.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::dihedral::{
    element_order, fixed_point, is_cyclic_coxeter, point_closure, DihedralData,
};
use crate::error::{Error, Result};
use crate::planar::{area, overlap_area, regular_polygon};
use crate::principal::{
    block_diagonalize, principal_basis, projected_units, rotation_angle, PlanarPoint,
    PrincipalBasis,
};
use crate::reflection::{reflection_element, AffineElement, ReflectionFormula};
use crate::roots::{build_root_system, BasisChoice, RootSystem};
use crate::tiling::{
    anchor_seed, dissociate, edge_direction_defect, grow_patch, hexagonal_lattice, OVERLAP_TOL,
};
use crate::vector::VectorN;
use crate::voronoi::{project_voronoi, table1_row, voronoi_cell, AngleClass};

pub const MAX_VERIFY_RANK: usize = 10;
const TOL: f64 = 1e-9;

/// A published census row: polygon label, origin label, acute angle classes.
#[derive(Clone, Copy, Debug)]
pub struct PrintedRow {
    pub n: usize,
    pub vertices: usize,
    pub polygons: &'static str,
    pub origin: &'static str,
    pub acute: &'static [(u32, u32)],
}

const PRINTED: [PrintedRow; 10] = [
    PrintedRow { n: 1, vertices: 2, polygons: "line-segment", origin: "none", acute: &[] },
    PrintedRow { n: 2, vertices: 4, polygons: "square", origin: "none", acute: &[(1, 2)] },
    PrintedRow { n: 3, vertices: 8, polygons: "1 hexagon", origin: "2", acute: &[(1, 3)] },
    PrintedRow { n: 4, vertices: 16, polygons: "2 octagons", origin: "none", acute: &[(1, 4), (1, 2)] },
    PrintedRow { n: 5, vertices: 32, polygons: "3 decagons", origin: "2", acute: &[(1, 5), (2, 5)] },
    PrintedRow {
        n: 6,
        vertices: 64,
        polygons: "5 dodecagons",
        origin: "4",
        acute: &[(1, 6), (1, 3), (1, 2)],
    },
    PrintedRow {
        n: 7,
        vertices: 128,
        polygons: "9, 14-gons",
        origin: "2",
        acute: &[(1, 7), (2, 7), (3, 7)],
    },
    PrintedRow {
        n: 8,
        vertices: 256,
        polygons: "16, 16-gons",
        origin: "none",
        acute: &[(1, 8), (1, 4), (3, 8), (1, 2)],
    },
    PrintedRow {
        n: 9,
        vertices: 512,
        polygons: "28, 18-gons",
        origin: "8",
        acute: &[(1, 9), (2, 9), (1, 3), (4, 9)],
    },
    PrintedRow {
        n: 10,
        vertices: 1024,
        polygons: "51, 20-gons",
        origin: "4",
        acute: &[(1, 10), (1, 5), (3, 10), (2, 5), (1, 2)],
    },
];

pub fn printed_row(n: usize) -> Option<PrintedRow> {
    PRINTED.iter().find(|r| r.n == n).copied()
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "rank {}: {} checks, {} failed",
            self.n,
            self.checks.len(),
            failed
        )
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn max_dev(a: &AffineElement, b: &AffineElement) -> f64 {
    (a.augmented() - b.augmented()).amax()
}

fn group_relations(d: &DihedralData) -> Result<(bool, String)> {
    let id = AffineElement::identity(d.n);
    let sq1 = max_dev(&d.r1.compose(&d.r1)?, &id);
    let sq2 = max_dev(&d.r2.compose(&d.r2)?, &id);
    let order = element_order(&d.coxeter(), 4 * d.h);
    let ok = sq1 < TOL && sq2 < TOL && order == Some(d.h);
    Ok((
        ok,
        format!("|R1²−I| = {sq1:.1e}, |R2²−I| = {sq2:.1e}, order(R1R2) = {order:?}, h = {}", d.h),
    ))
}

fn reflections_are_reflections(d: &DihedralData, b: &PrincipalBasis) -> Result<(bool, String)> {
    let id = AffineElement::identity(d.n);
    let mut worst: f64 = 0.0;
    let mut not_mirrors = 0;
    for r in &d.reflections {
        worst = worst.max(max_dev(&r.compose(r)?, &id));
        // A product of commuting reflections acts as a mirror on the Coxeter plane.
        let block = &block_diagonalize(r, b)?.blocks[0];
        if (block.determinant() + 1.0).abs() > TOL {
            not_mirrors += 1;
        }
    }
    let ok = d.reflections.len() == d.h && worst < TOL && not_mirrors == 0;
    Ok((
        ok,
        format!(
            "{} elements, involution defect {worst:.1e}, {not_mirrors} not mirrors of the Coxeter plane",
            d.reflections.len()
        ),
    ))
}

fn closure(d: &DihedralData) -> Result<(bool, String)> {
    let expected = if d.n == 1 { 2 } else { 4 * d.n };
    let got = point_closure(&d.r1, &d.r2, 8 * d.n + 8)?.len();
    Ok((got == expected, format!("{got} elements, expected {expected}")))
}

fn extended_involution(d: &DihedralData) -> Result<(bool, String)> {
    let e = d.extended();
    let dev = max_dev(&e.compose(&e)?, &AffineElement::identity(d.n));
    Ok((dev < TOL, format!("|R01²−I| = {dev:.1e}")))
}

fn translation_law() -> Result<(bool, String)> {
    let a = VectorN::unit(1, 0);
    let shifted = reflection_element(&a, 1, ReflectionFormula::VoronoiLattice)?;
    let plain = reflection_element(&a, 0, ReflectionFormula::VoronoiLattice)?;
    let t = shifted.compose(&plain)?;
    let want = AffineElement::translation_by(a);
    let dev = max_dev(&t, &want);
    Ok((dev < TOL, format!("r(l1,1)·r(l1) − T(l1): {dev:.1e}")))
}

fn eigen_structure(rs: &RootSystem, b: &PrincipalBasis) -> Result<(bool, String)> {
    let c = rs.cartan.map(|x| x as f64);
    let mut worst: f64 = 0.0;
    for i in 0..rs.n {
        let m = b.exponents[i] as f64;
        let want = 2.0 * (1.0 + (m * PI / b.h as f64).cos());
        worst = worst.max((b.eigenvalues[i] - want).abs());
        let x = &b.eigenvectors[i];
        worst = worst.max((&c * x - x * b.eigenvalues[i]).amax());
        for j in 0..rs.n {
            let delta = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((b.axes[i].dot(&b.axes[j]) - delta).abs());
        }
    }
    Ok((worst < TOL, format!("eigenvalue/orthonormality defect {worst:.1e}")))
}

fn plane_rotations(d: &DihedralData, b: &PrincipalBasis) -> Result<(bool, String)> {
    let form = block_diagonalize(&d.coxeter(), b)?;
    let mut worst: f64 = 0.0;
    for (p, block) in form.blocks.iter().enumerate() {
        let want = 2.0 * PI * b.exponents[p] as f64 / b.h as f64;
        worst = worst.max((rotation_angle(block).abs() - want).abs());
    }
    Ok((
        worst < TOL,
        format!("{} planes, angle defect {worst:.1e}", form.blocks.len()),
    ))
}

fn fixed_points(rs: &RootSystem, d: &DihedralData) -> Result<(bool, String)> {
    let n = rs.n;
    let patterns: [Box<dyn Fn(usize) -> i64>; 4] = [
        Box::new(|_| 0),
        Box::new(|_| 1),
        Box::new(|i| if i % 2 == 0 { 2 } else { -1 }),
        Box::new(|i| i as i64 - 1),
    ];
    let mut worst: f64 = 0.0;
    for p in &patterns {
        let offsets: Vec<i64> = (0..n).map(p).collect();
        let lambda = fixed_point(rs, &offsets)?;
        let dd = DihedralData::new(rs, &offsets)?;
        for r in &dd.reflections {
            worst = worst.max(r.apply(&lambda)?.max_abs_diff(&lambda));
        }
        for c in lambda.coords() {
            worst = worst.max((2.0 * c - (2.0 * c).round()).abs());
        }
    }
    let origin = fixed_point(rs, &vec![0; n])?;
    let ok = worst < TOL && origin.is_zero(TOL) && d.reflections.len() == d.h;
    Ok((ok, format!("{} offset patterns, defect {worst:.1e}", patterns.len())))
}

fn table_row(n: usize) -> Result<(bool, String)> {
    let row = table1_row(n)?;
    let want = printed_row(n).ok_or(Error::RankOutOfRange {
        rank: n,
        min: 1,
        max: MAX_VERIFY_RANK,
    })?;
    let acute: Vec<AngleClass> = row.angle_classes.iter().map(|(a, _)| *a).collect();
    let want_acute: Vec<AngleClass> = want
        .acute
        .iter()
        .map(|&(num, den)| AngleClass { num, den })
        .collect();
    let ok = row.vertices == want.vertices
        && row.polygon_label == want.polygons
        && row.origin_label() == want.origin
        && acute == want_acute;
    Ok((ok, row.to_string()))
}

fn rank_three_lattice() -> Result<(bool, String)> {
    let hex = hexagonal_lattice(3)?;
    let na = hex.a.dot(hex.a);
    let nb = hex.b.dot(hex.b);
    let angle = (hex.a.dot(hex.b) / (na.sqrt() * nb.sqrt())).acos();
    let sym_cell = hex.sixfold_about(PlanarPoint::ORIGIN, f64::INFINITY);
    let window = hex.inner_radius() - 2.0 * hex.a.norm();
    let sym_vertex = hex.sixfold_about(hex.a, window);
    let ok = (na - 2.0 / 3.0).abs() < 1e-12
        && (nb - 2.0 / 3.0).abs() < 1e-12
        && (angle - 2.0 * PI / 3.0).abs() < 1e-12
        && sym_cell
        && sym_vertex;
    Ok((
        ok,
        format!("|a|² = {na:.12}, angle = {:.12}π, sixfold {sym_cell}/{sym_vertex}", angle / PI),
    ))
}

fn rank_four_relations(b: &PrincipalBasis) -> Result<(bool, String)> {
    let l = projected_units(b, 1)?;
    let s = 2f64.sqrt();
    let t = (PI / 8.0).tan();
    let pairs = [
        (l[1].sub(l[3]), l[0].scale(s)),
        (l[0].add(l[2]), l[1].scale(s)),
        (l[1].add(l[3]), l[2].scale(s)),
        (l[2].sub(l[0]), l[3].scale(s)),
        (l[1].sub(l[2]), l[0].sub(l[3]).scale(t)),
        (l[0].add(l[3]), l[1].add(l[2]).scale(t)),
        (l[1].sub(l[0]), l[2].add(l[3]).scale(t)),
        (l[2].sub(l[3]), l[0].add(l[1]).scale(t)),
    ];
    let worst = pairs
        .iter()
        .map(|(a, c)| a.distance(*c))
        .fold(0.0, f64::max);
    Ok((worst < 1e-12, format!("8 relations, defect {worst:.1e}")))
}

fn decagon_radii(b: &PrincipalBasis) -> Result<(bool, String)> {
    let r = project_voronoi(&voronoi_cell(5)?, b, 1)?;
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let s = 0.4f64.sqrt();
    let radii = r.radii();
    let ok = radii.len() == 3
        && radii
            .iter()
            .zip([s * tau, s, s / tau])
            .all(|(g, w)| (g - w).abs() < 1e-12)
        && r.origin_count() == 2;
    Ok((ok, format!("radii {radii:?}, {} at origin", r.origin_count())))
}

fn tiling_checks(run: &mut Runner, n: usize, b: &PrincipalBasis) -> Result<()> {
    let cell = voronoi_cell(n)?;
    let subs = dissociate(&cell, b)?;
    let outer = project_voronoi(&cell, b, 1)?.radii()[0];
    let target = area(&regular_polygon(b.h, outer, 0.0));
    run.check("dissociation", {
        let mut worst_gap: f64 = 0.0;
        let mut worst_overlap: f64 = 0.0;
        for s in &subs {
            worst_gap = worst_gap.max((s.area() - target).abs());
            for (i, a) in s.tiles.iter().enumerate() {
                for t in &s.tiles[i + 1..] {
                    worst_overlap = worst_overlap.max(overlap_area(&a.vertices, &t.vertices));
                }
            }
        }
        Ok((
            subs.len() == b.h && worst_gap < 1e-8 && worst_overlap < OVERLAP_TOL,
            format!(
                "{} subtilings of {} rhombs, area gap {worst_gap:.1e}, overlap {worst_overlap:.1e}",
                subs.len(),
                subs[0].tiles.len()
            ),
        ))
    });
    let units = projected_units(b, 1)?;
    run.check(
        "seed and one layer of growth",
        anchor_seed(&subs, b, None).and_then(|(k, seed)| {
            let (grown, report) = grow_patch(&seed, &subs, 1)?;
            let defects = grown.symmetry_defects().len();
            let edges = edge_direction_defect(grown.tiles(), &units);
            let overlap = grown.set.max_overlap();
            Ok((
                report.is_complete()
                    && grown.len() > seed.len()
                    && defects == 0
                    && edges < 1e-6
                    && overlap < OVERLAP_TOL,
                format!(
                    "subtiling {k}, {} → {} tiles, {defects} symmetry defects, edge defect {edges:.1e}",
                    seed.len(),
                    grown.len()
                ),
            ))
        }),
    );
    Ok(())
}

/// Run every applicable self-check for rank `n`.
pub fn verify(n: usize) -> Result<VerifyReport> {
    if n == 0 || n > MAX_VERIFY_RANK {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 1,
            max: MAX_VERIFY_RANK,
        });
    }
    let mut run = Runner { checks: Vec::new() };
    let rs = build_root_system(n, BasisChoice::Cyclic)?;
    let d = DihedralData::point(&rs)?;
    let b = principal_basis(&rs)?;

    run.check("cyclic Coxeter element", {
        let ok = is_cyclic_coxeter(&d.coxeter());
        Ok((ok, "R·l_i = l_(i+1), R·l_n = −l_1".into()))
    });
    run.check("generator relations", group_relations(&d));
    if n >= 2 {
        run.check("reflection elements", reflections_are_reflections(&d, &b));
    }
    run.check("point group closure", closure(&d));
    if n == 1 {
        run.check("translation law", translation_law());
    } else {
        run.check("extended generator", extended_involution(&d));
    }
    run.check("Cartan eigen-structure", eigen_structure(&rs, &b));
    if n >= 2 {
        run.check("Coxeter plane rotations", plane_rotations(&d, &b));
    }
    run.check("fixed points", fixed_points(&rs, &d));
    run.check("projection census", table_row(n));
    match n {
        3 => run.check("triangular lattice", rank_three_lattice()),
        4 => run.check("projected unit relations", rank_four_relations(&b)),
        5 => run.check("decagon radii", decagon_radii(&b)),
        _ => {}
    }
    if (3..=5).contains(&n) {
        if let Err(e) = tiling_checks(&mut run, n, &b) {
            run.check("dissociation", Err(e));
        }
    }
    Ok(VerifyReport {
        n,
        checks: run.checks,
    })
}
