//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Failures listed in `KNOWN` are reported as FAIL but do not change the exit
//! status; any other failure does.

#![allow(clippy::type_complexity)]

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlat::dihedral::{element_order, fixed_point, point_closure, DihedralData};
use qlat::planar::{area, overlap_area, regular_polygon};
use qlat::principal::{
    block_diagonalize, principal_basis, projected_units, rotation_angle, PlanarPoint,
    PrincipalBasis,
};
use qlat::tiling::{
    anchor_seed, dissociate, edge_direction_defect, grow_patch, hexagonal_lattice,
    symmetry_lines, DihedralFrame, OVERLAP_TOL,
};
use qlat::voronoi::{project_voronoi, table1, voronoi_cell, AngleClass};
use qlat::{build_root_system, AffineElement, BasisChoice, VectorN};

/// Criteria that cannot pass as literally stated, with the reason.
const KNOWN: &[(u32, &str)] = &[(
    7,
    "the printed rank-5 formula has the wrong sign on the l5 component; no relabeling of the offsets makes it a fixed point",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn cyclic(n: usize) -> qlat::RootSystem {
    build_root_system(n, BasisChoice::Cyclic).unwrap()
}

fn basis(n: usize) -> PrincipalBasis {
    principal_basis(&cyclic(n)).unwrap()
}

fn amax(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

// ---------------------------------------------------------------- 1

fn ac1() -> Outcome {
    let polygons = ["-", "square", "1", "2", "3", "5", "9", "16", "28", "51"];
    let origins = ["-", "-", "2", "0", "2", "4", "2", "0", "8", "4"];
    let angles: [&[(u32, u32)]; 10] = [
        &[],
        &[(1, 2)],
        &[(1, 3)],
        &[(1, 2), (1, 4)],
        &[(1, 5), (2, 5)],
        &[(1, 6), (1, 3), (1, 2)],
        &[(1, 7), (2, 7), (3, 7)],
        &[(1, 8), (1, 4), (3, 8), (1, 2)],
        &[(1, 9), (2, 9), (1, 3), (4, 9)],
        &[(1, 10), (1, 5), (3, 10), (2, 5), (1, 2)],
    ];
    let t0 = Instant::now();
    let rows = table1(10).unwrap();
    let elapsed = t0.elapsed();
    let mut bad = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let n = i + 1;
        let poly = match r.polygons {
            None => "-".to_string(),
            Some(_) if n == 2 => r.polygon_label.clone(),
            Some(k) => k.to_string(),
        };
        let origin = match (n, r.origin) {
            (1 | 2, _) | (_, None) => "-".to_string(),
            (_, Some(k)) => k.to_string(),
        };
        let mut want: Vec<AngleClass> = angles[i]
            .iter()
            .map(|&(num, den)| AngleClass { num, den })
            .collect();
        want.sort();
        let got: Vec<AngleClass> = r.angle_classes.iter().map(|p| p.0).collect();
        let obtuse_ok = r
            .angle_classes
            .iter()
            .all(|(a, b)| a.num * b.den + b.num * a.den == a.den * b.den);
        // The h-gons and the origin partition the vertices.
        let clustered = if n >= 2 {
            let rep = project_voronoi(&voronoi_cell(n).unwrap(), &basis(n), 1).unwrap();
            let on_polygons: usize = rep.polygons.iter().map(|p| p.vertices.len()).sum();
            rep.polygons.iter().all(|p| p.vertices.len() == 2 * n)
                && on_polygons + rep.origin_count() == 1 << n
        } else {
            true
        };
        if r.vertices != 1 << n
            || poly != polygons[i]
            || origin != origins[i]
            || got != want
            || !obtuse_ok
            || !clustered
        {
            bad.push(format!("row {n}: {r}"));
        }
    }
    let fast = elapsed < Duration::from_secs(10);
    outcome(
        bad.is_empty() && fast && rows.len() == 10,
        if bad.is_empty() {
            format!("10 rows match, {elapsed:.2?}")
        } else {
            format!("{} ({elapsed:.2?})", bad.join("; "))
        },
    )
}

// ---------------------------------------------------------------- 2

fn ac2() -> Outcome {
    let tol = 1e-9;
    let mut worst: f64 = 0.0;
    let mut problems = Vec::new();
    for n in 1..=10 {
        let d = DihedralData::point(&cyclic(n)).unwrap();
        let h = 2 * n;
        let id = AffineElement::identity(n);
        let dev = |e: &AffineElement| amax(&(e.augmented() - id.augmented()));
        let r = d.coxeter();
        worst = worst
            .max(dev(&d.r1.compose(&d.r1).unwrap()))
            .max(dev(&d.r2.compose(&d.r2).unwrap()))
            .max(dev(&r.pow(h)));
        let e = d.extended();
        worst = worst.max(dev(&e.compose(&e).unwrap()));
        for k in 1..h {
            if dev(&r.pow(k)) < tol {
                problems.push(format!("n={n}: (R1R2)^{k} = I"));
            }
        }
        // Rank 1 has R2 = I, so the group is {I, R1}.
        let expected = if n == 1 { 2 } else { 4 * n };
        let size = point_closure(&d.r1, &d.r2, 64).unwrap().len();
        if size != expected {
            problems.push(format!("n={n}: closure {size}"));
        }
        if n >= 2 && element_order(&r, 4 * h) != Some(h) {
            problems.push(format!("n={n}: order"));
        }
    }
    outcome(
        worst < tol && problems.is_empty(),
        format!(
            "n=1..10, max deviation {worst:.1e}, closure 4n (2 for n=1){}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 3

fn ac3() -> Outcome {
    let mut eig_err: f64 = 0.0;
    let mut ortho_err: f64 = 0.0;
    let mut angle_err: f64 = 0.0;
    for n in 1..=10 {
        let rs = cyclic(n);
        let h = 2 * n;
        // Independent route: eigenvalues of the non-symmetric Cartan matrix.
        let c = rs.cartan.map(|x| x as f64);
        let mut got: Vec<f64> = c.complex_eigenvalues().iter().map(|z| z.re).collect();
        got.sort_by(|a, b| b.total_cmp(a));
        let mut want: Vec<f64> = (0..n)
            .map(|i| 2.0 * (1.0 + ((2 * i + 1) as f64 * PI / h as f64).cos()))
            .collect();
        want.sort_by(|a, b| b.total_cmp(a));
        for (g, w) in got.iter().zip(&want) {
            eig_err = eig_err.max((g - w).abs());
        }
        let b = principal_basis(&rs).unwrap();
        for (g, w) in b.eigenvalues.iter().zip(&want) {
            eig_err = eig_err.max((g - w).abs());
        }
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                ortho_err = ortho_err.max((b.axes[i].dot(&b.axes[j]) - delta).abs());
            }
        }
        if n >= 2 {
            let d = DihedralData::point(&rs).unwrap();
            let form = block_diagonalize(&d.coxeter(), &b).unwrap();
            for (p, blk) in form.blocks.iter().enumerate() {
                let m = (2 * p + 1) as f64;
                // Orientation of each plane is a convention; compare magnitudes.
                angle_err = angle_err.max((rotation_angle(blk).abs() - 2.0 * PI * m / h as f64).abs());
            }
        }
    }
    outcome(
        eig_err < 1e-9 && ortho_err < 1e-9 && angle_err < 1e-9,
        format!("eigenvalues {eig_err:.1e}, orthonormality {ortho_err:.1e}, |rotation angle| {angle_err:.1e}"),
    )
}

// ---------------------------------------------------------------- 4

fn rot(phi: f64) -> DMatrix<f64> {
    let (s, c) = phi.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

fn mirror(phi: f64) -> DMatrix<f64> {
    let (s, c) = (2.0 * phi).sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, s, -c])
}

fn apply(q: &DMatrix<f64>, p: [f64; 2]) -> [f64; 2] {
    [q[(0, 0)] * p[0] + q[(0, 1)] * p[1], q[(1, 0)] * p[0] + q[(1, 1)] * p[1]]
}

/// Best of the rotation and the reflection taking `ours[0]` onto `printed[0]`.
fn align(ours: &[[f64; 2]], printed: &[[f64; 2]]) -> (DMatrix<f64>, f64) {
    let ang = |p: [f64; 2]| p[1].atan2(p[0]);
    let (a, b) = (ang(ours[0]), ang(printed[0]));
    let candidates = [rot(b - a), mirror((a + b) / 2.0)];
    candidates
        .into_iter()
        .map(|q| {
            let err = ours
                .iter()
                .zip(printed)
                .map(|(&u, w)| {
                    let v = apply(&q, u);
                    (v[0] - w[0]).abs().max((v[1] - w[1]).abs())
                })
                .fold(0.0, f64::max);
            (q, err)
        })
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap()
}

fn printed_l(n: usize) -> Vec<Vec<f64>> {
    let c = |k: f64| (k * PI / (4.0 * n as f64)).cos();
    let s = |k: f64| (k * PI / (4.0 * n as f64)).sin();
    match n {
        4 => {
            let k = 1.0 / 2f64.sqrt();
            [(13.0, 7.0), (9.0, 27.0), (5.0, 15.0), (1.0, 3.0)]
                .iter()
                .map(|&(a, b)| vec![k * c(a), k * s(a), k * c(b), k * s(b)])
                .collect()
        }
        5 => {
            let k = (2.0f64 / 5.0).sqrt();
            let m = 1.0 / 2f64.sqrt();
            [(5.0, 15.0, -m), (9.0, 27.0, m), (13.0, 39.0, -m), (17.0, 11.0, m), (21.0, 23.0, -m)]
                .iter()
                .map(|&(a, b, z)| vec![k * c(a), k * s(a), k * c(b), k * s(b), k * z])
                .collect()
        }
        _ => unreachable!(),
    }
}

fn printed_blocks(n: usize) -> (Vec<DMatrix<f64>>, Vec<DMatrix<f64>>, Option<(f64, f64)>) {
    let blk = |t: f64, sgn: f64| {
        let (s, c) = t.sin_cos();
        DMatrix::from_row_slice(2, 2, &[-c, sgn * s, sgn * s, c])
    };
    match n {
        3 => {
            let r3 = 3f64.sqrt() / 2.0;
            (
                vec![DMatrix::from_row_slice(2, 2, &[-r3, -0.5, -0.5, r3])],
                vec![DMatrix::from_row_slice(2, 2, &[-r3, 0.5, 0.5, r3])],
                Some((-1.0, 1.0)),
            )
        }
        4 => (
            vec![blk(PI / 8.0, 1.0), blk(3.0 * PI / 8.0, 1.0)],
            vec![blk(PI / 8.0, -1.0), blk(3.0 * PI / 8.0, -1.0)],
            None,
        ),
        5 => (
            vec![blk(PI / 10.0, -1.0), blk(3.0 * PI / 10.0, -1.0)],
            vec![blk(PI / 10.0, 1.0), blk(3.0 * PI / 10.0, 1.0)],
            Some((-1.0, 1.0)),
        ),
        _ => unreachable!(),
    }
}

fn ac4() -> Outcome {
    let mut vec_err: f64 = 0.0;
    let mut blk_err: f64 = 0.0;
    let mut notes = Vec::new();
    for n in [3usize, 4, 5] {
        let rs = cyclic(n);
        let b = principal_basis(&rs).unwrap();
        let d = DihedralData::point(&rs).unwrap();
        let f1 = block_diagonalize(&d.r1, &b).unwrap();
        let f2 = block_diagonalize(&d.r2, &b).unwrap();
        let (p1, p2, mid) = printed_blocks(n);
        let planes = n / 2;
        let mut qs = Vec::new();
        if n == 3 {
            // No printed coordinates: align on the mirror of R1, then test R2.
            let theta = |m: &DMatrix<f64>| m[(1, 0)].atan2(m[(0, 0)]) / 2.0;
            let (a, t) = (theta(&f1.blocks[0]), theta(&p1[0]));
            let q = [rot(t - a), mirror((a + t) / 2.0)]
                .into_iter()
                .min_by(|x, y| {
                    let e = |q: &DMatrix<f64>| amax(&(q * &f2.blocks[0] * q.transpose() - &p2[0]));
                    e(x).total_cmp(&e(y))
                })
                .unwrap();
            qs.push(q);
        } else {
            let comps: Vec<Vec<f64>> = (0..n)
                .map(|i| b.components(&VectorN::unit(n, i)).unwrap())
                .collect();
            let want = printed_l(n);
            for p in 0..planes {
                let ours: Vec<[f64; 2]> = comps.iter().map(|c| [c[2 * p], c[2 * p + 1]]).collect();
                let pr: Vec<[f64; 2]> = want.iter().map(|c| [c[2 * p], c[2 * p + 1]]).collect();
                let (q, err) = align(&ours, &pr);
                vec_err = vec_err.max(err);
                if amax(&(&q - DMatrix::identity(2, 2))) > 1e-9 {
                    notes.push(format!("n={n} plane {} realigned", p + 1));
                }
                qs.push(q);
            }
            if n % 2 == 1 {
                for (c, w) in comps.iter().zip(&want) {
                    vec_err = vec_err.max((c[n - 1] - w[n - 1]).abs());
                }
            }
        }
        for p in 0..planes {
            let q = &qs[p];
            blk_err = blk_err
                .max(amax(&(q * &f1.blocks[p] * q.transpose() - &p1[p])))
                .max(amax(&(q * &f2.blocks[p] * q.transpose() - &p2[p])));
        }
        if let Some((m1, m2)) = mid {
            blk_err = blk_err
                .max((f1.middle.unwrap() - m1).abs())
                .max((f2.middle.unwrap() - m2).abs());
        }
        blk_err = blk_err.max(f1.off_block).max(f2.off_block);
    }
    outcome(
        vec_err < 1e-9 && blk_err < 1e-9,
        format!(
            "l-vectors (n=4,5) {vec_err:.1e}, blocks (n=3,4,5) {blk_err:.1e}{}",
            if notes.is_empty() { ", no realignment needed".to_string() } else { format!(", {}", notes.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 5

fn ac5() -> Outcome {
    let l = projected_units(&basis(4), 1).unwrap();
    let s = 2f64.sqrt();
    let t = (PI / 8.0).tan();
    let rel = [
        (l[1].sub(l[3]), l[0].scale(s)),
        (l[0].add(l[2]), l[1].scale(s)),
        (l[1].add(l[3]), l[2].scale(s)),
        (l[2].sub(l[0]), l[3].scale(s)),
        (l[1].sub(l[2]), l[0].sub(l[3]).scale(t)),
        (l[0].add(l[3]), l[1].add(l[2]).scale(t)),
        (l[1].sub(l[0]), l[2].add(l[3]).scale(t)),
        (l[2].sub(l[3]), l[0].add(l[1]).scale(t)),
    ];
    let worst = rel.iter().map(|(a, b)| a.distance(*b)).fold(0.0, f64::max);
    let orth = l[0].dot(l[2]).abs().max(l[1].dot(l[3]).abs());
    outcome(
        worst < 1e-12 && orth < 1e-12,
        format!("8 relations, max residual {worst:.1e}; (l1,l3), (l2,l4) {orth:.1e}"),
    )
}

// ---------------------------------------------------------------- 6

fn ac6() -> Outcome {
    let r = project_voronoi(&voronoi_cell(5).unwrap(), &basis(5), 1).unwrap();
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    let k = 0.4f64.sqrt();
    let radii = r.radii();
    let err = radii
        .iter()
        .zip([k * tau, k, k / tau])
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    outcome(
        radii.len() == 3 && err < 1e-12 && r.origin_count() == 2,
        format!("{} radii, max error {err:.1e}, {} at origin", radii.len(), r.origin_count()),
    )
}

// ---------------------------------------------------------------- 7

/// `(root-order offsets, printed λ)` from the printed generator labels.
fn rank3(n: [i64; 3]) -> (Vec<i64>, Vec<f64>) {
    let [n1, n2, n3] = n.map(|x| x as f64);
    (
        vec![n[1], n[2], n[0]],
        vec![n1 / 2.0, n1 / 2.0 + n2 + n3, n1 / 2.0 + n3],
    )
}

fn rank4(n: [i64; 4]) -> (Vec<i64>, Vec<f64>) {
    let [n1, n2, n3, n4] = n.map(|x| x as f64);
    (
        n.to_vec(),
        vec![n3 + n4 / 2.0, n1 + n2 + n3 + n4 / 2.0, n2 + n3 + n4 / 2.0, n4 / 2.0],
    )
}

fn rank5(n: [i64; 5], l5_sign: f64) -> (Vec<i64>, Vec<f64>) {
    let [n1, n2, n3, n4, n5] = n.map(|x| x as f64);
    (
        vec![n[1], n[2], n[0], n[3], n[4]],
        vec![
            n1 + n4 + n5 / 2.0,
            n1 + n2 + n3 + n4 + n5 / 2.0,
            n1 + n3 + n4 + n5 / 2.0,
            n4 + n5 / 2.0,
            l5_sign * n5 / 2.0,
        ],
    )
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2a11);
    let mut formula_err = [0.0f64; 4];
    let mut gen_err: f64 = 0.0;
    let mut draw = |k: usize| -> Vec<i64> { (0..k).map(|_| rng.random_range(-20..=20)).collect() };
    for _ in 0..100 {
        let a = draw(3);
        let b = draw(4);
        let c = draw(5);
        let cases = [
            (3, rank3([a[0], a[1], a[2]])),
            (4, rank4([b[0], b[1], b[2], b[3]])),
            (5, rank5([c[0], c[1], c[2], c[3], c[4]], 1.0)),
            (5, rank5([c[0], c[1], c[2], c[3], c[4]], -1.0)),
        ];
        for (slot, (n, (offsets, want))) in cases.into_iter().enumerate() {
            let rs = cyclic(n);
            let lambda = fixed_point(&rs, &offsets).unwrap();
            let e = lambda
                .coords()
                .iter()
                .zip(&want)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            formula_err[slot] = formula_err[slot].max(e);
            let d = DihedralData::new(&rs, &offsets).unwrap();
            for g in [&d.r1, &d.r2] {
                gen_err = gen_err.max(g.apply(&lambda).unwrap().max_abs_diff(&lambda));
            }
        }
    }
    let tol = 1e-12;
    let printed_ok = formula_err[..3].iter().all(|&e| e < tol);
    outcome(
        printed_ok && gen_err < tol,
        format!(
            "100 offsets each: rank 3 {:.1e}, rank 4 {:.1e}, rank 5 as printed {:.1e}, rank 5 with l5 sign corrected {:.1e}; generators fix λ to {gen_err:.1e}",
            formula_err[0], formula_err[1], formula_err[2], formula_err[3]
        ),
    )
}

// ---------------------------------------------------------------- 8

fn ac8() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for n in [3usize, 4, 5] {
        let b = basis(n);
        let cell = voronoi_cell(n).unwrap();
        let subs = match dissociate(&cell, &b) {
            Ok(s) => s,
            Err(e) => {
                ok = false;
                details.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let outer = project_voronoi(&cell, &b, 1).unwrap().radii()[0];
        let target = area(&regular_polygon(2 * n, outer, 0.0));
        let frame = DihedralFrame::for_basis(&b, PlanarPoint::ORIGIN);
        let mut overlap: f64 = 0.0;
        let mut gap: f64 = 0.0;
        for s in &subs {
            for (i, x) in s.tiles.iter().enumerate() {
                for y in &s.tiles[i + 1..] {
                    overlap = overlap.max(overlap_area(&x.vertices, &y.vertices));
                }
            }
            gap = gap.max((s.area() - target).abs());
            ok &= !symmetry_lines(&s.tiles, &frame).is_empty();
        }
        ok &= overlap < OVERLAP_TOL && gap < 1e-8 && subs.len() == 2 * n;
        let count = |num, den| {
            subs[0]
                .tiles
                .iter()
                .filter(|t| t.angle_class == AngleClass { num, den })
                .count()
        };
        match n {
            3 => ok &= subs.iter().all(|s| s.tiles.len() == 3) && count(1, 3) == 3,
            4 => {
                ok &= subs.iter().all(|s| s.tiles.len() == 6) && count(1, 4) == 4 && count(1, 2) == 2
            }
            _ => {}
        }
        details.push(format!(
            "n={n}: {} × {} rhombs, overlap {overlap:.1e}, area gap {gap:.1e}",
            subs.len(),
            subs[0].tiles.len()
        ));
    }
    outcome(ok, details.join("; "))
}

// ---------------------------------------------------------------- 9

fn ac9() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for n in [4usize, 5] {
        let t0 = Instant::now();
        let b = basis(n);
        let subs = dissociate(&voronoi_cell(n).unwrap(), &b).unwrap();
        let (_, seed) = anchor_seed(&subs, &b, None).unwrap();
        let (patch, report) = grow_patch(&seed, &subs, 2).unwrap();
        let elapsed = t0.elapsed();
        let defects = patch.symmetry_defects();
        let edges = edge_direction_defect(patch.tiles(), &projected_units(&b, 1).unwrap());
        let overlap = patch.set.max_overlap();
        ok &= elapsed < Duration::from_secs(60)
            && report.is_complete()
            && defects.is_empty()
            && patch.len() > seed.len()
            && edges < 1e-6
            && overlap < OVERLAP_TOL;
        details.push(format!(
            "n={n}: {} → {} tiles in {elapsed:.2?}, {}/{} dihedral elements fail, edge defect {edges:.1e}",
            seed.len(),
            patch.len(),
            defects.len(),
            2 * b.h
        ));
    }
    outcome(ok, details.join("; "))
}

// ---------------------------------------------------------------- 10

fn ac10() -> Outcome {
    let hex = hexagonal_lattice(4).unwrap();
    let (a, b) = (hex.a, hex.b);
    let norm_err = (a.dot(a) - 2.0 / 3.0).abs().max((b.dot(b) - 2.0 / 3.0).abs());
    let angle = (a.dot(b) / (a.norm() * b.norm())).acos();
    let angle_err = (angle - 2.0 * PI / 3.0).abs();
    let about_center = hex.sixfold_about(PlanarPoint::ORIGIN, f64::INFINITY);
    let window = hex.inner_radius() - 2.0 * a.norm();
    let about_vertex = hex.sixfold_about(a, window);
    outcome(
        norm_err < 1e-12 && angle_err < 1e-12 && about_center && about_vertex,
        format!(
            "norm {norm_err:.1e}, angle {angle_err:.1e}, sixfold about centre {about_center}, about vertex {about_vertex} ({} triangles)",
            hex.triangles.len()
        ),
    )
}

// ---------------------------------------------------------------- 11

fn run_cli(args: &[&str], dir: &Path, threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qlat"))
        .args(args)
        .current_dir(dir)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn ac11() -> Outcome {
    let commands: &[&[&str]] = &[
        &["table1", "--max-n", "10", "--json", "t.json"],
        &["project", "-n", "4", "--svg", "p4.svg", "--json", "p4.json"],
        &["project", "-n", "5", "--plane", "2", "--svg", "p5.svg"],
        &["tile", "-n", "4", "--layers", "0", "--svg", "d4.svg", "--json", "d4.json"],
        &["tile", "-n", "4", "--layers", "3", "--svg", "t4.svg", "--json", "t4.json"],
        &["tile", "-n", "5", "--layers", "3", "--svg", "t5.svg", "--json", "t5.json"],
        &["verify", "-n", "5"],
    ];
    let runs: Vec<(tempfile::TempDir, &str)> = ["1", "1", "4"]
        .into_iter()
        .map(|t| (tempfile::tempdir().unwrap(), t))
        .collect();
    let mut stdouts: Vec<Vec<Vec<u8>>> = Vec::new();
    for (dir, threads) in &runs {
        let mut outs = Vec::new();
        for c in commands {
            match run_cli(c, dir.path(), threads) {
                Ok(o) => outs.push(o),
                Err(e) => return outcome(false, e),
            }
        }
        stdouts.push(outs);
    }
    let mut mismatches = Vec::new();
    let mut files = 0;
    for c in commands {
        for w in c.windows(2) {
            if w[0] == "--svg" || w[0] == "--json" {
                files += 1;
                let base = std::fs::read(runs[0].0.path().join(w[1])).unwrap();
                for (dir, threads) in &runs[1..] {
                    if std::fs::read(dir.path().join(w[1])).unwrap() != base {
                        mismatches.push(format!("{} (threads {threads})", w[1]));
                    }
                }
            }
        }
    }
    for s in &stdouts[1..] {
        if s != &stdouts[0] {
            mismatches.push("stdout".into());
        }
    }
    outcome(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{} commands, {files} files byte-identical across 3 runs (1, 1, 4 threads)", commands.len())
        } else {
            format!("differs: {}", mismatches.join(", "))
        },
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "projection census", ac1),
        (2, "group relations", ac2),
        (3, "eigen-structure", ac3),
        (4, "printed coordinates and blocks", ac4),
        (5, "projected-vector relations", ac5),
        (6, "decagon radii", ac6),
        (7, "fixed-point formulas", ac7),
        (8, "dissociation", ac8),
        (9, "patch growth", ac9),
        (10, "hexagonal case", ac10),
        (11, "determinism", ac11),
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for (id, name, f) in criteria {
        let t0 = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] AC{id:<2} {name}: {} [{:.2?}]", o.detail, t0.elapsed());
        if !o.passed {
            failed += 1;
            match KNOWN.iter().find(|k| k.0 == id) {
                Some((_, why)) => println!("       known deviation: {why}"),
                None => unexpected += 1,
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({} known)",
        11 - failed,
        failed - unexpected
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
