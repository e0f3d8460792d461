//! Convex polygon helpers for the tiling code.

use crate::principal::PlanarPoint;

/// Signed shoelace area; positive for counter-clockwise order.
pub fn signed_area(poly: &[PlanarPoint]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| poly[i].cross(poly[(i + 1) % n]))
        .sum::<f64>()
        / 2.0
}

pub fn area(poly: &[PlanarPoint]) -> f64 {
    signed_area(poly).abs()
}

fn ccw(poly: &[PlanarPoint]) -> Vec<PlanarPoint> {
    let mut p = poly.to_vec();
    if signed_area(&p) < 0.0 {
        p.reverse();
    }
    p
}

/// Sutherland–Hodgman clip of `subject` against the convex polygon `clip`.
pub fn clip_convex(subject: &[PlanarPoint], clip: &[PlanarPoint]) -> Vec<PlanarPoint> {
    let clip = ccw(clip);
    let mut output = ccw(subject);
    let m = clip.len();
    for i in 0..m {
        if output.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % m];
        let edge = b.sub(a);
        let side = |p: PlanarPoint| edge.cross(p.sub(a));
        let input = std::mem::take(&mut output);
        let k = input.len();
        for j in 0..k {
            let cur = input[j];
            let prev = input[(j + k - 1) % k];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= 0.0 {
                if sp < 0.0 {
                    output.push(intersect(prev, cur, sp, sc));
                }
                output.push(cur);
            } else if sp >= 0.0 {
                output.push(intersect(prev, cur, sp, sc));
            }
        }
    }
    output
}

fn intersect(p: PlanarPoint, q: PlanarPoint, sp: f64, sq: f64) -> PlanarPoint {
    let t = sp / (sp - sq);
    p.add(q.sub(p).scale(t))
}

/// Area of the intersection of two convex polygons.
pub fn overlap_area(a: &[PlanarPoint], b: &[PlanarPoint]) -> f64 {
    if !bboxes_overlap(a, b) {
        return 0.0;
    }
    let c = clip_convex(a, b);
    if c.len() < 3 {
        0.0
    } else {
        area(&c)
    }
}

fn bbox(p: &[PlanarPoint]) -> (f64, f64, f64, f64) {
    p.iter().fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |(x0, y0, x1, y1), q| (x0.min(q.x), y0.min(q.y), x1.max(q.x), y1.max(q.y)),
    )
}

pub fn bboxes_overlap(a: &[PlanarPoint], b: &[PlanarPoint]) -> bool {
    let (ax0, ay0, ax1, ay1) = bbox(a);
    let (bx0, by0, bx1, by1) = bbox(b);
    ax0 < bx1 && bx0 < ax1 && ay0 < by1 && by0 < ay1
}

/// A point rounded to a grid of spacing `eps`.
pub fn point_key(p: PlanarPoint, eps: f64) -> (i64, i64) {
    ((p.x / eps).round() as i64, (p.y / eps).round() as i64)
}

/// Sorted rounded vertices; equal keys mean the same polygon.
pub fn polygon_key(poly: &[PlanarPoint], eps: f64) -> Vec<(i64, i64)> {
    let mut k: Vec<_> = poly.iter().map(|&p| point_key(p, eps)).collect();
    k.sort_unstable();
    k
}

/// Regular `h`-gon with circumradius `r` and first vertex at angle `phase`.
pub fn regular_polygon(h: usize, r: f64, phase: f64) -> Vec<PlanarPoint> {
    (0..h)
        .map(|k| PlanarPoint::polar(r, phase + 2.0 * std::f64::consts::PI * k as f64 / h as f64))
        .collect()
}

/// Convex hull (Andrew's monotone chain), counter-clockwise, collinear points dropped.
pub fn convex_hull(points: &[PlanarPoint]) -> Vec<PlanarPoint> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup_by(|a, b| a.distance(*b) < 1e-12);
    if p.len() < 3 {
        return p;
    }
    let turn = |o: PlanarPoint, a: PlanarPoint, b: PlanarPoint| a.sub(o).cross(b.sub(o));
    let mut lower: Vec<PlanarPoint> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 1e-12 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<PlanarPoint> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 1e-12 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
