use std::fmt::Write;

use crate::principal::PlanarPoint;
use crate::tiling::{tile_kind, TileKind, TilingPatch};
use crate::voronoi::{OrbitReport, Rhomb, VoronoiCell};

pub const PX_PER_UNIT: f64 = 100.0;
const MARGIN: f64 = 20.0;

/// Lattice-to-screen map: y flipped, 100 px per unit.
struct Canvas {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
}

impl Canvas {
    fn fit(points: impl Iterator<Item = PlanarPoint>) -> Self {
        let (mut lo, mut hi) = (
            PlanarPoint::new(f64::INFINITY, f64::INFINITY),
            PlanarPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in points {
            lo = PlanarPoint::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = PlanarPoint::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.x.is_finite() {
            lo = PlanarPoint::ORIGIN;
            hi = PlanarPoint::ORIGIN;
        }
        Self {
            min_x: lo.x,
            max_y: hi.y,
            width: (hi.x - lo.x) * PX_PER_UNIT + 2.0 * MARGIN,
            height: (hi.y - lo.y) * PX_PER_UNIT + 2.0 * MARGIN,
        }
    }

    fn map(&self, p: PlanarPoint) -> (f64, f64) {
        (
            px((p.x - self.min_x) * PX_PER_UNIT + MARGIN),
            px((self.max_y - p.y) * PX_PER_UNIT + MARGIN),
        )
    }

    fn open(&self, out: &mut String) {
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(
            out,
            r##"<rect x="0" y="0" width="{:.2}" height="{:.2}" fill="#ffffff"/>"##,
            self.width, self.height
        );
    }
}

/// Two decimals, with `-0.00` folded to `0.00`.
fn px(v: f64) -> f64 {
    let r = (v * 100.0).round() / 100.0;
    r + 0.0
}

fn fill(kind: TileKind) -> &'static str {
    match kind {
        TileKind::Thin => "#e8a33d",
        TileKind::Thick => "#3d7ee8",
        TileKind::Square => "#5cb85c",
        TileKind::Other => "#b07cc6",
    }
}

/// One `<polygon>` per tile, coloured by kind; the centre is marked with a
/// small cross when given.
pub fn tiles_svg<'a>(
    h: usize,
    tiles: impl IntoIterator<Item = &'a Rhomb> + Clone,
    center: Option<PlanarPoint>,
) -> String {
    let canvas = Canvas::fit(
        tiles
            .clone()
            .into_iter()
            .flat_map(|t| t.vertices)
            .chain(center),
    );
    let mut out = String::new();
    canvas.open(&mut out);
    let _ = writeln!(out, r##"<g stroke="#202020" stroke-width="1" stroke-linejoin="round">"##);
    for t in tiles {
        let points: Vec<String> = t
            .vertices
            .iter()
            .map(|&p| {
                let (x, y) = canvas.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let kind = tile_kind(t.angle_class, h);
        let _ = writeln!(
            out,
            r#"<polygon class="{kind}" data-angle="{}" fill="{}" points="{}"/>"#,
            t.angle_class.label(),
            fill(kind),
            points.join(" "),
            kind = kind_name(kind)
        );
    }
    let _ = writeln!(out, "</g>");
    if let Some(c) = center {
        let (x, y) = canvas.map(c);
        let _ = writeln!(
            out,
            r##"<path class="center" stroke="#d02020" stroke-width="2" d="M {:.2} {y:.2} L {:.2} {y:.2} M {x:.2} {:.2} L {x:.2} {:.2}"/>"##,
            x - 6.0,
            x + 6.0,
            y - 6.0,
            y + 6.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn kind_name(k: TileKind) -> &'static str {
    match k {
        TileKind::Thin => "thin",
        TileKind::Thick => "thick",
        TileKind::Square => "square",
        TileKind::Other => "other",
    }
}

pub fn patch_svg(patch: &TilingPatch) -> String {
    let tiles: Vec<&Rhomb> = patch.tiles().collect();
    tiles_svg(patch.h, tiles.iter().copied(), Some(patch.center()))
}

/// Projected cell edges as `<line>`s and vertices as `<circle>`s; vertices
/// that land on the origin get class `origin`, the rest class `vertex`.
pub fn projection_svg(cell: &VoronoiCell, report: &OrbitReport) -> String {
    let pts = &report.projected;
    let canvas = Canvas::fit(pts.iter().copied());
    let mut out = String::new();
    canvas.open(&mut out);
    let _ = writeln!(out, r##"<g stroke="#909090" stroke-width="0.8">"##);
    for (i, a) in cell.vertices.iter().enumerate() {
        for (j, b) in cell.vertices.iter().enumerate().skip(i + 1) {
            if a.iter().zip(b).filter(|(x, y)| x != y).count() == 1 {
                let (x1, y1) = canvas.map(pts[i]);
                let (x2, y2) = canvas.map(pts[j]);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    let on_origin: std::collections::BTreeSet<usize> =
        report.origin_vertices.iter().copied().collect();
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = canvas.map(p);
        let (class, color) = if on_origin.contains(&i) {
            ("origin", "#d02020")
        } else {
            ("vertex", "#202060")
        };
        let _ = writeln!(
            out,
            r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}
