use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::principal::PlanarPoint;
use crate::tiling::{tile_kind, SubTiling, TileKind, TilingPatch};
use crate::voronoi::{OrbitReport, Rhomb, Table1Row};

use super::round15;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileRecord {
    pub vertices: [[f64; 2]; 4],
    /// Acute angle, e.g. `pi/5`.
    pub angle_class: String,
    pub kind: TileKind,
}

/// Serialized form of a tiling patch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatchDocument {
    pub schema_version: u32,
    pub n: usize,
    pub h: usize,
    pub center: [f64; 2],
    pub layers: usize,
    pub tiles: Vec<TileRecord>,
}

fn pair(p: PlanarPoint) -> [f64; 2] {
    [round15(p.x), round15(p.y)]
}

impl PatchDocument {
    pub fn from_tiles<'a>(
        n: usize,
        h: usize,
        center: PlanarPoint,
        layers: usize,
        tiles: impl IntoIterator<Item = &'a Rhomb>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            n,
            h,
            center: pair(center),
            layers,
            tiles: tiles
                .into_iter()
                .map(|t| TileRecord {
                    vertices: t.vertices.map(pair),
                    angle_class: t.angle_class.label(),
                    kind: tile_kind(t.angle_class, h),
                })
                .collect(),
        }
    }

    pub fn from_patch(patch: &TilingPatch) -> Self {
        Self::from_tiles(patch.n, patch.h, patch.center(), patch.layers, patch.tiles())
    }

    /// A single dissociated `h`-gon, centred at the origin.
    pub fn from_subtiling(n: usize, s: &SubTiling) -> Self {
        Self::from_tiles(n, s.h, PlanarPoint::ORIGIN, 0, &s.tiles)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(s)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::GeometryDefect(format!(
                "unsupported schema version {}",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    /// Rebuild the rhombs; angle classes are recomputed from the corners.
    pub fn rhombs(&self) -> Result<Vec<Rhomb>> {
        self.tiles
            .iter()
            .map(|t| {
                Rhomb::from_corners(
                    t.vertices.map(|[x, y]| PlanarPoint::new(x, y)),
                    self.h,
                )
            })
            .collect()
    }
}

/// One census row, with both structured and printed fields.
#[derive(Clone, Debug, Serialize)]
pub struct TableRecord {
    pub n: usize,
    pub vertices: usize,
    pub polygons: Option<usize>,
    pub polygon_label: String,
    pub origin: Option<usize>,
    pub angle_classes: Vec<[String; 2]>,
    pub row: String,
}

impl From<&Table1Row> for TableRecord {
    fn from(r: &Table1Row) -> Self {
        Self {
            n: r.n,
            vertices: r.vertices,
            polygons: r.polygons,
            polygon_label: r.polygon_label.clone(),
            origin: r.origin,
            angle_classes: r
                .angle_classes
                .iter()
                .map(|(a, b)| [a.label(), b.label()])
                .collect(),
            row: r.to_string(),
        }
    }
}

pub fn table_json(rows: &[Table1Row]) -> Result<String> {
    let records: Vec<TableRecord> = rows.iter().map(TableRecord::from).collect();
    let mut s = serde_json::to_string_pretty(&records)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct OrbitDoc {
    schema_version: u32,
    n: usize,
    h: usize,
    plane: usize,
    vertex_count: usize,
    origin_count: usize,
    origin_vertices: Vec<usize>,
    radii: Vec<f64>,
    polygons: Vec<PolygonDoc>,
    projected: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct PolygonDoc {
    radius: f64,
    phase: f64,
    vertices: Vec<usize>,
}

pub fn orbit_json(report: &OrbitReport) -> Result<String> {
    let doc = OrbitDoc {
        schema_version: SCHEMA_VERSION,
        n: report.n,
        h: report.h,
        plane: report.plane,
        vertex_count: report.projected.len(),
        origin_count: report.origin_count(),
        origin_vertices: report.origin_vertices.clone(),
        radii: report.radii().into_iter().map(round15).collect(),
        polygons: report
            .polygons
            .iter()
            .map(|p| PolygonDoc {
                radius: round15(p.radius),
                phase: round15(p.phase),
                vertices: p.vertices.clone(),
            })
            .collect(),
        projected: report.projected.iter().map(|&p| pair(p)).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}
