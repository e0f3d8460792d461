//! JSON documents and SVG drawings.

mod document;
mod svg;

pub use document::{
    orbit_json, table_json, PatchDocument, TableRecord, TileRecord, SCHEMA_VERSION,
};
pub use svg::{patch_svg, projection_svg, tiles_svg, PX_PER_UNIT};

/// Round to 15 significant digits, folding `-0` into `0`.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    r + 0.0
}
