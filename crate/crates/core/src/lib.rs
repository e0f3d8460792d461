//! Affine dihedral subgroups of the hypercubic lattice symmetry group `W_a(B_n)`,
//! Coxeter-plane projections of the Voronoi cell of `ℤⁿ`, and `h`-fold
//! rhombic tilings grown from them.

pub mod dihedral;
pub mod error;
pub mod output;
pub mod planar;
pub mod principal;
pub mod reflection;
pub mod roots;
pub mod tiling;
pub mod vector;
pub mod verify;
pub mod voronoi;

pub use error::{Error, Result};
pub use reflection::{AffineElement, ReflectionFormula};
pub use roots::{build_root_system, BasisChoice, RootSystem};
pub use vector::VectorN;
