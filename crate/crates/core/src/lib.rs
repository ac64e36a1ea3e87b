//! Tilting modules over type-A quivers, the root polytopes attached to them,
//! and exact integral volumes.

pub mod catalan;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod quiver;
pub mod series;
pub mod tilting;
pub mod verify;

pub use error::{Error, Result};
