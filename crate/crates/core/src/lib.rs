//! Cyclic polygon plots for multi-dimensional data.
//!
//! Every n-dimensional value becomes a closed polygon whose vertices are
//! 2D projections of consecutive component pairs, all drawn in one shared
//! coordinate frame. The crate builds those polygons, measures them,
//! renders them as SVG, places them as small glyphs (a 2D embedding), and
//! scores placements against known classes.

pub mod cli;
pub mod clusteval;
pub mod datagen;
pub mod error;
pub mod geometry;
pub mod model;
pub mod placement;
pub mod render;
pub mod scheme;

pub use error::{Error, Result};
pub use model::{
    validate_dataset, CyclicPolygon, DataVector, Dataset, GlyphEntry, GlyphLayout, Point2,
    ScaleSpec, Scheme, StrategyKind, Transform,
};
