//! Glyph placement: each polygon is shrunk into a glyph and positioned by a
//! property derived from it, which turns the plot into a 2D embedding.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    CyclicPolygon, DataVector, Dataset, GlyphEntry, GlyphLayout, Point2, Scheme, StrategyKind,
};
use crate::scheme::{select, select_abcd};

pub const DEFAULT_SCALE_FACTOR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlacementStrategy {
    pub kind: StrategyKind,
    pub scheme: Scheme,
    pub scale_factor: f64,
}

impl PlacementStrategy {
    pub fn new(kind: StrategyKind, scheme: Scheme) -> Self {
        Self {
            kind,
            scheme,
            scale_factor: DEFAULT_SCALE_FACTOR,
        }
    }

    pub fn with_scale_factor(mut self, scale_factor: f64) -> Result<Self> {
        if !(scale_factor > 0.0 && scale_factor.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "scale factor must be positive, got {scale_factor}"
            )));
        }
        self.scale_factor = scale_factor;
        Ok(self)
    }

    /// Placement coordinate for one vector.
    pub fn position(&self, d: &DataVector) -> Point2 {
        match self.kind {
            StrategyKind::Intrinsic => select_abcd(d).vertex_centroid(),
            StrategyKind::Geometric => {
                let p = select(d, self.scheme);
                Point2::new(p.signed_area().abs(), p.circumference())
            }
            StrategyKind::Angular => {
                let (ccw, cw) = select(d, self.scheme).angle_sums();
                Point2::new(ccw, cw)
            }
            StrategyKind::Statistical => mean_and_std(d),
        }
    }

    /// Glyph for one vector: its polygon scaled about its own vertex
    /// centroid and moved onto the placement coordinate.
    pub fn glyph(&self, d: &DataVector) -> GlyphEntry {
        let polygon = select(d, self.scheme);
        let centroid = self.position(d);
        GlyphEntry {
            centroid,
            polygon: to_glyph(&polygon, centroid, self.scale_factor),
        }
    }

    pub fn place(&self, ds: &Dataset) -> GlyphLayout {
        let entries = ds.vectors.par_iter().map(|d| self.glyph(d)).collect();
        GlyphLayout {
            entries,
            strategy: self.kind,
            scheme: self.scheme,
            scale_factor: self.scale_factor,
        }
    }
}

fn to_glyph(polygon: &CyclicPolygon, centroid: Point2, factor: f64) -> CyclicPolygon {
    let own = polygon.vertex_centroid();
    let mut glyph = polygon.similarity(own, factor, centroid);
    // Pin the vertex mean to the centroid exactly; rounding in the
    // similarity transform can leave a residue of a few ulps.
    let drift = centroid - glyph.vertex_centroid();
    for v in &mut glyph.vertices {
        *v = *v + drift;
    }
    glyph
}

/// (mean, population standard deviation) of the components.
pub fn mean_and_std(d: &DataVector) -> Point2 {
    let n = d.dimension() as f64;
    let mean = d.components().iter().sum::<f64>() / n;
    let var = d
        .components()
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / n;
    Point2::new(mean, var.sqrt())
}

/// Keeps each ab-cd polygon at its vertex centroid. ab-bc polygons, whose
/// centroids all sit on the diagonal, move to the centroid of the same
/// vector's ab-cd polygon.
pub fn place_intrinsic(ds: &Dataset, scheme: Scheme) -> GlyphLayout {
    PlacementStrategy::new(StrategyKind::Intrinsic, scheme).place(ds)
}

/// Positions each glyph at (|signed area|, circumference).
pub fn place_geometric(ds: &Dataset, scheme: Scheme) -> GlyphLayout {
    PlacementStrategy::new(StrategyKind::Geometric, scheme).place(ds)
}

/// Positions each glyph at (ccw turning sum, cw turning sum), radians.
pub fn place_angular(ds: &Dataset, scheme: Scheme) -> GlyphLayout {
    PlacementStrategy::new(StrategyKind::Angular, scheme).place(ds)
}

/// Positions each glyph at (component mean, component std dev), drawn with
/// the ab-cd shape.
pub fn place_statistical(ds: &Dataset) -> GlyphLayout {
    PlacementStrategy::new(StrategyKind::Statistical, Scheme::AbCd).place(ds)
}

/// Rescales both placement axes to [0, 1] independently. A constant axis
/// maps to 0.
pub fn normalize_coordinates(points: &[Point2]) -> Vec<Point2> {
    let (mut lo, mut hi) = (
        Point2::new(f64::INFINITY, f64::INFINITY),
        Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let unit = |v: f64, l: f64, h: f64| if h > l { (v - l) / (h - l) } else { 0.0 };
    points
        .iter()
        .map(|p| Point2::new(unit(p.x, lo.x, hi.x), unit(p.y, lo.y, hi.y)))
        .collect()
}
