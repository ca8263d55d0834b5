//! Geometric measures of cyclic polygons and their relation to parallel
//! coordinates.
//!
//! Polygons may self-intersect. Area is the signed shoelace sum, so regions
//! traversed clockwise cancel regions traversed counter-clockwise.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::model::{CyclicPolygon, DataVector, Point2, Scheme};

/// Signed shoelace area. Zero for fewer than three vertices.
pub fn signed_area(vertices: &[Point2]) -> f64 {
    let k = vertices.len();
    if k <= 2 {
        return 0.0;
    }
    let twice: f64 = (0..k)
        .map(|j| {
            let a = vertices[j];
            let b = vertices[(j + 1) % k];
            a.x * b.y - b.x * a.y
        })
        .sum();
    0.5 * twice
}

/// Signed ab-bc area straight from the components:
/// ½ (Σ δ_j δ_{j+2} − Σ δ_j²), the shoelace expanded symbolically.
pub fn abbc_signed_area(d: &DataVector) -> f64 {
    let n = d.dimension();
    if n <= 2 {
        return 0.0;
    }
    let cross: f64 = (0..n).map(|j| d[j] * d.at(j + 2)).sum();
    let squares: f64 = d.components().iter().map(|v| v * v).sum();
    0.5 * (cross - squares)
}

/// Total length of all closing edges.
pub fn circumference(vertices: &[Point2]) -> f64 {
    let k = vertices.len();
    if k < 2 {
        return 0.0;
    }
    (0..k)
        .map(|j| vertices[j].distance(vertices[(j + 1) % k]))
        .sum()
}

/// Arithmetic mean of the vertices.
pub fn vertex_centroid(vertices: &[Point2]) -> Point2 {
    let k = vertices.len() as f64;
    let (sx, sy) = vertices
        .iter()
        .fold((0.0, 0.0), |(sx, sy), p| (sx + p.x, sy + p.y));
    Point2::new(sx / k, sy / k)
}

/// Signed turning angle at every vertex, in radians.
///
/// The angle at v_j is measured from the incoming edge v_{j−1}→v_j to the
/// outgoing edge v_j→v_{j+1}. An exact reversal counts as +π; a vertex with
/// a zero-length incident edge turns by 0. Polygons with fewer than three
/// vertices have no turning.
pub fn turning_angles(vertices: &[Point2]) -> Vec<f64> {
    let k = vertices.len();
    if k < 3 {
        return vec![0.0; k];
    }
    (0..k)
        .map(|j| {
            let prev = vertices[(j + k - 1) % k];
            let cur = vertices[j];
            let next = vertices[(j + 1) % k];
            let a = cur - prev;
            let b = next - cur;
            if (a.x == 0.0 && a.y == 0.0) || (b.x == 0.0 && b.y == 0.0) {
                return 0.0;
            }
            let cross = a.x * b.y - a.y * b.x;
            let dot = a.x * b.x + a.y * b.y;
            if cross == 0.0 && dot < 0.0 {
                PI
            } else {
                cross.atan2(dot)
            }
        })
        .collect()
}

/// (sum of counter-clockwise turns, sum of |clockwise turns|), both ≥ 0.
pub fn angle_sums(vertices: &[Point2]) -> (f64, f64) {
    turning_angles(vertices)
        .into_iter()
        .fold((0.0, 0.0), |(ccw, cw), t| {
            if t > 0.0 {
                (ccw + t, cw)
            } else {
                (ccw, cw - t)
            }
        })
}

/// Signed distance to the main diagonal y = x, positive above it.
pub fn diagonal_distance(v: Point2) -> f64 {
    (v.y - v.x) * FRAC_1_SQRT_2
}

/// Segment slopes of a parallel coordinates plot with unit axis spacing and
/// one shared scale. The last entry is the wrap-around segment.
pub fn pcp_segment_slopes(d: &DataVector) -> Vec<f64> {
    (0..d.dimension()).map(|j| d.at(j + 1) - d[j]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeSlope {
    Defined(f64),
    /// Vertical (or zero-length) edge.
    Undefined,
}

impl EdgeSlope {
    pub fn value(self) -> Option<f64> {
        match self {
            EdgeSlope::Defined(s) => Some(s),
            EdgeSlope::Undefined => None,
        }
    }
}

/// Slope of edge v_j → v_{j+1 mod k} of an ab-bc polygon.
pub fn edge_slope(p: &CyclicPolygon, j: usize) -> Result<EdgeSlope> {
    if p.scheme != Scheme::AbBc {
        return Err(Error::SchemeMismatch);
    }
    let k = p.vertices.len();
    let a = p.vertices[j % k];
    let b = p.vertices[(j + 1) % k];
    let dx = b.x - a.x;
    if dx == 0.0 {
        Ok(EdgeSlope::Undefined)
    } else {
        Ok(EdgeSlope::Defined((b.y - a.y) / dx))
    }
}

impl CyclicPolygon {
    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn circumference(&self) -> f64 {
        circumference(&self.vertices)
    }

    pub fn vertex_centroid(&self) -> Point2 {
        vertex_centroid(&self.vertices)
    }

    pub fn angle_sums(&self) -> (f64, f64) {
        angle_sums(&self.vertices)
    }
}
