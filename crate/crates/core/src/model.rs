//! Core value types shared by every other module.
//!
//! Everything here is an immutable value once constructed. Constructors
//! validate their invariants, so downstream code can rely on finite
//! components and consistent dimensions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane, in whatever coordinate system the caller uses.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// One n-dimensional data value with n ≥ 2 finite components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataVector {
    components: Vec<f64>,
}

impl DataVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        Self::validated(components, 0)
    }

    fn validated(components: Vec<f64>, row: usize) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::TooFewDimensions {
                row,
                found: components.len(),
            });
        }
        if let Some(column) = components.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row, column });
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// Component `i` with cyclic indexing.
    pub fn at(&self, i: usize) -> f64 {
        self.components[i % self.components.len()]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.components
    }
}

impl std::ops::Index<usize> for DataVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.components[i]
    }
}

/// A collection of equal-dimension vectors with optional class labels and
/// attribute names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub vectors: Vec<DataVector>,
    pub labels: Option<Vec<String>>,
    pub attribute_names: Option<Vec<String>>,
}

impl Dataset {
    /// Builds and validates a dataset from raw rows. Errors carry the
    /// 0-based row index of the first offending row.
    pub fn from_rows(
        rows: Vec<Vec<f64>>,
        labels: Option<Vec<String>>,
        attribute_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let vectors = rows
            .into_iter()
            .enumerate()
            .map(|(row, r)| DataVector::validated(r, row))
            .collect::<Result<Vec<_>>>()?;
        validate_dataset(Dataset {
            vectors,
            labels,
            attribute_names,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Dimension shared by all vectors; 0 for an empty dataset.
    pub fn dimension(&self) -> usize {
        self.vectors.first().map_or(0, DataVector::dimension)
    }

    /// Distinct labels in order of first appearance.
    pub fn distinct_labels(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for l in self.labels.iter().flatten() {
            if !seen.contains(&l.as_str()) {
                seen.push(l);
            }
        }
        seen
    }

    /// Rescales each dimension independently to [0, 1]. Constant
    /// dimensions map to 0.
    pub fn minmax_normalized(&self) -> Dataset {
        let n = self.dimension();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for v in &self.vectors {
            for (i, &c) in v.components().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                let comps = v
                    .components()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        let span = hi[i] - lo[i];
                        if span > 0.0 {
                            (c - lo[i]) / span
                        } else {
                            0.0
                        }
                    })
                    .collect();
                DataVector { components: comps }
            })
            .collect();
        Dataset {
            vectors,
            labels: self.labels.clone(),
            attribute_names: self.attribute_names.clone(),
        }
    }
}

/// Checks every dataset invariant and returns the dataset unchanged.
pub fn validate_dataset(raw: Dataset) -> Result<Dataset> {
    let expected = raw.dimension();
    for (row, v) in raw.vectors.iter().enumerate() {
        if v.dimension() < 2 {
            return Err(Error::TooFewDimensions {
                row,
                found: v.dimension(),
            });
        }
        if v.dimension() != expected {
            return Err(Error::DimensionMismatch {
                row,
                expected,
                found: v.dimension(),
            });
        }
        if let Some(column) = v.components().iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { row, column });
        }
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != raw.vectors.len() {
            return Err(Error::LabelLengthMismatch {
                labels: labels.len(),
                vectors: raw.vectors.len(),
            });
        }
    }
    if let Some(names) = &raw.attribute_names {
        if !raw.vectors.is_empty() && names.len() != expected {
            return Err(Error::AttributeNameMismatch {
                names: names.len(),
                dimension: expected,
            });
        }
    }
    Ok(raw)
}

/// Cyclic pair selection scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Overlapping pairs (δ_j, δ_{j+1}); k = n vertices.
    AbBc,
    /// Disjoint pairs (δ_{2j}, δ_{2j+1}); k = ⌈n/2⌉ vertices.
    AbCd,
}

impl Scheme {
    pub fn vertex_count(self, n: usize) -> usize {
        match self {
            Scheme::AbBc => n,
            Scheme::AbCd => n.div_ceil(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::AbBc => "ab-bc",
            Scheme::AbCd => "ab-cd",
        }
    }
}

/// Closed polygon built from one data vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicPolygon {
    pub vertices: Vec<Point2>,
    pub scheme: Scheme,
    pub source_dimension: usize,
}

impl CyclicPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Applies `p ↦ anchor + (p - origin) · factor` to every vertex.
    pub fn similarity(&self, origin: Point2, factor: f64, anchor: Point2) -> CyclicPolygon {
        CyclicPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|&p| anchor + (p - origin) * factor)
                .collect(),
            scheme: self.scheme,
            source_dimension: self.source_dimension,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transform {
    Linear,
    Log10,
}

/// Axis transform plus data-domain bounds, shared by both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleSpec {
    pub transform: Transform,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl ScaleSpec {
    pub fn new(
        transform: Transform,
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    ) -> Result<Self> {
        let s = Self {
            transform,
            x_min,
            x_max,
            y_min,
            y_max,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.x_min, self.x_max, self.y_min, self.y_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidScale("bounds must be finite".into()));
        }
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(Error::InvalidScale("bounds must satisfy min < max".into()));
        }
        if self.transform == Transform::Log10 && (self.x_min <= 0.0 || self.y_min <= 0.0) {
            return Err(Error::InvalidScale("log10 bounds must be positive".into()));
        }
        Ok(())
    }

    /// Fits bounds around `points` with 5% padding (multiplicative under
    /// log10). Degenerate extents are widened to a unit span.
    pub fn fit<'a>(
        transform: Transform,
        points: impl IntoIterator<Item = &'a Point2>,
    ) -> Result<Self> {
        let mut x = (f64::INFINITY, f64::NEG_INFINITY);
        let mut y = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x = (x.0.min(p.x), x.1.max(p.x));
            y = (y.0.min(p.y), y.1.max(p.y));
        }
        if !x.0.is_finite() {
            return Err(Error::EmptyDataset);
        }
        let (x_min, x_max) = pad(transform, x)?;
        let (y_min, y_max) = pad(transform, y)?;
        ScaleSpec::new(transform, x_min, x_max, y_min, y_max)
    }
}

fn pad(transform: Transform, (lo, hi): (f64, f64)) -> Result<(f64, f64)> {
    match transform {
        Transform::Linear => {
            let span = hi - lo;
            if span > 0.0 {
                Ok((lo - 0.05 * span, hi + 0.05 * span))
            } else {
                Ok((lo - 0.5, hi + 0.5))
            }
        }
        Transform::Log10 => {
            if lo <= 0.0 {
                return Err(Error::InvalidScale("log10 requires positive data".into()));
            }
            let (a, b) = (lo.log10(), hi.log10());
            let span = b - a;
            let (a, b) = if span > 0.0 {
                (a - 0.05 * span, b + 0.05 * span)
            } else {
                (a - 0.5, b + 0.5)
            };
            Ok((10f64.powf(a), 10f64.powf(b)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    Intrinsic,
    Geometric,
    Angular,
    Statistical,
}

impl StrategyKind {
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Intrinsic => "intrinsic",
            StrategyKind::Geometric => "geometric",
            StrategyKind::Angular => "angular",
            StrategyKind::Statistical => "statistical",
        }
    }

    /// Axis titles describing what the placement coordinates mean.
    pub fn axis_titles(self) -> (&'static str, &'static str) {
        match self {
            StrategyKind::Intrinsic => ("centroid x", "centroid y"),
            StrategyKind::Geometric => ("|area|", "circumference"),
            StrategyKind::Angular => ("ccw turning (rad)", "cw turning (rad)"),
            StrategyKind::Statistical => ("mean", "std dev"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlyphEntry {
    pub centroid: Point2,
    pub polygon: CyclicPolygon,
}

/// Per-value glyphs produced by a placement strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlyphLayout {
    pub entries: Vec<GlyphEntry>,
    pub strategy: StrategyKind,
    pub scheme: Scheme,
    pub scale_factor: f64,
}

impl GlyphLayout {
    pub fn centroids(&self) -> Vec<Point2> {
        self.entries.iter().map(|e| e.centroid).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(n: usize, count: usize) -> Vec<Vec<f64>> {
        (0..count)
            .map(|r| (0..n).map(|c| (r * n + c) as f64).collect())
            .collect()
    }

    #[test]
    fn valid_dataset_passes_unchanged() {
        let ds = Dataset::from_rows(rows(4, 3), None, None).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.dimension(), 4);
        let again = validate_dataset(ds.clone()).unwrap();
        assert_eq!(again, ds);
    }

    #[test]
    fn mixed_dimensions_report_row() {
        let err = Dataset::from_rows(vec![vec![1.0; 4], vec![1.0; 5]], None, None).unwrap_err();
        assert!(
            err.to_string().starts_with("dimension mismatch at row 1"),
            "{err}"
        );
    }

    #[test]
    fn nan_reports_row_and_column() {
        let err = Dataset::from_rows(vec![vec![1.0; 3], vec![1.0, f64::NAN, 2.0]], None, None)
            .unwrap_err();
        assert!(
            matches!(err, Error::NonFinite { row: 1, column: 1 }),
            "{err}"
        );
    }

    #[test]
    fn label_length_mismatch() {
        let err = Dataset::from_rows(rows(2, 3), Some(vec!["a".into()]), None).unwrap_err();
        assert!(matches!(
            err,
            Error::LabelLengthMismatch {
                labels: 1,
                vectors: 3
            }
        ));
    }

    #[test]
    fn one_dimensional_rows_are_rejected() {
        assert!(DataVector::new(vec![1.0]).is_err());
        assert!(DataVector::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn scale_spec_invariants() {
        assert!(ScaleSpec::new(Transform::Linear, 0.0, 1.0, 0.0, 1.0).is_ok());
        assert!(ScaleSpec::new(Transform::Linear, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ScaleSpec::new(Transform::Log10, 0.0, 1.0, 0.1, 1.0).is_err());
        let s = ScaleSpec::fit(
            Transform::Log10,
            &[Point2::new(1.0, 10.0), Point2::new(100.0, 10.0)],
        )
        .unwrap();
        assert!(s.x_min < 1.0 && s.x_max > 100.0 && s.y_min > 0.0);
    }

    #[test]
    fn minmax_maps_to_unit_range() {
        let ds = Dataset::from_rows(vec![vec![1.0, 5.0], vec![3.0, 5.0]], None, None).unwrap();
        let m = ds.minmax_normalized();
        assert_eq!(m.vectors[0].components(), &[0.0, 0.0]);
        assert_eq!(m.vectors[1].components(), &[1.0, 0.0]);
    }

    #[test]
    #[allow(clippy::manual_div_ceil)]
    fn vertex_count_law() {
        for n in 2..=64 {
            assert_eq!(Scheme::AbBc.vertex_count(n), n);
            assert_eq!(Scheme::AbCd.vertex_count(n), (n + 1) / 2);
        }
    }
}
