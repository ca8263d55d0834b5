//! Generators for the outlier-detection, value-retrieval and
//! value-comparison task datasets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Dataset;

pub const MAX_MEMBERS: usize = 10;
const OD_NOISE_MAX: f64 = 0.8;
const SCALE_RANGE: (f64, f64) = (1.0, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StudyKind {
    /// Noise in [0, 0.8) plus one value in [0.8, 1].
    OutlierDetection,
    /// Noise in [0, 1) plus one given value.
    ValueRetrieval,
    /// Noise in [0, 1) plus two given values.
    ValueComparison,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyDatasetSpec {
    pub kind: StudyKind,
    pub n: usize,
    pub members: usize,
    pub inserted_values: Vec<f64>,
    pub per_dimension_scaling: bool,
    pub seed: u64,
}

impl StudyDatasetSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "dimension must be at least 2, got {}",
                self.n
            )));
        }
        if !(1..=MAX_MEMBERS).contains(&self.members) {
            return Err(Error::InvalidConfig(format!(
                "member count must be in 1..={MAX_MEMBERS}, got {}",
                self.members
            )));
        }
        let allowed: &[usize] = match self.kind {
            StudyKind::OutlierDetection => &[0, 1],
            StudyKind::ValueRetrieval => &[1],
            StudyKind::ValueComparison => &[2],
        };
        if !allowed.contains(&self.inserted_values.len()) {
            return Err(Error::InvalidConfig(format!(
                "{:?} takes {allowed:?} inserted values, got {}",
                self.kind,
                self.inserted_values.len()
            )));
        }
        if self.inserted_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(
                "inserted values must be finite".into(),
            ));
        }
        if self.kind == StudyKind::OutlierDetection && self.per_dimension_scaling {
            return Err(Error::InvalidConfig(
                "per-dimension scaling applies to value retrieval and comparison only".into(),
            ));
        }
        if self.members * self.n < self.inserted_values.len().max(1) {
            return Err(Error::InvalidConfig(
                "not enough cells for the insertions".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Insertion {
    pub member: usize,
    pub component: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyMetadata {
    pub spec: StudyDatasetSpec,
    pub insertions: Vec<Insertion>,
    pub scaling_factors: Option<Vec<f64>>,
}

/// Builds one task dataset. Scaling factors, drawn once per dimension from
/// [1, 10), multiply the noise; inserted values are written verbatim after
/// scaling so they stay exactly retrievable.
pub fn gen_study_dataset(spec: &StudyDatasetSpec) -> Result<(Dataset, StudyMetadata)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise_max = match spec.kind {
        StudyKind::OutlierDetection => OD_NOISE_MAX,
        _ => 1.0,
    };
    let mut rows: Vec<Vec<f64>> = (0..spec.members)
        .map(|_| (0..spec.n).map(|_| rng.gen_range(0.0..noise_max)).collect())
        .collect();

    let scaling_factors = spec.per_dimension_scaling.then(|| {
        (0..spec.n)
            .map(|_| rng.gen_range(SCALE_RANGE.0..SCALE_RANGE.1))
            .collect::<Vec<f64>>()
    });
    if let Some(f) = &scaling_factors {
        for row in &mut rows {
            for (v, s) in row.iter_mut().zip(f) {
                *v *= s;
            }
        }
    }

    let values: Vec<f64> = match spec.kind {
        StudyKind::OutlierDetection if spec.inserted_values.is_empty() => {
            vec![rng.gen_range(OD_NOISE_MAX..=1.0)]
        }
        _ => spec.inserted_values.clone(),
    };
    let cells = sample(&mut rng, spec.members * spec.n, values.len());
    let insertions: Vec<Insertion> = cells
        .iter()
        .zip(&values)
        .map(|(cell, &value)| Insertion {
            member: cell / spec.n,
            component: cell % spec.n,
            value,
        })
        .collect();
    for ins in &insertions {
        rows[ins.member][ins.component] = ins.value;
    }

    let ds = Dataset::from_rows(rows, None, None)?;
    Ok((
        ds,
        StudyMetadata {
            spec: spec.clone(),
            insertions,
            scaling_factors,
        },
    ))
}
