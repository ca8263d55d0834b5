//! Elliptical billiard trajectories recorded in phase space.
//!
//! A point mass moves in straight lines inside x²/A² + y²/B² = 1 and
//! reflects specularly off the boundary. Each reflection contributes the
//! normalized arclength position s ∈ [0, 1) (measured counter-clockwise
//! from (A, 0)) and the angle α ∈ (0, π) between the outgoing direction
//! and the counter-clockwise tangent.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::model::{Dataset, Point2};

const ARCLENGTH_TOL: f64 = 1e-14;
/// Minimum travel along the ray before the next hit counts.
const MIN_STEP: f64 = 1e-9;
/// Chords closer than this to the tangent are treated as grazing.
const GRAZING: f64 = 1e-9;
const RESEED_DEG: f64 = 0.001;
const MAX_RESEEDS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub a: f64,
    pub b: f64,
    perimeter: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "ellipse semi-axes must be positive, got A={a}, B={b}"
            )));
        }
        let mut e = Self {
            a,
            b,
            perimeter: 0.0,
        };
        e.perimeter = e.arclength(TAU);
        Ok(e)
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn point(&self, t: f64) -> Point2 {
        Point2::new(self.a * t.cos(), self.b * t.sin())
    }

    /// Parametric angle of a boundary point, in [0, 2π).
    pub fn param(&self, p: Point2) -> f64 {
        (p.y / self.b).atan2(p.x / self.a).rem_euclid(TAU)
    }

    /// Unit tangent in the counter-clockwise direction.
    pub fn tangent(&self, t: f64) -> Point2 {
        let v = Point2::new(-self.a * t.sin(), self.b * t.cos());
        v * (1.0 / v.x.hypot(v.y))
    }

    pub fn inward_normal(&self, t: f64) -> Point2 {
        let tan = self.tangent(t);
        Point2::new(-tan.y, tan.x)
    }

    /// Arclength from parameter 0 to `t` (counter-clockwise).
    pub fn arclength(&self, t: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        integrate(|u| (a * u.sin()).hypot(b * u.cos()), 0.0, t, ARCLENGTH_TOL)
    }

    /// x²/A² + y²/B² − 1.
    pub fn residual(&self, p: Point2) -> f64 {
        (p.x / self.a).powi(2) + (p.y / self.b).powi(2) - 1.0
    }

    /// Distance along `dir` from boundary point `p` to the far boundary hit.
    fn chord_length(&self, p: Point2, dir: Point2) -> Option<f64> {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let qa = dir.x * dir.x / a2 + dir.y * dir.y / b2;
        let qb = 2.0 * (p.x * dir.x / a2 + p.y * dir.y / b2);
        let qc = self.residual(p);
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return None;
        }
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        let r1 = q / qa;
        let r2 = if q != 0.0 { qc / q } else { r1 };
        let s = r1.max(r2);
        (s > MIN_STEP).then_some(s)
    }
}

/// One reflection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounce {
    pub point: Point2,
    pub param: f64,
    /// Unit direction arriving at the wall.
    pub incoming: Point2,
    /// Unit direction leaving the wall.
    pub outgoing: Point2,
    /// Normalized arclength position in [0, 1).
    pub arclength: f64,
    /// Angle between `outgoing` and the counter-clockwise tangent.
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub start_param_deg: f64,
    pub start_heading_deg: f64,
    pub bounces: Vec<Bounce>,
}

impl Trajectory {
    /// Interleaved (s₁, α₁, s₂, α₂, …).
    pub fn phase_space(&self) -> Vec<f64> {
        self.bounces
            .iter()
            .flat_map(|b| [b.arclength, b.angle])
            .collect()
    }
}

#[derive(Debug)]
enum SimFailure {
    Grazing,
    Outward,
}

/// Simulates `reflections` bounces starting on the boundary at parametric
/// angle `param_deg` with absolute heading `heading_deg`.
pub fn simulate(
    ellipse: &Ellipse,
    param_deg: f64,
    heading_deg: f64,
    reflections: usize,
) -> Result<Trajectory> {
    try_simulate(ellipse, param_deg, heading_deg, reflections).map_err(|e| {
        Error::InvalidConfig(format!(
            "trajectory from {param_deg}° heading {heading_deg}° is {}",
            match e {
                SimFailure::Grazing => "tangent to the boundary",
                SimFailure::Outward => "pointing out of the table",
            }
        ))
    })
}

fn try_simulate(
    ellipse: &Ellipse,
    param_deg: f64,
    heading_deg: f64,
    reflections: usize,
) -> std::result::Result<Trajectory, SimFailure> {
    let t0 = param_deg.to_radians();
    let h = heading_deg.to_radians();
    let mut p = ellipse.point(t0);
    let mut dir = Point2::new(h.cos(), h.sin());
    let into = dot(dir, ellipse.inward_normal(t0));
    if into < -GRAZING {
        return Err(SimFailure::Outward);
    }
    if into <= GRAZING {
        return Err(SimFailure::Grazing);
    }
    let mut bounces = Vec::with_capacity(reflections);
    for _ in 0..reflections {
        let s = ellipse.chord_length(p, dir).ok_or(SimFailure::Grazing)?;
        let t = ellipse.param(p + dir * s);
        p = ellipse.point(t);
        let normal = ellipse.inward_normal(t);
        let tangent = ellipse.tangent(t);
        let out = dir - normal * (2.0 * dot(dir, normal));
        let out = out * (1.0 / out.x.hypot(out.y));
        let sin_part = dot(out, normal);
        if sin_part <= GRAZING {
            return Err(SimFailure::Grazing);
        }
        let mut arc = ellipse.arclength(t) / ellipse.perimeter();
        if arc >= 1.0 {
            arc -= 1.0;
        }
        bounces.push(Bounce {
            point: p,
            param: t,
            incoming: dir,
            outgoing: out,
            arclength: arc,
            angle: sin_part.atan2(dot(out, tangent)),
        });
        dir = out;
    }
    Ok(Trajectory {
        start_param_deg: param_deg,
        start_heading_deg: heading_deg,
        bounces,
    })
}

fn dot(a: Point2, b: Point2) -> f64 {
    a.x * b.x + a.y * b.y
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilliardConfig {
    /// Semi-axis A per cluster.
    pub a_values: Vec<f64>,
    pub b: f64,
    pub trajectories_per_cluster: usize,
    pub reflections: usize,
    /// Angular step between consecutive trajectory seeds, degrees.
    pub seed_step: f64,
    /// Initial boundary parameter, degrees.
    pub base_position: f64,
    /// Initial absolute heading, degrees.
    pub base_heading: f64,
}

impl Default for BilliardConfig {
    fn default() -> Self {
        Self {
            a_values: vec![1.0, 1.1, 1.2],
            b: 1.0,
            trajectories_per_cluster: 20,
            reflections: 50,
            seed_step: 3.0,
            base_position: 10.0,
            base_heading: 145.0,
        }
    }
}

impl BilliardConfig {
    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if self.a_values.is_empty() || self.a_values.iter().any(|&a| !(a > 0.0)) || !(self.b > 0.0)
        {
            return Err(Error::InvalidConfig("semi-axes must be positive".into()));
        }
        if self.reflections < 1 {
            return Err(Error::InvalidConfig(
                "reflections must be at least 1".into(),
            ));
        }
        if !(self.seed_step > 0.0) {
            return Err(Error::InvalidConfig("seed step must be positive".into()));
        }
        if self.trajectories_per_cluster < 1 {
            return Err(Error::InvalidConfig(
                "need at least one trajectory per cluster".into(),
            ));
        }
        Ok(())
    }
}

/// A trajectory whose seed had to be nudged off a grazing configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedAdjustment {
    pub cluster: usize,
    pub trajectory: usize,
    pub reseeds: usize,
    pub position_deg: f64,
    pub heading_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BilliardMetadata {
    pub config: BilliardConfig,
    pub adjustments: Vec<SeedAdjustment>,
    pub max_boundary_residual: f64,
}

#[derive(Debug, Clone)]
pub struct BilliardRun {
    pub dataset: Dataset,
    pub trajectories: Vec<Trajectory>,
    pub metadata: BilliardMetadata,
}

/// Simulates every trajectory of every cluster. Trajectory i of a cluster
/// starts at base_position + i·seed_step with heading
/// base_heading + i·seed_step; labels are cluster indices.
pub fn gen_billiard(cfg: &BilliardConfig) -> Result<BilliardRun> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize, f64)> = cfg
        .a_values
        .iter()
        .enumerate()
        .flat_map(|(c, &a)| (0..cfg.trajectories_per_cluster).map(move |i| (c, i, a)))
        .collect();
    let ellipses = cfg
        .a_values
        .iter()
        .map(|&a| Ellipse::new(a, cfg.b))
        .collect::<Result<Vec<_>>>()?;

    use rayon::prelude::*;
    let results: Vec<Result<(Trajectory, Option<SeedAdjustment>)>> = jobs
        .par_iter()
        .map(|&(c, i, _)| {
            let step = i as f64 * cfg.seed_step;
            let (pos, head) = (cfg.base_position + step, cfg.base_heading + step);
            for attempt in 0..=MAX_RESEEDS {
                let nudge = attempt as f64 * RESEED_DEG;
                match try_simulate(&ellipses[c], pos + nudge, head + nudge, cfg.reflections) {
                    Ok(t) => {
                        let adj = (attempt > 0).then_some(SeedAdjustment {
                            cluster: c,
                            trajectory: i,
                            reseeds: attempt,
                            position_deg: pos + nudge,
                            heading_deg: head + nudge,
                        });
                        return Ok((t, adj));
                    }
                    Err(SimFailure::Outward) => {
                        return Err(Error::InvalidConfig(format!(
                            "cluster {c} trajectory {i}: heading {head}° at {pos}° points out of the table"
                        )))
                    }
                    Err(SimFailure::Grazing) => continue,
                }
            }
            Err(Error::InvalidConfig(format!(
                "cluster {c} trajectory {i}: still grazing after {MAX_RESEEDS} reseeds"
            )))
        })
        .collect();

    let mut trajectories = Vec::with_capacity(jobs.len());
    let mut adjustments = Vec::new();
    for r in results {
        let (t, adj) = r?;
        trajectories.push(t);
        adjustments.extend(adj);
    }
    let ellipses = &ellipses;
    let max_boundary_residual = trajectories
        .iter()
        .zip(&jobs)
        .flat_map(|(t, &(c, _, _))| {
            t.bounces
                .iter()
                .map(move |b| ellipses[c].residual(b.point).abs())
        })
        .fold(0.0, f64::max);
    let rows = trajectories.iter().map(Trajectory::phase_space).collect();
    let labels = jobs.iter().map(|&(c, _, _)| c.to_string()).collect();
    let dataset = Dataset::from_rows(rows, Some(labels), None)?;
    Ok(BilliardRun {
        dataset,
        trajectories,
        metadata: BilliardMetadata {
            config: cfg.clone(),
            adjustments,
            max_boundary_residual,
        },
    })
}
