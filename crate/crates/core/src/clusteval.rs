//! Scores a 2D embedding against ground-truth classes with k-means, the
//! Jaccard index and the silhouette coefficient.

use std::collections::HashMap;
use std::hash::Hash;
use std::path::Path;

use pathfinding::prelude::{kuhn_munkres, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{GlyphLayout, Point2, Scheme, StrategyKind};
use crate::placement::normalize_coordinates;

pub const DEFAULT_RESTARTS: usize = 10;
pub const DEFAULT_SEED: u64 = 42;
pub const MAX_ITERATIONS: usize = 300;

fn sq_dist(a: Point2, b: Point2) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansRun {
    pub labels: Vec<usize>,
    pub centroids: Vec<Point2>,
    pub wcss: f64,
    /// WCSS after every update step, in order.
    pub wcss_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansResult {
    pub best: KMeansRun,
    pub restart_index: usize,
    /// Clusters of the best run that ended up with no member.
    pub empty_clusters: usize,
}

impl KMeansResult {
    pub fn labels(&self) -> &[usize] {
        &self.best.labels
    }
}

/// Within-cluster sum of squares of an assignment against given centroids.
pub fn wcss(points: &[Point2], labels: &[usize], centroids: &[Point2]) -> f64 {
    points
        .iter()
        .zip(labels)
        .map(|(&p, &l)| sq_dist(p, centroids[l]))
        .sum()
}

fn nearest(p: Point2, centroids: &[Point2]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, &c) in centroids.iter().enumerate() {
        let d = sq_dist(p, c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

fn kmeans_pp_init(points: &[Point2], k: usize, rng: &mut ChaCha8Rng) -> Vec<Point2> {
    let mut centroids = Vec::with_capacity(k);
    centroids.push(points[rng.gen_range(0..points.len())]);
    let mut d2: Vec<f64> = points.iter().map(|&p| sq_dist(p, centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = points.len() - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    chosen = i;
                    break;
                }
                target -= w;
            }
            chosen
        } else {
            rng.gen_range(0..points.len())
        };
        let c = points[idx];
        centroids.push(c);
        for (d, &p) in d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, c));
        }
    }
    centroids
}

/// One Lloyd run from the given initial centroids. Empty clusters keep
/// their previous centroid.
pub fn lloyd(points: &[Point2], initial: Vec<Point2>, max_iterations: usize) -> KMeansRun {
    let k = initial.len();
    let mut centroids = initial;
    let mut labels: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
    let mut history: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        let mut sums = vec![(0.0, 0.0, 0usize); k];
        for (&p, &l) in points.iter().zip(&labels) {
            sums[l].0 += p.x;
            sums[l].1 += p.y;
            sums[l].2 += 1;
        }
        for (c, &(sx, sy, n)) in centroids.iter_mut().zip(&sums) {
            if n > 0 {
                *c = Point2::new(sx / n as f64, sy / n as f64);
            }
        }
        let current = wcss(points, &labels, &centroids);
        if let Some(&prev) = history.last() {
            debug_assert!(
                current <= prev + 1e-9 * prev.abs().max(1.0),
                "WCSS increased: {prev} -> {current}"
            );
        }
        history.push(current);
        let next: Vec<usize> = points.iter().map(|&p| nearest(p, &centroids)).collect();
        if next == labels {
            converged = true;
            break;
        }
        labels = next;
    }
    let wcss = wcss(points, &labels, &centroids);
    KMeansRun {
        labels,
        centroids,
        wcss,
        wcss_history: history,
        iterations,
        converged,
    }
}

/// Lloyd's algorithm with k-means++ seeding, keeping the restart with the
/// lowest WCSS (ties go to the lower restart index). Restart `r` draws from
/// ChaCha8 stream `r` of `seed`, so the result does not depend on thread
/// scheduling.
pub fn kmeans(points: &[Point2], k: usize, restarts: usize, seed: u64) -> Result<KMeansResult> {
    if k == 0 {
        return Err(Error::ZeroClusters);
    }
    if k > points.len() {
        return Err(Error::TooManyClusters {
            k,
            points: points.len(),
        });
    }
    let runs: Vec<KMeansRun> = (0..restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let init = kmeans_pp_init(points, k, &mut rng);
            lloyd(points, init, MAX_ITERATIONS)
        })
        .collect();
    let (restart_index, best) = runs
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.wcss.total_cmp(&b.wcss).then(ia.cmp(ib)))
        .expect("at least one restart");
    let mut used = vec![false; k];
    for &l in &best.labels {
        used[l] = true;
    }
    let empty_clusters = used.iter().filter(|u| !**u).count();
    Ok(KMeansResult {
        best,
        restart_index,
        empty_clusters,
    })
}

fn dense_ids<T: Hash + Eq>(labels: &[T]) -> (Vec<usize>, usize) {
    let mut map: HashMap<&T, usize> = HashMap::new();
    let ids = labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect();
    (ids, map.len())
}

fn contingency<A: Hash + Eq, B: Hash + Eq>(a: &[A], b: &[B]) -> Result<Vec<Vec<u64>>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (ia, ka) = dense_ids(a);
    let (ib, kb) = dense_ids(b);
    let mut table = vec![vec![0u64; kb]; ka];
    for (&x, &y) in ia.iter().zip(&ib) {
        table[x][y] += 1;
    }
    Ok(table)
}

fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Pair-counting Jaccard index n11 / (n11 + n10 + n01) over all unordered
/// item pairs. Two partitions without any co-clustered pair are identical
/// (all singletons) and score 1.
pub fn jaccard_index<A: Hash + Eq, B: Hash + Eq>(a: &[A], b: &[B]) -> Result<f64> {
    let table = contingency(a, b)?;
    let n11: u64 = table.iter().flatten().map(|&c| pairs(c)).sum();
    let pairs_a: u64 = table.iter().map(|row| pairs(row.iter().sum())).sum();
    let kb = table.first().map_or(0, Vec::len);
    let pairs_b: u64 = (0..kb)
        .map(|j| pairs(table.iter().map(|row| row[j]).sum()))
        .sum();
    let denom = pairs_a + pairs_b - n11;
    if denom == 0 {
        return Ok(1.0);
    }
    Ok(n11 as f64 / denom as f64)
}

/// Fraction of items that agree under the best one-to-one matching of the
/// labels of `a` onto the labels of `b`.
pub fn jaccard_matched<A: Hash + Eq, B: Hash + Eq>(a: &[A], b: &[B]) -> Result<f64> {
    let table = contingency(a, b)?;
    if a.is_empty() {
        return Ok(1.0);
    }
    let rows = table.len();
    let cols = table[0].len();
    // kuhn_munkres needs rows ≤ columns.
    let weights = if rows <= cols {
        Matrix::from_fn(rows, cols, |(i, j)| table[i][j] as i64)
    } else {
        Matrix::from_fn(cols, rows, |(i, j)| table[j][i] as i64)
    };
    let (matched, _) = kuhn_munkres(&weights);
    Ok(matched as f64 / a.len() as f64)
}

/// Per-point silhouette values. Members of singleton clusters score 0.
pub fn silhouette_samples<L: Hash + Eq>(points: &[Point2], labels: &[L]) -> Result<Vec<f64>> {
    if points.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: points.len(),
            right: labels.len(),
        });
    }
    let (ids, k) = dense_ids(labels);
    if k < 2 {
        return Err(Error::SilhouetteUndefined { clusters: k });
    }
    let mut sizes = vec![0usize; k];
    for &c in &ids {
        sizes[c] += 1;
    }
    let scores = points
        .par_iter()
        .zip(&ids)
        .map(|(&p, &own)| {
            if sizes[own] == 1 {
                return 0.0;
            }
            let mut sums = vec![0.0; k];
            for (&q, &c) in points.iter().zip(&ids) {
                sums[c] += p.distance(q);
            }
            let a = sums[own] / (sizes[own] - 1) as f64;
            let b = (0..k)
                .filter(|&c| c != own)
                .map(|c| sums[c] / sizes[c] as f64)
                .fold(f64::INFINITY, f64::min);
            let m = a.max(b);
            if m > 0.0 {
                (b - a) / m
            } else {
                0.0
            }
        })
        .collect();
    Ok(scores)
}

/// Mean silhouette coefficient with Euclidean distances.
pub fn silhouette<L: Hash + Eq>(points: &[Point2], labels: &[L]) -> Result<f64> {
    let s = silhouette_samples(points, labels)?;
    Ok(s.iter().sum::<f64>() / s.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClusterSource {
    KMeans,
    /// Skips clustering and uses the truth labels as the assignment.
    TruthLabels,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Min-max rescale both embedding axes before clustering and scoring.
    pub normalize_coordinates: bool,
    pub source: ClusterSource,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            restarts: DEFAULT_RESTARTS,
            seed: DEFAULT_SEED,
            normalize_coordinates: false,
            source: ClusterSource::KMeans,
        }
    }
}

/// Outcome of scoring one embedding.
///
/// `jaccard_matched` is the best-label-matching agreement and is the θ
/// reported alongside published clustering tables; `jaccard_pairs` is the
/// pair-counting index. `silhouette` uses the true classes,
/// `silhouette_kmeans` the k-means assignment (absent when k-means found a
/// single cluster).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterEvalReport {
    pub jaccard_pairs: f64,
    pub jaccard_matched: f64,
    pub silhouette: f64,
    pub silhouette_kmeans: Option<f64>,
    pub kmeans_labels: Vec<usize>,
    pub k: usize,
    pub restarts: usize,
    pub seed: u64,
    pub wcss: f64,
    pub empty_clusters: usize,
    pub normalized_coordinates: bool,
    pub source: ClusterSource,
    pub strategy: Option<StrategyKind>,
    pub scheme: Option<Scheme>,
}

impl ClusterEvalReport {
    /// θ as reported in the clustering table.
    pub fn theta(&self) -> f64 {
        self.jaccard_matched
    }

    /// τ as reported in the clustering table.
    pub fn tau(&self) -> f64 {
        self.silhouette
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let strategy = self.strategy.map_or("embedding", StrategyKind::name);
        let scheme = self.scheme.map_or("-", Scheme::name);
        out.push_str(&format!("placement        {strategy} ({scheme})\n"));
        out.push_str(&format!(
            "k / restarts     {} / {}\n",
            self.k, self.restarts
        ));
        out.push_str(&format!("seed             {}\n", self.seed));
        out.push_str(&format!(
            "normalized       {}\n",
            self.normalized_coordinates
        ));
        out.push_str(&format!("theta (matched)  {:.3}\n", self.jaccard_matched));
        out.push_str(&format!("theta (pairs)    {:.3}\n", self.jaccard_pairs));
        out.push_str(&format!("tau (truth)      {:.3}\n", self.silhouette));
        match self.silhouette_kmeans {
            Some(t) => out.push_str(&format!("tau (k-means)    {t:.3}\n")),
            None => out.push_str("tau (k-means)    undefined\n"),
        }
        out.push_str(&format!("wcss             {:.6}\n", self.wcss));
        out.push_str(&format!("empty clusters   {}\n", self.empty_clusters));
        out
    }
}

/// Scores an arbitrary embedding against `truth`, with k = number of
/// distinct true labels.
pub fn evaluate_embedding(
    points: &[Point2],
    truth: &[String],
    config: &EvalConfig,
) -> Result<ClusterEvalReport> {
    if points.len() != truth.len() {
        return Err(Error::LengthMismatch {
            left: points.len(),
            right: truth.len(),
        });
    }
    let points = if config.normalize_coordinates {
        normalize_coordinates(points)
    } else {
        points.to_vec()
    };
    let (truth_ids, k) = dense_ids(truth);
    let (labels, wcss_value, empty) = match config.source {
        ClusterSource::KMeans => {
            let r = kmeans(&points, k, config.restarts, config.seed)?;
            (r.best.labels.clone(), r.best.wcss, r.empty_clusters)
        }
        ClusterSource::TruthLabels => {
            let mut centroids = vec![(0.0, 0.0, 0usize); k];
            for (&p, &l) in points.iter().zip(&truth_ids) {
                centroids[l].0 += p.x;
                centroids[l].1 += p.y;
                centroids[l].2 += 1;
            }
            let c: Vec<Point2> = centroids
                .iter()
                .map(|&(x, y, n)| Point2::new(x / n as f64, y / n as f64))
                .collect();
            let w = wcss(&points, &truth_ids, &c);
            (truth_ids.clone(), w, 0)
        }
    };
    let silhouette_kmeans = match silhouette(&points, &labels) {
        Ok(s) => Some(s),
        Err(Error::SilhouetteUndefined { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ClusterEvalReport {
        jaccard_pairs: jaccard_index(&labels, truth)?,
        jaccard_matched: jaccard_matched(&labels, truth)?,
        silhouette: silhouette(&points, truth)?,
        silhouette_kmeans,
        kmeans_labels: labels,
        k,
        restarts: config.restarts,
        seed: config.seed,
        wcss: wcss_value,
        empty_clusters: empty,
        normalized_coordinates: config.normalize_coordinates,
        source: config.source,
        strategy: None,
        scheme: None,
    })
}

/// Scores the glyph centroids of a layout against the true classes.
pub fn evaluate_placement(
    layout: &GlyphLayout,
    truth: Option<&[String]>,
    config: &EvalConfig,
) -> Result<ClusterEvalReport> {
    let truth = truth.ok_or(Error::Unlabeled)?;
    let mut report = evaluate_embedding(&layout.centroids(), truth, config)?;
    report.strategy = Some(layout.strategy);
    report.scheme = Some(layout.scheme);
    Ok(report)
}

/// Reads an `x,y` CSV aligned with dataset order. A first line that does
/// not parse as numbers is a header; if it names `x` and `y` columns those
/// are used and other columns are ignored, otherwise rows must have
/// exactly two cells. Errors name the 1-based file line.
pub fn load_external_embedding(
    path: impl AsRef<Path>,
    expected_rows: usize,
) -> Result<Vec<Point2>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_embedding(&text, expected_rows, &path.display().to_string())
}

pub fn parse_embedding(text: &str, expected_rows: usize, origin: &str) -> Result<Vec<Point2>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let csv_error = |line: usize, message: String| Error::Csv {
        path: origin.to_string(),
        row: line,
        message,
    };
    let mut points = Vec::new();
    let mut columns: Option<(usize, usize)> = None;
    let mut seen_first = false;
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| csv_error(line, e.to_string()))?;
        let cells: Vec<&str> = record.iter().collect();
        if cells.iter().all(|c| c.is_empty()) {
            continue;
        }
        if !seen_first {
            seen_first = true;
            if cells.iter().any(|c| c.parse::<f64>().is_err()) {
                let x = cells.iter().position(|c| *c == "x");
                let y = cells.iter().position(|c| *c == "y");
                columns = x.zip(y);
                continue;
            }
        }
        let (xi, yi) = match columns {
            Some(c) => c,
            None if cells.len() == 2 => (0, 1),
            None => {
                return Err(csv_error(
                    line,
                    format!("expected 2 columns, found {}", cells.len()),
                ))
            }
        };
        let cell = |j: usize| {
            cells
                .get(j)
                .and_then(|c| c.parse::<f64>().ok())
                .filter(|v| v.is_finite())
        };
        match (cell(xi), cell(yi)) {
            (Some(x), Some(y)) => points.push(Point2::new(x, y)),
            _ => {
                return Err(csv_error(
                    line,
                    format!("non-numeric coordinate in '{}'", cells.join(",")),
                ))
            }
        }
    }
    if points.len() != expected_rows {
        return Err(Error::RowCount {
            found: points.len(),
            expected: expected_rows,
        });
    }
    Ok(points)
}
