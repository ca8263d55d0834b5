//! Independent reference implementations used as test oracles. They are
//! deliberately naive: direct enumeration instead of the library's
//! contingency tables, grouped sums or iterative optimization.

#![allow(dead_code)]

use std::path::PathBuf;

use cyclopoly::datagen::load_csv;
use cyclopoly::{Dataset, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn iris() -> Dataset {
    load_csv(data_path("iris.csv"), None).expect("bundled iris")
}

pub fn wine() -> Dataset {
    load_csv(data_path("wine.csv"), None).expect("bundled wine")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Winding number of a closed polygon around `q` (crossing-number form with
/// orientation signs).
pub fn winding_number(poly: &[Point2], q: Point2) -> i64 {
    let k = poly.len();
    let mut w = 0;
    for j in 0..k {
        let a = poly[j];
        let b = poly[(j + 1) % k];
        let side = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
        if a.y <= q.y {
            if b.y > q.y && side > 0.0 {
                w += 1;
            }
        } else if b.y <= q.y && side < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Monte Carlo estimate of ∫ winding number over the plane, which equals
/// the signed area of the polygon, with its standard error.
pub fn monte_carlo_signed_area(
    poly: &[Point2],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> (f64, f64) {
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in poly {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let (mut sum, mut sum_sq) = (0i64, 0i64);
    for _ in 0..samples {
        let q = Point2::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1));
        let w = winding_number(poly, q);
        sum += w;
        sum_sq += w * w;
    }
    let n = samples as f64;
    let mean = sum as f64 / n;
    let var = (sum_sq as f64 / n - mean * mean).max(0.0);
    let box_area = (x1 - x0) * (y1 - y0);
    (mean * box_area, (var / n).sqrt() * box_area)
}

/// Silhouette by looping over every point pair per candidate cluster.
pub fn brute_silhouette(points: &[Point2], labels: &[usize]) -> f64 {
    let n = points.len();
    let mut distinct: Vec<usize> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut total = 0.0;
    for i in 0..n {
        let own = labels[i];
        let size = labels.iter().filter(|&&l| l == own).count();
        if size == 1 {
            total += 0.0;
            continue;
        }
        let mean_to = |c: usize| {
            let mut sum = 0.0;
            let mut count = 0usize;
            for j in 0..n {
                if labels[j] == c {
                    sum += (points[i].x - points[j].x).hypot(points[i].y - points[j].y);
                    count += 1;
                }
            }
            (sum, count)
        };
        let (sa, ca) = mean_to(own);
        let a = sa / (ca - 1) as f64;
        let mut b = f64::INFINITY;
        for &c in &distinct {
            if c != own {
                let (s, cnt) = mean_to(c);
                b = b.min(s / cnt as f64);
            }
        }
        let m = a.max(b);
        total += if m > 0.0 { (b - a) / m } else { 0.0 };
    }
    total / n as f64
}

/// Pair-counting Jaccard index by enumerating every unordered pair.
pub fn brute_jaccard(a: &[usize], b: &[usize]) -> f64 {
    let (mut both, mut either) = (0u64, 0u64);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let sa = a[i] == a[j];
            let sb = b[i] == b[j];
            if sa && sb {
                both += 1;
            }
            if sa || sb {
                either += 1;
            }
        }
    }
    if either == 0 {
        1.0
    } else {
        both as f64 / either as f64
    }
}

/// Six points drawn as three pairs around random centers.
pub fn clustered_six(r: &mut ChaCha8Rng) -> Vec<Point2> {
    let centers: Vec<Point2> = (0..3)
        .map(|_| Point2::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)))
        .collect();
    (0..6)
        .map(|i| centers[i / 2] + Point2::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        .collect()
}

/// Minimum WCSS over all k^n assignments that use every cluster.
pub fn exhaustive_min_wcss(points: &[Point2], k: usize) -> f64 {
    exhaustive_min_assignment(points, k).0
}

/// Minimum WCSS and one assignment attaining it.
pub fn exhaustive_min_assignment(points: &[Point2], k: usize) -> (f64, Vec<usize>) {
    let n = points.len();
    let mut best = (f64::INFINITY, Vec::new());
    let mut assign = vec![0usize; n];
    loop {
        let mut used = vec![false; k];
        for &c in &assign {
            used[c] = true;
        }
        if used.iter().all(|&u| u) {
            let mut total = 0.0;
            for c in 0..k {
                let members: Vec<Point2> = (0..n)
                    .filter(|&i| assign[i] == c)
                    .map(|i| points[i])
                    .collect();
                let m = members.len() as f64;
                let cx = members.iter().map(|p| p.x).sum::<f64>() / m;
                let cy = members.iter().map(|p| p.y).sum::<f64>() / m;
                total += members
                    .iter()
                    .map(|p| (p.x - cx).powi(2) + (p.y - cy).powi(2))
                    .sum::<f64>();
            }
            if total < best.0 {
                best = (total, assign.clone());
            }
        }
        let mut i = 0;
        while i < n {
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}
