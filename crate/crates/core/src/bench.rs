//! Wall-clock scaling of `M` on random full-rank states.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::BipartiteDims;
use crate::measures::measure_m;
use crate::states::random_density;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    /// Per-side dimension; the state lives on `N x N`.
    pub n: usize,
    pub trials: usize,
    pub min_seconds: f64,
    pub mean_seconds: f64,
}

/// 2, 4, 8, ... up to `max`.
pub fn doubling_schedule(max: usize) -> Vec<usize> {
    std::iter::successors(Some(2usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= max)
        .collect()
}

/// Seed of trial `t` at per-side dimension `n`.
pub fn trial_seed(seed: u64, n: usize, t: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 32) ^ t as u64
}

/// Times `measure_m` on `trials` random full-rank states per entry of `ns`.
/// Rows are empty when `trials == 0`.
pub fn bench_measure_m(
    ns: &[usize],
    trials: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<BenchRow>> {
    if trials == 0 {
        return Ok(vec![]);
    }
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let dims = BipartiteDims::new(n, n)?;
        let mut times = Vec::with_capacity(trials);
        for t in 0..trials {
            let rho = random_density(dims, dims.total(), trial_seed(seed, n, t))?;
            let start = Instant::now();
            std::hint::black_box(measure_m(&rho, tol)?);
            times.push(start.elapsed().as_secs_f64());
        }
        rows.push(BenchRow {
            n,
            trials,
            min_seconds: times.iter().copied().fold(f64::INFINITY, f64::min),
            mean_seconds: times.iter().sum::<f64>() / trials as f64,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `ln(min_seconds)` against `ln(n)`.
pub fn loglog_slope(rows: &[BenchRow]) -> Option<f64> {
    if rows.len() < 2 {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.min_seconds.max(1e-12).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}
