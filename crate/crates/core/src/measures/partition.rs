//! The partition measure `G`.
//!
//! The global eigenvalues are split into `d^side` equal-size groups; the
//! group sums "mimic" the local spectrum. `F^side` is the smallest gap
//! between the entropies of mimicked and genuine local spectra, and
//! `G = max(F^A, F^B)`.
//!
//! The objective only depends on the group sums, so partitions are
//! enumerated as unordered set partitions: each group is anchored at the
//! smallest unused index, which removes the `(d^side)!` group orderings.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, DensityMatrix, Side};
use crate::measures::truncation::PartitionReport;
use crate::tolerance::Tolerances;

/// `x log2 x` with `0 log2 0 = 0`; tiny negatives from rounding count as 0.
fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `(d_a d_b)! / (d_other!)^{d_side}` as a float.
pub fn ordered_partition_count(n_groups: usize, group_size: usize) -> f64 {
    let ln_fact = |k: usize| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    (ln_fact(n_groups * group_size) - n_groups as f64 * ln_fact(group_size)).exp()
}

/// Minimum over equal-size partitions of `global` into `n_groups` groups of
/// `|Σ_i (ẽ_i log2 ẽ_i − e_i log2 e_i)|`.
pub fn min_partition_discrepancy(global: &[f64], genuine: &[f64], n_groups: usize) -> Result<f64> {
    if n_groups == 0 || !global.len().is_multiple_of(n_groups) {
        return Err(Error::Domain(format!(
            "{} eigenvalues cannot be split into {n_groups} equal groups",
            global.len()
        )));
    }
    let mut sorted = genuine.to_vec();
    sorted.sort_by(f64::total_cmp);
    let target: f64 = sorted.iter().map(|&e| xlogx(e)).sum();
    let group_size = global.len() / n_groups;
    let mut search = Search {
        values: global,
        group_size,
        used: vec![false; global.len()],
        target,
        best: f64::INFINITY,
        visited: 0,
    };
    search.groups(0.0, n_groups);
    Ok(search.best)
}

struct Search<'a> {
    values: &'a [f64],
    group_size: usize,
    used: Vec<bool>,
    target: f64,
    best: f64,
    visited: usize,
}

impl Search<'_> {
    /// Opens a new group anchored at the first unused index.
    fn groups(&mut self, acc: f64, remaining: usize) {
        if remaining == 0 {
            self.visited += 1;
            self.best = self.best.min((acc - self.target).abs());
            return;
        }
        let anchor = self
            .used
            .iter()
            .position(|u| !u)
            .expect("unused items remain");
        self.used[anchor] = true;
        self.fill(
            anchor + 1,
            self.values[anchor],
            self.group_size - 1,
            acc,
            remaining,
        );
        self.used[anchor] = false;
    }

    fn fill(&mut self, from: usize, sum: f64, need: usize, acc: f64, remaining: usize) {
        if need == 0 {
            self.groups(acc + xlogx(sum), remaining - 1);
            return;
        }
        for i in from..self.values.len() {
            if self.used[i] {
                continue;
            }
            self.used[i] = true;
            self.fill(i + 1, sum + self.values[i], need - 1, acc, remaining);
            self.used[i] = false;
        }
    }
}

pub fn measure_f_side(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> Result<f64> {
    let dims = rho.dims();
    let n = dims.total();
    let n_groups = dims.side(side);
    if n > tol.partition_guard {
        return Err(Error::Capability(format!(
            "partition measure on {}x{} needs {:.3e} partitions ((dA dB)!/(d{}!)^d{}); limit is dA*dB <= {}",
            dims.d_a,
            dims.d_b,
            ordered_partition_count(n_groups, dims.side(side.other())),
            side.other(),
            side,
            tol.partition_guard
        )));
    }
    let global = hermitian_eigenvalues(rho.matrix(), tol)?;
    let genuine = hermitian_eigenvalues(&rho.reduced(side), tol)?;
    min_partition_discrepancy(&global, &genuine, n_groups)
}

pub fn measure_g(rho: &DensityMatrix, tol: &Tolerances) -> Result<PartitionReport> {
    let f_a = measure_f_side(rho, Side::A, tol)?;
    let f_b = measure_f_side(rho, Side::B, tol)?;
    Ok(PartitionReport {
        g: f_a.max(f_b),
        f_a,
        f_b,
    })
}
