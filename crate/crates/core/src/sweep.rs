//! One-parameter state families and `M` sampled along them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Side};
use crate::measures::{measure_m, von_neumann_entropy};
use crate::states;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Family {
    /// `√p|00> + √(1-p)|11>` as `p` varies.
    PhiP,
    /// `kappa(c_x, cy, cz)` as `c_x` varies.
    Kappa { cy: f64, cz: f64 },
}

impl Family {
    pub fn state(&self, t: f64) -> Result<DensityMatrix> {
        match *self {
            Family::PhiP => states::phi_p(t),
            Family::Kappa { cy, cz } => states::kappa(t, cy, cz),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub m: f64,
    /// `S(Tr_B ρ)`
    pub s_vn: f64,
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::Domain(format!("invalid range {lo}..{hi}")));
    }
    match steps {
        0 => Err(Error::Domain("a sweep needs at least one step".into())),
        1 => Ok(vec![lo]),
        _ => {
            let last = (steps - 1) as f64;
            // exact endpoints; interior points as lo + k h
            Ok((0..steps)
                .map(|k| {
                    if k + 1 == steps {
                        hi
                    } else {
                        lo + (hi - lo) * k as f64 / last
                    }
                })
                .collect())
        }
    }
}

pub fn sweep(
    family: Family,
    lo: f64,
    hi: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<Vec<SweepRow>> {
    grid(lo, hi, steps)?
        .into_iter()
        .map(|t| {
            let rho = family.state(t)?;
            Ok(SweepRow {
                param: t,
                m: measure_m(&rho, tol)?.m,
                s_vn: von_neumann_entropy(&rho.reduced(Side::A), tol)?,
            })
        })
        .collect()
}
