//! The truncation measure `M`.
//!
//! Each eigenspace's reduced spectra are compared with their nearest integer
//! multiples of the eigenvalue; the discrepancy is weighted by the surprise
//! `-log2(λ / (η d^η))` and summed over eigenspaces.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Side};
use crate::spectral::{decompose, TruncatedComponent};
use crate::tolerance::Tolerances;

/// Nearest integer multiple of `y` to `x`.
///
/// Exact half-points resolve downward; `y = 0` maps everything to 0. A tie
/// is declared when the fractional part of `x / y` is within `eps_tie` of
/// one half.
pub fn nim(x: f64, y: f64, eps_tie: f64) -> Result<f64> {
    if !(x >= 0.0) || !(y >= 0.0) {
        return Err(Error::Domain(format!(
            "nim needs x, y >= 0, got x={x}, y={y}"
        )));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let r = x / y;
    let floor = r.floor();
    let frac = r - floor;
    if (frac - 0.5).abs() <= eps_tie || frac < 0.5 {
        Ok(y * floor)
    } else {
        Ok(y * (floor + 1.0))
    }
}

/// `-|x - y| log2(x / quota)`
pub fn s_term(x: f64, y: f64, quota: f64) -> Result<f64> {
    if !(x > 0.0) || !(quota > 0.0) {
        return Err(Error::Domain(format!(
            "s needs x > 0 and T > 0, got x={x}, T={quota}"
        )));
    }
    if x > quota * (1.0 + 1e-9) + 1e-15 {
        return Err(Error::Domain(format!(
            "s needs x <= T, got x={x}, T={quota}"
        )));
    }
    if !(y >= 0.0) {
        return Err(Error::Domain(format!("s needs y >= 0, got {y}")));
    }
    // x may exceed T by rounding; the term is then zero, not negative
    Ok((-(x - y).abs() * (x / quota).log2()).max(0.0))
}

/// Grouped positive values with one quota per group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Collection {
    pub groups: Vec<Vec<f64>>,
    pub quotas: Vec<f64>,
}

impl Collection {
    /// Quotas are the group sums.
    pub fn from_groups(groups: Vec<Vec<f64>>) -> Self {
        let quotas = groups.iter().map(|g| g.iter().sum()).collect();
        Self { groups, quotas }
    }

    pub fn with_quotas(groups: Vec<Vec<f64>>, quotas: Vec<f64>) -> Result<Self> {
        if groups.len() != quotas.len() {
            return Err(Error::Domain(format!(
                "{} groups but {} quotas",
                groups.len(),
                quotas.len()
            )));
        }
        Ok(Self { groups, quotas })
    }
}

/// `S̃(X, Y) = Σ_j Σ_i s(x_i^j, y_i^j)` using the quotas of `x`.
pub fn s_tilde(x: &Collection, y: &Collection) -> Result<f64> {
    Ok(s_tilde_groups(x, y)?.iter().sum())
}

/// Per-group partial sums of `S̃`.
fn s_tilde_groups(x: &Collection, y: &Collection) -> Result<Vec<f64>> {
    if x.groups.len() != y.groups.len()
        || x.groups
            .iter()
            .zip(&y.groups)
            .any(|(a, b)| a.len() != b.len())
    {
        return Err(Error::Domain(
            "collections have different group structure".into(),
        ));
    }
    x.groups
        .iter()
        .zip(&y.groups)
        .zip(&x.quotas)
        .map(|((xs, ys), &t)| xs.iter().zip(ys).map(|(&xi, &yi)| s_term(xi, yi, t)).sum())
        .collect()
}

/// One eigenspace's share of `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentContribution {
    pub eta: f64,
    pub mult: usize,
    pub spectrum_a: Vec<f64>,
    pub spectrum_b: Vec<f64>,
    pub contribution_a: f64,
    pub contribution_b: f64,
}

/// `M^side` and its per-eigenspace terms.
pub fn measure_m_side(
    components: &[TruncatedComponent],
    side: Side,
    tol: &Tolerances,
) -> Result<(f64, Vec<f64>)> {
    let groups: Vec<Vec<f64>> = components
        .iter()
        .map(|c| c.spectrum(side).to_vec())
        .collect();
    let predicted = components
        .iter()
        .map(|c| {
            c.spectrum(side)
                .iter()
                .map(|&l| nim(l, c.eta, tol.tie))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let quotas = components.iter().map(TruncatedComponent::quota).collect();
    let x = Collection::with_quotas(groups, quotas)?;
    let y = Collection::from_groups(predicted);
    let parts = s_tilde_groups(&x, &y)?;
    Ok((parts.iter().sum(), parts))
}

/// Partition measure `G = max(F^A, F^B)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub g: f64,
    pub f_a: f64,
    pub f_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entropies {
    /// `S(ρ)`
    pub total: f64,
    /// `S(Tr_B ρ)`
    pub reduced_a: f64,
    /// `S(Tr_A ρ)`
    pub reduced_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub m: f64,
    pub m_a: f64,
    pub m_b: f64,
    pub per_component: Vec<ComponentContribution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropies: Option<Entropies>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ppt_min_eigenvalue: Option<f64>,
}

/// `M = (M^A + M^B) / 2` with the per-eigenspace breakdown.
pub fn measure_m(rho: &DensityMatrix, tol: &Tolerances) -> Result<MeasureReport> {
    let comps = decompose(rho, tol)?;
    let (m_a, parts_a) = measure_m_side(&comps, Side::A, tol)?;
    let (m_b, parts_b) = measure_m_side(&comps, Side::B, tol)?;
    let per_component = comps
        .iter()
        .zip(parts_a.iter().zip(&parts_b))
        .map(|(c, (&ca, &cb))| ComponentContribution {
            eta: c.eta,
            mult: c.mult,
            spectrum_a: c.spectrum_a.clone(),
            spectrum_b: c.spectrum_b.clone(),
            contribution_a: ca,
            contribution_b: cb,
        })
        .collect();
    Ok(MeasureReport {
        m: 0.5 * (m_a + m_b),
        m_a,
        m_b,
        per_component,
        partition: None,
        entropies: None,
        ppt_min_eigenvalue: None,
    })
}
