//! Measures of nonclassical correlation and supporting quantities.

pub mod entropy;
pub mod partition;
pub mod truncation;

pub use entropy::{
    entropies, entropy_of_entanglement, ppt_min_eigenvalue, schmidt, von_neumann_entropy,
    SchmidtDecomposition,
};
pub use partition::{measure_f_side, measure_g, min_partition_discrepancy};
pub use truncation::{
    measure_m, measure_m_side, nim, s_term, s_tilde, Collection, ComponentContribution, Entropies,
    MeasureReport, PartitionReport,
};

use crate::error::Result;
use crate::linalg::DensityMatrix;
use crate::tolerance::Tolerances;

/// `M` plus entropies and the partial-transpose minimum; `G` as well when
/// `with_partition` is set.
pub fn full_report(
    rho: &DensityMatrix,
    with_partition: bool,
    tol: &Tolerances,
) -> Result<MeasureReport> {
    let mut report = measure_m(rho, tol)?;
    if with_partition {
        report.partition = Some(measure_g(rho, tol)?);
    }
    report.entropies = Some(entropies(rho, tol)?);
    report.ppt_min_eigenvalue = Some(ppt_min_eigenvalue(rho, tol)?);
    Ok(report)
}
