//! Numerical tolerances.
//!
//! The underlying definitions are exact; every place where a floating-point
//! comparison stands in for an exact equality reads its threshold from here.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max |m[i][j] - conj(m[j][i])| accepted as Hermitian.
    pub herm: f64,
    /// Max |trace - 1| for a density matrix.
    pub trace: f64,
    /// Most negative eigenvalue accepted as positive semidefinite.
    pub psd: f64,
    /// Frobenius residual allowed when reconstructing from an eigensystem.
    pub recon: f64,
    /// Deviation from the Kronecker delta allowed for eigenvector overlaps.
    pub orth: f64,
    /// Gap at or below which neighbouring eigenvalues are one cluster.
    pub deg: f64,
    /// Clusters whose representative is at or below this are the kernel.
    pub zero: f64,
    /// Reduced-spectrum entries at or below this do not count toward rank.
    pub rank: f64,
    /// Half-point tie window for `nim`, in units of the step.
    pub tie: f64,
    /// Off-diagonal (or dephasing) residual accepted as "diagonal".
    pub offdiag: f64,
    /// Commutator Frobenius norm accepted as "commuting".
    pub comm: f64,
    /// Local-vector overlap window for orthogonal/equal and Schmidt rank one.
    pub vec: f64,
    /// M above this is taken as a nonclassicality witness.
    pub measure: f64,
    /// Largest dA*dB for which the partition measure is enumerated.
    pub partition_guard: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            trace: 1e-8,
            psd: 1e-10,
            recon: 1e-9,
            orth: 1e-10,
            deg: 1e-9,
            zero: 1e-10,
            rank: 1e-10,
            tie: 1e-9,
            offdiag: 1e-8,
            comm: 1e-8,
            vec: 1e-8,
            measure: 1e-7,
            partition_guard: 16,
        }
    }
}
