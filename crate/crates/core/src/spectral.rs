//! Eigenspace clustering and truncated density matrices.
//!
//! A state is split into its distinct nonzero eigenvalues `η_j`; each
//! eigenspace yields the truncated matrix `η_j Σ_k |v_k><v_k|` together with
//! the nonzero spectra of its two reduced matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{
    hermitian_eig, hermitian_eigenvalues, reduced_from_vectors, BipartiteDims, ComplexMatrix,
    DensityMatrix, Side,
};
use crate::tolerance::Tolerances;

/// One distinct nonzero eigenvalue with its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub eta: f64,
    pub vectors: Vec<Vec<Complex64>>,
}

impl EigenCluster {
    pub fn multiplicity(&self) -> usize {
        self.vectors.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    /// Ascending in `eta`.
    pub clusters: Vec<EigenCluster>,
    /// Dimension of the dropped kernel.
    pub zero_dim: usize,
    pub dims: BipartiteDims,
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// `Σ_j η_j d^{η_j}`
    pub fn weight(&self) -> f64 {
        self.clusters
            .iter()
            .map(|c| c.eta * c.multiplicity() as f64)
            .sum()
    }
}

/// Groups an ascending list: neighbours with gap `<= eps` share a group.
/// Returns half-open index ranges.
pub fn cluster_values(values: &[f64], eps: f64) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > eps {
            if i > start {
                groups.push(start..i);
            }
            start = i;
        }
    }
    groups
}

pub fn cluster_spectrum(rho: &DensityMatrix, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let eig = hermitian_eig(rho.matrix(), tol)?;
    let mut clusters = Vec::new();
    let mut zero_dim = 0;
    for range in cluster_values(&eig.values, tol.deg) {
        let members = &eig.values[range.clone()];
        let eta = members.iter().sum::<f64>() / members.len() as f64;
        if eta <= tol.zero {
            zero_dim += members.len();
            continue;
        }
        clusters.push(EigenCluster {
            eta,
            vectors: eig.vectors[range].to_vec(),
        });
    }
    Ok(SpectralDecomposition {
        clusters,
        zero_dim,
        dims: rho.dims(),
    })
}

/// Truncated density matrix of one eigenspace with its reduced spectra.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedComponent {
    pub eta: f64,
    pub mult: usize,
    /// Nonzero eigenvalues of `Tr_B ρ̃^η`, descending.
    pub spectrum_a: Vec<f64>,
    /// Nonzero eigenvalues of `Tr_A ρ̃^η`, descending.
    pub spectrum_b: Vec<f64>,
    #[serde(skip)]
    vectors: Vec<Vec<Complex64>>,
    #[serde(skip)]
    dims: Option<BipartiteDims>,
}

impl TruncatedComponent {
    /// `η · d^η`, the trace of the truncated matrix.
    pub fn quota(&self) -> f64 {
        self.eta * self.mult as f64
    }

    pub fn spectrum(&self, side: Side) -> &[f64] {
        match side {
            Side::A => &self.spectrum_a,
            Side::B => &self.spectrum_b,
        }
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// The truncated matrix `η Σ_k |v_k><v_k|`, built on demand.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.vectors.first().map_or(0, Vec::len);
        let mut m = ComplexMatrix::zeros(n);
        for v in &self.vectors {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        m.scale_real(self.eta)
    }

    pub fn reduced(&self, keep: Side) -> Option<ComplexMatrix> {
        self.dims
            .map(|dims| reduced_from_vectors(&self.vectors, self.eta, dims, keep))
    }
}

fn nonzero_spectrum(m: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let mut vals: Vec<f64> = hermitian_eigenvalues(m, tol)?
        .into_iter()
        .filter(|&v| v > tol.rank)
        .collect();
    vals.reverse();
    Ok(vals)
}

pub fn truncated_component(
    cluster: &EigenCluster,
    dims: BipartiteDims,
    tol: &Tolerances,
) -> Result<TruncatedComponent> {
    let red_a = reduced_from_vectors(&cluster.vectors, cluster.eta, dims, Side::A);
    let red_b = reduced_from_vectors(&cluster.vectors, cluster.eta, dims, Side::B);
    Ok(TruncatedComponent {
        eta: cluster.eta,
        mult: cluster.multiplicity(),
        spectrum_a: nonzero_spectrum(&red_a, tol)?,
        spectrum_b: nonzero_spectrum(&red_b, tol)?,
        vectors: cluster.vectors.clone(),
        dims: Some(dims),
    })
}

/// `ρ = Σ_j ρ̃^{η_j}` over the nonzero eigenvalues, ascending in `η`.
pub fn decompose(rho: &DensityMatrix, tol: &Tolerances) -> Result<Vec<TruncatedComponent>> {
    let spec = cluster_spectrum(rho, tol)?;
    spec.clusters
        .iter()
        .map(|c| truncated_component(c, spec.dims, tol))
        .collect()
}
