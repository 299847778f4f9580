//! Entropies, Schmidt decomposition and the partial-transpose certificate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_eigenvalues, reduced_from_vectors, BipartiteDims, ComplexMatrix,
    DensityMatrix, Side,
};
use crate::tolerance::Tolerances;

/// `-Σ λ log2 λ` over eigenvalues above the rank cutoff.
pub fn von_neumann_entropy(m: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let vals = hermitian_eigenvalues(m, tol)?;
    if let Some(&min) = vals.first() {
        if min < -tol.psd {
            return Err(Error::Domain(format!(
                "entropy of a non-PSD matrix (eigenvalue {min:e})"
            )));
        }
    }
    Ok(entropy_of_values(
        vals.iter().copied().filter(|&v| v > tol.rank),
    ))
}

pub fn entropy_of_values(vals: impl IntoIterator<Item = f64>) -> f64 {
    vals.into_iter()
        .map(|v| -v * v.log2())
        .sum::<f64>()
        .max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtDecomposition {
    /// `√c_k`, descending.
    pub coefficients: Vec<f64>,
    pub vectors_a: Vec<Vec<Complex64>>,
    pub vectors_b: Vec<Vec<Complex64>>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }
}

fn check_unit(v: &[Complex64], dims: BipartiteDims) -> Result<()> {
    if v.len() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            actual: v.len(),
        });
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "state vector has norm {norm}, expected 1"
        )));
    }
    Ok(())
}

/// Schmidt form `|φ> = Σ_k √c_k |a_k>|b_k>` from the eigen-decomposition of
/// `Tr_B |φ><φ|`.
pub fn schmidt(
    v: &[Complex64],
    dims: BipartiteDims,
    tol: &Tolerances,
) -> Result<SchmidtDecomposition> {
    check_unit(v, dims)?;
    let red = reduced_from_vectors(&[v.to_vec()], 1.0, dims, Side::A);
    let eig = hermitian_eig(&red, tol)?;
    let db = dims.d_b;
    let mut out = SchmidtDecomposition {
        coefficients: vec![],
        vectors_a: vec![],
        vectors_b: vec![],
    };
    for (c, a) in eig.values.iter().zip(&eig.vectors).rev() {
        if *c <= tol.rank {
            break;
        }
        let s = c.sqrt();
        // |b_k> = (<a_k| ⊗ I)|φ> / √c_k
        let b: Vec<Complex64> = (0..db)
            .map(|j| {
                (0..dims.d_a)
                    .map(|i| a[i].conj() * v[i * db + j])
                    .sum::<Complex64>()
                    / s
            })
            .collect();
        out.coefficients.push(s);
        out.vectors_a.push(a.clone());
        out.vectors_b.push(b);
    }
    Ok(out)
}

/// `S(Tr_B |φ><φ|)`
pub fn entropy_of_entanglement(
    v: &[Complex64],
    dims: BipartiteDims,
    tol: &Tolerances,
) -> Result<f64> {
    let sd = schmidt(v, dims, tol)?;
    Ok(entropy_of_values(sd.coefficients.iter().map(|s| s * s)))
}

/// Smallest eigenvalue of the partial transpose on B.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let vals = hermitian_eigenvalues(&rho.partial_transpose(Side::B), tol)?;
    Ok(vals[0])
}

pub fn entropies(rho: &DensityMatrix, tol: &Tolerances) -> Result<crate::measures::Entropies> {
    Ok(crate::measures::Entropies {
        total: von_neumann_entropy(rho.matrix(), tol)?,
        reduced_a: von_neumann_entropy(&rho.reduced(Side::A), tol)?,
        reduced_b: von_neumann_entropy(&rho.reduced(Side::B), tol)?,
    })
}
