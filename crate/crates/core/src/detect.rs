//! Polynomial-time product-eigenbasis detection.
//!
//! Three structural cases decide the question outright when the relevant
//! spectra are nondegenerate; two necessary conditions (local commutators,
//! positive partial transpose) and a nonzero `M` can only rule a product
//! eigenbasis out. `classify` runs all of them and reports the first
//! decisive outcome together with every piece of evidence.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{
    commutator_fro_norm, hermitian_eig, inner, kron, kron_vec, reduced_from_vectors, ComplexMatrix,
    DensityMatrix, Side, ZERO,
};
use crate::measures::{measure_m, ppt_min_eigenvalue};
use crate::states::ProductBasis;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Classical,
    Nonclassical,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Test {
    NondegenerateGlobal,
    LocalBothNondegenerate,
    LocalOneNondegenerate,
    Commutator,
    PartialTranspose,
    MeasureWitness,
}

impl Test {
    pub fn label(self) -> &'static str {
        match self {
            Test::NondegenerateGlobal => "case (i)",
            Test::LocalBothNondegenerate => "case (ii)",
            Test::LocalOneNondegenerate => "case (iii)",
            Test::Commutator => "commutator",
            Test::PartialTranspose => "NPT",
            Test::MeasureWitness => "M witness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Classical,
    Nonclassical,
    Inconclusive,
    NotApplicable,
}

impl Outcome {
    fn decisive(self) -> Option<Verdict> {
        match self {
            Outcome::Classical => Some(Verdict::Classical),
            Outcome::Nonclassical => Some(Verdict::Nonclassical),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub test: Test,
    pub outcome: Outcome,
    /// The number the outcome was decided on, if any.
    pub witness: Option<f64>,
    pub detail: String,
}

/// One test's evidence, plus the product eigenbasis when it proved one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub evidence: Evidence,
    pub basis: Option<ProductBasis>,
}

impl Finding {
    fn new(test: Test, outcome: Outcome, witness: Option<f64>, detail: impl Into<String>) -> Self {
        Self {
            evidence: Evidence {
                test,
                outcome,
                witness,
                detail: detail.into(),
            },
            basis: None,
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.evidence.outcome
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionVerdict {
    pub verdict: Verdict,
    pub decided_by: Option<Test>,
    pub evidence: Vec<Evidence>,
    pub applied: Vec<Test>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<ProductBasis>,
    /// `‖ρ − Σ e_jk |a_j b_k><a_j b_k|‖_F` for the emitted basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_residual: Option<f64>,
}

fn nondegenerate(sorted: &[f64], eps: f64) -> bool {
    sorted.windows(2).all(|w| w[1] - w[0] > eps)
}

fn min_gap(sorted: &[f64]) -> f64 {
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Distance of `|<u|v>|` from {0, 1}.
fn orth_or_equal_defect(u: &[Complex64], v: &[Complex64]) -> f64 {
    let ov = inner(u, v).norm();
    ov.min((1.0 - ov).abs())
}

fn pairwise_defect(vs: &[Vec<Complex64>]) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            worst = worst.max(orth_or_equal_defect(&vs[i], &vs[j]));
        }
    }
    worst
}

/// Keeps one representative per phase class, then completes to an
/// orthonormal basis of dimension `d` with computational basis vectors.
fn complete_basis(vs: &[Vec<Complex64>], d: usize, tol: &Tolerances) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    let candidates = vs
        .iter()
        .cloned()
        .chain((0..d).map(|i| crate::states::ket(d, i)));
    for mut v in candidates {
        if basis.len() == d {
            break;
        }
        if basis.iter().any(|b| 1.0 - inner(b, &v).norm() <= tol.vec) {
            continue;
        }
        for b in &basis {
            let ip = inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= ip * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    basis
}

fn basis_from_locals(
    rho: &DensityMatrix,
    basis_a: Vec<Vec<Complex64>>,
    basis_b: Vec<Vec<Complex64>>,
) -> ProductBasis {
    let weights = basis_a
        .iter()
        .map(|a| {
            basis_b
                .iter()
                .map(|b| {
                    let v = kron_vec(a, b);
                    inner(&v, &rho.matrix().apply(&v)).re
                })
                .collect()
        })
        .collect();
    ProductBasis {
        basis_a,
        basis_b,
        weights,
    }
}

/// Case (i): every eigenvalue (zero included) is simple.
///
/// The eigenbasis is then unique up to phases, so a product eigenbasis exists
/// iff every eigenvector is a product `|a>|b>` and, per side, the local
/// vectors are pairwise orthogonal or equal up to phase.
pub fn detect_nondegenerate_global(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let test = Test::NondegenerateGlobal;
    let eig = hermitian_eig(rho.matrix(), tol)?;
    if !nondegenerate(&eig.values, tol.deg) {
        return Ok(Finding::new(
            test,
            Outcome::NotApplicable,
            Some(min_gap(&eig.values)).filter(|g| g.is_finite()),
            "global spectrum is degenerate",
        ));
    }
    let dims = rho.dims();
    let mut locals_a = Vec::with_capacity(eig.vectors.len());
    let mut locals_b = Vec::with_capacity(eig.vectors.len());
    for (k, v) in eig.vectors.iter().enumerate() {
        let red = reduced_from_vectors(std::slice::from_ref(v), 1.0, dims, Side::A);
        let local = hermitian_eig(&red, tol)?;
        let top = *local.values.last().expect("nonempty");
        let entangled = 1.0 - top;
        if entangled > tol.vec {
            return Ok(Finding::new(
                test,
                Outcome::Nonclassical,
                Some(entangled),
                format!(
                    "eigenvector {k} has Schmidt rank > 1 (second Schmidt weight {entangled:.3e})"
                ),
            ));
        }
        let a = local.vectors.last().expect("nonempty").clone();
        let db = dims.d_b;
        let mut b: Vec<Complex64> = (0..db)
            .map(|j| (0..dims.d_a).map(|i| a[i].conj() * v[i * db + j]).sum())
            .collect();
        let norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        b.iter_mut().for_each(|x| *x /= norm);
        locals_a.push(a);
        locals_b.push(b);
    }
    let da = pairwise_defect(&locals_a);
    let db = pairwise_defect(&locals_b);
    let worst = da.max(db);
    if worst > tol.vec {
        let side = if da >= db { Side::A } else { Side::B };
        return Ok(Finding::new(
            test,
            Outcome::Nonclassical,
            Some(worst),
            format!("local vectors neither orthogonal nor equal on {side} (defect {worst:.3e})"),
        ));
    }
    let basis = basis_from_locals(
        rho,
        complete_basis(&locals_a, dims.d_a, tol),
        complete_basis(&locals_b, dims.d_b, tol),
    );
    let mut f = Finding::new(
        test,
        Outcome::Classical,
        Some(worst),
        "all eigenvectors are products of orthogonal-or-equal local vectors",
    );
    f.basis = Some(basis);
    Ok(f)
}

/// Case (ii): both reduced matrices nondegenerate, so the only candidate
/// product basis is the product of local eigenbases.
pub fn detect_local_both_nondegenerate(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let test = Test::LocalBothNondegenerate;
    let ea = hermitian_eig(&rho.reduced(Side::A), tol)?;
    let eb = hermitian_eig(&rho.reduced(Side::B), tol)?;
    let (na, nb) = (
        nondegenerate(&ea.values, tol.deg),
        nondegenerate(&eb.values, tol.deg),
    );
    if !(na && nb) {
        let which = match (na, nb) {
            (false, false) => "both reduced matrices are",
            (false, true) => "Tr_B ρ is",
            _ => "Tr_A ρ is",
        };
        return Ok(Finding::new(
            test,
            Outcome::NotApplicable,
            None,
            format!("{which} degenerate"),
        ));
    }
    let u_a = ComplexMatrix::from_fn(ea.vectors.len(), |i, j| ea.vectors[j][i]);
    let u_b = ComplexMatrix::from_fn(eb.vectors.len(), |i, j| eb.vectors[j][i]);
    let w = kron(&u_a, &u_b);
    let rotated = &(&w.adjoint() * rho.matrix()) * &w;
    let off = rotated.offdiagonal_norm();
    if off > tol.offdiag {
        return Ok(Finding::new(
            test,
            Outcome::Nonclassical,
            Some(off),
            format!("product of local eigenbases leaves off-diagonal weight {off:.3e}"),
        ));
    }
    let mut f = Finding::new(
        test,
        Outcome::Classical,
        Some(off),
        "product of local eigenbases diagonalizes ρ",
    );
    f.basis = Some(basis_from_locals(rho, ea.vectors, eb.vectors));
    Ok(f)
}

/// `⟨v|ρ|v⟩` taken over `side`, leaving an operator on the other side.
fn conditional_block(rho: &DensityMatrix, v: &[Complex64], side: Side) -> ComplexMatrix {
    let dims = rho.dims();
    let (da, db) = (dims.d_a, dims.d_b);
    let m = rho.matrix();
    match side {
        Side::B => ComplexMatrix::from_fn(da, |a, a2| {
            let mut s = ZERO;
            for b in 0..db {
                for b2 in 0..db {
                    s += v[b].conj() * m[(a * db + b, a2 * db + b2)] * v[b2];
                }
            }
            s
        }),
        Side::A => ComplexMatrix::from_fn(db, |b, b2| {
            let mut s = ZERO;
            for a in 0..da {
                for a2 in 0..da {
                    s += v[a].conj() * m[(a * db + b, a2 * db + b2)] * v[a2];
                }
            }
            s
        }),
    }
}

/// Case (iii): exactly one reduced matrix nondegenerate.
///
/// With `|v_j>` its eigenvectors, ρ must equal `Σ_j ⟨v_j|ρ|v_j⟩ ⊗ |v_j><v_j|`
/// and the conditional blocks must commute pairwise.
pub fn detect_local_one_nondegenerate(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let test = Test::LocalOneNondegenerate;
    let ea = hermitian_eig(&rho.reduced(Side::A), tol)?;
    let eb = hermitian_eig(&rho.reduced(Side::B), tol)?;
    let (na, nb) = (
        nondegenerate(&ea.values, tol.deg),
        nondegenerate(&eb.values, tol.deg),
    );
    let (side, local) = match (na, nb) {
        (false, true) => (Side::B, eb),
        (true, false) => (Side::A, ea),
        (true, true) => {
            return Ok(Finding::new(
                test,
                Outcome::NotApplicable,
                None,
                "both reduced matrices nondegenerate",
            ))
        }
        (false, false) => {
            return Ok(Finding::new(
                test,
                Outcome::NotApplicable,
                None,
                "both reduced matrices degenerate",
            ))
        }
    };
    let blocks: Vec<ComplexMatrix> = local
        .vectors
        .iter()
        .map(|v| conditional_block(rho, v, side))
        .collect();
    let mut rebuilt = ComplexMatrix::zeros(rho.dim());
    for (block, v) in blocks.iter().zip(&local.vectors) {
        let proj = ComplexMatrix::projector(v);
        let term = match side {
            Side::B => kron(block, &proj),
            Side::A => kron(&proj, block),
        };
        rebuilt = &rebuilt + &term;
    }
    let residual = (rho.matrix() - &rebuilt).frobenius_norm();
    if residual > tol.offdiag {
        return Ok(Finding::new(
            test,
            Outcome::Nonclassical,
            Some(residual),
            format!("ρ is not block diagonal in the {side} eigenbasis (residual {residual:.3e})"),
        ));
    }
    let mut worst = 0.0_f64;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            worst = worst.max(commutator_fro_norm(&blocks[i], &blocks[j])?);
        }
    }
    if worst > tol.comm {
        return Ok(Finding::new(
            test,
            Outcome::Nonclassical,
            Some(worst),
            format!(
                "conditional blocks on {} do not commute (norm {worst:.3e})",
                side.other()
            ),
        ));
    }
    // commuting Hermitian blocks share the eigenbasis of a generic combination
    let mut combo = ComplexMatrix::zeros(blocks.first().map_or(0, ComplexMatrix::dim));
    for (j, b) in blocks.iter().enumerate() {
        combo = &combo + &b.scale_real(1.0 / (j as f64 + 1.618_033_988_749_895));
    }
    let common = hermitian_eig(&combo, tol)?.vectors;
    let basis = match side {
        Side::B => basis_from_locals(rho, common, local.vectors),
        Side::A => basis_from_locals(rho, local.vectors, common),
    };
    let mut f = Finding::new(
        test,
        Outcome::Classical,
        Some(worst),
        format!("ρ is block diagonal in the {side} eigenbasis with commuting blocks"),
    );
    f.basis = Some(basis);
    Ok(f)
}

/// Necessary condition: `[ρ, Tr_B ρ ⊗ I] = [ρ, I ⊗ Tr_A ρ] = 0`.
pub fn detect_commutator(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let dims = rho.dims();
    let lift_a = kron(&rho.reduced(Side::A), &ComplexMatrix::identity(dims.d_b));
    let lift_b = kron(&ComplexMatrix::identity(dims.d_a), &rho.reduced(Side::B));
    let ca = commutator_fro_norm(rho.matrix(), &lift_a)?;
    let cb = commutator_fro_norm(rho.matrix(), &lift_b)?;
    let worst = ca.max(cb);
    Ok(if worst > tol.comm {
        Finding::new(
            Test::Commutator,
            Outcome::Nonclassical,
            Some(worst),
            format!("ρ does not commute with its lifted marginals (A: {ca:.3e}, B: {cb:.3e})"),
        )
    } else {
        Finding::new(
            Test::Commutator,
            Outcome::Inconclusive,
            Some(worst),
            "both commutators vanish",
        )
    })
}

/// A negative partial transpose certifies entanglement.
pub fn detect_npt(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let min = ppt_min_eigenvalue(rho, tol)?;
    Ok(if min < -tol.psd {
        Finding::new(
            Test::PartialTranspose,
            Outcome::Nonclassical,
            Some(min),
            format!("min eigenvalue {min:.6} of the partial transpose"),
        )
    } else {
        Finding::new(
            Test::PartialTranspose,
            Outcome::Inconclusive,
            Some(min),
            "partial transpose is PSD",
        )
    })
}

fn detect_measure(rho: &DensityMatrix, tol: &Tolerances) -> Result<Finding> {
    let m = measure_m(rho, tol)?.m;
    Ok(if m > tol.measure {
        Finding::new(
            Test::MeasureWitness,
            Outcome::Nonclassical,
            Some(m),
            format!("M = {m:.6}"),
        )
    } else {
        Finding::new(
            Test::MeasureWitness,
            Outcome::Inconclusive,
            Some(m),
            format!("M = {m:.3e} vanishes"),
        )
    })
}

pub fn classify(rho: &DensityMatrix, tol: &Tolerances) -> Result<DetectionVerdict> {
    type Detector = fn(&DensityMatrix, &Tolerances) -> Result<Finding>;
    let detectors: [Detector; 6] = [
        detect_nondegenerate_global,
        detect_local_both_nondegenerate,
        detect_local_one_nondegenerate,
        detect_commutator,
        detect_npt,
        detect_measure,
    ];
    let mut out = DetectionVerdict {
        verdict: Verdict::Unknown,
        decided_by: None,
        evidence: Vec::with_capacity(detectors.len()),
        applied: Vec::with_capacity(detectors.len()),
        basis: None,
        basis_residual: None,
    };
    for detector in detectors {
        let finding = detector(rho, tol)?;
        let ev = &finding.evidence;
        out.applied.push(ev.test);
        if out.decided_by.is_none() {
            if let Some(v) = ev.outcome.decisive() {
                out.verdict = v;
                out.decided_by = Some(ev.test);
                if let Some(basis) = finding.basis {
                    out.basis_residual =
                        Some((rho.matrix() - &basis.reconstruct()).frobenius_norm());
                    out.basis = Some(basis);
                }
            }
        }
        out.evidence.push(finding.evidence);
    }
    Ok(out)
}
