//! Named states, parametric families and seeded random generators.
//!
//! Kets on a `d`-dimensional factor use the computational basis `|0>..|d-1>`
//! with `|+> = (|0> + |1>)/√2` and `|-> = (|0> - |1>)/√2` embedded in the
//! first two levels whatever `d` is.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    bipartite_tensor, inner, kron_vec, BipartiteDims, ComplexMatrix, DensityMatrix, ONE, ZERO,
};

pub const CATALOG: &[&str] = &[
    "varsigma",
    "sigma",
    "sigma_prime",
    "sigma_dprime",
    "tau",
    "zeta",
    "zeta_prime",
    "xi",
    "xi_prime",
    "bell",
    "phi_p",
    "kappa",
    "random",
    "random_classical",
];

/// A catalog entry plus parameters.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StateSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
}

impl StateSpec {
    pub fn named(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn get(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    fn get_dim(&self, key: &str, default: usize) -> Result<usize> {
        let v = self.get(key, default as f64);
        if v < 1.0 || v.fract() != 0.0 || v > 4096.0 {
            return Err(Error::Domain(format!(
                "parameter {key} must be a positive integer, got {v}"
            )));
        }
        Ok(v as usize)
    }
}

pub fn build(spec: &StateSpec) -> Result<DensityMatrix> {
    let known: &[&str] = match spec.name.as_str() {
        "bell" => &["N"],
        "phi_p" => &["p"],
        "kappa" => &["cx", "cy", "cz"],
        "random" => &["dA", "dB", "rank"],
        "random_classical" => &["dA", "dB"],
        "zeta_prime" => &["seedA", "seedB"],
        _ => &[],
    };
    if let Some(k) = spec.params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::Domain(format!(
            "state {} takes no parameter `{k}`",
            spec.name
        )));
    }
    match spec.name.as_str() {
        "varsigma" => Ok(varsigma()),
        "sigma" => Ok(sigma()),
        "sigma_prime" => Ok(sigma_prime()),
        "sigma_dprime" => Ok(sigma_dprime()),
        "tau" => Ok(tau()),
        "zeta" => Ok(zeta()),
        "zeta_prime" => {
            let sa = spec.get("seedA", spec.seed as f64) as u64;
            let sb = spec.get("seedB", spec.seed.wrapping_add(1) as f64) as u64;
            Ok(zeta_prime(sa, sb))
        }
        "xi" => Ok(xi()),
        "xi_prime" => Ok(xi_prime()),
        "bell" => bell(spec.get_dim("N", 2)?),
        "phi_p" => phi_p(spec.get("p", 0.5)),
        "kappa" => kappa(
            spec.get("cx", 0.0),
            spec.get("cy", 0.0),
            spec.get("cz", 0.0),
        ),
        "random" => {
            let dims = BipartiteDims::new(spec.get_dim("dA", 2)?, spec.get_dim("dB", 2)?)?;
            let rank = spec.get_dim("rank", dims.total())?;
            random_density(dims, rank, spec.seed)
        }
        "random_classical" => {
            let dims = BipartiteDims::new(spec.get_dim("dA", 2)?, spec.get_dim("dB", 2)?)?;
            Ok(random_classical(dims, spec.seed).0)
        }
        other => Err(Error::UnknownState(other.to_string())),
    }
}

pub fn ket(d: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; d];
    v[i] = ONE;
    v
}

pub fn plus(d: usize) -> Vec<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut v = vec![ZERO; d];
    v[0] = h;
    v[1] = h;
    v
}

pub fn minus(d: usize) -> Vec<Complex64> {
    let mut v = plus(d);
    v[1] = -v[1];
    v
}

fn mixture(terms: &[(f64, Vec<Complex64>)], dims: BipartiteDims) -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(dims.total());
    for (w, v) in terms {
        m = &m + &ComplexMatrix::projector(v).scale_real(*w);
    }
    DensityMatrix::new(m, dims).expect("catalog states are valid")
}

fn qubits() -> BipartiteDims {
    BipartiteDims { d_a: 2, d_b: 2 }
}

fn two(i: usize, j: usize) -> Vec<Complex64> {
    kron_vec(&ket(2, i), &ket(2, j))
}

/// `(|00> + |11>)/√2`
fn phi_plus() -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    two(0, 0)
        .iter()
        .zip(two(1, 1))
        .map(|(a, b)| (a + b) * h)
        .collect()
}

/// `(|00><00| + |1+><1+|)/2`
pub fn varsigma() -> DensityMatrix {
    mixture(
        &[(0.5, two(0, 0)), (0.5, kron_vec(&ket(2, 1), &plus(2)))],
        qubits(),
    )
}

/// `(|00><00| + 2|01><01| + 3|1+><1+|)/6`
pub fn sigma() -> DensityMatrix {
    mixture(
        &[
            (1.0 / 6.0, two(0, 0)),
            (2.0 / 6.0, two(0, 1)),
            (3.0 / 6.0, kron_vec(&ket(2, 1), &plus(2))),
        ],
        qubits(),
    )
}

/// `|φ><φ|/2 + (|01><01| + |10><10|)/4`
pub fn sigma_prime() -> DensityMatrix {
    mixture(
        &[(0.5, phi_plus()), (0.25, two(0, 1)), (0.25, two(1, 0))],
        qubits(),
    )
}

/// `|φ><φ|/4 + 3(|01><01| + |10><10|)/8`
pub fn sigma_dprime() -> DensityMatrix {
    mixture(
        &[(0.25, phi_plus()), (0.375, two(0, 1)), (0.375, two(1, 0))],
        qubits(),
    )
}

/// Equal mixture of the three symmetric two-excitation vectors on 3x3.
pub fn tau() -> DensityMatrix {
    let dims = BipartiteDims { d_a: 3, d_b: 3 };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let pair = |i: usize, j: usize| -> Vec<Complex64> {
        let a = kron_vec(&ket(3, i), &ket(3, j));
        let b = kron_vec(&ket(3, j), &ket(3, i));
        a.iter().zip(b).map(|(x, y)| (x + y) * h).collect()
    };
    let third = 1.0 / 3.0;
    mixture(
        &[
            (third, pair(0, 1)),
            (third, pair(1, 2)),
            (third, pair(2, 0)),
        ],
        dims,
    )
}

/// `(|00><00| + |+2><+2| + |2+><2+| + |33><33|)/4` on 4x4.
pub fn zeta() -> DensityMatrix {
    let dims = BipartiteDims { d_a: 4, d_b: 4 };
    mixture(
        &[
            (0.25, kron_vec(&ket(4, 0), &ket(4, 0))),
            (0.25, kron_vec(&plus(4), &ket(4, 2))),
            (0.25, kron_vec(&ket(4, 2), &plus(4))),
            (0.25, kron_vec(&ket(4, 3), &ket(4, 3))),
        ],
        dims,
    )
}

/// `zeta` rotated by Haar-random local unitaries drawn from two seeds.
pub fn zeta_prime(seed_a: u64, seed_b: u64) -> DensityMatrix {
    let u_a = haar_unitary(4, &mut rng(seed_a));
    let u_b = haar_unitary(4, &mut rng(seed_b));
    zeta()
        .local_unitary(&u_a, &u_b)
        .expect("unitary conjugation keeps the state valid")
}

/// `sigma ⊗ sigma` over the AC|BD cut.
pub fn xi() -> DensityMatrix {
    tensor(&sigma(), &sigma())
}

/// `sigma'' ⊗ sigma''` over the AC|BD cut.
pub fn xi_prime() -> DensityMatrix {
    tensor(&sigma_dprime(), &sigma_dprime())
}

/// Two-party product regrouped so the first factors form A and the second B.
pub fn tensor(r1: &DensityMatrix, r2: &DensityMatrix) -> DensityMatrix {
    let (m, dims) =
        bipartite_tensor(r1.matrix(), r1.dims(), r2.matrix(), r2.dims()).expect("valid dims");
    DensityMatrix::new(m, dims).expect("product of states is a state")
}

pub fn bell_vector(n: usize) -> Vec<Complex64> {
    let s = 1.0 / (n as f64).sqrt();
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(s, 0.0);
    }
    v
}

/// `|Ψ><Ψ|` with `|Ψ> = Σ_i |ii>/√N`.
pub fn bell(n: usize) -> Result<DensityMatrix> {
    if n == 0 {
        return Err(Error::Domain("bell state needs N >= 1".into()));
    }
    DensityMatrix::pure(&bell_vector(n), BipartiteDims::new(n, n)?)
}

/// `√p|00> + √(1-p)|11>`
pub fn phi_p_vector(p: f64) -> Result<Vec<Complex64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("phi_p needs 0 <= p <= 1, got {p}")));
    }
    let mut v = vec![ZERO; 4];
    v[0] = Complex64::new(p.sqrt(), 0.0);
    v[3] = Complex64::new((1.0 - p).sqrt(), 0.0);
    Ok(v)
}

pub fn phi_p(p: f64) -> Result<DensityMatrix> {
    DensityMatrix::pure(&phi_p_vector(p)?, qubits())
}

/// Eigenvalues of `kappa`, unsorted. Its eigenvectors are the four Bell vectors.
pub fn kappa_eigenvalues(cx: f64, cy: f64, cz: f64) -> [f64; 4] {
    [
        (1.0 - cx - cy - cz) / 4.0,
        (1.0 - cx + cy + cz) / 4.0,
        (1.0 + cx - cy + cz) / 4.0,
        (1.0 + cx + cy - cz) / 4.0,
    ]
}

/// `(I⊗I + Σ_j c_j σ_j⊗σ_j)/4`
pub fn kappa(cx: f64, cy: f64, cz: f64) -> Result<DensityMatrix> {
    if let Some(e) = kappa_eigenvalues(cx, cy, cz).iter().find(|&&e| e < -1e-12) {
        return Err(Error::Domain(format!(
            "kappa({cx}, {cy}, {cz}) is not positive (eigenvalue {e})"
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let sx = ComplexMatrix::from_vec(2, vec![ZERO, ONE, ONE, ZERO])?;
    let sy = ComplexMatrix::from_vec(2, vec![ZERO, -i, i, ZERO])?;
    let sz = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
    let id = ComplexMatrix::identity(4);
    let mut m = id;
    for (c, s) in [(cx, &sx), (cy, &sy), (cz, &sz)] {
        m = &m + &crate::linalg::kron(s, s).scale_real(c);
    }
    DensityMatrix::new(m.scale_real(0.25), qubits())
}

pub fn maximally_mixed(dims: BipartiteDims) -> DensityMatrix {
    let n = dims.total();
    DensityMatrix::new(ComplexMatrix::identity(n).scale_real(1.0 / n as f64), dims).expect("valid")
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: Gram-Schmidt (i.e. QR with a positive real
/// diagonal in R) applied to the columns of a complex Ginibre matrix.
pub fn haar_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let ip = inner(q, &v);
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= ip * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j][i])
}

pub fn random_local_unitary(dims: BipartiteDims, seed: u64) -> (ComplexMatrix, ComplexMatrix) {
    let mut r = rng(seed);
    let u_a = haar_unitary(dims.d_a, &mut r);
    let u_b = haar_unitary(dims.d_b, &mut r);
    (u_a, u_b)
}

/// Ginibre ensemble: `G G† / Tr(G G†)` with `G` a (dA dB) x rank Gaussian matrix.
pub fn random_density(dims: BipartiteDims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = dims.total();
    if rank == 0 || rank > n {
        return Err(Error::Domain(format!(
            "rank must be in 1..={n}, got {rank}"
        )));
    }
    let mut r = rng(seed);
    let g: Vec<Vec<Complex64>> = (0..n)
        .map(|_| (0..rank).map(|_| gaussian(&mut r)).collect())
        .collect();
    let mut m = ComplexMatrix::from_fn(n, |i, j| {
        g[i].iter().zip(&g[j]).map(|(a, b)| a * b.conj()).sum()
    });
    let tr = m.trace().re;
    m = m.scale_real(1.0 / tr);
    DensityMatrix::new(m, dims)
}

/// Random unit vector on the bipartite space.
pub fn random_pure_vector(dims: BipartiteDims, seed: u64) -> Vec<Complex64> {
    let mut r = rng(seed);
    let mut v: Vec<Complex64> = (0..dims.total()).map(|_| gaussian(&mut r)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

/// Local orthonormal bases and weights `e_jk` of a product-eigenbasis state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductBasis {
    /// Columns are `|a_j>`.
    pub basis_a: Vec<Vec<Complex64>>,
    /// Columns are `|b_k>`.
    pub basis_b: Vec<Vec<Complex64>>,
    /// `weights[j][k]` is the eigenvalue on `|a_j>|b_k>`.
    pub weights: Vec<Vec<f64>>,
}

impl ProductBasis {
    /// `Σ e_jk |a_j><a_j| ⊗ |b_k><b_k|`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.basis_a.len() * self.basis_b.len();
        let mut m = ComplexMatrix::zeros(n);
        for (j, a) in self.basis_a.iter().enumerate() {
            for (k, b) in self.basis_b.iter().enumerate() {
                let w = self.weights[j][k];
                if w == 0.0 {
                    continue;
                }
                let v = kron_vec(a, b);
                m = &m + &ComplexMatrix::projector(&v).scale_real(w);
            }
        }
        m
    }
}

/// Product-eigenbasis state from explicit local unitaries and weights.
pub fn classical_from_parts(
    u_a: &ComplexMatrix,
    u_b: &ComplexMatrix,
    weights: &[Vec<f64>],
) -> Result<(DensityMatrix, ProductBasis)> {
    let dims = BipartiteDims::new(u_a.dim(), u_b.dim())?;
    let basis = ProductBasis {
        basis_a: (0..u_a.dim()).map(|j| u_a.column(j)).collect(),
        basis_b: (0..u_b.dim()).map(|k| u_b.column(k)).collect(),
        weights: weights.to_vec(),
    };
    if weights.len() != dims.d_a || weights.iter().any(|row| row.len() != dims.d_b) {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            actual: weights.iter().map(Vec::len).sum(),
        });
    }
    let rho = DensityMatrix::new(basis.reconstruct(), dims)?;
    Ok((rho, basis))
}

/// Haar-random local bases with flat-Dirichlet weights.
pub fn random_classical(dims: BipartiteDims, seed: u64) -> (DensityMatrix, ProductBasis) {
    let mut r = rng(seed);
    let u_a = haar_unitary(dims.d_a, &mut r);
    let u_b = haar_unitary(dims.d_b, &mut r);
    let raw: Vec<Vec<f64>> = (0..dims.d_a)
        .map(|_| (0..dims.d_b).map(|_| r.sample::<f64, _>(Exp1)).collect())
        .collect();
    let total: f64 = raw.iter().flatten().sum();
    let weights: Vec<Vec<f64>> = raw
        .iter()
        .map(|row| row.iter().map(|w| w / total).collect())
        .collect();
    classical_from_parts(&u_a, &u_b, &weights).expect("construction is a valid state")
}
