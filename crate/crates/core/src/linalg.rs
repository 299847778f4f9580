//! Dense complex matrices and the bipartite operations built on them.
//!
//! Storage is row-major. A composite index of a bipartite system is
//! `i = a * d_b + b`, i.e. subsystem A is the major index everywhere.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which subsystem of a bipartite split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::A => f.write_str("A"),
            Side::B => f.write_str("B"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub d_a: usize,
    pub d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::Malformed(format!(
                "subsystem dimensions must be positive, got {d_a}x{d_b}"
            )));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn side(&self, side: Side) -> usize {
        match side {
            Side::A => self.d_a,
            Side::B => self.d_b,
        }
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.total() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.total(),
                actual: dim,
            });
        }
        Ok(())
    }
}

/// Square dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|v><v|`
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest |m[i][j] - conj(m[j][i])|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(m + m†) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Frobenius norm of the part off the main diagonal.
    pub fn offdiagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn diagonal_real(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `u m u†`
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        &(u * self) * &u.adjoint()
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rrow = &rhs.data[k * n..(k + 1) * n];
                let orow = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on a bipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: BipartiteDims,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        Self::with_tolerances(mat, dims, &Tolerances::default())
    }

    /// Validates the density-matrix invariants and stores the exact
    /// Hermitian part of `mat`.
    pub fn with_tolerances(
        mat: ComplexMatrix,
        dims: BipartiteDims,
        tol: &Tolerances,
    ) -> Result<Self> {
        dims.check(mat.dim())?;
        let defect = mat.hermiticity_defect();
        if !(defect <= tol.herm) {
            return Err(Error::Malformed(format!(
                "matrix is not Hermitian (defect {defect:e} > {:e})",
                tol.herm
            )));
        }
        let mat = mat.hermitian_part();
        let tr = mat.trace().re;
        if !((tr - 1.0).abs() <= tol.trace) {
            return Err(Error::Malformed(format!("trace is {tr}, expected 1")));
        }
        let eig = hermitian_eig(&mat, tol)?;
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::Malformed(format!(
                "matrix is not positive semidefinite (eigenvalue {min:e})"
            )));
        }
        Ok(Self { mat, dims })
    }

    /// `|v><v|` for a unit vector.
    pub fn pure(v: &[Complex64], dims: BipartiteDims) -> Result<Self> {
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "state vector has norm {norm}, expected 1"
            )));
        }
        Self::new(ComplexMatrix::projector(v), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn reduced(&self, keep: Side) -> ComplexMatrix {
        partial_trace(&self.mat, self.dims, keep).expect("dims validated on construction")
    }

    pub fn partial_transpose(&self, side: Side) -> ComplexMatrix {
        partial_transpose(&self.mat, self.dims, side).expect("dims validated on construction")
    }

    /// `(u_a ⊗ u_b) ρ (u_a ⊗ u_b)†`
    pub fn local_unitary(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        if u_a.dim() != self.dims.d_a || u_b.dim() != self.dims.d_b {
            return Err(Error::DimensionMismatch {
                expected: self.dims.total(),
                actual: u_a.dim() * u_b.dim(),
            });
        }
        let u = kron(u_a, u_b);
        Self::new(self.mat.conjugate_by(&u), self.dims)
    }
}

/// `result[(i*db + k, j*db + l)] = a[i][j] * b[k][l]`
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let db = b.dim();
    ComplexMatrix::from_fn(a.dim() * db, |r, c| {
        a[(r / db, c / db)] * b[(r % db, c % db)]
    })
}

pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// `Tr_B m` for `keep = A`, `Tr_A m` for `keep = B`.
pub fn partial_trace(m: &ComplexMatrix, dims: BipartiteDims, keep: Side) -> Result<ComplexMatrix> {
    dims.check(m.dim())?;
    let (da, db) = (dims.d_a, dims.d_b);
    Ok(match keep {
        Side::A => ComplexMatrix::from_fn(da, |a, a2| {
            (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
        }),
        Side::B => ComplexMatrix::from_fn(db, |b, b2| {
            (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
        }),
    })
}

/// Transposes the indices of `side`, leaving the other subsystem alone.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: BipartiteDims,
    side: Side,
) -> Result<ComplexMatrix> {
    dims.check(m.dim())?;
    let db = dims.d_b;
    Ok(ComplexMatrix::from_fn(m.dim(), |r, c| {
        let (a, b) = (r / db, r % db);
        let (a2, b2) = (c / db, c % db);
        match side {
            Side::B => m[(a * db + b2, a2 * db + b)],
            Side::A => m[(a2 * db + b, a * db + b2)],
        }
    }))
}

/// Reduced matrix of `weight * Σ_k |v_k><v_k|` computed straight from the
/// vectors, without forming the full projector.
pub fn reduced_from_vectors(
    vectors: &[Vec<Complex64>],
    weight: f64,
    dims: BipartiteDims,
    keep: Side,
) -> ComplexMatrix {
    let (da, db) = (dims.d_a, dims.d_b);
    let mut out = ComplexMatrix::zeros(dims.side(keep));
    for v in vectors {
        debug_assert_eq!(v.len(), dims.total());
        match keep {
            Side::A => {
                for a in 0..da {
                    for a2 in 0..da {
                        let s: Complex64 =
                            (0..db).map(|b| v[a * db + b] * v[a2 * db + b].conj()).sum();
                        out[(a, a2)] += s;
                    }
                }
            }
            Side::B => {
                for b in 0..db {
                    for b2 in 0..db {
                        let s: Complex64 =
                            (0..da).map(|a| v[a * db + b] * v[a * db + b2].conj()).sum();
                        out[(b, b2)] += s;
                    }
                }
            }
        }
    }
    out.scale_real(weight)
}

/// Tensor product of two bipartite operators regrouped as (A1 A2)|(B1 B2).
///
/// `kron` would order the factors A1 B1 A2 B2; this is the same matrix with
/// the middle two subsystems swapped, which is what a measure over the joint
/// cut needs.
pub fn bipartite_tensor(
    m1: &ComplexMatrix,
    d1: BipartiteDims,
    m2: &ComplexMatrix,
    d2: BipartiteDims,
) -> Result<(ComplexMatrix, BipartiteDims)> {
    d1.check(m1.dim())?;
    d2.check(m2.dim())?;
    let dims = BipartiteDims::new(d1.d_a * d2.d_a, d1.d_b * d2.d_b)?;
    let split = |i: usize| {
        let (a, b) = (i / dims.d_b, i % dims.d_b);
        let (a1, a2) = (a / d2.d_a, a % d2.d_a);
        let (b1, b2) = (b / d2.d_b, b % d2.d_b);
        (a1 * d1.d_b + b1, a2 * d2.d_b + b2)
    };
    let m = ComplexMatrix::from_fn(dims.total(), |r, c| {
        let (r1, r2) = split(r);
        let (c1, c2) = split(c);
        m1[(r1, c1)] * m2[(r2, c2)]
    });
    Ok((m, dims))
}

/// Eigenvalues in ascending order with their orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl EigenSystem {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut m = ComplexMatrix::zeros(n);
        for (&val, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj() * val;
                }
            }
        }
        m
    }

    /// Largest deviation of `<v_i|v_j>` from the Kronecker delta.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate().skip(i) {
                let ip = inner(u, v);
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

/// `<u|v>`
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn hermitian_eig(m: &ComplexMatrix, tol: &Tolerances) -> Result<EigenSystem> {
    let defect = m.hermiticity_defect();
    if !(defect <= tol.herm) {
        return Err(Error::Malformed(format!(
            "eigensolver input is not Hermitian (defect {defect:e})"
        )));
    }
    let n = m.dim();
    if n == 0 {
        return Ok(EigenSystem {
            values: vec![],
            vectors: vec![],
        });
    }
    let h = m.hermitian_part().to_nalgebra();
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, 1000 * n.max(10)).ok_or_else(|| {
        Error::Numeric(format!("Hermitian eigensolver did not converge (dim {n})"))
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .total_cmp(&eig.eigenvalues[j])
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    Ok(hermitian_eig(m, tol)?.values)
}

/// `‖ab − ba‖_F`
pub fn commutator_fro_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok((&(a * b) - &(b * a)).frobenius_norm())
}
