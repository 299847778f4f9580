//! Independent oracles for `M`.
//!
//! `exact` evaluates the measure from hand-derived eigendecompositions with
//! rational arithmetic (irrational entries only ever appear away from ties).
//! `numeric` re-derives every eigendecomposition with a standalone Jacobi
//! solver so random states can be checked without the library's eigensolver.

#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;
use num_rational::Rational64 as R;

pub fn r(n: i64, d: i64) -> R {
    R::new(n, d)
}

/// `a + b√c`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exact {
    Rat(R),
    Surd(R, R, i64),
}

fn rf(q: R) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

impl Exact {
    pub fn value(self) -> f64 {
        match self {
            Exact::Rat(q) => rf(q),
            Exact::Surd(a, b, c) => rf(a) + rf(b) * (c as f64).sqrt(),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Exact {
    Exact::Rat(r(n, d))
}

pub fn reps(x: Exact, k: usize) -> Vec<Exact> {
    vec![x; k]
}

/// One eigenspace: eigenvalue, multiplicity and the nonzero reduced spectra
/// of its truncated component.
#[derive(Debug, Clone)]
pub struct Cluster {
    pub eta: R,
    pub mult: i64,
    pub spec_a: Vec<Exact>,
    pub spec_b: Vec<Exact>,
}

pub fn cluster(eta: R, mult: i64, spec_a: Vec<Exact>, spec_b: Vec<Exact>) -> Cluster {
    Cluster {
        eta,
        mult,
        spec_a,
        spec_b,
    }
}

/// Nearest multiple of `y`, ties rounded down.
pub fn nim_exact(x: Exact, y: R) -> R {
    match x {
        Exact::Rat(q) => {
            let t = q / y;
            let fl = t.floor();
            if t - fl <= r(1, 2) {
                fl * y
            } else {
                (fl + 1) * y
            }
        }
        Exact::Surd(..) => {
            let t = x.value() / rf(y);
            let fl = t.floor();
            assert!(
                (t - fl - 0.5).abs() > 1e-6,
                "irrational value sits on a tie"
            );
            let k = if t - fl < 0.5 { fl } else { fl + 1.0 };
            y * R::from_integer(k as i64)
        }
    }
}

fn side_sum(clusters: &[Cluster], pick: impl Fn(&Cluster) -> &[Exact]) -> f64 {
    let mut total = 0.0;
    for c in clusters {
        let quota = rf(c.eta * c.mult);
        for &x in pick(c) {
            let y = nim_exact(x, c.eta);
            if x == Exact::Rat(y) {
                continue;
            }
            total += -(x.value() - rf(y)).abs() * (x.value() / quota).log2();
        }
    }
    total
}

/// `(M, M^A, M^B)`
pub fn exact_m(clusters: &[Cluster]) -> (f64, f64, f64) {
    let a = side_sum(clusters, |c| &c.spec_a);
    let b = side_sum(clusters, |c| &c.spec_b);
    ((a + b) / 2.0, a, b)
}

/// Product eigenvector of weight `eta`: both reduced spectra are `{eta}`.
fn product(eta: R) -> Cluster {
    cluster(eta, 1, vec![Exact::Rat(eta)], vec![Exact::Rat(eta)])
}

pub fn varsigma() -> Vec<Cluster> {
    // B: (|0><0| + |+><+|)/2 has eigenvalues (2 ± √2)/4
    vec![cluster(
        r(1, 2),
        2,
        reps(rat(1, 2), 2),
        vec![
            Exact::Surd(r(1, 2), r(1, 4), 2),
            Exact::Surd(r(1, 2), r(-1, 4), 2),
        ],
    )]
}

pub fn sigma() -> Vec<Cluster> {
    vec![product(r(1, 6)), product(r(1, 3)), product(r(1, 2))]
}

pub fn sigma_prime() -> Vec<Cluster> {
    vec![
        cluster(r(1, 2), 1, reps(rat(1, 4), 2), reps(rat(1, 4), 2)),
        cluster(r(1, 4), 2, reps(rat(1, 4), 2), reps(rat(1, 4), 2)),
    ]
}

pub fn sigma_dprime() -> Vec<Cluster> {
    vec![
        cluster(r(1, 4), 1, reps(rat(1, 8), 2), reps(rat(1, 8), 2)),
        cluster(r(3, 8), 2, reps(rat(3, 8), 2), reps(rat(3, 8), 2)),
    ]
}

pub fn tau() -> Vec<Cluster> {
    vec![cluster(r(1, 3), 3, reps(rat(1, 3), 3), reps(rat(1, 3), 3))]
}

pub fn zeta() -> Vec<Cluster> {
    // span{|0>,|1>} carries (|0><0| + |+><+|)/4
    let local = vec![
        Exact::Surd(r(1, 4), r(1, 8), 2),
        Exact::Surd(r(1, 4), r(-1, 8), 2),
        rat(1, 4),
        rat(1, 4),
    ];
    vec![cluster(r(1, 4), 4, local.clone(), local)]
}

/// `sigma ⊗ sigma`, A = AC, B = BD.
pub fn xi() -> Vec<Cluster> {
    // two eigenvectors whose B parts overlap with |<.|.>|^2 = 1/4 give
    // eigenvalues eta (1 ± 1/2)
    vec![
        product(r(1, 36)),
        cluster(r(1, 18), 2, vec![rat(1, 9)], reps(rat(1, 18), 2)),
        cluster(
            r(1, 12),
            2,
            reps(rat(1, 12), 2),
            vec![rat(1, 8), rat(1, 24)],
        ),
        product(r(1, 9)),
        cluster(r(1, 6), 2, reps(rat(1, 6), 2), vec![rat(1, 4), rat(1, 12)]),
        product(r(1, 4)),
    ]
}

/// `sigma'' ⊗ sigma''`
pub fn xi_prime() -> Vec<Cluster> {
    vec![
        cluster(r(1, 16), 1, reps(rat(1, 64), 4), reps(rat(1, 64), 4)),
        cluster(r(3, 32), 4, reps(rat(3, 32), 4), reps(rat(3, 32), 4)),
        cluster(r(9, 64), 4, reps(rat(9, 64), 4), reps(rat(9, 64), 4)),
    ]
}

pub fn bell(n: i64) -> Vec<Cluster> {
    vec![cluster(
        r(1, 1),
        1,
        reps(rat(1, n), n as usize),
        reps(rat(1, n), n as usize),
    )]
}

pub fn phi_p(p: R) -> Vec<Cluster> {
    let spec: Vec<Exact> = [p, R::from_integer(1) - p]
        .into_iter()
        .filter(|q| *q != R::from_integer(0))
        .map(Exact::Rat)
        .collect();
    vec![cluster(r(1, 1), 1, spec.clone(), spec)]
}

/// The eigenvectors are Bell vectors, whose reduced states are maximally
/// mixed; `k` of them with weight `eta` reduce to `{eta k/2, eta k/2}`.
pub fn kappa(c: [R; 3]) -> Vec<Cluster> {
    let one = R::from_integer(1);
    let quarter = r(1, 4);
    let vals = [
        (one - c[0] - c[1] - c[2]) * quarter,
        (one - c[0] + c[1] + c[2]) * quarter,
        (one + c[0] - c[1] + c[2]) * quarter,
        (one + c[0] + c[1] - c[2]) * quarter,
    ];
    let mut distinct: Vec<R> = vals
        .iter()
        .copied()
        .filter(|v| *v != R::from_integer(0))
        .collect();
    distinct.sort();
    distinct.dedup();
    distinct
        .into_iter()
        .map(|eta| {
            let k = vals.iter().filter(|&&v| v == eta).count() as i64;
            let half = Exact::Rat(eta * k * r(1, 2));
            cluster(eta, k, vec![half, half], vec![half, half])
        })
        .collect()
}

// ---------------------------------------------------------------------------
// numeric oracle

/// Cyclic Jacobi on a real symmetric matrix. Returns eigenvalues and
/// eigenvectors as columns, unsorted.
pub fn jacobi(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Eigenpairs of a Hermitian matrix via its real `2n x 2n` embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is the complex one doubled.
/// Assumes the complex spectrum is simple, as it is for generic states.
pub fn hermitian_pairs(h: &[Vec<Complex64>]) -> Vec<(f64, Vec<Complex64>)> {
    let n = h.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = h[i][j].re;
            big[i][j + n] = -h[i][j].im;
            big[i + n][j] = h[i][j].im;
            big[i + n][j + n] = h[i][j].re;
        }
    }
    let (vals, vecs) = jacobi(big);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&x, &y| vals[x].total_cmp(&vals[y]));
    order
        .chunks(2)
        .map(|pair| {
            let k = pair[0];
            let mut v: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(vecs[i][k], vecs[i + n][k]))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|z| *z /= norm);
            (vals[k], v)
        })
        .collect()
}

/// `M` of a state with a simple nonzero spectrum, from the matrix entries.
pub fn numeric_m(rho: &[Vec<Complex64>], da: usize, db: usize) -> (f64, f64, f64) {
    let mut sides = [0.0, 0.0];
    for (eta, v) in hermitian_pairs(rho) {
        if eta <= 1e-10 {
            continue;
        }
        let red_a: Vec<Vec<Complex64>> = (0..da)
            .map(|i| {
                (0..da)
                    .map(|k| {
                        (0..db)
                            .map(|b| v[i * db + b] * v[k * db + b].conj())
                            .sum::<Complex64>()
                            * eta
                    })
                    .collect()
            })
            .collect();
        let red_b: Vec<Vec<Complex64>> = (0..db)
            .map(|j| {
                (0..db)
                    .map(|k| {
                        (0..da)
                            .map(|a| v[a * db + j] * v[a * db + k].conj())
                            .sum::<Complex64>()
                            * eta
                    })
                    .collect()
            })
            .collect();
        for (side, red) in [red_a, red_b].iter().enumerate() {
            let vals: Vec<f64> = jacobi_values(red);
            for x in vals.into_iter().filter(|&x| x > 1e-10) {
                let t = x / eta;
                let fl = t.floor();
                let y = if t - fl <= 0.5 { fl } else { fl + 1.0 } * eta;
                sides[side] += -(x - y).abs() * (x / eta).log2();
            }
        }
    }
    ((sides[0] + sides[1]) / 2.0, sides[0], sides[1])
}

/// Eigenvalues of a Hermitian matrix, tolerant of degeneracy.
pub fn jacobi_values(h: &[Vec<Complex64>]) -> Vec<f64> {
    let n = h.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = h[i][j].re;
            big[i][j + n] = -h[i][j].im;
            big[i + n][j] = h[i][j].im;
            big[i + n][j + n] = h[i][j].re;
        }
    }
    let (mut vals, _) = jacobi(big);
    vals.sort_by(f64::total_cmp);
    vals.into_iter().step_by(2).collect()
}

pub fn rows(m: &nonclassical::ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.dim()).map(|i| m.row(i).to_vec()).collect()
}

/// `-min(p, 1-p) log2(p (1-p))`, zero at the endpoints.
pub fn phi_p_closed_form(p: f64) -> f64 {
    let q = 1.0 - p;
    if p <= 0.0 || q <= 0.0 {
        0.0
    } else {
        -p.min(q) * (p * q).log2()
    }
}
