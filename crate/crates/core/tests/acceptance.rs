//! Acceptance criteria, one line of output per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use nonclassical::bench::{bench_measure_m, loglog_slope};
use nonclassical::detect::{classify, detect_commutator, Outcome, Test, Verdict};
use nonclassical::linalg::{hermitian_eigenvalues, kron_vec, BipartiteDims, DensityMatrix, Side};
use nonclassical::measures::{measure_g, measure_m, schmidt, von_neumann_entropy};
use nonclassical::states::{self, StateSpec};
use nonclassical::sweep::{sweep, Family};
use nonclassical::Tolerances;

use common::{r, Cluster};

/// Values printed to three decimals.
const PRINTED: f64 = 5e-4;
/// Exact rationals and surds.
const EXACT: f64 = 1e-9;
const LOCAL_UNITARY: f64 = 1e-7;
const CLASSICAL: f64 = 1e-8;
const PURE_BOUND: f64 = 1e-9;
const MAX_SLOPE: f64 = 6.8;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn tol() -> Tolerances {
    Tolerances::default()
}

fn close(what: &str, got: f64, want: f64, eps: f64) -> Check {
    if (got - want).abs() <= eps {
        Ok(())
    } else {
        Err(format!("{what}: got {got:.12}, want {want:.12} (±{eps:e})"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m_of(rho: &DensityMatrix) -> Result<nonclassical::MeasureReport, String> {
    measure_m(rho, &tol()).map_err(|e| e.to_string())
}

fn binary_entropy(x: f64) -> f64 {
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn c01_varsigma() -> Check {
    let rep = m_of(&states::varsigma())?;
    close("M", rep.m, 0.220, PRINTED)?;
    close("M^A", rep.m_a, 0.0, EXACT)?;
    close("M^B", rep.m_b, 0.439, PRINTED)?;
    close("M - M^B/2", rep.m - rep.m_b / 2.0, 0.0, EXACT)
}

fn c02_zeta_prime() -> Check {
    for (sa, sb) in [(1, 2), (101, 202), (77_777, 31_337)] {
        let rep = m_of(&states::zeta_prime(sa, sb))?;
        close(&format!("M(seeds {sa},{sb})"), rep.m, 0.366, PRINTED)?;
        close(
            &format!("M^A - M^B (seeds {sa},{sb})"),
            rep.m_a - rep.m_b,
            0.0,
            EXACT,
        )?;
    }
    Ok(())
}

fn c03_sigma() -> Check {
    let rho = states::sigma();
    close("M", m_of(&rho)?.m, 0.0, EXACT)?;
    let g = measure_g(&rho, &tol()).map_err(|e| e.to_string())?.g;
    let want = binary_entropy(1.0 / 3.0) - binary_entropy((6.0 - 10f64.sqrt()) / 12.0);
    close("G closed form", g, want, EXACT)?;
    close("G printed", g, 0.1287, PRINTED)
}

fn c04_sigma_prime() -> Check {
    let rho = states::sigma_prime();
    close("M", m_of(&rho)?.m, 0.5, EXACT)?;
    close(
        "G",
        measure_g(&rho, &tol()).map_err(|e| e.to_string())?.g,
        0.0,
        EXACT,
    )
}

fn c05_tau() -> Check {
    let rho = states::tau();
    close("M", m_of(&rho)?.m, 0.0, EXACT)?;
    let pt = hermitian_eigenvalues(&rho.partial_transpose(Side::B), &tol())
        .map_err(|e| e.to_string())?;
    let want = [
        -1.0 / 6.0,
        -1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 3.0,
    ];
    for (k, (g, w)) in pt.iter().zip(want).enumerate() {
        close(&format!("PT eigenvalue {k}"), *g, w, EXACT)?;
    }
    let v = classify(&rho, &tol()).map_err(|e| e.to_string())?;
    ensure(
        v.verdict == Verdict::Nonclassical && v.decided_by == Some(Test::PartialTranspose),
        || format!("classify(τ) = {:?} via {:?}", v.verdict, v.decided_by),
    )
}

fn c06_additivity() -> Check {
    let rep = m_of(&states::xi())?;
    close("M(ξ)", rep.m, 0.151, PRINTED)?;
    close("M^BD(ξ)", rep.m_b, 0.302, PRINTED)?;
    close(
        "M^BD(ξ) closed form",
        rep.m_b,
        0.25 + (4f64 / 3.0).log2() / 8.0,
        EXACT,
    )?;
    close("M^AC(ξ)", rep.m_a, 0.0, EXACT)?;
    close("M(σ'')", m_of(&states::sigma_dprime())?.m, 0.25, EXACT)?;
    close("M(ξ')", m_of(&states::xi_prime())?.m, 0.125, EXACT)
}

fn c07_bell_upper_bound() -> Check {
    for n in 2..=8 {
        let rho = states::bell(n).map_err(|e| e.to_string())?;
        close(
            &format!("M(Bell {n})"),
            m_of(&rho)?.m,
            (n as f64).log2(),
            EXACT,
        )?;
    }
    for k in 0..100u64 {
        let n = [2usize, 3, 4][(k % 3) as usize];
        let dims = BipartiteDims::new(n, n).unwrap();
        let rank = 1 + (k as usize * 7) % dims.total();
        let rho = states::random_density(dims, rank, 5_000 + k).map_err(|e| e.to_string())?;
        let m = m_of(&rho)?.m;
        ensure(m <= (n as f64).log2() + EXACT, || {
            format!("seed {k}: M = {m} > log2 {n}")
        })?;
    }
    Ok(())
}

fn c08_pure_states() -> Check {
    let mut equality_cases = 0;
    for d in [2usize, 3, 4] {
        let dims = BipartiteDims::new(d, d).unwrap();
        for k in 0..200u64 {
            let v = states::random_pure_vector(dims, 10_000 * d as u64 + k);
            let rho = DensityMatrix::pure(&v, dims).map_err(|e| e.to_string())?;
            let m = m_of(&rho)?.m;
            let sd = schmidt(&v, dims, &tol()).map_err(|e| e.to_string())?;
            let s =
                von_neumann_entropy(&rho.reduced(Side::A), &tol()).map_err(|e| e.to_string())?;
            ensure(m <= s + PURE_BOUND, || {
                format!("{d}x{d} seed {k}: M = {m} > S = {s}")
            })?;
            if sd
                .coefficients
                .iter()
                .all(|c| *c <= std::f64::consts::FRAC_1_SQRT_2)
            {
                equality_cases += 1;
                close(&format!("{d}x{d} seed {k}: M = S"), m, s, PURE_BOUND)?;
            }
            ensure((m > tol().measure) == (sd.rank() >= 2), || {
                format!("{d}x{d} seed {k}: M = {m}, rank {}", sd.rank())
            })?;

            // product counterpart: Schmidt rank one
            let mut g = states::rng(20_000 * d as u64 + k);
            let a = states::haar_unitary(d, &mut g).column(0);
            let b = states::haar_unitary(d, &mut g).column(0);
            let prod = kron_vec(&a, &b);
            let rho = DensityMatrix::pure(&prod, dims).map_err(|e| e.to_string())?;
            let m = m_of(&rho)?.m;
            let rank = schmidt(&prod, dims, &tol())
                .map_err(|e| e.to_string())?
                .rank();
            ensure(rank == 1 && m <= tol().measure, || {
                format!("{d}x{d} product seed {k}: M = {m}, rank {rank}")
            })?;
        }
    }
    ensure(equality_cases > 0, || {
        "no sampled state had all Schmidt coefficients <= 1/sqrt 2".into()
    })
}

fn c09_local_unitary_invariance() -> Check {
    for k in 0..50u64 {
        let (da, db) = [(2, 2), (2, 3), (3, 3), (3, 2), (4, 2)][(k % 5) as usize];
        let dims = BipartiteDims::new(da, db).unwrap();
        let rank = 1 + (k as usize * 5) % dims.total();
        let rho = states::random_density(dims, rank, 30_000 + k).map_err(|e| e.to_string())?;
        let (ua, ub) = states::random_local_unitary(dims, 40_000 + k);
        let moved = rho.local_unitary(&ua, &ub).map_err(|e| e.to_string())?;
        let (m0, m1) = (m_of(&rho)?.m, m_of(&moved)?.m);
        ensure((m0 - m1).abs() <= LOCAL_UNITARY, || {
            format!("seed {k}: |ΔM| = {:e}", (m0 - m1).abs())
        })?;
    }
    Ok(())
}

fn c10_classical_vanishing() -> Check {
    for k in 0..200u64 {
        let (da, db) = [(2, 2), (2, 3), (3, 2), (3, 3)][(k % 4) as usize];
        let (rho, _) = states::random_classical(BipartiteDims::new(da, db).unwrap(), 50_000 + k);
        let m = m_of(&rho)?.m;
        ensure(m <= CLASSICAL, || format!("seed {k}: M = {m:e}"))?;
        let g = measure_g(&rho, &tol()).map_err(|e| e.to_string())?.g;
        ensure(g <= CLASSICAL, || format!("seed {k}: G = {g:e}"))?;
        let v = classify(&rho, &tol()).map_err(|e| e.to_string())?;
        ensure(v.verdict != Verdict::Nonclassical, || {
            format!("seed {k}: NONCLASSICAL via {:?}", v.decided_by)
        })?;
    }
    Ok(())
}

fn c11_phi_p_sweep() -> Check {
    let rows = sweep(Family::PhiP, 0.0, 1.0, 201, &tol()).map_err(|e| e.to_string())?;
    ensure(rows.len() == 201, || format!("{} rows", rows.len()))?;
    for row in &rows {
        let p = row.param;
        close(
            &format!("closed form at p = {p}"),
            row.m,
            common::phi_p_closed_form(p),
            EXACT,
        )?;
        // brute-force evaluation of the measure from the Schmidt spectrum
        let brute = common::numeric_m(&common::rows(states::phi_p(p).unwrap().matrix()), 2, 2).0;
        close(&format!("brute force at p = {p}"), row.m, brute, EXACT)?;
        ensure(row.m <= row.s_vn + EXACT, || {
            format!("p = {p}: M = {} > S = {}", row.m, row.s_vn)
        })?;
    }
    let peak = rows.iter().map(|r| r.m).fold(f64::NEG_INFINITY, f64::max);
    close("M(1/2)", rows[100].m, 1.0, EXACT)?;
    close("peak", peak, 1.0, EXACT)?;
    close("M(0)", rows[0].m, 0.0, EXACT)?;
    close("M(1)", rows[200].m, 0.0, EXACT)
}

fn c12_oracle() -> Check {
    let cases: Vec<(String, DensityMatrix, Vec<Cluster>)> = vec![
        ("varsigma".into(), states::varsigma(), common::varsigma()),
        ("sigma".into(), states::sigma(), common::sigma()),
        (
            "sigma_prime".into(),
            states::sigma_prime(),
            common::sigma_prime(),
        ),
        (
            "sigma_dprime".into(),
            states::sigma_dprime(),
            common::sigma_dprime(),
        ),
        ("tau".into(), states::tau(), common::tau()),
        ("zeta".into(), states::zeta(), common::zeta()),
        (
            "zeta_prime".into(),
            states::zeta_prime(9, 10),
            common::zeta(),
        ),
        ("xi".into(), states::xi(), common::xi()),
        ("xi_prime".into(), states::xi_prime(), common::xi_prime()),
    ];
    let mut cases = cases;
    for n in 2..=5 {
        cases.push((
            format!("bell {n}"),
            states::bell(n as usize).unwrap(),
            common::bell(n),
        ));
    }
    for (n, d) in [(1, 3), (1, 2), (2, 7), (9, 10), (0, 1)] {
        let p = n as f64 / d as f64;
        cases.push((
            format!("phi_p {n}/{d}"),
            states::phi_p(p).unwrap(),
            common::phi_p(r(n, d)),
        ));
    }
    for c in [
        [r(1, 5), r(1, 5), r(1, 5)],
        [r(1, 2), r(-1, 4), r(1, 8)],
        [r(1, 1), r(-1, 1), r(1, 1)],
        [r(1, 3), r(1, 3), r(-1, 3)],
        [r(0, 1); 3],
    ] {
        let f = |q: num_rational::Rational64| *q.numer() as f64 / *q.denom() as f64;
        let rho = states::kappa(f(c[0]), f(c[1]), f(c[2])).map_err(|e| e.to_string())?;
        cases.push((format!("kappa {c:?}"), rho, common::kappa(c)));
    }
    for (name, rho, clusters) in &cases {
        let rep = m_of(rho)?;
        let (m, ma, mb) = common::exact_m(clusters);
        close(&format!("{name} M"), rep.m, m, EXACT)?;
        close(&format!("{name} M^A"), rep.m_a, ma, EXACT)?;
        close(&format!("{name} M^B"), rep.m_b, mb, EXACT)?;
    }
    // catalog builder agrees with the named constructors
    for name in [
        "varsigma",
        "sigma",
        "sigma_prime",
        "sigma_dprime",
        "tau",
        "zeta",
        "xi",
        "xi_prime",
    ] {
        let built = states::build(&StateSpec::named(name)).map_err(|e| e.to_string())?;
        let (_, _, clusters) = cases.iter().find(|(n, _, _)| n == name).unwrap();
        close(
            &format!("build({name})"),
            m_of(&built)?.m,
            common::exact_m(clusters).0,
            EXACT,
        )?;
    }
    // random states against the standalone Jacobi evaluation
    for k in 0..12u64 {
        let (da, db) = [(2, 2), (2, 3), (3, 2), (3, 3)][(k % 4) as usize];
        let dims = BipartiteDims::new(da, db).unwrap();
        let spec = StateSpec::named("random")
            .param("dA", da as f64)
            .param("dB", db as f64)
            .param("rank", (1 + k as usize % dims.total()) as f64)
            .seed(60_000 + k);
        let rho = states::build(&spec).map_err(|e| e.to_string())?;
        let (m, ma, mb) = common::numeric_m(&common::rows(rho.matrix()), da, db);
        let rep = m_of(&rho)?;
        close(&format!("random seed {k} M"), rep.m, m, EXACT)?;
        close(&format!("random seed {k} M^A"), rep.m_a, ma, EXACT)?;
        close(&format!("random seed {k} M^B"), rep.m_b, mb, EXACT)?;
        let spec = StateSpec::named("random_classical")
            .param("dA", da as f64)
            .param("dB", db as f64)
            .seed(70_000 + k);
        let rho = states::build(&spec).map_err(|e| e.to_string())?;
        close(
            &format!("random_classical seed {k}"),
            m_of(&rho)?.m,
            0.0,
            EXACT,
        )?;
    }
    Ok(())
}

fn c13_bench_slope() -> Check {
    let rows = bench_measure_m(&[2, 4, 8, 16], 5, 2024, &tol()).map_err(|e| e.to_string())?;
    let slope = loglog_slope(&rows).ok_or("no slope")?;
    let table: Vec<String> = rows
        .iter()
        .map(|r| format!("N={} {:.3e}s", r.n, r.min_seconds))
        .collect();
    ensure(slope <= MAX_SLOPE, || {
        format!("slope {slope:.3} > {MAX_SLOPE} ({})", table.join(", "))
    })?;
    println!("      log-log slope {slope:.3} ({})", table.join(", "));
    Ok(())
}

fn c14_detection() -> Check {
    let v = classify(&states::sigma(), &tol()).map_err(|e| e.to_string())?;
    ensure(
        v.verdict == Verdict::Nonclassical && v.decided_by == Some(Test::NondegenerateGlobal),
        || format!("classify(σ) = {:?} via {:?}", v.verdict, v.decided_by),
    )?;
    let v = classify(&states::varsigma(), &tol()).map_err(|e| e.to_string())?;
    ensure(
        v.verdict == Verdict::Nonclassical && v.decided_by == Some(Test::LocalOneNondegenerate),
        || format!("classify(ς) = {:?} via {:?}", v.verdict, v.decided_by),
    )?;
    for n in 2..=4 {
        let f = detect_commutator(&states::bell(n).unwrap(), &tol()).map_err(|e| e.to_string())?;
        ensure(f.outcome() == Outcome::Inconclusive, || {
            format!("commutator on Bell {n}: {:?}", f.outcome())
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (
            "M(varsigma) = 0.220 with M^A = 0, M^B = 0.439",
            c01_varsigma,
        ),
        (
            "M(zeta') = 0.366 with M^A = M^B for three seeds",
            c02_zeta_prime,
        ),
        (
            "M(sigma) = 0 and G(sigma) = H(1/3) - H((6-sqrt10)/12)",
            c03_sigma,
        ),
        ("M(sigma') = 1/2 and G(sigma') = 0", c04_sigma_prime),
        (
            "M(tau) = 0, partial-transpose spectrum, NPT verdict",
            c05_tau,
        ),
        ("non-additivity on xi, sigma'', xi'", c06_additivity),
        (
            "Bell states reach log2 N; random states stay below",
            c07_bell_upper_bound,
        ),
        (
            "pure states: M <= S, equality regime, support",
            c08_pure_states,
        ),
        ("local-unitary invariance", c09_local_unitary_invariance),
        (
            "vanishing on product-eigenbasis states",
            c10_classical_vanishing,
        ),
        (
            "phi_p sweep against closed form and entropy",
            c11_phi_p_sweep,
        ),
        ("catalog against independent oracles", c12_oracle),
        ("runtime slope of M in N", c13_bench_slope),
        ("detection regression", c14_detection),
    ];
    let mut failed = 0;
    for (k, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS #{:<2} {label} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL #{:<2} {label}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
