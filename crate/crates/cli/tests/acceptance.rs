//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p lexrank-cli --test acceptance -- --nocapture` to see
//! the report.

mod common;

use std::time::{Duration, Instant};

use common::{code, json_stdout, lexrank};
use lexrank_core::kronecker::{KroneckerOracle, OracleBudget};
use lexrank_core::lr::{lr_positive, LrQuery};
use lexrank_core::partition::{cmp_dominance, cmp_lex, enumerate_partitions};
use lexrank_core::quantum::{
    construct, extremality_check, numerical_rank, psi_basis, rank_bounds, schur_check, spectrum, weight_for_rank,
    Complex64, ComplexMatrix, DensityOperator, Mode, Tolerances,
};
use lexrank_core::strip_type::{counterexample_n_nplus1, counterexample_two_by_m, max_lex_spectrum};
use lexrank_core::sweep::{construction_sweep, maxlex_cross_check};
use lexrank_core::{Execution, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn oracle() -> KroneckerOracle {
    KroneckerOracle::new(OracleBudget { single: 20, sweep: 14 })
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn strip_type_reproduction() -> Outcome {
    let start = Instant::now();
    let out = lexrank(&["striptype", "[2^5]", "[5^2]"]);
    let elapsed = start.elapsed();
    if code(&out) != 0 {
        return outcome(false, String::from_utf8_lossy(&out.stderr));
    }
    let v = json_stdout(&out);
    let lam_chain = json!([[2, 2, 2, 2, 2], [2, 2, 2], [2], [1], []]);
    let mu_chain = json!([[5, 5], [3, 3], [1, 1], [1], []]);
    let ok = v["nu"] == json!([4, 4, 1, 1]) && v["lambda_chain"] == lam_chain && v["mu_chain"] == mu_chain;
    outcome(ok && within(elapsed, Duration::from_secs(1)), format!("nu = {}, {elapsed:.2?}", v["nu"]))
}

fn kronecker_unit_value() -> Outcome {
    let start = Instant::now();
    let g = oracle().coefficient(&Partition::rectangle(2, 5), &Partition::rectangle(5, 2), &p(&[4, 4, 1, 1]));
    let elapsed = start.elapsed();
    match g {
        Ok(g) => outcome(g == 1 && within(elapsed, Duration::from_secs(5)), format!("g = {g}, {elapsed:.2?}")),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn counterexample_two_by_five() -> Outcome {
    let start = Instant::now();
    let r = match counterexample_two_by_m(5, &oracle()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let bound = rank_bounds(2, 5).unwrap().lower;
    let ok = r.maxlex_rank == 4
        && r.witness_gamma == p(&[4, 3, 3])
        && r.witness_g == Some(1)
        && r.witness_gamma.length() == 3
        && bound == 3
        && r.refutes_conjecture
        && within(elapsed, Duration::from_secs(10));
    outcome(
        ok,
        format!(
            "max-lex {} rank {}, witness {} rank {} g {:?}, {elapsed:.2?}",
            r.maxlex_nu,
            r.maxlex_rank,
            r.witness_gamma,
            r.witness_gamma.length(),
            r.witness_g
        ),
    )
}

fn counterexample_adjacent() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for n in [2usize, 3] {
        let start = Instant::now();
        let r = match counterexample_n_nplus1(n, &oracle()) {
            Ok(r) => r,
            Err(e) => return outcome(false, e.to_string()),
        };
        let elapsed = start.elapsed();
        let half = n * (n + 1) / 2;
        ok &= r.maxlex_rank == n + 1
            && r.witness_gamma == p(&[half, half])
            && r.witness_g.is_some_and(|g| g >= 1)
            && r.witness_gamma.length() == 2
            && rank_bounds(n, n + 1).unwrap().lower == 2
            && r.rank_gap() == n - 1
            && r.refutes_conjecture
            && within(elapsed, Duration::from_secs(60));
        details.push(format!("n={n}: rank {} vs 2, g {:?}, {elapsed:.2?}", r.maxlex_rank, r.witness_g));
    }
    outcome(ok, details.join("; "))
}

fn max_lex_cross_check() -> Outcome {
    match maxlex_cross_check(12, &oracle()) {
        Ok((count, bad)) => outcome(bad.is_empty(), format!("{} of {count} pairs agree", count - bad.len())),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn construction_ranges() -> Outcome {
    let tol = Tolerances::default();
    let cases = match construction_sweep(36, &tol, Execution::default()) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let failures = cases.iter().filter(|c| !c.passed(&tol)).count();
    let mut lower_ok = true;
    for (n, m) in [(2, 4), (3, 6), (2, 6)] {
        let lower = rank_bounds(n, m).unwrap().lower;
        let rank = construct(n, m, lower, Mode::Divisible)
            .and_then(|(_, rho)| numerical_rank(rho.matrix(), tol.rank))
            .unwrap_or(0);
        let maxlex_rank = max_lex_spectrum(n, m).map(|s| s.rank()).unwrap_or(0);
        lower_ok &= rank == lower && maxlex_rank == lower;
    }
    outcome(
        failures == 0 && lower_ok,
        format!("{} states, {failures} failures; lower bound attained at (2,4), (3,6), (2,6): {lower_ok}", cases.len()),
    )
}

fn orthonormality() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, m) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)] {
        let basis = psi_basis(n, m).unwrap();
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate() {
                let ip: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                let target = Complex64::new(if a == b { 1.0 } else { 0.0 }, 0.0);
                worst = worst.max((ip - target).norm());
            }
        }
    }
    outcome(worst < 1e-12, format!("max Gram deviation {worst:.1e}"))
}

fn transposition() -> Outcome {
    let oracle = oracle();
    let mut checked = 0usize;
    let mut violations = 0usize;
    for n in 1..=6 {
        let all = enumerate_partitions(n, None);
        for lam in &all {
            for mu in &all {
                for nu in &all {
                    checked += 1;
                    if oracle.coefficient(lam, mu, nu).unwrap() != oracle.transposed_coefficient(lam, mu, nu).unwrap() {
                        violations += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pools = [enumerate_partitions(7, None), enumerate_partitions(8, None)];
    for _ in 0..200 {
        let pool = &pools[rng.gen_range(0..2)];
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let (lam, mu, nu) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        checked += 1;
        if oracle.coefficient(&lam, &mu, &nu).unwrap() != oracle.transposed_coefficient(&lam, &mu, &nu).unwrap() {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{checked} triples, {violations} violations"))
}

fn random_hermitian(rng: &mut ChaCha8Rng, size: usize, off_scale: f64) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(size, size);
    for i in 0..size {
        h[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
        for j in i + 1..size {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * off_scale;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

fn majorization_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let (mut not_majorized, mut flag_mismatch, mut equalities) = (0, 0, 0);
    for i in 0..500 {
        let size = 2 + i % 7;
        // dense, exactly diagonal, and diagonal up to rounding-level noise
        let off_scale = [1.0, 0.0, 1e-14][i % 3];
        let h = random_hermitian(&mut rng, size, off_scale);
        let r = schur_check(&h).unwrap();
        let diagonal = h.off_diagonal_norm() < 1e-10;
        not_majorized += usize::from(!r.majorized);
        flag_mismatch += usize::from(r.equality != diagonal);
        equalities += usize::from(r.equality);
    }
    outcome(
        not_majorized == 0 && flag_mismatch == 0,
        format!("500 matrices, {not_majorized} not majorized, {equalities} equalities, {flag_mismatch} flag mismatches"),
    )
}

fn extremality() -> Outcome {
    let tol = Tolerances::default();
    let mut details = Vec::new();
    let mut ok = true;
    for (n, m) in [(2, 2), (2, 4), (3, 3)] {
        let maxlex = max_lex_spectrum(n, m).unwrap();
        let r = maxlex.rank();
        let mode = if r >= m { Mode::Full } else { Mode::Divisible };
        let rho = match weight_for_rank(n, m, r, mode).and_then(|_| construct(n, m, r, mode)) {
            Ok((_, rho)) => rho,
            Err(e) => return outcome(false, format!("({n},{m}): {e}")),
        };
        let spec = spectrum(rho.matrix()).unwrap();
        let target = maxlex.spectrum.to_f64();
        let spectrum_ok = spec.iter().enumerate().all(|(i, x)| (x - target.get(i).copied().unwrap_or(0.0)).abs() < 1e-10);
        let e = extremality_check(&rho, &tol).unwrap();
        ok &= spectrum_ok && e.is_extreme && e.reliable;
        details.push(format!("({n},{m}) rank {r} extreme {} nullity {}", e.is_extreme, e.nullity));
        let mixed = extremality_check(&DensityOperator::maximally_mixed(n, m).unwrap(), &tol).unwrap();
        ok &= !mixed.is_extreme;
        details.push(format!("I/{} nullity {}", n * m, mixed.nullity));
    }
    outcome(ok, details.join("; "))
}

fn lex_refines_dominance() -> Outcome {
    let (mut comparable, mut violations) = (0usize, 0usize);
    for n in 0..=8 {
        let all = enumerate_partitions(n, None);
        for a in &all {
            for b in &all {
                if let Some(ord) = cmp_dominance(a, b).unwrap() {
                    comparable += 1;
                    if cmp_lex(a.parts(), b.parts()) != ord {
                        violations += 1;
                    }
                }
            }
        }
    }
    outcome(violations == 0, format!("{comparable} comparable pairs, {violations} violations"))
}

fn lr_semigroup() -> Outcome {
    let (mut positive, mut violations) = (0usize, 0usize);
    for n in 0..=8 {
        for nu in enumerate_partitions(n, None) {
            for a in 0..=n {
                for lam in enumerate_partitions(a, None) {
                    for mu in enumerate_partitions(n - a, None) {
                        if !lr_positive(&LrQuery::new(nu.clone(), lam.clone(), mu.clone())) {
                            continue;
                        }
                        positive += 1;
                        if !lr_positive(&LrQuery::new(nu.scale(2), lam.scale(2), mu.scale(2))) {
                            violations += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(violations == 0, format!("{positive} positive triples, {violations} violations"))
}

#[test]
fn acceptance() {
    let criteria: [Check; 12] = [
        ("strip-type reproduction", strip_type_reproduction),
        ("Kronecker unit value", kronecker_unit_value),
        ("counterexample (2, 5)", counterexample_two_by_five),
        ("counterexample (n, n+1)", counterexample_adjacent),
        ("max-lex cross-check", max_lex_cross_check),
        ("construction ranges", construction_ranges),
        ("orthonormality", orthonormality),
        ("transposition", transposition),
        ("majorization", majorization_suite),
        ("extremality", extremality),
        ("lex refines dominance", lex_refines_dominance),
        ("LR semigroup", lr_semigroup),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {} [{:.2?}]", i + 1, o.detail, start.elapsed());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
