//! Batch checks over whole parameter ranges.

use serde::Serialize;

use crate::error::Result;
use crate::exec::Execution;
use crate::kronecker::{uniform_margin_pair, KroneckerOracle};
use crate::partition::Partition;
use crate::quantum::{construct, numerical_rank, Mode, Tolerances};
use crate::strip_type::rect_strip_type;

/// One constructed state in a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionCase {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: Mode,
    pub rank: usize,
    pub margin_deviation: f64,
}

impl ConstructionCase {
    pub fn passed(&self, tol: &Tolerances) -> bool {
        self.rank == self.k && self.margin_deviation <= tol.margin
    }
}

/// Every (n, m, k, mode) the constructions cover with `n ≤ m` and `nm ≤ max_dim`.
pub fn construction_grid(max_dim: usize) -> Vec<(usize, usize, usize, Mode)> {
    let mut out = Vec::new();
    for n in 1..=max_dim {
        for m in n..=max_dim / n {
            for k in m..=m * n {
                out.push((n, m, k, Mode::Full));
            }
            if m % n == 0 {
                for k in m / n..=m {
                    out.push((n, m, k, Mode::Divisible));
                }
            }
        }
    }
    out
}

fn run_case(&(n, m, k, mode): &(usize, usize, usize, Mode), tol: &Tolerances) -> Result<ConstructionCase> {
    let (_, rho) = construct(n, m, k, mode)?;
    let rank = numerical_rank(rho.matrix(), tol.rank)?;
    let da = uniform_deviation(&rho.margin_a());
    let db = uniform_deviation(&rho.margin_b());
    Ok(ConstructionCase { n, m, k, mode, rank, margin_deviation: da.max(db) })
}

fn uniform_deviation(x: &crate::quantum::ComplexMatrix) -> f64 {
    let d = x.rows();
    let target = crate::quantum::ComplexMatrix::identity(d).scale(num_complex::Complex64::new(1.0 / d as f64, 0.0));
    x.max_abs_diff(&target)
}

pub fn construction_sweep(max_dim: usize, tol: &Tolerances, exec: Execution) -> Result<Vec<ConstructionCase>> {
    let grid = construction_grid(max_dim);
    exec.map(&grid, |case| run_case(case, tol)).into_iter().collect()
}

/// Rectangle pair whose strip type disagrees with the lex-max of Φ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxLexMismatch {
    pub n: usize,
    pub m: usize,
    pub strip_type: Partition,
    pub lex_max: Option<Partition>,
}

/// All `n ≤ m` with `lcm(n, m) ≤ max_size`; compares the strip type of the
/// uniform-margin rectangles with the lex-max of Φ. Returns the number of
/// pairs checked and any mismatches.
pub fn maxlex_cross_check(max_size: usize, oracle: &KroneckerOracle) -> Result<(usize, Vec<MaxLexMismatch>)> {
    let mut pairs = Vec::new();
    for n in 1..=max_size {
        for m in n..=max_size {
            if num_integer::lcm(n, m) <= max_size {
                pairs.push((n, m));
            }
        }
    }
    let mut mismatches = Vec::new();
    for &(n, m) in &pairs {
        let (lam, mu) = uniform_margin_pair(n, m);
        let nu = rect_strip_type(&lam, &mu)?.nu;
        let lex_max = oracle.phi_set(&lam, &mu)?.lex_max().cloned();
        if lex_max.as_ref() != Some(&nu) {
            mismatches.push(MaxLexMismatch { n, m, strip_type: nu, lex_max });
        }
    }
    Ok((pairs.len(), mismatches))
}
