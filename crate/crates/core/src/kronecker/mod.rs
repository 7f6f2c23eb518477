//! Kronecker coefficients of S_n by exact character sums, the Φ(λ, μ) sets,
//! and the rational spectra they induce for uniform margins.
//!
//! g(λ, μ; ν) = (1/n!) Σ_ρ |C_ρ| χ^λ(ρ) χ^μ(ρ) χ^ν(ρ)
//!
//! The sum runs in big integers and the final division must be exact; a
//! remainder means a bug in the character values and panics.

pub mod cache;
pub mod characters;

use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::partition::{Partition, RationalSpectrum};
pub use characters::{CharacterOracle, CharacterTable, ConjugacyClass};
use characters::{conjugacy_classes, factorial};

/// Largest n the oracle will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// single coefficients
    pub single: usize,
    /// full Φ sweeps (one coefficient per ν ⊢ n)
    pub sweep: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { single: 20, sweep: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiMember {
    pub nu: Partition,
    pub g: u64,
}

/// Φ(λ, μ): every ν with g(λ, μ; ν) > 0, in decreasing lex order, so
/// `members[0]` is the lex-maximal component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiSet {
    #[serde(rename = "lambda")]
    pub lam: Partition,
    pub mu: Partition,
    pub members: Vec<PhiMember>,
}

impl PhiSet {
    pub fn lex_max(&self) -> Option<&Partition> {
        self.members.first().map(|m| &m.nu)
    }

    pub fn contains(&self, nu: &Partition) -> bool {
        self.members.iter().any(|m| &m.nu == nu)
    }

    pub fn coefficient(&self, nu: &Partition) -> u64 {
        self.members.iter().find(|m| &m.nu == nu).map_or(0, |m| m.g)
    }
}

/// Kronecker oracle with its size budget, execution strategy, and optional
/// on-disk character cache.
#[derive(Debug, Clone, Default)]
pub struct KroneckerOracle {
    pub budget: OracleBudget,
    pub exec: Execution,
    pub cache_path: Option<PathBuf>,
}

impl KroneckerOracle {
    pub fn new(budget: OracleBudget) -> Self {
        Self { budget, ..Self::default() }
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_cache(mut self, path: Option<PathBuf>) -> Self {
        self.cache_path = path;
        self
    }

    pub fn coefficient(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        let n = common_size(&[lam, mu, nu])?;
        if n > self.budget.single {
            return Err(Error::BudgetExceeded { size: n, budget: self.budget.single });
        }
        let chars = CharacterOracle::global();
        let classes = conjugacy_classes(n);
        let sum = self.exec.map_reduce(
            &classes,
            |c| {
                let rho = &c.cycle_type;
                let prod = chars.value(lam, rho) * chars.value(mu, rho);
                let prod = BigInt::from(prod) * chars.value(nu, rho);
                prod * BigInt::from(c.size())
            },
            BigInt::zero,
            |a, b| a + b,
        );
        Ok(exact_quotient(sum, n))
    }

    /// g(λ, μᵗ; νᵗ), equal to g(λ, μ; ν).
    pub fn transposed_coefficient(&self, lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
        common_size(&[lam, mu, nu])?;
        self.coefficient(lam, &mu.transpose(), &nu.transpose())
    }

    pub fn table(&self, n: usize) -> Result<std::sync::Arc<CharacterTable>> {
        let Some(path) = &self.cache_path else {
            return Ok(CharacterTable::shared(n));
        };
        if let Some(t) = cache::load_table(path, n)? {
            return Ok(std::sync::Arc::new(t));
        }
        let t = CharacterTable::shared(n);
        cache::store_table(path, &t)?;
        Ok(t)
    }

    pub fn phi_set(&self, lam: &Partition, mu: &Partition) -> Result<PhiSet> {
        let n = common_size(&[lam, mu])?;
        if n > self.budget.sweep {
            return Err(Error::BudgetExceeded { size: n, budget: self.budget.sweep });
        }
        let table = self.table(n)?;
        let i = table.index_of(lam).expect("λ is a partition of n");
        let j = table.index_of(mu).expect("μ is a partition of n");
        let weights: Vec<BigInt> = table
            .classes()
            .iter()
            .enumerate()
            .map(|(c, class)| BigInt::from(class.size()) * (table.row(i)[c] * table.row(j)[c]))
            .collect();
        let rows: Vec<usize> = (0..table.partitions().len()).collect();
        let coeffs = self.exec.map(&rows, |&r| {
            let sum = weights
                .iter()
                .zip(table.row(r))
                .fold(BigInt::zero(), |acc, (w, &x)| acc + w * x);
            exact_quotient(sum, n)
        });
        let members = rows
            .into_iter()
            .zip(coeffs)
            .filter(|&(_, g)| g > 0)
            .map(|(r, g)| PhiMember { nu: table.partitions()[r].clone(), g })
            .collect();
        Ok(PhiSet { lam: lam.clone(), mu: mu.clone(), members })
    }

    /// Normalized Φ(ℓλ, ℓμ) for the uniform margins λ = (a^n), μ = (b^m),
    /// k = lcm(n, m), a = k/n, b = k/m.
    pub fn rational_spectra_slice(&self, n: usize, m: usize, ell: usize) -> Result<Vec<RationalSpectrum>> {
        if n == 0 || ell == 0 {
            return Err(Error::Domain("dimensions and ℓ must be positive".into()));
        }
        if n > m {
            return Err(Error::Domain(format!("expected n <= m, got n = {n}, m = {m}")));
        }
        let (lam, mu) = uniform_margin_pair(n, m);
        let phi = self.phi_set(&lam.scale(ell), &mu.scale(ell))?;
        let mut out: Vec<RationalSpectrum> =
            phi.members.iter().map(|member| member.nu.normalize()).collect::<Result<_>>()?;
        out.sort_by(|a, b| b.cmp(a));
        out.dedup();
        Ok(out)
    }
}

/// (λ, μ) = ((k/n)^n, (k/m)^m) with k = lcm(n, m).
pub fn uniform_margin_pair(n: usize, m: usize) -> (Partition, Partition) {
    let k = n.lcm(&m);
    (Partition::rectangle(k / n, n), Partition::rectangle(k / m, m))
}

fn common_size(ps: &[&Partition]) -> Result<usize> {
    let n = ps[0].size();
    if ps.iter().any(|p| p.size() != n) {
        let sizes: Vec<String> = ps.iter().map(|p| format!("|{p}| = {}", p.size())).collect();
        return Err(Error::SizeMismatch(sizes.join(", ")));
    }
    Ok(n)
}

fn exact_quotient(sum: BigInt, n: usize) -> u64 {
    let (q, r) = sum.div_rem(&BigInt::from(factorial(n)));
    assert!(r.is_zero(), "character sum not divisible by {n}!: defect in the character values");
    assert!(q >= BigInt::zero(), "negative Kronecker coefficient: defect in the character values");
    q.to_u64().expect("Kronecker coefficient exceeds u64")
}

pub fn kronecker_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    KroneckerOracle::default().coefficient(lam, mu, nu)
}

pub fn transposed_kronecker(lam: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    KroneckerOracle::default().transposed_coefficient(lam, mu, nu)
}

pub fn phi_set(lam: &Partition, mu: &Partition) -> Result<PhiSet> {
    KroneckerOracle::default().phi_set(lam, mu)
}

pub fn rational_spectra_slice(n: usize, m: usize, ell: usize) -> Result<Vec<RationalSpectrum>> {
    KroneckerOracle::default().rational_spectra_slice(n, m, ell)
}
