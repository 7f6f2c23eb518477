//! Strip-type derivations for rectangular pairs, the maximal lexicographic
//! spectrum for uniform margins, and the two counterexample families to the
//! minimal-rank conjecture.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kronecker::{uniform_margin_pair, KroneckerOracle};
use crate::lr::{lr_positive, LrQuery};
use crate::partition::{Partition, RationalSpectrum};

/// Two strictly decreasing chains λ(1) ⊃ … ⊃ λ(r) ⊃ ∅ and μ(1) ⊃ … ⊃ ∅ with
/// ν_i = |λ(i) ∩ μ(i)|. Both chains include the final ∅.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripDerivation {
    #[serde(rename = "lambda_chain")]
    pub lam_chain: Vec<Partition>,
    pub mu_chain: Vec<Partition>,
    pub nu: Partition,
}

impl StripDerivation {
    /// Number of steps r.
    pub fn steps(&self) -> usize {
        self.nu.length()
    }

    /// Checks the LR condition at every step:
    /// c^{λ(i)}_{λ(i)∩μ(i), λ(i+1)} > 0 and c^{μ(i)}_{λ(i)∩μ(i), μ(i+1)} > 0.
    pub fn lr_steps_positive(&self) -> bool {
        (0..self.steps()).all(|i| {
            let (l, m) = (&self.lam_chain[i], &self.mu_chain[i]);
            let meet = l.intersect(m);
            lr_positive(&LrQuery::new(l.clone(), meet.clone(), self.lam_chain[i + 1].clone()))
                && lr_positive(&LrQuery::new(m.clone(), meet, self.mu_chain[i + 1].clone()))
        })
    }

    /// Chains strictly decrease, end at ∅, and ν is a partition of |λ(1)|.
    pub fn is_well_formed(&self) -> bool {
        let strict = |chain: &[Partition]| {
            chain.windows(2).all(|w| w[0].contains(&w[1]) && w[0] != w[1])
        };
        self.lam_chain.len() == self.steps() + 1
            && self.mu_chain.len() == self.steps() + 1
            && self.lam_chain.last().is_some_and(Partition::is_empty)
            && self.mu_chain.last().is_some_and(Partition::is_empty)
            && strict(&self.lam_chain)
            && strict(&self.mu_chain)
            && self.nu.size() == self.lam_chain[0].size()
    }
}

impl fmt::Display for StripDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |chain: &[Partition]| chain.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ⊃ ");
        writeln!(f, "lambda: {}", join(&self.lam_chain))?;
        writeln!(f, "mu:     {}", join(&self.mu_chain))?;
        write!(f, "nu:     {}", self.nu)
    }
}

/// The unique strip-type partition derived from two rectangles of equal size,
/// peeling off λ(i) ∩ μ(i) until both shapes are empty.
pub fn rect_strip_type(lam: &Partition, mu: &Partition) -> Result<StripDerivation> {
    for p in [lam, mu] {
        if !p.is_rectangular() {
            return Err(Error::NotRectangular(p.clone()));
        }
    }
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(format!("|{lam}| = {} but |{mu}| = {}", lam.size(), mu.size())));
    }
    let mut lam_chain = vec![lam.clone()];
    let mut mu_chain = vec![mu.clone()];
    let mut nu = Vec::new();
    let (mut l, mut m) = (lam.clone(), mu.clone());
    while !l.is_empty() {
        let meet = l.intersect(&m);
        nu.push(meet.size());
        // differences of rectangles of equal area are rectangles again
        l = l.skew_as_partition(&meet)?;
        m = m.skew_as_partition(&meet)?;
        debug_assert!(l.is_rectangular() && m.is_rectangular());
        lam_chain.push(l.clone());
        mu_chain.push(m.clone());
    }
    debug_assert!(m.is_empty());
    let nu = Partition::new(nu)?;
    Ok(StripDerivation { lam_chain, mu_chain, nu })
}

/// Lex-maximal member of Φ(λ, μ): the strip-type derivation when both are
/// rectangles, otherwise read off the oracle's Φ set.
pub fn max_lex_component(lam: &Partition, mu: &Partition, oracle: &KroneckerOracle) -> Result<Partition> {
    if lam.is_rectangular() && mu.is_rectangular() {
        return Ok(rect_strip_type(lam, mu)?.nu);
    }
    let phi = oracle.phi_set(lam, mu)?;
    phi.lex_max()
        .cloned()
        .ok_or_else(|| Error::Domain("empty Φ set".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxLexSpectrum {
    pub spectrum: RationalSpectrum,
    pub nu: Partition,
    /// lcm(n, m)
    pub k: usize,
}

impl MaxLexSpectrum {
    /// Rank of every state carrying this spectrum.
    pub fn rank(&self) -> usize {
        self.nu.length()
    }
}

/// Maximal lexicographic spectrum among states with margins I_n/n and I_m/m:
/// ν/k where k = lcm(n, m) and ν is the strip type of ((k/n)^n, (k/m)^m).
pub fn max_lex_spectrum(n: usize, m: usize) -> Result<MaxLexSpectrum> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("expected 1 <= n <= m, got n = {n}, m = {m}")));
    }
    let (lam, mu) = uniform_margin_pair(n, m);
    let nu = rect_strip_type(&lam, &mu)?.nu;
    Ok(MaxLexSpectrum { spectrum: nu.normalize()?, nu, k: n.lcm(&m) })
}

/// Refutation data for one (n, m): the max-lex partition and its rank next to
/// a lower-rank member of Φ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub m: usize,
    pub maxlex_nu: Partition,
    pub maxlex_rank: usize,
    pub witness_gamma: Partition,
    /// `None` when the witness was beyond the oracle budget.
    pub witness_g: Option<u64>,
    pub min_rank_bound: usize,
    pub refutes_conjecture: bool,
}

impl CounterexampleReport {
    fn assemble(n: usize, m: usize, gamma: Partition, oracle: &KroneckerOracle) -> Result<Self> {
        let maxlex = max_lex_spectrum(n, m)?;
        let (lam, mu) = uniform_margin_pair(n, m);
        let witness_g = match oracle.coefficient(&lam, &mu, &gamma) {
            Ok(g) => Some(g),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let maxlex_rank = maxlex.rank();
        let refutes_conjecture = witness_g.is_some_and(|g| g >= 1) && gamma.length() < maxlex_rank;
        Ok(Self {
            n,
            m,
            maxlex_nu: maxlex.nu,
            maxlex_rank,
            witness_gamma: gamma,
            witness_g,
            min_rank_bound: crate::quantum::rank_bounds(n, m)?.lower,
            refutes_conjecture,
        })
    }

    pub fn is_verified(&self) -> bool {
        self.witness_g.is_some()
    }

    /// maxlex_rank − rank(γ).
    pub fn rank_gap(&self) -> usize {
        self.maxlex_rank.saturating_sub(self.witness_gamma.length())
    }
}

/// (n, m) = (2, 2k+1): max-lex ν = (4^k, 1, 1) of rank k + 2 against the
/// witness γ = (4^{k-1}, 3, 3) of rank k + 1.
pub fn counterexample_two_by_m(m: usize, oracle: &KroneckerOracle) -> Result<CounterexampleReport> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Domain(format!("m must be odd and at least 3, got {m}")));
    }
    let k = (m - 1) / 2;
    let mut gamma = vec![4; k - 1];
    gamma.extend([3, 3]);
    CounterexampleReport::assemble(2, m, Partition::new(gamma)?, oracle)
}

/// (n, n+1): max-lex ν = (n², 1^n) of rank n + 1 against the two-row witness
/// γ = (n(n+1)/2, n(n+1)/2) of rank 2.
pub fn counterexample_n_nplus1(n: usize, oracle: &KroneckerOracle) -> Result<CounterexampleReport> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    let half = n * (n + 1) / 2;
    CounterexampleReport::assemble(n, n + 1, Partition::rectangle(half, 2), oracle)
}

/// Whether some p×n nonnegative integer matrix with every row summing to n·a
/// has exactly the parts of ν as its nonzero entries.
///
/// Parts are placed largest first into rows by backtracking; a row holds at
/// most n entries, and rows in identical states are tried only once.
pub fn corollary_weight_condition(p: usize, n: usize, a: usize, nu: &Partition) -> Result<bool> {
    if nu.size() != p * n * a {
        return Err(Error::SizeMismatch(format!("|{nu}| = {} but p·n·a = {}", nu.size(), p * n * a)));
    }
    let capacity = n * a;
    if nu.parts().first().is_some_and(|&x| x > capacity) || nu.length() > p * n {
        return Ok(false);
    }

    fn place(parts: &[usize], rows: &mut [(usize, usize)], capacity: usize, slots: usize) -> bool {
        let Some((&x, rest)) = parts.split_first() else {
            return rows.iter().all(|&(sum, _)| sum == capacity);
        };
        for r in 0..rows.len() {
            if rows[..r].contains(&rows[r]) {
                continue;
            }
            let (sum, used) = rows[r];
            if sum + x > capacity || used == slots {
                continue;
            }
            // what is left of this row must be fillable by smaller parts
            if sum + x < capacity && used + 1 == slots {
                continue;
            }
            rows[r] = (sum + x, used + 1);
            if place(rest, rows, capacity, slots) {
                return true;
            }
            rows[r] = (sum, used);
        }
        false
    }

    if capacity == 0 {
        return Ok(nu.is_empty());
    }
    let mut rows = vec![(0usize, 0usize); p];
    Ok(place(nu.parts(), &mut rows, capacity, n))
}
