//! Irreducible characters of S_n by the Murnaghan–Nakayama rule.
//!
//! Shapes are handled through their beta-sets (first-column hook lengths):
//! removing a border strip of length `r` moves one bead from `b` to `b - r`,
//! and the strip's height is the number of beads strictly in between.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::One;

use crate::exec::Execution;
use crate::partition::{enumerate_partitions, Partition};

/// A conjugacy class of S_n, identified by its cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    /// z_ρ = Π i^{m_i} m_i!
    pub centralizer_order: BigUint,
}

impl ConjugacyClass {
    pub fn new(cycle_type: Partition) -> Self {
        let centralizer_order = centralizer_order(&cycle_type);
        Self { cycle_type, centralizer_order }
    }

    /// n! / z_ρ
    pub fn size(&self) -> BigUint {
        factorial(self.cycle_type.size()) / &self.centralizer_order
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn centralizer_order(rho: &Partition) -> BigUint {
    rho.multiplicities().into_iter().fold(BigUint::one(), |acc, (part, mult)| {
        acc * BigUint::from(part).pow(mult as u32) * factorial(mult)
    })
}

/// All conjugacy classes of S_n, cycle types in decreasing lex order.
pub fn conjugacy_classes(n: usize) -> Vec<ConjugacyClass> {
    enumerate_partitions(n, None).into_iter().map(ConjugacyClass::new).collect()
}

type MemoKey = (Box<[u16]>, Box<[u16]>);

/// Memoized Murnaghan–Nakayama evaluator, safe to share between threads.
///
/// Entries are keyed by (shape, remaining cycle multiset); concurrent callers
/// may race to fill the same entry, which is harmless because the value is a
/// pure function of the key.
#[derive(Default)]
pub struct CharacterOracle {
    memo: DashMap<MemoKey, i128>,
}

impl CharacterOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance.
    pub fn global() -> &'static CharacterOracle {
        static GLOBAL: OnceLock<CharacterOracle> = OnceLock::new();
        GLOBAL.get_or_init(CharacterOracle::new)
    }

    /// χ^λ(ρ). Callers must ensure `|λ| = |ρ|`.
    pub fn value(&self, lam: &Partition, rho: &Partition) -> i128 {
        debug_assert_eq!(lam.size(), rho.size());
        let shape: Vec<u16> = lam.parts().iter().map(|&p| p as u16).collect();
        let cycles: Vec<u16> = rho.parts().iter().map(|&p| p as u16).collect();
        self.eval(&shape, &cycles)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `shape` is a partition, `cycles` a weakly decreasing cycle list of the
    /// same total; the largest cycle is stripped first.
    fn eval(&self, shape: &[u16], cycles: &[u16]) -> i128 {
        if cycles.is_empty() {
            return 1;
        }
        if shape.len() <= 1 {
            // one row: trivial character
            return 1;
        }
        let key: MemoKey = (shape.into(), cycles.into());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }

        let r = cycles[0] as usize;
        let rest = &cycles[1..];
        let len = shape.len();
        // beta-set: beta_i = shape_i + (len - 1 - i), strictly decreasing
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p as usize + len - 1 - i).collect();
        let mut total: i128 = 0;
        for (i, &b) in beta.iter().enumerate() {
            if b < r {
                continue;
            }
            let target = b - r;
            if beta.contains(&target) {
                continue;
            }
            // beads strictly between target and b are those at indices i+1..k
            let height = beta[i + 1..].iter().take_while(|&&x| x > target).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|x, y| y.cmp(x));
            let mut next: Vec<u16> = moved
                .iter()
                .enumerate()
                .map(|(k, &x)| (x - (len - 1 - k)) as u16)
                .collect();
            while next.last() == Some(&0) {
                next.pop();
            }
            let sub = self.eval(&next, rest);
            if height % 2 == 0 {
                total += sub;
            } else {
                total -= sub;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// Full character table of S_n.
///
/// Rows are irreducibles and columns are classes, both indexed by partitions
/// in decreasing lex order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    classes: Vec<ConjugacyClass>,
    values: Vec<Vec<i128>>,
}

impl CharacterTable {
    /// Computes the table with the global oracle.
    pub fn compute(n: usize, exec: Execution) -> Self {
        Self::compute_with(n, exec, CharacterOracle::global())
    }

    /// Same as [`CharacterTable::compute`] but filling the memo of `oracle`.
    pub fn compute_with(n: usize, exec: Execution, oracle: &CharacterOracle) -> Self {
        let partitions = enumerate_partitions(n, None);
        let classes = conjugacy_classes(n);
        let values = exec.map(&partitions, |lam| {
            classes.iter().map(|c| oracle.value(lam, &c.cycle_type)).collect()
        });
        Self { n, partitions, classes, values }
    }

    /// Assembles a table from externally supplied values (e.g. a disk cache).
    /// `values[i][j]` is χ^{partitions[i]}(classes[j]) in the canonical order.
    pub(crate) fn from_values(n: usize, values: Vec<Vec<i128>>) -> Self {
        Self { n, partitions: enumerate_partitions(n, None), classes: conjugacy_classes(n), values }
    }

    /// The shared table for S_n, built at most once per process.
    pub fn shared(n: usize) -> Arc<CharacterTable> {
        static TABLES: OnceLock<DashMap<usize, Arc<OnceLock<Arc<CharacterTable>>>>> = OnceLock::new();
        let cell = TABLES.get_or_init(DashMap::new).entry(n).or_default().clone();
        cell.get_or_init(|| Arc::new(CharacterTable::compute(n, Execution::default()))).clone()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Character row of the i-th irreducible.
    pub fn row(&self, i: usize) -> &[i128] {
        &self.values[i]
    }

    pub fn index_of(&self, lam: &Partition) -> Option<usize> {
        // partitions are sorted decreasingly
        self.partitions.binary_search_by(|p| lam.cmp(p)).ok()
    }

    pub fn value(&self, lam: &Partition, rho: &Partition) -> Option<i128> {
        let i = self.index_of(lam)?;
        let j = self.index_of(rho)?;
        Some(self.values[i][j])
    }

    pub fn dimension(&self, lam: &Partition) -> Option<i128> {
        self.value(lam, &Partition::rectangle(1, self.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn chi(lam: &str, rho: &str) -> i128 {
        CharacterOracle::global().value(&p(lam), &p(rho))
    }

    /// Independent oracle: Jacobi–Trudi for characters,
    /// χ^λ = Σ_σ sgn(σ) π^{(λ_i - i + σ(i))}, where π^a(ρ) counts assignments
    /// of the cycles of ρ to blocks with sizes given by the composition a.
    fn jacobi_trudi(lam: &Partition, rho: &Partition) -> i128 {
        fn perm_char(blocks: &[i64], cycles: &[usize]) -> i128 {
            if blocks.iter().any(|&b| b < 0) {
                return 0;
            }
            fn go(blocks: &mut [i64], cycles: &[usize]) -> i128 {
                let Some((&c, rest)) = cycles.split_first() else {
                    return blocks.iter().all(|&b| b == 0) as i128;
                };
                let mut total = 0;
                for k in 0..blocks.len() {
                    if blocks[k] >= c as i64 {
                        blocks[k] -= c as i64;
                        total += go(blocks, rest);
                        blocks[k] += c as i64;
                    }
                }
                total
            }
            go(&mut blocks.to_vec(), cycles)
        }
        let l = lam.length();
        let mut perm: Vec<usize> = (0..l).collect();
        let mut total = 0;
        loop {
            let inversions = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let blocks: Vec<i64> = (0..l).map(|i| lam.part(i) as i64 - i as i64 + perm[i] as i64).collect();
            let term = perm_char(&blocks, rho.parts());
            total += if inversions % 2 == 0 { term } else { -term };
            let Some(i) = (1..l).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..l).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        total
    }

    #[test]
    fn examples() {
        for rho in enumerate_partitions(5, None) {
            assert_eq!(CharacterOracle::global().value(&p("[5]"), &rho), 1);
        }
        assert_eq!(chi("[1,1]", "[2]"), -1);
        assert_eq!(chi("[2,1]", "[1,1,1]"), 2);
    }

    #[test]
    fn matches_jacobi_trudi_up_to_7() {
        let oracle = CharacterOracle::new();
        for n in 1..=7 {
            for lam in enumerate_partitions(n, None) {
                for rho in enumerate_partitions(n, None) {
                    assert_eq!(oracle.value(&lam, &rho), jacobi_trudi(&lam, &rho), "χ^{lam}({rho})");
                }
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=12 {
            let total = conjugacy_classes(n).iter().fold(BigUint::zero(), |acc, c| acc + c.size());
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn orthogonality_relations_up_to_9() {
        for n in 1..=9 {
            let t = CharacterTable::compute(n, Execution::Sequential);
            let k = t.partitions().len();
            // columns: Σ_λ χ^λ(ρ)χ^λ(σ) = z_ρ [ρ = σ]
            for a in 0..k {
                for b in 0..k {
                    let s: i128 = (0..k).map(|i| t.row(i)[a] * t.row(i)[b]).sum();
                    let expected = if a == b { t.classes()[a].centralizer_order.clone().into() } else { BigInt::zero() };
                    assert_eq!(BigInt::from(s), expected);
                }
            }
            // rows: Σ_ρ |C_ρ| χ^λ χ^μ = n! [λ = μ]
            for a in 0..k {
                for b in 0..k {
                    let s = t.classes().iter().enumerate().fold(BigInt::zero(), |acc, (j, c)| {
                        acc + BigInt::from(c.size()) * t.row(a)[j] * t.row(b)[j]
                    });
                    let expected = if a == b { BigInt::from(factorial(n)) } else { BigInt::zero() };
                    assert_eq!(s, expected);
                }
            }
            for lam in t.partitions() {
                assert!(t.dimension(lam).unwrap() > 0);
            }
        }
    }

    #[test]
    fn table_lookup() {
        let t = CharacterTable::shared(3);
        assert_eq!(t.value(&p("[2,1]"), &p("[3]")), Some(-1));
        assert_eq!(t.value(&p("[2,1]"), &p("[2,1]")), Some(0));
        assert_eq!(t.dimension(&p("[2,1]")), Some(2));
        assert_eq!(t.value(&p("[4]"), &p("[3]")), None);
        assert!(Arc::ptr_eq(&t, &CharacterTable::shared(3)));
    }

    #[test]
    fn sequential_and_parallel_tables_agree() {
        let a = CharacterTable::compute(8, Execution::Sequential);
        let b = CharacterTable::compute(8, Execution::Parallel);
        for i in 0..a.partitions().len() {
            assert_eq!(a.row(i), b.row(i));
        }
    }
}
