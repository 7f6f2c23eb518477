//! States with uniform margins built as mixtures of ψ_ij projectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::state::DensityOperator;
use super::weyl::psi_state;
use crate::error::{Error, Result};

const WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// m × n weights over all ψ_ij, ranks m..=mn.
    Full,
    /// (m/n) × n weights over ψ_{in,j}, ranks m/n..=m; needs n | m.
    Divisible,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Divisible => "divisible",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "divisible" => Ok(Mode::Divisible),
            _ => Err(Error::Parse { input: s.to_string(), reason: "expected `full` or `divisible`".into() }),
        }
    }
}

/// Nonnegative weights with unit total. Serialized as nested arrays of
/// decimal strings that round-trip the stored doubles exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::WeightConstraintViolation("empty weight matrix".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::WeightConstraintViolation("rows have different lengths".into()));
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(x) = entries.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::WeightConstraintViolation(format!("entry {x} is not a nonnegative number")));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::WeightConstraintViolation(format!("entries sum to {total}, expected 1")));
        }
        Ok(Self { rows: entries.len() / cols, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x > 0.0).count()
    }

    /// All entries, decreasing.
    pub fn sorted_entries(&self) -> Vec<f64> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if (self.rows, self.cols) != (rows, cols) {
            return Err(Error::WeightConstraintViolation(format!(
                "expected a {rows}x{cols} weight matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let target = 1.0 / rows as f64;
        for (i, s) in self.row_sums().into_iter().enumerate() {
            if (s - target).abs() > WEIGHT_TOL {
                return Err(Error::WeightConstraintViolation(format!("row {i} sums to {s}, expected 1/{rows}")));
            }
        }
        Ok(())
    }
}

impl Serialize for WeightMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nested: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        nested.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let nested = Vec::<Vec<String>>::deserialize(d)?;
        let rows = nested
            .into_iter()
            .map(|r| r.iter().map(|x| x.parse::<f64>().map_err(D::Error::custom)).collect())
            .collect::<std::result::Result<Vec<Vec<f64>>, _>>()?;
        WeightMatrix::new(rows).map_err(D::Error::custom)
    }
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("expected 1 <= n <= m, got n = {n}, m = {m}")));
    }
    Ok(())
}

fn mixture(n: usize, m: usize, terms: impl Iterator<Item = (f64, usize, usize)>) -> Result<DensityOperator> {
    let d = n * m;
    let mut rho = ComplexMatrix::zeros(d, d);
    for (w, i, j) in terms {
        if w == 0.0 {
            continue;
        }
        let psi = psi_state(n, m, i, j)?;
        // ψ_ij has support {s·m + (s+i) mod m : s < n}
        let support: Vec<usize> = (0..n).map(|s| s * m + (s + i) % m).collect();
        for &r in &support {
            let vr = psi[r] * w;
            for &c in &support {
                rho[(r, c)] += vr * psi[c].conj();
            }
        }
    }
    DensityOperator::new(n, m, rho)
}

/// ρ = Σ_ij W[i][j] |ψ_ij⟩⟨ψ_ij| for an m × n weight matrix with row sums 1/m.
pub fn construct_full(n: usize, m: usize, w: &WeightMatrix) -> Result<DensityOperator> {
    check_dims(n, m)?;
    w.check_shape(m, n)?;
    mixture(n, m, (0..m).flat_map(|i| (0..n).map(move |j| (w.get(i, j), i, j))))
}

/// ρ = Σ_ij W[i][j] |ψ_{in,j}⟩⟨ψ_{in,j}| for a (m/n) × n weight matrix with row
/// sums n/m.
pub fn construct_divisible(n: usize, m: usize, w: &WeightMatrix) -> Result<DensityOperator> {
    check_dims(n, m)?;
    if !m.is_multiple_of(n) {
        return Err(Error::Divisibility { n, m });
    }
    let p = m / n;
    w.check_shape(p, n)?;
    mixture(n, m, (0..p).flat_map(|i| (0..n).map(move |j| (w.get(i, j), i * n, j))))
}

/// Canonical weights with exactly `k` nonzero entries.
///
/// Every row starts with one nonzero; the remaining `k - rows` are handed out
/// row by row, up to `n` per row. A row with `q` nonzeros holds `rowsum / q`
/// in its first `q` columns.
pub fn weight_for_rank(n: usize, m: usize, k: usize, mode: Mode) -> Result<WeightMatrix> {
    check_dims(n, m)?;
    let rows = match mode {
        Mode::Full => m,
        Mode::Divisible => {
            if !m.is_multiple_of(n) {
                return Err(Error::Divisibility { n, m });
            }
            m / n
        }
    };
    let (lo, hi) = (rows, rows * n);
    if k < lo || k > hi {
        return Err(Error::RankOutOfRange { k, lo, hi });
    }
    let mut extra = k - rows;
    let counts: Vec<usize> = (0..rows)
        .map(|_| {
            let add = extra.min(n - 1);
            extra -= add;
            1 + add
        })
        .collect();
    let rowsum = 1.0 / rows as f64;
    let nested = counts
        .iter()
        .map(|&q| (0..n).map(|j| if j < q { rowsum / q as f64 } else { 0.0 }).collect())
        .collect();
    WeightMatrix::new(nested)
}

/// Weights from [`weight_for_rank`] and the resulting state.
pub fn construct(n: usize, m: usize, k: usize, mode: Mode) -> Result<(WeightMatrix, DensityOperator)> {
    let w = weight_for_rank(n, m, k, mode)?;
    let rho = match mode {
        Mode::Full => construct_full(n, m, &w)?,
        Mode::Divisible => construct_divisible(n, m, &w)?,
    };
    Ok((w, rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{numerical_rank, spectrum, RANK_TOL};
    use num_complex::Complex64;

    fn uniform(d: usize) -> ComplexMatrix {
        ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0))
    }

    #[test]
    fn greedy_examples() {
        let w = weight_for_rank(2, 3, 3, Mode::Full).unwrap();
        assert_eq!((w.rows(), w.cols()), (3, 2));
        for i in 0..3 {
            assert_eq!(w.row(i), &[1.0 / 3.0, 0.0]);
        }
        let w = weight_for_rank(2, 3, 6, Mode::Full).unwrap();
        assert!(w.sorted_entries().iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-16));
        let w = weight_for_rank(2, 4, 2, Mode::Divisible).unwrap();
        assert_eq!((w.rows(), w.cols()), (2, 2));
        assert_eq!(w.row(0), &[0.5, 0.0]);
        assert_eq!(w.row(1), &[0.5, 0.0]);
        // 4 extra over 3 rows of width 3: rows get 3, 3, 1
        let w = weight_for_rank(3, 3, 7, Mode::Full).unwrap();
        assert_eq!(w.row(2), &[1.0 / 3.0, 0.0, 0.0]);
        assert_eq!(w.nonzero_count(), 7);
    }

    #[test]
    fn rank_range_errors() {
        assert!(matches!(weight_for_rank(2, 3, 2, Mode::Full), Err(Error::RankOutOfRange { k: 2, lo: 3, hi: 6 })));
        assert!(matches!(weight_for_rank(2, 3, 7, Mode::Full), Err(Error::RankOutOfRange { .. })));
        assert!(matches!(weight_for_rank(2, 3, 2, Mode::Divisible), Err(Error::Divisibility { n: 2, m: 3 })));
        assert!(matches!(weight_for_rank(2, 4, 5, Mode::Divisible), Err(Error::RankOutOfRange { lo: 2, hi: 4, .. })));
        assert!(matches!(weight_for_rank(3, 2, 3, Mode::Full), Err(Error::Domain(_))));
    }

    #[test]
    fn two_by_two_rank_two() {
        let w = WeightMatrix::new(vec![vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap();
        let rho = construct_full(2, 2, &w).unwrap();
        assert_eq!(numerical_rank(rho.matrix(), RANK_TOL).unwrap(), 2);
        let spec = spectrum(rho.matrix()).unwrap();
        assert!((spec[0] - 0.5).abs() < 1e-12 && (spec[1] - 0.5).abs() < 1e-12 && spec[2].abs() < 1e-12);
        assert!(rho.margin_a().max_abs_diff(&uniform(2)) < 1e-12);
        assert!(rho.margin_b().max_abs_diff(&uniform(2)) < 1e-12);
    }

    #[test]
    fn uniform_weights_give_maximally_mixed() {
        for (n, m) in [(1, 3), (2, 3), (3, 3), (2, 5)] {
            let w = WeightMatrix::new(vec![vec![1.0 / (n * m) as f64; n]; m]).unwrap();
            let rho = construct_full(n, m, &w).unwrap();
            assert!(rho.matrix().max_abs_diff(&uniform(n * m)) < 1e-15);
        }
    }

    #[test]
    fn divisible_examples() {
        let w = weight_for_rank(2, 4, 2, Mode::Divisible).unwrap();
        let rho = construct_divisible(2, 4, &w).unwrap();
        assert_eq!(numerical_rank(rho.matrix(), RANK_TOL).unwrap(), 2);
        assert!(rho.margin_b().max_abs_diff(&uniform(4)) < 1e-12);

        let w = WeightMatrix::new(vec![vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        let rho = construct_divisible(2, 4, &w).unwrap();
        assert_eq!(numerical_rank(rho.matrix(), RANK_TOL).unwrap(), 4);
        assert!(rho.margin_a().max_abs_diff(&uniform(2)) < 1e-12);
        assert!(rho.margin_b().max_abs_diff(&uniform(4)) < 1e-12);

        // p = 1: pure ψ_00
        let w = WeightMatrix::new(vec![vec![1.0, 0.0, 0.0]]).unwrap();
        let rho = construct_divisible(3, 3, &w).unwrap();
        assert_eq!(numerical_rank(rho.matrix(), RANK_TOL).unwrap(), 1);
    }

    #[test]
    fn weight_violations() {
        assert!(WeightMatrix::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(WeightMatrix::new(vec![vec![1.5, -0.5]]).is_err());
        assert!(WeightMatrix::new(vec![vec![1.0], vec![0.0, 0.0]]).is_err());
        // total is 1 but rows are not 1/m each
        let w = WeightMatrix::new(vec![vec![0.75, 0.0], vec![0.25, 0.0]]).unwrap();
        assert!(matches!(construct_full(2, 2, &w), Err(Error::WeightConstraintViolation(_))));
        // wrong shape
        let w = WeightMatrix::new(vec![vec![0.5, 0.5]]).unwrap();
        assert!(matches!(construct_full(2, 2, &w), Err(Error::WeightConstraintViolation(_))));
        assert!(matches!(construct_divisible(2, 3, &w), Err(Error::Divisibility { .. })));
    }

    #[test]
    fn weights_serialize_as_strings() {
        let w = weight_for_rank(2, 3, 4, Mode::Full).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.starts_with("[[\""));
        let back: WeightMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!("divisible".parse::<Mode>().unwrap(), Mode::Divisible);
        assert!("other".parse::<Mode>().is_err());
    }
}
