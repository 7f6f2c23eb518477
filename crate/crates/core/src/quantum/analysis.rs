use num_complex::Complex64;
use serde::Serialize;

use super::eigen::{hermitian_eigen, real_singular_values};
use super::matrix::ComplexMatrix;
use super::state::DensityOperator;
use super::{Tolerances, MAJORIZATION_SLACK, SCHUR_EQUALITY_TOL};
use crate::error::{Error, Result};

/// Eigenvalues in decreasing order.
pub fn spectrum(h: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(h)?.values)
}

/// Number of eigenvalues above `tol · max(1, λ_max)`.
pub fn numerical_rank(h: &ComplexMatrix, tol: f64) -> Result<usize> {
    Ok(rank_of_spectrum(&spectrum(h)?, tol))
}

pub fn rank_of_spectrum(values: &[f64], tol: f64) -> usize {
    let top = values.iter().copied().fold(1.0, f64::max);
    values.iter().filter(|&&x| x > tol * top).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankBounds {
    pub lower: usize,
    pub upper: usize,
}

impl RankBounds {
    pub fn contains(&self, rank: usize) -> bool {
        self.lower <= rank && rank <= self.upper
    }
}

/// `⌈k_b / k_a⌉ ≤ rank ρ ≤ k_a · k_b` for margins of ranks k_a ≤ k_b.
pub fn rank_bounds(k_a: usize, k_b: usize) -> Result<RankBounds> {
    if k_a == 0 || k_a > k_b {
        return Err(Error::Domain(format!("rank bounds need 1 <= k_a <= k_b, got ({k_a}, {k_b})")));
    }
    Ok(RankBounds { lower: k_b.div_ceil(k_a), upper: k_a * k_b })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchurReport {
    /// Diagonal of H, decreasing.
    pub diagonal: Vec<f64>,
    pub spectrum: Vec<f64>,
    pub majorized: bool,
    /// Sorted diagonal coincides with the spectrum.
    pub equality: bool,
}

/// Tests D(H) ⊴ Spec(H) by prefix sums.
pub fn schur_check(h: &ComplexMatrix) -> Result<SchurReport> {
    let spectrum = spectrum(h)?;
    let mut diagonal: Vec<f64> = h.diagonal().iter().map(|z| z.re).collect();
    diagonal.sort_by(|a, b| b.total_cmp(a));
    let scale = h.frobenius_norm().max(1.0);

    let slack = MAJORIZATION_SLACK * scale;
    let (mut pd, mut ps) = (0.0, 0.0);
    let mut majorized = true;
    for (d, s) in diagonal.iter().zip(&spectrum) {
        pd += d;
        ps += s;
        if pd > ps + slack {
            majorized = false;
        }
    }
    majorized &= (pd - ps).abs() <= slack;

    let eq_tol = SCHUR_EQUALITY_TOL * scale;
    let equality = diagonal.iter().zip(&spectrum).all(|(d, s)| (d - s).abs() <= eq_tol);
    Ok(SchurReport { diagonal, spectrum, majorized, equality })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalityReport {
    pub is_extreme: bool,
    /// Dimension of the margin-preserving Hermitian perturbations on range(ρ).
    pub nullity: usize,
    pub rank: usize,
    /// Gap between the last kept and first dropped eigenvalue (None at full rank).
    pub eigen_gap: Option<f64>,
    /// False when the rank cutoff sits inside a cluster of eigenvalues.
    pub reliable: bool,
}

/// Hermitian r×r basis, orthonormal in the Frobenius inner product, written as
/// coefficient triples on v_k v_l†.
fn hermitian_basis(r: usize) -> Vec<Vec<(usize, usize, Complex64)>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(r * r);
    for k in 0..r {
        out.push(vec![(k, k, Complex64::new(1.0, 0.0))]);
        for l in k + 1..r {
            out.push(vec![(k, l, Complex64::new(h, 0.0)), (l, k, Complex64::new(h, 0.0))]);
            out.push(vec![(k, l, Complex64::new(0.0, h)), (l, k, Complex64::new(0.0, -h))]);
        }
    }
    out
}

/// Real coordinates of a Hermitian matrix, isometric for the Frobenius norm.
fn hermitian_coords(x: &ComplexMatrix, out: &mut Vec<f64>) {
    let s = std::f64::consts::SQRT_2;
    for i in 0..x.rows() {
        out.push(x[(i, i)].re);
        for j in i + 1..x.cols() {
            out.push(s * x[(i, j)].re);
            out.push(s * x[(i, j)].im);
        }
    }
}

/// Decides whether ρ is an extreme point of the states sharing its margins.
///
/// ρ is extreme iff no nonzero Hermitian H on range(ρ) has V H V† with both
/// partial traces zero, where V is an isometry onto range(ρ). The map
/// H ↦ (tr_B VHV†, tr_A VHV†) is assembled as a real matrix and its nullity is
/// read off the singular values.
pub fn extremality_check(rho: &DensityOperator, tol: &Tolerances) -> Result<ExtremalityReport> {
    let (n, m) = (rho.dim_a(), rho.dim_b());
    let eig = hermitian_eigen(rho.matrix())?;
    let r = rank_of_spectrum(&eig.values, tol.rank);
    let top = eig.values.first().copied().unwrap_or(0.0).max(1.0);
    let eigen_gap = (r < eig.values.len()).then(|| eig.values[r.saturating_sub(1)] - eig.values[r]);
    let reliable = r > 0 && eigen_gap.is_none_or(|g| g >= tol.eigen_gap * top);
    if r == 0 {
        return Ok(ExtremalityReport { is_extreme: false, nullity: 0, rank: 0, eigen_gap, reliable });
    }
    let v: Vec<Vec<Complex64>> = (0..r).map(|k| eig.vector(k)).collect();

    // margins of v_k v_l† for all pairs
    let mut pb = vec![ComplexMatrix::zeros(n, n); r * r];
    let mut pa = vec![ComplexMatrix::zeros(m, m); r * r];
    for k in 0..r {
        for l in 0..r {
            let (x, y) = (&v[k], &v[l]);
            let tb = &mut pb[k * r + l];
            for a in 0..n {
                for a2 in 0..n {
                    tb[(a, a2)] = (0..m).map(|b| x[a * m + b] * y[a2 * m + b].conj()).sum();
                }
            }
            let ta = &mut pa[k * r + l];
            for b in 0..m {
                for b2 in 0..m {
                    ta[(b, b2)] = (0..n).map(|a| x[a * m + b] * y[a * m + b2].conj()).sum();
                }
            }
        }
    }

    let rows = n * n + m * m;
    let columns: Vec<Vec<f64>> = hermitian_basis(r)
        .into_iter()
        .map(|terms| {
            let mut tb = ComplexMatrix::zeros(n, n);
            let mut ta = ComplexMatrix::zeros(m, m);
            for (k, l, c) in terms {
                tb = &tb + &pb[k * r + l].scale(c);
                ta = &ta + &pa[k * r + l].scale(c);
            }
            let mut col = Vec::with_capacity(rows);
            hermitian_coords(&tb, &mut col);
            hermitian_coords(&ta, &mut col);
            col
        })
        .collect();
    let sv = real_singular_values(&columns, rows)?;
    let nonzero = sv.iter().filter(|&&s| s >= tol.nullspace).count();
    let nullity = r * r - nonzero;
    Ok(ExtremalityReport { is_extreme: nullity == 0, nullity, rank: r, eigen_gap, reliable })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub dim_a: usize,
    pub dim_b: usize,
    pub trace: f64,
    pub hermitian_deviation: f64,
    pub min_eigenvalue: f64,
    /// max |tr_B ρ − I/dim_a| entrywise.
    pub margin_a_deviation: f64,
    /// max |tr_A ρ − I/dim_b| entrywise.
    pub margin_b_deviation: f64,
    pub margins_uniform: bool,
    pub margin_ranks: [usize; 2],
    pub spectrum: Vec<f64>,
    pub rank: usize,
    pub rank_bounds: RankBounds,
    pub rank_within_bounds: bool,
    pub extremality: ExtremalityReport,
    pub passed: bool,
}

fn deviation_from_uniform(x: &ComplexMatrix) -> f64 {
    let d = x.rows();
    x.max_abs_diff(&ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)))
}

/// Margins, spectrum, rank and extremality of a state.
///
/// `passed` requires uniform margins and a rank inside the bounds computed
/// from the margin ranks.
pub fn verify_state(rho: &DensityOperator, tol: &Tolerances) -> Result<StateReport> {
    let (ra, rb) = (rho.margin_a(), rho.margin_b());
    let spectrum = spectrum(rho.matrix())?;
    let rank = rank_of_spectrum(&spectrum, tol.rank);
    let ka = numerical_rank(&ra, tol.rank)?;
    let kb = numerical_rank(&rb, tol.rank)?;
    let rank_bounds = rank_bounds(ka.min(kb), ka.max(kb))?;
    let margin_a_deviation = deviation_from_uniform(&ra);
    let margin_b_deviation = deviation_from_uniform(&rb);
    let margins_uniform = margin_a_deviation <= tol.margin && margin_b_deviation <= tol.margin;
    let rank_within_bounds = rank_bounds.contains(rank);
    let extremality = extremality_check(rho, tol)?;
    Ok(StateReport {
        dim_a: rho.dim_a(),
        dim_b: rho.dim_b(),
        trace: rho.matrix().trace().re,
        hermitian_deviation: rho.matrix().hermitian_deviation(),
        min_eigenvalue: spectrum.last().copied().unwrap_or(0.0),
        margin_a_deviation,
        margin_b_deviation,
        margins_uniform,
        margin_ranks: [ka, kb],
        rank,
        rank_bounds,
        rank_within_bounds,
        extremality,
        passed: margins_uniform && rank_within_bounds,
        spectrum,
    })
}
