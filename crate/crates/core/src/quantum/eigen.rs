//! Cyclic Jacobi eigensolver for complex Hermitian matrices, and one-sided
//! Jacobi singular values for real matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::{HERMITIAN_TOL, JACOBI_OFF_TOL, MAX_SWEEPS};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Decreasing.
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|r| self.vectors[(r, i)]).collect()
    }

    /// Σ λ_i v_i v_i†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            for i in 0..n {
                let vi = self.vectors[(i, k)] * lam;
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

pub(crate) fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let dev = h.hermitian_deviation();
    if !h.is_finite() || dev > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Sweeps over all (p, q) pairs, annihilating each off-diagonal entry with a
/// phase-adjusted Givens rotation, until the off-diagonal Frobenius norm is
/// below `1e-12 · max(1, ‖H‖_F)`.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    // work on the exactly Hermitian part
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = a.off_diagonal_norm();
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let mag = g.norm();
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let phase = (g / mag).conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // U = diag(1, phase) · [[c, s], [-s, c]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase * -s;
    let u_qq = phase * c;

    let n = a.rows();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..v.rows() {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Singular values of a real `rows × cols` matrix given as columns, in
/// decreasing order; there are `min(rows, cols)` of them.
///
/// One-sided (Hestenes) Jacobi: columns are orthogonalized pairwise, after
/// which the column norms are the singular values. The orientation with fewer
/// columns is used.
pub fn real_singular_values(columns: &[Vec<f64>], rows: usize) -> Result<Vec<f64>> {
    let cols = columns.len();
    let mut work: Vec<Vec<f64>> = if cols <= rows {
        columns.to_vec()
    } else {
        (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect()
    };
    let k = work.len();
    let eps = f64::EPSILON;
    // columns below this squared norm are numerically zero
    let total: f64 = work.iter().flatten().map(|x| x * x).sum();
    let floor = eps * eps * total;
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for i in 0..k {
            for j in i + 1..k {
                let alpha: f64 = work[i].iter().map(|x| x * x).sum();
                let beta: f64 = work[j].iter().map(|x| x * x).sum();
                let gamma: f64 = work[i].iter().zip(&work[j]).map(|(x, y)| x * y).sum();
                if alpha <= floor || beta <= floor || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = work.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (xi, yj) = (*x, *y);
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { sweeps, off: f64::NAN });
        }
    }
    let mut sv: Vec<f64> = work.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let mut h = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    #[test]
    fn diagonal_input() {
        let e = hermitian_eigen(&ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        let e = hermitian_eigen(&ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0))).unwrap();
        assert!(e.values.iter().all(|&x| (x - 0.25).abs() < 1e-15));
    }

    #[test]
    fn pauli_y() {
        let y = ComplexMatrix::from_row_major(
            2,
            2,
            vec![Complex64::new(0., 0.), Complex64::new(0., -1.), Complex64::new(0., 1.), Complex64::new(0., 0.)],
        );
        let e = hermitian_eigen(&y).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_reconstruction_and_orthonormality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=12 {
            for _ in 0..5 {
                let h = random_hermitian(&mut rng, n);
                let e = hermitian_eigen(&h).unwrap();
                assert!(e.reconstruct().max_abs_diff(&h) < 1e-9 && (&e.reconstruct() - &h).frobenius_norm() < 1e-9);
                let vtv = &e.vectors.adjoint() * &e.vectors;
                assert!(vtv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
                assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
                let tr: f64 = e.values.iter().sum();
                assert!((tr - h.trace().re).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new((2 * i + j) as f64, 0.0));
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn singular_values_of_known_matrices() {
        // diag(3, 2) padded to 3 rows
        let cols = vec![vec![3.0, 0.0, 0.0], vec![0.0, 2.0, 0.0]];
        let sv = real_singular_values(&cols, 3).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 2.0).abs() < 1e-14);
        // rank-one 2×4 (wide: transposed internally)
        let cols: Vec<Vec<f64>> = (0..4).map(|j| vec![j as f64, 2.0 * j as f64]).collect();
        let sv = real_singular_values(&cols, 2).unwrap();
        assert_eq!(sv.len(), 2);
        let expected = (5.0f64 * 14.0).sqrt();
        assert!((sv[0] - expected).abs() < 1e-12 && sv[1] < 1e-12);
    }
}
