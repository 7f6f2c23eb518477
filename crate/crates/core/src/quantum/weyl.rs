//! Generalized discrete Weyl operators on C^m and the ψ_ij basis of C^n ⊗ C^m.
//!
//! Tensor index convention: basis vector |a⟩ ⊗ |b⟩ sits at a·m + b.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Cyclic shift X|i⟩ = |i + 1 mod m⟩.
pub fn weyl_x(m: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m, m, |r, c| {
        if r == (c + 1) % m {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// ω^k with ω = exp(2πi/n).
pub fn root_of_unity(n: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64)
}

/// Clock Z_n|i⟩ = ω^i|i⟩ on C^m, ω = exp(2πi/n), requires 1 ≤ n ≤ m.
pub fn weyl_z(n: usize, m: usize) -> Result<ComplexMatrix> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("clock operator needs 1 <= n <= m, got n = {n}, m = {m}")));
    }
    Ok(ComplexMatrix::from_fn(m, m, |r, c| if r == c { root_of_unity(n, r) } else { Complex64::new(0.0, 0.0) }))
}

/// |ψ_ij⟩ = (I_n ⊗ X^i Z_n^j)|ψ_00⟩ with |ψ_00⟩ = n^{-1/2} Σ_{s<n} |s⟩|s⟩,
/// i.e. n^{-1/2} Σ_s ω^{js} |s⟩ ⊗ |s + i mod m⟩.
pub fn psi_state(n: usize, m: usize, i: usize, j: usize) -> Result<Vec<Complex64>> {
    if n == 0 || n > m {
        return Err(Error::Domain(format!("expected 1 <= n <= m, got n = {n}, m = {m}")));
    }
    if i >= m || j >= n {
        return Err(Error::IndexOutOfRange(format!("ψ_({i},{j}) needs i < {m} and j < {n}")));
    }
    let norm = 1.0 / (n as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); n * m];
    for s in 0..n {
        v[s * m + (s + i) % m] = root_of_unity(n, j * s) * norm;
    }
    Ok(v)
}

/// All nm vectors ψ_ij, ordered by (i, j) with j fastest.
pub fn psi_basis(n: usize, m: usize) -> Result<Vec<Vec<Complex64>>> {
    let mut out = Vec::with_capacity(n * m);
    for i in 0..m {
        for j in 0..n {
            out.push(psi_state(n, m, i, j)?);
        }
    }
    Ok(out)
}
