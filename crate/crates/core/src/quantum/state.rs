use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigen;
use super::matrix::ComplexMatrix;
use super::Tolerances;
use crate::error::{Error, Result};

/// A density operator on C^{dim_a} ⊗ C^{dim_b}; basis |a⟩|b⟩ at index a·dim_b + b.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dim_a: usize,
    dim_b: usize,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(dim_a: usize, dim_b: usize, matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(dim_a, dim_b, matrix, &Tolerances::default())
    }

    /// Checks shape, finiteness, Hermiticity, unit trace and positivity.
    pub fn with_tolerances(dim_a: usize, dim_b: usize, matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let d = dim_a * dim_b;
        if d == 0 {
            return Err(Error::InvalidState("dimensions must be positive".into()));
        }
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::InvalidState(format!(
                "expected a {d}x{d} matrix for dims ({dim_a}, {dim_b}), got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol.hermitian {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::InvalidState(format!("trace is {} + {}i, expected 1", tr.re, tr.im)));
        }
        let min = hermitian_eigen(&matrix)?.values.last().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { dim_a, dim_b, matrix })
    }

    /// Pure state |v⟩⟨v|; `v` is normalized first.
    pub fn pure(dim_a: usize, dim_b: usize, v: &[Complex64]) -> Result<Self> {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize vector".into()));
        }
        let u: Vec<Complex64> = v.iter().map(|z| z / norm).collect();
        Self::new(dim_a, dim_b, ComplexMatrix::outer(&u))
    }

    /// I/(dim_a·dim_b).
    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Result<Self> {
        let d = dim_a * dim_b;
        Self::new(dim_a, dim_b, ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0)))
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// ρ_A = tr_B ρ, of size dim_a.
    pub fn margin_a(&self) -> ComplexMatrix {
        partial_trace_b(&self.matrix, self.dim_a, self.dim_b)
    }

    /// ρ_B = tr_A ρ, of size dim_b.
    pub fn margin_b(&self) -> ComplexMatrix {
        partial_trace_a(&self.matrix, self.dim_a, self.dim_b)
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.matrix.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// tr_A over the first factor: returns the dim_b × dim_b block sum.
pub fn partial_trace_a(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), dim_a * dim_b);
    let mut out = ComplexMatrix::zeros(dim_b, dim_b);
    for a in 0..dim_a {
        for b in 0..dim_b {
            for b2 in 0..dim_b {
                out[(b, b2)] += m[(a * dim_b + b, a * dim_b + b2)];
            }
        }
    }
    out
}

/// tr_B over the second factor: returns a dim_a × dim_a matrix.
pub fn partial_trace_b(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), dim_a * dim_b);
    let mut out = ComplexMatrix::zeros(dim_a, dim_a);
    for a in 0..dim_a {
        for a2 in 0..dim_a {
            let mut s = Complex64::new(0.0, 0.0);
            for b in 0..dim_b {
                s += m[(a * dim_b + b, a2 * dim_b + b)];
            }
            out[(a, a2)] = s;
        }
    }
    out
}

/// On-disk form: `entries` holds `[re, im]` pairs in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim_a: usize,
    pub dim_b: usize,
    pub entries: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn into_state(self, tol: &Tolerances) -> Result<DensityOperator> {
        let d = self.dim_a * self.dim_b;
        if self.entries.len() != d * d {
            return Err(Error::InvalidState(format!(
                "expected {} entries for dims ({}, {}), got {}",
                d * d,
                self.dim_a,
                self.dim_b,
                self.entries.len()
            )));
        }
        let data = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        DensityOperator::with_tolerances(self.dim_a, self.dim_b, ComplexMatrix::from_row_major(d, d, data), tol)
    }
}

impl Serialize for DensityOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        StateJson::deserialize(d)?.into_state(&Tolerances::default()).map_err(serde::de::Error::custom)
    }
}
