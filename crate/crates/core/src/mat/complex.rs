use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude vector.
#[derive(Clone, Debug)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> StateVector {
        StateVector { amps }
    }

    /// Standard basis vector `e_i` in dimension `n`.
    pub fn basis_state(n: usize, i: usize) -> Result<StateVector> {
        if i >= n {
            return Err(Error::InvalidParameter(format!(
                "basis index {i} out of range for dimension {n}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[i] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps })
    }

    /// Validates the unit-norm invariant before returning the state.
    pub fn normalized(amps: Vec<Complex64>) -> Result<StateVector> {
        let v = StateVector { amps };
        if !v.is_unit(crate::TOL) {
            return Err(Error::InvalidParameter(format!(
                "state is not normalized (|norm^2 - 1| = {:e})",
                (v.norm_sq() - 1.0).abs()
            )));
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// True when the squared norm is within `tol` of 1.
    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Euclidean distance to another vector of the same dimension.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

/// Dense complex square matrix; the floating-point home of unitaries.
///
/// Construction does not validate unitarity: use [`UnitaryDense::is_unitary`]
/// or [`UnitaryDense::unitarity_defect`] where the invariant matters.
#[derive(Clone, Debug)]
pub struct UnitaryDense {
    n: usize,
    entries: Vec<Complex64>,
}

impl UnitaryDense {
    pub fn from_entries(n: usize, entries: Vec<Complex64>) -> Result<UnitaryDense> {
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(UnitaryDense { n, entries })
    }

    pub fn identity(n: usize) -> UnitaryDense {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryDense { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn adjoint(&self) -> UnitaryDense {
        let entries = (0..self.n * self.n)
            .map(|k| self.entry(k % self.n, k / self.n).conj())
            .collect();
        UnitaryDense { n: self.n, entries }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.dim() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: v.dim(),
            });
        }
        let amps = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entry(i, j) * v.amplitudes()[j])
                    .sum()
            })
            .collect();
        Ok(StateVector::new(amps))
    }

    /// `max_ij |(U^dagger U - I)_ij|`, the distance from unitarity.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                // (U^dagger U)_ij = sum_k conj(U_ki) U_kj
                let s: Complex64 = (0..self.n)
                    .map(|k| self.entry(k, i).conj() * self.entry(k, j))
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}
