use num_complex::Complex64;

use super::complex::UnitaryDense;
use super::sign::{parse_canonical_u64, parse_canonical_usize, split_strict_lines, SignMatrix};
use crate::error::{Error, Result};
use crate::phase::Phase;

/// Largest accepted common denominator; keeps phase arithmetic in `u64`.
const MAX_DENOM: u64 = 1 << 31;

/// Square matrix of unit-modulus entries, stored exactly.
///
/// Entry `(i, j)` is `e^(2*pi*i*m_ij/d)` for an integer `0 <= m_ij < d` over
/// a common denominator `d`. Complex Hadamard matrices and basis systems are
/// kept in this form so file round-trips and equivalence matching are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseMatrix {
    n: usize,
    den: u64,
    entries: Vec<u64>,
}

impl PhaseMatrix {
    pub fn new(n: usize, den: u64, entries: Vec<u64>) -> Result<PhaseMatrix> {
        if n == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        if n > super::sign::MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "phase matrix order",
                limit: super::sign::MAX_ORDER,
                requested: n,
            });
        }
        if den == 0 || den > MAX_DENOM {
            return Err(Error::InvalidParameter(format!(
                "denominator must be in 1..={MAX_DENOM}"
            )));
        }
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&m| m >= den) {
            return Err(Error::InvalidParameter(format!(
                "entry {bad} is outside [0, {den})"
            )));
        }
        Ok(PhaseMatrix { n, den, entries })
    }

    /// Embeds a sign matrix as phases over denominator 2 (`+1 -> 0`, `-1 -> 1`).
    pub fn from_sign_matrix(h: &SignMatrix) -> PhaseMatrix {
        let n = h.order();
        let entries = (0..n * n)
            .map(|k| if h.entry(k / n, k % n) == 1 { 0 } else { 1 })
            .collect();
        PhaseMatrix { n, den: 2, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// Raw numerator of entry `(i, j)` over the common denominator.
    pub fn raw(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Entry `(i, j)` as a reduced exact phase.
    pub fn phase(&self, i: usize, j: usize) -> Phase {
        Phase::new(self.raw(i, j), self.den)
    }

    pub fn entry_complex(&self, i: usize, j: usize) -> Complex64 {
        self.phase(i, j).to_complex()
    }

    /// Materializes entries as floating-point values, dividing by `sqrt(n)`
    /// when `normalize` is set.
    pub fn to_unitary(&self, normalize: bool) -> UnitaryDense {
        let scale = if normalize {
            1.0 / (self.n as f64).sqrt()
        } else {
            1.0
        };
        let entries = (0..self.n * self.n)
            .map(|k| self.phase(k / self.n, k % self.n).to_complex() * scale)
            .collect();
        UnitaryDense::from_entries(self.n, entries).expect("square by construction")
    }

    /// Hermitian inner product of rows `i` and `j` of the unnormalized matrix.
    pub fn row_inner(&self, i: usize, j: usize) -> Complex64 {
        (0..self.n)
            .map(|k| (self.phase(i, k).conj() * self.phase(j, k)).to_complex())
            .sum()
    }

    /// Canonical `.pmat` text: `P <n> <d>` then rows of space-separated numerators.
    pub fn to_pmat(&self) -> String {
        let mut out = format!("P {} {}\n", self.n, self.den);
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&self.raw(i, j).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Strict parser for the `.pmat` format; any deviation is rejected.
    pub fn parse_pmat(text: &str) -> Result<PhaseMatrix> {
        let lines = split_strict_lines(text)?;
        if lines.is_empty() {
            return Err(Error::format(1, "missing header"));
        }
        let header = lines[0]
            .strip_prefix("P ")
            .ok_or_else(|| Error::format(1, "expected `P <n> <d>` header"))?;
        let mut parts = header.split(' ');
        let n = parts
            .next()
            .and_then(parse_canonical_usize)
            .ok_or_else(|| Error::format(1, "order is not a canonical positive integer"))?;
        let den = parts
            .next()
            .and_then(parse_canonical_u64)
            .ok_or_else(|| Error::format(1, "denominator is not a canonical positive integer"))?;
        if parts.next().is_some() {
            return Err(Error::format(1, "unexpected trailing fields in header"));
        }
        if lines.len() != n + 1 {
            return Err(Error::format(
                lines.len(),
                format!("expected {} rows, found {}", n, lines.len() - 1),
            ));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, line) in lines[1..].iter().enumerate() {
            let fields: Vec<&str> = line.split(' ').collect();
            if fields.len() != n {
                return Err(Error::format(
                    i + 2,
                    format!("expected {} fields, found {}", n, fields.len()),
                ));
            }
            for f in fields {
                let m = parse_canonical_u64(f).ok_or_else(|| {
                    Error::format(i + 2, format!("field {f:?} is not a canonical integer"))
                })?;
                entries.push(m);
            }
        }
        PhaseMatrix::new(n, den, entries)
    }
}
