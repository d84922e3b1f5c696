//! Bases unbiased to the standard basis, built from the cyclic shift.
//!
//! The construction takes the standard basis, shifts it cyclically, forms the
//! unitary mapping one onto the other, and uses that unitary's normalized
//! eigenvectors as the new basis. The eigenproblem is solved in closed form:
//! the eigenvector for eigenvalue `e^(2*pi*i*k/n)` has coordinates
//! `w^(k*j)/sqrt(n)` with `w` the primitive n-th root of unity, so the whole
//! basis is the Fourier matrix, emitted here as an exact [`PhaseMatrix`] with
//! denominator `n` and rows ordered by ascending eigenvalue phase.
//!
//! Also here: the complex-Hadamard and unbiasedness checks, row equivalence
//! up to permutation and per-row phases, and an exhaustive explorer for the
//! sign/quarter-turn substitution of the phase/rotation factorization of a
//! unitary.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::{PhaseMatrix, UnitaryDense};
use crate::report::TestReport;
use crate::TOL;

/// Largest order for [`schwinger_basis`].
pub const MAX_BASIS_ORDER: usize = 4096;

/// The order-`n` basis unbiased to the standard basis, as exact phases:
/// entry `(k, j)` is `e^(2*pi*i*k*j/n)`.
///
/// Row `k` is the eigenvector of the cyclic-shift unitary with eigenvalue
/// `e^(2*pi*i*k/n)`; an implied `1/sqrt(n)` normalizes each row.
pub fn schwinger_basis(n: usize) -> Result<PhaseMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if n > MAX_BASIS_ORDER {
        return Err(Error::SizeLimit {
            what: "basis order",
            limit: MAX_BASIS_ORDER,
            requested: n,
        });
    }
    let d = n as u64;
    let mut entries = Vec::with_capacity(n * n);
    for k in 0..n as u64 {
        for j in 0..n as u64 {
            entries.push((k * j) % d);
        }
    }
    PhaseMatrix::new(n, d, entries)
}

/// True when all distinct rows are orthogonal: every pairwise inner product
/// has modulus at most `1e-9 * n` (entries have modulus 1 by construction).
pub fn is_complex_hadamard(p: &PhaseMatrix) -> bool {
    let n = p.order();
    for i in 0..n {
        for j in (i + 1)..n {
            if p.row_inner(i, j).norm() > TOL * n as f64 {
                return false;
            }
        }
    }
    true
}

/// An orthonormal basis for the unbiasedness check: either the Cartesian
/// standard basis or the rows of a phase matrix scaled by `1/sqrt(n)`.
///
/// The standard basis cannot be written as a [`PhaseMatrix`] (its entries are
/// not unit modulus), so it gets its own variant; the CLI exposes it under
/// the literal name `identity`.
#[derive(Clone, Debug)]
pub enum Basis {
    Standard(usize),
    Phases(PhaseMatrix),
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Standard(n) => *n,
            Basis::Phases(p) => p.order(),
        }
    }

    /// Row `i` as a normalized complex vector.
    fn row(&self, i: usize) -> Vec<Complex64> {
        match self {
            Basis::Standard(n) => {
                let mut v = vec![Complex64::new(0.0, 0.0); *n];
                v[i] = Complex64::new(1.0, 0.0);
                v
            }
            Basis::Phases(p) => {
                let scale = 1.0 / (p.order() as f64).sqrt();
                (0..p.order())
                    .map(|j| p.entry_complex(i, j) * scale)
                    .collect()
            }
        }
    }
}

/// Checks that two bases are mutually unbiased: every cross overlap satisfies
/// `|<a_i|b_j>|^2 = 1/n` within `1e-9` after normalization.
///
/// The report carries a `max` summary line plus one line per violating pair.
pub fn unbiased_check(a: &Basis, b: &Basis) -> Result<TestReport> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: b.dim(),
        });
    }
    let target = 1.0 / n as f64;
    let mut report = TestReport::new("unbiased", "overlap2");
    let mut worst = (0.0f64, target, 0usize, 0usize);
    let rows_a: Vec<Vec<Complex64>> = (0..n).map(|i| a.row(i)).collect();
    let rows_b: Vec<Vec<Complex64>> = (0..n).map(|j| b.row(j)).collect();
    let mut violations = Vec::new();
    for (i, ra) in rows_a.iter().enumerate() {
        for (j, rb) in rows_b.iter().enumerate() {
            let overlap: Complex64 = ra.iter().zip(rb).map(|(x, y)| x.conj() * y).sum();
            let observed = overlap.norm_sqr();
            let dev = (observed - target).abs();
            if dev > worst.0 {
                worst = (dev, observed, i, j);
            }
            if dev > TOL {
                violations.push((i, j, observed, dev));
            }
        }
    }
    report.push(
        format!("max i={} j={}", worst.2, worst.3),
        worst.1,
        worst.0,
        worst.0 <= TOL,
    );
    for (i, j, observed, dev) in violations {
        report.push(format!("i={i} j={j}"), observed, dev, false);
    }
    Ok(report)
}

/// Two phase bases verified mutually unbiased at construction.
#[derive(Clone, Debug)]
pub struct MubPair {
    n: usize,
    basis_a: PhaseMatrix,
    basis_b: PhaseMatrix,
}

impl MubPair {
    /// Requires equal dimensions and that both bases pass the
    /// complex-Hadamard check (so each really is an orthogonal basis).
    pub fn new(basis_a: PhaseMatrix, basis_b: PhaseMatrix) -> Result<MubPair> {
        if basis_a.order() != basis_b.order() {
            return Err(Error::Dimension {
                expected: basis_a.order(),
                got: basis_b.order(),
            });
        }
        if !is_complex_hadamard(&basis_a) || !is_complex_hadamard(&basis_b) {
            return Err(Error::NotComplexHadamard);
        }
        Ok(MubPair {
            n: basis_a.order(),
            basis_a,
            basis_b,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis_a(&self) -> &PhaseMatrix {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &PhaseMatrix {
        &self.basis_b
    }

    pub fn unbiased_report(&self) -> Result<TestReport> {
        unbiased_check(
            &Basis::Phases(self.basis_a.clone()),
            &Basis::Phases(self.basis_b.clone()),
        )
    }
}

/// True when some row permutation and per-row exact phases map `b` onto `a`:
/// `a[pi(k)][j] = c_k * b[k][j]` for all `j`, compared as reduced rational
/// phases. Row orderings and per-row phases are presentation conventions, so
/// matrices differing only in those are the same basis.
pub fn equiv_rows_phase(a: &PhaseMatrix, b: &PhaseMatrix) -> bool {
    let n = a.order();
    if b.order() != n {
        return false;
    }
    let mut taken = vec![false; n];
    let mut assignment = vec![usize::MAX; n];
    match_rows(a, b, 0, &mut taken, &mut assignment)
}

/// Greedy row matching with backtracking: rows of `b` in order, candidate
/// rows of `a` ascending.
fn match_rows(
    a: &PhaseMatrix,
    b: &PhaseMatrix,
    k: usize,
    taken: &mut [bool],
    assignment: &mut [usize],
) -> bool {
    let n = a.order();
    if k == n {
        return true;
    }
    for i in 0..n {
        if taken[i] || !rows_proportional(a, i, b, k) {
            continue;
        }
        taken[i] = true;
        assignment[k] = i;
        if match_rows(a, b, k + 1, taken, assignment) {
            return true;
        }
        taken[i] = false;
        assignment[k] = usize::MAX;
    }
    false
}

/// Is row `i` of `a` equal to a constant exact phase times row `k` of `b`?
fn rows_proportional(a: &PhaseMatrix, i: usize, b: &PhaseMatrix, k: usize) -> bool {
    let n = a.order();
    let c = a.phase(i, 0) / b.phase(k, 0);
    (1..n).all(|j| a.phase(i, j) == c * b.phase(k, j))
}

/// Outcome of the substitution experiment over one parameter assignment
/// space, identifying the assignments whose product matrix is real Hadamard.
#[derive(Clone, Debug)]
pub struct DitaReport {
    pub n: usize,
    pub assignments_tested: u64,
    pub hits: Vec<DitaHit>,
}

/// One assignment: diagonal signs in, rotation-angle signs, diagonal signs
/// out. Bit `0` means `+1` (or `+pi/4`), bit `1` means `-1` (or `-pi/4`);
/// rendered strings read left to right in component order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DitaHit {
    pub diag_in: u32,
    pub angles: u32,
    pub diag_out: u32,
}

impl DitaReport {
    /// Line format: `tested: <N>` then one `hit: <D0> <theta> <D1>` line per
    /// hit, lexicographically sorted.
    pub fn render(&self) -> String {
        let pairs = self.n * (self.n - 1) / 2;
        let mut out = format!("tested: {}\n", self.assignments_tested);
        for h in &self.hits {
            out.push_str(&format!(
                "hit: {:0n$b} {:0p$b} {:0n$b}\n",
                h.diag_in,
                h.angles,
                h.diag_out,
                n = self.n,
                p = pairs,
            ));
        }
        out
    }
}

/// Plane rotation by `theta` in coordinates `(i, j)` of dimension `n`,
/// row-major: `cos` on both diagonal slots, `-sin` at `(i, j)`, `sin` at
/// `(j, i)`.
fn plane_rotation(n: usize, i: usize, j: usize, theta: f64) -> Vec<f64> {
    let mut g = vec![0.0; n * n];
    for t in 0..n {
        g[t * n + t] = 1.0;
    }
    let (s, c) = theta.sin_cos();
    g[i * n + i] = c;
    g[i * n + j] = -s;
    g[j * n + i] = s;
    g[j * n + j] = c;
    g
}

fn mat_mul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Rebuilds the real matrix `D0 * G_01(t_01) * ... * G_{n-2,n-1} * D1` for
/// one assignment, as a dense unitary.
pub fn dita_unitary(n: usize, hit: &DitaHit) -> Result<UnitaryDense> {
    if !(n == 2 || n == 4) {
        return Err(Error::InvalidParameter(format!(
            "substitution explorer supports n = 2 or 4, got {n}"
        )));
    }
    let rot = rotation_product(n, hit.angles);
    let entries = (0..n * n)
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let s0 = sign_from_mask(hit.diag_in, n, i);
            let s1 = sign_from_mask(hit.diag_out, n, j);
            Complex64::new(s0 * rot[i * n + j] * s1, 0.0)
        })
        .collect();
    UnitaryDense::from_entries(n, entries)
}

fn sign_from_mask(mask: u32, width: usize, idx: usize) -> f64 {
    if (mask >> (width - 1 - idx)) & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Product of all plane rotations for one angle-sign assignment, pairs
/// `(i, j)` with `i < j` in lexicographic order, left to right.
fn rotation_product(n: usize, angle_mask: u32) -> Vec<f64> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut acc = {
        let mut id = vec![0.0; n * n];
        for t in 0..n {
            id[t * n + t] = 1.0;
        }
        id
    };
    let quarter = std::f64::consts::FRAC_PI_4;
    for (t, &(i, j)) in pairs.iter().enumerate() {
        let theta = if (angle_mask >> (pairs.len() - 1 - t)) & 1 == 1 {
            -quarter
        } else {
            quarter
        };
        acc = mat_mul(n, &acc, &plane_rotation(n, i, j, theta));
    }
    acc
}

/// Exhaustively tests every assignment of diagonal signs and `+-pi/4`
/// rotation angles in `U = D0 * (plane rotations) * D1`, recording the
/// assignments for which `sqrt(n) * U` has all entries in `{-1,+1}` within
/// `1e-9`. The experiment reports evidence only; nothing here asserts that
/// hits must exist.
pub fn dita_explore(n: usize) -> Result<DitaReport> {
    if !(n == 2 || n == 4) {
        return Err(Error::InvalidParameter(format!(
            "substitution explorer supports n = 2 or 4, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let root_n = (n as f64).sqrt();
    let mut tested = 0u64;
    let mut hits = Vec::new();
    for diag_in in 0..(1u32 << n) {
        for angles in 0..(1u32 << pairs) {
            let rot = rotation_product(n, angles);
            for diag_out in 0..(1u32 << n) {
                tested += 1;
                // Diagonal signs cannot change entry magnitudes, but the
                // enumeration stays literal: every assignment is materialized
                // and tested on its own.
                let flat = (0..n * n).all(|t| {
                    let (i, j) = (t / n, t % n);
                    let s0 = sign_from_mask(diag_in, n, i);
                    let s1 = sign_from_mask(diag_out, n, j);
                    ((s0 * rot[t] * s1 * root_n).abs() - 1.0).abs() <= TOL
                });
                if flat {
                    hits.push(DitaHit {
                        diag_in,
                        angles,
                        diag_out,
                    });
                }
            }
        }
    }
    Ok(DitaReport {
        n,
        assignments_tested: tested,
        hits,
    })
}
