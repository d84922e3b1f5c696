//! Deterministic Hadamard matrix constructions and verification.
//!
//! A Hadamard matrix is a square `{-1,+1}` matrix whose distinct rows are
//! pairwise orthogonal, equivalently `H * H^T = n * I`. Orders other than 1
//! and 2 must be multiples of 4; Sylvester doubling and the Paley
//! quadratic-residue construction provide witnesses for every admissible
//! order this crate targets.

use crate::error::{Error, Result};
use crate::mat::SignMatrix;

/// Largest order produced by [`sylvester`] (`2^12`).
pub const MAX_SYLVESTER_ORDER: usize = 4096;

/// Largest prime accepted by [`paley`].
pub const MAX_PALEY_PRIME: u64 = 1000;

/// Why an order is or is not admissible for a Hadamard matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdmissibilityReason {
    OrderOne,
    OrderTwo,
    MultipleOfFour,
    Excluded,
}

/// Verdict of the order-admissibility rule: `n = 1`, `n = 2`, or `n = 4k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdmissibilityVerdict {
    pub order: usize,
    pub admissible: bool,
    pub reason: AdmissibilityReason,
}

/// Classifies `n` against the necessary existence condition.
pub fn admissible_order(n: usize) -> Result<AdmissibilityVerdict> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let reason = match n {
        1 => AdmissibilityReason::OrderOne,
        2 => AdmissibilityReason::OrderTwo,
        _ if n.is_multiple_of(4) => AdmissibilityReason::MultipleOfFour,
        _ => AdmissibilityReason::Excluded,
    };
    Ok(AdmissibilityVerdict {
        order: n,
        admissible: reason != AdmissibilityReason::Excluded,
        reason,
    })
}

/// True exactly when `h * h^T = n * I`, checked in integer arithmetic.
pub fn is_hadamard(h: &SignMatrix) -> bool {
    let n = h.order();
    for i in 0..n {
        for j in (i + 1)..n {
            if h.row_dot(i, j) != 0 {
                return false;
            }
        }
    }
    true
}

/// Sylvester doubling: `H_1 = [[1]]`, `H_2m = [[H_m, H_m], [H_m, -H_m]]`.
///
/// Returns the order-`2^k` matrix.
pub fn sylvester(k: u32) -> Result<SignMatrix> {
    if k > 12 {
        return Err(Error::SizeLimit {
            what: "sylvester order",
            limit: MAX_SYLVESTER_ORDER,
            requested: 1usize.checked_shl(k).unwrap_or(usize::MAX),
        });
    }
    let n = 1usize << k;
    // rows[i] is the bit-packed row (set bit = -1) at the current order m.
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64]];
    let mut m = 1usize;
    while m < n {
        rows = double_rows(&rows, m);
        m *= 2;
    }
    let words = n.div_ceil(64);
    let mut flat = Vec::with_capacity(n * words);
    for row in rows {
        debug_assert_eq!(row.len(), words);
        flat.extend(row);
    }
    Ok(SignMatrix::from_bit_rows(n, flat))
}

/// One doubling step on bit-packed rows of order `m`.
fn double_rows(rows: &[Vec<u64>], m: usize) -> Vec<Vec<u64>> {
    let n = 2 * m;
    let words = n.div_ceil(64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let base = &rows[i % m];
        let mut row = vec![0u64; words];
        row[..base.len()].copy_from_slice(base);
        let negate = i >= m;
        if m.is_multiple_of(64) {
            // word-aligned halves
            let off = m / 64;
            for (w, &b) in base.iter().enumerate() {
                row[off + w] = if negate { !b } else { b };
            }
        } else {
            // both halves live in the first word (m < 64)
            let mask = (1u64 << m) - 1;
            let b = if negate { !base[0] & mask } else { base[0] };
            row[0] |= b << m;
        }
        out.push(row);
    }
    out
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley construction `H = I + S` of order `q + 1` for a prime
/// `q = 3 (mod 4)`.
///
/// `S` has a zero diagonal, `+1` across the top border, `-1` down the left
/// border, and core `S_ab = chi(a - b mod q)` with `chi` the
/// quadratic-residue character.
pub fn paley(q: u64) -> Result<SignMatrix> {
    if q > MAX_PALEY_PRIME {
        return Err(Error::SizeLimit {
            what: "paley prime",
            limit: MAX_PALEY_PRIME as usize,
            requested: q as usize,
        });
    }
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("{q} is not prime")));
    }
    if q % 4 != 3 {
        return Err(Error::InvalidParameter(format!(
            "{q} = {} (mod 4), expected 3",
            q % 4
        )));
    }
    let q = q as usize;
    let mut is_square = vec![false; q];
    for x in 1..q {
        is_square[(x * x) % q] = true;
    }
    let n = q + 1;
    let mut h = SignMatrix::all_plus(n);
    for i in 1..n {
        h.set_minus(i, 0);
        let a = i - 1;
        for j in 1..n {
            let b = j - 1;
            if a == b {
                continue; // diagonal comes from I
            }
            let diff = (a + q - b) % q;
            if !is_square[diff] {
                h.set_minus(i, j);
            }
        }
    }
    Ok(h)
}

/// Canonical normalized form: negates rows, then columns, in index order so
/// the first row and first column are all `+1`. Requires a Hadamard input and
/// preserves the Hadamard property.
pub fn normalize_sign(h: &SignMatrix) -> Result<SignMatrix> {
    if !is_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    let mut m = h.clone();
    let n = m.order();
    for i in 0..n {
        if m.entry(i, 0) == -1 {
            m.negate_row(i);
        }
    }
    for j in 0..n {
        if m.entry(0, j) == -1 {
            m.negate_col(j);
        }
    }
    debug_assert!(is_hadamard(&m));
    Ok(m)
}
