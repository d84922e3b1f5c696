use crate::error::{Error, Result};

/// Largest supported order for sign matrices, matching the construction caps.
pub(crate) const MAX_ORDER: usize = 4096;

/// Square matrix with entries in `{-1,+1}`.
///
/// Rows are bit-packed, one bit per column (set bit = `-1`), so a row inner
/// product is `n - 2*popcount(xor)` in exact integer arithmetic. Unused bits
/// of the trailing word are always zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignMatrix {
    n: usize,
    words_per_row: usize,
    rows: Vec<u64>,
}

impl SignMatrix {
    /// Builds from explicit `+1`/`-1` entries, one inner vector per row.
    pub fn from_rows(rows: &[Vec<i32>]) -> Result<SignMatrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "sign matrix order",
                limit: MAX_ORDER,
                requested: n,
            });
        }
        let mut m = SignMatrix::all_plus(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                match e {
                    1 => {}
                    -1 => m.set_minus(i, j),
                    _ => {
                        return Err(Error::InvalidParameter(format!(
                            "entry ({i},{j}) is {e}, expected +1 or -1"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// All-`+1` matrix of order `n`; callers flip entries as needed.
    pub(crate) fn all_plus(n: usize) -> SignMatrix {
        let words_per_row = n.div_ceil(64);
        SignMatrix {
            n,
            words_per_row,
            rows: vec![0; n * words_per_row],
        }
    }

    /// Builds from pre-packed bit rows (set bit = `-1`), little-endian within
    /// each word, column `j` at word `j / 64`, bit `j % 64`.
    pub(crate) fn from_bit_rows(n: usize, rows: Vec<u64>) -> SignMatrix {
        let words_per_row = n.div_ceil(64);
        debug_assert_eq!(rows.len(), n * words_per_row);
        SignMatrix {
            n,
            words_per_row,
            rows,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at `(i, j)`: `+1` or `-1`.
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        assert!(i < self.n && j < self.n);
        let w = self.rows[i * self.words_per_row + j / 64];
        1 - 2 * ((w >> (j % 64)) & 1) as i32
    }

    pub(crate) fn set_minus(&mut self, i: usize, j: usize) {
        self.rows[i * self.words_per_row + j / 64] |= 1u64 << (j % 64);
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Inner product of rows `i` and `j` in exact integer arithmetic.
    pub fn row_dot(&self, i: usize, j: usize) -> i64 {
        let a = self.row_words(i);
        let b = self.row_words(j);
        let differing: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
        self.n as i64 - 2 * differing as i64
    }

    /// The Gram matrix `H * H^T` as exact integers.
    ///
    /// A matrix is Hadamard exactly when this equals `n * I`.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.row_dot(i, j)).collect())
            .collect()
    }

    /// Flips the sign of every entry in row `i`.
    pub(crate) fn negate_row(&mut self, i: usize) {
        let start = i * self.words_per_row;
        for w in 0..self.words_per_row {
            self.rows[start + w] = !self.rows[start + w] & self.word_mask(w);
        }
    }

    /// Flips the sign of every entry in column `j`.
    pub(crate) fn negate_col(&mut self, j: usize) {
        let (word, bit) = (j / 64, 1u64 << (j % 64));
        for i in 0..self.n {
            self.rows[i * self.words_per_row + word] ^= bit;
        }
    }

    fn word_mask(&self, w: usize) -> u64 {
        let cols_before = w * 64;
        let cols_here = (self.n - cols_before).min(64);
        if cols_here == 64 {
            u64::MAX
        } else {
            (1u64 << cols_here) - 1
        }
    }

    /// Canonical `.smat` text: `H <n>` then `n` rows of `+`/`-` characters.
    pub fn to_smat(&self) -> String {
        let mut out = String::with_capacity((self.n + 2) * (self.n + 1));
        out.push_str(&format!("H {}\n", self.n));
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(if self.entry(i, j) == 1 { '+' } else { '-' });
            }
            out.push('\n');
        }
        out
    }

    /// Strict parser for the `.smat` format; any deviation is rejected.
    pub fn parse_smat(text: &str) -> Result<SignMatrix> {
        let lines = split_strict_lines(text)?;
        if lines.is_empty() {
            return Err(Error::format(1, "missing header"));
        }
        let header = lines[0]
            .strip_prefix("H ")
            .ok_or_else(|| Error::format(1, "expected `H <n>` header"))?;
        let n = parse_canonical_usize(header)
            .ok_or_else(|| Error::format(1, "order is not a canonical positive integer"))?;
        if n == 0 {
            return Err(Error::format(1, "order must be at least 1"));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "sign matrix order",
                limit: MAX_ORDER,
                requested: n,
            });
        }
        if lines.len() != n + 1 {
            return Err(Error::format(
                lines.len(),
                format!("expected {} rows, found {}", n, lines.len() - 1),
            ));
        }
        let mut m = SignMatrix::all_plus(n);
        for (i, line) in lines[1..].iter().enumerate() {
            if line.chars().count() != n {
                return Err(Error::format(
                    i + 2,
                    format!("row must have {n} characters"),
                ));
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '+' => {}
                    '-' => m.set_minus(i, j),
                    _ => {
                        return Err(Error::format(
                            i + 2,
                            format!("invalid character {c:?}, expected `+` or `-`"),
                        ))
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Splits text into lines requiring a trailing `\n` on every line, including
/// the last, and no carriage returns.
pub(crate) fn split_strict_lines(text: &str) -> Result<Vec<&str>> {
    if text.is_empty() {
        return Err(Error::format(1, "empty input"));
    }
    if !text.ends_with('\n') {
        return Err(Error::format(
            text.lines().count(),
            "missing trailing newline",
        ));
    }
    let body = &text[..text.len() - 1];
    let lines: Vec<&str> = body.split('\n').collect();
    for (idx, line) in lines.iter().enumerate() {
        if line.contains('\r') {
            return Err(Error::format(idx + 1, "carriage return not allowed"));
        }
    }
    Ok(lines)
}

/// Parses a non-negative integer written canonically: digits only, and no
/// leading zero unless the value is exactly `0`.
pub(crate) fn parse_canonical_usize(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

pub(crate) fn parse_canonical_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_of_order_one() {
        let h = SignMatrix::from_rows(&[vec![1]]).unwrap();
        assert_eq!(h.gram(), vec![vec![1]]);
    }

    #[test]
    fn gram_of_two_by_two_coin() {
        let h = SignMatrix::from_rows(&[vec![1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(h.gram(), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn gram_of_rank_one_pattern() {
        let h = SignMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(h.gram(), vec![vec![2, 2], vec![2, 2]]);
    }

    #[test]
    fn rejects_non_sign_entries() {
        assert!(SignMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).is_err());
        assert!(SignMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn smat_round_trip_is_byte_identical() {
        let h = SignMatrix::from_rows(&[vec![1, -1], vec![-1, -1]]).unwrap();
        let text = h.to_smat();
        assert_eq!(text, "H 2\n+-\n--\n");
        let back = SignMatrix::parse_smat(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_smat(), text);
    }

    #[test]
    fn smat_parser_rejects_deviations() {
        for bad in [
            "",
            "H 2\n+-\n--",     // missing trailing newline
            "H 2\n+-\n--\n\n", // extra blank line
            "H 2\n+-\n",       // missing row
            "H 2\n+-\n-- \n",  // trailing whitespace
            "H 2\n+-\n-x\n",   // invalid character
            "H 02\n+-\n--\n",  // non-canonical order
            "H2\n+-\n--\n",    // malformed header
            "H 2\r\n+-\n--\n", // carriage return
            "H 0\n",           // zero order
            "H 2\n+-+\n--\n",  // wrong row width
        ] {
            assert!(SignMatrix::parse_smat(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn negation_helpers_flip_entries() {
        let mut h = SignMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap();
        h.negate_row(0);
        assert_eq!((h.entry(0, 0), h.entry(0, 1)), (-1, 1));
        h.negate_col(0);
        assert_eq!((h.entry(0, 0), h.entry(1, 0)), (1, 1));
    }

    mod props {
        #![allow(clippy::needless_range_loop)] // (i, j) indexes the Gram matrix symmetrically

        use super::*;
        use proptest::prelude::*;

        fn arb_sign_matrix(max_n: usize) -> impl Strategy<Value = SignMatrix> {
            (1..=max_n)
                .prop_flat_map(|n| {
                    proptest::collection::vec(proptest::collection::vec(proptest::bool::ANY, n), n)
                })
                .prop_map(|bits| {
                    let rows: Vec<Vec<i32>> = bits
                        .iter()
                        .map(|r| r.iter().map(|&b| if b { -1 } else { 1 }).collect())
                        .collect();
                    SignMatrix::from_rows(&rows).unwrap()
                })
        }

        proptest! {
            #[test]
            fn gram_is_symmetric_with_diagonal_n(h in arb_sign_matrix(12)) {
                let n = h.order();
                let g = h.gram();
                for i in 0..n {
                    prop_assert_eq!(g[i][i], n as i64);
                    for j in 0..n {
                        prop_assert_eq!(g[i][j], g[j][i]);
                    }
                }
            }

            #[test]
            fn smat_text_round_trips(h in arb_sign_matrix(10)) {
                let text = h.to_smat();
                let back = SignMatrix::parse_smat(&text).unwrap();
                prop_assert_eq!(&back, &h);
                prop_assert_eq!(back.to_smat(), text);
            }

            #[test]
            fn packed_gram_agrees_with_naive_dot_products(h in arb_sign_matrix(70)) {
                // second route around the bit packing: entry-wise sums
                let n = h.order();
                let g = h.gram();
                for i in 0..n {
                    for j in 0..n {
                        let naive: i64 = (0..n)
                            .map(|k| (h.entry(i, k) * h.entry(j, k)) as i64)
                            .sum();
                        prop_assert_eq!(g[i][j], naive);
                    }
                }
            }
        }
    }
}
