//! Exhaustive backtracking search for normalized Hadamard matrices at small
//! orders: existence witnesses and exact counts.
//!
//! Matrices are searched in normalized form (first row and column all `+1`).
//! Candidate rows are tried in lexicographic order of their sign pattern
//! (`+` before `-`), keeping only rows whose inner product with every
//! completed row is exactly zero and discarding any branch whose remaining
//! candidates or column counts can no longer complete a matrix. Rows of the
//! lexicographically least solution are strictly increasing, so the search
//! also enforces that each row exceed its predecessor; the first complete
//! matrix found is therefore the lexicographically least one, independent
//! of scheduling.
//!
//! Inside the search a row is a machine word with column `j` at bit
//! `n - 1 - j` (set bit = `-1`), making integer comparison agree with
//! lexicographic comparison of sign patterns and making row inner products a
//! single XOR/popcount.

use std::sync::atomic::{AtomicU32, Ordering};
use std::time::{Duration, Instant};

use crate::construct::{admissible_order, is_hadamard};
use crate::error::{Error, Result};
use crate::mat::SignMatrix;

/// Existence searches are capped at this order.
pub const MAX_EXISTENCE_ORDER: usize = 20;

/// Exact counting is capped at this order.
pub const MAX_COUNT_ORDER: usize = 8;

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// The lexicographically least normalized Hadamard matrix of the order.
    Found(SignMatrix),
    /// The order is admissible but exhaustion found no matrix.
    NoneExists,
    /// The order fails the `n = 1, 2, 4k` condition; nothing was searched.
    Inadmissible,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub order: usize,
    pub outcome: SearchOutcome,
    /// Partial-row extensions attempted (diagnostic; deterministic for the
    /// single-threaded search).
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Exact count of normalized Hadamard matrices together with enumeration
/// statistics.
#[derive(Clone, Debug)]
pub struct CountResult {
    pub order: usize,
    pub count: u64,
    /// Candidate rows tried by the unpruned full enumeration.
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

fn check_order(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::SizeLimit {
            what,
            limit: cap,
            requested: n,
        });
    }
    Ok(())
}

/// Depth-first existence search; deterministic lexicographically-least result.
pub fn search_existence(n: usize) -> Result<SearchResult> {
    search_existence_parallel(n, 1)
}

/// Existence search split across `workers` threads on the second row's
/// pattern. Every worker reports its subtree's least solution and the
/// reduction takes the minimum, so the result matches the single-threaded
/// search bit for bit.
pub fn search_existence_parallel(n: usize, workers: usize) -> Result<SearchResult> {
    check_order(n, MAX_EXISTENCE_ORDER, "existence search order")?;
    let workers = workers.max(1);
    let start = Instant::now();
    if !admissible_order(n)?.admissible {
        return Ok(SearchResult {
            order: n,
            outcome: SearchOutcome::Inadmissible,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        });
    }
    if n == 1 {
        let m = SignMatrix::from_rows(&[vec![1]]).unwrap();
        return Ok(SearchResult {
            order: n,
            outcome: SearchOutcome::Found(m),
            nodes_explored: 0,
            elapsed: start.elapsed(),
        });
    }

    // Second rows: balanced patterns with column 0 positive, ascending.
    let seconds: Vec<u32> = (0..(1u32 << (n - 1)))
        .filter(|c| c.count_ones() as usize * 2 == n)
        .collect();

    let best_second = AtomicU32::new(u32::MAX);
    let (solution, nodes) = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let seconds = &seconds;
            let best_second = &best_second;
            handles.push(scope.spawn(move || {
                let mut dfs = Dfs::new(n, Some(best_second));
                let mut local: Option<Vec<u32>> = None;
                for c in seconds.iter().skip(w).step_by(workers) {
                    if *c >= best_second.load(Ordering::Relaxed) {
                        break; // a strictly smaller second row already completed
                    }
                    if dfs.search_from_second(*c, seconds) {
                        best_second.fetch_min(*c, Ordering::Relaxed);
                        local = dfs.solution.take();
                        break; // later second rows are lexicographically worse
                    }
                }
                (local, dfs.nodes)
            }));
        }
        let mut best: Option<Vec<u32>> = None;
        let mut nodes = 0u64;
        for h in handles {
            let (sol, n_nodes) = h.join().expect("search worker panicked");
            nodes += n_nodes;
            best = match (best, sol) {
                (None, s) => s,
                (b, None) => b,
                (Some(a), Some(b)) => Some(if a < b { a } else { b }),
            };
        }
        (best, nodes)
    });

    let outcome = match solution {
        Some(rows) => {
            let m = rows_to_matrix(n, &rows);
            debug_assert!(is_hadamard(&m));
            SearchOutcome::Found(m)
        }
        None => SearchOutcome::NoneExists,
    };
    Ok(SearchResult {
        order: n,
        outcome,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Search state for completing a normalized matrix from the fixed prefix
/// `[all-plus row, second row]`, working over whole candidate rows.
///
/// At each level the search holds the sorted list of rows that are still
/// usable: greater than the last chosen row and orthogonal (XOR/popcount) to
/// every chosen row. Two lookahead prunes keep dead subtrees small: a branch
/// dies when fewer usable rows remain than rows are still needed, and when
/// some column could no longer reach its exact n/2 minus signs (columns of a
/// normalized Hadamard matrix are balanced because they are orthogonal to
/// the all-plus column).
struct Dfs<'a> {
    n: usize,
    half: i32,
    rows: Vec<u32>,
    /// Minus signs placed so far in each column.
    col_minus: Vec<i32>,
    nodes: u64,
    solution: Option<Vec<u32>>,
    /// This subtree's second row, compared against the shared best to stop
    /// early in parallel mode.
    second: u32,
    cancel: Option<&'a AtomicU32>,
}

impl<'a> Dfs<'a> {
    fn new(n: usize, cancel: Option<&'a AtomicU32>) -> Dfs<'a> {
        Dfs {
            n,
            half: (n / 2) as i32,
            rows: Vec::with_capacity(n),
            col_minus: vec![0; n],
            nodes: 0,
            solution: None,
            second: 0,
            cancel,
        }
    }

    #[inline]
    fn orthogonal(&self, a: u32, b: u32) -> bool {
        (a ^ b).count_ones() as usize * 2 == self.n
    }

    fn add_col_counts(&mut self, c: u32, delta: i32) {
        for j in 0..self.n {
            if (c >> (self.n - 1 - j)) & 1 == 1 {
                self.col_minus[j] += delta;
            }
        }
    }

    fn cols_feasible(&self) -> bool {
        let remaining = (self.n - self.rows.len()) as i32;
        // column 0 is the all-plus normalization column; every other column
        // is balanced in a completed matrix
        self.col_minus[1..]
            .iter()
            .all(|&cnt| cnt <= self.half && cnt + remaining >= self.half)
    }

    /// Searches the subtree rooted at second row `c`. `pool` holds every
    /// balanced pattern in ascending order.
    fn search_from_second(&mut self, c: u32, pool: &[u32]) -> bool {
        self.nodes += 1;
        self.rows.clear();
        self.col_minus.iter_mut().for_each(|x| *x = 0);
        self.solution = None;
        self.second = c;
        self.rows.push(0);
        self.rows.push(c);
        self.add_col_counts(c, 1);
        let avail: Vec<u32> = pool
            .iter()
            .copied()
            .filter(|&x| x > c && self.orthogonal(x, c))
            .collect();
        let done = self.descend(&avail);
        if !done {
            self.add_col_counts(c, -1);
        }
        done
    }

    /// Tries each usable row in ascending order; the first completed matrix
    /// is the lexicographically least one in this subtree.
    fn descend(&mut self, avail: &[u32]) -> bool {
        let needed = self.n - self.rows.len();
        if needed == 0 {
            self.solution = Some(self.rows.clone());
            return true;
        }
        if let Some(flag) = self.cancel {
            if self.second > flag.load(Ordering::Relaxed) {
                return false; // a smaller second row already completed
            }
        }
        for idx in 0..avail.len() {
            if avail.len() - idx < needed {
                break; // not enough candidates left to fill the matrix
            }
            let c = avail[idx];
            self.nodes += 1;
            self.rows.push(c);
            self.add_col_counts(c, 1);
            if self.cols_feasible() {
                let next: Vec<u32> = avail[idx + 1..]
                    .iter()
                    .copied()
                    .filter(|&x| self.orthogonal(x, c))
                    .collect();
                if next.len() >= needed - 1 && self.descend(&next) {
                    return true;
                }
            }
            self.rows.pop();
            self.add_col_counts(c, -1);
        }
        false
    }
}
fn rows_to_matrix(n: usize, rows: &[u32]) -> SignMatrix {
    let sign_rows: Vec<Vec<i32>> = rows
        .iter()
        .map(|&r| {
            (0..n)
                .map(|j| if (r >> (n - 1 - j)) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect();
    SignMatrix::from_rows(&sign_rows).unwrap()
}

/// Exact count of normalized Hadamard matrices of order `n`.
pub fn count_normalized(n: usize) -> Result<u64> {
    Ok(count_normalized_stats(n)?.count)
}

/// Full enumeration behind [`count_normalized`]: every candidate row pattern
/// is tried at every level and checked against all completed rows, with no
/// partial-row pruning. The node counter makes the cost comparable against
/// the pruned existence search.
pub fn count_normalized_stats(n: usize) -> Result<CountResult> {
    check_order(n, MAX_COUNT_ORDER, "count order")?;
    let start = Instant::now();
    if n == 1 {
        return Ok(CountResult {
            order: 1,
            count: 1,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        });
    }
    // Candidate bits cover the n-1 free columns; column 0 is the forced +1
    // and contributes nothing to any XOR, so it needs no bit.
    let all: Vec<u32> = (0..(1u32 << (n - 1))).collect();
    let mut stack: Vec<u32> = Vec::with_capacity(n - 1);
    let mut count = 0u64;
    let mut nodes = 0u64;
    enumerate(n, &all, &mut stack, &mut count, &mut nodes);
    Ok(CountResult {
        order: n,
        count,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

fn enumerate(n: usize, all: &[u32], stack: &mut Vec<u32>, count: &mut u64, nodes: &mut u64) {
    if stack.len() == n - 1 {
        *count += 1;
        return;
    }
    for &cand in all {
        *nodes += 1;
        // orthogonality to the all-plus first row and every chosen row
        if cand.count_ones() as usize * 2 != n {
            continue;
        }
        if stack
            .iter()
            .all(|&r| (r ^ cand).count_ones() as usize * 2 == n)
        {
            stack.push(cand);
            enumerate(n, all, stack, count, nodes);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::paley;

    #[test]
    fn order_one_found_immediately() {
        let r = search_existence(1).unwrap();
        match r.outcome {
            SearchOutcome::Found(m) => assert_eq!(m.to_smat(), "H 1\n+\n"),
            _ => panic!("expected FOUND"),
        }
    }

    #[test]
    fn order_two_finds_the_coin() {
        let r = search_existence(2).unwrap();
        match r.outcome {
            SearchOutcome::Found(m) => assert_eq!(m.to_smat(), "H 2\n++\n+-\n"),
            _ => panic!("expected FOUND"),
        }
    }

    #[test]
    fn order_three_is_inadmissible() {
        let r = search_existence(3).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Inadmissible));
        assert_eq!(r.nodes_explored, 0);
    }

    #[test]
    fn order_twelve_found_and_verified() {
        // cross-check: the Paley construction proves existence independently
        assert!(is_hadamard(&paley(11).unwrap()));
        let r = search_existence(12).unwrap();
        match r.outcome {
            SearchOutcome::Found(m) => {
                assert!(is_hadamard(&m));
                assert_eq!(m.order(), 12);
                for t in 0..12 {
                    assert_eq!(m.entry(0, t), 1);
                    assert_eq!(m.entry(t, 0), 1);
                }
            }
            _ => panic!("expected FOUND"),
        }
    }

    #[test]
    fn found_matrix_is_identical_across_runs_and_thread_counts() {
        let a = search_existence(12).unwrap();
        let b = search_existence(12).unwrap();
        let c = search_existence_parallel(12, 4).unwrap();
        let (ma, mb, mc) = match (a.outcome, b.outcome, c.outcome) {
            (SearchOutcome::Found(x), SearchOutcome::Found(y), SearchOutcome::Found(z)) => {
                (x, y, z)
            }
            _ => panic!("expected FOUND"),
        };
        assert_eq!(ma, mb);
        assert_eq!(ma, mc);
    }

    /// Independent oracle: walk normalized matrices in row-tuple order with
    /// plain per-row orthogonality checks and report the first completion.
    fn first_completion_by_enumeration(n: usize) -> Vec<u32> {
        fn rec(n: usize, stack: &mut Vec<u32>) -> bool {
            if stack.len() == n {
                return true;
            }
            let prev = *stack.last().unwrap();
            for cand in (prev + 1)..(1u32 << (n - 1)) {
                if stack
                    .iter()
                    .all(|&r| (r ^ cand).count_ones() as usize * 2 == n)
                {
                    stack.push(cand);
                    if rec(n, stack) {
                        return true;
                    }
                    stack.pop();
                }
            }
            false
        }
        let mut stack = vec![0u32];
        assert!(rec(n, &mut stack));
        stack
    }

    #[test]
    fn found_matrix_is_lexicographically_least() {
        for n in [4usize, 8] {
            let oracle = first_completion_by_enumeration(n);
            let m = match search_existence(n).unwrap().outcome {
                SearchOutcome::Found(m) => m,
                other => panic!("{other:?}"),
            };
            let words: Vec<u32> = (0..n)
                .map(|i| {
                    (0..n).fold(0u32, |acc, j| {
                        (acc << 1) | if m.entry(i, j) == -1 { 1 } else { 0 }
                    })
                })
                .collect();
            assert_eq!(words, oracle, "n={n}");
        }
    }

    #[test]
    fn counts_at_tiny_orders() {
        assert_eq!(count_normalized(1).unwrap(), 1);
        assert_eq!(count_normalized(2).unwrap(), 1);
    }

    #[test]
    fn count_matches_brute_force_oracle_at_order_four() {
        // Frozen from an independent enumeration of all 2^9 sign assignments
        // of the free 3x3 block; the acceptance suite re-derives it each run.
        assert_eq!(count_normalized(4).unwrap(), 6);
    }

    #[test]
    fn count_at_order_eight_matches_the_plane_count() {
        // 30 labeled planes of 7 lines, times 7! row orders = 151200; also
        // confirmed by the standalone enumeration oracle before the build
        assert_eq!(count_normalized(8).unwrap(), 151_200);
    }

    #[test]
    fn inadmissible_orders_count_zero_by_enumeration() {
        for n in [3, 5, 6, 7] {
            assert_eq!(count_normalized(n).unwrap(), 0, "order {n}");
        }
    }

    #[test]
    fn pruned_search_explores_fewer_nodes_than_full_enumeration() {
        let pruned = search_existence(8).unwrap();
        let full = count_normalized_stats(8).unwrap();
        assert!(matches!(pruned.outcome, SearchOutcome::Found(_)));
        assert!(
            pruned.nodes_explored < full.nodes_explored,
            "pruned {} vs full {}",
            pruned.nodes_explored,
            full.nodes_explored
        );
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(search_existence(24), Err(Error::SizeLimit { .. })));
        assert!(matches!(count_normalized(9), Err(Error::SizeLimit { .. })));
        assert!(search_existence(0).is_err());
    }
}
