use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector over the variables `Z_0 .. Z_n`.
///
/// Ordered by graded lex with `Z_0 > Z_1 > ... > Z_n`: lower total degree
/// first, and within a degree `(2,0) < (1,1) < (0,2)`. This ordering fixes
/// the monomial basis used for all matrix indexing.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// All-zero index over `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The `i`-th unit index over `nvars` variables.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|alpha|`.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Entrywise subtraction; `None` unless `other <= self` entrywise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// All multiindices of total degree `k` over `nvars` variables, in
    /// ascending graded-lex order.
    pub fn all_of_degree(nvars: usize, k: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        gen_rec(&mut cur, 0, k, &mut out);
        out
    }
}

fn gen_rec(cur: &mut Vec<u32>, pos: usize, rem: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = rem;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    // Descending first entry gives ascending graded-lex output.
    for v in (0..=rem).rev() {
        cur[pos] = v;
        gen_rec(cur, pos + 1, rem - v, out);
    }
    cur[pos] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            // Within a degree, larger leading exponents come first.
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let idx = MultiIndex::all_of_degree(2, 2);
        let expect: Vec<MultiIndex> = [[2, 0], [1, 1], [0, 2]]
            .iter()
            .map(|e| MultiIndex::new(e.to_vec()))
            .collect();
        assert_eq!(idx, expect);
        let mut sorted = expect.clone();
        sorted.sort();
        assert_eq!(sorted, expect);
        // Degree dominates.
        assert!(MultiIndex::new(vec![0, 1]) < MultiIndex::new(vec![2, 0]));
    }

    #[test]
    fn degree_enumeration_count() {
        // C(k + n, n) indices of degree k over n + 1 variables.
        assert_eq!(MultiIndex::all_of_degree(3, 4).len(), 15);
        assert_eq!(MultiIndex::all_of_degree(1, 7).len(), 1);
    }

    #[test]
    fn add_sub() {
        let a = MultiIndex::new(vec![2, 1]);
        let b = MultiIndex::new(vec![1, 1]);
        assert_eq!(a.add(&b), MultiIndex::new(vec![3, 2]));
        assert_eq!(a.checked_sub(&b), Some(MultiIndex::new(vec![1, 0])));
        assert_eq!(b.checked_sub(&a), None);
        assert_eq!(a.length(), 3);
    }
}
