use std::collections::BTreeMap;

use nalgebra::{Complex, DMatrix};

use crate::polyalg::{CRat, Coeff, HermitianBihomPoly, MultiIndex};

/// Hermitian coefficient matrix `c_{gamma delta}` of a bidegree-`(k, k)`
/// polynomial in the graded-lex monomial basis of degree `k`. Its positive
/// definiteness is the sum-of-squares criterion.
#[derive(Clone, Debug)]
pub struct CoefficientMatrix {
    n: usize,
    k: u32,
    index: Vec<MultiIndex>,
    /// Dense row-major entries, exact.
    entries: Vec<CRat>,
}

/// Builds the coefficient matrix of a Hermitian polynomial of bidegree
/// `(k, k)`; the entry at `(gamma, delta)` is the coefficient of
/// `Z^gamma conj(Z)^delta`.
pub fn assemble_matrix(q: &HermitianBihomPoly<CRat>) -> CoefficientMatrix {
    let n = q.n();
    let k = q.bidegree();
    let index = MultiIndex::all_of_degree(n + 1, k);
    let pos: BTreeMap<&MultiIndex, usize> =
        index.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = index.len();
    let mut entries = vec![CRat::zero(); dim * dim];
    for ((gamma, delta), c) in q.terms() {
        let i = pos[gamma];
        let j = pos[delta];
        entries[i * dim + j] = c.clone();
    }
    CoefficientMatrix { n, k, index, entries }
}

impl CoefficientMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_degree(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// Monomial basis, ascending graded lex.
    pub fn index(&self) -> &[MultiIndex] {
        &self.index
    }

    pub fn entry(&self, i: usize, j: usize) -> &CRat {
        &self.entries[i * self.dim() + j]
    }

    /// Exact equality with the conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i..d).all(|j| *self.entry(j, i) == self.entry(i, j).conj()))
    }

    pub fn to_float(&self) -> DMatrix<Complex<f64>> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.entry(i, j).to_c64())
    }

    /// Construction from exact entries (row-major), for tests and rescaling
    /// experiments.
    pub fn from_entries(n: usize, k: u32, entries: Vec<CRat>) -> Self {
        let index = MultiIndex::all_of_degree(n + 1, k);
        assert_eq!(entries.len(), index.len() * index.len());
        CoefficientMatrix { n, k, index, entries }
    }
}
