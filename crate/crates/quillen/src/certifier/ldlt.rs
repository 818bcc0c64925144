use num::rational::BigRational;
use num::Zero;

use super::matrix::CoefficientMatrix;
use crate::polyalg::{CRat, Coeff};

/// Exact `P M P* = L D L*` factorization of a Hermitian rational matrix with
/// diagonal pivoting: `perm[i]` is the original index eliminated at step
/// `i`, `lower` is unit lower triangular in pivot order, `pivots` holds the
/// real diagonal of `D`.
#[derive(Clone, Debug)]
pub struct ExactLdlt {
    pub perm: Vec<usize>,
    pub lower: Vec<Vec<CRat>>,
    pub pivots: Vec<BigRational>,
}

#[derive(Clone, Debug)]
pub enum LdltOutcome {
    /// All pivots strictly positive; full factorization attached.
    PositiveDefinite(ExactLdlt),
    /// Factorization stopped at a zero remainder: PSD with the given rank.
    PositiveSemidefinite { rank: usize, factor: ExactLdlt },
    /// A negative pivot or a zero pivot with nonzero remaining column.
    Indefinite,
}

/// Pivoted rational LDL* of a Hermitian coefficient matrix. Decides
/// definiteness exactly: no floating arithmetic anywhere on this path.
pub fn ldlt_pivoted(m: &CoefficientMatrix) -> LdltOutcome {
    let dim = m.dim();
    debug_assert!(m.is_hermitian());
    let mut a: Vec<Vec<CRat>> = (0..dim)
        .map(|i| (0..dim).map(|j| m.entry(i, j).clone()).collect())
        .collect();
    let mut order: Vec<usize> = (0..dim).collect();
    let mut lower: Vec<Vec<CRat>> = vec![vec![CRat::zero(); dim]; dim];
    let mut pivots: Vec<BigRational> = Vec::with_capacity(dim);

    for step in 0..dim {
        // Largest remaining diagonal entry (diagonals of a Hermitian matrix
        // are real).
        let (best, best_val) = (step..dim)
            .map(|i| (i, a[order[i]][order[i]].re.clone()))
            .max_by(|x, y| x.1.cmp(&y.1))
            .expect("nonempty remainder");
        if best_val.is_zero() {
            // PSD iff the whole remaining block vanishes.
            let remainder_zero = (step..dim).all(|i| {
                (step..dim).all(|j| a[order[i]][order[j]].is_zero())
            });
            if remainder_zero {
                for l in lower.iter_mut() {
                    l.truncate(step);
                }
                return LdltOutcome::PositiveSemidefinite {
                    rank: step,
                    factor: ExactLdlt {
                        perm: order,
                        lower,
                        pivots,
                    },
                };
            }
            return LdltOutcome::Indefinite;
        }
        if best_val < BigRational::zero() {
            return LdltOutcome::Indefinite;
        }
        order.swap(step, best);
        let p = order[step];
        let pivot = CRat::from_real(best_val.clone());
        lower[step][step] = CRat::from_int(1);
        for i in (step + 1)..dim {
            let q = order[i];
            let l = a[q][p].div(&pivot);
            lower[i][step] = l;
        }
        for i in (step + 1)..dim {
            let q = order[i];
            for j in (step + 1)..dim {
                let s = order[j];
                let update = lower[i][step]
                    .mul(&lower[j][step].conj())
                    .mul(&pivot);
                a[q][s] = a[q][s].sub(&update);
            }
        }
        pivots.push(best_val);
    }
    LdltOutcome::PositiveDefinite(ExactLdlt {
        perm: order,
        lower,
        pivots,
    })
}

/// True iff the exact Hermitian matrix is positive definite.
pub fn is_positive_definite_exact(m: &CoefficientMatrix) -> bool {
    matches!(ldlt_pivoted(m), LdltOutcome::PositiveDefinite(_))
}

/// True iff the exact Hermitian matrix is positive semidefinite.
pub fn is_positive_semidefinite_exact(m: &CoefficientMatrix) -> bool {
    !matches!(ldlt_pivoted(m), LdltOutcome::Indefinite)
}

impl ExactLdlt {
    /// Reconstructs `M[i][j] = sum_k L'[i][k] d_k conj(L'[j][k])` where `L'`
    /// is the factor carried back to the original index order.
    pub fn reconstruct_entry(&self, i: usize, j: usize) -> CRat {
        let pos_i = self.perm.iter().position(|&p| p == i).unwrap();
        let pos_j = self.perm.iter().position(|&p| p == j).unwrap();
        let mut acc = CRat::zero();
        for (k, d) in self.pivots.iter().enumerate() {
            let li = &self.lower[pos_i][k];
            let lj = &self.lower[pos_j][k];
            acc = acc.add(&li.mul(&lj.conj()).scale(d));
        }
        acc
    }
}
