//! Stock test polynomials used across the crate and its examples.

use num::rational::BigRational;

use crate::polyalg::{CRat, HermitianBihomPoly, MultiIndex};

/// `(|Z_0|^2 - |Z_1|^2)^2`: nonnegative on the sphere, vanishing where
/// `|Z_0| = |Z_1|`, so never strictly positive. No power of `r` makes it a
/// sum of Hermitian squares.
pub fn p_dangelo() -> HermitianBihomPoly<CRat> {
    p_eps(BigRational::from_integer(0.into()))
}

/// `(|Z_0|^2 - |Z_1|^2)^2 + eps * |Z_0 Z_1|^2`: strictly positive on the
/// sphere for `eps > 0`, with sphere minimum `eps / 4` at `|Z_0|^2 = 1/2`.
pub fn p_eps(eps: BigRational) -> HermitianBihomPoly<CRat> {
    let key = |a: [u32; 2]| {
        let i = MultiIndex::new(a.to_vec());
        (i.clone(), i)
    };
    let mid = eps - BigRational::from_integer(2.into());
    HermitianBihomPoly::from_terms(
        1,
        2,
        [
            (key([2, 0]), CRat::from_int(1)),
            (key([1, 1]), CRat::from_real(mid)),
            (key([0, 2]), CRat::from_int(1)),
        ],
    )
    .expect("preset is Hermitian by construction")
}

/// `p_eps` with an integer epsilon.
pub fn p_eps_int(eps: i64) -> HermitianBihomPoly<CRat> {
    p_eps(BigRational::from_integer(eps.into()))
}
