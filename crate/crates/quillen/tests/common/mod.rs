//! Independent oracles shared by the integration suites. Everything here is
//! computed from first principles (binomials and factorials only), not via
//! the crate's own polynomial machinery.

use num::bigint::BigInt;
use num::rational::BigRational;
use quillen::polyalg::scalar_support::binomial_int;
use quillen::polyalg::MultiIndex;

/// Diagonal entry of the coefficient matrix of
/// `r^m ((|Z0|^2 - |Z1|^2)^2 + eps |Z0 Z1|^2)` (n = 1) at the basis index
/// whose first exponent is `a`: expanding `r^m = sum_k C(m,k) Z0^k Z1^(m-k)
/// conj(...)` against the three diagonal terms of the quartic gives
/// `C(m, a-2) + (eps - 2) C(m, a-1) + C(m, a)`.
pub fn eps_family_diag(m: u32, a: u32, eps: &BigRational) -> BigRational {
    let c = |k: i64| -> BigRational {
        if k < 0 || k > m as i64 {
            BigRational::from_integer(0.into())
        } else {
            BigRational::from_integer(binomial_int(m, k as u32))
        }
    };
    let two = BigRational::from_integer(2.into());
    c(a as i64 - 2) + (eps.clone() - two) * c(a as i64 - 1) + c(a as i64)
}

/// Monomial moment on CP^n with the Fubini-Study normalization:
/// `int |Z^alpha|^2 Omega = alpha! n! / (|alpha| + n)!` for a unit-sphere
/// representative.
pub fn monomial_moment(alpha: &MultiIndex, n: usize) -> f64 {
    let mut num = BigInt::from(1);
    for e in alpha.entries() {
        num *= factorial_int(*e as u64);
    }
    num *= factorial_int(n as u64);
    let den = factorial_int(alpha.length() as u64 + n as u64);
    let q = BigRational::new(num, den);
    num_to_f64(&q)
}

fn factorial_int(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn num_to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().expect("fits in f64")
}

/// `n! m! / (m + n)!` as f64, the closed form of the kernel power integral.
pub fn kernel_moment(m: u32, n: usize) -> f64 {
    let q = BigRational::new(
        factorial_int(n as u64) * factorial_int(m as u64),
        factorial_int(m as u64 + n as u64),
    );
    num_to_f64(&q)
}
