use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Coefficient scalar for the polynomial types. Implemented by [`CRat`]
/// (exact complex rationals) and `Complex64`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn to_c64(&self) -> Complex64;
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        CRat {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn from_real(re: BigRational) -> Self {
        CRat {
            re,
            im: BigRational::zero(),
        }
    }

    /// Parses a rational from a decimal string of the form `p/q` or `p`.
    pub fn parse_rational(s: &str) -> Result<BigRational, String> {
        BigRational::from_str(s.trim()).map_err(|e| format!("invalid rational {s:?}: {e}"))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus, exact.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact complex division. Panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sq();
        assert!(!d.is_zero(), "division by zero CRat");
        let num = self.mul(&other.conj());
        CRat {
            re: num.re / &d,
            im: num.im / &d,
        }
    }

    pub fn scale(&self, w: &BigRational) -> Self {
        CRat {
            re: &self.re * w,
            im: &self.im * w,
        }
    }
}

impl Coeff for CRat {
    fn zero() -> Self {
        CRat::from_int(0)
    }

    fn one() -> Self {
        CRat::from_int(1)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        CRat {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    fn sub(&self, other: &Self) -> Self {
        CRat {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        CRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn neg(&self) -> Self {
        CRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn conj(&self) -> Self {
        CRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        CRat {
            re: BigRational::from_integer(v.clone()),
            im: BigRational::zero(),
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Converts a big rational to `f64`, falling back to a quotient of
/// approximations when the parts individually overflow.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let numer = r.numer().magnitude();
    let denom = r.denom().magnitude();
    let shift = numer.bits().max(denom.bits()).saturating_sub(900) as u64;
    let n = (numer >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (denom >> shift).to_f64().unwrap_or(f64::NAN);
    sign * n / d
}

/// Exact `k!` as a big rational.
pub fn factorial(k: u32) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= i;
    }
    BigRational::from_integer(acc)
}

/// Multinomial coefficient `|gamma|! / (gamma_0! ... gamma_n!)` as an integer.
pub fn multinomial(gamma: &[u32]) -> BigInt {
    let total: u32 = gamma.iter().sum();
    let mut acc = BigInt::one();
    let mut rem = total;
    for &g in gamma {
        // C(rem, g) accumulated multiplicatively stays integral.
        acc *= binomial_int(rem, g);
        rem -= g;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a big integer (0 when out of range).
pub fn binomial_int(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as u64 {
        num *= n as u64 - i;
        den *= i + 1;
    }
    num / den
}
