//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], which is implemented
//! for the rationals ([`Rational`], arbitrary precision, always in lowest
//! terms) and for the prime fields [`Fp`]. The prime is a const parameter so
//! that `zero()` and `one()` need no runtime context.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// An exact field usable as the coefficient ring of every algebra here.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// Image of an integer under the canonical ring map.
    fn from_i64(v: i64) -> Self;

    /// Image of a rational, or `None` when its denominator vanishes in the field.
    fn from_rational(r: &Rational) -> Option<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic() -> u64;

    /// Short field label ("Q", "F3", ...).
    fn field_name() -> String;

    /// Parse the text form ("p/q", integers).
    fn parse_scalar(s: &str) -> Result<Self>;

    /// The value as a machine integer when it is one (for `F_p` the
    /// representative in `[0, p)`).
    fn to_i64(&self) -> Option<i64>;

    /// Rank of the matrix given by `rows` (each of length `ncols`).
    ///
    /// The default is sparse Gaussian elimination over the field; the
    /// rationals override it with a fraction-free integer variant.
    fn rank_of_rows(rows: Vec<Vec<Self>>, ncols: usize) -> usize {
        crate::exact_linalg::sparse_rank(rows, ncols)
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn rank_of_rows(rows: Vec<Vec<Self>>, ncols: usize) -> usize {
        crate::exact_linalg::fraction_free_rank(rows, ncols)
    }
}

/// Parse "a", "-a" or "a/b" into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidScalar(s.to_string());
    match t.split_once('/') {
        None => {
            let v = BigInt::from_str(t).map_err(|_| bad())?;
            Ok(Rational::from_integer(v))
        }
        Some((a, b)) => {
            let num = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Text form used in every serialized output: "p/q" or a bare integer.
pub fn format_scalar<S: Scalar>(s: &S) -> String {
    s.to_string()
}

/// True when `r` is a nonnegative rational.
pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

pub(crate) const fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Runtime primality test (trial division; fine for 32-bit moduli).
pub fn is_prime(p: u64) -> bool {
    is_prime_u64(p)
}

/// Moduli accepted at run time (the prime is a type parameter of [`Fp`], so
/// run-time selection goes through this fixed table).
pub const SUPPORTED_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 65537, 1000003, 998244353, 1000000007,
    2147483647,
];

/// Evaluates `$body` with the const `$P` bound to the run-time prime `$p`,
/// or yields `None` when `$p` is not in [`SUPPORTED_PRIMES`].
#[macro_export]
macro_rules! with_prime {
    ($p:expr, $P:ident => $body:expr) => {{
        match $p {
            2 => {
                const $P: u64 = 2;
                Some($body)
            }
            3 => {
                const $P: u64 = 3;
                Some($body)
            }
            5 => {
                const $P: u64 = 5;
                Some($body)
            }
            7 => {
                const $P: u64 = 7;
                Some($body)
            }
            11 => {
                const $P: u64 = 11;
                Some($body)
            }
            13 => {
                const $P: u64 = 13;
                Some($body)
            }
            17 => {
                const $P: u64 = 17;
                Some($body)
            }
            19 => {
                const $P: u64 = 19;
                Some($body)
            }
            23 => {
                const $P: u64 = 23;
                Some($body)
            }
            29 => {
                const $P: u64 = 29;
                Some($body)
            }
            31 => {
                const $P: u64 = 31;
                Some($body)
            }
            37 => {
                const $P: u64 = 37;
                Some($body)
            }
            41 => {
                const $P: u64 = 41;
                Some($body)
            }
            43 => {
                const $P: u64 = 43;
                Some($body)
            }
            47 => {
                const $P: u64 = 47;
                Some($body)
            }
            65537 => {
                const $P: u64 = 65537;
                Some($body)
            }
            1000003 => {
                const $P: u64 = 1000003;
                Some($body)
            }
            998244353 => {
                const $P: u64 = 998244353;
                Some($body)
            }
            1000000007 => {
                const $P: u64 = 1000000007;
                Some($body)
            }
            2147483647 => {
                const $P: u64 = 2147483647;
                Some($body)
            }
            _ => None,
        }
    }};
}

/// Element of the prime field `Z/PZ`, stored as its representative in `[0, P)`.
///
/// `P` must be a prime below `2^32`; this is checked at compile time the
/// first time a value is constructed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const VALID: () = assert!(
        P < (1u64 << 32) && is_prime_u64(P),
        "modulus must be a 32-bit prime"
    );

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl<'a, const P: u64> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self + *rhs;
    }
}

impl<'a, const P: u64> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self - *rhs;
    }
}

impl<'a, const P: u64> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, rhs: &'a Fp<P>) {
        *self = *self * *rhs;
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn from_rational(r: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = r.numer().mod_floor(&p).to_u64()?;
        let den = r.denom().mod_floor(&p).to_u64()?;
        Fp::new(den).inverse().map(|d| Fp::new(num) * d)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }

    fn field_name() -> String {
        format!("F{P}")
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let r = parse_rational(s)?;
        Self::from_rational(&r)
            .ok_or_else(|| Error::InvalidScalar(format!("{s} is undefined mod {P}")))
    }

    fn to_i64(&self) -> Option<i64> {
        Some(self.0 as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F3 = Fp<3>;
    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        assert_eq!(F7::new(3) * F7::new(5), F7::new(1));
        assert_eq!(F7::new(3).inverse(), Some(F7::new(5)));
        assert_eq!(-F3::new(1), F3::new(2));
        assert_eq!(F3::from_i64(-4), F3::new(2));
        assert_eq!(F7::new(0).inverse(), None);
        assert_eq!(F7::new(6) / F7::new(3), F7::new(2));
    }

    #[test]
    fn rational_parsing() {
        let r = parse_rational("6/4").unwrap();
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(parse_rational("-5").unwrap().to_string(), "-5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(F7::parse_scalar("1/2").unwrap(), F7::new(4));
        assert!(F3::parse_scalar("1/3").is_err());
    }

    #[test]
    fn rational_denominator_positive() {
        let r = parse_rational("3/-6").unwrap();
        assert_eq!(r.to_string(), "-1/2");
    }

    #[test]
    fn prime_table_dispatch() {
        for &p in SUPPORTED_PRIMES {
            assert!(is_prime(p));
            let c = crate::with_prime!(p, P => Fp::<P>::characteristic());
            assert_eq!(c, Some(p));
        }
        assert_eq!(
            crate::with_prime!(4u64, P => Fp::<P>::characteristic()),
            None
        );
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
