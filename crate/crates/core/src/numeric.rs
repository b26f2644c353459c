//! Scalar arithmetic shared by every construction.
//!
//! Two backends implement [`Scalar`]:
//!
//! - [`Rational`]: arbitrary-precision rationals, always kept in lowest terms
//!   with a positive denominator. Equality is literal equality, so every
//!   theorem check on this backend is an exact identity.
//! - [`Float`]: `f64` values that carry an absolute tolerance. `is_zero`
//!   means `|x| <= eps_abs`.
//!
//! Geometry code is generic over `S: Scalar`, so the two backends can never be
//! mixed inside one computation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default absolute tolerance for the float backend, in canonical-frame units
/// (circumradius 1).
pub const DEFAULT_EPS_ABS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Approximate,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Approximate => "float",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Field element used for every coordinate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whatever the backend needs to create new values (nothing for exact,
    /// the tolerance for float).
    type Context: Clone + fmt::Debug + PartialEq + Send + Sync;

    const BACKEND: Backend;

    fn context(&self) -> Self::Context;

    fn from_rational(value: &Rational, ctx: &Self::Context) -> Self;

    fn is_zero(&self) -> bool;

    /// Zero test for a quantity whose inputs have magnitude up to `scale`.
    /// Exact values ignore `scale`.
    fn is_zero_scaled(&self, scale: f64) -> bool;

    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError>;

    fn to_f64(&self) -> f64;

    /// Canonical representative of a coefficient triple up to nonzero scaling.
    /// Used for line equations; the triple must not be all zero.
    fn canonical_triple(coeffs: [Self; 3]) -> [Self; 3];

    fn parse(text: &str, ctx: &Self::Context) -> Result<Self, NumericError>;

    fn int(&self, n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n), &self.context())
    }

    fn zero_like(&self) -> Self {
        self.int(0)
    }

    fn one_like(&self) -> Self {
        self.int(1)
    }

    fn ratio(&self, p: i64, q: i64) -> Self {
        let r = Rational::new(p, q).expect("nonzero literal denominator");
        Self::from_rational(&r, &self.context())
    }

    fn near(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Parses `p/q`, `p`, or a plain decimal literal such as `-0.25`.
pub fn parse_scalar<S: Scalar>(text: &str, ctx: &S::Context) -> Result<S, NumericError> {
    S::parse(text, ctx)
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(p: i64, q: i64) -> Result<Self, NumericError> {
        Self::from_bigints(BigInt::from(p), BigInt::from(q))
    }

    pub fn from_bigints(p: BigInt, q: BigInt) -> Result<Self, NumericError> {
        if q.is_zero() {
            return Err(NumericError::ZeroDenominator);
        }
        // BigRational::new reduces and moves the sign to the numerator.
        Ok(Rational(BigRational::new(p, q)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self, NumericError> {
        if self.0.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `p/q`, or just `p` when the denominator is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || NumericError::Parse(text.to_string());
        let s = text.trim();
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_integer(p).ok_or_else(bad)?;
            let q = parse_integer(q).ok_or_else(bad)?;
            return Rational::from_bigints(p, q);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.starts_with('-');
            let digits = int_part.strip_prefix(['+', '-']).unwrap_or(int_part);
            if frac_part.is_empty() && digits.is_empty() {
                return Err(bad());
            }
            let all_digits = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
            if !all_digits(digits) || !all_digits(frac_part) {
                return Err(bad());
            }
            let mantissa: BigInt = format!("{digits}{frac_part}")
                .parse::<BigInt>()
                .unwrap_or_else(|_| BigInt::zero());
            let scale = num_traits::pow(BigInt::from(10), frac_part.len());
            let value = Rational::from_bigints(mantissa, scale)?;
            return Ok(if negative { -value } else { value });
        }
        let p = parse_integer(s).ok_or_else(bad)?;
        Ok(Rational(BigRational::from_integer(p)))
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Scalar for Rational {
    type Context = ();

    const BACKEND: Backend = Backend::Exact;

    fn context(&self) -> Self::Context {}

    fn from_rational(value: &Rational, _ctx: &()) -> Self {
        value.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_zero_scaled(&self, _scale: f64) -> bool {
        self.0.is_zero()
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        if rhs.0.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Fallback for ratios whose parts overflow f64.
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    /// Integer coefficients with content 1 and the first nonzero one positive.
    fn canonical_triple(coeffs: [Self; 3]) -> [Self; 3] {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.0.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.0.numer() * (&lcm / c.0.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if content.is_zero() {
            return coeffs;
        }
        let flip = ints
            .iter()
            .find(|n| !n.is_zero())
            .is_some_and(|n| n.is_negative());
        let unit = if flip { -content } else { content };
        let mut out = ints
            .into_iter()
            .map(|n| Rational(BigRational::from_integer(n / &unit)));
        [
            out.next().unwrap(),
            out.next().unwrap(),
            out.next().unwrap(),
        ]
    }

    fn parse(text: &str, _ctx: &()) -> Result<Self, NumericError> {
        text.parse()
    }
}

// ---------------------------------------------------------------------------
// Approximate backend
// ---------------------------------------------------------------------------

/// Absolute tolerance used by the float backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps_abs: f64,
}

impl Tolerance {
    pub fn new(eps_abs: f64) -> Result<Self, NumericError> {
        if eps_abs > 0.0 && eps_abs.is_finite() {
            Ok(Tolerance { eps_abs })
        } else {
            Err(NumericError::BadTolerance(eps_abs))
        }
    }

    pub fn eps_abs(&self) -> f64 {
        self.eps_abs
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_abs: DEFAULT_EPS_ABS,
        }
    }
}

/// `f64` with a tolerance context. Binary operations keep the larger of the
/// two tolerances; in practice every value in one computation shares one.
#[derive(Debug, Clone, Copy)]
pub struct Float {
    value: f64,
    tol: Tolerance,
}

impl Float {
    pub fn new(value: f64, tol: Tolerance) -> Self {
        Float { value, tol }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    fn with(self, value: f64, other: Tolerance) -> Float {
        let eps_abs = self.tol.eps_abs.max(other.eps_abs);
        Float {
            value,
            tol: Tolerance { eps_abs },
        }
    }
}

/// Tolerant equality: `|x - y| <= eps_abs`.
impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        let eps = self.tol.eps_abs.max(other.tol.eps_abs);
        (self.value - other.value).abs() <= eps
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest representation that parses back to the same f64.
        write!(f, "{}", self.value)
    }
}

impl Add for Float {
    type Output = Float;
    fn add(self, rhs: Float) -> Float {
        self.with(self.value + rhs.value, rhs.tol)
    }
}

impl Sub for Float {
    type Output = Float;
    fn sub(self, rhs: Float) -> Float {
        self.with(self.value - rhs.value, rhs.tol)
    }
}

impl Mul for Float {
    type Output = Float;
    fn mul(self, rhs: Float) -> Float {
        self.with(self.value * rhs.value, rhs.tol)
    }
}

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float {
            value: -self.value,
            tol: self.tol,
        }
    }
}

impl Scalar for Float {
    type Context = Tolerance;

    const BACKEND: Backend = Backend::Approximate;

    fn context(&self) -> Tolerance {
        self.tol
    }

    fn from_rational(value: &Rational, ctx: &Tolerance) -> Self {
        Float::new(value.to_f64(), *ctx)
    }

    fn is_zero(&self) -> bool {
        self.value.abs() <= self.tol.eps_abs
    }

    fn is_zero_scaled(&self, scale: f64) -> bool {
        self.value.abs() <= self.tol.eps_abs * scale.max(1.0)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, NumericError> {
        if rhs.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(self.with(self.value / rhs.value, rhs.tol))
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    /// Scales so the larger of |a|, |b| is 1, then makes the first
    /// non-negligible coefficient positive.
    fn canonical_triple(coeffs: [Self; 3]) -> [Self; 3] {
        let [a, b, c] = coeffs;
        let m = a.value.abs().max(b.value.abs());
        if m == 0.0 {
            return [a, b, c];
        }
        let sign = [a, b, c]
            .iter()
            .find(|v| !v.is_zero_scaled(m))
            .map_or(1.0, |v| v.value.signum());
        let k = sign / m;
        [
            Float::new(a.value * k, a.tol),
            Float::new(b.value * k, b.tol),
            Float::new(c.value * k, c.tol),
        ]
    }

    fn parse(text: &str, ctx: &Tolerance) -> Result<Self, NumericError> {
        match text.parse::<Rational>() {
            Ok(r) => Ok(Float::from_rational(&r, ctx)),
            Err(err) => text
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(|v| Float::new(v, *ctx))
                .ok_or(err),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn make_reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(1, -2).to_string(), "-1/2");
        let z = q(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(Rational::new(3, 0), Err(NumericError::ZeroDenominator));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) * Rational::zero(), q(0, 1));
        assert_eq!(
            q(1, 2).checked_div(&q(0, 1)),
            Err(NumericError::DivisionByZero)
        );
        assert_eq!(-q(3, 4), q(-3, 4));
        assert_eq!(q(3, 4) - q(1, 4), q(1, 2));
    }

    #[test]
    fn float_round_trip_is_lossy() {
        let third = q(1, 3);
        let f = Float::from_rational(&third, &Tolerance::default());
        let back: Rational = f.value().to_string().parse().unwrap();
        assert_ne!(back, third);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("1/2".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("-3".parse::<Rational>().unwrap(), q(-3, 1));
        assert_eq!("0.25".parse::<Rational>().unwrap(), q(1, 4));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("-.5".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("3/-6".parse::<Rational>().unwrap(), q(-1, 2));
        for bad in [
            "", "abc", "1/", "/2", "1.2.3", "1e5", "--1", "--1.5", ".", "1/0x",
        ] {
            assert!(
                matches!(bad.parse::<Rational>(), Err(NumericError::Parse(t)) if t == bad),
                "{bad:?} should not parse"
            );
        }
        assert_eq!(
            "1/0".parse::<Rational>(),
            Err(NumericError::ZeroDenominator)
        );
    }

    #[test]
    fn float_parse_accepts_scientific() {
        let tol = Tolerance::default();
        assert_eq!(Float::parse("1e-3", &tol).unwrap().value(), 1e-3);
        assert_eq!(Float::parse("1/4", &tol).unwrap().value(), 0.25);
        assert!(Float::parse("nan", &tol).is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::INFINITY).is_err());
        assert_eq!(Tolerance::default().eps_abs(), 1e-9);
    }

    #[test]
    fn float_zero_tests() {
        let tol = Tolerance::new(1e-6).unwrap();
        assert!(Float::new(5e-7, tol).is_zero());
        assert!(!Float::new(2e-6, tol).is_zero());
        assert!(Float::new(2e-6, tol).is_zero_scaled(10.0));
        assert!(Float::new(1.0, tol)
            .checked_div(&Float::new(1e-8, tol))
            .is_err());
    }

    #[test]
    fn canonical_triple_exact() {
        let [a, b, c] = Rational::canonical_triple([q(-1, 5), q(1, 5), q(-2, 25)]);
        assert_eq!((a, b, c), (q(5, 1), q(-5, 1), q(2, 1)));
        let [a, b, c] = Rational::canonical_triple([q(0, 1), q(-3, 7), q(6, 7)]);
        assert_eq!((a, b, c), (q(0, 1), q(1, 1), q(-2, 1)));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, d)| q(p, d))
    }

    proptest! {
        #[test]
        fn field_axioms_hold_literally(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * b.clone(), a.clone());
            }
        }

        #[test]
        fn canonical_form_is_stable(p in -10_000i64..10_000, d in 1i64..10_000) {
            let r = q(p, d);
            let again = Rational::from_bigints(r.numer().clone(), r.denom().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert!(r.denom() > &BigInt::zero());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }

        #[test]
        fn float_is_zero_monotone_in_eps(x in -1.0f64..1.0, e1 in 1e-12f64..1e-3, e2 in 1e-12f64..1e-3) {
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            let small = Float::new(x, Tolerance::new(lo).unwrap());
            let large = Float::new(x, Tolerance::new(hi).unwrap());
            prop_assert!(!small.is_zero() || large.is_zero());
        }
    }
}
