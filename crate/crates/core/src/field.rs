//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Algorithms are generic over [`Field`]; a field value is a small context
//! object that owns the arithmetic, and elements are plain values.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EpwError, Result};

pub trait Field: Clone + Send + Sync + fmt::Debug + PartialEq {
    type El: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;
    fn from_i64(&self, n: i64) -> Self::El;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDesc;

    /// Canonical textual form used in files and hashes.
    fn format(&self, a: &Self::El) -> String;
    fn parse(&self, s: &str) -> Result<Self::El>;

    /// Random element: uniform over `F_p`, small integers over the rationals.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::El;

    /// The element as a rational number, in characteristic 0.
    fn to_rational(&self, a: &Self::El) -> Option<BigRational>;
    /// Image of a rational number; `None` if its denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::El>;

    /// Scalar that brings a coefficient list (leading entry first) to its
    /// canonical representative: leading coefficient 1 by default.
    fn normalizer(&self, coeffs: &[Self::El]) -> Self::El {
        let lead = coeffs.iter().find(|c| !self.is_zero(c)).expect("normalizing zero");
        self.inv(lead)
    }

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }

    fn add_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.add(a, b);
    }

    fn sub_assign(&self, a: &mut Self::El, b: &Self::El) {
        *a = self.sub(a, b);
    }

    /// `a += b * c`
    fn mul_add_assign(&self, a: &mut Self::El, b: &Self::El, c: &Self::El) {
        let t = self.mul(b, c);
        self.add_assign(a, &t);
    }

    fn pow(&self, a: &Self::El, mut e: u32) -> Self::El {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Field descriptor as it appears in files: `{"field": "Q"}` or
/// `{"field": "Fp", "p": 7}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "field")]
pub enum FieldDesc {
    Q,
    Fp { p: u64 },
}

impl FieldDesc {
    /// Parses the command-line spelling: `q` or `f<p>`.
    pub fn parse_flag(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" {
            return Ok(FieldDesc::Q);
        }
        if let Some(rest) = t.strip_prefix('f') {
            let p: u64 = rest
                .parse()
                .map_err(|_| EpwError::InvalidField(format!("cannot parse prime in {s:?}")))?;
            PrimeField::new(p)?;
            return Ok(FieldDesc::Fp { p });
        }
        Err(EpwError::InvalidField(format!(
            "unknown field {s:?}; expected q or f<p>"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Q => 0,
            FieldDesc::Fp { p } => *p,
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Q => write!(f, "q"),
            FieldDesc::Fp { p } => write!(f, "f{p}"),
        }
    }
}

/// Random rationals are integers in `[-B, B]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 3;

/// Exact rationals. Elements are always reduced with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type El = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDesc {
        FieldDesc::Q
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let bad = || EpwError::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
    /// Clears denominators, removes the content and makes the leading
    /// coefficient positive.
    fn normalizer(&self, coeffs: &[BigRational]) -> BigRational {
        let den = common_denominator(coeffs);
        let content = coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, &(c.numer() * (&den / c.denom()))));
        let lead = coeffs.iter().find(|c| !c.is_zero()).expect("normalizing zero");
        let s = BigRational::new(den, content);
        if lead.is_negative() {
            -s
        } else {
            s
        }
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn to_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
    fn sub_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a -= b;
    }
}

/// Prime field `F_p` with `p < 2^32`, elements stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(EpwError::InvalidField(format!(
                "prime {p} exceeds the supported bound 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(EpwError::InvalidField(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// All field elements in canonical order `0, 1, .., p-1`.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type El = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u64
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn descriptor(&self) -> FieldDesc {
        FieldDesc::Fp { p: self.p }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let n: i128 = s
            .trim()
            .parse()
            .map_err(|_| EpwError::Parse(format!("not an integer: {s:?}")))?;
        Ok(n.rem_euclid(self.p as i128) as u64)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn to_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        reduce_rational(self, q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduces a rational to `F_p`; `None` when p divides the denominator.
pub fn reduce_rational(f: &PrimeField, q: &BigRational) -> Option<u64> {
    let p = BigInt::from(f.p());
    let n = ((q.numer() % &p) + &p) % &p;
    let d = ((q.denom() % &p) + &p) % &p;
    if d.is_zero() {
        return None;
    }
    let n = n.to_u64().expect("reduced below p");
    let d = d.to_u64().expect("reduced below p");
    Some(f.div(&n, &d))
}

/// Least common multiple of the denominators, as a positive integer.
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(10007).unwrap();
        for a in 1..200u64 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.from_i64(-1), 6);
        assert_eq!(f7.neg(&3), 4);
    }

    #[test]
    fn rejects_composites_and_large() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4_294_967_311).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert!(x.denom().is_positive());
        assert_eq!(q.format(&q.from_i64(5)), "5");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn field_flags() {
        assert_eq!(FieldDesc::parse_flag("q").unwrap(), FieldDesc::Q);
        assert_eq!(FieldDesc::parse_flag("f7").unwrap(), FieldDesc::Fp { p: 7 });
        assert!(FieldDesc::parse_flag("f8").is_err());
        assert!(FieldDesc::parse_flag("r").is_err());
        let json = serde_json::to_string(&FieldDesc::Fp { p: 7 }).unwrap();
        assert_eq!(json, r#"{"field":"Fp","p":7}"#);
        assert_eq!(serde_json::to_string(&FieldDesc::Q).unwrap(), r#"{"field":"Q"}"#);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        let q = Rationals.parse("3/2").unwrap();
        assert_eq!(reduce_rational(&f, &q), Some(f.div(&3, &2)));
        let bad = Rationals.parse("1/7").unwrap();
        assert_eq!(reduce_rational(&f, &bad), None);
    }
}
