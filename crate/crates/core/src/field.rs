//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! All linear algebra in this crate is generic over a [`Field`] context: a
//! small value (zero-sized for `Q`, one word for `F_p`) that knows how to
//! operate on its element type. Elements of `Q` are arbitrary-precision
//! `num::BigRational`s, stored in lowest terms with positive denominator;
//! elements of `F_p` are residues in `[0, p)` packed in a `u64`. There is no
//! floating point anywhere.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Serializable description of a field, as it appears in input files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validates the modulus (trial division; moduli are single-word primes
    /// below 2^31 so this is instant).
    pub fn prime_field(p: u64) -> Result<FieldSpec> {
        if p >= (1 << 31) {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

// The on-disk form is {"kind": "Q"} or {"kind": "Fp", "p": 7}.
#[derive(Serialize, Deserialize)]
struct FieldSpecWire {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = match self {
            FieldSpec::Rationals => FieldSpecWire { kind: "Q".into(), p: None },
            FieldSpec::PrimeField(p) => FieldSpecWire { kind: "Fp".into(), p: Some(*p) },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = FieldSpecWire::deserialize(d)?;
        match wire.kind.as_str() {
            "Q" => Ok(FieldSpec::Rationals),
            "Fp" => {
                let p = wire.p.ok_or_else(|| serde::de::Error::custom("missing p for Fp"))?;
                FieldSpec::prime_field(p).map_err(serde::de::Error::custom)
            }
            other => Err(serde::de::Error::custom(format!("unknown field kind `{other}`"))),
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Field context: all scalar arithmetic goes through one of these.
///
/// Implementations must be exact — field axioms hold on the nose, which the
/// property tests below check for random elements.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// Parses the scalar text format: a decimal integer with optional sign,
    /// optionally followed by `/denominator`. Round-trips with [`render`].
    fn parse(&self, text: &str) -> Result<Self::Elem>;

    /// Canonical text form; bit-exact round-trip through [`parse`].
    fn render(&self, a: &Self::Elem) -> String;

    /// Guards binary operations between values that came from different
    /// contexts (only possible for prime fields with distinct moduli).
    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedFields(self.spec().to_string(), other.spec().to_string()))
        }
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
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
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn parse(&self, text: &str) -> Result<BigRational> {
        let (num, den) = split_fraction(text)?;
        let n: BigInt =
            num.parse().map_err(|_| Error::MalformedScalar(text.to_string()))?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| Error::MalformedScalar(text.to_string()))?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        Ok(BigRational::new(n, d))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field `F_p` for a runtime modulus `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        match FieldSpec::prime_field(p)? {
            FieldSpec::PrimeField(p) => Ok(PrimeField { p }),
            _ => unreachable!(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2) mod p.
        Ok(self.pow(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn parse(&self, text: &str) -> Result<u64> {
        let (num, den) = split_fraction(text)?;
        let n: i128 = num.parse().map_err(|_| Error::MalformedScalar(text.to_string()))?;
        let n = n.rem_euclid(self.p as i128) as u64;
        match den {
            None => Ok(n),
            Some(dt) => {
                let d: i128 =
                    dt.parse().map_err(|_| Error::MalformedScalar(text.to_string()))?;
                if d == 0 {
                    return Err(Error::ZeroDenominator(text.to_string()));
                }
                let d = d.rem_euclid(self.p as i128) as u64;
                if d == 0 {
                    return Err(Error::NotInField(text.to_string(), self.p));
                }
                self.div(&n, &d)
            }
        }
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

fn split_fraction(text: &str) -> Result<(&str, Option<&str>)> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::MalformedScalar(text.to_string()));
    }
    match text.split_once('/') {
        None => Ok((text, None)),
        Some((n, d)) => {
            if n.is_empty() || d.is_empty() || d.contains('/') {
                Err(Error::MalformedScalar(text.to_string()))
            } else {
                Ok((n, Some(d)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_reduces_rationals() {
        let q = Rationals;
        assert_eq!(q.parse("2/4").unwrap(), q.parse("1/2").unwrap());
        assert_eq!(q.render(&q.parse("2/4").unwrap()), "1/2");
        assert_eq!(q.render(&q.parse("-3/1").unwrap()), "-3");
        // sign normalization: denominator stays positive
        assert_eq!(q.render(&q.parse("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_prime_field_inverts_denominator() {
        let f7 = PrimeField::new(7).unwrap();
        // 1/2 = 4 mod 7
        assert_eq!(f7.parse("1/2").unwrap(), 4);
        assert_eq!(f7.parse("-3").unwrap(), 4);
        assert!(matches!(f7.parse("1/7"), Err(Error::NotInField(..))));
    }

    #[test]
    fn parse_rejects_garbage() {
        let q = Rationals;
        assert!(matches!(q.parse("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(q.parse("a/b"), Err(Error::MalformedScalar(_))));
        assert!(matches!(q.parse("1/2/3"), Err(Error::MalformedScalar(_))));
        assert!(matches!(q.parse(""), Err(Error::MalformedScalar(_))));
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::prime_field(2).is_ok());
        assert!(FieldSpec::prime_field(101).is_ok());
        assert!(matches!(FieldSpec::prime_field(91), Err(Error::NotPrime(91))));
        assert!(matches!(FieldSpec::prime_field(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldSpec::prime_field(1 << 32), Err(Error::ModulusTooLarge(_))));
    }

    #[test]
    fn simple_arithmetic() {
        let q = Rationals;
        let half = q.parse("1/2").unwrap();
        let third = q.parse("1/3").unwrap();
        assert_eq!(q.render(&q.add(&half, &third)), "5/6");
        assert!(q.is_one(&q.inv(&q.one()).unwrap()));
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.mul(&3, &4), 2);
        assert!(matches!(f5.inv(&0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn field_spec_wire_format() {
        let q: FieldSpec = serde_json::from_str(r#"{"kind":"Q"}"#).unwrap();
        assert_eq!(q, FieldSpec::Rationals);
        let f: FieldSpec = serde_json::from_str(r#"{"kind":"Fp","p":7}"#).unwrap();
        assert_eq!(f, FieldSpec::PrimeField(7));
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"Fp","p":6}"#).is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"kind":"Q"}"#);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (any::<i32>(), 1u32..200).prop_map(|(n, d)| {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        })
    }

    proptest! {
        #[test]
        fn rational_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let f = Rationals;
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if !f.is_zero(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }

        #[test]
        fn rational_parse_render_roundtrip(a in arb_rational()) {
            let f = Rationals;
            prop_assert_eq!(f.parse(&f.render(&a)).unwrap(), a);
        }

        #[test]
        fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
            prop_assert_eq!(f.parse(&f.render(&a)).unwrap(), a);
        }
    }
}
