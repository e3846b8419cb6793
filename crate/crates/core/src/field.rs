//! Exact scalars over Q and GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
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

impl FieldSpec {
    /// GF(p), with `p` checked for primality by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements, `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Residue `value mod p`; only meaningful over GF(p).
    pub(crate) fn residue(&self, value: u64) -> Scalar {
        match *self {
            FieldSpec::Rationals => self.from_i64(value as i64),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: value % p,
                modulus: p,
            },
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::Parse(format!(
                        "coefficient {q} has a denominator divisible by {p}"
                    )));
                }
                let num = Scalar::Residue {
                    value: num,
                    modulus: p,
                };
                let den = Scalar::Residue {
                    value: den,
                    modulus: p,
                };
                Ok(&num * &den.inv().expect("nonzero residue"))
            }
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"` and maps the rational into this field.
    /// A pseudo-random element: uniform over GF(p), small integers over Q.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match *self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            FieldSpec::Prime(p) => self.residue(rng.gen_range(0..p)),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    /// All elements in increasing residue order. Empty for Q.
    pub fn elements(&self) -> Vec<Scalar> {
        match *self {
            FieldSpec::Rationals => Vec::new(),
            FieldSpec::Prime(p) => (0..p)
                .map(|v| Scalar::Residue {
                    value: v,
                    modulus: p,
                })
                .collect(),
        }
    }

    /// Nonzero elements in increasing residue order. Empty for Q.
    pub fn units(&self) -> Vec<Scalar> {
        self.elements()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `GF:p`, `GF(p)` and `GFp`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let digits = rest
            .trim_start_matches(':')
            .trim_start_matches('(')
            .trim_end_matches(')');
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

/// Parses a rational literal. `"1/0"` and trailing junk are errors.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed coefficient {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!(
            "malformed coefficient {s:?}: zero denominator"
        )));
    }
    Ok(BigRational::new(num, den))
}

/// An element of a [`FieldSpec`].
///
/// Rationals are kept reduced with positive denominator (by `BigRational`);
/// residues are always in `[0, p)`. Binary operations on scalars from
/// different fields panic: containers validate field agreement on
/// construction so mixing can only come from a programming error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Residue { value, modulus } => {
                // extended Euclid on (value, modulus)
                let (mut r0, mut r1) = (*modulus as i128, *value as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Some(Scalar::Residue {
                    value: t0.rem_euclid(*modulus as i128) as u64,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Residue value over GF(p); `None` over Q.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value),
        }
    }

    fn check_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

/// `"Q"` or `{"GF": p}`, as in the input files.
impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            FieldSpec::Rationals => serializer.serialize_str("Q"),
            FieldSpec::Prime(p) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("GF", p)?;
                map.end()
            }
        }
    }
}

/// Scalars serialize as their display string, so rationals stay exact.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Ordering used for lexicographic enumeration orders: numeric for
/// rationals, residue value for GF(p).
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Some(a.cmp(b)),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Some(a.cmp(b)),
            _ => None,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + modulus - b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a * b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7919).is_ok());
        assert!(matches!(FieldSpec::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(FieldSpec::prime(91), Err(Error::NotPrime(91))));
    }

    #[test]
    fn parse_fields() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF:3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert!("GF:4".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn scalar_strings() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("2/4").unwrap().to_string(), "1/2");
        assert_eq!(q.parse_scalar("-6/3").unwrap().to_string(), "-2");
        assert_eq!(q.parse_scalar("3/-4").unwrap().to_string(), "-3/4");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("1.5").is_err());
        let f3 = FieldSpec::Prime(3);
        assert_eq!(f3.parse_scalar("-1").unwrap().to_string(), "2");
        assert_eq!(f3.parse_scalar("1/2").unwrap().to_string(), "2");
        assert!(f3.parse_scalar("1/3").is_err());
    }

    #[test]
    fn inverses() {
        let f7 = FieldSpec::Prime(7);
        for x in f7.units() {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f7.zero().inv().is_none());
        let q = FieldSpec::Rationals.parse_scalar("-3/5").unwrap();
        assert_eq!(q.inv().unwrap().to_string(), "-5/3");
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = FieldSpec::Prime(2).one() + FieldSpec::Prime(3).one();
    }
}
