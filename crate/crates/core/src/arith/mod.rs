//! Exact scalar arithmetic and linear algebra over the rationals.
//!
//! All scalars are [`Rational`] values (arbitrary precision, lowest terms).
//! [`RadicalScalar`] extends this by a single square root and is only used
//! when writing out witnesses.

mod matrix;
mod radical;

pub use matrix::{Echelon, NonzeroKernelVector, RatMatrix, WITNESS_SCAN_LIMIT};
pub use radical::RadicalScalar;

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q`; panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn ints(vs: &[i64]) -> Vec<Rational> {
    vs.iter().map(|&v| int(v)).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    Rational::from_str(t).map_err(|_| Error::ParseRational(s.to_string()))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Scales a nonzero vector to coprime integers whose first nonzero entry is
/// positive. The zero vector maps to zeros.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return scaled;
    }
    let sign = match scaled.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    scaled.into_iter().map(|x| x / &gcd * &sign).collect()
}

/// [`primitive_integer`] lifted back into rationals.
pub fn primitive_rational(v: &[Rational]) -> Vec<Rational> {
    primitive_integer(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Serde adapters writing rationals as `"p/q"` strings. Integers are also
/// accepted on input.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::de::{self, Deserializer, Visitor};
    use serde::ser::{SerializeSeq, Serializer};
    use serde::Deserialize;
    use std::fmt;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as a \"p/q\" string or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    /// Newtype used to route sequence elements through the adapters above.
    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super::serde_rational")] Rational);

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw: Vec<Wrapped> = Vec::deserialize(d)?;
            Ok(raw.into_iter().map(|w| w.0).collect())
        }
    }

    pub mod vec_option {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<Vec<Rational>>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => {
                    let strings: Vec<String> = v.iter().map(format_rational).collect();
                    s.serialize_some(&strings)
                }
                None => s.serialize_none(),
            }
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Rational>, D::Error> {
            let raw: Option<Wrapped> = Option::deserialize(d)?;
            Ok(raw.map(|w| w.0))
        }
    }
}
