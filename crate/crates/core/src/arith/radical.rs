use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Rational, serde_rational};

/// A value `coeff * sqrt(radicand)`.
///
/// The radicand is kept as a square-free integer (possibly negative). The
/// branch is fixed so that `sqrt(r) * sqrt(r) = r` for every radicand; a
/// negative radicand therefore carries an implicit imaginary unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawRadical", into = "RawRadical")]
pub struct RadicalScalar {
    coeff: Rational,
    radicand: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawRadical {
    #[serde(with = "serde_rational")]
    coeff: Rational,
    #[serde(with = "serde_rational")]
    radicand: Rational,
}

impl From<RawRadical> for RadicalScalar {
    fn from(raw: RawRadical) -> Self {
        RadicalScalar::new(raw.coeff, raw.radicand)
    }
}

impl From<RadicalScalar> for RawRadical {
    fn from(r: RadicalScalar) -> Self {
        RawRadical {
            coeff: r.coeff,
            radicand: r.radicand,
        }
    }
}

/// Splits `n` as `k^2 * f` with `f` square-free.
///
/// Trial division runs while `d^3 <= n`; whatever remains then has at most two
/// prime factors, so it is either a perfect square or square-free.
fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut k = BigUint::one();
    let mut f = BigUint::one();
    if rest.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut d = BigUint::from(2u32);
    while &d * &d * &d <= rest {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            k *= d.pow(e / 2);
            if e % 2 == 1 {
                f *= &d;
            }
        }
        d += if d == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        k *= s;
    } else {
        f *= rest;
    }
    (k, f)
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self {
            coeff: Rational::zero(),
            radicand: Rational::one(),
        }
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(q, Rational::one())
    }

    /// Normalizes `coeff * sqrt(radicand)`. `sqrt(p/q)` is rewritten as
    /// `sqrt(p*q)/q` and square factors are pulled into the coefficient.
    pub fn new(coeff: Rational, radicand: Rational) -> Self {
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        let negative = radicand.is_negative();
        let num = radicand.numer().magnitude();
        let den = radicand.denom().magnitude();
        let (k, f) = square_free_split(&(num * den));
        let coeff = coeff
            * Rational::new(
                BigInt::from_biguint(Sign::Plus, k),
                BigInt::from_biguint(Sign::Plus, den.clone()),
            );
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        Self {
            coeff,
            radicand: Rational::from_integer(BigInt::from_biguint(sign, f)),
        }
    }

    /// Principal square root: `sqrt(|r|)` for `r >= 0`, and the
    /// imaginary-branch value with negative radicand for `r < 0`.
    pub fn sqrt(r: &Rational) -> Self {
        Self::new(Rational::one(), r.clone())
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The rational value when the radicand is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.radicand.is_one().then(|| self.coeff.clone())
    }

    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * &self.radicand
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            coeff: &self.coeff * q,
            radicand: self.radicand.clone(),
        }
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, q: &Rational) -> Self {
        self.scale(&q.recip())
    }

    /// Sum, defined only when the radicands agree (or one side is zero).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.radicand == other.radicand)
            .then(|| Self::new(&self.coeff + &other.coeff, self.radicand.clone()))
    }

    /// `self / other` when the quotient is rational, i.e. both share a
    /// radicand and `other` is nonzero.
    pub fn ratio(&self, other: &Self) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        (self.radicand == other.radicand).then(|| &self.coeff / &other.coeff)
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        if self.is_zero() || rhs.is_zero() {
            return RadicalScalar::zero();
        }
        // Both radicands are square-free integers: r1*r2 = g^2 (r1/g)(r2/g).
        let r1 = self.radicand.numer();
        let r2 = rhs.radicand.numer();
        let g = r1.magnitude().gcd(r2.magnitude());
        let g = BigInt::from_biguint(Sign::Plus, g);
        let reduced = (r1 / &g) * (r2 / &g);
        // sqrt(-a) sqrt(-b) = (i sqrt a)(i sqrt b) = -sqrt(ab)
        let sign = if r1.is_negative() && r2.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        RadicalScalar {
            coeff: &self.coeff * &rhs.coeff * Rational::from_integer(g * sign),
            radicand: Rational::from_integer(reduced),
        }
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}
