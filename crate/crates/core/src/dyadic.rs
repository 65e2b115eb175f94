//! Dyadic rationals `Z[1/2]` and the extended rationals used for `α`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `numerator / 2^exponent`, always stored canonically: either the exponent
/// is zero or the numerator is odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            return Dyadic::zero();
        }
        let twos = numerator.trailing_zeros().unwrap_or(0).min(exponent);
        if twos > 0 {
            numerator >>= twos;
            exponent -= twos;
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    /// Multiplies by `2^k`; `k` may be negative.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u64;
            if k >= self.exponent {
                Dyadic::new(&self.numerator << (k - self.exponent), 0)
            } else {
                Dyadic::new(self.numerator.clone(), self.exponent - k)
            }
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent + k.unsigned_abs())
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Dyadic::new(&self.numerator * n, self.exponent)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// Returns the dyadic value of `r` when its reduced denominator is a power of two.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let denom = r.denom();
        let twos = denom.trailing_zeros().unwrap_or(0);
        if (denom >> twos).is_one() {
            Some(Dyadic::new(r.numer().clone(), twos))
        } else {
            None
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }
}

/// Value-preserving canonical representative of `numerator / 2^exponent`.
pub fn dyadic_canonical(numerator: impl Into<BigInt>, exponent: u64) -> Dyadic {
    Dyadic::new(numerator, exponent)
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -self.clone()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

/// A reduced rational or `∞`, with `∞` above every rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RationalOrInfinity {
    Finite(BigRational),
    Infinite,
}

impl RationalOrInfinity {
    pub fn from_ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        RationalOrInfinity::Finite(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        RationalOrInfinity::Finite(BigRational::from_integer(n.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RationalOrInfinity::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            RationalOrInfinity::Finite(r) => Some(r),
            RationalOrInfinity::Infinite => None,
        }
    }

    /// Parses `inf`, `p`, or `p/q`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Some(RationalOrInfinity::Infinite);
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (
                p.trim().parse::<BigInt>().ok()?,
                q.trim().parse::<BigInt>().ok()?,
            ),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if q.is_zero() {
            return None;
        }
        Some(RationalOrInfinity::Finite(BigRational::new(p, q)))
    }
}

impl Ord for RationalOrInfinity {
    fn cmp(&self, other: &Self) -> Ordering {
        use RationalOrInfinity::*;
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for RationalOrInfinity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalOrInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalOrInfinity::Infinite => f.write_str("inf"),
            RationalOrInfinity::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            RationalOrInfinity::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Splits a positive integer into `(v, odd)` with `n = 2^v · odd`.
pub(crate) fn split_two_part(n: &BigInt) -> (u64, BigInt) {
    let v = n.trailing_zeros().unwrap_or(0);
    (v, n >> v)
}
