//! The graph family `G[m,(n_i)]` and its truncated `K_0` presentations.
//!
//! Generators of a truncated presentation are ordered `(w_1, …, w_d, v_0)`,
//! where `w_i` are the chain vertices and `v_0` is the vertex carrying the
//! `m` loops. Columns are relations: `w_i - 2 w_{i+1}` for `i < d`, then
//! `Σ n_i w_i + (m - 1) v_0`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dyadic::RationalOrInfinity;
use crate::error::{Error, Result, ValidationCode, ValidationError};
use crate::linalg::IntMatrix;

/// Number of loops at the distinguished vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Loops {
    Finite(u64),
    Infinite,
}

impl Loops {
    pub fn finite(self) -> Option<u64> {
        match self {
            Loops::Finite(m) => Some(m),
            Loops::Infinite => None,
        }
    }

    /// `m - 1` when `1 < m < ∞`.
    pub fn modulus(self) -> Option<u64> {
        match self {
            Loops::Finite(m) if m > 1 => Some(m - 1),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            Some(Loops::Infinite)
        } else {
            s.parse().ok().map(Loops::Finite)
        }
    }
}

impl fmt::Display for Loops {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Loops::Finite(m) => write!(f, "{m}"),
            Loops::Infinite => f.write_str("inf"),
        }
    }
}

/// How `n_i` continues past the explicit prefix of length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailSpec {
    /// `n_i = 0`
    Zero,
    /// `n_i = c`
    Constant(u64),
    /// `n_i = c · 2^(i-k)`
    Doubling(u64),
}

impl TailSpec {
    pub fn is_zero(self) -> bool {
        self == TailSpec::Zero
    }

    fn check(self) -> Result<Self> {
        match self {
            TailSpec::Constant(0) | TailSpec::Doubling(0) => Err(Error::InvalidTail),
            t => Ok(t),
        }
    }
}

impl fmt::Display for TailSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailSpec::Zero => f.write_str("zero"),
            TailSpec::Constant(c) => write!(f, "constant:{c}"),
            TailSpec::Doubling(c) => write!(f, "doubling:{c}"),
        }
    }
}

/// A validated family member. Construct with [`FamilySpec::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    m: Loops,
    prefix: Vec<u64>,
    tail: TailSpec,
}

impl FamilySpec {
    /// Validates `(m, prefix, tail)`, reporting the first violated hypothesis
    /// in the order ConditionK, NoIdealEdge, InfiniteSum.
    pub fn new(m: Loops, prefix: Vec<u64>, tail: TailSpec) -> Result<Self> {
        let tail = tail.check()?;
        if m == Loops::Finite(1) {
            return Err(ValidationError::new(ValidationCode::ConditionK).into());
        }
        if tail.is_zero() && prefix.iter().all(|&n| n == 0) {
            return Err(ValidationError::new(ValidationCode::NoIdealEdge).into());
        }
        if m.modulus().is_some() && !tail.is_zero() {
            return Err(ValidationError::new(ValidationCode::InfiniteSum).into());
        }
        Ok(FamilySpec { m, prefix, tail })
    }

    /// Shorthand for a finite `m` with a zero tail.
    pub fn finite(m: u64, prefix: &[u64]) -> Result<Self> {
        FamilySpec::new(Loops::Finite(m), prefix.to_vec(), TailSpec::Zero)
    }

    pub fn m(&self) -> Loops {
        self.m
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> TailSpec {
        self.tail
    }

    /// Literal prefix length.
    pub fn k(&self) -> usize {
        self.prefix.len()
    }

    /// Same member with trailing zeros of the prefix removed (zero tails only).
    pub fn trimmed(&self) -> Self {
        let mut out = self.clone();
        if out.tail.is_zero() {
            while out.prefix.last() == Some(&0) {
                out.prefix.pop();
            }
        }
        out
    }

    /// Same member with `extra` zeros appended to the prefix (zero tails only).
    pub fn padded(&self, extra: usize) -> Self {
        let mut out = self.clone();
        if out.tail.is_zero() {
            out.prefix.extend(core::iter::repeat_n(0, extra));
        }
        out
    }

    /// `n_i` for `i ≥ 1`.
    pub fn n(&self, i: usize) -> BigUint {
        assert!(i >= 1, "edges are indexed from 1");
        let k = self.k();
        if i <= k {
            return BigUint::from(self.prefix[i - 1]);
        }
        match self.tail {
            TailSpec::Zero => BigUint::zero(),
            TailSpec::Constant(c) => BigUint::from(c),
            TailSpec::Doubling(c) => BigUint::from(c) << (i - k),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[m={}, n=(", self.m)?;
        for (i, n) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "), tail={}]", self.tail)
    }
}

/// Relation matrix of the depth-`depth` truncation; `(depth + 1) × depth`.
pub fn truncated_presentation(spec: &FamilySpec, depth: usize) -> Result<IntMatrix> {
    let modulus = spec.m.modulus().ok_or(Error::Regime {
        op: "truncated presentation",
        requirement: "1 < m < inf",
    })?;
    if depth < spec.k() || depth == 0 {
        return Err(Error::DepthTooShallow { depth, k: spec.k() });
    }
    let mut rel = IntMatrix::zeros(depth + 1, depth);
    for i in 0..depth - 1 {
        rel[(i, i)] = BigInt::one();
        rel[(i + 1, i)] = BigInt::from(-2);
    }
    let last = depth - 1;
    for (i, &n) in spec.prefix.iter().enumerate() {
        rel[(i, last)] = BigInt::from(n);
    }
    rel[(depth, last)] = BigInt::from(modulus);
    Ok(rel)
}

/// `α = Σ n_i 2^-i`, infinite for doubling tails.
pub fn alpha_of(spec: &FamilySpec) -> RationalOrInfinity {
    let k = spec.k();
    let mut numer = BigInt::zero();
    for &n in &spec.prefix {
        numer = (numer << 1u8) + BigInt::from(n);
    }
    // numer / 2^k is the prefix sum
    let prefix = BigRational::new(numer, BigInt::one() << k);
    match spec.tail {
        TailSpec::Zero => RationalOrInfinity::Finite(prefix),
        TailSpec::Constant(c) => RationalOrInfinity::Finite(
            prefix + BigRational::new(BigInt::from(c), BigInt::one() << k),
        ),
        TailSpec::Doubling(_) => RationalOrInfinity::Infinite,
    }
}

/// `(k, N)` with `k` the literal prefix length and `N = Σ_{i≤k} 2^(k-i) n_i`.
pub fn big_n(spec: &FamilySpec) -> Result<(usize, BigUint)> {
    if !spec.tail.is_zero() {
        return Err(Error::Regime {
            op: "N",
            requirement: "a zero tail",
        });
    }
    let n = spec
        .prefix
        .iter()
        .fold(BigUint::zero(), |acc, &n| (acc << 1u8) + BigUint::from(n));
    Ok((spec.k(), n))
}
