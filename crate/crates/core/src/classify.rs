//! Fullness, exact isomorphism and stable isomorphism within the family.
//!
//! For `1 < m < ∞` two members with the same `m` are isomorphic iff
//! `2^ℓ N ≡ 2^ℓ' N' (mod m-1)` for some `ℓ, ℓ' ≥ 0`, and stably isomorphic
//! iff additionally a unit `u` of `Z/(m-1)` may be inserted on the right.
//! Both are decided by enumerating doubling orbits (and units); the stable
//! verdict is cross-checked against `gcd(N, M) = gcd(N', M)` with `M` the
//! odd part of `m - 1`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::family::{big_n, FamilySpec, Loops};
use crate::ktheory::{invariant_of, DerivedScalars, SixTermInvariant};
use crate::order::is_k_lexicographic;

/// Largest `m - 1` accepted by the enumerating procedures.
pub const MAX_MODULUS: u64 = 1 << 24;

/// A one-ideal lattice is linear, hence stenotic.
pub fn stenotic_check(_spec: &FamilySpec) -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unstabilized {
    Full,
    /// K-theory does not decide (m = 0 with finite α).
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullnessVerdict {
    pub stenotic: bool,
    pub k_lexicographic: bool,
    /// Fullness of the stabilized extension; equals `k_lexicographic`.
    pub stabilized_full: bool,
    pub unstabilized: Unstabilized,
}

pub fn decide_fullness(spec: &FamilySpec) -> Result<FullnessVerdict> {
    let (inv, scalars) = invariant_of(spec)?;
    let stenotic = stenotic_check(spec);
    let k_lexicographic = is_k_lexicographic(&inv)?;
    // not AF (m ≠ 0): the ideal is stable and the extension is full outright
    let unstabilized = match spec.m() {
        Loops::Finite(0) if !scalars.alpha.is_infinite() => Unstabilized::Unknown,
        _ => Unstabilized::Full,
    };
    Ok(FullnessVerdict {
        stenotic,
        k_lexicographic,
        stabilized_full: stenotic && k_lexicographic,
        unstabilized,
    })
}

/// `2^ℓ · start mod modulus` for `ℓ = 0, 1, …` until the first repeat.
///
/// The sequence enters a cycle after at most `v2(modulus)` steps and the
/// cycle length is the order of 2 modulo the odd part, so this terminates.
fn doubling_orbit(modulus: u64, start: u64) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut r = start % modulus;
    while seen.insert(r) {
        out.push(r);
        r = ((r as u128 * 2) % modulus as u128) as u64;
    }
    out
}

fn residue(n: &BigUint, modulus: u64) -> u64 {
    (n % BigUint::from(modulus))
        .to_u64()
        .expect("residue below an u64 modulus")
}

/// `{ 2^ℓ N mod modulus : ℓ ≥ 0 }`, ascending.
pub fn two_power_residues(modulus: u64, n: &BigUint) -> Vec<u64> {
    assert!(modulus >= 1, "modulus must be positive");
    let mut out = doubling_orbit(modulus, residue(n, modulus));
    out.sort_unstable();
    out
}

/// `(ℓ, ℓ', u)`: `2^ℓ N ≡ u · 2^ℓ' N' (mod m-1)`; `u` is absent for exact isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    pub l: u64,
    pub l_prime: u64,
    pub unit: Option<u64>,
}

impl IsoWitness {
    /// Re-substitutes the witness into the congruence.
    pub fn verify(&self, modulus: u64, n: &BigUint, n_prime: &BigUint) -> bool {
        let lhs = (BigUint::from(1u8) << self.l) * n;
        let rhs =
            (BigUint::from(1u8) << self.l_prime) * n_prime * BigUint::from(self.unit.unwrap_or(1));
        let m = BigUint::from(modulus);
        let unit_ok = self
            .unit
            .is_none_or(|u| u.gcd(&modulus) == 1 || modulus == 1);
        unit_ok && lhs % &m == rhs % &m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
    pub reason: Option<&'static str>,
}

impl IsoVerdict {
    fn yes(witness: IsoWitness) -> Self {
        IsoVerdict {
            isomorphic: true,
            witness: Some(witness),
            reason: None,
        }
    }

    fn no(reason: &'static str) -> Self {
        IsoVerdict {
            isomorphic: false,
            witness: None,
            reason: Some(reason),
        }
    }
}

/// Outcome of comparing two family members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Decided(IsoVerdict),
    /// `m ∈ {0, ∞}`: no verdict, the computed invariants are returned instead.
    OutOfScope(Box<[(SixTermInvariant, DerivedScalars); 2]>),
}

impl Comparison {
    pub fn verdict(&self) -> Option<&IsoVerdict> {
        match self {
            Comparison::Decided(v) => Some(v),
            Comparison::OutOfScope(_) => None,
        }
    }
}

enum Prepared {
    Done(Comparison),
    Ready {
        modulus: u64,
        n: BigUint,
        n_prime: BigUint,
    },
}

fn prepare(a: &FamilySpec, b: &FamilySpec) -> Result<Prepared> {
    let (Some(ma), Some(mb)) = (a.m().modulus(), b.m().modulus()) else {
        let pair = [invariant_of(a)?, invariant_of(b)?];
        return Ok(Prepared::Done(Comparison::OutOfScope(Box::new(pair))));
    };
    if ma != mb {
        return Ok(Prepared::Done(Comparison::Decided(IsoVerdict::no(
            "m mismatch",
        ))));
    }
    if ma > MAX_MODULUS {
        return Err(Error::Regime {
            op: "isomorphism enumeration",
            requirement: "m - 1 <= 2^24",
        });
    }
    let (_, n) = big_n(a)?;
    let (_, n_prime) = big_n(b)?;
    Ok(Prepared::Ready {
        modulus: ma,
        n,
        n_prime,
    })
}

/// Exact isomorphism: `2^ℓ N ≡ 2^ℓ' N' (mod m-1)`.
///
/// The witness minimizes `ℓ + ℓ'`, then `ℓ`.
pub fn exact_iso(a: &FamilySpec, b: &FamilySpec) -> Result<Comparison> {
    let (modulus, n, n_prime) = match prepare(a, b)? {
        Prepared::Done(c) => return Ok(c),
        Prepared::Ready {
            modulus,
            n,
            n_prime,
        } => (modulus, n, n_prime),
    };
    let left = doubling_orbit(modulus, residue(&n, modulus));
    let right: BTreeMap<u64, u64> = doubling_orbit(modulus, residue(&n_prime, modulus))
        .into_iter()
        .enumerate()
        .map(|(l, r)| (r, l as u64))
        .collect();
    let best = left
        .iter()
        .enumerate()
        .filter_map(|(l, r)| right.get(r).map(|&lp| (l as u64 + lp, l as u64, lp)))
        .min();
    Ok(Comparison::Decided(match best {
        Some((_, l, l_prime)) => IsoVerdict::yes(IsoWitness {
            l,
            l_prime,
            unit: None,
        }),
        None => IsoVerdict::no("doubling orbits are disjoint"),
    }))
}

fn units(modulus: u64) -> impl Iterator<Item = u64> {
    let top = modulus.max(2);
    (1..top).filter(move |u| modulus == 1 || u.gcd(&modulus) == 1)
}

fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// `gcd(N, M) = gcd(N', M)` with `M` the odd part of `modulus`.
pub fn stable_by_gcd(modulus: u64, n: &BigUint, n_prime: &BigUint) -> bool {
    let odd = modulus >> modulus.trailing_zeros();
    let g = |x: &BigUint| residue(x, odd).gcd(&odd);
    g(n) == g(n_prime)
}

/// Stable isomorphism: `2^ℓ N ≡ u · 2^ℓ' N' (mod m-1)` for a unit `u`.
///
/// Decided by enumerating unit orbits `{u · 2^ℓ' N'}` and cross-checked
/// against the gcd criterion; a disagreement is reported as
/// [`Error::OracleDisagreement`]. The witness minimizes `ℓ + ℓ'`, then `ℓ`,
/// then `u`.
pub fn stable_iso(a: &FamilySpec, b: &FamilySpec) -> Result<Comparison> {
    let (modulus, n, n_prime) = match prepare(a, b)? {
        Prepared::Done(c) => return Ok(c),
        Prepared::Ready {
            modulus,
            n,
            n_prime,
        } => (modulus, n, n_prime),
    };
    let left = doubling_orbit(modulus, residue(&n, modulus));
    let right = doubling_orbit(modulus, residue(&n_prime, modulus));

    // unit orbits of the right-hand residues; orbits partition Z/modulus
    let mut orbit_of: BTreeMap<u64, usize> = BTreeMap::new();
    let mut orbit_count = 0usize;
    let mut first_right: Vec<u64> = Vec::new();
    for (lp, &r) in right.iter().enumerate() {
        if let Some(&o) = orbit_of.get(&r) {
            first_right[o] = first_right[o].min(lp as u64);
            continue;
        }
        for u in units(modulus) {
            orbit_of
                .entry(mul_mod(u, r, modulus))
                .or_insert(orbit_count);
        }
        first_right.push(lp as u64);
        orbit_count += 1;
    }
    let mut first_left: Vec<Option<u64>> = vec![None; orbit_count];
    for (l, r) in left.iter().enumerate() {
        if let Some(&o) = orbit_of.get(r) {
            first_left[o].get_or_insert(l as u64);
        }
    }
    let best = (0..orbit_count)
        .filter_map(|o| first_left[o].map(|l| (l + first_right[o], l, first_right[o])))
        .min();

    let verdict = match best {
        Some((_, l, l_prime)) => {
            let target = left[l as usize];
            let source = right[l_prime as usize];
            let u = units(modulus)
                .find(|&u| mul_mod(u, source, modulus) == target)
                .ok_or_else(|| {
                    Error::OracleDisagreement(format!(
                        "no unit maps {source} to {target} mod {modulus}"
                    ))
                })?;
            IsoVerdict::yes(IsoWitness {
                l,
                l_prime,
                unit: Some(u),
            })
        }
        None => IsoVerdict::no("no unit multiple of the doubling orbits agrees"),
    };

    let by_gcd = stable_by_gcd(modulus, &n, &n_prime);
    if by_gcd != verdict.isomorphic {
        return Err(Error::OracleDisagreement(format!(
            "unit-orbit enumeration says {} but gcd criterion says {by_gcd} (m - 1 = {modulus})",
            verdict.isomorphic
        )));
    }
    Ok(Comparison::Decided(verdict))
}

/// Precomputed doubling orbits and unit orbits of `Z/modulus`, for deciding
/// many pairs at once.
#[derive(Clone, Debug)]
pub struct ResidueClassifier {
    modulus: u64,
    words: usize,
    /// bitset of the forward doubling orbit of each residue
    forward: Vec<Vec<u64>>,
    /// bitset of unit-orbit labels met along each forward orbit
    stable_labels: Vec<Vec<u64>>,
}

/// Largest modulus a [`ResidueClassifier`] is built for.
pub const MAX_CLASSIFIER_MODULUS: u64 = 1 << 12;

impl ResidueClassifier {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus > MAX_CLASSIFIER_MODULUS {
            return Err(Error::Regime {
                op: "residue classifier",
                requirement: "1 <= m - 1 <= 4096",
            });
        }
        let size = modulus as usize;
        let mut label = vec![usize::MAX; size];
        let mut labels = 0usize;
        for r in 0..modulus {
            if label[r as usize] != usize::MAX {
                continue;
            }
            for u in units(modulus) {
                label[mul_mod(u, r, modulus) as usize] = labels;
            }
            labels += 1;
        }
        let words = size.div_ceil(64);
        let label_words = labels.div_ceil(64);
        let mut forward = Vec::with_capacity(size);
        let mut stable_labels = Vec::with_capacity(size);
        for r in 0..modulus {
            let mut bits = vec![0u64; words];
            let mut lbits = vec![0u64; label_words];
            for x in doubling_orbit(modulus, r) {
                bits[x as usize / 64] |= 1 << (x % 64);
                let l = label[x as usize];
                lbits[l / 64] |= 1 << (l % 64);
            }
            forward.push(bits);
            stable_labels.push(lbits);
        }
        Ok(ResidueClassifier {
            modulus,
            words,
            forward,
            stable_labels,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn intersects(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).any(|(x, y)| x & y != 0)
    }

    /// Exact isomorphism of the residues `n`, `n_prime` (taken mod `m - 1`).
    pub fn exact(&self, n: u64, n_prime: u64) -> bool {
        let (a, b) = (
            (n % self.modulus) as usize,
            (n_prime % self.modulus) as usize,
        );
        debug_assert_eq!(self.forward[a].len(), self.words);
        Self::intersects(&self.forward[a], &self.forward[b])
    }

    /// Stable isomorphism via unit-orbit labels.
    pub fn stable(&self, n: u64, n_prime: u64) -> bool {
        let (a, b) = (
            (n % self.modulus) as usize,
            (n_prime % self.modulus) as usize,
        );
        Self::intersects(&self.stable_labels[a], &self.stable_labels[b])
    }

    fn count_classes(&self, related: impl Fn(u64, u64) -> bool) -> usize {
        let mut reps: Vec<u64> = Vec::new();
        for r in 0..self.modulus {
            if !reps.iter().any(|&p| related(p, r)) {
                reps.push(r);
            }
        }
        reps.len()
    }

    pub fn exact_classes(&self) -> usize {
        self.count_classes(|a, b| self.exact(a, b))
    }

    pub fn stable_classes(&self) -> usize {
        self.count_classes(|a, b| self.stable(a, b))
    }

    /// A pair that is stably but not exactly isomorphic, smallest first.
    pub fn divergent_pair(&self) -> Option<(u64, u64)> {
        (0..self.modulus)
            .flat_map(|a| (a + 1..self.modulus).map(move |b| (a, b)))
            .find(|&(a, b)| self.stable(a, b) && !self.exact(a, b))
    }
}

/// Smallest `m ∈ [2, limit_m]` with a pair `N, N' ∈ [0, m-2]` that is stably
/// but not exactly isomorphic.
pub fn smallest_divergence(limit_m: u64) -> Result<Option<u64>> {
    for m in 2..=limit_m {
        if ResidueClassifier::new(m - 1)?.divergent_pair().is_some() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Necessary condition for a candidate invariant: `∂_0 = 0` and an
/// all-positive quotient forces an all-positive middle group.
pub fn permanence_check(candidate: &SixTermInvariant) -> bool {
    let key_property =
        !candidate.quotient.cone().is_all_positive() || candidate.middle.cone().is_all_positive();
    candidate.index_map_zero && key_property
}
