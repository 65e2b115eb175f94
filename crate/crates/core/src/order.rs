//! Symbolic positive cones and the (K-)lexicographic decision procedures.
//!
//! Cones are never enumerated; membership and equality are decided by case
//! analysis on the descriptors. For `Z[1/2] ⊕ Z` elements are pairs `(y, n)`
//! with the ideal embedded as `y ↦ (y, 0)` and the quotient map `(y, n) ↦ n`.

use alloc::boxed::Box;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{split_two_part, Dyadic, RationalOrInfinity};
use crate::error::{Error, Result};
use crate::ktheory::{CaseTag, GroupDescriptor, SixTermInvariant};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConeDescriptor {
    /// Every element is positive. `with_full_class` records that every class
    /// is moreover represented by a norm-full projection (`K_0 = K_0+ = K_0++`).
    AllPositive { with_full_class: bool },
    /// `{(y, 0) : y ≥ 0} ∪ {(y, n) : n > 0, y > -nα}` on `Z[1/2] ⊕ Z`.
    AlphaCone(RationalOrInfinity),
    /// `y ≥ 0` on `Z[1/2]`.
    StandardDyadicCone,
    /// `n ≥ 0` on `Z`.
    StandardIntegerCone,
    /// `ι(ideal cone) ⊔ {(y, n) : n > 0}` on `Z[1/2] ⊕ Z`.
    Lexicographic { ideal: Box<ConeDescriptor> },
}

impl ConeDescriptor {
    pub fn is_all_positive(&self) -> bool {
        matches!(self, ConeDescriptor::AllPositive { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            ConeDescriptor::AllPositive { .. } => "AllPositive",
            ConeDescriptor::AlphaCone(_) => "AlphaCone",
            ConeDescriptor::StandardDyadicCone => "StandardDyadicCone",
            ConeDescriptor::StandardIntegerCone => "StandardIntegerCone",
            ConeDescriptor::Lexicographic { .. } => "Lexicographic",
        }
    }
}

/// A group together with a compatible cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreorderedGroup {
    group: GroupDescriptor,
    cone: ConeDescriptor,
}

impl PreorderedGroup {
    pub fn new(group: GroupDescriptor, cone: ConeDescriptor) -> Result<Self> {
        let ok = match &cone {
            ConeDescriptor::AllPositive { .. } => true,
            ConeDescriptor::AlphaCone(_) => group == GroupDescriptor::DyadicPlusFree,
            ConeDescriptor::StandardDyadicCone => group == GroupDescriptor::DyadicLine,
            ConeDescriptor::StandardIntegerCone => group == GroupDescriptor::FreeZ,
            ConeDescriptor::Lexicographic { ideal } => {
                group == GroupDescriptor::DyadicPlusFree
                    && matches!(
                        **ideal,
                        ConeDescriptor::StandardDyadicCone | ConeDescriptor::AllPositive { .. }
                    )
            }
        };
        if ok {
            Ok(PreorderedGroup { group, cone })
        } else {
            Err(Error::Unsupported("cone is not compatible with the group"))
        }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn cone(&self) -> &ConeDescriptor {
        &self.cone
    }

    /// Whether the cone is the whole group.
    pub fn is_whole(&self) -> bool {
        self.cone.is_all_positive() || self.group == GroupDescriptor::Trivial
    }
}

/// Element `(y, n)`: `y` is the `Z[1/2]` part and `n` the integer part
/// (a free coordinate, or a residue for torsion groups). Unused parts are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeElement {
    pub dyadic_part: Dyadic,
    pub int_part: BigInt,
}

impl ConeElement {
    pub fn new(dyadic_part: Dyadic, int_part: impl Into<BigInt>) -> Self {
        ConeElement {
            dyadic_part,
            int_part: int_part.into(),
        }
    }

    pub fn dyadic(y: Dyadic) -> Self {
        ConeElement::new(y, 0)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ConeElement::new(Dyadic::zero(), n)
    }
}

fn check_shape(group: GroupDescriptor, e: &ConeElement) -> Result<()> {
    let ok = match group {
        GroupDescriptor::DyadicLine => e.int_part.is_zero(),
        GroupDescriptor::DyadicPlusFree | GroupDescriptor::DyadicPlusTorsion(_) => true,
        GroupDescriptor::FreeZ | GroupDescriptor::CyclicMod(_) => e.dyadic_part.is_zero(),
        GroupDescriptor::Trivial => e.dyadic_part.is_zero() && e.int_part.is_zero(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { group: group.tag() })
    }
}

/// `y > -nα`, i.e. `y + nα > 0`, in exact arithmetic.
fn above_alpha_line(y: &Dyadic, n: &BigInt, alpha: &BigRational) -> bool {
    (y.to_rational() + alpha * BigRational::from_integer(n.clone())).is_positive()
}

pub fn cone_contains(pg: &PreorderedGroup, e: &ConeElement) -> Result<bool> {
    check_shape(pg.group, e)?;
    let (y, n) = (&e.dyadic_part, &e.int_part);
    Ok(match &pg.cone {
        ConeDescriptor::AllPositive { .. } => true,
        ConeDescriptor::StandardDyadicCone => !y.is_negative(),
        ConeDescriptor::StandardIntegerCone => !n.is_negative(),
        ConeDescriptor::AlphaCone(alpha) => {
            if n.is_zero() {
                !y.is_negative()
            } else if n.is_negative() {
                false
            } else {
                match alpha {
                    RationalOrInfinity::Infinite => true,
                    RationalOrInfinity::Finite(a) => above_alpha_line(y, n, a),
                }
            }
        }
        ConeDescriptor::Lexicographic { ideal } => {
            if n.is_positive() {
                true
            } else if n.is_negative() {
                false
            } else {
                match **ideal {
                    ConeDescriptor::AllPositive { .. } => true,
                    _ => !y.is_negative(),
                }
            }
        }
    })
}

/// Decides `G+ = π^-1(K+ \ {0}) ⊔ ι(H+)` for the sequence `H → G → K`.
pub fn is_lexicographic_sequence(
    ideal: &PreorderedGroup,
    middle: &PreorderedGroup,
    quotient: &PreorderedGroup,
) -> Result<bool> {
    match middle.cone() {
        ConeDescriptor::Lexicographic { .. } => Ok(true),
        // the union is everything iff nothing is lost over 0 and over nonzero classes
        ConeDescriptor::AllPositive { .. } => Ok(ideal.is_whole() && quotient.is_whole()),
        ConeDescriptor::AlphaCone(alpha) => {
            if ideal.cone() == &ConeDescriptor::StandardDyadicCone
                && quotient.cone() == &ConeDescriptor::StandardIntegerCone
            {
                // fibres over n > 0 are all of Z[1/2] exactly when α = ∞
                Ok(alpha.is_infinite())
            } else {
                Err(Error::Unsupported(
                    "alpha cone needs standard ideal and quotient cones",
                ))
            }
        }
        _ => Err(Error::Unsupported("middle cone shape outside the family")),
    }
}

/// Both clauses of the K-lexicographic condition:
/// (1) a quotient cone smaller than the group forces a lexicographic sequence;
/// (2) a quotient with `K_0 = K_0+ = K_0++` forces the same on the middle group.
pub fn is_k_lexicographic(inv: &SixTermInvariant) -> Result<bool> {
    let clause_one = if inv.quotient.is_whole() {
        true
    } else {
        is_lexicographic_sequence(&inv.ideal, &inv.middle, &inv.quotient)?
    };
    let clause_two = match inv.quotient.cone() {
        ConeDescriptor::AllPositive {
            with_full_class: true,
        } => {
            inv.middle.cone()
                == &ConeDescriptor::AllPositive {
                    with_full_class: true,
                }
        }
        _ => true,
    };
    Ok(clause_one && clause_two)
}

/// The middle cone forced by fullness in the non-AF-AF cases.
pub fn middle_cone_from_fullness(
    case: CaseTag,
    ideal: &PreorderedGroup,
    quotient: &PreorderedGroup,
) -> Result<ConeDescriptor> {
    match case {
        CaseTag::AfPi | CaseTag::PiPi => Ok(ConeDescriptor::AllPositive {
            with_full_class: true,
        }),
        CaseTag::PiAf => {
            if quotient.cone() != &ConeDescriptor::StandardIntegerCone {
                return Err(Error::Unsupported(
                    "an AF quotient carries the standard integer cone",
                ));
            }
            Ok(ConeDescriptor::Lexicographic {
                ideal: Box::new(ideal.cone().clone()),
            })
        }
        CaseTag::AfAf => Err(Error::NotDetermined),
    }
}

/// Whether the α-cones for `a` and `b` are order isomorphic.
///
/// Order automorphisms of `Z[1/2] ⊕ Z` have the form
/// `(y, n) ↦ (2^j y + d n, n)` with `d ∈ Z[1/2]`, and carry the `α`-cone to
/// the `(2^j α - d)`-cone. So the cones match iff `b ∈ 2^Z a + Z[1/2]`:
/// writing `a = p/(2^s M)`, `b = q/(2^t M')` with `M, M'` odd, iff `M = M'`
/// and `p ≡ 2^j q (mod M)` for some `j ≥ 0`.
pub fn alpha_cone_isomorphic(a: &RationalOrInfinity, b: &RationalOrInfinity) -> bool {
    let (a, b) = match (a, b) {
        (RationalOrInfinity::Infinite, RationalOrInfinity::Infinite) => return true,
        (RationalOrInfinity::Finite(a), RationalOrInfinity::Finite(b)) => (a, b),
        _ => return false,
    };
    let (_, odd_a) = split_two_part(a.denom());
    let (_, odd_b) = split_two_part(b.denom());
    if odd_a != odd_b {
        return false;
    }
    let modulus = odd_a;
    if modulus.is_one() {
        return true;
    }
    let p = a.numer().mod_floor(&modulus);
    let q = b.numer().mod_floor(&modulus);
    // walk q, 2q, 4q, … until the powers of two cycle back to 1
    let two = BigInt::from(2);
    let mut power = BigInt::one();
    let mut shifted = q;
    loop {
        if shifted == p {
            return true;
        }
        shifted = (&shifted * &two).mod_floor(&modulus);
        power = (&power * &two).mod_floor(&modulus);
        if power.is_one() {
            return false;
        }
    }
}
