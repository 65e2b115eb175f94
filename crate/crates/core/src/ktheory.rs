//! Six-term `K`-theory invariant of `C*(G[m,(n_i)])`.
//!
//! All `K_1` groups vanish, so the invariant is the short exact sequence
//! `0 → K_0(I) → K_0(A) → K_0(A/I) → 0` of pre-ordered groups:
//!
//! | `m`        | ideal    | middle              | quotient   |
//! |------------|----------|---------------------|------------|
//! | `0`        | `Z[1/2]` | `Z[1/2] ⊕ Z`, α-cone | `Z`        |
//! | `∞`        | `Z[1/2]` | `Z[1/2] ⊕ Z`, all   | `Z`, all   |
//! | `1<m<∞`    | `Z[1/2]` | `Z[1/2] ⊕ Z/x`, all | `Z/(m-1)`, all |
//!
//! The torsion order `x` is computed from truncated presentations
//! ([`truncated_k0_oracle`]) and only then compared with the closed form
//! `2^v2(m-1) · gcd(M, N)` ([`closed_form_torsion_order`]).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::dyadic::RationalOrInfinity;
use crate::error::{Error, Result};
use crate::family::{alpha_of, big_n, truncated_presentation, FamilySpec, Loops};
use crate::linalg::{
    cokernel_invariants, smith_normal_form, CokernelInvariants, IntMatrix, SmithForm,
};
use crate::order::{ConeDescriptor, PreorderedGroup};

/// Abstract isomorphism type of a `K`-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// `Z[1/2]`
    DyadicLine,
    /// `Z[1/2] ⊕ Z`
    DyadicPlusFree,
    /// `Z[1/2] ⊕ Z/x` with `x ≥ 2`; build through [`GroupDescriptor::dyadic_plus_torsion`].
    DyadicPlusTorsion(u64),
    /// `Z`
    FreeZ,
    /// `Z/(m-1)`
    CyclicMod(u64),
    Trivial,
}

impl GroupDescriptor {
    /// `Z[1/2] ⊕ Z/x`, collapsing to `Z[1/2]` when `x = 1`.
    pub fn dyadic_plus_torsion(x: u64) -> Self {
        assert!(x >= 1, "torsion order must be positive");
        if x == 1 {
            GroupDescriptor::DyadicLine
        } else {
            GroupDescriptor::DyadicPlusTorsion(x)
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            GroupDescriptor::DyadicLine => "DyadicLine",
            GroupDescriptor::DyadicPlusFree => "DyadicPlusFree",
            GroupDescriptor::DyadicPlusTorsion(_) => "DyadicPlusTorsion",
            GroupDescriptor::FreeZ => "FreeZ",
            GroupDescriptor::CyclicMod(_) => "CyclicMod",
            GroupDescriptor::Trivial => "Trivial",
        }
    }

    pub fn order_parameter(self) -> Option<u64> {
        match self {
            GroupDescriptor::DyadicPlusTorsion(x) | GroupDescriptor::CyclicMod(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::DyadicLine => f.write_str("Z[1/2]"),
            GroupDescriptor::DyadicPlusFree => f.write_str("Z[1/2]+Z"),
            GroupDescriptor::DyadicPlusTorsion(x) => write!(f, "Z[1/2]+Z/{x}"),
            GroupDescriptor::FreeZ => f.write_str("Z"),
            GroupDescriptor::CyclicMod(n) => write!(f, "Z/{n}"),
            GroupDescriptor::Trivial => f.write_str("0"),
        }
    }
}

/// Whether the ideal and the quotient are AF or purely infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    AfAf,
    AfPi,
    PiAf,
    PiPi,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::AfAf => "AF-AF",
            CaseTag::AfPi => "AF-PI",
            CaseTag::PiAf => "PI-AF",
            CaseTag::PiPi => "PI-PI",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "AF-AF" => Some(CaseTag::AfAf),
            "AF-PI" => Some(CaseTag::AfPi),
            "PI-AF" => Some(CaseTag::PiAf),
            "PI-PI" => Some(CaseTag::PiPi),
            _ => None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered six-term exact sequence. Fields are public so that candidate
/// invariants (not necessarily produced by [`invariant_of`]) can be built
/// and fed to [`crate::classify::permanence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermInvariant {
    pub ideal: PreorderedGroup,
    pub middle: PreorderedGroup,
    pub quotient: PreorderedGroup,
    pub k1_ideal: GroupDescriptor,
    pub k1_middle: GroupDescriptor,
    pub k1_quotient: GroupDescriptor,
    /// `∂_0 = 0`
    pub index_map_zero: bool,
    pub case_tag: CaseTag,
}

/// Scalars derived from a family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedScalars {
    pub alpha: RationalOrInfinity,
    /// Prefix length, zero tails only.
    pub k: Option<usize>,
    /// `N = Σ 2^(k-i) n_i`, zero tails only.
    pub n: Option<BigUint>,
    /// Torsion order of the middle group, `1 < m < ∞` only.
    pub x: Option<u64>,
    /// Largest odd factor `M` of `m - 1`, `1 < m < ∞` only.
    pub odd_part: Option<u64>,
}

/// A truncated presentation together with its Smith form.
///
/// Row `g` of `smith.u` gives the change of basis from the generator order
/// `(w_1, …, w_d, v_0)` to the diagonal basis, which is how the maps
/// `K_0(I) → K_0(A) → K_0(A/I)` are carried at presentation level.
#[derive(Clone, Debug)]
pub struct TruncatedK0 {
    pub depth: usize,
    pub presentation: IntMatrix,
    pub smith: SmithForm,
    pub invariants: CokernelInvariants,
}

impl TruncatedK0 {
    /// Coordinates of generator `g` (0-based, `v_0` last) in the diagonal basis.
    pub fn generator_coordinates(&self, g: usize) -> Vec<BigInt> {
        self.smith.u.column(g)
    }
}

pub fn truncated_k0(spec: &FamilySpec, depth: usize) -> Result<TruncatedK0> {
    let presentation = truncated_presentation(spec, depth)?;
    let smith = smith_normal_form(&presentation);
    let invariants = cokernel_invariants(&presentation);
    Ok(TruncatedK0 {
        depth,
        presentation,
        smith,
        invariants,
    })
}

/// Cokernel invariants of the depth-`depth` truncation.
pub fn truncated_k0_oracle(spec: &FamilySpec, depth: usize) -> Result<CokernelInvariants> {
    Ok(cokernel_invariants(&truncated_presentation(spec, depth)?))
}

/// Default oracle depth, `k + 3`.
pub fn default_oracle_depth(spec: &FamilySpec) -> usize {
    spec.k() + 3
}

/// Depth past which a truncation cannot keep changing: `m - 1 < 2^64`, so
/// the 2-part of the torsion stabilizes within 64 further levels.
const MAX_EXTRA_DEPTH: usize = 66;

/// Stable torsion order of the truncated presentations.
///
/// Starts at depth `k + 2` and deepens until two consecutive depths agree.
/// Deepening only multiplies the weight of the `N`-relation by 2, so the
/// torsion is non-decreasing in depth and agreement means it has settled.
pub fn torsion_order_x(spec: &FamilySpec) -> Result<u64> {
    if spec.m().modulus().is_none() {
        return Err(Error::Regime {
            op: "torsion order x",
            requirement: "1 < m < inf",
        });
    }
    let k = spec.k();
    let mut depth = k + 2;
    let mut current = truncated_k0_oracle(spec, depth)?;
    while depth < k + MAX_EXTRA_DEPTH {
        let next = truncated_k0_oracle(spec, depth + 1)?;
        if next == current {
            let order = current.torsion_order();
            return order
                .to_u64()
                .ok_or(Error::OracleDisagreement(alloc::format!(
                    "torsion order {order} exceeds m - 1"
                )));
        }
        current = next;
        depth += 1;
    }
    Err(Error::NoStabilization { depth })
}

fn split_modulus(m: u64) -> Result<(u32, u64)> {
    match Loops::Finite(m).modulus() {
        Some(n) => Ok((n.trailing_zeros(), n >> n.trailing_zeros())),
        None => Err(Error::Regime {
            op: "x range",
            requirement: "1 < m < inf",
        }),
    }
}

/// `{ 2^ℓ · d : d | M }` where `m - 1 = 2^ℓ · M` with `M` odd; ascending.
pub fn x_range(m: u64) -> Result<Vec<u64>> {
    let (two_exp, odd) = split_modulus(m)?;
    let mut out = BTreeSet::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= odd {
        if odd % d == 0 {
            out.insert(d << two_exp);
            out.insert((odd / d) << two_exp);
        }
        d += 1;
    }
    Ok(out.into_iter().collect())
}

/// Largest odd factor of `m - 1`.
pub fn odd_part(m: u64) -> Result<u64> {
    split_modulus(m).map(|(_, odd)| odd)
}

/// `2^v2(m-1) · gcd(M, N)`. Agrees with [`torsion_order_x`] on every spec
/// the test suites exercise; the truncation remains the definition.
pub fn closed_form_torsion_order(m: u64, n: &BigUint) -> Result<u64> {
    let (two_exp, odd) = split_modulus(m)?;
    let g = (n % BigUint::from(odd))
        .to_u64()
        .expect("below an u64 modulus")
        .gcd(&odd);
    Ok(g << two_exp)
}

/// Ordered `K`-theory of a validated family member, with its scalars.
pub fn invariant_of(spec: &FamilySpec) -> Result<(SixTermInvariant, DerivedScalars)> {
    let alpha = alpha_of(spec);
    let (k, n) = match big_n(spec) {
        Ok((k, n)) => (Some(k), Some(n)),
        Err(_) => (None, None),
    };
    let ideal = PreorderedGroup::new(
        GroupDescriptor::DyadicLine,
        ConeDescriptor::StandardDyadicCone,
    )?;
    let full = ConeDescriptor::AllPositive {
        with_full_class: true,
    };

    let (middle, quotient, case_tag, x, odd) = match spec.m() {
        Loops::Finite(0) => (
            PreorderedGroup::new(
                GroupDescriptor::DyadicPlusFree,
                ConeDescriptor::AlphaCone(alpha.clone()),
            )?,
            PreorderedGroup::new(GroupDescriptor::FreeZ, ConeDescriptor::StandardIntegerCone)?,
            CaseTag::AfAf,
            None,
            None,
        ),
        Loops::Infinite => (
            PreorderedGroup::new(GroupDescriptor::DyadicPlusFree, full.clone())?,
            PreorderedGroup::new(GroupDescriptor::FreeZ, full)?,
            CaseTag::AfPi,
            None,
            None,
        ),
        Loops::Finite(m) => {
            let modulus = m - 1;
            let x = torsion_order_x(spec)?;
            (
                PreorderedGroup::new(GroupDescriptor::dyadic_plus_torsion(x), full.clone())?,
                PreorderedGroup::new(GroupDescriptor::CyclicMod(modulus), full)?,
                CaseTag::AfPi,
                Some(x),
                Some(odd_part(m)?),
            )
        }
    };

    let invariant = SixTermInvariant {
        ideal,
        middle,
        quotient,
        k1_ideal: GroupDescriptor::Trivial,
        k1_middle: GroupDescriptor::Trivial,
        k1_quotient: GroupDescriptor::Trivial,
        index_map_zero: true,
        case_tag,
    };
    let scalars = DerivedScalars {
        alpha,
        k,
        n,
        x,
        odd_part: odd,
    };
    debug_assert!(scalars.n.as_ref().is_none_or(|n| !n.is_zero()));
    Ok((invariant, scalars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::TailSpec;
    use alloc::vec;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn spec(m: u64, prefix: &[u64]) -> FamilySpec {
        FamilySpec::finite(m, prefix).unwrap()
    }

    fn inv(free_rank: usize, torsion: &[u64]) -> CokernelInvariants {
        CokernelInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    #[test]
    fn torsion_anchors() {
        assert_eq!(torsion_order_x(&spec(3, &[1])).unwrap(), 2);
        assert_eq!(torsion_order_x(&spec(4, &[1])).unwrap(), 1);
        assert_eq!(torsion_order_x(&spec(4, &[3])).unwrap(), 3);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            truncated_k0_oracle(&spec(3, &[1]), 3).unwrap(),
            inv(1, &[2])
        );
        assert_eq!(truncated_k0_oracle(&spec(4, &[1]), 3).unwrap(), inv(1, &[]));
        assert_eq!(
            truncated_k0_oracle(&spec(4, &[3]), 5).unwrap(),
            inv(1, &[3])
        );
    }

    #[test]
    fn shallow_truncations_undercount_the_two_part() {
        // Z^2/<(2^(d-k) N, m-1)>: with m - 1 = 4 and N = 1 depth k+1 only sees Z/2.
        let s = spec(5, &[1]);
        assert_eq!(truncated_k0_oracle(&s, 2).unwrap(), inv(1, &[2]));
        assert_eq!(truncated_k0_oracle(&s, 3).unwrap(), inv(1, &[4]));
        assert_eq!(truncated_k0_oracle(&s, 4).unwrap(), inv(1, &[4]));
        assert_eq!(torsion_order_x(&s).unwrap(), 4);
        // m - 1 = 8 needs depth k+3
        assert_eq!(torsion_order_x(&spec(9, &[1])).unwrap(), 8);
    }

    #[test]
    fn x_range_examples() {
        assert_eq!(x_range(3).unwrap(), vec![2]);
        assert_eq!(x_range(4).unwrap(), vec![1, 3]);
        assert_eq!(x_range(9).unwrap(), vec![8]);
        assert_eq!(x_range(2).unwrap(), vec![1]);
        assert_eq!(x_range(37).unwrap(), vec![4, 12, 36]);
        assert!(x_range(1).is_err());
        assert!(x_range(0).is_err());
    }

    #[test]
    fn invariant_regimes() {
        let af = FamilySpec::new(Loops::Finite(0), vec![2], TailSpec::Zero).unwrap();
        let (i, s) = invariant_of(&af).unwrap();
        assert_eq!(
            i.middle.cone(),
            &ConeDescriptor::AlphaCone(RationalOrInfinity::from_integer(1))
        );
        assert_eq!(i.middle.group(), GroupDescriptor::DyadicPlusFree);
        assert_eq!(i.quotient.cone(), &ConeDescriptor::StandardIntegerCone);
        assert_eq!(i.case_tag, CaseTag::AfAf);
        assert_eq!(s.alpha, RationalOrInfinity::from_integer(1));
        assert_eq!(s.x, None);

        let pi = FamilySpec::new(Loops::Infinite, vec![1], TailSpec::Zero).unwrap();
        let (i, _) = invariant_of(&pi).unwrap();
        assert_eq!(
            i.middle.cone(),
            &ConeDescriptor::AllPositive {
                with_full_class: true
            }
        );
        assert_eq!(i.quotient.group(), GroupDescriptor::FreeZ);
        assert_eq!(i.case_tag, CaseTag::AfPi);

        let (i, s) = invariant_of(&spec(8, &[1])).unwrap();
        assert_eq!(i.middle.group(), GroupDescriptor::DyadicLine);
        assert_eq!(i.quotient.group(), GroupDescriptor::CyclicMod(7));
        assert_eq!(s.x, Some(1));
        assert_eq!(s.odd_part, Some(7));
        assert_eq!(s.n, Some(BigUint::from(1u8)));
        assert!(i.index_map_zero);

        let (i, s) = invariant_of(&spec(13, &[2, 1])).unwrap();
        // m - 1 = 12, N = 5: x = 4 · gcd(3, 5) = 4
        assert_eq!(i.middle.group(), GroupDescriptor::DyadicPlusTorsion(4));
        assert_eq!(s.x, Some(4));
    }

    #[test]
    fn generator_coordinates_follow_smith_basis() {
        let t = truncated_k0(&spec(4, &[3]), 4).unwrap();
        assert_eq!(t.invariants, inv(1, &[3]));
        // U · M = S · V^-1, so applying U to every relation lands in the diagonal lattice
        let um = &t.smith.u * &t.presentation;
        let diag = t.smith.diagonal();
        for j in 0..um.cols() {
            for i in 0..um.rows() {
                let d = diag.get(i).cloned().unwrap_or_default();
                if d.is_zero() {
                    assert!(um[(i, j)].is_zero());
                } else {
                    assert!(um[(i, j)].is_multiple_of(&d));
                }
            }
        }
        assert_eq!(t.generator_coordinates(4).len(), 5);
    }

    fn finite_spec() -> impl Strategy<Value = FamilySpec> {
        (2u64..200, proptest::collection::vec(0u64..=50, 1..=6))
            .prop_filter("needs an edge", |(_, p)| p.iter().any(|&n| n > 0))
            .prop_map(|(m, p)| spec(m, &p))
    }

    proptest! {
        #[test]
        fn stabilizes_past_two_adic_depth(s in finite_spec(), extra in 0usize..3) {
            let v2 = (s.m().modulus().unwrap()).trailing_zeros() as usize;
            let base = s.k() + v2.max(1);
            let a = truncated_k0_oracle(&s, base).unwrap();
            let b = truncated_k0_oracle(&s, base + 1 + extra).unwrap();
            prop_assert_eq!(a.free_rank, 1);
            prop_assert_eq!(&a, &b);
        }

        #[test]
        fn x_in_range_and_matches_closed_form(s in finite_spec()) {
            let m = s.m().finite().unwrap();
            let x = torsion_order_x(&s).unwrap();
            prop_assert!(x_range(m).unwrap().contains(&x));
            let (_, n) = big_n(&s).unwrap();
            prop_assert_eq!(x, closed_form_torsion_order(m, &n).unwrap());
        }

        #[test]
        fn invariant_canonicalizes_trivial_torsion(s in finite_spec()) {
            let (inv, scalars) = invariant_of(&s).unwrap();
            prop_assert!(inv.index_map_zero);
            match inv.middle.group() {
                GroupDescriptor::DyadicLine => prop_assert_eq!(scalars.x, Some(1)),
                GroupDescriptor::DyadicPlusTorsion(x) => {
                    prop_assert!(x > 1);
                    prop_assert_eq!(scalars.x, Some(x));
                }
                other => prop_assert!(false, "unexpected middle group {:?}", other),
            }
            let odd = scalars.odd_part.unwrap();
            let modulus = s.m().modulus().unwrap();
            prop_assert!(odd % 2 == 1 && modulus % odd == 0 && (modulus / odd).is_power_of_two());
        }
    }
}
