//! Exact invariants and classification for the one-ideal graph C*-algebras
//! `C*(G[m,(n_i)])`.
//!
//! The graph `G[m,(n_i)]` has one vertex carrying `m` loops that emits `n_i`
//! edges into the `i`-th vertex of an infinite chain, each chain vertex
//! emitting two edges to the next. For the parameters where the algebra has
//! exactly one ideal, this crate computes:
//!
//! * the ordered `K_0` six-term invariant ([`ktheory::invariant_of`]), with an
//!   independent truncated-presentation oracle built on [`linalg`];
//! * fullness of the extension through the K-lexicographic criterion
//!   ([`classify::decide_fullness`]);
//! * exact and stable isomorphism within the family
//!   ([`classify::exact_iso`], [`classify::stable_iso`]).
//!
//! Everything is exact (arbitrary-precision integers and rationals) and the
//! crate is `no_std` with `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod dyadic;
pub mod error;
pub mod family;
pub mod ktheory;
pub mod linalg;
pub mod order;

pub use classify::{
    decide_fullness, exact_iso, permanence_check, smallest_divergence, stable_iso, stenotic_check,
    two_power_residues, Comparison, FullnessVerdict, IsoVerdict, IsoWitness, ResidueClassifier,
    Unstabilized,
};
pub use dyadic::{Dyadic, RationalOrInfinity};
pub use error::{Error, Result, ValidationCode, ValidationError};
pub use family::{FamilySpec, Loops, TailSpec};
pub use ktheory::{
    invariant_of, torsion_order_x, truncated_k0_oracle, x_range, CaseTag, DerivedScalars,
    GroupDescriptor, SixTermInvariant,
};
pub use linalg::{
    cokernel_invariants, smith_normal_form, CokernelInvariants, IntMatrix, SmithForm,
};
pub use order::{
    alpha_cone_isomorphic, cone_contains, is_k_lexicographic, is_lexicographic_sequence,
    middle_cone_from_fullness, ConeDescriptor, ConeElement, PreorderedGroup,
};
