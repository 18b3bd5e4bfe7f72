//! Certified exact arithmetic for Salem numbers and designed systoles of
//! arithmetic hyperbolic manifolds.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: rationals, dyadic intervals, integer polynomials, Sturm
//!   sequences and enclosures of `log`/`acosh`.
//! * [`salem`]: Salem predicate, trace polynomials, cyclotomic stripping,
//!   Mahler measure and bounded enumeration.
//! * [`numberfield`]: totally real fields `Q(mu)` with certified embeddings.
//! * [`quadform`]: Gram matrices, signatures and admissibility.
//! * [`hyperbolic`]: hyperboloid-model reflections, hyperplane distances and
//!   isometry classification.
//! * [`constructions`]: the rotation-family density search over `Q(sqrt 2)`
//!   and the Salem reflection pair.
//! * [`congruence`]: reduction modulo primes and the separation probe.

pub mod arith;
pub mod congruence;
pub mod constructions;
pub mod error;
pub mod hyperbolic;
pub mod numberfield;
pub mod quadform;
pub mod salem;

pub use error::{Error, Result};

/// Tag carried by every JSON report.
pub const SCHEMA: &str = "salem-systole/1";
