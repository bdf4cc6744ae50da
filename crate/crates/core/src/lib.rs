//! Positivity data of the arithmetic divisors `D_{a,b} = (C_0, g_{a,b})` on the
//! projective line over the integers, where
//! `g_{a,b}(z) = -log|z|^2 + log(a|z|^2 + b)`.
//!
//! For any pair of positive reals `(a, b)` the crate computes
//!
//! * the geography class (ample, nef, big, pseudo-effective) and the set
//!   `Θ = {x ∈ [0,1] : φ(x) ≥ 0}` of the characteristic function `φ`
//!   ([`charfun`]),
//! * norms and inner products of integral sections, small-section spans,
//!   exact enumeration at small level and the Minkowski ellipsoid bounds
//!   ([`sections`]),
//! * the arithmetic volume by closed form, quadrature and lattice counting
//!   ([`volume`]),
//! * the explicit Zariski decomposition ([`zariski`]).
//!
//! [`verify`] bundles the runtime invariant suites used by the `p1z verify`
//! command.

pub mod charfun;
pub mod error;
pub mod numerics;
pub mod sections;
pub mod verify;
pub mod volume;
pub mod zariski;

pub use charfun::{GeographyClass, Params, SpherePoint, ThetaInterval, ThetaKind};
pub use error::{Error, Result};
pub use numerics::Tolerance;
