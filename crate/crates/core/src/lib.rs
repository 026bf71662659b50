//! Uncertainty relations for the azimuthal angle and the z-component of the
//! angular momentum on 2π-periodic states.
//!
//! The naive commutator bound `Δφ ΔL_z ≥ ħ/2` does not hold for the angle
//! operator, because `φψ(φ)` leaves the domain of `L_z = −i ∂/∂φ`. What does
//! hold for every state is the boundary-term bound
//!
//! ```text
//! Δφ ΔL_z ≥ ½ |2π ρ(2π) − 1|
//! ```
//!
//! where `ρ(2π)` is the (radially integrated) probability density at the
//! edge of the angular interval.
//!
//! Everything is in units where ħ = 1.
//!
//! * [`states`]: angular and lowest-Landau-level states with closed-form moments.
//! * [`bounds`]: rms deviations, the four lower bounds and the report.
//! * [`family`]: the two-state family `ψ(a, φ)`, sweeps and crossing searches.
//! * [`oracle`]: Gauss-Legendre quadrature used to cross-check every closed form.

pub mod bounds;
pub mod error;
pub mod family;
pub mod oracle;
pub mod special;
pub mod states;

pub use bounds::{report, Observable, UncertaintyReport};
pub use error::{Error, Result};
pub use family::{CrossingSet, FamilyPoint, Quantity};
pub use oracle::{Oracle, QuadratureSpec};
pub use states::{AngularState, Basis, LandauState, MomentSet, Order, PeriodicState};
