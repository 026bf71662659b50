//! Root-mean-square deviations and the lower bounds on `Δφ ΔL_z`.
//!
//! Four bounds are compared against the product:
//!
//! * `bound_exact`: `½ |2π ρ(2π) − 1|`, the boundary-term bound. Holds for every state.
//! * `bound_general`: `½ |⟨L_zψ|φψ⟩ − ⟨φψ|L_zψ⟩|`. Same number, reached
//!   through the inner products instead of the boundary density.
//! * `bound_tight`: `|⟨f|g⟩|` for the deviation vectors
//!   `f = (φ − ⟨φ⟩)ψ`, `g = (L_z − ⟨L_z⟩)ψ`, which keeps the symmetric
//!   (covariance) part as well as the antisymmetric one.
//! * `bound_naive` = ½ and `bound_strange` = 1: constant comparators that
//!   do *not* hold for every state.

use crate::error::{Error, Result};
use crate::states::{self, MomentSet, PeriodicState};
use serde::Serialize;
use std::f64::consts::PI;

/// The commutator-style bound borrowed from `Δx Δp ≥ ħ/2`.
pub const NAIVE_BOUND: f64 = 0.5;
/// The `Δφ ΔL_z ≥ ħ` claim.
pub const STRANGE_BOUND: f64 = 1.0;

/// Slack on the `holds_*` comparisons.
pub const FLAG_TOL: f64 = 1e-12;
/// Agreement required between two routes to the same quantity.
pub const PATH_TOL: f64 = 1e-10;
/// Variances down to this value are rounding noise and clamp to zero.
pub const VARIANCE_FLOOR: f64 = -1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Phi,
    Lz,
}

/// `√(⟨Q²⟩ − ⟨Q⟩²)`.
pub fn rms_deviation(moments: &MomentSet, observable: Observable) -> Result<f64> {
    let (mean, mean_sq) = match observable {
        Observable::Phi => (moments.mean_phi, moments.mean_phi_sq),
        Observable::Lz => (moments.mean_lz, moments.mean_lz_sq),
    };
    let variance = mean_sq - mean * mean;
    if variance < VARIANCE_FLOOR {
        return Err(Error::NumericalInconsistency(format!(
            "negative variance {variance:e} for {observable:?}"
        )));
    }
    Ok(variance.max(0.0).sqrt())
}

/// `½ |2π ρ(2π) − 1|` from a boundary density.
pub fn boundary_bound_from_density(boundary_density: f64) -> f64 {
    0.5 * (2.0 * PI * boundary_density - 1.0).abs()
}

/// `½ |2π ρ(2π) − 1|`, in units of ħ.
pub fn boundary_bound<S: PeriodicState + ?Sized>(state: &S) -> f64 {
    boundary_bound_from_density(states::boundary_density(state))
}

/// `½ |⟨L_zψ|φψ⟩ − ⟨φψ|L_zψ⟩|`, in units of ħ.
pub fn general_bound<S: PeriodicState + ?Sized>(state: &S) -> f64 {
    0.5 * states::cross_antisym(state)
}

/// `√(¼(⟨f|g⟩ + ⟨g|f⟩)² + ¼|⟨f|g⟩ − ⟨g|f⟩|²)` from precomputed moments.
pub fn tight_bound_from(moments: &MomentSet) -> f64 {
    let shift = moments.mean_phi * moments.mean_lz;
    let fg = moments.phi_lz - shift;
    let gf = moments.lz_phi - shift;
    let symmetric = ((fg + gf) * 0.5).norm_sqr();
    let antisymmetric = ((fg - gf) * 0.5).norm_sqr();
    (symmetric + antisymmetric).sqrt()
}

pub fn tight_bound<S: PeriodicState + ?Sized>(state: &S) -> f64 {
    tight_bound_from(&states::moments(state))
}

/// Deviations, the product and every bound for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub delta_phi: f64,
    pub delta_lz: f64,
    pub product: f64,
    /// `π ΔL_z`: the product with `Δφ` replaced by its largest possible value.
    pub pi_delta_lz: f64,
    pub bound_exact: f64,
    pub bound_general: f64,
    pub bound_tight: f64,
    pub bound_naive: f64,
    pub bound_strange: f64,
    pub holds_exact: bool,
    pub holds_naive: bool,
    pub holds_strange: bool,
}

/// Report for a normalized state.
pub fn report<S: PeriodicState + ?Sized>(state: &S) -> Result<UncertaintyReport> {
    if !state.is_normalized() {
        return Err(Error::InvalidState(format!(
            "state is not normalized: sum |c_m|^2 = {}",
            state.norm_sqr()
        )));
    }
    report_from_moments(&states::moments(state))
}

/// Report assembled from a [`MomentSet`], closed-form or quadrature.
pub fn report_from_moments(moments: &MomentSet) -> Result<UncertaintyReport> {
    let delta_phi = rms_deviation(moments, Observable::Phi)?;
    let delta_lz = rms_deviation(moments, Observable::Lz)?;
    let product = delta_phi * delta_lz;

    let bound_exact = boundary_bound_from_density(moments.boundary_density);
    let bound_general = 0.5 * moments.cross_antisym;
    if (bound_exact - bound_general).abs() >= PATH_TOL {
        return Err(Error::NumericalInconsistency(format!(
            "boundary-term bound {bound_exact} and inner-product bound {bound_general} disagree"
        )));
    }
    let bound_tight = tight_bound_from(moments);

    let holds = |bound: f64| product >= bound - FLAG_TOL;
    let holds_exact = holds(bound_exact);
    if !holds_exact {
        return Err(Error::NumericalInconsistency(format!(
            "product {product} violates the boundary-term bound {bound_exact}"
        )));
    }

    Ok(UncertaintyReport {
        delta_phi,
        delta_lz,
        product,
        pi_delta_lz: PI * delta_lz,
        bound_exact,
        bound_general,
        bound_tight,
        bound_naive: NAIVE_BOUND,
        bound_strange: STRANGE_BOUND,
        holds_exact,
        holds_naive: holds(NAIVE_BOUND),
        holds_strange: holds(STRANGE_BOUND),
    })
}
