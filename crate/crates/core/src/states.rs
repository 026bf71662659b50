//! Angular and lowest-Landau-level states and their closed-form moments.
//!
//! A state is a finite superposition of `L_z` eigenfunctions
//!
//! ```text
//! ψ(φ)    = Σ_m c_m e^{imφ} / √(2π)                 (angular)
//! ψ(r, φ) = Σ_m c_m R_m(r) e^{imφ} / √(2π), m ≥ 0   (lowest Landau level)
//! ```
//!
//! with `R_m(r) = r^m e^{−r²/4} / √(2^m m!)` in magnetic-length units. All
//! expectation values reduce to double sums over the coefficients weighted by
//! the radial overlap `S_mn` (identically 1 for purely angular states) and
//! the angular kernels `I_k(j) = (1/2π) ∫₀^{2π} φ^k e^{ijφ} dφ`.

use crate::error::{Error, Result};
use crate::special::{ln_factorial, ln_gamma_half_plus_one, EXACT_LIMIT};
use crate::special::{factorial, gamma_half_plus_one};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Tolerance on `Σ|c_m|² − 1` for a state to count as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Largest imaginary residue tolerated on a quantity that must be real.
const IMAG_RESIDUE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Angular,
    LowestLandau,
}

/// Power of the observable in a moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

/// Common view of [`AngularState`] and [`LandauState`].
pub trait PeriodicState {
    fn basis(&self) -> Basis;

    /// `(m, c_m)` pairs sorted by `m`, without duplicates.
    fn terms(&self) -> &[(i64, Complex64)];

    /// Radial overlap `S_mn` between the basis functions of `m` and `n`.
    fn overlap(&self, m: i64, n: i64) -> f64;

    fn norm_sqr(&self) -> f64 {
        self.terms().iter().map(|(_, c)| c.norm_sqr()).sum()
    }

    fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    fn min_m(&self) -> Option<i64> {
        self.terms().first().map(|&(m, _)| m)
    }

    fn max_m(&self) -> Option<i64> {
        self.terms().last().map(|&(m, _)| m)
    }
}

fn collect_terms<I>(coefficients: I) -> Result<Vec<(i64, Complex64)>>
where
    I: IntoIterator<Item = (i64, Complex64)>,
{
    let mut map = BTreeMap::new();
    for (m, c) in coefficients {
        if !(c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite coefficient for m = {m}")));
        }
        if map.insert(m, c).is_some() {
            return Err(Error::InvalidState(format!("duplicate coefficient for m = {m}")));
        }
    }
    Ok(map.into_iter().collect())
}

fn normalized_terms(terms: &[(i64, Complex64)]) -> Result<Vec<(i64, Complex64)>> {
    let norm = terms.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidState("all coefficients are zero".into()));
    }
    Ok(terms.iter().map(|&(m, c)| (m, c / norm)).collect())
}

/// A 2π-periodic function of the angle alone.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularState {
    terms: Vec<(i64, Complex64)>,
}

impl AngularState {
    /// Builds a state from `(m, c_m)` pairs. Coefficients are stored as given;
    /// call [`normalize`](Self::normalize) before computing expectation values.
    pub fn new<I>(coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        Ok(Self { terms: collect_terms(coefficients)? })
    }

    pub fn eigenstate(m: i64) -> Self {
        Self { terms: vec![(m, Complex64::new(1.0, 0.0))] }
    }

    pub fn normalize(&self) -> Result<Self> {
        Ok(Self { terms: normalized_terms(&self.terms)? })
    }

    /// `ψ(φ)` in the position representation.
    pub fn amplitude(&self, phi: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(m, c)| c * Complex64::cis(m as f64 * phi))
            .sum::<Complex64>()
            / (2.0 * PI).sqrt()
    }
}

impl PeriodicState for AngularState {
    fn basis(&self) -> Basis {
        Basis::Angular
    }

    fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    fn overlap(&self, _m: i64, _n: i64) -> f64 {
        1.0
    }
}

/// A planar state built from lowest-Landau-level orbitals, `m ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauState {
    terms: Vec<(i64, Complex64)>,
}

impl LandauState {
    pub fn new<I>(coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let terms = collect_terms(coefficients)?;
        if let Some(&(m, _)) = terms.iter().find(|(m, _)| *m < 0) {
            return Err(Error::InvalidState(format!(
                "lowest-Landau-level orbitals need m >= 0, got m = {m}"
            )));
        }
        Ok(Self { terms })
    }

    pub fn normalize(&self) -> Result<Self> {
        Ok(Self { terms: normalized_terms(&self.terms)? })
    }

    /// Equal-weight superposition of the given orbitals.
    pub fn equal_weight(ms: &[i64]) -> Result<Self> {
        Self::new(ms.iter().map(|&m| (m, Complex64::new(1.0, 0.0))))?.normalize()
    }
}

impl PeriodicState for LandauState {
    fn basis(&self) -> Basis {
        Basis::LowestLandau
    }

    fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    fn overlap(&self, m: i64, n: i64) -> f64 {
        radial_overlap(m, n).expect("LandauState only holds m >= 0")
    }
}

/// `S_mn = ∫₀^∞ R_m(r) R_n(r) r dr = Γ((m+n)/2 + 1) / √(m! n!)`.
pub fn radial_overlap(m: i64, n: i64) -> Result<f64> {
    if m < 0 || n < 0 {
        return Err(Error::Domain(format!("radial overlap needs m, n >= 0, got ({m}, {n})")));
    }
    if m == n {
        return Ok(1.0);
    }
    let (m, n) = (m as u64, n as u64);
    if m + n < EXACT_LIMIT {
        Ok(gamma_half_plus_one(m + n) / (factorial(m) * factorial(n)).sqrt())
    } else {
        Ok((ln_gamma_half_plus_one(m + n) - 0.5 * (ln_factorial(m) + ln_factorial(n))).exp())
    }
}

/// `I_k(j) = (1/2π) ∫₀^{2π} φ^k e^{ijφ} dφ`.
pub fn angle_kernel(order: Order, j: i64) -> Complex64 {
    let jf = j as f64;
    match (order, j) {
        (Order::First, 0) => Complex64::new(PI, 0.0),
        (Order::First, _) => Complex64::new(0.0, -1.0 / jf),
        (Order::Second, 0) => Complex64::new(4.0 * PI * PI / 3.0, 0.0),
        (Order::Second, _) => Complex64::new(2.0 / (jf * jf), -2.0 * PI / jf),
    }
}

/// `Σ_{m,n} c_m* c_n S_mn w(m, n)`.
fn bilinear<S, W>(state: &S, weight: W) -> Complex64
where
    S: PeriodicState + ?Sized,
    W: Fn(i64, i64) -> Complex64,
{
    let terms = state.terms();
    let mut acc = Complex64::new(0.0, 0.0);
    for &(m, cm) in terms {
        for &(n, cn) in terms {
            acc += cm.conj() * cn * state.overlap(m, n) * weight(m, n);
        }
    }
    acc
}

fn real_part(value: Complex64, what: &str) -> f64 {
    assert!(
        value.im.abs() < IMAG_RESIDUE_TOL,
        "{what} has imaginary residue {:e}",
        value.im
    );
    value.re
}

/// `⟨L_z^k⟩ = Σ_m |c_m|² m^k`, in units of ħ^k.
pub fn lz_moment<S: PeriodicState + ?Sized>(state: &S, order: Order) -> f64 {
    let power = match order {
        Order::First => 1,
        Order::Second => 2,
    };
    state
        .terms()
        .iter()
        .map(|&(m, c)| c.norm_sqr() * (m as f64).powi(power))
        .sum()
}

/// `⟨φ^k⟩` with `φ ∈ [0, 2π)`.
pub fn phi_moment<S: PeriodicState + ?Sized>(state: &S, order: Order) -> f64 {
    let value = bilinear(state, |m, n| angle_kernel(order, n - m));
    real_part(value, "angle moment")
}

/// Probability density at the edge of the angular interval: `|ψ(2π)|²`, or
/// the radial marginal `ρ(2π)` for Landau states.
pub fn boundary_density<S: PeriodicState + ?Sized>(state: &S) -> f64 {
    let value = bilinear(state, |_, _| Complex64::new(1.0, 0.0));
    real_part(value, "boundary density") / (2.0 * PI)
}

/// `⟨φψ | L_z ψ⟩`, evaluated term by term.
pub fn phi_lz_inner<S: PeriodicState + ?Sized>(state: &S) -> Complex64 {
    bilinear(state, |m, n| n as f64 * angle_kernel(Order::First, n - m))
}

/// `⟨L_z ψ | φψ⟩`, evaluated term by term.
pub fn lz_phi_inner<S: PeriodicState + ?Sized>(state: &S) -> Complex64 {
    bilinear(state, |m, n| m as f64 * angle_kernel(Order::First, n - m))
}

/// `|⟨L_zψ|φψ⟩ − ⟨φψ|L_zψ⟩|`, in units of ħ.
///
/// Both inner products are evaluated as written, without moving `L_z` across
/// the bracket, so this is an independent route to `|2π ρ(2π) − 1|`.
pub fn cross_antisym<S: PeriodicState + ?Sized>(state: &S) -> f64 {
    (lz_phi_inner(state) - phi_lz_inner(state)).norm()
}

/// Everything the bounds need from a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean_phi: f64,
    pub mean_phi_sq: f64,
    pub mean_lz: f64,
    pub mean_lz_sq: f64,
    pub boundary_density: f64,
    pub cross_antisym: f64,
    /// `⟨φψ | L_z ψ⟩`
    pub phi_lz: Complex64,
    /// `⟨L_z ψ | φψ⟩`
    pub lz_phi: Complex64,
}

impl MomentSet {
    /// Largest absolute difference over all fields.
    pub fn max_abs_diff(&self, other: &MomentSet) -> f64 {
        [
            self.mean_phi - other.mean_phi,
            self.mean_phi_sq - other.mean_phi_sq,
            self.mean_lz - other.mean_lz,
            self.mean_lz_sq - other.mean_lz_sq,
            self.boundary_density - other.boundary_density,
            self.cross_antisym - other.cross_antisym,
            (self.phi_lz - other.phi_lz).norm(),
            (self.lz_phi - other.lz_phi).norm(),
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
    }
}

/// Closed-form moments of a normalized state.
pub fn moments<S: PeriodicState + ?Sized>(state: &S) -> MomentSet {
    let phi_lz = phi_lz_inner(state);
    let lz_phi = lz_phi_inner(state);
    MomentSet {
        mean_phi: phi_moment(state, Order::First),
        mean_phi_sq: phi_moment(state, Order::Second),
        mean_lz: lz_moment(state, Order::First),
        mean_lz_sq: lz_moment(state, Order::Second),
        boundary_density: boundary_density(state),
        cross_antisym: (lz_phi - phi_lz).norm(),
        phi_lz,
        lz_phi,
    }
}
