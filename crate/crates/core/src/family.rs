//! The two-state family `ψ(a, φ) = (a + √(1−a²) e^{iφ}) / √(2π)`, `a ∈ [−1, 1]`.
//!
//! Closed forms:
//!
//! ```text
//! R(a) = ΔL_z = |a| √(1−a²)
//! Δφ        = √(π²/3 + 4a√(1−a²))
//! ```
//!
//! `a = ±1/√2` gives the equal-weight superposition of `m = 0` and `m = 1`,
//! the only members for which the boundary-term bound equals ½.

use crate::bounds::{rms_deviation, Observable};
use crate::error::{Error, Result};
use crate::states::{self, AngularState};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 10_000;
pub const MIN_GRID: usize = 100;

fn check_parameter(a: f64) -> Result<()> {
    if a.is_finite() && a.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("family parameter must lie in [-1, 1], got {a}")))
    }
}

/// `√(1 − a²)`, clamped against rounding for `|a| → 1`.
fn complement(a: f64) -> f64 {
    (1.0 - a * a).max(0.0).sqrt()
}

pub fn family_state(a: f64) -> Result<AngularState> {
    check_parameter(a)?;
    AngularState::new([(0, Complex64::new(a, 0.0)), (1, Complex64::new(complement(a), 0.0))])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    pub r_of_a: f64,
    pub delta_lz: f64,
    pub delta_phi: f64,
}

pub fn closed_forms(a: f64) -> Result<ClosedForms> {
    check_parameter(a)?;
    let b = complement(a);
    let r_of_a = a.abs() * b;
    Ok(ClosedForms {
        r_of_a,
        delta_lz: r_of_a,
        delta_phi: (PI * PI / 3.0 + 4.0 * a * b).sqrt(),
    })
}

/// One row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyPoint {
    pub a: f64,
    pub r_of_a: f64,
    pub delta_lz: f64,
    pub delta_lz_engine: f64,
    pub delta_phi_closed: f64,
    pub delta_phi_engine: f64,
    /// `Δφ ΔL_z` from the closed forms.
    pub product: f64,
    pub pi_delta_lz: f64,
}

impl FamilyPoint {
    pub fn at(a: f64) -> Result<Self> {
        let closed = closed_forms(a)?;
        let moments = states::moments(&family_state(a)?);
        Ok(Self {
            a,
            r_of_a: closed.r_of_a,
            delta_lz: closed.delta_lz,
            delta_lz_engine: rms_deviation(&moments, Observable::Lz)?,
            delta_phi_closed: closed.delta_phi,
            delta_phi_engine: rms_deviation(&moments, Observable::Phi)?,
            product: closed.delta_phi * closed.delta_lz,
            pi_delta_lz: PI * closed.delta_lz,
        })
    }

    /// Largest disagreement between the closed forms and the engine.
    pub fn engine_discrepancy(&self) -> f64 {
        (self.delta_lz - self.delta_lz_engine)
            .abs()
            .max((self.delta_phi_closed - self.delta_phi_engine).abs())
    }
}

/// `n` evenly spaced values on `[lo, hi]`, endpoints included.
fn grid(lo: f64, hi: f64, n: usize) -> impl IndexedParallelIterator<Item = f64> {
    let last = (n - 1) as f64;
    (0..n).into_par_iter().map(move |i| {
        if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / last
        }
    })
}

/// Evaluates the family on a uniform grid. Rows come back in grid order.
pub fn sweep(a_min: f64, a_max: f64, n_points: usize) -> Result<Vec<FamilyPoint>> {
    check_parameter(a_min)?;
    check_parameter(a_max)?;
    if a_min >= a_max {
        return Err(Error::Domain(format!("empty sweep range [{a_min}, {a_max}]")));
    }
    if n_points < 2 {
        return Err(Error::Domain(format!("a sweep needs at least 2 points, got {n_points}")));
    }
    grid(a_min, a_max, n_points).map(FamilyPoint::at).collect()
}

/// Quantity whose crossings with a target are searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `Δφ ΔL_z`
    Product,
    /// `π ΔL_z`
    PiDeltaLz,
}

impl Quantity {
    pub fn eval(self, a: f64) -> Result<f64> {
        let c = closed_forms(a)?;
        Ok(match self {
            Quantity::Product => c.delta_phi * c.delta_lz,
            Quantity::PiDeltaLz => PI * c.delta_lz,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Product => "product",
            Quantity::PiDeltaLz => "pi-dlz",
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(Quantity::Product),
            "pi-dlz" | "pi_delta_lz" => Ok(Quantity::PiDeltaLz),
            other => Err(Error::Domain(format!(
                "unknown quantity '{other}', expected 'product' or 'pi-dlz'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingSet {
    pub target: f64,
    /// Ascending.
    pub roots: Vec<f64>,
    /// Spacing of the scan grid.
    pub bracket_width: f64,
}

/// Bisection on a bracket with a sign change.
fn bisect<F>(f: F, mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// All `a ∈ [−1, 1]` where `quantity(a) = target`.
///
/// Scans `n_grid` uniform points for sign changes and bisects each bracket.
/// Tangential touches without a sign change are not reported.
pub fn find_crossings(quantity: Quantity, target: f64, n_grid: usize) -> Result<CrossingSet> {
    if n_grid < MIN_GRID {
        return Err(Error::Domain(format!("crossing scan needs at least {MIN_GRID} points, got {n_grid}")));
    }
    let f = |a: f64| quantity.eval(a).map(|v| v - target);
    let xs: Vec<f64> = grid(-1.0, 1.0, n_grid).collect();
    let values = xs.iter().map(|&a| f(a)).collect::<Result<Vec<f64>>>()?;

    let mut roots = Vec::new();
    for i in 0..n_grid - 1 {
        let (f0, f1) = (values[i], values[i + 1]);
        if f0 == 0.0 {
            roots.push(xs[i]);
        } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            roots.push(bisect(f, xs[i], xs[i + 1], f0, ROOT_TOL)?);
        }
    }
    if values[n_grid - 1] == 0.0 {
        roots.push(xs[n_grid - 1]);
    }
    Ok(CrossingSet { target, roots, bracket_width: 2.0 / (n_grid - 1) as f64 })
}

/// Formats `x` with `digits` significant digits, fixed notation for moderate
/// magnitudes and scientific otherwise. Locale independent.
pub fn format_significant(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp) as usize;
        format!("{:.*}", decimals, x)
    } else {
        sci
    }
}

pub const CSV_HEADER: [&str; 7] =
    ["a", "delta_phi_closed", "delta_phi_engine", "delta_lz", "r_of_a", "product", "pi_delta_lz"];
pub const CSV_DIGITS: usize = 12;

/// Writes sweep rows as CSV with a header and 12 significant digits.
pub fn write_csv<W: Write>(points: &[FamilyPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in points {
        let row = [p.a, p.delta_phi_closed, p.delta_phi_engine, p.delta_lz, p.r_of_a, p.product, p.pi_delta_lz];
        w.write_record(row.iter().map(|&v| format_significant(v, CSV_DIGITS)))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
