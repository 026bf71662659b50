//! Quadrature cross-check for every closed form in [`crate::states`].
//!
//! The oracle evaluates the wavefunction on Gauss-Legendre nodes and
//! integrates moments directly. It never touches the angular kernels or the
//! Γ-function overlaps; `L_z` acts analytically on each `e^{imφ}` (factor
//! `m`), so no numerical differentiation enters either.
//!
//! Every result is computed twice, once on the configured node counts and
//! once on twice as many, and the two must agree to `abs_tol`.

use crate::error::{Error, Result};
use crate::special::ln_factorial;
use crate::states::{Basis, MomentSet, PeriodicState};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Node counts and tolerances for the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes on `[0, 2π]`.
    pub angular_nodes: usize,
    /// Gauss-Legendre nodes on `[0, radial_cutoff]`.
    pub radial_nodes: usize,
    /// Upper radial limit in magnetic lengths. Raised automatically when the
    /// state holds orbitals whose tail would reach past it.
    pub radial_cutoff: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { angular_nodes: 128, radial_nodes: 128, radial_cutoff: 16.0, abs_tol: 1e-10 }
    }
}

impl QuadratureSpec {
    pub const MIN_NODES: usize = 16;

    pub fn validate(&self) -> Result<()> {
        if self.angular_nodes < Self::MIN_NODES || self.radial_nodes < Self::MIN_NODES {
            return Err(Error::Domain(format!(
                "need at least {} quadrature nodes, got {} angular / {} radial",
                Self::MIN_NODES,
                self.angular_nodes,
                self.radial_nodes
            )));
        }
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(Error::Domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.radial_cutoff > 0.0 && self.radial_cutoff.is_finite()) {
            return Err(Error::Domain(format!(
                "radial_cutoff must be positive, got {}",
                self.radial_cutoff
            )));
        }
        Ok(())
    }
}

/// Gauss-Legendre rule on `[−1, 1]`, nodes ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `(x, w)` pairs mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn check_finite(x: f64, value: Complex64) -> Result<()> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(x))
    }
}

fn angular_sum<F>(rule: &GaussLegendre, f: F) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.mapped(0.0, 2.0 * PI) {
        let v = f(x);
        check_finite(x, v)?;
        acc += w * v;
    }
    Ok(acc)
}

fn radial_sum<F>(rule: &GaussLegendre, cutoff: f64, f: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for (r, w) in rule.mapped(0.0, cutoff) {
        let v = f(r);
        check_finite(r, Complex64::new(v, 0.0))?;
        acc += w * v;
    }
    Ok(acc)
}

/// Normalized lowest-Landau-level radial function
/// `R_m(r) = r^m e^{−r²/4} / √(2^m m!)`.
pub fn landau_radial(m: u64, r: f64) -> f64 {
    if r == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let mf = m as f64;
    let ln = mf * r.ln() - 0.25 * r * r - 0.5 * (mf * std::f64::consts::LN_2 + ln_factorial(m));
    ln.exp()
}

/// Radial cutoff that leaves a negligible tail for orbitals up to `m_max`.
///
/// `R_m² r dr` is a Gamma(m+1) density in `u = r²/2`.
fn radial_cutoff_for(m_max: u64, requested: f64) -> f64 {
    let shape = m_max as f64 + 1.0;
    let u = shape + 10.0 * shape.sqrt() + 40.0;
    requested.max((2.0 * u).sqrt())
}

/// Node tables for one [`QuadratureSpec`], built once and reused.
#[derive(Debug, Clone)]
pub struct Oracle {
    spec: QuadratureSpec,
    angular: GaussLegendre,
    angular_fine: GaussLegendre,
    radial: GaussLegendre,
    radial_fine: GaussLegendre,
}

impl Oracle {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            spec,
            angular: GaussLegendre::new(spec.angular_nodes),
            angular_fine: GaussLegendre::new(2 * spec.angular_nodes),
            radial: GaussLegendre::new(spec.radial_nodes),
            radial_fine: GaussLegendre::new(2 * spec.radial_nodes),
        })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    fn converged<T, D>(&self, what: &str, coarse: T, fine: T, diff: D) -> Result<T>
    where
        D: Fn(&T, &T) -> f64,
    {
        let delta = diff(&coarse, &fine);
        if delta < self.spec.abs_tol {
            Ok(fine)
        } else {
            Err(Error::OracleConvergence(format!(
                "{what}: doubling the nodes changed the result by {delta:e} (tolerance {:e})",
                self.spec.abs_tol
            )))
        }
    }

    /// `∫₀^{2π} f(φ) dφ`.
    pub fn integrate_angular<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let coarse = angular_sum(&self.angular, &f)?;
        let fine = angular_sum(&self.angular_fine, &f)?;
        self.converged("angular integral", coarse, fine, |a, b| (a - b).norm())
    }

    /// `∫₀^∞ f(r) dr`, truncated at the configured cutoff. The integrand is
    /// expected to decay like a Gaussian times a polynomial.
    pub fn integrate_radial<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let cutoff = self.spec.radial_cutoff;
        let coarse = radial_sum(&self.radial, cutoff, &f)?;
        let fine = radial_sum(&self.radial_fine, cutoff, &f)?;
        self.converged("radial integral", coarse, fine, |a, b| (a - b).abs())
    }

    /// All moments of a normalized state, by quadrature.
    pub fn moments<S: PeriodicState + ?Sized>(&self, state: &S) -> Result<MomentSet> {
        let coarse = self.moments_on(state, &self.angular, &self.radial)?;
        let fine = self.moments_on(state, &self.angular_fine, &self.radial_fine)?;
        self.converged("moments", coarse, fine, MomentSet::max_abs_diff)
    }

    fn moments_on<S: PeriodicState + ?Sized>(
        &self,
        state: &S,
        angular: &GaussLegendre,
        radial: &GaussLegendre,
    ) -> Result<MomentSet> {
        let terms = state.terms();
        let gram = match state.basis() {
            Basis::Angular => None,
            Basis::LowestLandau => Some(self.radial_gram(state, radial)?),
        };
        let norm = 1.0 / (2.0 * PI).sqrt();

        // Radially integrated bilinear form Σ conj(a_m) a_n G_mn w(m, n) with
        // a_m = c_m e^{imφ}/√(2π). For purely angular states the form
        // factorizes and we evaluate ψ and L_zψ pointwise instead.
        let densities = |phi: f64| -> (f64, Complex64, f64) {
            let amps: Vec<(f64, Complex64)> = terms
                .iter()
                .map(|&(m, c)| (m as f64, c * Complex64::cis(m as f64 * phi) * norm))
                .collect();
            match &gram {
                None => {
                    let psi: Complex64 = amps.iter().map(|(_, a)| a).sum();
                    let lz_psi: Complex64 = amps.iter().map(|(m, a)| a * m).sum();
                    (psi.norm_sqr(), psi.conj() * lz_psi, lz_psi.norm_sqr())
                }
                Some(g) => {
                    let mut rho = Complex64::new(0.0, 0.0);
                    let mut psi_lz = Complex64::new(0.0, 0.0);
                    let mut lz_sq = Complex64::new(0.0, 0.0);
                    for (i, (mi, ai)) in amps.iter().enumerate() {
                        for (j, (mj, aj)) in amps.iter().enumerate() {
                            let v = ai.conj() * aj * g[i][j];
                            rho += v;
                            psi_lz += v * mj;
                            lz_sq += v * (mi * mj);
                        }
                    }
                    (rho.re, psi_lz, lz_sq.re)
                }
            }
        };

        let mut mean_phi = 0.0;
        let mut mean_phi_sq = 0.0;
        let mut mean_lz = Complex64::new(0.0, 0.0);
        let mut mean_lz_sq = 0.0;
        let mut phi_lz = Complex64::new(0.0, 0.0);
        let mut lz_phi = Complex64::new(0.0, 0.0);
        for (phi, w) in angular.mapped(0.0, 2.0 * PI) {
            let (rho, psi_lz, lz_sq) = densities(phi);
            check_finite(phi, psi_lz + rho + lz_sq)?;
            mean_phi += w * phi * rho;
            mean_phi_sq += w * phi * phi * rho;
            mean_lz += w * psi_lz;
            mean_lz_sq += w * lz_sq;
            phi_lz += w * phi * psi_lz;
            // (L_zψ)* φ ψ is the pointwise conjugate of ψ* φ L_zψ.
            lz_phi += w * phi * psi_lz.conj();
        }

        let (boundary_density, _, _) = densities(2.0 * PI);
        Ok(MomentSet {
            mean_phi,
            mean_phi_sq,
            mean_lz: mean_lz.re,
            mean_lz_sq,
            boundary_density,
            cross_antisym: (lz_phi - phi_lz).norm(),
            phi_lz,
            lz_phi,
        })
    }

    /// `G_mn = ∫ R_m R_n r dr` by radial quadrature.
    fn radial_gram<S: PeriodicState + ?Sized>(
        &self,
        state: &S,
        rule: &GaussLegendre,
    ) -> Result<Vec<Vec<f64>>> {
        let ms: Vec<u64> = state.terms().iter().map(|&(m, _)| m as u64).collect();
        let cutoff = radial_cutoff_for(ms.iter().copied().max().unwrap_or(0), self.spec.radial_cutoff);
        let mut gram = vec![vec![0.0; ms.len()]; ms.len()];
        for i in 0..ms.len() {
            for j in i..ms.len() {
                let (m, n) = (ms[i], ms[j]);
                let v = radial_sum(rule, cutoff, |r| landau_radial(m, r) * landau_radial(n, r) * r)?;
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        Ok(gram)
    }
}

/// One-shot angular integral with a fresh [`Oracle`].
pub fn integrate_angular<F>(f: F, spec: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    Oracle::new(*spec)?.integrate_angular(f)
}

/// One-shot radial integral with a fresh [`Oracle`].
pub fn integrate_radial<F>(f: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    Oracle::new(*spec)?.integrate_radial(f)
}

/// Quadrature moments with the default spec.
pub fn oracle_moments<S: PeriodicState + ?Sized>(state: &S) -> Result<MomentSet> {
    Oracle::new(QuadratureSpec::default())?.moments(state)
}
