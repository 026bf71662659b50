//! Library side of the `philz` command-line tool: state documents, command
//! bodies and exit-code mapping. `main.rs` only parses arguments.

use angular_uncertainty::family::{self, Quantity};
use angular_uncertainty::states::{self, MomentSet};
use angular_uncertainty::{bounds, AngularState, Error, LandauState, Oracle, PeriodicState, QuadratureSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use thiserror::Error;

/// Closed form and quadrature must agree to this for `oracle-check` to pass.
pub const ORACLE_CHECK_TOL: f64 = 1e-8;

pub const UNITS_HEADER: &str = "# units: hbar = 1; angular momenta in hbar, angles in radians";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse state document: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidState(String),
    #[error("{0}")]
    Numerical(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    /// 0 success, 1 check failed, 2 usage/parse, 3 invalid state, 4 numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::InvalidState(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidState(_) => CliError::InvalidState(e.to_string()),
            Error::Domain(_) => CliError::Usage(e.to_string()),
            Error::Csv(_) => CliError::Usage(e.to_string()),
            Error::NumericalInconsistency(_) | Error::OracleConvergence(_) | Error::NonFinite(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Angular,
    Landau,
}

fn default_normalize() -> bool {
    true
}

/// On-disk state description (JSON):
///
/// ```json
/// { "kind": "angular", "coefficients": [[0, 1.0, 0.0], [1, 1.0, 0.0]], "normalize": true }
/// ```
///
/// Each coefficient is `[m, re, im]`. With `normalize: false` the
/// coefficients must already have unit norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub kind: StateKind,
    pub coefficients: Vec<(i64, f64, f64)>,
    #[serde(default = "default_normalize")]
    pub normalize: bool,
}

impl StateDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn into_state(self) -> Result<LoadedState, CliError> {
        let terms = self.coefficients.iter().map(|&(m, re, im)| (m, Complex64::new(re, im)));
        let state = match self.kind {
            StateKind::Angular => {
                let s = AngularState::new(terms)?;
                LoadedState::Angular(if self.normalize { s.normalize()? } else { s })
            }
            StateKind::Landau => {
                let s = LandauState::new(terms)?;
                LoadedState::Landau(if self.normalize { s.normalize()? } else { s })
            }
        };
        if !state.as_state().is_normalized() {
            return Err(CliError::InvalidState(format!(
                "invalid state: coefficients are not normalized (sum |c_m|^2 = {}) and normalize is false",
                state.as_state().norm_sqr()
            )));
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Angular(AngularState),
    Landau(LandauState),
}

impl LoadedState {
    pub fn as_state(&self) -> &dyn PeriodicState {
        match self {
            LoadedState::Angular(s) => s,
            LoadedState::Landau(s) => s,
        }
    }

    pub fn kind(&self) -> StateKind {
        match self {
            LoadedState::Angular(_) => StateKind::Angular,
            LoadedState::Landau(_) => StateKind::Landau,
        }
    }
}

pub fn load_state(path: &Path) -> Result<LoadedState, CliError> {
    StateDocument::load(path)?.into_state()
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    kind: StateKind,
    #[serde(flatten)]
    report: &'a bounds::UncertaintyReport,
}

/// `report`: the uncertainty report as TOML, preceded by a units line.
pub fn report_text(state: &LoadedState) -> Result<String, CliError> {
    let report = bounds::report(state.as_state())?;
    let body = toml::to_string(&ReportDocument { kind: state.kind(), report: &report })
        .map_err(|e| CliError::Numerical(format!("cannot serialize report: {e}")))?;
    Ok(format!("{UNITS_HEADER}\n{body}"))
}

/// `sweep`: CSV rows for the two-state family.
pub fn write_sweep<W: Write>(a_min: f64, a_max: f64, n: usize, out: W) -> Result<(), CliError> {
    let points = family::sweep(a_min, a_max, n)?;
    family::write_csv(&points, out)?;
    Ok(())
}

pub fn parse_quantity(name: &str) -> Result<Quantity, CliError> {
    name.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

/// `crossings`: one root per line, six decimals.
pub fn crossings_text(quantity: Quantity, target: f64, grid: usize) -> Result<String, CliError> {
    let set = family::find_crossings(quantity, target, grid)?;
    let mut out = String::new();
    for root in &set.roots {
        writeln!(out, "{root:.6}").expect("writing to a String");
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub max_discrepancy: f64,
    pub angular_nodes: usize,
}

impl OracleCheck {
    pub fn passed(&self) -> bool {
        self.max_discrepancy < ORACLE_CHECK_TOL
    }

    pub fn summary(&self) -> String {
        format!(
            "{UNITS_HEADER}\nangular_nodes = {}\nmax_discrepancy = {:e}\ntolerance = {:e}\nresult = {}\n",
            self.angular_nodes,
            self.max_discrepancy,
            ORACLE_CHECK_TOL,
            if self.passed() { "pass" } else { "fail" }
        )
    }
}

/// Compares a closed-form moment set against quadrature.
pub fn compare_moments(closed: &MomentSet, quadrature: &MomentSet, angular_nodes: usize) -> OracleCheck {
    OracleCheck { max_discrepancy: closed.max_abs_diff(quadrature), angular_nodes }
}

/// `oracle-check`. `corrupt` shifts the closed-form `⟨φ⟩` before the
/// comparison, which lets tests exercise the failure path end to end.
pub fn oracle_check(state: &LoadedState, angular_nodes: usize, corrupt: Option<f64>) -> Result<OracleCheck, CliError> {
    let spec = QuadratureSpec { angular_nodes, ..QuadratureSpec::default() };
    let oracle = Oracle::new(spec)?;
    let quadrature = oracle.moments(state.as_state())?;
    let mut closed = states::moments(state.as_state());
    if let Some(delta) = corrupt {
        closed.mean_phi += delta;
    }
    Ok(compare_moments(&closed, &quadrature, angular_nodes))
}
