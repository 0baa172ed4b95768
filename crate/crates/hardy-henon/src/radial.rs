//! Radial shooting for `u'' + ((n-1)/r) u' + r^sigma u^p = 0` with `n >= 2`:
//! single shots with fate classification, monotonicity diagnostics, and
//! non-existence scans that try to falsify the atlas's NO cells.

use crate::atlas::{classify, ProblemParams};
use crate::exec;
use crate::lienard::{crossing_spec_for_power, ESCAPE_THRESHOLD};
use crate::numerics::{integrate_ivp, Event, EventSpec, IvpError, State, Trajectory};
use serde::{Deserialize, Serialize};

/// Launch radius as a fraction of the shot range; integration never starts
/// at the (possibly singular) origin.
pub const LAUNCH_FRACTION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum RadialError {
    /// Shooting needs `n >= 2` (the one-dimensional problem has its own
    /// machinery).
    DimensionTooLow { n: u32 },
    /// Initial value must be positive.
    NonPositiveCenter { u0: f64 },
    /// Scans only make sense where the atlas says no solution exists.
    ExistenceRegime,
    Integration(String),
}

impl std::fmt::Display for RadialError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadialError::DimensionTooLow { n } => write!(f, "radial shooting needs n >= 2, got {n}"),
            RadialError::NonPositiveCenter { u0 } => write!(f, "u0 must be positive, got {u0}"),
            RadialError::ExistenceRegime => {
                write!(f, "scan rejected: the atlas reports an existence regime")
            }
            RadialError::Integration(msg) => write!(f, "integration failed: {msg}"),
        }
    }
}

impl std::error::Error for RadialError {}

/// How a shot ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Fate {
    /// `u` reached zero at finite radius.
    CrossedZero { r_star: f64 },
    /// Positive all the way to `r_max`.
    Positive { r_max: f64, min_value: f64 },
    /// Derivative blow-up with the solution heading down.
    BlewUpNegative { r_star: f64 },
}

impl Fate {
    pub fn label(&self) -> &'static str {
        match self {
            Fate::CrossedZero { .. } => "crossed_zero",
            Fate::Positive { .. } => "positive",
            Fate::BlewUpNegative { .. } => "blew_up_negative",
        }
    }

    pub fn r_star(&self) -> Option<f64> {
        match *self {
            Fate::CrossedZero { r_star } | Fate::BlewUpNegative { r_star } => Some(r_star),
            Fate::Positive { .. } => None,
        }
    }
}

/// One radial shot: initial data, integrated path, and its fate.
#[derive(Debug, Clone, Serialize)]
pub struct ShotOutcome {
    pub params: ProblemParams,
    pub initial: (f64, f64),
    pub trajectory: Trajectory,
    pub fate: Fate,
}

/// Integrate a single radial shot from `r0 = 1e-6 * r_max`. With
/// `slope0 = 0` and a regular origin (`2 + sigma > 0`, `n + sigma > 0`) the
/// state is seeded by the regular expansion
/// `u = u0 - u0^p r^{2+sigma} / ((2+sigma)(n+sigma)) + ...`; otherwise the
/// raw `(u0, slope0)` is imposed at `r0`.
pub fn shoot(
    params: &ProblemParams,
    u0: f64,
    slope0: f64,
    r_max: f64,
    tol: f64,
) -> Result<ShotOutcome, RadialError> {
    if params.n < 2 {
        return Err(RadialError::DimensionTooLow { n: params.n });
    }
    if u0 <= 0.0 || !u0.is_finite() || !slope0.is_finite() {
        return Err(RadialError::NonPositiveCenter { u0 });
    }
    let (n, p, sigma) = (params.n as f64, params.p, params.sigma);
    let r0 = LAUNCH_FRACTION * r_max;

    let regular = slope0 == 0.0 && 2.0 + sigma > 0.0 && n + sigma > 0.0;
    let y0 = if regular {
        let c = u0.powf(p) / (n + sigma);
        [
            u0 - c * r0.powf(2.0 + sigma) / (2.0 + sigma),
            -c * r0.powf(1.0 + sigma),
        ]
    } else {
        [u0, slope0]
    };

    let field = move |r: f64, y: State| {
        [
            y[1],
            -(n - 1.0) / r * y[1] - r.powf(sigma) * y[0].powf(p),
        ]
    };
    let events = EventSpec::none()
        .with_zero_crossing(crossing_spec_for_power(p, u0))
        .with_escape(ESCAPE_THRESHOLD);

    let (trajectory, fate) = match integrate_ivp(field, y0, (r0, r_max), tol, &events) {
        Ok(traj) => {
            let fate = match traj.termination {
                Event::ZeroCrossing { location } => Fate::CrossedZero { r_star: location },
                Event::Escape { location, .. } => Fate::BlewUpNegative { r_star: location },
                _ => {
                    let min_value = traj
                        .samples
                        .iter()
                        .map(|&(_, y)| y[0])
                        .fold(f64::INFINITY, f64::min);
                    Fate::Positive { r_max, min_value }
                }
            };
            (traj, fate)
        }
        Err(IvpError::StepSizeUnderflow {
            t,
            state,
            samples,
            derivs,
        }) => {
            // Stiff collapse near a zero touch: treat the blow-back as the
            // crossing it certifies.
            let fate = if state[1] < 0.0 {
                Fate::CrossedZero { r_star: t }
            } else {
                Fate::BlewUpNegative { r_star: t }
            };
            let trajectory = Trajectory {
                samples,
                derivs,
                termination: Event::Escape {
                    threshold: ESCAPE_THRESHOLD,
                    location: t,
                },
                tolerance_used: tol,
            };
            (trajectory, fate)
        }
        Err(e) => return Err(RadialError::Integration(e.to_string())),
    };

    Ok(ShotOutcome {
        params: *params,
        initial: (u0, slope0),
        trajectory,
        fate,
    })
}

/// Pointwise monotonicity diagnostics on a positive shot: `u` non-increasing,
/// `r^{n-1} u'` non-increasing and non-positive, `u(r) <= u0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub u_nonincreasing: bool,
    pub weighted_slope_nonincreasing: bool,
    pub weighted_slope_nonpositive: bool,
    pub bounded_by_center: bool,
}

impl DiagnosticsReport {
    pub fn all_hold(&self) -> bool {
        self.u_nonincreasing
            && self.weighted_slope_nonincreasing
            && self.weighted_slope_nonpositive
            && self.bounded_by_center
    }
}

const DIAG_TOL: f64 = 1e-9;

/// Check the monotonicity facts that any positive radial solution satisfies,
/// on the positive segment of the shot.
pub fn monotone_diagnostics(outcome: &ShotOutcome) -> DiagnosticsReport {
    let n = outcome.params.n as f64;
    let u0 = outcome.initial.0;
    let mut report = DiagnosticsReport {
        u_nonincreasing: true,
        weighted_slope_nonincreasing: true,
        weighted_slope_nonpositive: true,
        bounded_by_center: true,
    };
    let mut prev_u = f64::INFINITY;
    let mut prev_w = f64::INFINITY;
    for &(r, y) in &outcome.trajectory.samples {
        if y[0] <= 0.0 {
            break;
        }
        let w = r.powf(n - 1.0) * y[1];
        if y[0] > prev_u + DIAG_TOL {
            report.u_nonincreasing = false;
        }
        if w > prev_w + DIAG_TOL {
            report.weighted_slope_nonincreasing = false;
        }
        if w > DIAG_TOL {
            report.weighted_slope_nonpositive = false;
        }
        if y[0] > u0 + DIAG_TOL {
            report.bounded_by_center = false;
        }
        prev_u = y[0];
        prev_w = w;
    }
    report
}

/// One row of a scan report: flat shape for the exported JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShotRecord {
    pub u0: f64,
    pub slope0: f64,
    pub fate: String,
    #[serde(rename = "r*")]
    pub r_star: Option<f64>,
}

/// Scan outcome: every shot's fate; any shot positive to `r_max` is a
/// red-alert finding carrying its full trajectory, never silently passed.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub params: ProblemParams,
    pub r_max: f64,
    pub shots: Vec<ShotRecord>,
    pub red_alerts: Vec<ShotOutcome>,
    pub errors: Vec<(usize, String)>,
}

impl ScanReport {
    pub fn clean(&self) -> bool {
        self.red_alerts.is_empty() && self.errors.is_empty()
    }
}

/// Log-spaced default shot grid used by the verification suites.
pub fn default_shot_grid() -> Vec<(f64, f64)> {
    crate::numerics::log_grid(0.1, 10.0, 25)
        .into_iter()
        .map(|u0| (u0, 0.0))
        .collect()
}

/// The default CI scan set: six non-existence cells spanning the negative,
/// zero, sub-unit, and subcritical power ranges in both dimensions probed.
pub fn ci_scan_cells() -> Vec<ProblemParams> {
    [
        (3u32, 3.0f64, 0.0f64),
        (2, -1.0, 1.0),
        (2, 0.5, -1.0),
        (3, 0.0, -3.0),
        (2, 0.0, -3.0),
        (3, -1.0, 2.0),
    ]
    .into_iter()
    .map(|(n, p, sigma)| {
        ProblemParams::new(n, p, sigma, crate::atlas::Domain::FullSpace)
            .expect("cells are valid full-space parameters")
    })
    .collect()
}

/// Fire every shot in the grid at a non-existence cell and collect fates.
/// Rejects parameter sets the atlas classifies as existence regimes.
pub fn nonexistence_scan(
    params: &ProblemParams,
    grid: &[(f64, f64)],
    r_max: f64,
    tol: f64,
) -> Result<ScanReport, RadialError> {
    if params.n < 2 {
        return Err(RadialError::DimensionTooLow { n: params.n });
    }
    if classify(params).exists {
        return Err(RadialError::ExistenceRegime);
    }
    let results = exec::map_collect(grid, |&(u0, slope0)| shoot(params, u0, slope0, r_max, tol));
    let mut shots = Vec::with_capacity(grid.len());
    let mut red_alerts = Vec::new();
    let mut errors = Vec::new();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok(outcome) => {
                shots.push(ShotRecord {
                    u0: outcome.initial.0,
                    slope0: outcome.initial.1,
                    fate: outcome.fate.label().to_string(),
                    r_star: outcome.fate.r_star(),
                });
                if matches!(outcome.fate, Fate::Positive { .. }) {
                    red_alerts.push(outcome);
                }
            }
            Err(e) => errors.push((i, e.to_string())),
        }
    }
    Ok(ScanReport {
        params: *params,
        r_max,
        shots,
        red_alerts,
        errors,
    })
}
