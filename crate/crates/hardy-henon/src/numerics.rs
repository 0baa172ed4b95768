//! Shared numerical kernel: adaptive initial-value integration with event
//! detection, stable quadratic root solving, and a contraction-mapping
//! fixed-point harness on uniform grids.
//!
//! The integrator is an embedded Dormand–Prince 4(5) pair with proportional
//! step control and a fourth-order dense output used for event refinement.
//! State vectors are fixed at length 2 — every equation in this crate is a
//! second-order scalar ODE written as a first-order pair.

use serde::{Deserialize, Serialize};

/// Two-component state vector, e.g. `(u, u')` or `(V, Vdot)`.
pub type State = [f64; 2];

const STAGES: usize = 7;

// Dormand-Prince 5(4) tableau.
const C: [f64; STAGES] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; STAGES] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th-order weights are row 7 of A (FSAL); these are the 4th-order weights.
const B4: [f64; STAGES] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
// Dense-output polynomial extra weights (Hairer's DOPRI5 contd5 coefficients).
const D: [f64; STAGES] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

const MAX_STEPS: usize = 20_000_000;
const EVENT_BISECT_MAX: usize = 60;
const EQUILIBRIUM_STREAK: usize = 5;

/// Terminal record for an integrated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Event {
    /// The watched component crossed its trigger level; `location` is the
    /// refined abscissa of the crossing.
    ZeroCrossing { location: f64 },
    /// The max-norm of the state passed `threshold`.
    Escape { threshold: f64, location: f64 },
    /// The state stayed within the declared tolerance of a named equilibrium
    /// for several consecutive accepted steps while approaching it.
    ConvergedToEquilibrium { label: String, residual: f64 },
    /// Integration ran to the end of the requested span.
    ReachedSpanEnd,
}

/// Sampled solution path with its termination record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Accepted samples `(t, y)`, abscissae strictly monotone in the
    /// direction of integration.
    pub samples: Vec<(f64, State)>,
    /// Field values at each sample; used for dense interpolation.
    pub derivs: Vec<State>,
    pub termination: Event,
    pub tolerance_used: f64,
}

impl Trajectory {
    pub fn start(&self) -> (f64, State) {
        self.samples[0]
    }

    pub fn end(&self) -> (f64, State) {
        *self.samples.last().expect("trajectory has samples")
    }

    pub fn span(&self) -> (f64, f64) {
        (self.samples[0].0, self.end().0)
    }

    fn bracket(&self, t: f64) -> Option<usize> {
        if self.samples.len() < 2 {
            return None;
        }
        let increasing = self.samples[1].0 > self.samples[0].0;
        let inside = |lo: f64, hi: f64| {
            if increasing {
                lo <= t && t <= hi
            } else {
                hi <= t && t <= lo
            }
        };
        if !inside(self.samples[0].0, self.end().0) {
            return None;
        }
        // Binary search for the bracketing interval.
        let (mut lo, mut hi) = (0usize, self.samples.len() - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if inside(self.samples[lo].0, self.samples[mid].0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(lo)
    }

    /// Cubic-Hermite interpolation of the state at `t` (per component, using
    /// the stored field values as slopes). `None` outside the span.
    pub fn interpolate(&self, t: f64) -> Option<State> {
        let i = self.bracket(t)?;
        let (t0, y0) = self.samples[i];
        let (t1, y1) = self.samples[i + 1];
        let (f0, f1) = (self.derivs[i], self.derivs[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let mut out = [0.0; 2];
        for c in 0..2 {
            out[c] = hermite(s, y0[c], y1[c], h * f0[c], h * f1[c]);
        }
        Some(out)
    }

    /// Derivative of the Hermite interpolant at `t`; component 1 of the
    /// result is a dense-output estimate of the second derivative.
    pub fn interpolate_deriv(&self, t: f64) -> Option<State> {
        let i = self.bracket(t)?;
        let (t0, y0) = self.samples[i];
        let (t1, y1) = self.samples[i + 1];
        let (f0, f1) = (self.derivs[i], self.derivs[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let mut out = [0.0; 2];
        for c in 0..2 {
            out[c] = hermite_deriv(s, y0[c], y1[c], h * f0[c], h * f1[c]) / h;
        }
        Some(out)
    }
}

fn hermite(s: f64, y0: f64, y1: f64, m0: f64, m1: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * m0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * m1
}

fn hermite_deriv(s: f64, y0: f64, y1: f64, m0: f64, m1: f64) -> f64 {
    let s2 = s * s;
    (6.0 * s2 - 6.0 * s) * y0
        + (3.0 * s2 - 4.0 * s + 1.0) * m0
        + (-6.0 * s2 + 6.0 * s) * y1
        + (3.0 * s2 - 2.0 * s) * m1
}

/// Zero-crossing trigger on one state component.
#[derive(Debug, Clone, Copy)]
pub struct ZeroCrossingSpec {
    pub component: usize,
    /// Trigger level. A small positive floor stands in for zero when the
    /// field is singular at the axis (negative or fractional powers).
    pub level: f64,
    /// Slope-extrapolation factor applied when `level != 0`: the reported
    /// location is `t* + dir * factor * y/|y'|`, the leading-order distance
    /// from the floor to the true zero.
    pub extrapolate_factor: f64,
}

impl ZeroCrossingSpec {
    pub fn plain(component: usize) -> Self {
        ZeroCrossingSpec {
            component,
            level: 0.0,
            extrapolate_factor: 1.0,
        }
    }

    pub fn floored(component: usize, level: f64, extrapolate_factor: f64) -> Self {
        ZeroCrossingSpec {
            component,
            level,
            extrapolate_factor,
        }
    }
}

/// Equilibrium-convergence trigger.
#[derive(Debug, Clone)]
pub struct EquilibriumSpec {
    pub label: String,
    pub point: State,
    /// Convergence tolerance declared at call time; the reported residual is
    /// guaranteed to be at most this value.
    pub tol: f64,
}

/// Event specification for [`integrate_ivp`]. An empty spec integrates to the
/// span end.
#[derive(Debug, Clone, Default)]
pub struct EventSpec {
    pub zero_crossing: Option<ZeroCrossingSpec>,
    pub escape_threshold: Option<f64>,
    pub equilibria: Vec<EquilibriumSpec>,
}

impl EventSpec {
    pub fn none() -> Self {
        EventSpec::default()
    }

    pub fn with_zero_crossing(mut self, spec: ZeroCrossingSpec) -> Self {
        self.zero_crossing = Some(spec);
        self
    }

    pub fn with_escape(mut self, threshold: f64) -> Self {
        self.escape_threshold = Some(threshold);
        self
    }

    pub fn with_equilibrium(mut self, label: &str, point: State, tol: f64) -> Self {
        self.equilibria.push(EquilibriumSpec {
            label: label.to_string(),
            point,
            tol,
        });
        self
    }
}

#[derive(Clone)]
pub enum IvpError {
    /// The field evaluated to NaN/inf at the initial state.
    NonFiniteField { t: f64 },
    /// Step size collapsed without the state having escaped; carries the
    /// partial path so callers can interpret the blow-up.
    StepSizeUnderflow {
        t: f64,
        state: State,
        samples: Vec<(f64, State)>,
        derivs: Vec<State>,
    },
    InvalidInput(&'static str),
    MaxStepsExceeded { t: f64 },
}

impl std::fmt::Debug for IvpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IvpError::NonFiniteField { t } => write!(f, "NonFiniteField {{ t: {t} }}"),
            IvpError::StepSizeUnderflow { t, state, samples, .. } => write!(
                f,
                "StepSizeUnderflow {{ t: {t}, state: {state:?}, samples: {} }}",
                samples.len()
            ),
            IvpError::InvalidInput(msg) => write!(f, "InvalidInput({msg:?})"),
            IvpError::MaxStepsExceeded { t } => write!(f, "MaxStepsExceeded {{ t: {t} }}"),
        }
    }
}

impl std::fmt::Display for IvpError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IvpError::NonFiniteField { t } => write!(f, "field evaluated to NaN/inf at t={t}"),
            IvpError::StepSizeUnderflow { t, .. } => write!(f, "step size underflow at t={t}"),
            IvpError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            IvpError::MaxStepsExceeded { t } => write!(f, "step budget exhausted at t={t}"),
        }
    }
}

impl std::error::Error for IvpError {}

struct DenseSegment {
    t0: f64,
    h: f64,
    rcont: [[f64; 2]; 5],
}

impl DenseSegment {
    fn new(t0: f64, h: f64, y0: State, y1: State, k: &[State; STAGES]) -> Self {
        let mut rcont = [[0.0; 2]; 5];
        for c in 0..2 {
            let ydiff = y1[c] - y0[c];
            let bspl = h * k[0][c] - ydiff;
            rcont[0][c] = y0[c];
            rcont[1][c] = ydiff;
            rcont[2][c] = bspl;
            rcont[3][c] = ydiff - h * k[6][c] - bspl;
            let mut acc = 0.0;
            for s in 0..STAGES {
                acc += D[s] * k[s][c];
            }
            rcont[4][c] = h * acc;
        }
        DenseSegment { t0, h, rcont }
    }

    fn eval(&self, t: f64) -> State {
        let theta = (t - self.t0) / self.h;
        let th1 = 1.0 - theta;
        let mut y = [0.0; 2];
        for (c, out) in y.iter_mut().enumerate() {
            *out = self.rcont[0][c]
                + theta
                    * (self.rcont[1][c]
                        + th1
                            * (self.rcont[2][c]
                                + theta * (self.rcont[3][c] + th1 * self.rcont[4][c])));
        }
        y
    }
}

/// Integrate `y' = field(t, y)` over `span` with local error per step at most
/// `tol`, stopping at the first triggered event or the span end. Event
/// locations are refined by bisection on the dense output.
pub fn integrate_ivp(
    field: impl Fn(f64, State) -> State,
    y0: State,
    span: (f64, f64),
    tol: f64,
    events: &EventSpec,
) -> Result<Trajectory, IvpError> {
    let (t0, t1) = span;
    if tol <= 0.0 || tol.is_nan() {
        return Err(IvpError::InvalidInput("tol must be positive"));
    }
    if !t0.is_finite() || !t1.is_finite() {
        return Err(IvpError::InvalidInput("span endpoints must be finite"));
    }
    if t0 == t1 {
        return Err(IvpError::InvalidInput("span endpoints coincide"));
    }
    if !(y0[0].is_finite() && y0[1].is_finite()) {
        return Err(IvpError::InvalidInput("initial state not finite"));
    }

    let dir = (t1 - t0).signum();
    let span_len = (t1 - t0).abs();

    let mut t = t0;
    let mut y = y0;
    let mut k1 = field(t, y);
    if !finite(&k1) {
        return Err(IvpError::NonFiniteField { t });
    }

    let mut samples = vec![(t, y)];
    let mut derivs = vec![k1];

    // Initial step heuristic: small relative to span, shrunk when the field
    // is large at launch.
    let f_scale = k1[0].abs().max(k1[1].abs()).max(1e-10);
    let y_scale = y[0].abs().max(y[1].abs()).max(1e-10);
    let mut h = dir * (span_len * 1e-3).min(0.1 * y_scale / f_scale).max(span_len * 1e-12);

    let mut streaks = vec![(0usize, f64::INFINITY); events.equilibria.len()];
    let mut k = [[0.0f64; 2]; STAGES];

    for _step in 0..MAX_STEPS {
        if (t - t1) * dir >= 0.0 {
            return Ok(Trajectory {
                samples,
                derivs,
                termination: Event::ReachedSpanEnd,
                tolerance_used: tol,
            });
        }
        // Clamp the last step onto the span end.
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }

        // Stages 2..6; stage 7 (FSAL) is the field at the 5th-order result,
        // whose argument is built from row A[6].
        k[0] = k1;
        let mut failed_stage = false;
        let mut y_next = [f64::NAN; 2];
        for s in 1..STAGES {
            let mut ys = y;
            for c in 0..2 {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s.min(6)) {
                    acc += A[s][j] * kj[c];
                }
                ys[c] += h * acc;
            }
            if s == 6 {
                y_next = ys;
            }
            let ks = field(t + C[s] * h, ys);
            if !finite(&ks) {
                failed_stage = true;
                break;
            }
            k[s] = ks;
        }

        let err = if failed_stage {
            f64::INFINITY
        } else {
            // Embedded 4th-order solution gives the local error estimate.
            let mut err = 0.0f64;
            for c in 0..2 {
                let mut y4 = y[c];
                for (s, ks) in k.iter().enumerate() {
                    y4 += h * B4[s] * ks[c];
                }
                let sc = tol + tol * y[c].abs().max(y_next[c].abs());
                let e = (y_next[c] - y4) / sc;
                err += e * e;
            }
            (err / 2.0).sqrt()
        };

        let h_floor = 16.0 * f64::EPSILON * t.abs().max(span_len * 1e-6);
        if err > 1.0 || !y_next[0].is_finite() || !y_next[1].is_finite() {
            // Reject the step.
            let shrink = if err.is_finite() {
                (0.9 * err.powf(-0.2)).max(0.2)
            } else {
                0.5
            };
            h *= shrink;
            if h.abs() < h_floor {
                let threshold = events.escape_threshold.unwrap_or(f64::INFINITY);
                if norm_inf(&y) > threshold {
                    samples.push((t, y));
                    derivs.push(k1);
                    return Ok(Trajectory {
                        samples,
                        derivs,
                        termination: Event::Escape {
                            threshold,
                            location: t,
                        },
                        tolerance_used: tol,
                    });
                }
                return Err(IvpError::StepSizeUnderflow {
                    t,
                    state: y,
                    samples,
                    derivs,
                });
            }
            continue;
        }

        // Accepted step; k[6] already holds the field at (t+h, y_next).
        let t_next = t + h;
        let k7 = k[6];
        let dense = DenseSegment::new(t, h, y, y_next, &k);

        // 1. Zero crossing of the watched component.
        if let Some(zc) = events.zero_crossing {
            let g0 = y[zc.component] - zc.level;
            let g1 = y_next[zc.component] - zc.level;
            if g0 > 0.0 && g1 <= 0.0 || g0 < 0.0 && g1 >= 0.0 {
                let (t_star, y_star) = bisect_crossing(&dense, t, t_next, zc.component, zc.level, tol);
                let mut location = t_star;
                if zc.level != 0.0 {
                    // Leading-order extrapolation from the floor to the true zero.
                    let eps = (t_next - t) * 1e-6;
                    let ya = dense.eval(t_star - eps);
                    let yb = dense.eval(t_star + eps);
                    let slope = (yb[zc.component] - ya[zc.component]) / (2.0 * eps);
                    if slope.abs() > 0.0 && slope.is_finite() {
                        location = t_star
                            + dir * zc.extrapolate_factor * (y_star[zc.component] / slope).abs();
                    }
                }
                samples.push((t_star, y_star));
                derivs.push(field(t_star, y_star));
                return Ok(Trajectory {
                    samples,
                    derivs,
                    termination: Event::ZeroCrossing { location },
                    tolerance_used: tol,
                });
            }
        }

        // 2. Escape.
        if let Some(threshold) = events.escape_threshold {
            if norm_inf(&y_next) > threshold {
                let (t_star, y_star) =
                    bisect_threshold(&dense, t, t_next, threshold, tol);
                samples.push((t_star, y_star));
                derivs.push(k7);
                return Ok(Trajectory {
                    samples,
                    derivs,
                    termination: Event::Escape {
                        threshold,
                        location: t_star,
                    },
                    tolerance_used: tol,
                });
            }
        }

        t = t_next;
        y = y_next;
        k1 = k7;
        samples.push((t, y));
        derivs.push(k1);

        // 3. Equilibrium convergence: within tolerance, approaching, for
        // several consecutive accepted steps.
        for (i, eq) in events.equilibria.iter().enumerate() {
            let d = dist_inf(&y, &eq.point);
            let (streak, last) = streaks[i];
            if d <= eq.tol && d <= last {
                streaks[i] = (streak + 1, d);
                if streak + 1 >= EQUILIBRIUM_STREAK {
                    return Ok(Trajectory {
                        samples,
                        derivs,
                        termination: Event::ConvergedToEquilibrium {
                            label: eq.label.clone(),
                            residual: d,
                        },
                        tolerance_used: tol,
                    });
                }
            } else {
                streaks[i] = (0, f64::INFINITY);
            }
        }

        let grow = (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
        h *= grow;
        // Equilibrium detection counts consecutive accepted steps, so keep a
        // usable sample density when it is armed; otherwise let the step run.
        let h_max = if events.equilibria.is_empty() {
            span_len
        } else {
            span_len / 64.0
        };
        if h.abs() > h_max {
            h = dir * h_max;
        }
    }
    Err(IvpError::MaxStepsExceeded { t })
}

/// Fixed-step propagation of the same 5th-order formula, without error
/// control. Used by the order-verification tests.
#[doc(hidden)]
pub fn integrate_fixed_step(
    field: impl Fn(f64, State) -> State,
    y0: State,
    span: (f64, f64),
    n_steps: usize,
) -> State {
    let h = (span.1 - span.0) / n_steps as f64;
    let mut t = span.0;
    let mut y = y0;
    let mut k = [[0.0f64; 2]; STAGES];
    for _ in 0..n_steps {
        k[0] = field(t, y);
        let mut y_next = y;
        for s in 1..STAGES {
            let mut ys = y;
            for c in 0..2 {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s.min(6)) {
                    acc += A[s][j] * kj[c];
                }
                ys[c] += h * acc;
            }
            if s == 6 {
                y_next = ys;
            }
            k[s] = field(t + C[s] * h, ys);
        }
        y = y_next;
        t += h;
    }
    y
}

fn finite(y: &State) -> bool {
    y[0].is_finite() && y[1].is_finite()
}

fn norm_inf(y: &State) -> f64 {
    y[0].abs().max(y[1].abs())
}

fn dist_inf(a: &State, b: &State) -> f64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

fn bisect_crossing(
    dense: &DenseSegment,
    t_lo: f64,
    t_hi: f64,
    component: usize,
    level: f64,
    tol: f64,
) -> (f64, State) {
    let mut lo = t_lo;
    let mut hi = t_hi;
    let g_lo = dense.eval(lo)[component] - level;
    for _ in 0..EVENT_BISECT_MAX {
        let mid = 0.5 * (lo + hi);
        let g_mid = dense.eval(mid)[component] - level;
        if g_lo * g_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() < tol && g_mid.abs() < tol {
            break;
        }
    }
    let t_star = 0.5 * (lo + hi);
    (t_star, dense.eval(t_star))
}

fn bisect_threshold(
    dense: &DenseSegment,
    t_lo: f64,
    t_hi: f64,
    threshold: f64,
    tol: f64,
) -> (f64, State) {
    let mut lo = t_lo;
    let mut hi = t_hi;
    for _ in 0..EVENT_BISECT_MAX {
        let mid = 0.5 * (lo + hi);
        if norm_inf(&dense.eval(mid)) > threshold {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo).abs() < tol {
            break;
        }
    }
    (hi, dense.eval(hi))
}

/// Roots of the characteristic quadratic `mu^2 + b*mu + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RootPair {
    /// Real roots ordered `mu_plus >= mu_minus`.
    RealPair { mu_plus: f64, mu_minus: f64 },
    /// Conjugate pair `real_part +/- i*imag_part` with `imag_part > 0`.
    ComplexPair { real_part: f64, imag_part: f64 },
}

impl RootPair {
    pub fn real(&self) -> Option<(f64, f64)> {
        match *self {
            RootPair::RealPair { mu_plus, mu_minus } => Some((mu_plus, mu_minus)),
            RootPair::ComplexPair { .. } => None,
        }
    }
}

/// Numerically stable roots of `mu^2 + b*mu + c = 0`. The complex case is a
/// value, not an error.
pub fn quadratic_roots(b: f64, c: f64) -> RootPair {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return RootPair::ComplexPair {
            real_part: -b / 2.0,
            imag_part: (-disc).sqrt() / 2.0,
        };
    }
    if c == 0.0 {
        let (r1, r2) = (0.0f64, -b);
        return RootPair::RealPair {
            mu_plus: r1.max(r2),
            mu_minus: r1.min(r2),
        };
    }
    // Avoid cancellation: compute the large-magnitude root first.
    let s = disc.sqrt();
    let q = -0.5 * (b + b.signum() * s);
    let (r1, r2) = (q, c / q);
    RootPair::RealPair {
        mu_plus: r1.max(r2),
        mu_minus: r1.min(r2),
    }
}

/// Vector-valued function sampled on the uniform grid `t_i = t_end * i/(N-1)`
/// over `[0, t_end]`; node 0 carries the known limit at the singular origin.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn<const M: usize> {
    pub t_end: f64,
    pub values: Vec<[f64; M]>,
}

impl<const M: usize> GridFn<M> {
    pub fn zeros(t_end: f64, len: usize) -> Self {
        assert!(len >= 2 && t_end > 0.0);
        GridFn {
            t_end,
            values: vec![[0.0; M]; len],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.t_end / (self.len() - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.t_end * i as f64 / (self.len() - 1) as f64
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                (0..M)
                    .map(|c| (a[c] - b[c]).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max)
    }
}

#[derive(Debug, Clone)]
pub struct FixedPointResult<const M: usize> {
    pub solution: GridFn<M>,
    /// Number of map applications performed.
    pub iterations: usize,
    /// Sup-norm updates per iteration, for contraction diagnostics.
    pub updates: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum FixedPointError {
    /// Update never fell below tolerance; signals the map is not contracting
    /// on this grid (caller shrinks the interval).
    NoConvergence { iterations: usize, last_update: f64 },
}

impl std::fmt::Display for FixedPointError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FixedPointError::NoConvergence {
                iterations,
                last_update,
            } => write!(
                f,
                "fixed-point iteration did not converge after {iterations} iterations (last update {last_update:e})"
            ),
        }
    }
}

impl std::error::Error for FixedPointError {}

/// Iterate `map` from `initial` until the sup-norm update drops below `tol`.
/// Returns the first iterate achieving that, with the iteration count.
pub fn fixed_point_solve<const M: usize>(
    map: impl Fn(&GridFn<M>) -> GridFn<M>,
    initial: GridFn<M>,
    tol: f64,
    max_iter: usize,
) -> Result<FixedPointResult<M>, FixedPointError> {
    assert!(tol > 0.0, "tol must be positive");
    let mut current = initial;
    let mut updates = Vec::new();
    for iter in 1..=max_iter {
        let next = map(&current);
        let d = next.sup_distance(&current);
        updates.push(d);
        current = next;
        if d < tol {
            return Ok(FixedPointResult {
                solution: current,
                iterations: iter,
                updates,
            });
        }
    }
    Err(FixedPointError::NoConvergence {
        iterations: max_iter,
        last_update: updates.last().copied().unwrap_or(f64::INFINITY),
    })
}

/// Log-spaced grid with `count` points from `lo` to `hi` (inclusive).
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Linearly spaced grid with `count` points from `lo` to `hi` (inclusive).
pub fn lin_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}
