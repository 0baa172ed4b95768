//! The one-parameter family of solutions above the power law
//! (case `sigma > -2`, `p < -1-sigma`): local construction by Picard
//! iteration on the singular integral equation, global continuation, the
//! below-power-law failure experiment, and the Sturm oscillation check.

use crate::closed_form::power_law;
use crate::lienard::{crossing_spec_for_power, LienardSystem, ESCAPE_THRESHOLD};
use crate::numerics::{
    fixed_point_solve, integrate_ivp, quadratic_roots, Event, EventSpec, FixedPointError, GridFn,
    RootPair, State, Trajectory,
};
use serde::{Deserialize, Serialize};

/// Grid resolution for the Picard iteration: 2^k + 1 nodes on [0, T].
const PICARD_GRID_K: u32 = 10;
const PICARD_TOL: f64 = 1e-11;
const PICARD_MAX_ITER: usize = 400;
/// Shrink floor for the contraction interval.
const T_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyError {
    /// Parameters outside `sigma > -2`, `p < -1-sigma`.
    OutsideRegime { p: f64, sigma: f64 },
    /// The Picard map failed to contract down to the shrink floor.
    NoConvergence { t_final: f64, last_update: f64 },
    /// Continuation lost positivity for `w0 >= 0`; this indicates a defect
    /// and is surfaced, never swallowed.
    LostPositivity { x: f64 },
    /// Extension requires `w0 >= 0`.
    NegativeLeadingCoefficient { w0: f64 },
    /// Experiment requires `w0 < 0`.
    NonNegativeLeadingCoefficient { w0: f64 },
    /// Integration failed.
    Integration(String),
    /// The scan window ended before a decision; caller doubles `x_max`.
    Inconclusive { x_max: f64 },
    /// Comparison oscillates only for `m > (2a-1)^2 / 4`.
    ComparisonNotOscillatory { m: f64 },
    /// `q2(z2) <= m`; caller increases `z2`.
    PreconditionUnmet { q2: f64, m: f64 },
}

impl std::fmt::Display for FamilyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyError::OutsideRegime { p, sigma } => {
                write!(f, "(p={p}, sigma={sigma}) outside sigma > -2, p < -1-sigma")
            }
            FamilyError::NoConvergence { t_final, last_update } => write!(
                f,
                "Picard iteration not contracting down to T={t_final} (last update {last_update:e})"
            ),
            FamilyError::LostPositivity { x } => write!(f, "continuation lost positivity at x={x}"),
            FamilyError::NegativeLeadingCoefficient { w0 } => {
                write!(f, "extension requires w0 >= 0, got {w0}")
            }
            FamilyError::NonNegativeLeadingCoefficient { w0 } => {
                write!(f, "experiment requires w0 < 0, got {w0}")
            }
            FamilyError::Integration(msg) => write!(f, "integration failed: {msg}"),
            FamilyError::Inconclusive { x_max } => {
                write!(f, "no decision by x={x_max}; extend the window")
            }
            FamilyError::ComparisonNotOscillatory { m } => {
                write!(f, "m={m} below the oscillation threshold")
            }
            FamilyError::PreconditionUnmet { q2, m } => {
                write!(f, "q2(z2)={q2} not above m={m}; increase z2")
            }
        }
    }
}

impl std::error::Error for FamilyError {}

/// Local solution `w` of the perturbation equation on `(0, T]`, with
/// `u = u_a (1 + w)` and `lim w(x)/x^{mu_plus} = w0`.
#[derive(Debug, Clone)]
pub struct LocalSolution {
    pub mu_plus: f64,
    pub w0: f64,
    pub radius: f64,
    /// `w` on the uniform grid over [0, T]; node 0 carries the limit 0.
    pub w: GridFn<1>,
    /// `eta(x) = x^{-mu_plus} w(x)`, continuous up to 0 with value `w0`.
    pub eta: GridFn<1>,
    /// `w'` on the same grid, from the system component `x w'`.
    pub w_prime: GridFn<1>,
    pub p: f64,
    pub sigma: f64,
    /// Power-law exponent `a` and the measured contraction iteration count.
    pub a: f64,
    pub iterations: usize,
}

fn case_c1(p: f64, sigma: f64) -> Result<(f64, f64), FamilyError> {
    // a in (0,1) with p < 1 is exactly sigma > -2, p < -1-sigma.
    if !(sigma > -2.0 && p < -1.0 - sigma) {
        return Err(FamilyError::OutsideRegime { p, sigma });
    }
    let a = (2.0 + sigma) / (1.0 - p);
    debug_assert!(a > 0.0 && a < 1.0);
    Ok((a, a * (1.0 - a)))
}

/// `f0(w) = a(1-a) [ (1+w)^p - 1 - p w ]`, the quadratic-order remainder of
/// the nonlinearity around the stationary solution.
fn f0(stiffness: f64, p: f64, w: f64) -> f64 {
    stiffness * ((1.0 + w).powf(p) - 1.0 - p * w)
}

/// Construct the local solution by Picard iteration on
/// `psi(x) = (1/x) int_0^x F(s, psi(s)) ds`, auto-shrinking `T` until the
/// map contracts.
pub fn picard_local(
    p: f64,
    sigma: f64,
    w0: f64,
    t_radius: f64,
) -> Result<LocalSolution, FamilyError> {
    let (a, stiffness) = case_c1(p, sigma)?;
    let b = 2.0 * a - 1.0;
    let c = stiffness * (p - 1.0);
    let mu_plus = match quadratic_roots(b, c) {
        RootPair::RealPair { mu_plus, .. } => mu_plus,
        RootPair::ComplexPair { .. } => unreachable!("c < 0 forces real roots"),
    };
    debug_assert!(mu_plus > 0.0);

    let n = (1usize << PICARD_GRID_K) + 1;
    let mut t_end = t_radius;
    loop {
        match picard_at_radius(p, stiffness, b, c, mu_plus, w0, t_end, n) {
            Ok((psi, iterations)) => {
                // Reassemble w, eta, w' from psi: y = x^{mu} (y0 + psi).
                let mut w = GridFn::<1>::zeros(t_end, n);
                let mut eta = GridFn::<1>::zeros(t_end, n);
                let mut w_prime = GridFn::<1>::zeros(t_end, n);
                for i in 0..n {
                    let x = w.node(i);
                    let eta_i = w0 + psi.values[i][0];
                    eta.values[i][0] = eta_i;
                    if i == 0 {
                        w.values[i][0] = 0.0;
                        // w' ~ mu w0 x^{mu-1}: finite at 0 only if mu >= 1.
                        w_prime.values[i][0] = if mu_plus > 1.0 {
                            0.0
                        } else if mu_plus == 1.0 {
                            mu_plus * w0
                        } else {
                            f64::NAN
                        };
                    } else {
                        w.values[i][0] = x.powf(mu_plus) * eta_i;
                        w_prime.values[i][0] =
                            x.powf(mu_plus - 1.0) * (mu_plus * w0 + psi.values[i][1]);
                    }
                }
                return Ok(LocalSolution {
                    mu_plus,
                    w0,
                    radius: t_end,
                    w,
                    eta,
                    w_prime,
                    p,
                    sigma,
                    a,
                    iterations,
                });
            }
            Err(FixedPointError::NoConvergence { last_update, .. }) => {
                t_end /= 2.0;
                if t_end < T_FLOOR {
                    return Err(FamilyError::NoConvergence {
                        t_final: t_end,
                        last_update,
                    });
                }
            }
        }
    }
}

/// One Picard solve at a fixed radius. The operator integrates
/// `F(s, psi) = M psi + s^{-mu} f(s^{mu}(y0 + psi))` by trapezoid, with the
/// first panel handled by the power-law leading order of `F`.
#[allow(clippy::too_many_arguments)]
fn picard_at_radius(
    p: f64,
    stiffness: f64,
    b: f64,
    c: f64,
    mu_plus: f64,
    w0: f64,
    t_end: f64,
    n: usize,
) -> Result<(GridFn<2>, usize), FixedPointError> {
    // M = A - (mu - 1) I with A = [[0, 1], [-c, -b]].
    let m11 = -(mu_plus - 1.0);
    let m12 = 1.0;
    let m21 = -c;
    let m22 = -b - (mu_plus - 1.0);
    let h = t_end / (n - 1) as f64;

    let eval_f = |x: f64, psi: [f64; 2]| -> [f64; 2] {
        if x == 0.0 {
            return [0.0, 0.0];
        }
        let lin = [
            m11 * psi[0] + m12 * psi[1],
            m21 * psi[0] + m22 * psi[1],
        ];
        let w_val = x.powf(mu_plus) * (w0 + psi[0]);
        let nonlin = -f0(stiffness, p, w_val) * x.powf(-mu_plus);
        [lin[0], lin[1] + nonlin]
    };

    let map = move |g: &GridFn<2>| -> GridFn<2> {
        let mut out = GridFn::<2>::zeros(t_end, n);
        // First panel: both components of F carry the known power-law
        // leading order s^{mu_plus} (the nonlinearity contributes
        // s^{-mu} O(s^{2 mu}) and the fixed point itself is O(s^{mu})), so
        // integral_0^h F = F(h) h / (mu_plus + 1) to higher order.
        let f1 = eval_f(h, g.values[1]);
        let mut integral = [
            f1[0] * h / (mu_plus + 1.0),
            f1[1] * h / (mu_plus + 1.0),
        ];
        out.values[1] = [integral[0] / h, integral[1] / h];
        let mut prev = f1;
        for i in 2..n {
            let x = i as f64 * h;
            let cur = eval_f(x, g.values[i]);
            for comp in 0..2 {
                integral[comp] += 0.5 * h * (prev[comp] + cur[comp]);
                out.values[i][comp] = integral[comp] / x;
            }
            prev = cur;
        }
        out
    };

    let initial = GridFn::<2>::zeros(t_end, n);
    let res = fixed_point_solve(map, initial, PICARD_TOL, PICARD_MAX_ITER)?;
    Ok((res.solution, res.iterations))
}

/// Scaled residual of the perturbation equation
/// `x(xw')' + (2a-1) x w' + a(1-a)(p-1) w + f0(w)` on `(T/100, T]`,
/// using 4th-order finite differences of the grid values.
pub fn local_equation_residual(local: &LocalSolution) -> f64 {
    let n = local.w.len();
    let h = local.w.step();
    let stiffness = local.a * (1.0 - local.a);
    let b = 2.0 * local.a - 1.0;
    let c = stiffness * (local.p - 1.0);
    // g = x w'; derivative of g by central differences.
    let g: Vec<f64> = (0..n)
        .map(|i| local.w.node(i) * val(&local.w_prime, i))
        .collect();
    let mut worst = 0.0f64;
    for i in 2..n - 2 {
        let x = local.w.node(i);
        if x <= local.radius / 100.0 {
            continue;
        }
        let gp = (-g[i + 2] + 8.0 * g[i + 1] - 8.0 * g[i - 1] + g[i - 2]) / (12.0 * h);
        let w_i = val(&local.w, i);
        let r = x * gp + b * g[i] + c * w_i + f0(stiffness, local.p, w_i);
        let scale = 1.0 + w_i.abs();
        worst = worst.max(r.abs() / scale);
    }
    worst
}

fn val(g: &GridFn<1>, i: usize) -> f64 {
    g.values[i][0]
}

/// A globally continued family member.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub w0: f64,
    pub mu_plus: f64,
    pub radius: f64,
    /// `(x, u, u')` over `(0, x_max]`: local grid below `T`, integrated
    /// samples beyond.
    pub trajectory: Trajectory,
    /// `u(x_max)/x_max`, the linear-growth slope estimate.
    pub slope_estimate: f64,
}

fn u_ua_from_local(local: &LocalSolution, i: usize) -> (f64, f64) {
    let x = local.w.node(i);
    let ua = power_law(local.p, local.sigma).expect("case C1 admits the power law");
    let w_i = val(&local.w, i);
    let wp_i = val(&local.w_prime, i);
    let u = ua.eval(x) * (1.0 + w_i);
    let du = ua.deriv(x) * (1.0 + w_i) + ua.eval(x) * wp_i;
    (u, du)
}

/// One-sided 4th-order difference for `w'` at the right end of the grid.
fn w_prime_at_radius(local: &LocalSolution) -> f64 {
    let n = local.w.len();
    let h = local.w.step();
    let f = |k: usize| val(&local.w, n - 1 - k);
    (25.0 * f(0) - 48.0 * f(1) + 36.0 * f(2) - 16.0 * f(3) + 3.0 * f(4)) / (12.0 * h)
}

/// Continue `u = u_a (1 + w)` from the Picard radius out to `x_max` by
/// integrating the original equation, and run the monotonicity checks.
pub fn extend_family(
    local: &LocalSolution,
    x_max: f64,
    tol: f64,
) -> Result<FamilyMember, FamilyError> {
    if local.w0 < 0.0 {
        return Err(FamilyError::NegativeLeadingCoefficient { w0: local.w0 });
    }
    let (p, sigma) = (local.p, local.sigma);
    let ua = power_law(p, sigma).expect("case C1 admits the power law");
    let t_radius = local.radius;

    // Handoff state at x = T, with w' from one-sided differences.
    let w_t = val(&local.w, local.w.len() - 1);
    let wp_t = w_prime_at_radius(local);
    let u_t = ua.eval(t_radius) * (1.0 + w_t);
    let du_t = ua.deriv(t_radius) * (1.0 + w_t) + ua.eval(t_radius) * wp_t;

    let field = |x: f64, y: State| [y[1], -x.powf(sigma) * y[0].powf(p)];
    let events = EventSpec::none()
        .with_zero_crossing(crossing_spec_for_power(p, u_t.max(1.0)))
        .with_escape(ESCAPE_THRESHOLD);
    let traj = integrate_ivp(field, [u_t, du_t], (t_radius, x_max), tol, &events)
        .map_err(|e| FamilyError::Integration(e.to_string()))?;
    if let Event::ZeroCrossing { location } = traj.termination {
        return Err(FamilyError::LostPositivity { x: location });
    }

    // Assemble the full path: local grid strictly below T, then the
    // integrated samples.
    let mut samples = Vec::new();
    let mut derivs = Vec::new();
    for i in 1..local.w.len() - 1 {
        let x = local.w.node(i);
        let (u, du) = u_ua_from_local(local, i);
        samples.push((x, [u, du]));
        derivs.push([du, -x.powf(sigma) * u.powf(p)]);
    }
    samples.extend(traj.samples.iter().cloned());
    derivs.extend(traj.derivs.iter().cloned());

    // Diagnostics along the whole path: positivity, order against u_a for
    // w0 > 0, concavity, u' non-increasing.
    let mut prev_du = f64::INFINITY;
    for &(x, y) in &samples {
        if y[0] <= 0.0 {
            return Err(FamilyError::LostPositivity { x });
        }
        if local.w0 > 0.0 && y[0] <= ua.eval(x) {
            return Err(FamilyError::LostPositivity { x });
        }
        if y[1] > prev_du + 1e-9 * (1.0 + y[1].abs()) {
            return Err(FamilyError::Integration(format!(
                "u' increased at x={x}: concavity violated"
            )));
        }
        prev_du = y[1];
    }

    let (x_end, y_end) = *samples.last().unwrap();
    Ok(FamilyMember {
        w0: local.w0,
        mu_plus: local.mu_plus,
        radius: t_radius,
        trajectory: Trajectory {
            samples,
            derivs,
            termination: traj.termination,
            tolerance_used: tol,
        },
        slope_estimate: y_end[0] / x_end,
    })
}

/// Failure certificate for a below-power-law start: either a located zero of
/// `u`, or a concavity bound (`u' < 0` forces the zero at
/// `x* = x - u/u'` since the solution lies below its tangent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FailureCertificate {
    ZeroCrossing { x_star: f64 },
    ConcavityBound { x_at: f64, x_star: f64 },
}

impl FailureCertificate {
    pub fn x_star(&self) -> f64 {
        match *self {
            FailureCertificate::ZeroCrossing { x_star } => x_star,
            FailureCertificate::ConcavityBound { x_star, .. } => x_star,
        }
    }
}

/// Continue a `w0 < 0` local solution and certify that it fails to stay
/// positive: a zero crossing in the window, or a decreasing concave tail.
pub fn below_ua_experiment(
    p: f64,
    sigma: f64,
    w0: f64,
    x_max: f64,
    tol: f64,
) -> Result<FailureCertificate, FamilyError> {
    if w0 >= 0.0 {
        return Err(FamilyError::NonNegativeLeadingCoefficient { w0 });
    }
    let local = picard_local(p, sigma, w0, DEFAULT_NEGATIVE_RADIUS)?;
    let ua = power_law(p, sigma).expect("case C1 admits the power law");
    let t_radius = local.radius;
    let w_t = val(&local.w, local.w.len() - 1);
    let wp_t = w_prime_at_radius(&local);
    let u_t = ua.eval(t_radius) * (1.0 + w_t);
    let du_t = ua.deriv(t_radius) * (1.0 + w_t) + ua.eval(t_radius) * wp_t;

    let field = |x: f64, y: State| [y[1], -x.powf(sigma) * y[0].powf(p)];
    let events = EventSpec::none()
        .with_zero_crossing(crossing_spec_for_power(p, u_t.max(1e-3)))
        .with_escape(ESCAPE_THRESHOLD);
    let traj = integrate_ivp(field, [u_t, du_t], (t_radius, x_max), tol, &events)
        .map_err(|e| FamilyError::Integration(e.to_string()))?;
    match traj.termination {
        Event::ZeroCrossing { location } => {
            Ok(FailureCertificate::ZeroCrossing { x_star: location })
        }
        Event::Escape { location, .. } => {
            // Blow-up of u' at the singular touch; the crossing is at the
            // escape location to leading order.
            Ok(FailureCertificate::ZeroCrossing { x_star: location })
        }
        _ => {
            let (x_end, y_end) = traj.end();
            if y_end[1] < 0.0 {
                Ok(FailureCertificate::ConcavityBound {
                    x_at: x_end,
                    x_star: x_end - y_end[0] / y_end[1],
                })
            } else {
                Err(FamilyError::Inconclusive { x_max })
            }
        }
    }
}

const DEFAULT_NEGATIVE_RADIUS: f64 = 0.05;

/// Phase-plane picture of a below-power-law start: `V = 1 + w` integrated
/// forward in `z = log x` from the Picard radius.
pub fn sub_ua_orbit(
    p: f64,
    sigma: f64,
    w0: f64,
    z_max: f64,
    tol: f64,
) -> Result<Trajectory, FamilyError> {
    if w0 >= 0.0 {
        return Err(FamilyError::NonNegativeLeadingCoefficient { w0 });
    }
    let local = picard_local(p, sigma, w0, DEFAULT_NEGATIVE_RADIUS)?;
    let sys = LienardSystem::new(local.a, p).expect("case C1 shape");
    let t_radius = local.radius;
    let w_t = val(&local.w, local.w.len() - 1);
    let wp_t = w_prime_at_radius(&local);
    let v_t = 1.0 + w_t;
    let vdot_t = t_radius * wp_t;
    let z0 = t_radius.ln();
    let events = EventSpec::none()
        .with_zero_crossing(sys.crossing_spec())
        .with_escape(ESCAPE_THRESHOLD);
    crate::lienard::integrate_orbit_with(&sys, [v_t, vdot_t], (z0, z0 + z_max), tol, &events)
        .map_err(|e| FamilyError::Integration(e.to_string()))
}

/// Sturm comparison report: the faster-oscillating comparison solution has
/// its first zero past `z2` at `b = z2 + pi/K`, forcing a zero of `V` inside
/// `(z2, b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SturmReport {
    pub m: f64,
    pub z2: f64,
    pub b: f64,
    pub zero_found: Option<f64>,
}

/// Check the oscillation window predicted by the comparison equation
/// `V0'' + (2a-1) V0' + m V0 = 0` against a trajectory confined to
/// `0 < V < 1`.
pub fn sturm_compare(
    sys: &LienardSystem,
    traj: &Trajectory,
    m: f64,
    z2: f64,
) -> Result<SturmReport, FamilyError> {
    let damping = sys.damping();
    if m <= damping * damping / 4.0 {
        return Err(FamilyError::ComparisonNotOscillatory { m });
    }
    let v_at_z2 = traj
        .interpolate(z2)
        .ok_or(FamilyError::Integration("z2 outside trajectory".into()))?[0];
    let q2 = sys.stiffness() * (v_at_z2.powf(sys.p() - 1.0) - 1.0);
    if q2 <= m {
        return Err(FamilyError::PreconditionUnmet { q2, m });
    }
    let k = 0.5 * (4.0 * m - damping * damping).sqrt();
    let b = z2 + std::f64::consts::PI / k;

    // A zero of V inside the window: either a crossing event located there,
    // or a sampled sign change.
    let mut zero_found = None;
    if let Event::ZeroCrossing { location } = traj.termination {
        if location > z2 && location < b {
            zero_found = Some(location);
        }
    }
    if zero_found.is_none() {
        for w in traj.samples.windows(2) {
            let (z0, y0) = w[0];
            let (z1, y1) = w[1];
            if y0[0] > 0.0 && y1[0] <= 0.0 && z1 > z2 && z0 < b {
                let t = y0[0] / (y0[0] - y1[0]);
                zero_found = Some(z0 + t * (z1 - z0));
                break;
            }
        }
    }
    Ok(SturmReport { m, z2, b, zero_found })
}

/// Sign changes of a sampled function, with linearly interpolated locations.
/// Zero samples are skipped when pairing, so a touch without a crossing does
/// not count.
pub fn zero_count(samples: &[(f64, f64)]) -> (usize, Vec<f64>) {
    let mut locations = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for &(x, f) in samples {
        if f == 0.0 {
            continue;
        }
        if let Some((xp, fp)) = last {
            if fp.signum() != f.signum() {
                let t = fp / (fp - f);
                locations.push(xp + t * (x - xp));
            }
        }
        last = Some((x, f));
    }
    (locations.len(), locations)
}
