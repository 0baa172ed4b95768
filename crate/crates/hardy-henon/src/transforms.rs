//! Structural changes of variables: the Kelvin-type involution
//! `u(x) -> r u(1/r)` (one-dimensional, half line), the scaling group
//! `u(x) -> lambda^{(2+sigma)/(p-1)} u(lambda x)`, and the reduction
//! `u = u_a v`, `z = log x` to the autonomous phase-plane equation.

use crate::atlas::{Domain, ProblemParams};
use crate::closed_form::{power_law, ClosedForm};
use crate::numerics::{log_grid, Event, Trajectory};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    /// Kelvin duality is used only in dimension one.
    WrongDimension { n: u32 },
    /// The transform needs the punctured half-line problem.
    NotHalfLine,
    /// `p = 1`: the scaling exponent degenerates.
    DegenerateExponent,
    /// The substitution requires a valid power law (`a` in `(0,1)`).
    InvalidPowerLaw,
    /// `u <= 0` somewhere on the grid.
    NotPositive { x: f64 },
    /// Closed-form variant not representable after the transform.
    Unrepresentable,
}

impl std::fmt::Display for TransformError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformError::WrongDimension { n } => {
                write!(f, "transform requires n = 1, got n = {n}")
            }
            TransformError::NotHalfLine => write!(f, "transform requires the half-line domain"),
            TransformError::DegenerateExponent => write!(f, "scaling degenerates at p = 1"),
            TransformError::InvalidPowerLaw => {
                write!(f, "reduction requires a power-law exponent in (0,1)")
            }
            TransformError::NotPositive { x } => write!(f, "u <= 0 at x = {x}"),
            TransformError::Unrepresentable => {
                write!(f, "closed form not representable under this transform")
            }
        }
    }
}

impl std::error::Error for TransformError {}

/// Image of the half-line problem under `u -> r u(1/r)`: the same equation
/// with weight exponent `sigma_tilde = -p - sigma - 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KelvinImage {
    pub sigma_tilde: f64,
    /// Transformed problem key (same `p`, weight `sigma_tilde`).
    pub params: ProblemParams,
}

/// Kelvin duality for the one-dimensional half-line problem.
pub fn kelvin(params: &ProblemParams) -> Result<KelvinImage, TransformError> {
    if params.n != 1 {
        return Err(TransformError::WrongDimension { n: params.n });
    }
    if params.domain != Domain::HalfLine {
        return Err(TransformError::NotHalfLine);
    }
    let sigma_tilde = -params.p - params.sigma - 3.0;
    let image = ProblemParams::new(1, params.p, sigma_tilde, Domain::HalfLine)
        .expect("transformed parameters stay valid");
    Ok(KelvinImage {
        sigma_tilde,
        params: image,
    })
}

/// Kelvin transform of a closed form: `v(r) = r u(1/r)`.
pub fn kelvin_form(form: &ClosedForm) -> Result<ClosedForm, TransformError> {
    match *form {
        ClosedForm::PowerLaw { coeff, exponent } => Ok(ClosedForm::PowerLaw {
            coeff,
            exponent: 1.0 - exponent,
        }),
        ClosedForm::PowerProduct {
            coeff,
            exponent,
            alpha,
            outer_exponent,
        } => {
            if alpha == 0.0 {
                return Ok(ClosedForm::PowerLaw {
                    coeff,
                    exponent: 1.0 - exponent,
                });
            }
            // r * C r^{-a} (1 + alpha/r)^b = C alpha^b r^{1-a-b} (1 + r/alpha)^b
            Ok(ClosedForm::PowerProduct {
                coeff: coeff * alpha.powf(outer_exponent),
                exponent: 1.0 - exponent - outer_exponent,
                alpha: 1.0 / alpha,
                outer_exponent,
            })
        }
        // r * sqrt(1/r) g(-omega log r) reflects the log argument.
        ClosedForm::CauchyEuler { c1, c2 } => Ok(ClosedForm::CauchyEuler { c1: -c1, c2 }),
        ClosedForm::Bubble { .. } => Err(TransformError::Unrepresentable),
    }
}

/// Kelvin transform of a sampled trajectory, resampled on a reflected log
/// grid with cubic interpolation on the dense output.
pub fn kelvin_trajectory(traj: &Trajectory) -> Result<Trajectory, TransformError> {
    let (x0, x1) = traj.span();
    let (lo, hi) = (x0.min(x1), x0.max(x1));
    assert!(lo > 0.0, "kelvin transform needs a positive span");
    let count = traj.samples.len().max(16);
    let r_grid = log_grid(1.0 / hi, 1.0 / lo, count);
    let mut samples = Vec::with_capacity(count);
    let mut derivs = Vec::with_capacity(count);
    for &r in &r_grid {
        let x = (1.0 / r).clamp(lo, hi);
        let y = traj.interpolate(x).expect("grid stays inside the span");
        let (u, du) = (y[0], y[1]);
        let v = r * u;
        let dv = u - du / r;
        // v''(r) = u''(1/r)/r^3 from the chain rule; second derivative of u
        // from the dense output.
        let d2u = traj
            .interpolate_deriv(x)
            .expect("grid stays inside the span")[1];
        samples.push((r, [v, dv]));
        derivs.push([dv, d2u / (r * r * r)]);
    }
    Ok(Trajectory {
        samples,
        derivs,
        termination: Event::ReachedSpanEnd,
        tolerance_used: traj.tolerance_used,
    })
}

fn scaling_prefactor(lambda: f64, params: &ProblemParams) -> Result<f64, TransformError> {
    assert!(lambda > 0.0, "scaling requires lambda > 0");
    if params.p == 1.0 {
        return Err(TransformError::DegenerateExponent);
    }
    Ok(lambda.powf((2.0 + params.sigma) / (params.p - 1.0)))
}

/// Scaling group on closed forms: solutions map to solutions.
pub fn scale_form(
    form: &ClosedForm,
    lambda: f64,
    params: &ProblemParams,
) -> Result<ClosedForm, TransformError> {
    let pref = scaling_prefactor(lambda, params)?;
    match *form {
        ClosedForm::PowerLaw { coeff, exponent } => Ok(ClosedForm::PowerLaw {
            coeff: pref * coeff * lambda.powf(exponent),
            exponent,
        }),
        ClosedForm::PowerProduct {
            coeff,
            exponent,
            alpha,
            outer_exponent,
        } => Ok(ClosedForm::PowerProduct {
            coeff: pref * coeff * lambda.powf(exponent),
            exponent,
            alpha: lambda * alpha,
            outer_exponent,
        }),
        ClosedForm::CauchyEuler { .. } | ClosedForm::Bubble { .. } => {
            Err(TransformError::Unrepresentable)
        }
    }
}

/// Scaling group on sampled trajectories: `v(x) = pref * u(lambda x)`.
pub fn scale_trajectory(
    traj: &Trajectory,
    lambda: f64,
    params: &ProblemParams,
) -> Result<Trajectory, TransformError> {
    let pref = scaling_prefactor(lambda, params)?;
    let samples = traj
        .samples
        .iter()
        .map(|&(x, y)| (x / lambda, [pref * y[0], pref * lambda * y[1]]))
        .collect();
    let derivs = traj
        .derivs
        .iter()
        .map(|d| [pref * lambda * d[0], pref * lambda * lambda * d[1]])
        .collect();
    Ok(Trajectory {
        samples,
        derivs,
        termination: traj.termination.clone(),
        tolerance_used: traj.tolerance_used,
    })
}

/// `(u, u')` samples on an x-grid to `(V, Vdot)` samples on the z-grid,
/// `V(z) = u(e^z)/u_a(e^z)`, `Vdot` by the chain rule.
pub fn to_autonomous(
    traj: &Trajectory,
    params: &ProblemParams,
) -> Result<Trajectory, TransformError> {
    let ua = power_law(params.p, params.sigma).map_err(|_| TransformError::InvalidPowerLaw)?;
    let mut samples = Vec::with_capacity(traj.samples.len());
    let mut derivs = Vec::with_capacity(traj.samples.len());
    for (i, &(x, y)) in traj.samples.iter().enumerate() {
        assert!(x > 0.0, "autonomous reduction needs x > 0");
        if y[0] <= 0.0 {
            return Err(TransformError::NotPositive { x });
        }
        let (u, du) = (y[0], y[1]);
        let (ua_v, ua_d, ua_dd) = (ua.eval(x), ua.deriv(x), ua.second_deriv(x));
        let v = u / ua_v;
        let vp = (du * ua_v - u * ua_d) / (ua_v * ua_v);
        let z = x.ln();
        let vdot = x * vp;
        // Second z-derivative from the stored u'' when available.
        let d2u = traj.derivs[i][1];
        let vpp = (d2u - ua_dd * v - 2.0 * ua_d * vp) / ua_v;
        let vddot = x * vp + x * x * vpp;
        samples.push((z, [v, vdot]));
        derivs.push([vdot, vddot]);
    }
    Ok(Trajectory {
        samples,
        derivs,
        termination: traj.termination.clone(),
        tolerance_used: traj.tolerance_used,
    })
}

/// Inverse of [`to_autonomous`]: `(z, V, Vdot)` back to `(x, u, u')`.
pub fn from_autonomous(
    traj: &Trajectory,
    params: &ProblemParams,
) -> Result<Trajectory, TransformError> {
    let ua = power_law(params.p, params.sigma).map_err(|_| TransformError::InvalidPowerLaw)?;
    let mut samples = Vec::with_capacity(traj.samples.len());
    let mut derivs = Vec::with_capacity(traj.samples.len());
    for (i, &(z, y)) in traj.samples.iter().enumerate() {
        let x = z.exp();
        let (v, vdot) = (y[0], y[1]);
        let (ua_v, ua_d, ua_dd) = (ua.eval(x), ua.deriv(x), ua.second_deriv(x));
        let vp = vdot / x;
        let u = ua_v * v;
        let du = ua_d * v + ua_v * vp;
        let vddot = traj.derivs[i][1];
        let vpp = (vddot - vdot) / (x * x);
        let d2u = ua_dd * v + 2.0 * ua_d * vp + ua_v * vpp;
        samples.push((x, [u, du]));
        derivs.push([du, d2u]);
    }
    Ok(Trajectory {
        samples,
        derivs,
        termination: traj.termination.clone(),
        tolerance_used: traj.tolerance_used,
    })
}
