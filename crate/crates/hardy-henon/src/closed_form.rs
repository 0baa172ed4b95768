//! Explicit solution families with exact first and second derivatives, and
//! the strong-form residual diagnostic
//! `u'' + ((n-1)/x) u' + x^sigma u^p` evaluated pointwise on a grid.

use crate::atlas::ProblemParams;
use crate::numerics::Trajectory;
use serde::{Deserialize, Serialize};

/// Evaluatable solution descriptor. All variants are classical solutions of
/// the equation away from the origin for their defining parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "parameters")]
pub enum ClosedForm {
    /// `u = C x^a`.
    PowerLaw { coeff: f64, exponent: f64 },
    /// `u = C x^a (1 + alpha x)^b`.
    PowerProduct {
        coeff: f64,
        exponent: f64,
        alpha: f64,
        outer_exponent: f64,
    },
    /// `u = sqrt(x) (c1 sin((sqrt(3)/2) log x) + c2 cos((sqrt(3)/2) log x))`,
    /// the general solution of `x^2 u'' + u = 0`.
    CauchyEuler { c1: f64, c2: f64 },
    /// `u = (n(n-2))^{(n-2)/4} (1 + r^2)^{-(n-2)/2}`, the radial solution at
    /// the critical exponent for `sigma = 0`, `n >= 3`.
    Bubble { n: u32 },
}

const CAUCHY_OMEGA: f64 = 0.866025403784438646763723170752936183; // sqrt(3)/2

#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormError {
    /// `p = 1` or `sigma = -2`: the power-law exponent degenerates.
    DegenerateExponent,
    /// `a(1-a) <= 0`: no real positive coefficient, the power law is not a
    /// positive solution.
    NotPositive { a: f64 },
    /// Family members with `alpha < 0` are not global positive solutions.
    NegativeAlpha,
    /// Residual undefined: `u <= 0` at a grid point with non-integer `p`.
    NonPositiveValue { x: f64 },
    /// Grid point at or below the origin.
    NonPositiveGridPoint { x: f64 },
    /// Trajectory residual requested outside the sampled span.
    OutsideSpan { x: f64 },
}

impl std::fmt::Display for ClosedFormError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormError::DegenerateExponent => {
                write!(f, "power law degenerates at p = 1 or sigma = -2")
            }
            ClosedFormError::NotPositive { a } => {
                write!(f, "a(1-a) <= 0 at a = {a}: no positive power-law solution")
            }
            ClosedFormError::NegativeAlpha => {
                write!(f, "family members require alpha >= 0")
            }
            ClosedFormError::NonPositiveValue { x } => {
                write!(f, "u <= 0 at x = {x} with non-integer p")
            }
            ClosedFormError::NonPositiveGridPoint { x } => {
                write!(f, "grid point x = {x} is not positive")
            }
            ClosedFormError::OutsideSpan { x } => {
                write!(f, "x = {x} outside the trajectory span")
            }
        }
    }
}

impl std::error::Error for ClosedFormError {}

impl ClosedForm {
    /// Value at `x >= 0`; at `x = 0` the continuous limit is returned.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ClosedForm::PowerLaw { coeff, exponent } => {
                if x == 0.0 {
                    if exponent > 0.0 {
                        0.0
                    } else if exponent == 0.0 {
                        coeff
                    } else {
                        f64::INFINITY
                    }
                } else {
                    coeff * x.powf(exponent)
                }
            }
            ClosedForm::PowerProduct {
                coeff,
                exponent,
                alpha,
                outer_exponent,
            } => {
                if x == 0.0 {
                    if exponent > 0.0 {
                        0.0
                    } else if exponent == 0.0 {
                        coeff
                    } else {
                        f64::INFINITY
                    }
                } else {
                    coeff * x.powf(exponent) * (1.0 + alpha * x).powf(outer_exponent)
                }
            }
            ClosedForm::CauchyEuler { c1, c2 } => {
                if x == 0.0 {
                    0.0
                } else {
                    let t = CAUCHY_OMEGA * x.ln();
                    x.sqrt() * (c1 * t.sin() + c2 * t.cos())
                }
            }
            ClosedForm::Bubble { n } => {
                let m = (n as f64) - 2.0;
                (n as f64 * m).powf(m / 4.0) * (1.0 + x * x).powf(-m / 2.0)
            }
        }
    }

    /// Analytically exact first derivative; requires `x > 0` for the
    /// power-type variants (the derivative may be infinite at the origin).
    pub fn deriv(&self, x: f64) -> f64 {
        match *self {
            ClosedForm::PowerLaw { coeff, exponent } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                coeff * exponent * x.powf(exponent - 1.0)
            }
            ClosedForm::PowerProduct {
                exponent,
                alpha,
                outer_exponent,
                ..
            } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                let u = self.eval(x);
                let l1 = exponent / x + outer_exponent * alpha / (1.0 + alpha * x);
                u * l1
            }
            ClosedForm::CauchyEuler { c1, c2 } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                let t = CAUCHY_OMEGA * x.ln();
                let g = c1 * t.sin() + c2 * t.cos();
                let gp = CAUCHY_OMEGA * (c1 * t.cos() - c2 * t.sin());
                (0.5 * g + gp) / x.sqrt()
            }
            ClosedForm::Bubble { n } => {
                let m = (n as f64) - 2.0;
                let c = (n as f64 * m).powf(m / 4.0);
                -c * m * x * (1.0 + x * x).powf(-m / 2.0 - 1.0)
            }
        }
    }

    /// Analytically exact second derivative for `x > 0`.
    pub fn second_deriv(&self, x: f64) -> f64 {
        match *self {
            ClosedForm::PowerLaw { coeff, exponent } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                coeff * exponent * (exponent - 1.0) * x.powf(exponent - 2.0)
            }
            ClosedForm::PowerProduct {
                exponent,
                alpha,
                outer_exponent,
                ..
            } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                let u = self.eval(x);
                let q = 1.0 + alpha * x;
                let l1 = exponent / x + outer_exponent * alpha / q;
                let l1p = -exponent / (x * x) - outer_exponent * alpha * alpha / (q * q);
                u * (l1 * l1 + l1p)
            }
            ClosedForm::CauchyEuler { c1, c2 } => {
                assert!(x > 0.0, "derivatives are not offered at the origin");
                // x^2 u'' + u = 0 exactly, so u'' = -u / x^2.
                let t = CAUCHY_OMEGA * x.ln();
                let g = c1 * t.sin() + c2 * t.cos();
                -g / x.powf(1.5)
            }
            ClosedForm::Bubble { n } => {
                let m = (n as f64) - 2.0;
                let c = (n as f64 * m).powf(m / 4.0);
                let w = 1.0 + x * x;
                -c * m * w.powf(-m / 2.0 - 2.0) * (w - (m + 2.0) * x * x)
            }
        }
    }

    /// Rows `(x, u, u', u'')` over `grid`, the CSV sampling layout.
    pub fn sample(&self, grid: &[f64]) -> Vec<[f64; 4]> {
        grid.iter()
            .map(|&x| [x, self.eval(x), self.deriv(x), self.second_deriv(x)])
            .collect()
    }
}

/// The power-law exponent `a = (2 + sigma)/(1 - p)`.
pub fn power_law_exponent(p: f64, sigma: f64) -> Option<f64> {
    if p == 1.0 {
        None
    } else {
        Some((2.0 + sigma) / (1.0 - p))
    }
}

/// The power-law solution `u = (a(1-a))^{1/(p-1)} x^a`, valid as a positive
/// solution exactly when `a` lies in `(0, 1)`.
pub fn power_law(p: f64, sigma: f64) -> Result<ClosedForm, ClosedFormError> {
    if p == 1.0 || sigma == -2.0 {
        return Err(ClosedFormError::DegenerateExponent);
    }
    let a = (2.0 + sigma) / (1.0 - p);
    let s = a * (1.0 - a);
    if s <= 0.0 {
        return Err(ClosedFormError::NotPositive { a });
    }
    Ok(ClosedForm::PowerLaw {
        coeff: s.powf(1.0 / (p - 1.0)),
        exponent: a,
    })
}

/// Member of the explicit one-parameter family at `(sigma, p) = (1, -4)`:
/// `u = (25/6)^{1/5} x^{3/5} (1 + alpha x)^{2/5}`. `alpha = 0` degenerates to
/// the power law.
pub fn family_member(alpha: f64) -> Result<ClosedForm, ClosedFormError> {
    if alpha < 0.0 {
        return Err(ClosedFormError::NegativeAlpha);
    }
    Ok(ClosedForm::PowerProduct {
        coeff: (25.0f64 / 6.0).powf(0.2),
        exponent: 0.6,
        alpha,
        outer_exponent: 0.4,
    })
}

/// Parameters of the family returned by [`family_member`].
pub fn family_params() -> (f64, f64) {
    (-4.0, 1.0) // (p, sigma)
}

/// General solution of the borderline equation `x^2 u'' + u = 0`.
/// Requires `(c1, c2) != (0, 0)`.
pub fn cauchy_euler(c1: f64, c2: f64) -> ClosedForm {
    assert!(
        c1 != 0.0 || c2 != 0.0,
        "cauchy_euler requires a non-trivial coefficient pair"
    );
    ClosedForm::CauchyEuler { c1, c2 }
}

/// Zeros of the Cauchy–Euler solution in `[lo, hi]`: the points
/// `x = exp((k*pi - phase)/omega)` with `phase = atan2(c2, c1)`.
pub fn cauchy_euler_zeros(c1: f64, c2: f64, lo: f64, hi: f64) -> Vec<f64> {
    assert!(c1 != 0.0 || c2 != 0.0);
    assert!(lo > 0.0 && hi > lo);
    let phase = c2.atan2(c1);
    let t_of = |x: f64| CAUCHY_OMEGA * x.ln();
    let k_lo = ((t_of(lo) + phase) / std::f64::consts::PI).ceil() as i64;
    let k_hi = ((t_of(hi) + phase) / std::f64::consts::PI).floor() as i64;
    (k_lo..=k_hi)
        .map(|k| ((k as f64 * std::f64::consts::PI - phase) / CAUCHY_OMEGA).exp())
        .collect()
}

/// Input to the residual diagnostic: either a closed form or a sampled path.
#[derive(Debug, Clone, Copy)]
pub enum SolutionRef<'a> {
    Form(&'a ClosedForm),
    Path(&'a Trajectory),
}

impl<'a> From<&'a ClosedForm> for SolutionRef<'a> {
    fn from(f: &'a ClosedForm) -> Self {
        SolutionRef::Form(f)
    }
}

impl<'a> From<&'a Trajectory> for SolutionRef<'a> {
    fn from(t: &'a Trajectory) -> Self {
        SolutionRef::Path(t)
    }
}

/// Max absolute strong-form residual `|u'' + ((n-1)/x) u' + x^sigma u^p|`
/// over the grid. Closed forms use exact derivatives; trajectories use
/// dense-output (Hermite) derivatives of the sampled `(u, u')` path.
pub fn residual(
    u: SolutionRef,
    params: &ProblemParams,
    grid: &[f64],
) -> Result<f64, ClosedFormError> {
    let n = params.n as f64;
    let p = params.p;
    let sigma = params.sigma;
    let mut worst = 0.0f64;
    for &x in grid {
        if x <= 0.0 {
            return Err(ClosedFormError::NonPositiveGridPoint { x });
        }
        let (val, d1, d2) = match u {
            SolutionRef::Form(form) => (form.eval(x), form.deriv(x), form.second_deriv(x)),
            SolutionRef::Path(traj) => {
                let y = traj
                    .interpolate(x)
                    .ok_or(ClosedFormError::OutsideSpan { x })?;
                let dy = traj
                    .interpolate_deriv(x)
                    .ok_or(ClosedFormError::OutsideSpan { x })?;
                (y[0], y[1], dy[1])
            }
        };
        if val <= 0.0 && p.fract() != 0.0 {
            return Err(ClosedFormError::NonPositiveValue { x });
        }
        let r = d2 + (n - 1.0) / x * d1 + x.powf(sigma) * val.powf(p);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::Domain;
    use crate::numerics::log_grid;

    fn half_line(p: f64, sigma: f64) -> ProblemParams {
        ProblemParams::new(1, p, sigma, Domain::HalfLine).unwrap()
    }

    #[test]
    fn power_law_flagship_coefficients() {
        // sigma = 1, p = -4: a = 3/5, C = (25/6)^{1/5}.
        let u = power_law(-4.0, 1.0).unwrap();
        match u {
            ClosedForm::PowerLaw { coeff, exponent } => {
                assert!((exponent - 0.6).abs() < 1e-15);
                assert!((coeff - (25.0f64 / 6.0).powf(0.2)).abs() < 1e-15);
                // Defining identities: a = (2+sigma)/(1-p) and C^{p-1} = a(1-a).
                let a = exponent;
                assert!((a - (2.0 + 1.0) / (1.0 - (-4.0))).abs() < 1e-12);
                assert!((coeff.powf(-5.0) / (a * (1.0 - a)) - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected power law"),
        }
    }

    #[test]
    fn power_law_exact_solution_p3() {
        // p = 3, sigma = -3: a = 1/2, C = 1/2; residual is fp noise.
        let u = power_law(3.0, -3.0).unwrap();
        match &u {
            ClosedForm::PowerLaw { coeff, exponent } => {
                assert!((exponent - 0.5).abs() < 1e-15);
                assert!((coeff - 0.5).abs() < 1e-15);
            }
            _ => panic!(),
        }
        let params = half_line(3.0, -3.0);
        let r = residual((&u).into(), &params, &log_grid(1e-3, 1e3, 121)).unwrap();
        assert!(r < 1e-12, "residual {r:e}");
    }

    #[test]
    fn evaluation_at_origin_returns_continuous_limit() {
        assert_eq!(power_law(-4.0, 1.0).unwrap().eval(0.0), 0.0);
        assert_eq!(family_member(2.0).unwrap().eval(0.0), 0.0);
        assert_eq!(cauchy_euler(1.0, 1.0).eval(0.0), 0.0);
        assert!((ClosedForm::Bubble { n: 4 }.eval(0.0) - 8.0f64.powf(0.5)).abs() < 1e-14);
    }

    #[test]
    fn power_law_boundary_a_equals_one() {
        assert!(matches!(
            power_law(0.0, -1.0),
            Err(ClosedFormError::NotPositive { .. })
        ));
        assert!(matches!(
            power_law(1.0, 0.5),
            Err(ClosedFormError::DegenerateExponent)
        ));
        assert!(matches!(
            power_law(0.0, -2.0),
            Err(ClosedFormError::DegenerateExponent)
        ));
    }

    #[test]
    fn family_member_zero_is_power_law() {
        let m = family_member(0.0).unwrap();
        let u = power_law(-4.0, 1.0).unwrap();
        for &x in &log_grid(1e-3, 1e3, 61) {
            assert!((m.eval(x) - u.eval(x)).abs() <= 1e-12 * u.eval(x).abs());
        }
    }

    #[test]
    fn family_member_alpha_one_value() {
        // x = 1: (25/6)^{1/5} * 2^{2/5}.
        let m = family_member(1.0).unwrap();
        let expect = (25.0f64 / 6.0).powf(0.2) * 2.0f64.powf(0.4);
        assert!((m.eval(1.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn family_member_negative_alpha_rejected() {
        assert!(matches!(
            family_member(-0.1),
            Err(ClosedFormError::NegativeAlpha)
        ));
    }

    #[test]
    fn family_residuals_small() {
        let params = half_line(-4.0, 1.0);
        let grid = log_grid(1e-3, 1e3, 121);
        for alpha in [0.0, 0.6, 1.0] {
            let m = family_member(alpha).unwrap();
            let r = residual((&m).into(), &params, &grid).unwrap();
            assert!(r < 1e-10, "alpha={alpha}: residual {r:e}");
        }
    }

    #[test]
    fn two_solution_example_matches_family() {
        // C2 |x|^{3/5} (3|x| + 5)^{2/5} with C2 = 6^{-1/5} equals the family
        // member at alpha = 3/5.
        let m = family_member(0.6).unwrap();
        let c2 = 6.0f64.powf(-0.2);
        for &x in &log_grid(0.01, 100.0, 201) {
            let direct = c2 * x.powf(0.6) * (3.0 * x + 5.0).powf(0.4);
            assert!(
                (m.eval(x) - direct).abs() <= 1e-12 * direct,
                "x={x}: {} vs {}",
                m.eval(x),
                direct
            );
        }
    }

    #[test]
    fn cauchy_euler_cosine_at_one() {
        let u = cauchy_euler(0.0, 1.0);
        assert!((u.eval(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cauchy_euler_zero_lattice() {
        // c2 = 0: zeros at exp(2k pi / sqrt(3)).
        let zs = cauchy_euler_zeros(1.0, 0.0, 0.5, 100.0);
        let u = cauchy_euler(1.0, 0.0);
        assert!(!zs.is_empty());
        for z in &zs {
            assert!(u.eval(*z).abs() < 1e-10 * z.sqrt());
            let k = (CAUCHY_OMEGA * z.ln() / std::f64::consts::PI).round();
            let lattice = (k * std::f64::consts::PI / CAUCHY_OMEGA).exp();
            assert!((z - lattice).abs() < 1e-9 * lattice);
        }
    }

    #[test]
    fn cauchy_euler_always_changes_sign() {
        // Any non-trivial solution has a sign change within one oscillation
        // period [1, exp(2 pi / sqrt(3))].
        let hi = (2.0 * std::f64::consts::PI / 3.0f64.sqrt()).exp() * 1.0001;
        for (c1, c2) in [(1.0, 0.0), (0.0, 1.0), (0.3, -0.7), (-2.0, 1.5)] {
            let zs = cauchy_euler_zeros(c1, c2, 1.0, hi);
            assert!(!zs.is_empty(), "({c1},{c2}) had no zero");
        }
    }

    #[test]
    fn bubble_satisfies_critical_equation() {
        let u = ClosedForm::Bubble { n: 3 };
        let params = ProblemParams::new(3, 5.0, 0.0, Domain::FullSpace).unwrap();
        let r = residual((&u).into(), &params, &log_grid(1e-3, 1e3, 121)).unwrap();
        assert!(r < 1e-10, "residual {r:e}");
        assert!((u.eval(0.0) - 3.0f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn residual_of_integrated_trajectory() {
        // Integrate the equation from power-law initial data and feed the
        // sampled path back through the residual diagnostic; the dense-output
        // second derivative keeps it near the integrator's accuracy.
        use crate::numerics::{integrate_ivp, EventSpec};
        let (p, sigma) = (-4.0, 1.0);
        let u = power_law(p, sigma).unwrap();
        let field = |x: f64, y: [f64; 2]| [y[1], -x.powf(sigma) * y[0].powf(p)];
        let traj = integrate_ivp(
            field,
            [u.eval(1.0), u.deriv(1.0)],
            (1.0, 20.0),
            1e-10,
            &EventSpec::none(),
        )
        .unwrap();
        let params = half_line(p, sigma);
        let grid = log_grid(1.1, 19.0, 50);
        let r = residual((&traj).into(), &params, &grid).unwrap();
        // The interpolated second derivative is O(h^2) accurate, so the
        // diagnostic sits well above the integrator tolerance.
        assert!(r < 1e-5, "trajectory residual {r:e}");
        // Outside the sampled span the diagnostic refuses.
        assert!(matches!(
            residual((&traj).into(), &params, &[0.5]),
            Err(ClosedFormError::OutsideSpan { .. })
        ));
    }

    #[test]
    fn residual_rejects_bad_grid_points() {
        let u = power_law(-4.0, 1.0).unwrap();
        let params = half_line(-4.0, 1.0);
        assert!(matches!(
            residual((&u).into(), &params, &[1.0, -2.0]),
            Err(ClosedFormError::NonPositiveGridPoint { .. })
        ));
    }

    #[test]
    fn residual_rejects_nonpositive_values_for_fractional_p() {
        let u = cauchy_euler(1.0, 0.0); // oscillates, takes negative values
        let params = half_line(0.5, -2.0);
        let r = residual((&u).into(), &params, &log_grid(1.0, 50.0, 40));
        assert!(matches!(r, Err(ClosedFormError::NonPositiveValue { .. })));
    }

    #[test]
    fn scaling_fixed_point_of_power_law() {
        // lambda^{(2+sigma)/(p-1)} u(lambda x) = u(x) exactly.
        let (p, sigma) = (-4.0, 1.0);
        let u = power_law(p, sigma).unwrap();
        for lambda in [0.5, 2.0, 10.0] {
            let pref = f64::powf(lambda, (2.0 + sigma) / (p - 1.0));
            for &x in &log_grid(1e-2, 1e2, 41) {
                let lhs = pref * u.eval(lambda * x);
                let rhs = u.eval(x);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        // Central difference of deriv converges to second_deriv at O(h^2).
        let forms = [
            family_member(1.0).unwrap(),
            power_law(-4.0, 1.0).unwrap(),
            cauchy_euler(0.7, -0.3),
            ClosedForm::Bubble { n: 4 },
        ];
        for f in &forms {
            let x = 1.37;
            let err_at = |h: f64| {
                let fd = (f.deriv(x + h) - f.deriv(x - h)) / (2.0 * h);
                (fd - f.second_deriv(x)).abs()
            };
            let e1 = err_at(1e-3);
            let e2 = err_at(5e-4);
            // Ratio approaches 4 as h halves; allow slack for fp noise.
            assert!(e2 < e1 / 2.0, "e1={e1:e} e2={e2:e} for {f:?}");
        }
    }

    #[test]
    fn family_order_in_alpha() {
        let grid = log_grid(1e-3, 100.0, 200);
        let pairs = [(0.5, 0.0), (1.0, 0.5), (2.0, 1.9)];
        for (hi, lo) in pairs {
            let uh = family_member(hi).unwrap();
            let ul = family_member(lo).unwrap();
            for &x in &grid {
                assert!(uh.eval(x) > ul.eval(x), "alpha order violated at x={x}");
            }
        }
    }
}
