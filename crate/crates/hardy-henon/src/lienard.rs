//! The autonomous phase-plane engine for
//! `V'' + (2a-1) V' + a(1-a) (V^p - V) = 0`:
//! equilibria, linearization, energy functional, orbit integration and
//! classification, and whole-portrait sweeps.

use crate::atlas::ProblemParams;
use crate::closed_form::power_law_exponent;
use crate::exec;
use crate::numerics::{
    integrate_ivp, quadratic_roots, EventSpec, IvpError, RootPair, State, Trajectory,
    ZeroCrossingSpec,
};
use crate::numerics::Event;
use serde::{Deserialize, Serialize};

pub const LABEL_ORIGIN: &str = "origin";
pub const LABEL_ONE: &str = "one";

/// Default escape threshold: blow-ups in the underlying problem are genuine
/// infinities, any large cap classifies them.
pub const ESCAPE_THRESHOLD: f64 = 1e8;
/// Equilibrium convergence tolerance used by orbit runs.
pub const EQUILIBRIUM_TOL: f64 = 1e-6;
/// Phase-space closure tolerance for periodic-orbit detection.
pub const POINCARE_TOL: f64 = 1e-6;
/// Offset of unstable-manifold launches along the eigendirection.
pub const MANIFOLD_LAUNCH_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum LienardError {
    /// `a` must lie in `(0,1)` so the stiffness `a(1-a)` is positive.
    InvalidShape { a: f64 },
    /// Construction from problem parameters needs a valid power law.
    InvalidPowerLaw,
    /// `V^p` undefined: `V <= 0` with `p < 0`, or `V < 0` with fractional `p`.
    UndefinedPower { v: f64 },
    /// Potential undefined at this argument (`w < 0`, or `w = 0` with
    /// `p <= -1`).
    PotentialSingularity { w: f64 },
}

impl std::fmt::Display for LienardError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LienardError::InvalidShape { a } => write!(f, "a = {a} outside (0,1)"),
            LienardError::InvalidPowerLaw => {
                write!(f, "parameters do not admit a power law with a in (0,1)")
            }
            LienardError::UndefinedPower { v } => write!(f, "V^p undefined at V = {v}"),
            LienardError::PotentialSingularity { w } => {
                write!(f, "potential undefined at w = {w}")
            }
        }
    }
}

impl std::error::Error for LienardError {}

/// Coefficients of the autonomous reduction: `a` in `(0,1)` and the
/// nonlinearity exponent `p`. Damping is `2a-1`, stiffness `a(1-a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LienardSystem {
    a: f64,
    p: f64,
}

/// The two rest points of the reduced flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumPoint {
    Origin,
    One,
}

impl LienardSystem {
    pub fn new(a: f64, p: f64) -> Result<Self, LienardError> {
        if !(a > 0.0 && a < 1.0) || !a.is_finite() || !p.is_finite() {
            return Err(LienardError::InvalidShape { a });
        }
        Ok(LienardSystem { a, p })
    }

    /// Build from the originating `(p, sigma)` with `a = (2+sigma)/(1-p)`.
    pub fn from_problem(params: &ProblemParams) -> Result<Self, LienardError> {
        let a = power_law_exponent(params.p, params.sigma).ok_or(LienardError::InvalidPowerLaw)?;
        if !(a > 0.0 && a < 1.0) {
            return Err(LienardError::InvalidPowerLaw);
        }
        LienardSystem::new(a, params.p)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn damping(&self) -> f64 {
        2.0 * self.a - 1.0
    }

    pub fn stiffness(&self) -> f64 {
        self.a * (1.0 - self.a)
    }

    /// `(2a-1)^2 - 4a(1-a)(p-1)`; negative means spiral behavior at `V = 1`.
    pub fn discriminant(&self) -> f64 {
        let d = self.damping();
        d * d - 4.0 * self.stiffness() * (self.p - 1.0)
    }

    /// The spiral/node threshold `p = (4a(1-a))^{-1}`.
    pub fn p_threshold(&self) -> f64 {
        1.0 / (4.0 * self.stiffness())
    }

    /// Right-hand side `(Vdot, Vddot)` of the first-order system.
    pub fn vector_field(&self, state: State) -> Result<State, LienardError> {
        let (v, vdot) = (state[0], state[1]);
        let below_axis = v < 0.0 || (v == 0.0 && self.p < 0.0);
        if below_axis && (self.p < 0.0 || self.p.fract() != 0.0) {
            return Err(LienardError::UndefinedPower { v });
        }
        let vddot = -self.damping() * vdot - self.stiffness() * (v.powf(self.p) - v);
        Ok([vdot, vddot])
    }

    /// Unchecked field for the integrator; leaves domain violations as NaN
    /// for the step controller to reject.
    fn raw_field(&self) -> impl Fn(f64, State) -> State + Copy + '_ {
        let (damping, stiffness, p) = (self.damping(), self.stiffness(), self.p);
        move |_z, y| {
            [
                y[1],
                -damping * y[1] - stiffness * (y[0].powf(p) - y[0]),
            ]
        }
    }

    /// Potential `F(w) = int_1^w a(1-a) v (v^{p-1} - 1) dv`, with the log
    /// form at `p = -1` where the antiderivative changes branch.
    pub fn potential(&self, w: f64) -> Result<f64, LienardError> {
        let c = self.stiffness();
        let p = self.p;
        if w < 0.0 || (w == 0.0 && p <= -1.0) {
            return Err(LienardError::PotentialSingularity { w });
        }
        if p == -1.0 {
            return Ok(c * (w.ln() - w * w / 2.0 + 0.5));
        }
        let wp1 = if w == 0.0 && p + 1.0 > 0.0 {
            0.0
        } else {
            w.powf(p + 1.0)
        };
        Ok(c / (2.0 * (p + 1.0)) * (2.0 * wp1 - (p + 1.0) * w * w + p - 1.0))
    }

    /// Total energy `E = |Vdot|^2 / 2 + F(V)`.
    pub fn energy(&self, state: State) -> Result<f64, LienardError> {
        Ok(0.5 * state[1] * state[1] + self.potential(state[0])?)
    }

    /// Characteristic roots of the linearization. At the origin these are
    /// `(1-a, -a)` exactly, by the identity `(2a-1)^2 + 4a(1-a) = 1`.
    pub fn linearize(&self, at: EquilibriumPoint) -> RootPair {
        match at {
            EquilibriumPoint::Origin => RootPair::RealPair {
                mu_plus: 1.0 - self.a,
                mu_minus: -self.a,
            },
            EquilibriumPoint::One => {
                quadratic_roots(self.damping(), self.stiffness() * (self.p - 1.0))
            }
        }
    }

    /// Zero-crossing trigger appropriate for this nonlinearity: a plain zero
    /// for integer `p >= 0`, a small floor otherwise (the field is singular
    /// or undefined past the axis), with the leading-order extrapolation
    /// factor for the singular touch.
    pub fn crossing_spec(&self) -> ZeroCrossingSpec {
        crossing_spec_for_power(self.p, 1.0)
    }

    fn default_events(&self) -> EventSpec {
        let mut spec = EventSpec::none()
            .with_zero_crossing(self.crossing_spec())
            .with_escape(ESCAPE_THRESHOLD)
            .with_equilibrium(LABEL_ONE, [1.0, 0.0], EQUILIBRIUM_TOL);
        if self.p > 0.0 {
            spec = spec.with_equilibrium(LABEL_ORIGIN, [0.0, 0.0], EQUILIBRIUM_TOL);
        }
        spec
    }
}

/// Zero trigger for a solution component governed by the power `p`, with
/// `scale` the natural size of the component.
pub fn crossing_spec_for_power(p: f64, scale: f64) -> ZeroCrossingSpec {
    if p < 0.0 {
        // Singular touch: u ~ A (x*-x)^{2/(1-p)}; stop at a floor and
        // extrapolate to the zero.
        ZeroCrossingSpec::floored(0, 1e-4 * scale, 2.0 / (1.0 - p))
    } else if p.fract() != 0.0 {
        // Transversal crossing but V^p undefined below the axis.
        ZeroCrossingSpec::floored(0, 1e-9 * scale, 1.0)
    } else {
        ZeroCrossingSpec::plain(0)
    }
}

/// Integrate one orbit with the standard event set (axis crossing, escape,
/// equilibrium convergence).
pub fn integrate_orbit(
    sys: &LienardSystem,
    initial: State,
    z_span: (f64, f64),
    tol: f64,
) -> Result<Trajectory, IvpError> {
    integrate_orbit_with(sys, initial, z_span, tol, &sys.default_events())
}

/// Integrate one orbit with a caller-supplied event specification.
pub fn integrate_orbit_with(
    sys: &LienardSystem,
    initial: State,
    z_span: (f64, f64),
    tol: f64,
    events: &EventSpec,
) -> Result<Trajectory, IvpError> {
    integrate_ivp(sys.raw_field(), initial, z_span, tol, events)
}

/// A phase-plane orbit through `seed`: forward trajectory over
/// `[0, z_extent]` and backward over `[0, -z_extent]`.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub seed: State,
    pub forward: Trajectory,
    pub backward: Option<Trajectory>,
}

/// Build the bidirectional orbit through `seed`.
pub fn run_orbit(
    sys: &LienardSystem,
    seed: State,
    z_extent: f64,
    tol: f64,
) -> Result<Orbit, IvpError> {
    let forward = integrate_orbit(sys, seed, (0.0, z_extent), tol)?;
    let backward = integrate_orbit(sys, seed, (0.0, -z_extent), tol)?;
    Ok(Orbit {
        seed,
        forward,
        backward: Some(backward),
    })
}

/// Forward orbit launched a distance `eps` out along the unstable
/// eigendirection of the origin. No backward leg: behind the seed the orbit
/// is the local unstable manifold by construction, and a backward
/// integration would be dominated by the O(eps^2) off-manifold error, which
/// grows under the reversed flow.
pub fn manifold_orbit(
    sys: &LienardSystem,
    eps: f64,
    z_extent: f64,
    tol: f64,
) -> Result<Orbit, IvpError> {
    let seed = unstable_manifold_seed(sys, eps);
    let forward = integrate_orbit(sys, seed, (0.0, z_extent), tol)?;
    Ok(Orbit {
        seed,
        forward,
        backward: None,
    })
}

/// Qualitative class of an orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OrbitClass {
    Heteroclinic { from: String, to: String },
    Homoclinic { at: String },
    Periodic { period: f64 },
    SignChanging { first_zero: f64 },
    Unbounded,
    ConvergentToOne,
}

impl std::fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitClass::Heteroclinic { from, to } => write!(f, "heteroclinic({from}->{to})"),
            OrbitClass::Homoclinic { at } => write!(f, "homoclinic({at})"),
            OrbitClass::Periodic { period } => write!(f, "periodic(T={period})"),
            OrbitClass::SignChanging { first_zero } => write!(f, "sign-changing(z={first_zero})"),
            OrbitClass::Unbounded => write!(f, "unbounded"),
            OrbitClass::ConvergentToOne => write!(f, "convergent-to-one"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ClassifyError {
    /// Span too short to decide; the caller extends `z_extent`.
    Inconclusive,
}

impl std::fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "orbit classification inconclusive: extend the z-span")
    }
}

impl std::error::Error for ClassifyError {}

fn terminal_equilibrium(traj: &Trajectory) -> Option<&str> {
    match &traj.termination {
        Event::ConvergedToEquilibrium { label, .. } => Some(label.as_str()),
        _ => None,
    }
}

/// Interpolated downward crossings of the section `Vdot = 0, V > 1` on a
/// trajectory, in order.
fn poincare_crossings(traj: &Trajectory) -> Vec<(f64, State)> {
    let mut out = Vec::new();
    let n = traj.samples.len();
    for i in 0..n.saturating_sub(1) {
        let (z0, y0) = traj.samples[i];
        let (z1, y1) = traj.samples[i + 1];
        if y0[1] > 0.0 && y1[1] <= 0.0 && y0[0] > 1.0 {
            // Bisect Vdot = 0 on the Hermite interpolant.
            let (mut lo, mut hi) = (z0, z1);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let v = traj.interpolate(mid).unwrap();
                if v[1] > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let z_star = 0.5 * (lo + hi);
            let y_star = traj.interpolate(z_star).unwrap();
            if y_star[0] > 1.0 {
                out.push((z_star, y_star));
            }
        }
    }
    out
}

/// Deterministic classification of a bidirectional orbit.
pub fn classify_orbit(sys: &LienardSystem, orbit: &Orbit) -> Result<OrbitClass, ClassifyError> {
    let _ = sys;
    // Degenerate seed sitting at the positive equilibrium.
    if (orbit.seed[0] - 1.0).abs() <= EQUILIBRIUM_TOL && orbit.seed[1].abs() <= EQUILIBRIUM_TOL {
        return Ok(OrbitClass::ConvergentToOne);
    }

    // A crossing of the axis in either direction makes the solution
    // sign-changing in the u-picture.
    for traj in std::iter::once(&orbit.forward).chain(orbit.backward.iter()) {
        if let Event::ZeroCrossing { location } = traj.termination {
            return Ok(OrbitClass::SignChanging {
                first_zero: location,
            });
        }
    }
    for traj in std::iter::once(&orbit.forward).chain(orbit.backward.iter()) {
        if matches!(traj.termination, Event::Escape { .. }) {
            return Ok(OrbitClass::Unbounded);
        }
    }

    // Periodic: a Poincare return within tolerance of an earlier section
    // crossing.
    let mut crossings = Vec::new();
    if orbit.seed[1] == 0.0 && orbit.seed[0] > 1.0 {
        crossings.push((0.0, orbit.seed));
    }
    crossings.extend(poincare_crossings(&orbit.forward));
    if crossings.len() >= 2 {
        let (z0, y0) = crossings[0];
        let (z1, y1) = crossings[1];
        let gap = (y1[0] - y0[0]).abs().max((y1[1] - y0[1]).abs());
        if gap < POINCARE_TOL {
            return Ok(OrbitClass::Periodic { period: z1 - z0 });
        }
    }

    let fwd = terminal_equilibrium(&orbit.forward);
    let bwd = orbit.backward.as_ref().and_then(terminal_equilibrium);
    // Without a backward run, a seed placed on a local manifold close to an
    // equilibrium stands in for the backward end.
    let bwd = bwd.or_else(|| {
        if orbit.backward.is_some() {
            return None;
        }
        let near = |pt: State, lbl: &'static str| {
            if (orbit.seed[0] - pt[0]).abs().max((orbit.seed[1] - pt[1]).abs()) < 5e-2 {
                Some(lbl)
            } else {
                None
            }
        };
        near([0.0, 0.0], LABEL_ORIGIN).or_else(|| near([1.0, 0.0], LABEL_ONE))
    });

    match (bwd, fwd) {
        (Some(b), Some(f)) if b == f => Ok(OrbitClass::Homoclinic { at: b.to_string() }),
        (Some(b), Some(f)) => Ok(OrbitClass::Heteroclinic {
            from: b.to_string(),
            to: f.to_string(),
        }),
        (None, Some(LABEL_ONE)) => Ok(OrbitClass::ConvergentToOne),
        _ => Err(ClassifyError::Inconclusive),
    }
}

/// `integral(Vdot^2 dz)` along the trajectory, by trapezoid over the
/// accepted steps with endpoint-derivative corrections (Euler-Maclaurin up
/// to the h^4 term). The derivatives of `Vdot^2` at the nodes follow
/// analytically from the equation, so the result is accurate to O(h^6) per
/// step and tracks the integrator tolerance.
pub fn dissipation_integral(sys: &LienardSystem, traj: &Trajectory) -> f64 {
    let (b, c, p) = (sys.damping(), sys.stiffness(), sys.p());
    // f = Vdot^2 and its first/third z-derivatives at a node.
    let node = |y: State| {
        let (v, v1) = (y[0], y[1]);
        let v2 = -b * v1 - c * (v.powf(p) - v);
        let v3 = -b * v2 - c * (p * v.powf(p - 1.0) - 1.0) * v1;
        let v4 = -b * v3
            - c * ((p * v.powf(p - 1.0) - 1.0) * v2 + p * (p - 1.0) * v.powf(p - 2.0) * v1 * v1);
        let f = v1 * v1;
        let f1 = 2.0 * v1 * v2;
        let f3 = 6.0 * v2 * v3 + 2.0 * v1 * v4;
        (f, f1, f3)
    };
    let mut acc = 0.0;
    for w in traj.samples.windows(2) {
        let (za, ya) = w[0];
        let (zb, yb) = w[1];
        let h = zb - za;
        let (fa, fa1, fa3) = node(ya);
        let (fb, fb1, fb3) = node(yb);
        acc += 0.5 * h * (fa + fb) - h * h / 12.0 * (fb1 - fa1)
            + h.powi(4) / 720.0 * (fb3 - fa3);
    }
    acc
}

/// Seed policy for portraits: a deterministic lattice or a seeded sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SeedPolicy {
    Grid {
        v: (f64, f64),
        vdot: (f64, f64),
        nv: usize,
        nvdot: usize,
    },
    Random {
        seed: u64,
        count: usize,
        v: (f64, f64),
        vdot: (f64, f64),
    },
}

impl SeedPolicy {
    pub fn seeds(&self) -> Vec<State> {
        match *self {
            SeedPolicy::Grid { v, vdot, nv, nvdot } => {
                let mut out = Vec::with_capacity(nv * nvdot);
                for i in 0..nv {
                    let fv = if nv == 1 { 0.0 } else { i as f64 / (nv - 1) as f64 };
                    for j in 0..nvdot {
                        let fw = if nvdot == 1 {
                            0.0
                        } else {
                            j as f64 / (nvdot - 1) as f64
                        };
                        out.push([v.0 + fv * (v.1 - v.0), vdot.0 + fw * (vdot.1 - vdot.0)]);
                    }
                }
                out
            }
            SeedPolicy::Random {
                seed,
                count,
                v,
                vdot,
            } => {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| [rng.gen_range(v.0..v.1), rng.gen_range(vdot.0..vdot.1)])
                    .collect()
            }
        }
    }
}

/// One portrait entry: seed, its orbit (when integrable) and class or error.
#[derive(Debug, Clone)]
pub struct PortraitEntry {
    pub seed: State,
    pub orbit: Option<Orbit>,
    pub class: Result<OrbitClass, String>,
}

/// Full portrait report with the discriminant split that separates the
/// qualitative regimes.
#[derive(Debug, Clone)]
pub struct PortraitReport {
    pub a: f64,
    pub p: f64,
    pub discriminant: f64,
    pub p_threshold: f64,
    pub entries: Vec<PortraitEntry>,
}

/// Integrate and classify every seed; per-seed failures are collected, not
/// fatal. Entries come back in seed order.
pub fn portrait(
    sys: &LienardSystem,
    policy: &SeedPolicy,
    z_extent: f64,
    tol: f64,
) -> PortraitReport {
    let seeds = policy.seeds();
    let entries = exec::map_collect(&seeds, |&seed| match run_orbit(sys, seed, z_extent, tol) {
        Ok(orbit) => {
            let class = classify_orbit(sys, &orbit).map_err(|e| e.to_string());
            PortraitEntry {
                seed,
                orbit: Some(orbit),
                class,
            }
        }
        Err(e) => PortraitEntry {
            seed,
            orbit: None,
            class: Err(e.to_string()),
        },
    });
    PortraitReport {
        a: sys.a(),
        p: sys.p(),
        discriminant: sys.discriminant(),
        p_threshold: sys.p_threshold(),
        entries,
    }
}

/// Launch state at distance `eps` along the unstable eigendirection of the
/// origin, `(1, 1-a)` normalized by the V-component.
pub fn unstable_manifold_seed(sys: &LienardSystem, eps: f64) -> State {
    [eps, eps * (1.0 - sys.a())]
}

/// Solve `F(v) = e0` for `v > 1` by bisection; the homoclinic/periodic level
/// sets are seeded at `(v, 0)`.
pub fn level_set_touch(sys: &LienardSystem, e0: f64) -> Option<f64> {
    let f = |v: f64| sys.potential(v).unwrap() - e0;
    let mut hi = 1.0 + 1e-3;
    while f(hi) < 0.0 {
        hi *= 1.5;
        if hi > 1e6 {
            return None;
        }
    }
    let mut lo = 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::Domain;

    fn sys(a: f64, p: f64) -> LienardSystem {
        LienardSystem::new(a, p).unwrap()
    }

    #[test]
    fn construction_from_problem_params() {
        let params = ProblemParams::new(1, 5.0, -4.0, Domain::HalfLine).unwrap();
        let s = LienardSystem::from_problem(&params).unwrap();
        assert!((s.a() - 0.5).abs() < 1e-15);
        assert_eq!(s.damping(), 0.0);
        assert!((s.stiffness() - 0.25).abs() < 1e-15);

        let bad = ProblemParams::new(1, 0.5, 0.5, Domain::HalfLine).unwrap();
        assert!(LienardSystem::from_problem(&bad).is_err());
    }

    #[test]
    fn vector_field_equilibria_and_sample_value() {
        let s = sys(0.5, 5.0);
        assert_eq!(s.vector_field([0.0, 0.0]).unwrap(), [0.0, 0.0]);
        assert_eq!(s.vector_field([1.0, 0.0]).unwrap(), [0.0, 0.0]);

        // (a, p) = (3/5, -4) at (2, 0): Vddot = -0.24 (2^{-4} - 2) = 93/200.
        let s = sys(0.6, -4.0);
        let f = s.vector_field([2.0, 0.0]).unwrap();
        assert!((f[1] - 0.465).abs() < 1e-15, "got {}", f[1]);

        assert!(matches!(
            s.vector_field([0.0, 1.0]),
            Err(LienardError::UndefinedPower { .. })
        ));
    }

    #[test]
    fn energy_reference_values() {
        let s = sys(0.5, 5.0);
        assert_eq!(s.energy([1.0, 0.0]).unwrap(), 0.0);
        assert!((s.energy([1.0, 0.3]).unwrap() - 0.045).abs() < 1e-15);
        // E(0,0) = a(1-a)(p-1)/(2(p+1)).
        assert!((s.energy([0.0, 0.0]).unwrap() - 1.0 / 12.0).abs() < 1e-15);

        let s = sys(2.0 / 3.0, 4.0);
        assert!((s.energy([0.0, 0.0]).unwrap() - 1.0 / 15.0).abs() < 1e-12);
    }

    #[test]
    fn potential_log_form_at_p_minus_one() {
        let s = sys(0.3, -1.0);
        assert_eq!(s.potential(1.0).unwrap(), 0.0);
        // F'(w) = a(1-a) w (w^{p-1} - 1) checked by central differences.
        let w = 0.7;
        let h = 1e-6;
        let fd = (s.potential(w + h).unwrap() - s.potential(w - h).unwrap()) / (2.0 * h);
        let expect = s.stiffness() * w * (w.powf(-2.0) - 1.0);
        assert!((fd - expect).abs() < 1e-7);
        assert!(matches!(
            s.potential(0.0),
            Err(LienardError::PotentialSingularity { .. })
        ));
    }

    #[test]
    fn potential_minimum_at_one() {
        // For p > 1 (the conservative/dissipative phase-plane cases) F has
        // its global minimum 0 at w = 1.
        for (a, p) in [(0.5, 5.0), (2.0 / 3.0, 4.0), (0.4, 2.0)] {
            let s = sys(a, p);
            assert_eq!(s.potential(1.0).unwrap(), 0.0);
            for w in [0.2, 0.5, 0.9, 1.1, 1.6, 3.0] {
                assert!(
                    s.potential(w).unwrap() > 0.0,
                    "F({w}) <= 0 for a={a}, p={p}"
                );
            }
        }
        // For p < 1 the well sits on the other side: F < 0 below w = 1.
        let s = sys(0.6, -4.0);
        assert_eq!(s.potential(1.0).unwrap(), 0.0);
        assert!(s.potential(0.5).unwrap() < 0.0);
        assert!(s.potential(1.5).unwrap() < 0.0);
    }

    #[test]
    fn linearization_reference_roots() {
        // Paper values at (a, p) = (3/5, -4): mu+ = 1, mu- = -6/5 at V = 1.
        let s = sys(0.6, -4.0);
        match s.linearize(EquilibriumPoint::One) {
            RootPair::RealPair { mu_plus, mu_minus } => {
                assert!((mu_plus - 1.0).abs() < 1e-12);
                assert!((mu_minus + 1.2).abs() < 1e-12);
            }
            _ => panic!("expected real pair"),
        }
        // Origin roots are (1-a, -a) for any a.
        for a in [0.2, 0.5, 0.85] {
            let s = sys(a, 3.0);
            match s.linearize(EquilibriumPoint::Origin) {
                RootPair::RealPair { mu_plus, mu_minus } => {
                    assert_eq!(mu_plus, 1.0 - a);
                    assert_eq!(mu_minus, -a);
                }
                _ => panic!(),
            }
        }
        // (a, p) = (2/3, 4): complex pair -1/6 +/- i sqrt(23)/6.
        let s = sys(2.0 / 3.0, 4.0);
        match s.linearize(EquilibriumPoint::One) {
            RootPair::ComplexPair {
                real_part,
                imag_part,
            } => {
                assert!((real_part + 1.0 / 6.0).abs() < 1e-12);
                assert!((imag_part - 23.0f64.sqrt() / 6.0).abs() < 1e-12);
            }
            _ => panic!("expected complex pair"),
        }
    }

    #[test]
    fn origin_linearization_vieta() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = rng.gen_range(0.01..0.99);
            let s = sys(a, 2.0);
            let (mp, mm) = s.linearize(EquilibriumPoint::Origin).real().unwrap();
            assert!((mp + mm + s.damping()).abs() < 1e-14);
            assert!((mp * mm + s.stiffness()).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_orbit_at_equilibrium() {
        let s = sys(0.5, 5.0);
        let traj = integrate_orbit(&s, [1.0, 0.0], (0.0, 10.0), 1e-10).unwrap();
        for &(_, y) in &traj.samples {
            assert!((y[0] - 1.0).abs() < 1e-12 && y[1].abs() < 1e-12);
        }
        // Sitting at the rest point registers as convergence to it.
        assert!(matches!(
            traj.termination,
            Event::ConvergedToEquilibrium { .. } | Event::ReachedSpanEnd
        ));
    }

    #[test]
    fn discriminant_boundary_case() {
        // (a, p) = (2/3, 9/8) sits exactly on the node/spiral boundary.
        let s = sys(2.0 / 3.0, 9.0 / 8.0);
        assert!(s.discriminant().abs() < 1e-15);
        assert!((s.p_threshold() - 9.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn heteroclinic_orbit_dissipative_case() {
        // a = 2/3, p = 4: unstable-manifold launch converges to (1,0).
        let s = sys(2.0 / 3.0, 4.0);
        let orbit = manifold_orbit(&s, 1e-2, 120.0, 1e-10).unwrap();
        let class = classify_orbit(&s, &orbit).unwrap();
        assert_eq!(
            class,
            OrbitClass::Heteroclinic {
                from: LABEL_ORIGIN.into(),
                to: LABEL_ONE.into()
            }
        );
        // Richardson check: halving the launch offset preserves the class.
        let orbit2 = manifold_orbit(&s, 5e-3, 120.0, 1e-10).unwrap();
        assert_eq!(classify_orbit(&s, &orbit2).unwrap(), class);
    }

    #[test]
    fn homoclinic_orbit_conservative_case() {
        // a = 1/2, p = 5: the level set E = E(0,0) = 1/12 touches the V-axis
        // at V = 3^{1/4} and closes onto the origin in both directions. The
        // declared convergence tolerance is 1e-4: the numerical energy drift
        // puts a floor of ~sqrt(2*drift) on the approach distance.
        let s = sys(0.5, 5.0);
        let e0 = s.energy([0.0, 0.0]).unwrap();
        let v_star = level_set_touch(&s, e0).unwrap();
        assert!((v_star - 3.0f64.powf(0.25)).abs() < 1e-9);
        let events = EventSpec::none()
            .with_zero_crossing(s.crossing_spec())
            .with_escape(ESCAPE_THRESHOLD)
            .with_equilibrium(LABEL_ORIGIN, [0.0, 0.0], 1e-4)
            .with_equilibrium(LABEL_ONE, [1.0, 0.0], 1e-4);
        let fwd = integrate_orbit_with(&s, [v_star, 0.0], (0.0, 40.0), 1e-10, &events).unwrap();
        let bwd = integrate_orbit_with(&s, [v_star, 0.0], (0.0, -40.0), 1e-10, &events).unwrap();
        let orbit = Orbit {
            seed: [v_star, 0.0],
            forward: fwd,
            backward: Some(bwd),
        };
        let class = classify_orbit(&s, &orbit).unwrap();
        assert_eq!(
            class,
            OrbitClass::Homoclinic {
                at: LABEL_ORIGIN.into()
            }
        );
    }

    #[test]
    fn periodic_orbit_below_homoclinic_level() {
        // E0 = 1/24 < E(0,0): a closed loop around (1,0).
        let s = sys(0.5, 5.0);
        let v_star = level_set_touch(&s, 1.0 / 24.0).unwrap();
        let orbit = run_orbit(&s, [v_star, 0.0], 40.0, 1e-10).unwrap();
        match classify_orbit(&s, &orbit).unwrap() {
            OrbitClass::Periodic { period } => assert!(period > 0.0),
            c => panic!("expected periodic, got {c}"),
        }
    }

    #[test]
    fn energy_conservative_and_dissipative() {
        // a = 1/2: E constant to 1e-8 over a 40-long span at tol 1e-10.
        let s = sys(0.5, 5.0);
        let v_star = level_set_touch(&s, 1.0 / 24.0).unwrap();
        let traj =
            integrate_orbit_with(&s, [v_star, 0.0], (0.0, 40.0), 1e-10, &EventSpec::none())
                .unwrap();
        let e0 = s.energy(traj.samples[0].1).unwrap();
        let drift = traj
            .samples
            .iter()
            .map(|&(_, y)| (s.energy(y).unwrap() - e0).abs())
            .fold(0.0f64, f64::max);
        assert!(drift < 1e-8, "conservative drift {drift:e}");

        // a > 1/2: E non-increasing along every orbit.
        let s = sys(2.0 / 3.0, 4.0);
        let traj = integrate_orbit(&s, [1.8, 0.0], (0.0, 60.0), 1e-10).unwrap();
        let mut prev = f64::INFINITY;
        for &(_, y) in &traj.samples {
            let e = s.energy(y).unwrap();
            assert!(e <= prev + 1e-10, "energy increased: {prev} -> {e}");
            prev = e;
        }
    }

    #[test]
    fn energy_law_matches_dissipation_integral() {
        let tol = 1e-10;
        let s = sys(2.0 / 3.0, 4.0);
        let traj =
            integrate_orbit_with(&s, [1.5, 0.2], (0.0, 30.0), tol, &EventSpec::none()).unwrap();
        let e0 = s.energy(traj.samples[0].1).unwrap();
        let e1 = s.energy(traj.samples.last().unwrap().1).unwrap();
        let integral = dissipation_integral(&s, &traj);
        let residual = (e1 - e0 + s.damping() * integral).abs();
        assert!(residual < 10.0 * tol, "energy-law residual {residual:e}");
    }

    #[test]
    fn reversal_symmetry_swaps_a_with_one_minus_a() {
        // Integrating sys(a) backward equals integrating sys(1-a) forward
        // with Vdot negated.
        let tol = 1e-11;
        let a = 2.0 / 3.0;
        // Seed well inside the energy well: backward in z the energy grows,
        // and the orbit must stay below the separatrix over the span.
        let (v0, w0) = (1.1, 0.05);
        let back = integrate_orbit_with(
            &sys(a, 4.0),
            [v0, w0],
            (0.0, -6.0),
            tol,
            &EventSpec::none(),
        )
        .unwrap();
        let fwd = integrate_orbit_with(
            &sys(1.0 - a, 4.0),
            [v0, -w0],
            (0.0, 6.0),
            tol,
            &EventSpec::none(),
        )
        .unwrap();
        for z in [1.0, 2.5, 4.0, 5.5, 6.0] {
            let yb = back.interpolate(-z).unwrap();
            let yf = fwd.interpolate(z).unwrap();
            assert!((yb[0] - yf[0]).abs() < 1e-9, "V mismatch at z={z}");
            assert!((yb[1] + yf[1]).abs() < 1e-9, "Vdot mismatch at z={z}");
        }
    }

    #[test]
    fn portrait_qualitative_topologies() {
        // Conservative spiral regime (discriminant < 0): rings near (1,0)
        // are periodic.
        let s = sys(0.5, 5.0);
        let policy = SeedPolicy::Grid {
            v: (1.05, 1.2),
            vdot: (0.0, 0.0),
            nv: 3,
            nvdot: 1,
        };
        let report = portrait(&s, &policy, 40.0, 1e-10);
        assert!(report.discriminant < 0.0);
        assert!(report
            .entries
            .iter()
            .all(|e| matches!(e.class, Ok(OrbitClass::Periodic { .. }))));

        // Dissipative spiral regime: every interior seed spirals into the
        // sink forward in z; the full orbits leave the half-plane backward
        // (energy grows under the reversed flow), so their class reports the
        // backward axis crossing.
        let s = sys(2.0 / 3.0, 4.0);
        let policy = SeedPolicy::Grid {
            v: (0.4, 1.6),
            vdot: (0.0, 0.0),
            nv: 4,
            nvdot: 1,
        };
        let report = portrait(&s, &policy, 150.0, 1e-10);
        assert!(report.discriminant < 0.0);
        for e in &report.entries {
            match &e.class {
                Ok(OrbitClass::ConvergentToOne)
                | Ok(OrbitClass::Heteroclinic { .. })
                | Ok(OrbitClass::SignChanging { .. })
                | Ok(OrbitClass::Unbounded) => {}
                other => panic!("unexpected class {other:?} for seed {:?}", e.seed),
            }
            let fwd = e.orbit.as_ref().unwrap().forward.termination.clone();
            assert!(
                matches!(fwd, Event::ConvergedToEquilibrium { ref label, .. } if label == LABEL_ONE),
                "forward end not at (1,0): {fwd:?} for seed {:?}",
                e.seed
            );
        }
    }

    #[test]
    fn node_regime_heteroclinic_stays_below_one() {
        // Discriminant >= 0 (p below the spiral threshold): (1,0) is a node
        // and the connecting orbit approaches it monotonically, so V <= 1
        // along the whole manifold orbit.
        // Both rates are slow here (growth 1-a = 0.1, slow node eigenvalue
        // ~= 0.135), so the connection needs a long span.
        let s = sys(0.9, 2.0);
        assert!(s.discriminant() > 0.0);
        assert!(s.p() < s.p_threshold());
        let orbit = manifold_orbit(&s, 1e-6, 320.0, 1e-10).unwrap();
        assert_eq!(
            classify_orbit(&s, &orbit).unwrap(),
            OrbitClass::Heteroclinic {
                from: LABEL_ORIGIN.into(),
                to: LABEL_ONE.into()
            }
        );
        let v_max = orbit
            .forward
            .samples
            .iter()
            .map(|&(_, y)| y[0])
            .fold(0.0f64, f64::max);
        assert!(v_max <= 1.0 + 1e-9, "V overshot in the node regime: {v_max}");
    }

    #[test]
    fn portrait_collects_per_seed_errors() {
        let s = sys(0.6, -4.0);
        // V <= 0 seeds are undefined for p < 0; the report keeps going.
        let policy = SeedPolicy::Grid {
            v: (-0.5, 1.5),
            vdot: (0.0, 0.0),
            nv: 2,
            nvdot: 1,
        };
        let report = portrait(&s, &policy, 10.0, 1e-8);
        assert_eq!(report.entries.len(), 2);
        assert!(report.entries[0].class.is_err());
    }
}
