//! Independent oracles for the acceptance suite: a plain fixed-step RK4
//! (classic tableau, no shared code with the adaptive integrator) and a
//! Simpson quadrature. These stay deliberately separate from the library's
//! solution paths.

/// Classic RK4 with fixed step; returns the sampled path.
pub fn rk4_fixed(
    field: impl Fn(f64, [f64; 2]) -> [f64; 2],
    y0: [f64; 2],
    span: (f64, f64),
    n_steps: usize,
) -> Vec<(f64, [f64; 2])> {
    let h = (span.1 - span.0) / n_steps as f64;
    let mut t = span.0;
    let mut y = y0;
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push((t, y));
    for _ in 0..n_steps {
        let k1 = field(t, y);
        let k2 = field(t + h / 2.0, add(y, scale(k1, h / 2.0)));
        let k3 = field(t + h / 2.0, add(y, scale(k2, h / 2.0)));
        let k4 = field(t + h, add(y, scale(k3, h)));
        for c in 0..2 {
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        t += h;
        out.push((t, y));
    }
    out
}

fn add(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] + b[0], a[1] + b[1]]
}

fn scale(a: [f64; 2], s: f64) -> [f64; 2] {
    [a[0] * s, a[1] * s]
}

/// First zero crossing of component 0 along a sampled path, linearly
/// interpolated; `None` if the component never changes sign.
pub fn first_zero(path: &[(f64, [f64; 2])]) -> Option<f64> {
    for w in path.windows(2) {
        let (t0, y0) = w[0];
        let (t1, y1) = w[1];
        if y0[0] > 0.0 && y1[0] <= 0.0 {
            let s = y0[0] / (y0[0] - y1[0]);
            return Some(t0 + s * (t1 - t0));
        }
    }
    None
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2) && n >= 2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + h * i as f64;
        acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Print the acceptance line for a criterion.
pub fn report(id: u32, name: &str, passed: bool, detail: &str) {
    println!(
        "[{}] criterion {:02}: {} ({})",
        if passed { "PASS" } else { "FAIL" },
        id,
        name,
        detail
    );
}
