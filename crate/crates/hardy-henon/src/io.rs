//! Serialization helpers: deterministic JSON with floats at 17 significant
//! digits and fixed field order, plus the CSV layouts used by the CLI.

use crate::atlas::AtlasRecord;
use crate::closed_form::ClosedForm;
use crate::lienard::LienardSystem;
use crate::numerics::Trajectory;
use serde::Serialize;
use std::io::Write;

struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        // 17 significant digits round-trips every f64 and is byte-stable.
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize with fixed field order (struct declaration order) and floats at
/// 17 significant digits. Identical inputs give byte-identical output.
pub fn to_json(value: &impl Serialize) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value
        .serialize(&mut ser)
        .expect("serialization of plain data cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Atlas CSV with the exact column order `n,p,sigma,domain,exists,rationale`.
pub fn write_atlas_csv(records: &[AtlasRecord], w: impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["n", "p", "sigma", "domain", "exists", "rationale"])?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            fmt_float(r.p),
            fmt_float(r.sigma),
            r.domain.to_string(),
            r.exists.to_string(),
            r.rationale.clone(),
        ])?;
    }
    w.flush()
}

/// Closed-form samples CSV: columns `x,u,du,d2u`.
pub fn write_form_samples_csv(
    form: &ClosedForm,
    grid: &[f64],
    w: impl Write,
) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["x", "u", "du", "d2u"])?;
    for row in form.sample(grid) {
        w.write_record(row.iter().map(|v| fmt_float(*v)))?;
    }
    w.flush()
}

/// Phase-plane trajectory CSV: columns `z,V,Vdot,E`.
pub fn write_orbit_csv(
    sys: &LienardSystem,
    traj: &Trajectory,
    w: impl Write,
) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["z", "V", "Vdot", "E"])?;
    for &(z, y) in &traj.samples {
        let e = sys.energy(y).map(fmt_float).unwrap_or_else(|_| "nan".into());
        w.write_record([fmt_float(z), fmt_float(y[0]), fmt_float(y[1]), e])?;
    }
    w.flush()
}

/// Family-member CSV: columns `x,u,du`.
pub fn write_member_csv(traj: &Trajectory, w: impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["x", "u", "du"])?;
    for &(x, y) in &traj.samples {
        w.write_record([fmt_float(x), fmt_float(y[0]), fmt_float(y[1])])?;
    }
    w.flush()
}

/// Radial shot CSV: columns `r,u,du`.
pub fn write_shot_csv(traj: &Trajectory, w: impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(["r", "u", "du"])?;
    for &(r, y) in &traj.samples {
        w.write_record([fmt_float(r), fmt_float(y[0]), fmt_float(y[1])])?;
    }
    w.flush()
}

/// Shortest round-trip representation, for CSV cells.
pub fn fmt_float(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Sample {
        schema_version: u32,
        value: f64,
        flag: bool,
    }

    #[test]
    fn json_floats_have_17_significant_digits() {
        let s = to_json(&Sample {
            schema_version: 1,
            value: 0.5,
            flag: true,
        });
        assert_eq!(
            s,
            "{\"schema_version\":1,\"value\":5.0000000000000000e-1,\"flag\":true}"
        );
        // Parses back to the exact value.
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["value"].as_f64().unwrap(), 0.5);
    }

    #[test]
    fn json_is_byte_deterministic() {
        let mk = || {
            to_json(&Sample {
                schema_version: 1,
                value: std::f64::consts::PI,
                flag: false,
            })
        };
        assert_eq!(mk(), mk());
    }

    #[test]
    fn form_samples_csv_layout() {
        let form = crate::closed_form::power_law(-4.0, 1.0).unwrap();
        let mut buf = Vec::new();
        write_form_samples_csv(&form, &[1.0, 2.0], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,u,du,d2u");
        let row: Vec<f64> = lines
            .next()
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(row[0], 1.0);
        assert!((row[1] - form.eval(1.0)).abs() < 1e-15);
        assert!((row[2] - form.deriv(1.0)).abs() < 1e-15);
        assert!((row[3] - form.second_deriv(1.0)).abs() < 1e-15);
    }

    #[test]
    fn closed_form_json_shape() {
        let form = crate::closed_form::family_member(1.0).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&form)).unwrap();
        assert_eq!(v["variant"], "PowerProduct");
        assert!(v["parameters"]["alpha"].as_f64().unwrap() == 1.0);
    }

    #[test]
    fn atlas_csv_column_order() {
        use crate::atlas::{atlas_export, Domain, RawParams};
        let records = atlas_export(&[RawParams {
            n: 3,
            p: 5.0,
            sigma: 0.0,
            domain: Domain::FullSpace,
        }])
        .unwrap();
        let mut buf = Vec::new();
        write_atlas_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "n,p,sigma,domain,exists,rationale");
        assert_eq!(lines.next().unwrap(), "3,5,0,full,true,T1.supercritical");
    }
}
