//! Command-line surface: the existence atlas, solution-family constructors,
//! phase-plane runs, radial shooting, and the verification suites, all with
//! machine-readable JSON on stdout.
//!
//! Exit codes: 0 success, 1 verification finding, 2 invalid input.

use clap::{Args, Parser, Subcommand};
use hardy_henon::atlas::{atlas_export, classify, Domain, ProblemParams, RawParams};
use hardy_henon::family::{extend_family, picard_local, FamilyError};
use hardy_henon::io;
use hardy_henon::lienard::{integrate_orbit, portrait, LienardSystem, SeedPolicy};
use hardy_henon::radial::{shoot, Fate};
use hardy_henon::transforms::kelvin;
use hardy_henon::verify::{run_suite, Suite, DEFAULT_TOL};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hh",
    about = "Existence atlas and solution families for -Delta u = |x|^sigma u^p",
    version
)]
struct Cli {
    /// Optional config file with `key = value` lines supplying defaults
    /// (keys: tol, xmax, rmax, zextent). Flags override.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Integration tolerance. Overrides HH_TOL and the config file
    /// (default 1e-10).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Human-readable output instead of JSON (classify, kelvin, verify).
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide existence for (n, p, sigma) on the chosen domain.
    Classify(ClassifyArgs),
    /// Construct one family member u = u_a(1+w) and export it.
    Family(FamilyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Integrate one phase-plane orbit.
    Orbit(OrbitArgs),
    /// Integrate and classify a whole seed grid of orbits.
    Portrait(PortraitArgs),
    /// Weight involution sigma -> -p - sigma - 3 on the half line.
    Kelvin(KelvinArgs),
    /// One radial shot in dimension n >= 2.
    Shoot(ShootArgs),
    /// Classify a grid of parameter rows and export CSV/JSON.
    AtlasExport(AtlasExportArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    sigma: f64,
    /// full | half
    #[arg(long)]
    domain: Domain,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, allow_hyphen_values = true)]
    sigma: f64,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Leading coefficient of the perturbation (must be >= 0 here).
    #[arg(long, allow_hyphen_values = true)]
    w0: f64,
    /// Continuation endpoint.
    #[arg(long)]
    xmax: Option<f64>,
    /// Picard radius (auto-shrunk if the iteration does not contract).
    #[arg(long, default_value_t = 0.1)]
    radius: f64,
    /// Output directory for member.csv and manifest.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// atlas | closedforms | dynamics | family | radial | all
    #[arg(long)]
    suite: Suite,
}

#[derive(Args)]
struct OrbitArgs {
    /// Shape parameter a in (0,1); alternatively derive it from --sigma.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "sigma")]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    v0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    vdot0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    z0: f64,
    #[arg(long, allow_hyphen_values = true)]
    z1: f64,
    /// Trajectory CSV path (columns z,V,Vdot,E).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PortraitArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "sigma")]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.1)]
    vmin: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 2.0)]
    vmax: f64,
    #[arg(long, default_value_t = 5)]
    nv: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    vdotmin: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    vdotmax: f64,
    #[arg(long, default_value_t = 1)]
    nvdot: usize,
    /// Random seed count; when set, replaces the grid policy.
    #[arg(long)]
    random: Option<usize>,
    /// RNG seed for --random.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    zextent: Option<f64>,
    /// Output directory: one CSV per seed plus manifest.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KelvinArgs {
    #[arg(long, allow_hyphen_values = true)]
    sigma: f64,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
}

#[derive(Args)]
struct ShootArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, allow_hyphen_values = true)]
    sigma: f64,
    #[arg(long)]
    u0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    slope0: f64,
    #[arg(long)]
    rmax: Option<f64>,
    /// Trajectory CSV path (columns r,u,du).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AtlasExportArgs {
    /// Input CSV with header n,p,sigma,domain.
    #[arg(long)]
    grid: PathBuf,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_json: Option<PathBuf>,
}

struct AppError {
    code: u8,
    msg: String,
}

impl AppError {
    fn invalid(msg: impl Into<String>) -> Self {
        AppError {
            code: 2,
            msg: msg.into(),
        }
    }

    fn finding(msg: impl Into<String>) -> Self {
        AppError {
            code: 1,
            msg: msg.into(),
        }
    }
}

#[derive(Serialize)]
struct FindingPayload {
    schema_version: u32,
    finding: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((payload, code)) => {
            println!("{payload}");
            ExitCode::from(code)
        }
        Err(e) if e.code == 1 => {
            // Verification findings still carry a JSON payload on stdout.
            let payload = FindingPayload {
                schema_version: 1,
                finding: e.msg.clone(),
            };
            println!("{}", io::to_json(&payload));
            eprintln!("finding: {}", e.msg);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn require_finite(values: &[(&str, f64)]) -> Result<(), AppError> {
    for (name, v) in values {
        if !v.is_finite() {
            return Err(AppError::invalid(format!("{name} must be finite")));
        }
    }
    Ok(())
}

fn parse_config(path: &Path) -> Result<BTreeMap<String, f64>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::invalid(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| AppError::invalid(format!("config line {} is not key=value", lineno + 1)))?;
        let value: f64 = value.trim().parse().map_err(|_| {
            AppError::invalid(format!("config value for '{}' is not a number", key.trim()))
        })?;
        out.insert(key.trim().to_string(), value);
    }
    Ok(out)
}

struct Settings {
    tol: f64,
    config: BTreeMap<String, f64>,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self, AppError> {
        let config = match &cli.config {
            Some(path) => parse_config(path)?,
            None => BTreeMap::new(),
        };
        // Precedence: flag > HH_TOL > config > default.
        let tol = if let Some(t) = cli.tol {
            t
        } else if let Ok(env) = std::env::var("HH_TOL") {
            env.parse()
                .map_err(|_| AppError::invalid("HH_TOL is not a number"))?
        } else if let Some(&t) = config.get("tol") {
            t
        } else {
            DEFAULT_TOL
        };
        if tol <= 0.0 || tol.is_nan() {
            return Err(AppError::invalid("tolerance must be positive"));
        }
        Ok(Settings { tol, config })
    }

    fn number(&self, key: &str, flag: Option<f64>, default: f64) -> f64 {
        flag.or_else(|| self.config.get(key).copied()).unwrap_or(default)
    }
}

fn run(cli: Cli) -> Result<(String, u8), AppError> {
    let settings = Settings::resolve(&cli)?;
    let pretty = cli.pretty;
    match cli.command {
        Command::Classify(args) => cmd_classify(args, pretty),
        Command::Family(args) => cmd_family(args, &settings),
        Command::Verify(args) => cmd_verify(args, &settings, pretty),
        Command::Orbit(args) => cmd_orbit(args, &settings),
        Command::Portrait(args) => cmd_portrait(args, &settings),
        Command::Kelvin(args) => cmd_kelvin(args, pretty),
        Command::Shoot(args) => cmd_shoot(args, &settings),
        Command::AtlasExport(args) => cmd_atlas_export(args),
    }
}

#[derive(Serialize)]
struct ClassifyPayload {
    schema_version: u32,
    exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<hardy_henon::ClosedForm>,
    rationale: String,
}

fn cmd_classify(args: ClassifyArgs, pretty: bool) -> Result<(String, u8), AppError> {
    let params = ProblemParams::new(args.n, args.p, args.sigma, args.domain)
        .map_err(|e| AppError::invalid(e.to_string()))?;
    let verdict = classify(&params);
    if pretty {
        let witness = verdict
            .witness
            .as_ref()
            .map(|w| format!("{w:?}"))
            .unwrap_or_else(|| "-".into());
        return Ok((
            format!(
                "n={} p={} sigma={} domain={}\n  exists:    {}\n  rationale: {}\n  witness:   {}",
                args.n, args.p, args.sigma, args.domain, verdict.exists, verdict.rationale, witness
            ),
            0,
        ));
    }
    let payload = ClassifyPayload {
        schema_version: 1,
        exists: verdict.exists,
        witness: verdict.witness,
        rationale: verdict.rationale.to_string(),
    };
    Ok((io::to_json(&payload), 0))
}

#[derive(Serialize)]
struct FamilyManifest {
    w0: f64,
    mu_plus: f64,
    #[serde(rename = "T")]
    radius: f64,
    slope_estimate: f64,
}

#[derive(Serialize)]
struct FamilyPayload {
    schema_version: u32,
    w0: f64,
    mu_plus: f64,
    radius: f64,
    slope_estimate: f64,
    samples: usize,
    artifacts: Vec<String>,
}

fn cmd_family(args: FamilyArgs, settings: &Settings) -> Result<(String, u8), AppError> {
    require_finite(&[
        ("sigma", args.sigma),
        ("p", args.p),
        ("w0", args.w0),
        ("radius", args.radius),
    ])?;
    if args.radius <= 0.0 {
        return Err(AppError::invalid("radius must be positive"));
    }
    let xmax = settings.number("xmax", args.xmax, 100.0);
    if !xmax.is_finite() || xmax <= args.radius {
        return Err(AppError::invalid("xmax must be finite and exceed the Picard radius"));
    }
    if args.w0 < 0.0 {
        return Err(AppError::invalid(
            "family construction requires w0 >= 0; use the library experiment for w0 < 0",
        ));
    }
    let local = picard_local(args.p, args.sigma, args.w0, args.radius).map_err(|e| match e {
        FamilyError::OutsideRegime { .. } => AppError::invalid(e.to_string()),
        other => AppError::finding(other.to_string()),
    })?;
    let member = extend_family(&local, xmax, settings.tol).map_err(|e| match e {
        FamilyError::LostPositivity { .. } | FamilyError::Integration(_) => {
            AppError::finding(e.to_string())
        }
        other => AppError::invalid(other.to_string()),
    })?;

    let mut artifacts = Vec::new();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| AppError::invalid(format!("cannot create {}: {e}", dir.display())))?;
        let csv_path = dir.join("member.csv");
        let file = std::fs::File::create(&csv_path)
            .map_err(|e| AppError::invalid(format!("cannot write member.csv: {e}")))?;
        io::write_member_csv(&member.trajectory, file)
            .map_err(|e| AppError::finding(format!("csv write failed: {e}")))?;
        artifacts.push(csv_path.display().to_string());
        let manifest_path = dir.join("manifest.json");
        let manifest = FamilyManifest {
            w0: member.w0,
            mu_plus: member.mu_plus,
            radius: member.radius,
            slope_estimate: member.slope_estimate,
        };
        std::fs::write(&manifest_path, io::to_json(&manifest))
            .map_err(|e| AppError::finding(format!("manifest write failed: {e}")))?;
        artifacts.push(manifest_path.display().to_string());
    }
    let payload = FamilyPayload {
        schema_version: 1,
        w0: member.w0,
        mu_plus: member.mu_plus,
        radius: member.radius,
        slope_estimate: member.slope_estimate,
        samples: member.trajectory.samples.len(),
        artifacts,
    };
    Ok((io::to_json(&payload), 0))
}

fn cmd_verify(args: VerifyArgs, settings: &Settings, pretty: bool) -> Result<(String, u8), AppError> {
    let report = run_suite(args.suite, settings.tol);
    let code = if report.all_passed() { 0 } else { 1 };
    if pretty {
        let mut lines = Vec::new();
        for c in &report.findings {
            lines.push(format!(
                "[{}] {} {} ({})",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.details
            ));
        }
        lines.push(format!("passed={} failed={}", report.passed, report.failed));
        return Ok((lines.join("\n"), code));
    }
    Ok((io::to_json(&report), code))
}

fn system_from(a: Option<f64>, sigma: Option<f64>, p: f64) -> Result<LienardSystem, AppError> {
    match (a, sigma) {
        (Some(a), None) => LienardSystem::new(a, p).map_err(|e| AppError::invalid(e.to_string())),
        (None, Some(sigma)) => {
            let params = ProblemParams::new(1, p, sigma, Domain::HalfLine)
                .map_err(|e| AppError::invalid(e.to_string()))?;
            LienardSystem::from_problem(&params).map_err(|e| AppError::invalid(e.to_string()))
        }
        _ => Err(AppError::invalid("provide exactly one of --a or --sigma")),
    }
}

#[derive(Serialize)]
struct OrbitPayload {
    schema_version: u32,
    a: f64,
    p: f64,
    discriminant: f64,
    termination: hardy_henon::Event,
    final_state: [f64; 2],
    samples: usize,
    artifacts: Vec<String>,
}

fn cmd_orbit(args: OrbitArgs, settings: &Settings) -> Result<(String, u8), AppError> {
    use hardy_henon::numerics::IvpError;
    let sys = system_from(args.a, args.sigma, args.p)?;
    require_finite(&[
        ("v0", args.v0),
        ("vdot0", args.vdot0),
        ("z0", args.z0),
        ("z1", args.z1),
    ])?;
    if args.z1 == args.z0 {
        return Err(AppError::invalid("z1 must differ from z0"));
    }
    let traj = integrate_orbit(&sys, [args.v0, args.vdot0], (args.z0, args.z1), settings.tol)
        .map_err(|e| match e {
            IvpError::InvalidInput(_) | IvpError::NonFiniteField { .. } => {
                AppError::invalid(e.to_string())
            }
            other => AppError::finding(other.to_string()),
        })?;
    let mut artifacts = Vec::new();
    if let Some(path) = &args.out {
        let file = std::fs::File::create(path)
            .map_err(|e| AppError::invalid(format!("cannot write {}: {e}", path.display())))?;
        io::write_orbit_csv(&sys, &traj, file)
            .map_err(|e| AppError::finding(format!("csv write failed: {e}")))?;
        artifacts.push(path.display().to_string());
    }
    let payload = OrbitPayload {
        schema_version: 1,
        a: sys.a(),
        p: sys.p(),
        discriminant: sys.discriminant(),
        termination: traj.termination.clone(),
        final_state: traj.end().1,
        samples: traj.samples.len(),
        artifacts,
    };
    Ok((io::to_json(&payload), 0))
}

#[derive(Serialize)]
struct PortraitManifest {
    schema_version: u32,
    a: f64,
    p: f64,
    discriminant: f64,
    p_threshold: f64,
    seeds: Vec<[f64; 2]>,
    classes: Vec<String>,
}

#[derive(Serialize)]
struct PortraitPayload {
    schema_version: u32,
    a: f64,
    p: f64,
    discriminant: f64,
    p_threshold: f64,
    seeds: Vec<[f64; 2]>,
    classes: Vec<String>,
    artifacts: Vec<String>,
}

fn cmd_portrait(args: PortraitArgs, settings: &Settings) -> Result<(String, u8), AppError> {
    let sys = system_from(args.a, args.sigma, args.p)?;
    require_finite(&[
        ("vmin", args.vmin),
        ("vmax", args.vmax),
        ("vdotmin", args.vdotmin),
        ("vdotmax", args.vdotmax),
    ])?;
    let zextent = settings.number("zextent", args.zextent, 40.0);
    if !zextent.is_finite() || zextent <= 0.0 {
        return Err(AppError::invalid("zextent must be positive and finite"));
    }
    let policy = match args.random {
        Some(count) => SeedPolicy::Random {
            seed: args.seed,
            count,
            v: (args.vmin, args.vmax),
            vdot: (args.vdotmin - 1e-9, args.vdotmax + 1e-9),
        },
        None => SeedPolicy::Grid {
            v: (args.vmin, args.vmax),
            vdot: (args.vdotmin, args.vdotmax),
            nv: args.nv,
            nvdot: args.nvdot,
        },
    };
    let report = portrait(&sys, &policy, zextent, settings.tol);
    let seeds: Vec<[f64; 2]> = report.entries.iter().map(|e| e.seed).collect();
    let classes: Vec<String> = report
        .entries
        .iter()
        .map(|e| match &e.class {
            Ok(c) => c.to_string(),
            Err(msg) => format!("error: {msg}"),
        })
        .collect();

    let mut artifacts = Vec::new();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| AppError::invalid(format!("cannot create {}: {e}", dir.display())))?;
        for (i, entry) in report.entries.iter().enumerate() {
            if let Some(orbit) = &entry.orbit {
                let path = dir.join(format!("seed_{i:03}.csv"));
                let file = std::fs::File::create(&path)
                    .map_err(|e| AppError::invalid(format!("cannot write seed csv: {e}")))?;
                io::write_orbit_csv(&sys, &orbit.forward, file)
                    .map_err(|e| AppError::finding(format!("csv write failed: {e}")))?;
                artifacts.push(path.display().to_string());
            }
        }
        let manifest = PortraitManifest {
            schema_version: 1,
            a: report.a,
            p: report.p,
            discriminant: report.discriminant,
            p_threshold: report.p_threshold,
            seeds: seeds.clone(),
            classes: classes.clone(),
        };
        let path = dir.join("manifest.json");
        std::fs::write(&path, io::to_json(&manifest))
            .map_err(|e| AppError::finding(format!("manifest write failed: {e}")))?;
        artifacts.push(path.display().to_string());
    }
    let payload = PortraitPayload {
        schema_version: 1,
        a: report.a,
        p: report.p,
        discriminant: report.discriminant,
        p_threshold: report.p_threshold,
        seeds,
        classes,
        artifacts,
    };
    Ok((io::to_json(&payload), 0))
}

#[derive(Serialize)]
struct KelvinPayload {
    schema_version: u32,
    sigma: f64,
    p: f64,
    sigma_tilde: f64,
    self_dual: bool,
    original_exists: bool,
    original_rationale: String,
    image_exists: bool,
    image_rationale: String,
}

fn cmd_kelvin(args: KelvinArgs, pretty: bool) -> Result<(String, u8), AppError> {
    let params = ProblemParams::new(1, args.p, args.sigma, Domain::HalfLine)
        .map_err(|e| AppError::invalid(e.to_string()))?;
    let image = kelvin(&params).map_err(|e| AppError::invalid(e.to_string()))?;
    let original = classify(&params);
    let dual = classify(&image.params);
    if pretty {
        return Ok((
            format!(
                "sigma={} p={} -> sigma_tilde={}\n  original: exists={} ({})\n  image:    exists={} ({})",
                args.sigma,
                args.p,
                image.sigma_tilde,
                original.exists,
                original.rationale,
                dual.exists,
                dual.rationale
            ),
            0,
        ));
    }
    let payload = KelvinPayload {
        schema_version: 1,
        sigma: args.sigma,
        p: args.p,
        sigma_tilde: image.sigma_tilde,
        self_dual: image.sigma_tilde == args.sigma,
        original_exists: original.exists,
        original_rationale: original.rationale.to_string(),
        image_exists: dual.exists,
        image_rationale: dual.rationale.to_string(),
    };
    Ok((io::to_json(&payload), 0))
}

#[derive(Serialize)]
struct ShootPayload {
    schema_version: u32,
    n: u32,
    p: f64,
    sigma: f64,
    u0: f64,
    slope0: f64,
    fate: Fate,
    samples: usize,
    artifacts: Vec<String>,
}

fn cmd_shoot(args: ShootArgs, settings: &Settings) -> Result<(String, u8), AppError> {
    let params = ProblemParams::new(args.n, args.p, args.sigma, Domain::FullSpace)
        .map_err(|e| AppError::invalid(e.to_string()))?;
    require_finite(&[("u0", args.u0), ("slope0", args.slope0)])?;
    let rmax = settings.number("rmax", args.rmax, 100.0);
    if rmax <= 0.0 || !rmax.is_finite() {
        return Err(AppError::invalid("rmax must be positive and finite"));
    }
    let outcome = shoot(&params, args.u0, args.slope0, rmax, settings.tol)
        .map_err(|e| AppError::invalid(e.to_string()))?;
    let mut artifacts = Vec::new();
    if let Some(path) = &args.out {
        let file = std::fs::File::create(path)
            .map_err(|e| AppError::invalid(format!("cannot write {}: {e}", path.display())))?;
        io::write_shot_csv(&outcome.trajectory, file)
            .map_err(|e| AppError::finding(format!("csv write failed: {e}")))?;
        artifacts.push(path.display().to_string());
    }
    let payload = ShootPayload {
        schema_version: 1,
        n: args.n,
        p: args.p,
        sigma: args.sigma,
        u0: args.u0,
        slope0: args.slope0,
        fate: outcome.fate,
        samples: outcome.trajectory.samples.len(),
        artifacts,
    };
    Ok((io::to_json(&payload), 0))
}

#[derive(Serialize)]
struct AtlasPayload {
    schema_version: u32,
    records: Vec<hardy_henon::atlas::AtlasRecord>,
    artifacts: Vec<String>,
}

fn cmd_atlas_export(args: AtlasExportArgs) -> Result<(String, u8), AppError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(&args.grid)
        .map_err(|e| AppError::invalid(format!("cannot read {}: {e}", args.grid.display())))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| AppError::invalid(format!("row {i}: {e}")))?;
        if record.len() != 4 {
            return Err(AppError::invalid(format!(
                "row {i}: expected 4 columns n,p,sigma,domain"
            )));
        }
        let n: u32 = record[0]
            .parse()
            .map_err(|_| AppError::invalid(format!("row {i}: n is not a positive integer")))?;
        let p: f64 = record[1]
            .parse()
            .map_err(|_| AppError::invalid(format!("row {i}: p is not a number")))?;
        let sigma: f64 = record[2]
            .parse()
            .map_err(|_| AppError::invalid(format!("row {i}: sigma is not a number")))?;
        let domain: Domain = record[3]
            .parse()
            .map_err(|e| AppError::invalid(format!("row {i}: {e}")))?;
        rows.push(RawParams { n, p, sigma, domain });
    }
    let records = atlas_export(&rows).map_err(|e| AppError::invalid(e.to_string()))?;

    let mut artifacts = Vec::new();
    if let Some(path) = &args.out_csv {
        let file = std::fs::File::create(path)
            .map_err(|e| AppError::invalid(format!("cannot write {}: {e}", path.display())))?;
        io::write_atlas_csv(&records, file)
            .map_err(|e| AppError::finding(format!("csv write failed: {e}")))?;
        artifacts.push(path.display().to_string());
    }
    if let Some(path) = &args.out_json {
        std::fs::write(path, io::to_json(&records))
            .map_err(|e| AppError::finding(format!("json write failed: {e}")))?;
        artifacts.push(path.display().to_string());
    }
    let payload = AtlasPayload {
        schema_version: 1,
        records,
        artifacts,
    };
    Ok((io::to_json(&payload), 0))
}

