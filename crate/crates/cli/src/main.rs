//! `godbersen-lab`: generate bodies, compute profiles, run verifiers and
//! the certificate table.
//!
//! Exit codes: 0 ok, 1 a proven statement failed, 2 bad input, 3 numerical
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use godbersen_core::certificate::certificate;
use godbersen_core::io::BodyRecord;
use godbersen_core::output::certificate_csv;
use godbersen_core::sweep::{run, OutputPaths, RunConfig, RunOutcome, DEFAULT_SEED};
use godbersen_core::verify::uniform_grid;
use godbersen_core::zoo::{generate, BodySpec, Generator};
use godbersen_core::{mixed_volume_profile, GeomError, VPolytope};

#[derive(Parser)]
#[command(name = "godbersen-lab", version, about = "Mixed-volume profiles and difference-body inequalities on polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a body and print it in the JSON body format.
    Gen(BodyArgs),
    /// Compute the profile V(K[j], −K[n−j]) of a body.
    Profile(BodyArgs),
    /// Run the verifiers on a config file or a single body.
    Verify(VerifyArgs),
    /// Tabulate the n = 4, 5 certificate over a λ-grid.
    Certificate(CertificateArgs),
    /// Run the full matrix: default zoo for n = 2..5 and the certificate.
    Sweep(SweepArgs),
    /// Print the full-matrix run config as JSON.
    Config(ConfigArgs),
}

#[derive(Args)]
struct BodyArgs {
    /// Generator name (simplex, cube, cross, random-sphere,
    /// random-gauss-hull, reuleaux-poly) or a JSON file holding a body or
    /// a body spec.
    #[arg(long)]
    body: String,
    #[arg(long)]
    dim: Option<usize>,
    /// Sample size of the random generators.
    #[arg(long)]
    points: Option<usize>,
    /// Number of arcs of a Reuleaux polygon.
    #[arg(long)]
    arcs: Option<usize>,
    #[arg(long, env = "GODBERSEN_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "body")]
    config: Option<PathBuf>,
    #[arg(long)]
    body: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    arcs: Option<usize>,
    #[arg(long, env = "GODBERSEN_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of λ points; overrides the config.
    #[arg(long)]
    lambda_grid: Option<usize>,
    /// Worker threads (0 = all cores); overrides the config.
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for reports.jsonl and reports.csv.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertificateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(4..=5))]
    n: Option<u8>,
    #[arg(long, default_value_t = 1001)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, env = "GODBERSEN_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    lambda_grid: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory for reports.jsonl, reports.csv and certificate.csv.
    #[arg(long, default_value = "sweep-out")]
    out: PathBuf,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, env = "GODBERSEN_LAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Violation(String),
    BadInput(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::BadInput(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::NumericalFailure(_) | GeomError::IllConditioned(_) => Failure::Numerical(e.to_string()),
            _ => Failure::BadInput(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::BadInput(format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_error(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spec_from_flags(body: &str, dim: Option<usize>, points: Option<usize>, arcs: Option<usize>, seed: u64) -> Result<BodySpec, Failure> {
    let generator = Generator::parse(body).ok_or_else(|| Failure::BadInput(format!("unknown body {body:?}")))?;
    let dim = match (generator, dim) {
        (Generator::ReuleauxPoly, d) => d.unwrap_or(2),
        (_, Some(d)) => d,
        (_, None) => return Err(Failure::BadInput("--dim is required for generated bodies".into())),
    };
    let mut spec = BodySpec::new(generator, dim);
    match generator {
        Generator::RandomSphere | Generator::RandomGaussHull => {
            spec.points = Some(points.unwrap_or(2 * dim + 2));
            spec.seed = Some(seed);
        }
        Generator::ReuleauxPoly => spec.arcs = Some(arcs.unwrap_or(3)),
        _ => {}
    }
    Ok(spec)
}

/// A body from flags or a JSON file (body record or body spec).
fn load_body(args: &BodyArgs) -> Result<(String, VPolytope), Failure> {
    let path = Path::new(&args.body);
    if path.extension().is_some_and(|e| e == "json") || path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        if let Ok(rec) = serde_json::from_str::<BodyRecord>(&text) {
            let label = if rec.label.is_empty() { args.body.clone() } else { rec.label.clone() };
            return Ok((label, rec.to_polytope()?));
        }
        let spec: BodySpec = serde_json::from_str(&text)
            .map_err(|e| Failure::BadInput(format!("{}: neither a body nor a body spec: {e}", path.display())))?;
        return Ok((spec.label(), generate(&spec)?));
    }
    let spec = spec_from_flags(&args.body, args.dim, args.points, args.arcs, args.seed)?;
    Ok((spec.label(), generate(&spec)?))
}

fn cmd_gen(args: &BodyArgs) -> Result<(), Failure> {
    let (label, k) = load_body(args)?;
    emit(args.out.as_deref(), &(BodyRecord::from_polytope(&k, label).to_json() + "\n"))
}

fn cmd_profile(args: &BodyArgs) -> Result<(), Failure> {
    let (_, k) = load_body(args)?;
    let p = mixed_volume_profile(&k)?;
    let json = serde_json::to_string(&p).map_err(|e| Failure::Numerical(e.to_string()))?;
    emit(args.out.as_deref(), &(json + "\n"))
}

fn read_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(RunConfig::from_json(&text)?)
}

fn report_outcome(out: &RunOutcome) -> Result<(), Failure> {
    let total = out.reports.len();
    let passed = out.reports.iter().filter(|r| r.passed).count();
    eprintln!(
        "{total} reports, {passed} passed, {} proven-statement violations, {} exploratory candidates, {} task failures",
        out.violations().count(),
        out.candidates().count(),
        out.failures.len()
    );
    for r in out.candidates() {
        eprintln!("candidate: {} {:?} j={:?} λ={:?} margin {:e}", r.statement, r.bodies, r.j, r.lambda, r.margin);
    }
    for f in &out.failures {
        eprintln!("failure: {} {:?}: {}", f.statement, f.bodies, f.error);
    }
    let violations: Vec<String> = out
        .violations()
        .map(|r| format!("{} {:?} n={} j={:?} λ={:?}: lhs {:e} > rhs {:e}", r.statement, r.bodies, r.n, r.j, r.lambda, r.lhs, r.rhs))
        .chain(out.invalid_certificates().map(|c| format!("certificate n={} λ={}: a={:e} b={:e}", c.n, c.lambda, c.a, c.b)))
        .collect();
    for v in &violations {
        eprintln!("VIOLATION of a proven statement: {v}");
    }
    if !violations.is_empty() {
        return Err(Failure::Violation(format!("{} violations", violations.len())));
    }
    if !out.failures.is_empty() {
        return Err(Failure::Numerical(format!("{} tasks failed", out.failures.len())));
    }
    Ok(())
}

fn paths_in(dir: &Path, certificate: bool) -> Result<OutputPaths, Failure> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    Ok(OutputPaths {
        reports_jsonl: Some(dir.join("reports.jsonl")),
        reports_csv: Some(dir.join("reports.csv")),
        certificate_csv: certificate.then(|| dir.join("certificate.csv")),
    })
}

fn apply_overrides(cfg: &mut RunConfig, lambda_grid: Option<usize>, jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(g) = lambda_grid {
        cfg.lambda_grid = g;
    }
    if let Some(j) = jobs {
        cfg.jobs = j;
    }
    Ok(cfg.validate()?)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let mut cfg = match (&args.config, &args.body) {
        (Some(path), _) => read_config(path)?,
        (None, Some(body)) => {
            RunConfig::new(vec![spec_from_flags(body, args.dim, args.points, args.arcs, args.seed)?])
        }
        (None, None) => return Err(Failure::BadInput("verify needs --config or --body".into())),
    };
    apply_overrides(&mut cfg, args.lambda_grid, args.jobs)?;
    let out = run(&cfg)?;
    let paths = match &args.out {
        Some(dir) => paths_in(dir, !out.certificates.is_empty())?,
        None => cfg.outputs.clone(),
    };
    if paths == OutputPaths::default() {
        print!("{}", out.reports_csv());
    } else {
        out.write(&paths).map_err(|e| Failure::BadInput(e.to_string()))?;
    }
    report_outcome(&out)
}

fn cmd_certificate(args: &CertificateArgs) -> Result<(), Failure> {
    if args.grid == 0 {
        return Err(Failure::BadInput("--grid must be positive".into()));
    }
    let ns: Vec<usize> = match args.n {
        Some(n) => vec![n as usize],
        None => vec![4, 5],
    };
    let rows = ns
        .iter()
        .flat_map(|&n| uniform_grid(args.grid).into_iter().map(move |l| certificate(n, l)))
        .collect::<Result<Vec<_>, _>>()?;
    emit(args.out.as_deref(), &certificate_csv(&rows))?;
    let bad = rows.iter().filter(|c| !c.valid).count();
    if bad > 0 {
        return Err(Failure::Violation(format!("{bad} certificate rows invalid")));
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Failure> {
    let mut cfg = match &args.config {
        Some(path) => read_config(path)?,
        None => RunConfig::full_matrix(args.seed),
    };
    apply_overrides(&mut cfg, args.lambda_grid, args.jobs)?;
    let out = run(&cfg)?;
    out.write(&paths_in(&args.out, true)?).map_err(|e| Failure::BadInput(e.to_string()))?;
    report_outcome(&out)
}

fn cmd_config(args: &ConfigArgs) -> Result<(), Failure> {
    let cfg = RunConfig::full_matrix(args.seed);
    let json = serde_json::to_string_pretty(&cfg).map_err(|e| Failure::Numerical(e.to_string()))?;
    emit(args.out.as_deref(), &(json + "\n"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Certificate(a) => cmd_certificate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Config(a) => cmd_config(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Violation(m) => eprintln!("error: proven statement violated: {m}"),
                Failure::BadInput(m) => eprintln!("error: {m}"),
                Failure::Numerical(m) => eprintln!("error: numerical failure: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
