use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semipolar::apsg::SemipolarSpace;
use semipolar::autos::{parametric_family, point_transitive_auto};
use semipolar::export::{adjacency_csv, adjacency_dot, pencil_json};
use semipolar::hyperbolic::{reconstruction_report, SymmetricForm};
use semipolar::metric::{bisector_m, bisector_t, sphere, BisectorReport};
use semipolar::suites::{applicable_suites, run_suites, SuiteConfig, SUITES};
use semipolar::{Budget, Field, Instance, InstanceKind, Point, Semiform};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "semipolar", version, about = "Build and verify affine semipolar spaces over GF(p)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a semiform instance file.
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Comma-separated suite names, or `all` for every suite that applies.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export graphs and reports.
    Export {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Base point for `pencil`: `origin`, a point index, or comma-separated coordinates.
        #[arg(long, default_value = "origin")]
        at: String,
        /// Restrict `bisectors` to one pair of point indices, `i,j`.
        #[arg(long)]
        pair: Option<String>,
        /// Diagonal of the symmetric form for `reconstruct`; defaults to the identity.
        #[arg(long, allow_hyphen_values = true)]
        diag: Option<String>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file; overrides --field/--kind/--index.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    field: u32,
    #[arg(long, value_enum, default_value = "symplectic")]
    kind: Kind,
    /// m for `symplectic`, n for `wedge` and `reconstruct`.
    #[arg(long)]
    index: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Cap on enumerated items per check.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Check only N seeded-random points in per-point suites.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Symplectic,
    Wedge,
    Cross,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Adjacency,
    Pencil,
    Bisectors,
    Autos,
    Reconstruct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Csv,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] semipolar::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(semipolar::Error::EnumerationTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Build { inst, out } => {
            let (_, instance) = load(&inst)?;
            emit(out, instance.to_json())?;
            Ok(true)
        }
        Cmd::Verify { inst, suite, run, out } => {
            let cfg = configure(&run)?;
            let (rho, instance) = load(&inst)?;
            let (names, skipped) =
                if suite == "all" { applicable_suites(&rho) } else { (suite_names(&suite)?, BTreeMap::new()) };
            let value = serde_json::to_value(&instance).expect("serializable");
            let mut report = run_suites(&rho, value, &names, cfg)?;
            report.skipped = skipped;
            emit(out, to_json(&report))?;
            Ok(report.pass)
        }
        Cmd::Export { inst, what, format, at, pair, diag, run, out } => {
            let cfg = configure(&run)?;
            let format = format.unwrap_or(if what == What::Adjacency { Format::Dot } else { Format::Json });
            if what != What::Adjacency && format != Format::Json {
                return Err(CliError::Usage("only `adjacency` supports dot and csv".into()));
            }
            if what == What::Reconstruct {
                return export_reconstruct(&inst, diag.as_deref(), cfg.budget, out);
            }
            let (rho, _) = load(&inst)?;
            let space = SemipolarSpace::new(&rho, cfg.budget)?;
            let text = match what {
                What::Adjacency => match format {
                    Format::Dot => adjacency_dot(&space),
                    Format::Csv => adjacency_csv(&space),
                    Format::Json => return Err(CliError::Usage("adjacency exports as dot or csv".into())),
                },
                What::Pencil => pencil_json(&space.pencil_structure(&parse_point(&space, &at)?)?),
                What::Bisectors => to_json(&bisector_reports(&space, pair.as_deref(), cfg.budget)?),
                What::Autos => export_autos(&space)?,
                What::Reconstruct => unreachable!("handled above"),
            };
            emit(out, text)?;
            Ok(true)
        }
    }
}

fn configure(run: &RunArgs) -> Result<SuiteConfig> {
    if let Some(j) = run.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let budget = match run.budget {
        Some(0) => return Err(CliError::Usage("--budget must be positive".into())),
        Some(b) => Budget(b),
        None => Budget::default(),
    };
    Ok(SuiteConfig { budget, sample: run.sample, seed: run.seed })
}

fn load(inst: &InstanceArgs) -> Result<(Semiform, Instance)> {
    if let Some(path) = &inst.instance {
        let text = read(path)?;
        let instance = Instance::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let rho = instance.to_semiform().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok((rho, instance));
    }
    let field = Field::new(inst.field).map_err(|e| CliError::Usage(e.to_string()))?;
    let (rho, kind) = match inst.kind {
        Kind::Symplectic => (Semiform::symplectic(field, inst.index.unwrap_or(1)), InstanceKind::Symplectic),
        Kind::Wedge => (Semiform::wedge(field, inst.index.unwrap_or(3)), InstanceKind::Wedge),
        Kind::Cross => (Semiform::cross(field), InstanceKind::Cross),
        Kind::Custom => return Err(CliError::Usage("--kind custom needs --instance".into())),
    };
    let rho = rho.map_err(|e| CliError::Usage(e.to_string()))?;
    let instance = Instance::from_semiform(&rho, kind);
    Ok((rho, instance))
}

fn suite_names(arg: &str) -> Result<Vec<String>> {
    arg.split(',')
        .map(|s| {
            let s = s.trim();
            if SUITES.contains(&s) {
                Ok(s.to_string())
            } else {
                Err(CliError::Usage(format!("unknown suite `{s}`; expected one of {}", SUITES.join(", "))))
            }
        })
        .collect()
}

fn parse_point(space: &SemipolarSpace, at: &str) -> Result<Point> {
    if at == "origin" {
        return Ok(space.origin());
    }
    let bad = || CliError::Usage(format!("bad point `{at}`"));
    if !at.contains(',') {
        let i: usize = at.parse().map_err(|_| bad())?;
        return (i < space.size()).then(|| space.point(i)).ok_or_else(bad);
    }
    let coords: Vec<i64> = at.split(',').map(|c| c.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if coords.len() != space.nu() + space.n() {
        return Err(bad());
    }
    let q = i64::from(space.field().modulus());
    let idx = coords.iter().fold(0usize, |acc, &c| acc * q as usize + c.rem_euclid(q) as usize);
    Ok(space.point(idx))
}

fn bisector_reports(space: &SemipolarSpace, pair: Option<&str>, budget: Budget) -> Result<Vec<BisectorReport>> {
    let pairs: Vec<(usize, usize)> = match pair {
        Some(s) => {
            let bad = || CliError::Usage(format!("bad pair `{s}`"));
            let (a, b) = s.split_once(',').ok_or_else(bad)?;
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a >= space.size() || b >= space.size() {
                return Err(bad());
            }
            vec![(a, b)]
        }
        None => {
            let n = space.size();
            budget.check((n * n * n) as u128)?;
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
        }
    };
    let mut out = Vec::with_capacity(pairs.len() * 3);
    for (i, j) in pairs {
        let (p, q) = (space.point(i), space.point(j));
        out.push(bisector_t(space, &p, &q)?.report());
        out.push(bisector_m(space, &p, &q)?.report());
        out.push(sphere(space, &p, &q)?.report());
    }
    Ok(out)
}

fn export_autos(space: &SemipolarSpace) -> Result<String> {
    if space.nu() == 1 {
        let family = parametric_family(space)?;
        let params: Vec<_> = family.into_iter().map(|(p, _)| p).collect();
        return Ok(to_json(&params));
    }
    // Without a scalar form, list the transitive family from the origin.
    let origin = space.origin();
    let params = (0..space.size())
        .map(|i| point_transitive_auto(space.eta(), &origin, &space.point(i)).map(|(p, _)| p))
        .collect::<semipolar::Result<Vec<_>>>()?;
    Ok(to_json(&params))
}

fn export_reconstruct(inst: &InstanceArgs, diag: Option<&str>, budget: Budget, out: Option<PathBuf>) -> Result<bool> {
    let field = Field::new(inst.field).map_err(|e| CliError::Usage(e.to_string()))?;
    let entries: Vec<i64> = match diag {
        Some(d) => d
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad diagonal `{d}`"))))
            .collect::<Result<_>>()?,
        None => vec![1; inst.index.unwrap_or(3)],
    };
    let xi = SymmetricForm::diagonal(field, &entries).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = reconstruction_report(&xi, None, budget)?;
    let pass = report.passed();
    emit(out, to_json(&json!({ "diag": entries, "report": report })))?;
    Ok(pass)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn emit(out: Option<PathBuf>, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
