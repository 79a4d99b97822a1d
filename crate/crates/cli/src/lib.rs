//! Batch driver behind the `specsub` binary.
//!
//! Fixtures are given by name (`affine2`, `exp:0.5`, `abelian:4`) or by a
//! path to a fixture file. When `SPECSUB_FIXTURE_DIR` is set, a file
//! `<dir>/<name>`, `<dir>/<name>.lie` or `<dir>/<name>.warp` takes priority
//! over the built-in of the same name.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use specsub_core::fixtures::{self, Fixture, LieFixture};
use specsub_core::group::{group_spectrum, quotient_bound, FactorSpectra};
use specsub_core::lie::{classify, Ideal, MetricLieAlgebra};
use specsub_core::report::{self, LieRow, QuotientRow};
use specsub_core::warped::{lambda0_ess_tail, pushdown_check, verify_theorem_1, Base, WarpedProductSpec};
use specsub_core::{Error, Tolerances};

const AFTER_HELP: &str = "\
CSV tables (first line `# specsub <table> v1`, then the header):
  lie       fixture,unimodular,amenable,lambda0,cheeger,method
  quotient  fixture,ideal,ideal_dim,h_norm_sq,trace_ad_h,lambda0_quotient,lambda0_subgroup,lower_bound,equality_expected
  warped    fixture,grid_n,mode,lambda0,residual,slack
            (mode is S, a fiber mode m, or pushdown; slack is lambda0(L_m) minus the bound)
  tail      fixture,grid_n,cutoff,lambda0,residual

Exit codes: 0 ok, 1 validation or input error, 2 eigensolver failure, 3 formula inapplicable.";

#[derive(Debug, Parser)]
#[command(name = "specsub", version, about = "Bottom-of-spectrum computations for Lie groups and warped products", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance preset.
    #[arg(long = "tol-preset", default_value = "default", global = true)]
    pub tol_preset: String,
    /// Fixture parameter (c for affine2 and hyperbolic, a for exp, and so on).
    #[arg(long = "c", global = true, allow_negative_numbers = true)]
    pub param: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Catalog override directory.
    #[arg(long, env = "SPECSUB_FIXTURE_DIR", hide_env_values = true, global = true)]
    pub fixture_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification and bottom of spectrum of a Lie algebra, or the
    /// warped-product checks for a warp fixture.
    Analyze {
        fixture: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Bottom of the spectrum of the group.
    Lambda0 { fixture: String },
    /// Cheeger constant (a lower bound for non-amenable groups).
    Cheeger { fixture: String },
    /// Quotient lower bound for each ideal.
    Quotient {
        fixture: String,
        /// Catalog ideal name, or spanning vectors `1,0,0;0,1,0`. Repeatable;
        /// defaults to every catalog ideal.
        #[arg(long)]
        ideal: Vec<String>,
    },
    /// Warped-product inequality and pushdown checks.
    VerifyWarped {
        fixture: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Random grid functions for the pushdown check (0 to skip).
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Fiber samples per base node for the pushdown check.
        #[arg(long, default_value_t = 64)]
        n_theta: usize,
    },
    /// Bottom of the spectrum of `S` outside growing compact sets.
    TailEss {
        fixture: String,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Comma-separated cutoffs; defaults to eight evenly spaced ones.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        cutoffs: Vec<f64>,
    },
}

/// Report text and exit code of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NoConvergence { .. } | Error::SolverDisagreement { .. } => 2,
        Error::FormulaInapplicable(_) => 3,
        _ => 1,
    }
}

fn fail(err: Error) -> Outcome {
    Outcome {
        code: exit_code(&err),
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    }
}

struct Resolved {
    name: String,
    fixture: Fixture,
    /// Catalog ideals when the fixture came from the catalog.
    catalog: Option<LieFixture>,
}

fn read_file(path: &Path, tols: &Tolerances) -> Result<Fixture, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    fixtures::parse_fixture(&text, tols).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        e => e,
    })
}

fn resolve(spec: &str, common: &Common, tols: &Tolerances) -> Result<Resolved, Error> {
    let path = Path::new(spec);
    if path.is_file() {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.into());
        return Ok(Resolved {
            name,
            fixture: read_file(path, tols)?,
            catalog: None,
        });
    }
    if let Some(dir) = &common.fixture_dir {
        for candidate in [spec.to_string(), format!("{spec}.lie"), format!("{spec}.warp")] {
            let p = dir.join(&candidate);
            if p.is_file() {
                return Ok(Resolved {
                    name: spec.into(),
                    fixture: read_file(&p, tols)?,
                    catalog: None,
                });
            }
        }
    }
    let (name, inline) = fixtures::split_name(spec)?;
    let param = common.param.or(inline);
    if fixtures::LIE_FIXTURES.contains(&name) {
        let f = fixtures::lie_fixture(name, param)?;
        return Ok(Resolved {
            name: f.name.clone(),
            fixture: Fixture::Lie(f.algebra.clone()),
            catalog: Some(f),
        });
    }
    if fixtures::WARP_FIXTURES.contains(&name) {
        let f = fixtures::warp_fixture(name, param)?;
        return Ok(Resolved {
            name: f.name,
            fixture: Fixture::Warp(f.spec),
            catalog: None,
        });
    }
    Err(Error::Precondition(format!(
        "`{spec}` is neither a file nor a catalog fixture (Lie: {}; warp: {})",
        fixtures::LIE_FIXTURES.join(", "),
        fixtures::WARP_FIXTURES.join(", ")
    )))
}

fn check_grid(grid: usize, spec: &WarpedProductSpec) -> Result<(), Error> {
    if let Some(n) = spec.sample_count() {
        if n != grid {
            return Err(Error::Precondition(format!("sampled warp has {n} values; pass --grid {n}")));
        }
        return Ok(());
    }
    if grid < 16 || !grid.is_power_of_two() {
        return Err(Error::Precondition(format!("--grid must be a power of two >= 16, got {grid}")));
    }
    Ok(())
}

fn expect_lie(r: &Resolved) -> Result<&MetricLieAlgebra, Error> {
    match &r.fixture {
        Fixture::Lie(a) => Ok(a),
        Fixture::Warp(_) => Err(Error::Precondition(format!("`{}` is a warp fixture, not a Lie algebra", r.name))),
    }
}

fn expect_warp(r: &Resolved) -> Result<&WarpedProductSpec, Error> {
    match &r.fixture {
        Fixture::Warp(s) => Ok(s),
        Fixture::Lie(_) => Err(Error::Precondition(format!("`{}` is a Lie algebra, not a warp fixture", r.name))),
    }
}

fn parse_ideal(alg: &MetricLieAlgebra, arg: &str, catalog: Option<&LieFixture>, tols: &Tolerances) -> Result<(String, Ideal), Error> {
    if let Some((name, gens)) = catalog.and_then(|c| c.ideals.iter().find(|(n, _)| n == arg)) {
        return Ok((name.clone(), Ideal::from_vectors(alg, gens, tols)?));
    }
    let mut gens = Vec::new();
    for part in arg.split(';') {
        let v: Result<Vec<f64>, _> = part.split(',').map(|x| x.trim().parse::<f64>()).collect();
        let v = v.map_err(|_| Error::Precondition(format!("bad ideal `{arg}`: expected a catalog name or vectors like 1,0;0,1")))?;
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                got: v.len(),
            });
        }
        gens.push(DVector::from_vec(v));
    }
    Ok((arg.to_string(), Ideal::from_vectors(alg, &gens, tols)?))
}

fn lie_row(name: &str, alg: &MetricLieAlgebra, tols: &Tolerances) -> Result<LieRow, Error> {
    Ok(LieRow {
        fixture: name.to_string(),
        classification: classify(alg, tols)?,
        spectrum: group_spectrum(alg, tols)?,
    })
}

fn verify_warped(name: &str, spec: &WarpedProductSpec, grid: usize, samples: usize, n_theta: usize, common: &Common, tols: &Tolerances) -> Result<Outcome, Error> {
    check_grid(grid, spec)?;
    let r = verify_theorem_1(spec, grid, tols)?;
    let push = if samples > 0 {
        Some(pushdown_check(spec, grid, n_theta, samples, common.seed, tols)?)
    } else {
        None
    };
    let rows = vec![(name.to_string(), r.clone())];
    let mut out = match common.format {
        Format::Csv => report::warped_csv(&rows),
        Format::Text => report::warped_text(&rows),
    };
    if let Some(p) = &push {
        match common.format {
            Format::Csv => writeln!(out, "{name},{grid},pushdown,,,{}", report::num(p.min_slack)).unwrap(),
            Format::Text => writeln!(out, "pushdown     min slack {} over {} samples, holds {}", report::num(p.min_slack), p.samples, p.holds).unwrap(),
        }
    }
    let ok = r.holds && push.map_or(true, |p| p.holds);
    Ok(Outcome {
        code: if ok { 0 } else { 1 },
        stdout: out,
        stderr: if ok { String::new() } else { "error: warped-product inequality violated\n".into() },
    })
}

fn default_cutoffs(spec: &WarpedProductSpec) -> Vec<f64> {
    match spec.base {
        Base::Interval { a, b, .. } => (1..=8).map(|k| a + (b - a) * k as f64 / 10.0).collect(),
        Base::Circle { .. } => vec![],
    }
}

fn dispatch(cli: &Cli, tols: &Tolerances) -> Result<Outcome, Error> {
    let common = &cli.common;
    let ok = |stdout: String| Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    };
    match &cli.command {
        Command::Analyze { fixture, grid } => {
            let r = resolve(fixture, common, tols)?;
            match &r.fixture {
                Fixture::Lie(alg) => {
                    let row = lie_row(&r.name, alg, tols)?;
                    Ok(ok(match common.format {
                        Format::Csv => report::lie_csv(&[row]),
                        Format::Text => report::lie_text(&[row], alg.labels()),
                    }))
                }
                Fixture::Warp(spec) => verify_warped(&r.name, spec, *grid, 0, 64, common, tols),
            }
        }
        Command::Lambda0 { fixture } | Command::Cheeger { fixture } => {
            let r = resolve(fixture, common, tols)?;
            let alg = expect_lie(&r)?;
            let row = lie_row(&r.name, alg, tols)?;
            Ok(ok(match (common.format, &cli.command) {
                (Format::Csv, _) => report::lie_csv(&[row]),
                (Format::Text, Command::Lambda0 { .. }) => {
                    let value = row.spectrum.lambda0.map(report::num).unwrap_or_else(|| "unknown".into());
                    format!("{}: lambda0 = {value}, method = {}\n", r.name, row.spectrum.method.as_str())
                }
                (Format::Text, _) => {
                    let kind = if row.classification.amenable { "" } else { " (lower bound)" };
                    format!("{}: cheeger = {}{kind}\n", r.name, report::num(row.spectrum.cheeger))
                }
            }))
        }
        Command::Quotient { fixture, ideal } => {
            let r = resolve(fixture, common, tols)?;
            let alg = expect_lie(&r)?;
            let ideals: Vec<(String, Ideal)> = if ideal.is_empty() {
                match &r.catalog {
                    Some(c) => c
                        .ideals
                        .iter()
                        .map(|(n, g)| Ideal::from_vectors(alg, g, tols).map(|i| (n.clone(), i)))
                        .collect::<Result<_, _>>()?,
                    None => return Err(Error::Precondition("no catalog ideals for a file fixture; pass --ideal".into())),
                }
            } else {
                ideal
                    .iter()
                    .map(|s| parse_ideal(alg, s, r.catalog.as_ref(), tols))
                    .collect::<Result<_, _>>()?
            };
            let mut rows = Vec::new();
            for (name, i) in ideals {
                rows.push(QuotientRow {
                    fixture: r.name.clone(),
                    ideal: name,
                    report: quotient_bound(alg, &i, FactorSpectra::default(), tols)?,
                });
            }
            Ok(ok(match common.format {
                Format::Csv => report::quotient_csv(&rows),
                Format::Text => report::quotient_text(&rows, alg.labels()),
            }))
        }
        Command::VerifyWarped { fixture, grid, samples, n_theta } => {
            let r = resolve(fixture, common, tols)?;
            verify_warped(&r.name, expect_warp(&r)?, *grid, *samples, *n_theta, common, tols)
        }
        Command::TailEss { fixture, grid, cutoffs } => {
            let r = resolve(fixture, common, tols)?;
            let spec = expect_warp(&r)?;
            check_grid(*grid, spec)?;
            let cutoffs = if cutoffs.is_empty() { default_cutoffs(spec) } else { cutoffs.clone() };
            let points = lambda0_ess_tail(spec, *grid, &cutoffs, tols)?;
            let rows = vec![(r.name.clone(), *grid, points)];
            Ok(ok(match common.format {
                Format::Csv => report::tail_csv(&rows),
                Format::Text => report::tail_text(&rows),
            }))
        }
    }
}

/// Runs a parsed command line; nothing is written to the process streams.
pub fn run(cli: &Cli) -> Outcome {
    let Some(tols) = Tolerances::preset(&cli.common.tol_preset) else {
        return fail(Error::Precondition(format!(
            "unknown tolerance preset `{}` (expected default or strict)",
            cli.common.tol_preset
        )));
    };
    let mut outcome = match dispatch(cli, &tols) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    if let Some(path) = &cli.common.out {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return fail(Error::Precondition(format!("cannot write {}: {e}", path.display())));
        }
        outcome.stdout.clear();
    }
    outcome
}

/// Parses `args` (program name first) and runs. Usage errors exit 1;
/// `--help` and `--version` exit 0.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
