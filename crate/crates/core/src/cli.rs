//! Command-line front end.
//!
//! Exit codes: 0 success (including a computed `false`), 1 verification
//! failure, 2 usage error, 3 domain error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fibration::{build_fibration, segments_tsv, verify_fibration};
use crate::hopf::{sample_hopf_fibration, Algebra};
use crate::hrcore::{self, exists_fibration, rho, DimensionPair, TableFormat};
use crate::hrmat::{build_hr_family, truncate_family, verify_hr_family, FamilyReport, HrFamily};
use crate::linalg::{fraction_string, RationalVector};
use crate::sampling::SampleRng;
use crate::series::{
    base_series, complex_condition_holds, min_complex_ambient, DEFAULT_SEARCH_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "ahf",
    about = "Affine Hopf fibrations in exact arithmetic",
    disable_version_flag = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print nothing on success; rely on the exit code.
    #[arg(long, global = true)]
    pub quiet: bool,

    /// Print the library version and the reference-table fixture hash.
    #[arg(long)]
    pub version: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hurwitz–Radon function rho(N).
    Rho { n: BigUint },
    /// Whether R^n admits a fibration by pairwise skew affine p-planes.
    Exists { p: BigUint, n: BigUint },
    /// Admissible fiber dimensions for a range of ambient dimensions.
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Canonical Hurwitz–Radon family on R^N.
    HrFamily {
        n: usize,
        /// Keep only the first R members.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Verify a family given as JSON.
    HrVerify {
        /// JSON file, or `-` for standard input.
        #[arg(long)]
        input: PathBuf,
    },
    /// Build, verify or project with the fibration of R^n.
    #[command(subcommand)]
    Fibration(FibrationCommand),
    /// Centrally projected classical Hopf fibrations.
    #[command(subcommand)]
    Hopf(HopfCommand),
    /// Smallest n not excluded for complex skew fibrations with p-dimensional fibers.
    ComplexMin {
        p: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: u64,
    },
    /// Integrality test for complex skew fibrations of C^n.
    ComplexCheck { p: u64, n: u64 },
    /// Coefficients of (t / ln(1 + t))^M up to t^K.
    SeriesCoeffs {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        power: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FibrationCommand {
    /// Print the normalized B-matrices (json) or sampled fibers (tsv).
    Build {
        p: u64,
        n: u64,
        /// Fibers to dump with --format tsv.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Check skewness of seeded fiber pairs.
    Verify {
        p: u64,
        n: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Base point of the fiber through a point of R^n.
    Project {
        p: u64,
        n: u64,
        /// Comma-separated coordinates x_1..x_p, y_1..y_N; rationals as a/b.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HopfCommand {
    /// Sample projected fibers and check pairwise skewness.
    Sample(HopfSampleArgs),
}

#[derive(Debug, Args)]
pub struct HopfSampleArgs {
    #[arg(long, value_parser = ["complex", "quaternion"])]
    pub algebra: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Chart coordinate (default: the last one).
    #[arg(long)]
    pub chart: Option<usize>,
    /// Write the projected fibers as TSV to this file.
    #[arg(long)]
    pub emit_segments: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    dispatch(&cli, out, err)
}

/// Runs a parsed request.
pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cli.version {
        let _ = writeln!(
            out,
            "affine-hopf {} (reference tables sha256 {})",
            env!("CARGO_PKG_VERSION"),
            hrcore::reference_tables_hash()
        );
        return EXIT_OK;
    }
    let Some(command) = &cli.command else {
        let _ = writeln!(err, "error: a subcommand is required (try --help)");
        return EXIT_USAGE;
    };
    match execute(cli, command) {
        Ok(outcome) => {
            if !(cli.quiet && outcome.status == EXIT_OK) {
                let _ = out.write_all(outcome.text.as_bytes());
            }
            if outcome.status != EXIT_OK {
                let _ = writeln!(err, "verification failed");
            }
            outcome.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    text: String,
    status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            status: EXIT_OK,
        }
    }

    fn verdict(text: String, passed: bool) -> Self {
        Outcome {
            text,
            status: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: serde_json::Value) -> String {
    line(serde_json::to_string(&v).expect("json value serializes"))
}

fn execute(cli: &Cli, command: &Command) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    Ok(match command {
        Command::Rho { n } => {
            let r = rho(n)?;
            Outcome::ok(if json {
                // Arbitrary precision: emitted as a JSON number token.
                line(format!("{{\"N\":{n},\"rho\":{r}}}"))
            } else {
                line(r)
            })
        }
        Command::Exists { p, n } => {
            let answer = exists_fibration(&DimensionPair::new(p.clone(), n.clone()))?;
            Outcome::ok(if json {
                line(format!("{{\"p\":{p},\"n\":{n},\"exists\":{answer}}}"))
            } else {
                line(answer)
            })
        }
        Command::Table { from, to } => {
            let format = match cli.format {
                Format::Text => TableFormat::Text,
                Format::Tsv => TableFormat::Tsv,
                Format::Json => TableFormat::Json,
            };
            Outcome::ok(hrcore::render_table(*from, *to, format)?)
        }
        Command::HrFamily { n, r } => {
            let mut fam = build_hr_family(*n)?;
            if let Some(r) = r {
                fam = truncate_family(&fam, *r)?;
            }
            Outcome::ok(if json {
                line(fam.to_json())
            } else {
                render_family(&fam)
            })
        }
        Command::HrVerify { input } => {
            let text = if input.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(input)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", input.display())))?
            };
            let fam = HrFamily::from_json(&text)?;
            let report = verify_hr_family(&fam)?;
            let body = if json {
                let violation = match &report {
                    FamilyReport::Pass { .. } => serde_json::Value::Null,
                    FamilyReport::Fail(v) => v.to_string().into(),
                };
                json_line(
                    json!({"N": fam.dim(), "r": fam.len(), "pass": report.passed(), "violation": violation}),
                )
            } else {
                line(&report)
            };
            Outcome::verdict(body, report.passed())
        }
        Command::Fibration(sub) => fibration_command(cli, sub)?,
        Command::Hopf(HopfCommand::Sample(args)) => {
            let algebra: Algebra = args.algebra.parse()?;
            let report =
                sample_hopf_fibration(algebra, args.m, args.chart, args.samples, cli.seed)?;
            if let Some(path) = &args.emit_segments {
                std::fs::write(path, segments_tsv(&report.fibers))
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            let body = if json {
                json_line(json!({
                    "algebra": algebra.to_string(),
                    "m": report.m,
                    "fiber_dim": report.fiber_dim,
                    "ambient_dim": report.ambient_dim,
                    "fibers": report.fibers.len(),
                    "pairs_checked": report.pairs_checked,
                    "same_fiber_pairs": report.same_fiber_pairs,
                    "equatorial_skipped": report.equatorial_skipped,
                    "seed": cli.seed,
                    "pass": report.passed(),
                }))
            } else if cli.format == Format::Tsv {
                segments_tsv(&report.fibers)
            } else {
                line(&report)
            };
            Outcome::verdict(body, report.passed())
        }
        Command::ComplexMin { p, limit } => {
            let found = min_complex_ambient(*p, *limit)?;
            Outcome::ok(if json {
                json_line(json!({"p": p, "limit": limit, "min_n": found}))
            } else {
                line(found.map_or_else(|| "not-found".to_string(), |n| n.to_string()))
            })
        }
        Command::ComplexCheck { p, n } => {
            let holds = complex_condition_holds(*p, *n)?;
            Outcome::ok(if json {
                json_line(json!({"p": p, "n": n, "holds": holds}))
            } else {
                line(holds)
            })
        }
        Command::SeriesCoeffs { order, power } => {
            let s = base_series(*order).pow(*power)?;
            let coeffs: Vec<String> = s.coeffs().iter().map(fraction_string).collect();
            Outcome::ok(if json {
                json_line(json!({"order": order, "power": power, "coeffs": coeffs}))
            } else {
                line(coeffs.join(" "))
            })
        }
    })
}

fn fibration_command(cli: &Cli, sub: &FibrationCommand) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    Ok(match sub {
        FibrationCommand::Build { p, n, samples } => {
            let fib = build_fibration(*p, *n)?;
            match cli.format {
                Format::Json => Outcome::ok(line(fib.to_json())),
                Format::Tsv => {
                    let mut rng = SampleRng::new(cli.seed);
                    let fibers = (0..*samples)
                        .map(|_| fib.fiber_at(&rng.vector(fib.base_dim())))
                        .collect::<Result<Vec<_>>>()?;
                    Outcome::ok(segments_tsv(&fibers))
                }
                Format::Text => {
                    let mut s = format!(
                        "fibration of R^{} by {}-dimensional skew fibers: N={} r={}\n",
                        fib.ambient_dim(),
                        fib.fiber_dim(),
                        fib.base_dim(),
                        fib.family_size()
                    );
                    for (k, b) in fib.dual().b_matrices().iter().enumerate() {
                        s.push_str(&format!("B_{}:\n", k + 1));
                        for row in b.to_rows() {
                            s.push_str(&format_row(&row));
                        }
                    }
                    Outcome::ok(s)
                }
            }
        }
        FibrationCommand::Verify { p, n, samples } => {
            let fib = build_fibration(*p, *n)?;
            let report = verify_fibration(&fib, *samples, cli.seed)?;
            let body = if json {
                let counterexample = report.counterexample.as_ref().map(|c| {
                    json!({
                        "sample_index": c.sample_index,
                        "b1": c.b1.iter().map(fraction_string).collect::<Vec<_>>(),
                        "b2": c.b2.iter().map(fraction_string).collect::<Vec<_>>(),
                        "rank": c.rank,
                        "required_rank": c.required_rank,
                    })
                });
                json_line(json!({
                    "p": report.p, "n": report.n, "samples": report.samples,
                    "seed": report.seed, "pass": report.passed(), "counterexample": counterexample,
                }))
            } else {
                line(&report)
            };
            Outcome::verdict(body, report.passed())
        }
        FibrationCommand::Project { p, n, point } => {
            let fib = build_fibration(*p, *n)?;
            let point = RationalVector::parse(point)?;
            let b = fib.base_point(&point)?;
            Outcome::ok(if json {
                json_line(json!({"base": b.iter().map(fraction_string).collect::<Vec<_>>()}))
            } else {
                line(&b)
            })
        }
    })
}

fn format_row(row: &[i64]) -> String {
    let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
    format!("  [{}]\n", cells.join(" "))
}

fn render_family(fam: &HrFamily) -> String {
    let mut s = format!("Hurwitz-Radon family on R^{}: r={}\n", fam.dim(), fam.len());
    for (i, m) in fam.matrices().iter().enumerate() {
        s.push_str(&format!("A_{}:\n", i + 1));
        for row in m.to_rows() {
            s.push_str(&format_row(&row));
        }
    }
    s
}
