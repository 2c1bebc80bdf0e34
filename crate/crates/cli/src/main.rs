use clap::{Args, Parser, Subcommand};
use cmforge::curve::{smoothness_check, CurveModel};
use cmforge::exact::{int, parse_rational, Rational};
use cmforge_cli::{commands, json, suite, CliError, Result};
use serde_json::Value;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cmforge", version, about = "Exact computations on Calogero-Moser spaces of curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input JSON file; standard input when absent.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// Output file, written atomically; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Seeded {
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = suite::DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Build the generic point through the given curve points.
    MakePoint {
        /// AffineLine or Torus; for plane curves pass the curve JSON with --input.
        #[arg(long)]
        kind: Option<String>,
        /// A point `x` or `x,y` with rational coordinates; repeatable.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        /// Diagonal entry of Z at each point; repeatable, zero by default.
        #[arg(long = "alpha", allow_hyphen_values = true)]
        alphas: Vec<String>,
        #[command(flatten)]
        io: Io,
    },
    /// Check every defining relation of a point.
    Verify {
        #[command(flatten)]
        io: Io,
    },
    /// Generators of the fractional ideal of a point.
    Forge {
        #[command(flatten)]
        io: Io,
    },
    /// Codimension of the truncated spans of an ideal.
    Codim {
        /// Largest truncation order; overrides CM_FORGE_KMAX.
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Twist a point by a unit power or a one-form.
    Act {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "form")]
        unit_power: Option<i64>,
        /// One-form JSON file.
        #[arg(long)]
        form: Option<PathBuf>,
        #[command(flatten)]
        io: Io,
    },
    /// Dimension of the commutant of the point's module.
    Commutant {
        #[command(flatten)]
        io: Io,
    },
    /// Tangent and moduli dimensions at a point.
    Tangent {
        #[command(flatten)]
        io: Io,
    },
    /// Euler characteristic of a module pair, or the seeded random suite.
    Euler {
        /// Pair file `{"u": module, "v": module}`; runs the suite when absent.
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        seeded: Seeded,
    },
    /// Residue calculus on seeded random kernels.
    SzegoDemo {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        seeded: Seeded,
    },
    /// Battery, Euler and residue suites in one report.
    Suite {
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        seeded: Seeded,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

fn read_json(input: Option<&Path>) -> Result<Value> {
    let text = match input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| io_err(p, e))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| io_err(Path::new("<stdin>"), e))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(text.as_bytes()).and_then(|_| f.sync_all()))
        .and_then(|_| std::fs::rename(&tmp, path));
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result.map_err(|e| io_err(path, e))
}

fn emit(output: Option<&Path>, v: &Value) -> Result<()> {
    let text = json::to_text(v);
    match output {
        Some(p) => write_atomic(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).ok_or_else(|| CliError::Schema(format!("bad rational {s:?}")))
}

fn point_arg(s: &str) -> Result<(Rational, Rational)> {
    match s.split_once(',') {
        Some((x, y)) => Ok((rational_arg(x)?, rational_arg(y)?)),
        None => Ok((rational_arg(s)?, int(0))),
    }
}

fn kmax_env() -> Result<Option<usize>> {
    match std::env::var("CM_FORGE_KMAX") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Schema(format!("CM_FORGE_KMAX must be a non-negative integer, got {s:?}"))),
        Err(_) => Ok(None),
    }
}

fn point_in(io: &Io) -> Result<cmforge::cmspace::CMPoint> {
    json::parse_point(&read_json(io.input.as_deref())?)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::MakePoint { kind, points, alphas, io } => {
            let curve = match kind.as_deref() {
                Some("AffineLine") | Some("line") => CurveModel::AffineLine,
                Some("Torus") | Some("torus") => CurveModel::Torus,
                Some(other) => return Err(CliError::Schema(format!("unknown --kind {other:?}"))),
                None => json::parse_curve(&read_json(io.input.as_deref())?, "curve")?,
            };
            if let Some(r) = smoothness_check(&curve).filter(|r| !r.smooth) {
                eprintln!("cmforge: warning: curve may be singular (witness {:?}); proceeding", r.point);
            }
            let pts = points.iter().map(|s| point_arg(s)).collect::<Result<Vec<_>>>()?;
            let alphas = if alphas.is_empty() {
                vec![int(0); pts.len()]
            } else {
                alphas.iter().map(|s| rational_arg(s)).collect::<Result<Vec<_>>>()?
            };
            emit(io.output.as_deref(), &commands::make_point(&curve, &pts, &alphas)?)
        }
        Command::Verify { io } => {
            let (report, pass) = commands::verify(&point_in(&io)?)?;
            eprint!("{}", commands::verify_summary(&report));
            if pass {
                emit(io.output.as_deref(), &report)
            } else {
                Err(CliError::Precondition { message: "relations fail".into(), report: Some(report) })
            }
        }
        Command::Forge { io } => emit(io.output.as_deref(), &json::ideal(&commands::forge(&point_in(&io)?)?)),
        Command::Codim { kmax, io } => {
            let ideal = json::parse_ideal(&read_json(io.input.as_deref())?)?;
            let k = commands::resolve_kmax(&ideal, kmax, kmax_env()?);
            emit(io.output.as_deref(), &commands::codim(&ideal, k)?)
        }
        Command::Act { unit_power, form, io } => {
            let p = point_in(&io)?;
            let form = form.map(|f| json::parse_one_form(&read_json(Some(&f))?)).transpose()?;
            emit(io.output.as_deref(), &commands::act(&p, unit_power, form.as_ref())?)
        }
        Command::Commutant { io } => emit(io.output.as_deref(), &commands::commutant(&point_in(&io)?)?),
        Command::Tangent { io } => emit(io.output.as_deref(), &commands::tangent(&point_in(&io)?)?),
        Command::Euler { input, output, seeded } => {
            let report = match input {
                Some(path) => {
                    let v = read_json(Some(&path))?;
                    let field = |k: &str| v.get(k).ok_or_else(|| CliError::Schema(format!("pair: missing \"{k}\"")));
                    let u = json::parse_bmodule(field("u")?, "pair.u")?;
                    let w = json::parse_bmodule(field("v")?, "pair.v")?;
                    commands::euler_pair(&u, &w)?
                }
                None => suite::euler_suite(seeded.seed, seeded.trials)?,
            };
            emit(output.as_deref(), &report)
        }
        Command::SzegoDemo { output, seeded } => {
            emit(output.as_deref(), &suite::szego_suite(seeded.seed, seeded.trials)?)
        }
        Command::Suite { output, seeded } => emit(output.as_deref(), &suite::full_report(seeded.seed, seeded.trials)?),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("cmforge: {e}");
    print!("{}", json::to_text(&e.report()));
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli.command)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => fail(&e),
        Err(_) => fail(&CliError::Internal("panic during computation".into())),
    }
}
