use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cophi_core::checks::{self, Consistency};
use cophi_core::coalg::Side;
use cophi_core::io;
use cophi_core::itfunc::{Engine, PhiStatus};
use cophi_core::{Coalgebra, Comodule, Error, Field};
use serde_json::{json, Value};

mod examples;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "cophi",
    version,
    about = "Exact computations with comodules over path-truncated quiver coalgebras"
)]
struct Cli {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, default_value_t = 101)]
    field: u64,
    /// Window of infinite templates (defaults to the file's, else 20).
    #[arg(long, global = true)]
    window: Option<usize>,
    #[arg(long, global = true, default_value_t = 64)]
    horizon: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random endomorphisms tried per splitting step.
    #[arg(long, global = true, default_value_t = 32)]
    attempts: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Side of the comodules (defaults to the comodule file's, else right).
    #[arg(long, global = true, value_enum)]
    side: Option<SideArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Semiperfect,
    Qcf,
    Theorem,
    Nakayama,
    SimpleInjectives,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Igusa-Todorov value of a comodule.
    Phi {
        #[arg(short = 'c', long = "coalgebra")]
        coalgebra: PathBuf,
        #[arg(short = 'm', long = "comodule")]
        comodule: PathBuf,
    },
    /// Structural checks on one side.
    Check {
        #[arg(value_enum)]
        which: Which,
        #[arg(short = 'c', long = "coalgebra")]
        coalgebra: PathBuf,
        /// Also compute soc(P(S)) and check it inverts the Nakayama map.
        #[arg(long)]
        with_mu: bool,
        /// Dimension cap of the exhaustive family (theorem only).
        #[arg(long, default_value_t = 3)]
        dim_cap: usize,
        /// Random comodules added to the family (theorem only).
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Write ready-to-run input files: paper-left, paper-right or cycleN.
    Example {
        which: String,
        #[arg(short = 'o', long = "out", default_value = ".")]
        out: PathBuf,
    },
    /// Quiver, and optionally the cosyzygy orbit of a comodule, as DOT.
    ExportDot {
        #[arg(short = 'c', long = "coalgebra")]
        coalgebra: PathBuf,
        #[arg(short = 'm', long = "comodule")]
        comodule: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Math(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Outcome {
    stdout: String,
    warning: Option<String>,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(w) = &out.warning {
                eprintln!("{w}");
            }
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let field = Field::new(cli.field)?;
    if cli.horizon == 0 {
        return Err(Failure::Input("--horizon must be at least 1".into()));
    }
    let flag_side = cli.side.map(Side::from);
    let load = |path: &Path| -> Result<Coalgebra, Failure> {
        Ok(io::parse_coalgebra(&read(path)?, cli.window)?)
    };
    let engine = |c: &Coalgebra, side: Side| {
        Engine::new(c.clone(), side, field, cli.seed).with_attempts(cli.attempts)
    };
    let ctx = |c: Option<&Coalgebra>, side: Option<Side>, command: &str| report::Context {
        command: command.to_string(),
        field: field.p(),
        window: c.and_then(Coalgebra::window),
        coalgebra: c.map(Coalgebra::describe),
        side,
        horizon: cli.horizon,
        seed: cli.seed,
        attempts: cli.attempts,
    };
    let emit = |value: Value| match cli.format {
        Format::Json => io::to_pretty(&value),
        Format::Table => report::table(&value),
    };

    match &cli.command {
        Command::Phi {
            coalgebra,
            comodule,
        } => {
            let c = load(coalgebra)?;
            let text = read(comodule)?;
            let side = flag_side.or(declared_side(&text)?).unwrap_or(Side::Right);
            let m = io::parse_comodule(&text, &c, field, Some(side))?;
            let mut e = engine(&c, side);
            let r = e.phi(&m, cli.horizon)?;
            let warning = (r.status == PhiStatus::StableUpToHorizon).then(|| {
                format!(
                    "warning: value {} is STABLE_UP_TO_HORIZON: ranks were constant up to {} but the orbit closure did not close; this is not a proof",
                    r.value, cli.horizon
                )
            });
            let body = json!({ "phi": r, "registry": e.registry().dump() });
            Ok(Outcome {
                stdout: emit(report::wrap(&ctx(Some(&c), Some(side), "phi"), body)),
                warning,
                code: 0,
            })
        }
        Command::Check {
            which,
            coalgebra,
            with_mu,
            dim_cap,
            samples,
        } => {
            let c = load(coalgebra)?;
            let side = flag_side.unwrap_or(Side::Right);
            let mut code = 0;
            let (name, body) = match which {
                Which::Semiperfect => (
                    "check semiperfect",
                    json!(checks::check_semiperfect(&c, side, field)?),
                ),
                Which::Qcf => ("check qcf", json!(checks::check_qcf(&c, side, field)?)),
                Which::Nakayama => (
                    "check nakayama",
                    json!(checks::nakayama_nu(&c, side, field, *with_mu)?),
                ),
                Which::SimpleInjectives => (
                    "check simple-injectives",
                    json!(checks::simple_injectives(&c, side, field)?),
                ),
                Which::Theorem => {
                    let mut e = engine(&c, side);
                    let family =
                        checks::theorem_family(&c, side, field, *dim_cap, *samples, e.rng())?;
                    let r = checks::cross_validate_theorem(&mut e, &family, cli.horizon)?;
                    if r.verdict == Consistency::Inconsistent {
                        code = 4;
                    }
                    ("check theorem", json!(r))
                }
            };
            Ok(Outcome {
                stdout: emit(report::wrap(&ctx(Some(&c), Some(side), name), body)),
                warning: None,
                code,
            })
        }
        Command::Example { which, out } => {
            let files = examples::files(which).map_err(Failure::Input)?;
            fs::create_dir_all(out)
                .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            let mut written = Vec::new();
            for (name, value) in files {
                let path = out.join(&name);
                fs::write(&path, io::to_pretty(&value))
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            Ok(Outcome {
                stdout: emit(report::wrap(
                    &ctx(None, None, "example"),
                    json!({ "written": written }),
                )),
                warning: None,
                code: 0,
            })
        }
        Command::ExportDot {
            coalgebra,
            comodule,
        } => {
            let c = load(coalgebra)?;
            let mut stdout = io::quiver_dot(&c);
            if let Some(path) = comodule {
                let text = read(path)?;
                let side = flag_side.or(declared_side(&text)?).unwrap_or(Side::Right);
                let m: Comodule = io::parse_comodule(&text, &c, field, Some(side))?;
                stdout.push_str(&io::orbit_dot(&mut engine(&c, side), &m, cli.horizon)?);
            }
            Ok(Outcome {
                stdout,
                warning: None,
                code: 0,
            })
        }
    }
}

fn declared_side(text: &str) -> Result<Option<Side>, Failure> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("parse error: {e}")))?;
    match v.get("side") {
        None => Ok(None),
        Some(s) => serde_json::from_value(s.clone())
            .map(Some)
            .map_err(|e| Failure::Input(format!("parse error: side: {e}"))),
    }
}
