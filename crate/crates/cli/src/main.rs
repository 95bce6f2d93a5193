//! `ql`: cohomology tables, liaison and resolutions for ACM curves.

mod commands;
mod error;
mod scenario;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ql_core::{Ambient, Window};

use crate::error::CliError;
use crate::scenario::Scenario;

#[derive(Debug, Parser)]
#[command(
    name = "ql",
    version,
    about = "Cohomology tables, liaison and resolutions for ACM curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print h^0(O_C(n)), h^0(I_C(n)) and the full cohomology table of I_C.
    Table(TableArgs),
    /// Residual degree and genus under a complete-intersection link.
    Link(LinkArgs),
    /// Locally free resolution of I_C on the quadric threefold.
    Resolve(ResolveArgs),
    /// Check every recorded table value and resolution.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rows {
    Section,
    Ideal,
    Full,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// p3, p4, pN or quadric3
    #[arg(long, value_parser = parse_ambient)]
    ambient: Option<Ambient>,
    #[arg(short = 'd', long)]
    degree: Option<i64>,
    #[arg(short = 'g', long)]
    genus: Option<i64>,
    /// Twist window `lo:hi`; QL_WINDOW sets the default.
    #[arg(long)]
    window: Option<Window>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// key=value file; flags given on the command line take precedence.
    #[arg(long, value_name = "FILE")]
    scenario: Option<String>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_enum)]
    rows: Option<Rows>,
}

#[derive(Debug, Args)]
struct LinkArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Hypersurface degrees, e.g. 2,2,3 for a curve in P4.
    #[arg(long)]
    ci: Option<String>,
}

#[derive(Debug, Args)]
struct ResolveArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, conflicts_with = "ntype")]
    etype: bool,
    #[arg(long)]
    ntype: bool,
    /// Link twists `a,b`: C is linked through Q ∩ (a) ∩ (b).
    #[arg(long, value_parser = parse_pair)]
    via: Option<(i64, i64)>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_ambient(s: &str) -> Result<Ambient, String> {
    let lower = s.to_ascii_lowercase();
    if lower == "quadric3" || lower == "q" {
        return Ok(Ambient::QuadricThreefold);
    }
    match lower.strip_prefix('p').map(u32::from_str) {
        Some(Ok(n)) if n >= 2 => Ok(Ambient::ProjSpace(n)),
        _ => Err(format!(
            "unknown ambient {s:?} (expected p3, p4, pN with N >= 2, or quadric3)"
        )),
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| format!("{part:?}: {e}"))
        })
        .collect()
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    match parse_list(s)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => Err(format!("expected two integers a,b, got {s:?}")),
    }
}

/// Fully resolved inputs: command-line flags, then the scenario file, then
/// the environment, then built-in defaults.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub ambient: Option<Ambient>,
    pub degree: Option<i64>,
    pub genus: Option<i64>,
    pub window: Window,
    pub format: Format,
    scenario: Scenario,
}

impl Inputs {
    fn resolve(args: CurveArgs) -> Result<Self, CliError> {
        let scenario = match &args.scenario {
            Some(path) => Scenario::load(path)?,
            None => Scenario::default(),
        };
        let env_window = match std::env::var("QL_WINDOW") {
            Ok(s) => Some(
                s.parse::<Window>()
                    .map_err(|e| CliError::Usage(format!("QL_WINDOW: {e}")))?,
            ),
            Err(_) => None,
        };
        let window = match args.window {
            Some(w) => w,
            None => scenario_value(&scenario, "window", |s| {
                s.parse::<Window>().map_err(|e| e.to_string())
            })?
            .or(env_window)
            .unwrap_or_default(),
        };
        Ok(Inputs {
            ambient: pick(args.ambient, &scenario, "ambient", parse_ambient)?,
            degree: pick(args.degree, &scenario, "degree", parse_int)?,
            genus: pick(args.genus, &scenario, "genus", parse_int)?,
            window,
            format: pick(args.format, &scenario, "format", value_enum::<Format>)?
                .unwrap_or(Format::Text),
            scenario,
        })
    }

    pub fn scenario<T>(
        &self,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<Option<T>, CliError> {
        scenario_value(&self.scenario, key, parse)
    }

    pub fn require<T: Copy>(&self, value: Option<T>, name: &str) -> Result<T, CliError> {
        value.ok_or_else(|| CliError::Usage(format!("missing --{name} (flag or scenario key)")))
    }
}

fn parse_int(s: &str) -> Result<i64, String> {
    s.parse::<i64>().map_err(|e| e.to_string())
}

fn value_enum<T: ValueEnum>(s: &str) -> Result<T, String> {
    T::from_str(s, true)
}

fn scenario_value<T>(
    scenario: &Scenario,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Option<T>, CliError> {
    scenario
        .get(key)
        .map(|s| parse(s).map_err(|e| CliError::Usage(format!("scenario key {key}: {e}"))))
        .transpose()
}

fn pick<T>(
    flag: Option<T>,
    scenario: &Scenario,
    key: &str,
    parse: impl Fn(&str) -> Result<T, String>,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => scenario_value(scenario, key, parse),
    }
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    match cli.command {
        Command::Table(a) => {
            let inputs = Inputs::resolve(a.curve)?;
            let rows = match a.rows {
                Some(r) => r,
                None => inputs
                    .scenario("rows", value_enum::<Rows>)?
                    .unwrap_or(Rows::All),
            };
            commands::table(&inputs, rows)
        }
        Command::Link(a) => {
            let inputs = Inputs::resolve(a.curve)?;
            let ci = match a.ci {
                Some(ci) => {
                    Some(parse_list(&ci).map_err(|e| CliError::Usage(format!("--ci: {e}")))?)
                }
                None => inputs.scenario("ci", parse_list)?,
            };
            let ci =
                ci.ok_or_else(|| CliError::Usage("missing --ci (flag or scenario key)".into()))?;
            commands::link(&inputs, &ci)
        }
        Command::Resolve(a) => {
            let inputs = Inputs::resolve(a.curve)?;
            let ntype = if a.etype || a.ntype {
                a.ntype
            } else {
                match inputs.scenario("flavor", |s| match s {
                    "etype" | "e" => Ok(false),
                    "ntype" | "n" => Ok(true),
                    _ => Err(format!("expected etype or ntype, got {s:?}")),
                })? {
                    Some(n) => n,
                    None => return Err(CliError::Usage("choose --etype or --ntype".into())),
                }
            };
            let via = match a.via {
                Some(v) => Some(v),
                None => inputs.scenario("via", parse_pair)?,
            };
            if ntype {
                let via = via.ok_or_else(|| CliError::Usage("--ntype needs --via a,b".into()))?;
                commands::resolve_ntype(&inputs, via)
            } else {
                commands::resolve_etype(&inputs)
            }
        }
        Command::VerifyPaper(a) => commands::verify(a.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
