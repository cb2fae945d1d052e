mod error;
mod run;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use error::CliError;
use run::{Output, Params};

/// Normal forms, evaluation and decategorification for diagrammatic
/// monoidal categories.
#[derive(Parser)]
#[command(name = "diagcat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Preset id: s, ahdeg, braid, hecke, tl, wreath, awreath, ob
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Order of the cyclic group labelling tokens (wreath, awreath)
    #[arg(long, global = true)]
    r: Option<usize>,
    /// JSON file with a Frobenius algebra to use for tokens instead of Z/r
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// Substitute a parameter, e.g. z=0 or delta=-2; repeatable
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    assign: Vec<String>,
    /// Dimension of the vector space assigned to an upward strand
    #[arg(short = 'm', global = true)]
    m: Option<usize>,
    /// Number of context tensor factors to the right (ahdeg model)
    #[arg(short = 'p', global = true)]
    p: Option<usize>,
    /// Dot degree bound for affine presets
    #[arg(short = 'D', long = "degree", global = true)]
    degree: Option<u32>,
    /// Number of strands
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Shift every dot by m in the ahdeg model
    #[arg(long, global = true)]
    shifted: bool,
    /// Read the expression from a file instead of the argument or stdin
    #[arg(long, global = true, value_name = "FILE")]
    file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression
    Normalize { expr: Option<String> },
    /// Basis of End(↑^n) in the documented order
    Basis,
    /// Dimension of End(↑^n)
    Dim,
    /// Normal form of UPPER stacked on LOWER
    Multiply { upper: String, lower: String },
    /// Matrix of an expression in the built-in model
    Eval { expr: Option<String> },
    /// Right (or left) mate of an expression
    Mate {
        #[arg(long)]
        left: bool,
        expr: Option<String>,
    },
    /// Trace of an endomorphism in the built-in model
    Trace { expr: Option<String> },
    /// Young idempotent of a partition such as 2,1
    Young {
        partition: String,
        /// Rows separated by `/`, entries by `,`; defaults to row reading order
        #[arg(long)]
        tableau: Option<String>,
    },
    /// Rank of the left ideal generated by a Young idempotent
    Rank {
        partition: String,
        #[arg(long)]
        tableau: Option<String>,
    },
    /// Check that an expression is idempotent and report dim e·End·e
    KaroubiCheck { expr: Option<String> },
    /// Validate a symmetric Frobenius algebra and its dual basis
    FrobeniusCheck,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Basis => "basis",
            Command::Dim => "dim",
            Command::Multiply { .. } => "multiply",
            Command::Eval { .. } => "eval",
            Command::Mate { .. } => "mate",
            Command::Trace { .. } => "trace",
            Command::Young { .. } => "young",
            Command::Rank { .. } => "rank",
            Command::KaroubiCheck { .. } => "karoubi-check",
            Command::FrobeniusCheck => "frobenius-check",
        }
    }
}

fn read_expr(arg: &Option<String>, file: &Option<PathBuf>) -> Result<String, CliError> {
    match (arg, file) {
        (Some(_), Some(_)) => Err(CliError::usage("give the expression either as an argument or with --file")),
        (Some(s), None) => Ok(s.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::domain("io", format!("{}: {e}", path.display()))),
        (None, None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::domain("io", e))?;
            Ok(s.trim().to_string())
        }
    }
}

fn dispatch(cmd: &Command, opts: &Opts) -> Result<Output, CliError> {
    let params = Params {
        preset: opts.preset.clone(),
        r: opts.r,
        algebra: opts.algebra.clone(),
        assign: run::parse_assignment(&opts.assign)?,
        m: opts.m,
        p: opts.p,
        degree: opts.degree,
        n: opts.n,
        shifted: opts.shifted,
    };
    let expr = |e: &Option<String>| read_expr(e, &opts.file);
    match cmd {
        Command::Normalize { expr: e } => run::normalize_cmd(&params, &expr(e)?),
        Command::Basis => run::basis_cmd(&params),
        Command::Dim => run::dim_cmd(&params),
        Command::Multiply { upper, lower } => run::multiply_cmd(&params, upper, lower),
        Command::Eval { expr: e } => run::eval_cmd(&params, &expr(e)?),
        Command::Mate { left, expr: e } => run::mate_cmd(&params, &expr(e)?, *left),
        Command::Trace { expr: e } => run::trace_cmd(&params, &expr(e)?),
        Command::Young { partition, tableau } => run::young_cmd(partition, tableau.as_deref()),
        Command::Rank { partition, tableau } => run::rank_cmd(partition, tableau.as_deref()),
        Command::KaroubiCheck { expr: e } => run::karoubi_cmd(&params, &expr(e)?),
        Command::FrobeniusCheck => run::frobenius_cmd(&params),
    }
}

/// A closed pipe downstream is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let json_mode = cli.opts.format == Format::Json;
    match dispatch(&cli.command, &cli.opts) {
        Ok(out) => {
            if json_mode {
                let doc = json!({"command": name, "preset": cli.opts.preset, "result": out.json});
                emit(&serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                emit(&out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json_mode {
                let doc = json!({"command": name, "error": {"code": e.code, "message": e.message}});
                emit(&serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                eprintln!("error[{}]: {}", e.code, e.message);
            }
            ExitCode::from(e.exit_code())
        }
    }
}
