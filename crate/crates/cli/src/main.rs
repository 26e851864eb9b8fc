use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use superaudit_core::audit::run_suite;
use superaudit_core::parse::{parse_derivation, parse_expression, Expr};
use superaudit_core::{ConjugationMode, Registry};

/// Exact audits of SUSY supergroup identities.
#[derive(Parser)]
#[command(name = "superaudit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an audit suite and print its report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value_t = Mode::Multiplicative)]
        conjugation: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Normalize a superpolynomial or derivation.
    Eval {
        /// Registry context id; optional when the expression has a preamble.
        #[arg(long)]
        context: Option<String>,
        expr: String,
    },
    /// Super bracket of two derivations.
    Bracket {
        #[arg(long)]
        context: String,
        left: String,
        right: String,
    },
    /// List registry entries.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Multiplicative,
    Graded,
}

impl From<Mode> for ConjugationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Multiplicative => ConjugationMode::Multiplicative,
            Mode::Graded => ConjugationMode::Graded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let reg = Registry::global();
    match cli.command {
        Command::Verify { suite, conjugation, format } => match run_suite(&suite, conjugation.into()) {
            Ok(report) => {
                match format {
                    Format::Text => print!("{}", report.to_text()),
                    Format::Json => println!("{}", report.to_json()),
                }
                ExitCode::from(if report.all_pass() { 0 } else { 1 })
            }
            Err(e) => usage(e),
        },
        Command::Eval { context, expr } => {
            let ctx = match context.map(|id| reg.context(&id)).transpose() {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match parse_expression(ctx.as_ref(), &expr) {
                Ok((_, Expr::Poly(p))) => {
                    println!("{p}");
                    ExitCode::SUCCESS
                }
                Ok((_, Expr::Derivation(d))) => {
                    println!("{d}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Bracket { context, left, right } => {
            let ctx = match reg.context(&context) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let parsed = parse_derivation(&ctx, &left).and_then(|l| Ok((l, parse_derivation(&ctx, &right)?)));
            match parsed.and_then(|(l, r)| l.bracket(&r)) {
                Ok(b) => {
                    println!("{b}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::List => {
            print!("{}", reg.list());
            ExitCode::SUCCESS
        }
    }
}
