//! Command-line front end: argument parsing, dispatch and output.

pub mod commands;
pub mod format;
pub mod parser;
pub mod report;

use std::io::{Read, Write};
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand, ValueEnum};
use powers_core::SolverRegistry;
use serde::Serialize;

use commands::{read_input, CliError, Input, InputKind, Options};

#[derive(Parser, Debug)]
#[command(name = "powers", version, about = "Solve polynomial equations through the centers of homogeneous forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a univariate equation by radicals.
    Solve(SolveArgs),
    /// Compute the center of a homogeneous form.
    Center(CommonArgs),
    /// Write a homogeneous form as a sum of powers of linear forms.
    Decompose(CommonArgs),
    /// Report the center class of a univariate equation.
    Classify(CommonArgs),
    /// Approximate roots with the numeric oracle.
    Oracle(CommonArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InputArg {
    Expr,
    Coeffs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Polynomial text or `-` for stdin.
    pub input: Option<String>,
    #[arg(id = "input_kind", long = "input", value_enum, default_value = "expr")]
    pub input_kind: InputArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Working precision in bits.
    #[arg(long, default_value_t = powers_core::DEFAULT_PRECISION as u32,
          value_parser = clap::value_parser!(u32).range(16..=65536))]
    pub precision: u32,
    #[arg(long)]
    pub no_verify: bool,
    /// Rotates the oracle's starting circle.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "auto")]
    pub method: String,
    /// One equation per line; `#` starts a comment line.
    #[arg(long, conflicts_with = "input")]
    pub batch: Option<String>,
}

impl CommonArgs {
    fn options(&self, method: &str) -> Options {
        Options {
            precision: self.precision as usize,
            verify: !self.no_verify,
            seed: self.seed,
            method: method.to_string(),
        }
    }

    fn kind(&self) -> InputKind {
        match self.input_kind {
            InputArg::Expr => InputKind::Expr,
            InputArg::Coeffs => InputKind::Coeffs,
        }
    }

    fn text(&self, stdin: &mut dyn Read) -> Result<String, CliError> {
        match self.input.as_deref() {
            None | Some("-") => {
                let mut s = String::new();
                stdin.read_to_string(&mut s).map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
                Ok(s)
            }
            Some(t) => Ok(t.to_string()),
        }
    }

    fn read(&self, stdin: &mut dyn Read) -> Result<Input, CliError> {
        read_input(self.kind(), self.text(stdin)?.trim())
    }
}

fn emit<T: Serialize>(format: FormatArg, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        FormatArg::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        FormatArg::Text => text(value),
    }
}

fn solve_one(line: &str, args: &SolveArgs, registry: &SolverRegistry, pretty: bool) -> (String, Result<(), CliError>) {
    let common = &args.common;
    let opts = common.options(&args.method);
    let solved = read_input(common.kind(), line).and_then(|i| commands::solve(&i, &opts, registry));
    match solved {
        Ok(s) => {
            let out = match (common.format, pretty) {
                (FormatArg::Json, true) => serde_json::to_string_pretty(&s.report).expect("serializable") + "\n",
                (FormatArg::Json, false) => serde_json::to_string(&s.report).expect("serializable") + "\n",
                (FormatArg::Text, _) => commands::solve_text(&s),
            };
            let status = if s.passed() {
                Ok(())
            } else {
                Err(CliError::Verification("radical roots disagree with the numeric oracle".into()))
            };
            (out, status)
        }
        Err(e) => (String::new(), Err(e)),
    }
}

fn batch(path: &str, args: &SolveArgs, registry: &SolverRegistry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {path}: {e}");
            return 1;
        }
    };
    let lines: Vec<&str> = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(lines.len().max(1));
    let mut results: Vec<Option<(String, Result<(), CliError>)>> = (0..lines.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= lines.len() {
                            break done;
                        }
                        done.push((i, solve_one(lines[i], args, registry, false)));
                    }
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                results[i] = Some(r);
            }
        }
    });
    let mut code = 0;
    for (line, r) in lines.iter().zip(results) {
        let (out, status) = r.expect("every line solved");
        let _ = stdout.write_all(out.as_bytes());
        if let Err(e) = status {
            if out.is_empty() && args.common.format == FormatArg::Json {
                let obj = serde_json::json!({ "input": line, "error": e.to_string(), "exit_code": e.exit_code() });
                let _ = writeln!(stdout, "{obj}");
            }
            let _ = writeln!(stderr, "error: {line}: {e}");
            if code == 0 {
                code = e.exit_code();
            }
        }
    }
    code
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let registry = SolverRegistry::with_defaults();
    let out = match &cli.command {
        Command::Solve(args) => {
            registry.get(&args.method)?;
            if let Some(path) = &args.batch {
                return match batch(path, args, &registry, stdout, stderr) {
                    0 => Ok(()),
                    code => Err(CliError::Exit(code)),
                };
            }
            let text = args.common.text(stdin)?;
            let (out, status) = solve_one(text.trim(), args, &registry, true);
            let _ = stdout.write_all(out.as_bytes());
            return status;
        }
        Command::Center(a) => {
            let r = commands::center(&a.read(stdin)?)?;
            emit(a.format, &r, commands::center_text)
        }
        Command::Decompose(a) => {
            let r = commands::decompose(&a.read(stdin)?, &a.options("auto"))?;
            emit(a.format, &r, commands::decompose_text)
        }
        Command::Classify(a) => {
            let r = commands::classify(&a.read(stdin)?)?;
            emit(a.format, &r, commands::classify_text)
        }
        Command::Oracle(a) => {
            let r = commands::oracle(&a.read(stdin)?, &a.options("auto"))?;
            emit(a.format, &r, commands::oracle_text)
        }
    };
    let _ = stdout.write_all(out.as_bytes());
    Ok(())
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(CliError::Exit(code)) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
