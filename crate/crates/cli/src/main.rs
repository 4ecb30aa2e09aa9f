//! Command line front end: certificate suites, q-expansions, evaluation,
//! extremal forms and figure data.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmcert::certify::suites::{write_figure, Config, Figure};
use qmcert::certify::identities::check_identity_src;
use qmcert::certify::{run_suite, Report, Suite};
use qmcert::expr::{elaborate, parse_expr};
use qmcert::extremal::extremal;
use qmcert::numeric::real;
use qmcert::{Result, DEFAULT_PREC, PREC_ENV};

#[derive(Parser)]
#[command(name = "qmcert", version, about = "Exact certificates for quasimodular form inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a certificate suite; exits 0 iff every certificate passes.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Series precision index for numeric evaluation.
        #[arg(long, env = PREC_ENV, default_value_t = DEFAULT_PREC)]
        prec: i64,
        /// Grid points per inequality domain.
        #[arg(long, default_value_t = 128)]
        points: usize,
        /// Order in q of coefficient scans.
        #[arg(long, default_value_t = 200)]
        order: i64,
        /// Point at which the limit quotients are compared.
        #[arg(long, default_value_t = 6.0)]
        t_large: f64,
        /// Relative tolerance of numeric scans.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Extra identity `LHS == RHS` to certify along with the suite.
        #[arg(long = "check", value_name = "LHS == RHS")]
        checks: Vec<String>,
    },
    /// Print the q-expansion of an expression through q^N.
    Qexp {
        expr: String,
        #[arg(long)]
        prec: i64,
    },
    /// Evaluate an expression at z = it.
    Eval {
        expr: String,
        #[arg(long)]
        t: f64,
        /// Series precision index.
        #[arg(long, env = PREC_ENV, default_value_t = DEFAULT_PREC)]
        prec: i64,
        #[arg(long, default_value_t = 1e-30)]
        tol: f64,
    },
    /// Print a normalized extremal form.
    Extremal {
        #[arg(long)]
        weight: i64,
        #[arg(long)]
        depth: i64,
        /// Also print the q-expansion through q^N.
        #[arg(long)]
        qexp: Option<i64>,
    },
    /// Write figure data as CSV.
    Figure {
        #[arg(long, value_parser = ["d8", "d24", "d24harder"])]
        name: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, env = PREC_ENV, default_value_t = DEFAULT_PREC)]
        prec: i64,
    },
}

fn run(cmd: Command) -> Result<bool> {
    let mut out = io::stdout().lock();
    match cmd {
        Command::Verify { suite, report, prec, points, order, t_large, tol, checks } => {
            let cfg = Config { prec, tol, points, order, t_large };
            let mut r = run_suite(suite.parse()?, &cfg)?;
            for (i, c) in checks.iter().enumerate() {
                let (lhs, rhs) = c
                    .split_once("==")
                    .ok_or_else(|| qmcert::Error::Elaboration(format!("`{c}` is not of the form LHS == RHS")))?;
                r.certificates.push(check_identity_src(&format!("check_{}", i + 1), "user supplied identity", lhs, rhs)?);
            }
            let r = Report::new(r.suite, r.config, r.certificates);
            write!(out, "{}", r.summary_table())?;
            if let Some(path) = report {
                let mut w = BufWriter::new(File::create(&path)?);
                serde_json::to_writer_pretty(&mut w, &r).map_err(|e| qmcert::Error::Io(e.to_string()))?;
                writeln!(w)?;
                w.flush()?;
            }
            Ok(r.all_passed())
        }
        Command::Qexp { expr, prec } => {
            let v = elaborate(&parse_expr(&expr)?)?;
            writeln!(out, "{}", v.to_qexp(2 * prec + 1)?)?;
            Ok(true)
        }
        Command::Eval { expr, t, prec, tol } => {
            let v = elaborate(&parse_expr(&expr)?)?;
            let e = v.eval(&real(t), prec, tol)?;
            writeln!(out, "{}", e.value.to_string_radix(10, Some(30)))?;
            Ok(true)
        }
        Command::Extremal { weight, depth, qexp } => {
            let f = extremal(weight, depth)?;
            writeln!(out, "{}", f.poly)?;
            if let Some(n) = qexp {
                writeln!(out, "{}", f.poly.to_qexp(2 * n + 1)?)?;
            }
            Ok(true)
        }
        Command::Figure { name, out: path, points, prec } => {
            let fig: Figure = name.parse()?;
            write_figure(fig, points, prec, BufWriter::new(File::create(&path)?))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
