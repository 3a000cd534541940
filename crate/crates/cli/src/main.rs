//! Command-line front door. Exit codes: 0 = ran to completion (verdicts
//! may still say "fails" — that is a result), 2 = configuration problem,
//! 3 = internal contradiction (a certified verdict against a theorem).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dynzeta::positivity::bell_polynomials;
use dynzeta::rational::rational_from_str;
use dynzeta::Rational;
use dynzeta_cli::{
    csv_rows, default_tol, run_pipeline_with, scan_iterates, ModelConfig, PipelineOutput,
    DEFAULT_MAX_TWIST,
};

#[derive(Parser)]
#[command(name = "dynzeta", version, about = "Exact twisted dynamical zeta reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a model config and emit the canonical report.
    Zeta {
        /// Model configuration file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Override the truncation order
        #[arg(long)]
        terms: Option<usize>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write (n, trace_n, |coeff_n(Z)|) rows here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sweep iterates r = 1..R and check the inequality verdicts.
    Verify {
        /// Model configuration file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Largest iterate to sweep
        #[arg(long, default_value_t = 1)]
        iterate: u32,
        /// Interval tolerance as a rational "num/den"
        #[arg(long)]
        tol: Option<String>,
    },
    /// Report the least twist exponent matching the fixed-point count.
    Oracle {
        /// Model configuration file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// Largest twist exponent to try
        #[arg(long, default_value_t = DEFAULT_MAX_TWIST)]
        max_twist: u32,
    },
    /// Print the derivative Bell polynomials P_1..P_n.
    Bell {
        /// How many polynomials
        #[arg(long)]
        n: usize,
    },
}

const EXIT_CONFIG: u8 = 2;
const EXIT_CONTRADICTION: u8 = 3;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Zeta {
            model,
            terms,
            out,
            csv,
        } => {
            let mut cfg = load(&model)?;
            if terms.is_some() {
                cfg.terms = terms;
            }
            let result =
                run_pipeline_with(&cfg, &default_tol(), DEFAULT_MAX_TWIST).map_err(stringify)?;
            let json = result.report.to_canonical_json();
            match out {
                Some(path) => std::fs::write(&path, json + "\n").map_err(stringify)?,
                None => print_line(&json)?,
            }
            if let Some(path) = csv {
                write_csv(&path, &result)?;
            }
            Ok(exit_for(&[result]))
        }
        Command::Verify {
            model,
            iterate,
            tol,
        } => {
            let cfg = load(&model)?;
            let tol = parse_tol(tol.as_deref())?;
            if iterate < 1 {
                return Err("iterate must be >= 1".into());
            }
            let outputs = scan_iterates(&cfg, iterate, &tol).map_err(stringify)?;
            for out in &outputs {
                let s = &out.report.spectral;
                print_line(&format!(
                    "r={} ineq1={} ineq2={} positivity={} disc={} agreement={}",
                    out.report.config.iterate,
                    s.ineq1,
                    s.ineq2,
                    out.report.positivity,
                    out.report.disc.verdict,
                    out.report.zeta.agreement
                ))?;
            }
            Ok(exit_for(&outputs))
        }
        Command::Oracle { model, max_twist } => {
            let cfg = load(&model)?;
            if max_twist < 1 {
                return Err("max-twist must be >= 1".into());
            }
            let counted = cfg
                .counted_model()
                .map_err(stringify)?
                .ok_or_else(|| format!("kind {} has no fixed-point oracle", cfg.kind))?;
            match dynzeta::n0_estimate(&counted, max_twist).map_err(stringify)? {
                Some(n0) => print_line(&format!("n0={n0}"))?,
                None => print_line(&format!("n0 not found for twists 1..={max_twist}"))?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bell { n } => {
            let polys = bell_polynomials(n).map_err(stringify)?;
            for p in &polys {
                print_line(&format!("P_{} = {}", p.n(), format_bell(p)))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load(path: &PathBuf) -> Result<ModelConfig, String> {
    ModelConfig::from_path(path).map_err(stringify)
}

/// Writes one line to stdout, treating a closed pipe as a normal end.
fn print_line(s: &str) -> Result<(), String> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{s}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

fn stringify<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn parse_tol(tol: Option<&str>) -> Result<Rational, String> {
    match tol {
        None => Ok(default_tol()),
        Some(s) => {
            let t = rational_from_str(s).ok_or_else(|| format!("bad tolerance {s:?}"))?;
            if t <= Rational::from_integer(0.into()) {
                return Err("tolerance must be positive".into());
            }
            Ok(t)
        }
    }
}

fn exit_for(outputs: &[PipelineOutput]) -> ExitCode {
    if outputs.iter().any(|o| o.contradiction) {
        ExitCode::from(EXIT_CONTRADICTION)
    } else {
        ExitCode::SUCCESS
    }
}

fn write_csv(path: &PathBuf, out: &PipelineOutput) -> Result<(), String> {
    let mut file = std::fs::File::create(path).map_err(stringify)?;
    writeln!(file, "n,trace,abs_zeta_coeff").map_err(stringify)?;
    for (n, trace, coeff) in csv_rows(out) {
        writeln!(file, "{n},{trace},{coeff}").map_err(stringify)?;
    }
    Ok(())
}

fn format_bell(p: &dynzeta::BellPolynomial) -> String {
    let mut parts = Vec::new();
    for (expo, coeff) in p.terms() {
        let mut factors = Vec::new();
        if !coeff.to_string().eq("1") || expo.iter().all(|&e| e == 0) {
            factors.push(coeff.to_string());
        }
        for (i, &e) in expo.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        parts.push(factors.join(" "));
    }
    parts.join(" + ")
}
