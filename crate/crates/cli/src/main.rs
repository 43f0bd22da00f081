use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lagdef_core::families::{
    conormal_variety, open_swallowtail, parse_plane_curve, product_with_line, resonance_system, ResonanceSpec,
};
use lagdef_core::manifest::{parse_manifest, Compute, Manifest};
use lagdef_core::pipeline::milnor_number;
use lagdef_core::report::{emit_structured, emit_table, run_check, run_pipeline, Format, Report, Status};
use lagdef_core::LagError;

mod tables;

const EXIT_PRECONDITION: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(name = "lagdef", version, about = "Lagrangian deformation spaces of weighted-homogeneous involutive ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Involutivity, homogeneity and condition P for a manifest.
    Check {
        manifest: PathBuf,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// LT¹, LT² and the residue eigenvalues.
    Lt {
        manifest: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
        /// Coordinate (or linear form) used for the torsion/free split.
        #[arg(long)]
        t: Option<String>,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Write a manifest for one of the built-in families.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Milnor number of a plane curve.
    Milnor { poly: String },
    /// Recompute the reference table of examples.
    Tables {
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value = "table")]
        format: String,
        /// Skip the rows that take minutes.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Open swallowtail Σ_k.
    Swallowtail { k: usize },
    /// Conormal space of a quasi-homogeneous plane curve.
    Conormal { poly: String },
    /// (λ z₁z̄₁ + μ z₂z̄₂, z₁^α z̄₁^β z₂^γ z̄₂^δ).
    Resonance {
        #[arg(allow_negative_numbers = true)]
        lambda: i64,
        #[arg(allow_negative_numbers = true)]
        mu: i64,
        alpha: u32,
        beta: u32,
        gamma: u32,
        delta: u32,
    },
    /// Product of a manifest's variety with a smooth line.
    Product { manifest: PathBuf },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("lagdef: {}", msg);
    ExitCode::from(code)
}

fn error_code(e: &LagError) -> u8 {
    match e {
        LagError::Parse { .. } | LagError::Manifest(_) | LagError::UnknownFormat(_) | LagError::UnknownVariable(_) => {
            EXIT_PARSE
        }
        LagError::ResourceBound(_) => 4,
        _ => EXIT_PRECONDITION,
    }
}

fn load(path: &PathBuf) -> Result<Manifest, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {}", path.display(), e)))?;
    parse_manifest(&text).map_err(|e| match e {
        LagError::Manifest(errs) => {
            for err in &errs {
                eprintln!("{}: {}", path.display(), err);
            }
            ExitCode::from(EXIT_PARSE)
        }
        other => fail(EXIT_PARSE, other),
    })
}

fn emit(reports: &[Report], format: &str) -> Result<(), ExitCode> {
    let f: Format = format.parse().map_err(|e| fail(EXIT_PARSE, e))?;
    match f {
        Format::Table => print!("{}", emit_table(reports)),
        Format::Structured => println!("{}", emit_structured(reports)),
    }
    Ok(())
}

fn worst(reports: &[Report]) -> ExitCode {
    let status = reports.iter().map(|r| r.status).max_by_key(|s| match s {
        Status::Ok => 0,
        Status::ResourceBound => 1,
        Status::PreconditionFailed => 2,
        Status::Error => 3,
    });
    ExitCode::from(status.map_or(0, |s| s.exit_code()) as u8)
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Check { manifest, format } => {
            let m = load(&manifest)?;
            let r = run_check(&m);
            emit(std::slice::from_ref(&r), &format)?;
            Ok(worst(&[r]))
        }
        Command::Lt { manifest, bound, t, format } => {
            format.parse::<Format>().map_err(|e| fail(EXIT_PARSE, e))?;
            let mut m = load(&manifest)?;
            if let Some(b) = bound {
                m.compute.degree_bound = b;
            }
            if t.is_some() {
                m.compute.t = t;
            }
            let r = run_pipeline(&m);
            emit(std::slice::from_ref(&r), &format)?;
            Ok(worst(&[r]))
        }
        Command::Gen { family, output } => {
            let l = match family {
                Family::Swallowtail { k } => open_swallowtail(k),
                Family::Conormal { poly } => parse_plane_curve(&poly).and_then(|f| conormal_variety(&f)),
                Family::Resonance { lambda, mu, alpha, beta, gamma, delta } => {
                    resonance_system(ResonanceSpec::new(lambda, mu, alpha, beta, gamma, delta))
                }
                Family::Product { manifest } => load(&manifest)?.variety().and_then(|l| product_with_line(&l)),
            }
            .map_err(|e| fail(error_code(&e), e))?;
            let m = Manifest::from_variety(&l, Compute::default()).map_err(|e| fail(EXIT_PRECONDITION, e))?;
            let text = m.to_toml();
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| fail(1, format!("{}: {}", path.display(), e)))?,
                None => print!("{}", text),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Milnor { poly } => {
            let f = parse_plane_curve(&poly).map_err(|e| fail(EXIT_PARSE, e))?;
            let mu = milnor_number(&f).map_err(|e| fail(error_code(&e), e))?;
            println!("{}", mu);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { bound, format, quick } => {
            format.parse::<Format>().map_err(|e| fail(EXIT_PARSE, e))?;
            let rows = tables::run(bound, quick);
            let reports: Vec<Report> = rows.iter().map(|r| r.report.clone()).collect();
            emit(&reports, &format)?;
            if format == "table" {
                print!("{}", tables::comparison(&rows));
            }
            Ok(if rows.iter().all(|r| r.matches) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
