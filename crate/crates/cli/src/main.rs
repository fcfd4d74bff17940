use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use elliptica_core::evaluator::{localized_class_resolution, orbifold_class, TorusPoint};
use elliptica_core::harness::{
    catalog, find, verify, verify_custom, SampleConfig, VerificationReport,
};
use elliptica_core::models::{load_model, Model};
use elliptica_core::numeric::{format_complex, parse_complex, ModularParam, PrecisionConfig};
use elliptica_core::theta::ThetaContext;
use elliptica_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "elliptica",
    version,
    about = "Theta functions, elliptic classes of quotient singularities, and identity checks"
)]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "ELLIPTICA_DIGITS", default_value_t = 30)]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the identity catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verify catalog identities at random points.
    Verify {
        /// Identity ids; omit and pass --all to run everything.
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Evaluate a special function at one point.
    Eval {
        function: Function,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Comma-separated additive arguments: v for theta; a,b for delta; lambda,t,z for phi; lambda,t1,t2,z for psi.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Evaluate the class of a model file at a torus point.
    Class {
        kind: ClassKind,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Comma-separated torus coordinates.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Check that two model files have equal classes.
    VerifyCustom {
        #[arg(long)]
        lhs_model: PathBuf,
        #[arg(long)]
        rhs_model: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Theta,
    Delta,
    Phi,
    Psi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassKind {
    Resolution,
    Orbifold,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the reports as a JSON array.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Evaluate samples on one thread.
    #[arg(long)]
    serial: bool,
}

impl Sampling {
    fn config(&self, digits: u32) -> Result<SampleConfig> {
        let defaults = SampleConfig::default();
        Ok(SampleConfig {
            samples: self.samples,
            seed: self.seed.unwrap_or(defaults.seed),
            tolerance: self.tol,
            precision: PrecisionConfig::with_digits(digits)?,
            parallel: !self.serial,
            ..defaults
        })
    }
}

fn context(tau: &str, digits: u32) -> Result<ThetaContext> {
    let precision = PrecisionConfig::with_digits(digits)?;
    let tau = parse_complex(tau, precision.bits())?;
    ThetaContext::new(&ModularParam::new(tau)?, precision)
}

fn print_value(label: &str, value: &rug::Complex, digits: u32) {
    let [re, im] = format_complex(value, digits as usize);
    println!("{label} = {re} {im}i");
}

fn summarize(report: &VerificationReport) {
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} {:<28} samples={} max_rel_err={:.3e} max_abs_err={:.3e} failures={} exact={}/{} ({} ms)",
        report.identity,
        report.samples,
        report.max_rel_err,
        report.max_abs_err,
        report.failures.len(),
        report.exact_points - report.exact_failures.len(),
        report.exact_points,
        report.elapsed_ms
    );
    for f in &report.exact_failures {
        println!("    exact mismatch at {f}");
    }
}

fn finish(reports: &[VerificationReport], json: Option<&PathBuf>) -> Result<bool> {
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(reports).expect("reports serialize");
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(reports.iter().all(|r| r.pass))
}

fn run(cli: Cli) -> Result<bool> {
    let digits = cli.digits;
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            for id in catalog() {
                println!("{:<28} {}", id.id, id.description);
            }
            Ok(true)
        }
        Command::Verify { ids, all, sampling } => {
            let identities = if all {
                catalog()
            } else if ids.is_empty() {
                return Err(Error::InvalidArgument(
                    "name at least one identity or pass --all".into(),
                ));
            } else {
                ids.iter().map(|id| find(id)).collect::<Result<Vec<_>>>()?
            };
            let cfg = sampling.config(digits)?;
            let mut reports = Vec::with_capacity(identities.len());
            for id in &identities {
                let report = verify(id, &cfg)?;
                summarize(&report);
                reports.push(report);
            }
            finish(&reports, sampling.json.as_ref())
        }
        Command::Eval {
            function,
            tau,
            args,
        } => {
            let ctx = context(&tau, digits)?;
            let x = args
                .iter()
                .map(|a| parse_complex(a, ctx.bits()))
                .collect::<Result<Vec<_>>>()?;
            let arity = match function {
                Function::Theta => 1,
                Function::Delta => 2,
                Function::Phi => 3,
                Function::Psi => 4,
            };
            if x.len() != arity {
                return Err(Error::InvalidArgument(format!(
                    "expected {arity} arguments, got {}",
                    x.len()
                )));
            }
            let (label, value) = match function {
                Function::Theta => ("theta", ctx.theta(&x[0])),
                Function::Delta => ("delta", ctx.delta(&x[0], &x[1])?),
                Function::Phi => ("phi", ctx.phi(&x[0], &x[1], &x[2])?),
                Function::Psi => ("psi", ctx.psi(&x[0], &x[1], &x[2], &x[3])?),
            };
            print_value(label, &value, digits);
            Ok(true)
        }
        Command::Class {
            kind,
            model,
            tau,
            t,
            z,
        } => {
            let ctx = context(&tau, digits)?;
            let t_args = t
                .iter()
                .map(|a| parse_complex(a, ctx.bits()))
                .collect::<Result<Vec<_>>>()?;
            let p = TorusPoint::new(t_args, parse_complex(&z, ctx.bits())?);
            let value = match (kind, load_model(&model)?) {
                (ClassKind::Resolution, Model::Resolution(m)) => {
                    localized_class_resolution(&ctx, &m, &p)?
                }
                (ClassKind::Orbifold, Model::Orbifold(m)) => orbifold_class(&ctx, &m, &p)?,
                (ClassKind::Resolution, _) => {
                    return Err(Error::InvalidArgument(format!(
                        "{} is not a resolution model",
                        model.display()
                    )))
                }
                (ClassKind::Orbifold, _) => {
                    return Err(Error::InvalidArgument(format!(
                        "{} is not an orbifold model",
                        model.display()
                    )))
                }
            };
            print_value("class", &value, digits);
            Ok(true)
        }
        Command::VerifyCustom {
            lhs_model,
            rhs_model,
            sampling,
        } => {
            let cfg = sampling.config(digits)?;
            let report = verify_custom(&load_model(&lhs_model)?, &load_model(&rhs_model)?, &cfg)?;
            summarize(&report);
            finish(std::slice::from_ref(&report), sampling.json.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
