//! The `wk` command-line tool, as a library so it can be driven in-process.

pub mod args;
pub mod cache;
mod output;

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;
use thiserror::Error;
use wk_core::automorphism::{stable_counterexample, verify_aut_divides_d3, verify_aut_divides_d3_through};
use wk_core::denominators::{
    d_gn, script_d, tilde_d, verify_divisibility_chain, verify_prime_factors, verify_prime_orders,
    verify_small_primes_in_d3, verify_two_point_denominators,
};
use wk_core::kappa::KappaSpec;
use wk_core::monotonicity::verify_monotonicity_detailed;
use wk_core::oracles::{verify_faber_identity, verify_two_point_oracles};
use wk_core::tau::enumerate_specs;
use wk_core::{KappaEvaluator, PrimeFactorization, Rational, TauEvaluator, TauSpec};

use args::{Claim, Cli, Command};
use cache::CacheError;
use output::Output;

/// Worker stack size; the recursion is shallow but big-integer frames are not small.
const STACK_BYTES: usize = 64 << 20;

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] wk_core::Error),
    #[error("cache: {0}")]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            // a denominator with a forbidden prime is a failed claim, not bad input
            CliError::Core(wk_core::Error::UnexpectedPrime { .. }) => 1,
            _ => 2,
        }
    }
}

/// Runs the tool on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.map_or(0, usize::from))
        .stack_size(STACK_BYTES)
        .build()
        .expect("thread pool");
    match pool.install(|| execute(&cli)) {
        Ok(out) => Outcome {
            code: if out.passed() { 0 } else { 1 },
            stdout: out.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("wk: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let started = Instant::now();
    let ev = TauEvaluator::new();
    if let Some(path) = &cli.cache {
        if path.exists() {
            let table = cache::load(path)?;
            if cli.verify_cache {
                cache::verify(&table)?;
            }
            progress(
                cli,
                format_args!("loaded {} cached values from {}", table.len(), path.display()),
            );
            for (spec, value) in table {
                ev.memo().insert(spec, value);
            }
        }
    }

    let out = dispatch(cli, &ev)?;

    progress(
        cli,
        format_args!(
            "memo: {} entries, {} hits, {} misses; {:.2?}",
            ev.memo().len(),
            ev.memo().hits(),
            ev.memo().misses(),
            started.elapsed()
        ),
    );
    if let Some(path) = &cli.cache {
        cache::save(path, &ev.memo().entries())?;
        progress(cli, format_args!("wrote {}", path.display()));
    }
    Ok(out)
}

fn progress(cli: &Cli, msg: std::fmt::Arguments<'_>) {
    if cli.progress {
        eprintln!("wk: {msg}");
    }
}

fn dispatch(cli: &Cli, ev: &TauEvaluator) -> Result<Output, CliError> {
    Ok(match &cli.command {
        Command::Eval { g, d } => {
            let spec = TauSpec::new(*g, d.clone());
            Output::Value(spec.clone(), ev.intersection(&spec)?)
        }
        Command::Kappa { g, a } => {
            let spec = KappaSpec::new(*g, a.clone())?;
            let value = KappaEvaluator::new(ev).kappa_integral(&spec)?;
            Output::Kappa(spec, value)
        }
        Command::Denom { g, n } => Output::Factorization {
            quantity: format!("D({g},{n})"),
            factorization: d_gn(ev, *g, *n)?,
        },
        Command::ScriptD { g } => Output::Factorization {
            quantity: format!("script_D({g})"),
            factorization: script_d(ev, *g)?,
        },
        Command::TildeD { g } => Output::Factorization {
            quantity: format!("tilde_D({g})"),
            factorization: tilde_d(&KappaEvaluator::new(ev), *g)?,
        },
        Command::Verify {
            claim,
            g,
            p,
            n,
            d3,
            through,
            unreduced,
        } => verify(ev, *claim, *g, *p, *n, d3.as_deref(), *through, *unreduced)?,
        Command::Crosscheck { g } => {
            if *g < 1 {
                return Err(CliError::Usage("crosscheck needs --g >= 1".into()));
            }
            let mut report = verify_two_point_oracles(ev, *g).merge(verify_faber_identity(ev, *g));
            report.claim = format!("crosscheck g<={g}");
            report.unit = "values";
            Output::Report { report, ties: None }
        }
        Command::Table { g, n } => {
            if 2 * *g as i64 - 2 + (*n as i64) < 1 {
                return Err(wk_core::Error::Domain(format!("M_{{{g},{n}}} is unstable")).into());
            }
            let specs: Vec<TauSpec> = enumerate_specs(*g, *n, 0).collect();
            let rows = specs
                .into_par_iter()
                .map(|s| ev.intersection(&s).map(|v| (s, v)))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Table(rows)
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    ev: &TauEvaluator,
    claim: Claim,
    g: u32,
    p: Option<u64>,
    n: Option<usize>,
    d3: Option<&str>,
    through: bool,
    unreduced: bool,
) -> Result<Output, CliError> {
    let report = |report| Output::Report { report, ties: None };
    // D(g,3), or a substitute given by --d3 or --n
    let d3_or = |default_n: usize| -> Result<PrimeFactorization, CliError> {
        match (d3, n) {
            (Some(_), Some(_)) => Err(CliError::Usage("--d3 and --n are mutually exclusive".into())),
            (Some(f), None) => Ok(f.parse::<PrimeFactorization>()?),
            (None, n) => Ok(d_gn(ev, g, n.unwrap_or(default_n))?),
        }
    };
    Ok(match claim {
        Claim::Chain => {
            let n_min = (3 - 2 * g as i64).max(1) as usize;
            let n_max = n.unwrap_or((3 * g as usize).saturating_sub(3).max(n_min + 2));
            report(verify_divisibility_chain(ev, g, n_max)?)
        }
        Claim::Conj25 => report(verify_prime_orders(ev, g)?),
        Claim::Thm43 => report(verify_prime_factors(ev, g)?),
        Claim::Lemma42 => report(verify_two_point_denominators::<Rational>(g)?),
        Claim::Ordlemma => report(verify_small_primes_in_d3(g, &d3_or(3)?)?),
        Claim::Autbound if through => {
            if d3.is_some() || n.is_some() {
                return Err(CliError::Usage(
                    "--through computes D(g',3) itself; drop --d3/--n".into(),
                ));
            }
            report(verify_aut_divides_d3_through(ev, g)?)
        }
        Claim::Autbound => report(verify_aut_divides_d3(g, &d3_or(3)?)?),
        Claim::Monotone => {
            let sweep = verify_monotonicity_detailed(ev, g, !unreduced)?;
            Output::Report {
                report: sweep.report,
                ties: Some(sweep.equalities),
            }
        }
        Claim::Counterexample => {
            let p = p.ok_or_else(|| CliError::Usage("counterexample needs --p".into()))?;
            Output::Counterexample {
                g,
                p,
                result: stable_counterexample(g, p)?,
            }
        }
    })
}
