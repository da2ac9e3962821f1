use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "wk",
    version,
    about = "Exact psi/kappa intersection numbers on moduli of curves and their denominators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Memo cache file, loaded before and written after the command.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Recompute every cached value on load and reject mismatches.
    #[arg(long, global = true, requires = "cache")]
    pub verify_cache: bool,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Progress and memo statistics on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One correlator <tau_d1 ... tau_dn>_g.
    Eval {
        #[arg(long)]
        g: u32,
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// One kappa integral over M_g.
    Kappa {
        #[arg(long)]
        g: u32,
        /// Comma-separated kappa indices, each >= 1.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
    },
    /// lcm of all denominators on M_{g,n}.
    Denom {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// lcm of denominators with every exponent >= 2.
    #[command(name = "scriptD")]
    ScriptD {
        #[arg(long)]
        g: u32,
    },
    /// lcm of denominators of kappa integrals over M_g.
    #[command(name = "tildeD")]
    TildeD {
        #[arg(long)]
        g: u32,
    },
    /// Mechanically check a claim; exit 1 on failure.
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[arg(long)]
        g: u32,
        /// Prime (counterexample).
        #[arg(long)]
        p: Option<u64>,
        /// Largest n (chain), or use D(g,n) in place of D(g,3) (autbound, ordlemma).
        #[arg(long)]
        n: Option<usize>,
        /// Factorization to use for D(g,3) instead of computing it.
        #[arg(long, value_name = "FACTORIZATION")]
        d3: Option<String>,
        /// autbound: check every genus from 2 to g.
        #[arg(long)]
        through: bool,
        /// monotone: sweep every stable n <= 3g+1 without the exponent restriction.
        #[arg(long)]
        unreduced: bool,
    },
    /// Compare the recursion against the closed-form oracles up to genus g.
    Crosscheck {
        #[arg(long)]
        g: u32,
    },
    /// Dump every correlator on M_{g,n}.
    Table {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Chain,
    Conj25,
    Thm43,
    Lemma42,
    Ordlemma,
    Autbound,
    Monotone,
    Counterexample,
}
