//! `hmset`: build, count and verify extremal intersecting multiset families.

mod args;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hmset::search::{Check, SearchOptions};
use hmset::Multiplicity;

use crate::args::{parse_multiplicity, parse_multiplicity_list, parse_usize_list};
use crate::report::Outcome;

#[derive(Parser)]
#[command(name = "hmset", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table C(k, l) of fixed-support multiset counts, or check
    /// its properties for a given n.
    Coeffs {
        /// One value, a range like 4..8, or a comma list.
        #[arg(long, value_parser = parse_usize_list)]
        k: ::std::vec::Vec<usize>,
        #[arg(long, value_parser = parse_multiplicity, default_value = "inf")]
        m: Multiplicity,
        /// Check positivity, support and mirror properties for this n.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a named family and print it or its size.
    Construct {
        family: FamilyKind,
        #[command(flatten)]
        params: ParamArgs,
        /// Print only the number of members.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count k-multisets and the sizes of the star and Hilton–Milner families.
    Count {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustively check the non-trivial bound and uniqueness for one
    /// parameter set.
    VerifyTheorem {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustively check one structural statement.
    VerifyLemma {
        /// pair-rule, twist, missing-layer, layer-bound or valuable-structure.
        check: Check,
        #[arg(long)]
        n: usize,
        /// Needed by the layer checks.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = parse_multiplicity)]
        m: Option<Multiplicity>,
        /// Twist check only: test this many sampled subfamilies instead of all.
        #[arg(long)]
        samples: Option<usize>,
        /// Twist check only: sampler seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List maximal intersecting families of non-empty proper subsets of [n].
    EnumerateMaximal {
        #[arg(long)]
        n: usize,
        /// One canonical representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the theorem check over every admissible point of a parameter grid.
    Grid {
        #[arg(long, value_parser = parse_usize_list)]
        n: ::std::vec::Vec<usize>,
        #[arg(long, value_parser = parse_usize_list)]
        k: ::std::vec::Vec<usize>,
        #[arg(long, value_parser = parse_multiplicity_list)]
        m: ::std::vec::Vec<Multiplicity>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Read a family file and report its basic properties.
    Inspect {
        file: PathBuf,
        /// The file holds a set family rather than a multiset family.
        #[arg(long)]
        sets: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Multiplicity cap: a positive integer or "inf".
    #[arg(long, value_parser = parse_multiplicity)]
    m: Multiplicity,
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Allow enumeration beyond the default size cap.
    #[arg(long)]
    allow_large: bool,
    /// Skip the k >= 4 and m >= 2 hypotheses.
    #[arg(long)]
    unchecked: bool,
    /// Add wall-clock runtime to the report.
    #[arg(long)]
    timing: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            allow_large: self.allow_large,
            unchecked: self.unchecked,
            ..SearchOptions::with_workers(self.workers.into())
        }
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file; relative paths land in the output directory when
    /// one is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for report files.
    #[arg(long, env = "HMSET_OUT_DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// Every k-multiset containing 1.
    Ekr,
    /// The Hilton–Milner family.
    Hm,
    /// Subsets containing 1.
    U,
    /// Subsets containing 1 inside [n-k].
    R,
    /// (U - R) with the complements of R.
    V,
    /// Layers q..=k of V.
    VStar,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command, started) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, started: Instant) -> Result<Outcome, String> {
    use report::*;
    match command {
        Command::Coeffs { k, m, n, output } => coeffs(&k, m, n, &output),
        Command::Construct {
            family,
            params,
            count_only,
            output,
        } => construct(family, params.n, params.k, params.m, count_only, &output),
        Command::Count { params, output } => count(params.n, params.k, params.m, &output),
        Command::VerifyTheorem {
            params,
            search,
            output,
        } => verify_theorem(params.n, params.k, params.m, &search, &output, started),
        Command::VerifyLemma {
            check,
            n,
            k,
            m,
            samples,
            seed,
            search,
            output,
        } => verify_lemma(
            LemmaRequest {
                check,
                n,
                k,
                m,
                samples,
                seed,
            },
            &search,
            &output,
            started,
        ),
        Command::EnumerateMaximal {
            n,
            up_to_iso,
            count_only,
            search,
            output,
        } => enumerate_maximal(n, up_to_iso, count_only, &search, &output, started),
        Command::Grid {
            n,
            k,
            m,
            search,
            output,
        } => grid(&n, &k, &m, &search, &output, started),
        Command::Inspect { file, sets, output } => inspect(&file, sets, &output),
    }
}
