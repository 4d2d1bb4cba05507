//! Command-line front end. [`run`] never panics on bad input: usage and
//! parse errors go to the diagnostic stream with exit code 2, verification
//! mismatches give exit code 1.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::formulas::{m_bottom_mobius, mw_interval_mobius, one_descent_mobius, Shape};
use crate::harness::{self, CampaignOptions, ReportFormat, VerificationReport};
use crate::perm::{Direction, Permutation};
use crate::poset::{mobius, Downset, MAX_ORACLE_LEN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "muposet",
    version,
    about = "Möbius function of the permutation pattern poset"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact μ(lower, upper) from the defining recursion.
    Mobius {
        #[arg(long)]
        lower: Permutation,
        #[arg(long)]
        upper: Permutation,
    },
    /// Closed-form μ(1, π) for π with at most one descent.
    Theorem4 {
        pi: Permutation,
        /// Also print the matching case and the adjacency/descent data.
        #[arg(long)]
        explain: bool,
    },
    /// Every pattern of π, grouped by length.
    Downset {
        pi: Permutation,
        #[arg(long, default_value_t = 1)]
        min_length: usize,
    },
    /// Conjectured μ(σ, M_n) or μ(σ, W_n).
    Conj1 {
        #[arg(long)]
        sigma: Permutation,
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        n: usize,
    },
    /// Conjectured μ(M_m, π).
    Conj2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        pi: Permutation,
        /// Emit the intermediate statistics as JSON.
        #[arg(long)]
        stats: bool,
    },
    /// Run a verification campaign against the oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(subcommand)]
    campaign: Campaign,
    #[arg(long, global = true, default_value = "text")]
    format: ReportFormat,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Use the full check ranges instead of the quick defaults.
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Debug, Subcommand)]
enum Campaign {
    Theorem4 {
        #[arg(long)]
        max_n: Option<usize>,
    },
    Conj1 {
        #[arg(long)]
        max_n: Option<usize>,
    },
    Conj2 {
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    Lemmas {
        #[arg(long)]
        max_n: Option<usize>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    let w = |out: &mut dyn Write, s: String| {
        let _ = writeln!(out, "{s}");
    };
    match command {
        Command::Mobius { lower, upper } => {
            w(out, mobius(&lower, &upper)?.to_string());
        }
        Command::Theorem4 { pi, explain } => {
            let v = one_descent_mobius(&pi)?;
            w(out, v.value.to_string());
            if explain {
                w(out, format!("case: {}", v.case));
                w(out, format!("n: {}", pi.len()));
                let d = pi.descents();
                w(out, format!(
                    "descent: {}",
                    d.first().map_or("none".to_string(), |d| d.to_string())
                ));
                let adj = pi.adjacencies(Direction::Increasing);
                let list = if adj.is_empty() {
                    "none".to_string()
                } else {
                    adj.iter()
                        .map(|a| format!("(i={}, value={})", a.position, a.value))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                w(out, format!("adjacencies: {list}"));
            }
        }
        Command::Downset { pi, min_length } => {
            if pi.len() > MAX_ORACLE_LEN {
                return Err(Error::IntervalTooLarge {
                    len: pi.len(),
                    max: MAX_ORACLE_LEN,
                });
            }
            let d = Downset::down_to(&pi, min_length);
            let mut count = 0usize;
            for k in min_length.max(1)..=pi.len() {
                for member in d.level(k) {
                    w(out, member.to_string());
                    count += 1;
                }
            }
            w(out, format!("count: {count}"));
        }
        Command::Conj1 { sigma, shape, n } => {
            let e = mw_interval_mobius(&sigma, shape, n)?;
            w(out, e.value.to_string());
            w(out, format!(
                "branch: {} (m={}, i={}, a={})",
                e.branch, e.m, e.adjacencies, e.unrelated
            ));
        }
        Command::Conj2 { m, pi, stats } => {
            let (value, record) = m_bottom_mobius(m, &pi)?;
            w(out, value.to_string());
            if stats {
                w(out, serde_json::to_string_pretty(&record).expect("stats serialize"));
            }
        }
        Command::Verify(args) => {
            let report = run_campaign(&args)?;
            let _ = write!(out, "{}", report.render(args.format));
            return Ok(if report.all_passed() { EXIT_OK } else { EXIT_MISMATCH });
        }
    }
    Ok(EXIT_OK)
}

fn run_campaign(args: &VerifyArgs) -> Result<VerificationReport, Error> {
    let opts = CampaignOptions { jobs: args.jobs };
    let pick = |given: Option<usize>, default: usize, extended: usize| {
        given.unwrap_or(if args.extended { extended } else { default })
    };
    match args.campaign {
        Campaign::Theorem4 { max_n } => harness::verify_theorem4(
            pick(max_n, harness::DEFAULT_THEOREM4_MAX_N, harness::EXTENDED_THEOREM4_MAX_N),
            &opts,
        ),
        Campaign::Conj1 { max_n } => harness::verify_conjecture1(
            pick(max_n, harness::DEFAULT_CONJ1_MAX_N, harness::EXTENDED_CONJ1_MAX_N),
            &opts,
        ),
        Campaign::Conj2 { max_m, max_n } => harness::verify_conjecture2(
            pick(max_m, harness::DEFAULT_CONJ2_MAX_M, harness::EXTENDED_CONJ2_MAX_M),
            pick(max_n, harness::DEFAULT_CONJ2_MAX_N, harness::EXTENDED_CONJ2_MAX_N),
            &opts,
        ),
        Campaign::Lemmas { max_n } => harness::verify_lemmas(
            pick(max_n, harness::DEFAULT_LEMMAS_MAX_N, harness::EXTENDED_LEMMAS_MAX_N),
            &opts,
        ),
    }
}
