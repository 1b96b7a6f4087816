//! `metadice` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod source;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use metadice::export::{
    build_full_graph, build_graph, family_to_json, normalized_values, points_to_csv, render_tables,
    to_dot,
};
use metadice::{
    duel, monte_carlo, round_robin, verify_family_with, Alphabet, Die, VerificationReport,
    VerifyOptions,
};

use source::FamilyArgs;

#[derive(Parser, Debug)]
#[command(name = "metadice", version, about = "Nested nontransitive Lo Shu dice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the 3, 9 or 27 dice in the published table layout.
    Tables {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a family and print it.
    Generate {
        #[command(flatten)]
        family: FamilyArgs,
        /// text or json
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Duel every pair of a family and check the 5/9 winner rule.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// text or json
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Report at most this many failing pairs.
        #[arg(long, default_value_t = 1000)]
        max_failures: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact win, tie and loss probabilities of die A against die B.
    Prob {
        die_a: String,
        die_b: String,
        /// Admit the digit 0 in faces.
        #[arg(long)]
        allow_zero: bool,
    },
    /// Deterministic round-robin between two teams of strengths.
    #[command(name = "roundrobin")]
    RoundRobin {
        #[arg(allow_hyphen_values = true)]
        team_a: String,
        #[arg(allow_hyphen_values = true)]
        team_b: String,
    },
    /// Export the dominance graph of a family.
    Graph {
        #[command(flatten)]
        family: FamilyArgs,
        /// Prefix length whose sibling cycles are drawn; defaults to the depth.
        #[arg(long, conflicts_with = "full_graph")]
        level: Option<usize>,
        /// One edge for every pair of dice.
        #[arg(long)]
        full_graph: bool,
        /// dot or json
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Every face read as a decimal fraction in (0, 1).
    Normalize {
        #[command(flatten)]
        family: FamilyArgs,
        /// csv, json or text
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Estimate P(A beats B) by rolling both dice.
    Simulate {
        die_a: String,
        die_b: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        allow_zero: bool,
    },
}

/// Failures that map to exit code 1 rather than 2.
#[derive(Debug)]
struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn require(format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        bail!(
            "format {:?} is not available here; use one of {:?}",
            format,
            allowed
        );
    }
    Ok(())
}

fn alphabet(allow_zero: bool) -> Alphabet {
    if allow_zero {
        Alphabet::Decimal
    } else {
        Alphabet::LoShu
    }
}

fn parse_die(text: &str, allow_zero: bool, which: &str) -> Result<Die> {
    Die::parse(text, alphabet(allow_zero)).with_context(|| format!("die {which} `{text}`"))
}

fn parse_team(text: &str, which: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("team {which}: bad strength `{}`", t.trim()))
        })
        .collect()
}

fn text_report(report: &VerificationReport) -> String {
    let mut out = format!(
        "depth {}: {} pairs, {} failures\n",
        report.depth, report.pairs_checked, report.failure_count
    );
    for l in &report.levels {
        out += &format!(
            "level {}: {} sibling triples, {} pairs, {} failures\n",
            l.level, l.groups, l.pairs, l.failures
        );
    }
    for f in &report.failures {
        out += &format!(
            "FAIL D{} ({}) vs D{} ({}): expected D{} to win 5/9, observed {}\n",
            f.first.paper_number(),
            f.first,
            f.second.paper_number(),
            f.second,
            f.expected_winner.paper_number(),
            f.observed
        );
    }
    if (report.failures.len() as u64) < report.failure_count {
        out += &format!(
            "... {} more failures not shown\n",
            report.failure_count - report.failures.len() as u64
        );
    }
    out += &format!(
        "{} in {:.3?}\n",
        if report.passed() { "PASS" } else { "FAIL" },
        report.elapsed
    );
    out
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Tables { depth, output } => emit(output.as_ref(), &render_tables(depth)?),

        Command::Generate {
            family,
            format,
            output,
        } => {
            require(format, &[Format::Json, Format::Text])?;
            let family = family.load()?;
            let text = match format {
                Format::Json => family_to_json(&family),
                _ => family
                    .iter()
                    .map(|(w, d)| format!("D{} {w} {d}\n", w.paper_number()))
                    .collect(),
            };
            emit(output.as_ref(), &text)
        }

        Command::Verify {
            family,
            format,
            max_failures,
            output,
        } => {
            require(format, &[Format::Text, Format::Json])?;
            let family = family.load()?;
            let report = verify_family_with(
                &family,
                &VerifyOptions {
                    failure_limit: Some(max_failures),
                },
            );
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                _ => text_report(&report),
            };
            emit(output.as_ref(), &text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(VerificationFailed.into())
            }
        }

        Command::Prob {
            die_a,
            die_b,
            allow_zero,
        } => {
            let a = parse_die(&die_a, allow_zero, "A")?;
            let b = parse_die(&die_b, allow_zero, "B")?;
            let r = duel(&a, &b)?;
            emit(None, &format!("{r}\n{}\n", r.decimal()))
        }

        Command::RoundRobin { team_a, team_b } => {
            let (a, b) = round_robin(&parse_team(&team_a, "A")?, &parse_team(&team_b, "B")?)?;
            emit(None, &format!("A:{a} B:{b}\n"))
        }

        Command::Graph {
            family,
            level,
            full_graph,
            format,
            output,
        } => {
            require(format, &[Format::Dot, Format::Json])?;
            let family = family.load()?;
            let graph = if full_graph {
                build_full_graph(&family)?
            } else {
                build_graph(&family, level.unwrap_or(family.depth()))?
            };
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&graph)? + "\n",
                _ => to_dot(&graph),
            };
            emit(output.as_ref(), &text)
        }

        Command::Normalize {
            family,
            format,
            output,
        } => {
            require(format, &[Format::Csv, Format::Json, Format::Text])?;
            let points = normalized_values(&family.load()?)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&points)? + "\n",
                Format::Text => points.iter().map(|p| format!("{}\n", p.decimal)).collect(),
                _ => points_to_csv(&points)?,
            };
            emit(output.as_ref(), &text)
        }

        Command::Simulate {
            die_a,
            die_b,
            trials,
            seed,
            allow_zero,
        } => {
            let a = parse_die(&die_a, allow_zero, "A")?;
            let b = parse_die(&die_b, allow_zero, "B")?;
            let est = monte_carlo(&a, &b, trials, seed)?;
            let exact = duel(&a, &b)?.p_win;
            emit(
                None,
                &format!(
                    "estimate {:.6} ({}/{} wins, seed {seed})\nexact {} = {:.6}\n",
                    est.win_frequency(),
                    est.wins,
                    est.trials,
                    exact,
                    *exact.numer() as f64 / *exact.denom() as f64
                ),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) if err.is::<VerificationFailed>() => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
