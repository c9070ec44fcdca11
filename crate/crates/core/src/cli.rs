//! Command-line front end. Each verb hands off to one library call and
//! prints `key=value` lines, or a bare verdict where one word suffices.
//!
//! Exit codes: 0 ok, 1 claim fails, 2 usage or parse error, 3 budget
//! exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::asf::normalize_with_trace;
use crate::game::Game;
use crate::notation::{format_game, parse_position, Format};
use crate::oracle::{Budget, OracleError, Solver};
use crate::part::Stone;
use crate::strategy::{choose_left_move, Ruleset, StrategyError};
use crate::taxonomy::{classify_part, count_vector, in_ll, in_q, s_class};
use crate::verifier::{
    check_asf_soundness, check_theorem_left, check_theorem_right, check_u_closure, verify_many, write_csv,
    TheoremReport, VerifyStats,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "alc", version, about = "Alternating linear clobber toolkit")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output style for positions.
    #[arg(long, value_enum, default_value_t = FormatArg::Short, global = true)]
    format: FormatArg,
    /// Largest position, in stones, the exact solver accepts.
    #[arg(long, value_name = "STONES", default_value_t = Budget::DEFAULT_STONES, global = true)]
    budget: usize,
    /// Accepted and ignored: every search is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print verdicts only.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Stones,
    Short,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlayerArg {
    L,
    R,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RulesetArg {
    Basic,
    Improved,
}

impl From<RulesetArg> for Ruleset {
    fn from(r: RulesetArg) -> Ruleset {
        match r {
            RulesetArg::Basic => Ruleset::Basic,
            RulesetArg::Improved => Ruleset::Improved,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Asf,
    TheoremRight,
    TheoremLeft,
    UClosure,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Outcome class of a position.
    Solve { position: String },
    /// Standard form of a position.
    Normalize {
        position: String,
        #[arg(long)]
        trace: bool,
    },
    /// Part classes, count vector and S-class.
    Classify { position: String },
    /// Legal moves for one player.
    Moves {
        position: String,
        #[arg(long, value_enum, ignore_case = true)]
        player: PlayerArg,
    },
    /// Left's strategy move.
    Best {
        position: String,
        #[arg(long, value_enum, default_value_t = RulesetArg::Basic)]
        ruleset: RulesetArg,
    },
    /// Whether two positions are equivalent.
    Equiv { first: String, second: String },
    /// Verifies the strategy on alternating starts; bounds are stone counts.
    Verify {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value_t = RulesetArg::Basic)]
        ruleset: RulesetArg,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Runs one bounded property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Defaults to 18, or 15 for u-closure.
        #[arg(long)]
        max_stones: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_parts: usize,
        #[arg(long, value_enum, default_value_t = RulesetArg::Basic)]
        ruleset: RulesetArg,
    },
}

enum Failed {
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<io::Error> for Failed {
    fn from(e: io::Error) -> Failed {
        Failed::Io(e)
    }
}

impl From<OracleError> for Failed {
    fn from(e: OracleError) -> Failed {
        Failed::Budget(e.to_string())
    }
}

/// Parses `argv` (program name first) and runs it. Results go to `out`,
/// diagnostics to `err`.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failed::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failed::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BUDGET
        }
        Err(Failed::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn position(text: &str) -> Result<Game, Failed> {
    parse_position(text).map_err(|e| Failed::Usage(format!("{text:?}: {e}")))
}

fn claim(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILS
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failed> {
    let style = match cli.format {
        FormatArg::Stones => Format::Stones,
        FormatArg::Short => Format::Short,
    };
    let show = |g: &Game| format_game(g, style);
    let budget = Budget::stones(cli.budget);

    match &cli.verb {
        Verb::Solve { position: p } => {
            let g = position(p)?;
            let outcome = Solver::new().budget(budget).outcome(&g)?;
            writeln!(out, "{outcome}")?;
            Ok(EXIT_OK)
        }
        Verb::Normalize { position: p, trace } => {
            let g = position(p)?;
            let (nf, steps) = normalize_with_trace(&g);
            if *trace && !cli.quiet {
                for (i, (rule, after)) in steps.iter().enumerate() {
                    writeln!(out, "step={} rule={} game={}", i + 1, rule, show(after))?;
                }
            }
            writeln!(out, "{}", show(&nf))?;
            Ok(EXIT_OK)
        }
        Verb::Classify { position: p } => {
            let g = position(p)?;
            let (nf, _) = normalize_with_trace(&g);
            writeln!(out, "game={}", show(&nf))?;
            if !cli.quiet {
                for (i, part) in nf.parts().iter().enumerate() {
                    writeln!(
                        out,
                        "part.{i}={} classes={}",
                        show(&Game::new([*part])),
                        classify_part(part)
                    )?;
                }
            }
            match count_vector(&nf) {
                Ok(cv) => writeln!(out, "count_vector={cv}")?,
                Err(e) => writeln!(out, "count_vector=none ({e})")?,
            }
            writeln!(out, "s_class={}", s_class(&nf))?;
            writeln!(out, "in_q={}", in_q(&nf))?;
            writeln!(out, "in_ll={}", in_ll(&nf))?;
            Ok(EXIT_OK)
        }
        Verb::Moves { position: p, player } => {
            let g = position(p)?;
            let player = match player {
                PlayerArg::L => Stone::LEFT,
                PlayerArg::R => Stone::RIGHT,
            };
            for (mv, child) in g.children(player) {
                writeln!(
                    out,
                    "part={} from={} to={} result={}",
                    mv.part,
                    mv.from,
                    mv.to,
                    show(&child)
                )?;
            }
            Ok(EXIT_OK)
        }
        Verb::Best { position: p, ruleset } => {
            let g = position(p)?;
            match choose_left_move(&g, (*ruleset).into()) {
                Ok(m) => {
                    writeln!(out, "rule={}", m.rule)?;
                    writeln!(out, "move={},{},{}", m.mv.part, m.mv.from, m.mv.to)?;
                    writeln!(out, "result={}", show(&m.result))?;
                    Ok(EXIT_OK)
                }
                Err(StrategyError::Oracle(e)) => Err(e.into()),
                Err(e) => {
                    writeln!(err, "{e}")?;
                    Ok(EXIT_CLAIM_FAILS)
                }
            }
        }
        Verb::Equiv { first, second } => {
            let (g, h) = (position(first)?, position(second)?);
            let same = Solver::new().budget(budget).equivalent(&g, &h)?;
            writeln!(out, "{}", if same { "equivalent" } else { "not equivalent" })?;
            Ok(claim(same))
        }
        Verb::Verify {
            from,
            to,
            ruleset,
            csv,
            jobs,
        } => verify(cli, *from, *to, (*ruleset).into(), csv.as_ref(), *jobs, out, err),
        Verb::Check {
            suite,
            max_stones,
            max_parts,
            ruleset,
        } => {
            let stones = max_stones.unwrap_or(match suite {
                Suite::UClosure => 15,
                _ => 18,
            });
            let report = match suite {
                Suite::Asf => check_asf_soundness(budget)?,
                Suite::TheoremRight => check_theorem_right(stones, *max_parts),
                Suite::TheoremLeft => check_theorem_left(stones, *max_parts, (*ruleset).into()),
                Suite::UClosure => check_u_closure(stones, stones.min(12)),
            };
            print_report(&report, cli.quiet, &show, out)?;
            Ok(claim(report.passed()))
        }
    }
}

fn print_report(
    report: &TheoremReport,
    quiet: bool,
    show: &dyn Fn(&Game) -> String,
    out: &mut dyn Write,
) -> io::Result<()> {
    writeln!(out, "suite={:?}", report.theorem)?;
    writeln!(out, "instances={}", report.instances_checked)?;
    writeln!(out, "failures={}", report.failures.len())?;
    if !quiet {
        for f in &report.failures {
            let mv =
                f.mv.map(|m| format!("{},{},{}", m.part, m.from, m.to))
                    .unwrap_or_else(|| "-".into());
            let result = f.result.as_ref().map(show).unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "failure game={} move={} result={} note={}",
                show(&f.game),
                mv,
                result,
                f.note
            )?;
        }
    }
    writeln!(out, "{}", if report.passed() { "pass" } else { "FAIL" })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    from: usize,
    to: usize,
    ruleset: Ruleset,
    csv: Option<&PathBuf>,
    jobs: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failed> {
    if from == 0 || from > to {
        return Err(Failed::Usage(format!("empty stone range {from}..{to}")));
    }
    let first = from + from % 2;
    let mut halves = Vec::new();
    for stones in (first..=to).step_by(2) {
        if stones == 6 {
            writeln!(err, "warning: skipping a6, a second-player win")?;
            continue;
        }
        halves.push(stones / 2);
    }
    let mut rows: Vec<VerifyStats> = Vec::new();
    let mut all_won = true;
    for (n, r) in halves.iter().zip(verify_many(&halves, ruleset, jobs)) {
        match r {
            Ok(s) => {
                all_won &= s.left_wins;
                if !cli.quiet {
                    writeln!(
                        out,
                        "stones={} n={} left_wins={} left_nodes={} right_nodes={} seconds={:.2}",
                        2 * s.n,
                        s.n,
                        s.left_wins,
                        s.left_nodes,
                        s.right_nodes,
                        s.elapsed.as_secs_f64()
                    )?;
                }
                rows.push(s);
            }
            Err(StrategyError::Oracle(e)) => return Err(e.into()),
            Err(e) => {
                all_won = false;
                writeln!(out, "stones={} n={} error={}", 2 * n, n, e)?;
            }
        }
    }
    if let Some(path) = csv {
        let file = File::create(path).map_err(|e| Failed::Usage(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        write_csv(&mut w, &rows)?;
        w.flush()?;
    }
    writeln!(out, "verified={}", rows.len())?;
    writeln!(out, "{}", if all_won { "pass" } else { "FAIL" })?;
    Ok(claim(all_won))
}
