//! The `hog` command: solve games, check strategies, play Tic-Tac-Toe
//! against a computed strategy, and run the self-test suites.
//!
//! Exit codes: 0 success, 1 not optimal or a failed self-test, 2 bad input,
//! 3 computation error, 130 input closed during play.

use std::fmt::Display;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use hog_core::games::strategy_file::{parse_strategy, resolve_strategy, write_strategy};
use hog_core::games::{
    anti_tictactoe_game, nqueens_game, parse_explicit_game, tictactoe_game, Cell, ExplicitGame, QueensEncoding, Square,
    TttPosition,
};
use hog_core::oracle::suites::run_all;
use hog_core::oracle::OracleConfig;
use hog_core::tree::{render_path, Move};
use hog_core::{
    check_optimal, solve_with, strategy_of_selection_tree, Game, GameTree, Outcome, QuantifierKind, SelectionTree,
    SolveOptions, Strategy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;
pub const EXIT_INTERRUPTED: i32 = 130;

#[derive(Parser, Debug)]
#[command(
    name = "hog",
    version,
    about = "Solve sequential games given by quantifiers and selection functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the optimal outcome, the strategic path and its outcome.
    Solve {
        /// tictactoe, anti-tictactoe, queens:N, or a game file
        game: String,
        /// Write the computed strategy to FILE
        #[arg(long, value_name = "FILE")]
        emit_strategy: Option<PathBuf>,
        /// key=value output
        #[arg(long)]
        porcelain: bool,
        /// Cache subgame values by position where the game supports it
        #[arg(long)]
        memo: bool,
        /// Leave out timings
        #[arg(long)]
        deterministic: bool,
        /// For queens: offer every free square at every move
        #[arg(long)]
        all_squares: bool,
    },
    /// Check a strategy file for optimality.
    Check {
        game: String,
        strategy: PathBuf,
        #[arg(long)]
        all_squares: bool,
    },
    /// Play Tic-Tac-Toe or Anti-Tic-Tac-Toe against the optimal strategy.
    Play {
        game: String,
        /// Let the engine make the first move
        #[arg(long)]
        engine_first: bool,
    },
    /// Run the randomized cross-check suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u64,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn compute(message: impl Display) -> Self {
        CliError {
            code: EXIT_COMPUTE,
            message: message.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A game named on the command line.
pub enum LoadedGame {
    TicTacToe(Game<Cell, i64>, SelectionTree<Cell, i64>),
    Queens(Game<Square, bool>, SelectionTree<Square, bool>),
    Int(Game<String, i64>, SelectionTree<String, i64>),
    Bool(Game<String, bool>, SelectionTree<String, bool>),
}

pub fn load_game(reference: &str, all_squares: bool) -> CliResult<LoadedGame> {
    match reference {
        "tictactoe" => {
            let (g, st) = tictactoe_game();
            Ok(LoadedGame::TicTacToe(g, st))
        }
        "anti-tictactoe" => {
            let (g, st) = anti_tictactoe_game();
            Ok(LoadedGame::TicTacToe(g, st))
        }
        _ => {
            if let Some(n) = reference.strip_prefix("queens:") {
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::input(format!("bad board size in `{reference}`")))?;
                let encoding = if all_squares {
                    QueensEncoding::AllSquares
                } else {
                    QueensEncoding::PerRank
                };
                let (g, st) = nqueens_game(n, encoding).map_err(|e| CliError::input(e.to_string()))?;
                return Ok(LoadedGame::Queens(g, st));
            }
            let text = read_file(Path::new(reference))?;
            match parse_explicit_game(&text) {
                Ok(ExplicitGame::Int(g, st)) => Ok(LoadedGame::Int(g, st)),
                Ok(ExplicitGame::Bool(g, st)) => Ok(LoadedGame::Bool(g, st)),
                Err(e) => Err(CliError::input(format!("{reference}:{e}"))),
            }
        }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: impl Display) -> CliResult<()> {
    writeln!(out, "{text}").map_err(|e| CliError::compute(format!("cannot write output: {e}")))
}

fn words<M: Display>(path: &[M]) -> String {
    path.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

struct SolveFlags<'a> {
    name: &'a str,
    emit: Option<&'a Path>,
    porcelain: bool,
    memo: bool,
    deterministic: bool,
}

fn solve_game<M: Move, R: Outcome + Display>(
    g: &Game<M, R>,
    st: &SelectionTree<M, R>,
    flags: &SolveFlags<'_>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let start = Instant::now();
    let report = solve_with(g, st, SolveOptions { memoize: flags.memo }).map_err(CliError::compute)?;
    let elapsed = start.elapsed();
    if let Some(path) = flags.emit {
        std::fs::write(path, write_strategy(&report.strategy))
            .map_err(|e| CliError::compute(format!("cannot write {}: {e}", path.display())))?;
    }
    let attained = report.realizes_optimum();
    if flags.porcelain {
        write_out(out, format_args!("game={}", flags.name))?;
        write_out(out, format_args!("optimal_outcome={}", report.optimal_outcome))?;
        write_out(out, format_args!("strategic_path={}", words(&report.strategic_path)))?;
        write_out(out, format_args!("realized_outcome={}", report.realized_outcome))?;
        write_out(out, format_args!("attained={attained}"))?;
        if !flags.deterministic {
            write_out(out, format_args!("elapsed_ms={}", elapsed.as_millis()))?;
        }
    } else {
        write_out(out, format_args!("game: {}", flags.name))?;
        write_out(out, format_args!("optimal outcome: {}", report.optimal_outcome))?;
        write_out(
            out,
            format_args!("strategic path: {}", render_path(&report.strategic_path)),
        )?;
        write_out(out, format_args!("realized outcome: {}", report.realized_outcome))?;
        if !attained {
            write_out(out, "note: the selection functions do not attain the optimal outcome")?;
        }
        if !flags.deterministic {
            write_out(out, format_args!("time: {:.3}s", elapsed.as_secs_f64()))?;
        }
    }
    Ok(())
}

fn cmd_solve(game: &str, flags: SolveFlags<'_>, all_squares: bool, out: &mut dyn Write) -> CliResult<i32> {
    match load_game(game, all_squares)? {
        LoadedGame::TicTacToe(g, st) => solve_game(&g, &st, &flags, out)?,
        LoadedGame::Queens(g, st) => solve_game(&g, &st, &flags, out)?,
        LoadedGame::Int(g, st) => solve_game(&g, &st, &flags, out)?,
        LoadedGame::Bool(g, st) => solve_game(&g, &st, &flags, out)?,
    }
    Ok(EXIT_OK)
}

fn check_game<M: Move, R: Outcome>(g: &Game<M, R>, strategy_path: &Path, out: &mut dyn Write) -> CliResult<i32> {
    let text = read_file(strategy_path)?;
    let raw = parse_strategy(&text).map_err(|e| CliError::input(format!("{}:{e}", strategy_path.display())))?;
    let s =
        resolve_strategy(g.tree(), &raw).map_err(|e| CliError::input(format!("{}: {e}", strategy_path.display())))?;
    match check_optimal(g, &s) {
        Ok(()) => {
            write_out(out, "OPTIMAL")?;
            Ok(EXIT_OK)
        }
        Err(v) => {
            write_out(out, format_args!("NOT OPTIMAL: {v}"))?;
            Ok(EXIT_FAILURE)
        }
    }
}

fn cmd_check(game: &str, strategy: &Path, all_squares: bool, out: &mut dyn Write) -> CliResult<i32> {
    match load_game(game, all_squares)? {
        LoadedGame::TicTacToe(g, _) => check_game(&g, strategy, out),
        LoadedGame::Queens(g, _) => check_game(&g, strategy, out),
        LoadedGame::Int(g, _) => check_game(&g, strategy, out),
        LoadedGame::Bool(g, _) => check_game(&g, strategy, out),
    }
}

/// Plays one session: the engine follows `strategy`, the human's moves are
/// read from `input` one per line. Returns the exit code.
pub fn play_session(
    game: &Game<Cell, i64>,
    strategy: &Strategy<Cell>,
    engine_first: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let engine_kind = match game.qtree().as_node() {
        Some(root) if engine_first => root.annotation().kind(),
        Some(root) => match root.child(&root.moves()[0]).map_err(CliError::compute)? {
            hog_core::AnnotatedTree::Node(n) => n.annotation().kind(),
            hog_core::AnnotatedTree::Leaf => root.annotation().kind(),
        },
        None => return Err(CliError::input("the game has no moves")),
    };
    let engine_sign = if engine_kind == QuantifierKind::Max { 1 } else { -1 };

    let mut pos = TttPosition::default();
    let mut tree: GameTree<Cell> = game.tree().clone();
    let mut current = strategy;
    let mut engine_turn = engine_first;
    let mut path = Vec::new();
    while let (GameTree::Node(node), Strategy::Node(sn)) = (&tree, current) {
        let mv = if engine_turn {
            let c = *sn.choice();
            write_out(out, format_args!("engine plays {c}"))?;
            c
        } else {
            write_out(out, format_args!("{pos}"))?;
            loop {
                write!(out, "your move ({}): ", words(node.moves()))
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::compute(format!("cannot write output: {e}")))?;
                let mut line = String::new();
                let read = input
                    .read_line(&mut line)
                    .map_err(|e| CliError::compute(format!("cannot read input: {e}")))?;
                if read == 0 {
                    write_out(out, "")?;
                    return Ok(EXIT_INTERRUPTED);
                }
                let chosen = line
                    .trim()
                    .parse::<u8>()
                    .ok()
                    .and_then(Cell::new)
                    .filter(|c| node.is_listed(c));
                match chosen {
                    Some(c) => break c,
                    None => write_out(out, format_args!("illegal move `{}`, try again", line.trim()))?,
                }
            }
        };
        pos = pos.play(mv).map_err(CliError::compute)?;
        tree = node.child(&mv).map_err(CliError::compute)?;
        current = sn.sub(&mv).ok_or_else(|| CliError::compute("strategy has no reply"))?;
        path.push(mv);
        engine_turn = !engine_turn;
    }
    let outcome = game.outcome(&path).map_err(CliError::compute)?;
    write_out(out, format_args!("{pos}"))?;
    let result = match (outcome * engine_sign).signum() {
        1 => "engine wins",
        -1 => "you win",
        _ => "draw",
    };
    write_out(out, format_args!("game over: {result} (outcome {outcome})"))?;
    Ok(EXIT_OK)
}

fn cmd_play(game: &str, engine_first: bool, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult<i32> {
    let LoadedGame::TicTacToe(g, st) = load_game(game, false)? else {
        return Err(CliError::input(format!(
            "`{game}` cannot be played interactively; use tictactoe or anti-tictactoe"
        )));
    };
    let strategy = strategy_of_selection_tree(g.tree(), &st, &|p| g.outcome(p)).map_err(CliError::compute)?;
    let side = if engine_first { "O" } else { "X" };
    write_out(out, format_args!("you play {side}; cells are numbered 0-8 row by row"))?;
    play_session(&g, &strategy, engine_first, input, out)
}

fn cmd_selftest(seed: u64, cases: u64, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    if cases == 0 {
        writeln!(err, "warning: --cases 0, no suites run").ok();
        return Ok(EXIT_OK);
    }
    let config = OracleConfig::from_env().map_err(|e| CliError::input(format!("HOG_BUDGET: {e}")))?;
    let config = OracleConfig { seed, ..config };
    let mut failed = false;
    for report in run_all(&config, cases) {
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        write_out(out, format_args!("{verdict} {report}"))?;
        for f in &report.failures {
            writeln!(err, "{}: seed {}: {}", report.name, f.seed, f.detail).ok();
        }
        failed |= !report.passed();
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                write!(out, "{text}").ok();
            } else {
                write!(err, "{text}").ok();
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = match cli.command {
        Command::Solve {
            game,
            emit_strategy,
            porcelain,
            memo,
            deterministic,
            all_squares,
        } => {
            let flags = SolveFlags {
                name: &game,
                emit: emit_strategy.as_deref(),
                porcelain,
                memo,
                deterministic,
            };
            cmd_solve(&game, flags, all_squares, out)
        }
        Command::Check {
            game,
            strategy,
            all_squares,
        } => cmd_check(&game, &strategy, all_squares, out),
        Command::Play { game, engine_first } => cmd_play(&game, engine_first, input, out),
        Command::Selftest { seed, cases } => cmd_selftest(seed, cases, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {}", e.message).ok();
            e.code
        }
    }
}
