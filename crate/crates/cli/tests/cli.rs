use std::io::Cursor;
use std::path::Path;
use std::process::Command;

use hog_cli::{play_session, run, EXIT_FAILURE, EXIT_INPUT, EXIT_INTERRUPTED, EXIT_OK};
use hog_core::games::strategy_file::{parse_strategy, resolve_strategy};
use hog_core::games::{anti_tictactoe_game, nqueens_game, tictactoe_game, Cell, QueensEncoding};
use hog_core::oracle::queens_valid;
use hog_core::{spath, strategy_of_selection_tree, Game, GameTree, Strategy};

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn hog(args: &[&str], input: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hog").chain(args.iter().copied());
    let code = run(argv, &mut Cursor::new(input.as_bytes().to_vec()), &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

const TABLE: &str = "; 2x2 table
(node min argmin
  (x1 (node max argmax (y1 (leaf 3)) (y2 (leaf 1))))
  (x2 (node max argmax (y1 (leaf 0)) (y2 (leaf 5)))))
";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_tictactoe_variants() {
    let r = hog(&["solve", "tictactoe", "--porcelain", "--deterministic"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("optimal_outcome=0\n"));
    assert!(r.out.contains("realized_outcome=0\n"));
    assert!(!r.out.contains("elapsed_ms"));

    let r = hog(&["solve", "anti-tictactoe", "--memo"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("optimal outcome: 0\n"));
    assert!(r.out.contains("realized outcome: 0\n"));
    assert!(r.out.contains("time: "));
}

#[test]
fn deterministic_output_repeats() {
    let a = hog(&["solve", "queens:6", "--deterministic"], "");
    let b = hog(&["solve", "queens:6", "--deterministic"], "");
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, b.out);
}

#[test]
fn solve_queens_and_emit_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("s.out");
    let r = hog(
        &[
            "solve",
            "queens:4",
            "--emit-strategy",
            file.to_str().unwrap(),
            "--porcelain",
            "--deterministic",
        ],
        "",
    );
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("optimal_outcome=true\n"));

    let (g, _) = nqueens_game(4, QueensEncoding::PerRank).unwrap();
    let raw = parse_strategy(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let s = resolve_strategy(g.tree(), &raw).unwrap();
    let placement: Vec<(usize, usize)> = spath(&s).iter().map(|q| (q.col as usize, q.row as usize)).collect();
    assert_eq!(placement.len(), 4);
    assert!(queens_valid(&placement));
    let line = r.out.lines().find(|l| l.starts_with("strategic_path=")).unwrap();
    let printed: Vec<String> = spath(&s).iter().map(|q| q.to_string()).collect();
    assert_eq!(line, format!("strategic_path={}", printed.join(" ")));

    let r = hog(&["check", "queens:4", file.to_str().unwrap()], "");
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "OPTIMAL\n"));
}

#[test]
fn solve_input_errors() {
    for args in [
        vec!["solve", "missing.game"],
        vec!["solve", "queens:x"],
        vec!["solve", "queens:12"],
        vec!["frobnicate"],
        vec!["solve"],
    ] {
        let r = hog(&args, "");
        assert_eq!(r.code, EXIT_INPUT, "{args:?}");
        assert!(!r.err.is_empty());
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.game",
        "(node min argmin\n  (a (leaf 1))\n  (a (leaf 2)))",
    );
    let r = hog(&["solve", &bad], "");
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("bad.game:3:4: duplicate move `a`"), "{}", r.err);
    let mixed = write(dir.path(), "mixed.game", "(node exists witness (a (leaf 1)))");
    let r = hog(&["solve", &mixed], "");
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("boolean"), "{}", r.err);
}

#[test]
fn solve_explicit_games() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "table.game", TABLE);
    let r = hog(&["solve", &table, "--porcelain", "--deterministic"], "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r
        .out
        .contains("optimal_outcome=3\nstrategic_path=x1 y1\nrealized_outcome=3\nattained=true\n"));

    let leaf = write(dir.path(), "leaf.game", "(leaf 7)");
    let r = hog(&["solve", &leaf, "--porcelain", "--deterministic"], "");
    assert!(r.out.contains("optimal_outcome=7\nstrategic_path=\n"));

    // witness does not attain min: the selected play misses the optimum
    let off = write(
        dir.path(),
        "off.game",
        "(node min witness (a (leaf true)) (b (leaf false)))",
    );
    let r = hog(&["solve", &off], "");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("optimal outcome: false\n"));
    assert!(r.out.contains("realized outcome: true\n"));
    assert!(r.out.contains("note: "));
}

#[test]
fn check_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let table = write(dir.path(), "table.game", TABLE);
    let good = write(
        dir.path(),
        "good.s",
        "(choice x1 (x1 (choice y1 (y1 (leaf)) (y2 (leaf)))) (x2 (choice y2 (y1 (leaf)) (y2 (leaf)))))",
    );
    let r = hog(&["check", &table, &good], "");
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "OPTIMAL\n"));

    let forced = write(
        dir.path(),
        "forced.s",
        "(choice x2 (x1 (choice y1 (y1 (leaf)) (y2 (leaf)))) (x2 (choice y2 (y1 (leaf)) (y2 (leaf)))))",
    );
    let r = hog(&["check", &table, &forced], "");
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.out.contains("local condition fails at node <>"), "{}", r.out);
    assert!(r.out.contains("realizes 5, quantifier gives 3"), "{}", r.out);

    let deep = write(
        dir.path(),
        "deep.s",
        "(choice x2 (x1 (choice y1 (y1 (leaf)) (y2 (leaf)))) (x2 (choice y1 (y1 (leaf)) (y2 (leaf)))))",
    );
    let r = hog(&["check", &table, &deep], "");
    assert_eq!(r.code, EXIT_FAILURE);
    assert!(r.out.contains("local condition fails at node <x2>"), "{}", r.out);
    assert!(
        r.out.contains("subgame condition fails at the root via <x2>"),
        "{}",
        r.out
    );

    let shape = write(dir.path(), "shape.s", "(choice x1 (x1 (leaf)) (x2 (leaf)))");
    assert_eq!(hog(&["check", &table, &shape], "").code, EXIT_INPUT);
    let garbled = write(dir.path(), "garbled.s", "(choice x1 (x1 (leaf))");
    let r = hog(&["check", &table, &garbled], "");
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.err.contains("garbled.s:1:1: unclosed"), "{}", r.err);
    assert_eq!(hog(&["check", &table, "/nonexistent/s"], "").code, EXIT_INPUT);
}

#[test]
fn check_solver_emitted_tictactoe_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ttt.s");
    let f = file.to_str().unwrap();
    assert_eq!(hog(&["solve", "tictactoe", "--emit-strategy", f], "").code, EXIT_OK);
    let r = hog(&["check", "tictactoe", f], "");
    assert_eq!((r.code, r.out.as_str()), (EXIT_OK, "OPTIMAL\n"));
    // the same moves, but optimal for the other side only by accident at best
    let r = hog(&["check", "anti-tictactoe", f], "");
    assert_eq!(r.code, EXIT_FAILURE);
}

#[test]
fn play_rejects_illegal_moves_and_keeps_the_board() {
    let r = hog(&["play", "tictactoe"], "4\n4\n9\nx\n");
    assert_eq!(r.code, EXIT_INTERRUPTED);
    assert_eq!(r.out.matches("engine plays").count(), 1);
    assert!(r.out.contains("illegal move `4`, try again"));
    assert!(r.out.contains("illegal move `9`, try again"));
    assert!(r.out.contains("illegal move `x`, try again"));
    // the prompt after each rejection still offers the same cells
    let prompts: Vec<&str> = r.out.matches("your move (").collect();
    assert_eq!(prompts.len(), 5);
    let after_first: Vec<&str> = r
        .out
        .split("your move (")
        .skip(2)
        .map(|s| s.split(')').next().unwrap())
        .collect();
    assert!(after_first.windows(2).all(|w| w[0] == w[1]));
    assert!(!after_first[0].split(' ').any(|c| c == "4"));
}

#[test]
fn play_engine_first_moves_before_the_prompt() {
    let r = hog(&["play", "tictactoe", "--engine-first"], "");
    assert_eq!(r.code, EXIT_INTERRUPTED);
    let engine = r.out.find("engine plays").unwrap();
    let prompt = r.out.find("your move").unwrap();
    assert!(engine < prompt);
}

#[test]
fn play_only_tictactoe() {
    assert_eq!(hog(&["play", "queens:4"], "").code, EXIT_INPUT);
}

/// Every sequence of human moves against the strategy, as input scripts.
fn human_scripts(
    tree: &GameTree<Cell>,
    s: &Strategy<Cell>,
    engine_turn: bool,
    prefix: &mut Vec<Cell>,
    out: &mut Vec<Vec<Cell>>,
) {
    let (GameTree::Node(n), Strategy::Node(sn)) = (tree, s) else {
        out.push(prefix.clone());
        return;
    };
    if engine_turn {
        let c = *sn.choice();
        human_scripts(&n.child(&c).unwrap(), sn.sub(&c).unwrap(), false, prefix, out);
    } else {
        for c in n.moves() {
            prefix.push(*c);
            human_scripts(&n.child(c).unwrap(), sn.sub(c).unwrap(), true, prefix, out);
            prefix.pop();
        }
    }
}

fn engine_never_loses(g: &Game<Cell, i64>, s: &Strategy<Cell>, engine_first: bool) -> usize {
    let mut scripts = Vec::new();
    human_scripts(g.tree(), s, engine_first, &mut Vec::new(), &mut scripts);
    for script in &scripts {
        let text: String = script.iter().map(|c| format!("{c}\n")).collect();
        let mut out = Vec::new();
        let code = play_session(g, s, engine_first, &mut Cursor::new(text.into_bytes()), &mut out).unwrap();
        let out = String::from_utf8(out).unwrap();
        assert_eq!(code, EXIT_OK, "{script:?}");
        assert!(out.contains("game over: "), "{out}");
        assert!(!out.contains("you win"), "human won with {script:?}:\n{out}");
    }
    scripts.len()
}

#[test]
fn engine_never_loses_any_session() {
    for (g, st) in [tictactoe_game(), anti_tictactoe_game()] {
        let s = strategy_of_selection_tree(g.tree(), &st, &|p| g.outcome(p)).unwrap();
        assert!(engine_never_loses(&g, &s, false) > 100);
        assert!(engine_never_loses(&g, &s, true) > 10);
    }
}

#[test]
fn selftest_runs() {
    let r = hog(&["selftest", "--cases", "0"], "");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.err.contains("warning"));
    assert!(r.out.is_empty());

    let a = hog(&["selftest", "--seed", "42", "--cases", "8"], "");
    let b = hog(&["selftest", "--seed", "42", "--cases", "8"], "");
    assert_eq!(a.code, EXIT_OK, "{}{}", a.out, a.err);
    assert_eq!(a.out, b.out);
    assert_eq!(a.out.lines().filter(|l| l.starts_with("PASS ")).count(), 7);
}

#[test]
fn binary_exit_codes_and_budget_variable() {
    let bin = env!("CARGO_BIN_EXE_hog");
    let out = Command::new(bin).args(["solve", "queens:2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("optimal outcome: false"));
    let out = Command::new(bin).args(["solve", "nope.game"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    let out = Command::new(bin)
        .args(["selftest", "--cases", "2"])
        .env("HOG_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    // a strategy cap of 1 makes the enumeration check fail loudly
    let out = Command::new(bin)
        .args(["selftest", "--cases", "4"])
        .env("HOG_BUDGET", "strategies=1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&help.stdout).contains("selftest"));
}
