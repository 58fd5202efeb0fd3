/// True iff no two queens share a row, column or diagonal. Squares are
/// `(column, row)`.
pub fn queens_valid(placement: &[(usize, usize)]) -> bool {
    for (i, &(c1, r1)) in placement.iter().enumerate() {
        for &(c2, r2) in &placement[i + 1..] {
            if c1 == c2 || r1 == r2 || c1.abs_diff(c2) == r1.abs_diff(r2) {
                return false;
            }
        }
    }
    true
}

/// Classical row-by-row backtracking. Returns the column of each row's
/// queen for the first solution found.
pub fn queens_backtracking(n: usize) -> Option<Vec<usize>> {
    fn place(n: usize, cols: &mut Vec<usize>) -> bool {
        let row = cols.len();
        if row == n {
            return true;
        }
        for c in 0..n {
            let safe = cols
                .iter()
                .enumerate()
                .all(|(r, &pc)| pc != c && pc.abs_diff(c) != row - r);
            if safe {
                cols.push(c);
                if place(n, cols) {
                    return true;
                }
                cols.pop();
            }
        }
        false
    }
    let mut cols = Vec::with_capacity(n);
    place(n, &mut cols).then_some(cols)
}

/// Whether some set of `n` squares on an `n`x`n` board holds `n`
/// non-attacking queens, by trying every such set. Practical up to `n = 6`.
pub fn queens_exists_exhaustive(n: usize) -> bool {
    fn choose(n: usize, start: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
        if chosen.len() == n {
            return queens_valid(chosen);
        }
        for i in start..n * n {
            chosen.push((i % n, i / n));
            if choose(n, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    choose(n, 0, &mut Vec::new())
}

const WINS: [u16; 8] = [
    0b000_000_111,
    0b000_111_000,
    0b111_000_000,
    0b001_001_001,
    0b010_010_010,
    0b100_100_100,
    0b100_010_001,
    0b001_010_100,
];

fn has_line(marks: u16) -> bool {
    WINS.into_iter().any(|w| marks & w == w)
}

/// Number of distinct complete Tic-Tac-Toe games, where play stops at the
/// first three-in-a-row or when the board fills.
pub fn count_ttt_games() -> u64 {
    fn go(mover: u16, other: u16) -> u64 {
        if has_line(other) || (mover | other) == 0x1ff {
            return 1;
        }
        (0..9)
            .filter(|i| (mover | other) & (1 << i) == 0)
            .map(|i| go(other, mover | (1 << i)))
            .sum()
    }
    go(0, 0)
}

/// Whether `cells` (0..8, row-major, X first) is a complete legal game: no
/// cell played twice, no move after a win, and the play ends with a win or
/// a full board.
pub fn ttt_play_is_legal(cells: &[u8]) -> bool {
    let mut marks = [0u16; 2];
    for (turn, &c) in cells.iter().enumerate() {
        if c > 8 || (marks[0] | marks[1]) & (1 << c) != 0 {
            return false;
        }
        if has_line(marks[0]) || has_line(marks[1]) {
            return false;
        }
        marks[turn % 2] |= 1 << c;
    }
    has_line(marks[0]) || has_line(marks[1]) || cells.len() == 9
}
