use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{is_normal_slice, minus_one_run, NormalWord, Word};
use crate::error::{Error, Result};

/// An elementary rewrite of a cyclic word. Positions are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", content = "at", rename_all = "snake_case")]
pub enum Move {
    /// Insert `(0,0,0)` before position `j` (`j = len` appends).
    InsertZeros(usize),
    /// Delete the cyclic subword `(0,0,0)` starting at `j`.
    RemoveZeros(usize),
    /// `(a,0,b) → (a+1,1,b+1)` centred at `j`.
    AddOnes(usize),
    /// `(a,1,b) → (a−1,0,b−1)` centred at `j`.
    SubOnes(usize),
    /// Rotate left by `k` triples.
    Shift(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::InsertZeros(j) => write!(f, "insert-zeros@{j}"),
            Move::RemoveZeros(j) => write!(f, "remove-zeros@{j}"),
            Move::AddOnes(j) => write!(f, "add-ones@{j}"),
            Move::SubOnes(j) => write!(f, "subtract-ones@{j}"),
            Move::Shift(k) => write!(f, "shift {k}"),
        }
    }
}

/// The moves taking a source word to a target word, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn replay(&self, w: &Word) -> Result<Word> {
        self.moves
            .iter()
            .try_fold(w.clone(), |acc, m| apply_move(&acc, *m))
    }
}

fn not_applicable(m: Move, w: &[i32]) -> Error {
    Error::MoveNotApplicable(format!("{m} on {}", fmt_slice(w)))
}

fn fmt_slice(w: &[i32]) -> String {
    let parts: Vec<String> = w.iter().map(i32::to_string).collect();
    format!("({})", parts.join(","))
}

fn bump(w: &mut [i32], j: usize, d: i32) {
    let n = w.len();
    w[(j + n - 1) % n] += d;
    w[j] += d;
    w[(j + 1) % n] += d;
}

/// Delete the three cyclic positions from `j`, re-aligning triples when the
/// deletion wraps past the end.
fn remove_at(w: &[i32], j: usize) -> Vec<i32> {
    let n = w.len();
    let gone = [j, (j + 1) % n, (j + 2) % n];
    let mut v: Vec<i32> = (0..n).filter(|i| !gone.contains(i)).map(|i| w[i]).collect();
    if j + 2 >= n {
        let wrap = j + 3 - n;
        if wrap % 3 != 0 {
            let r = (3 - wrap % 3) % 3;
            v.rotate_left(r);
        }
    }
    v
}

fn apply_raw(w: &[i32], m: Move) -> Result<Vec<i32>> {
    let n = w.len();
    let mut v = w.to_vec();
    match m {
        Move::InsertZeros(j) if j <= n => {
            v.splice(j..j, [0, 0, 0]);
        }
        Move::RemoveZeros(j) if j < n && n > 3 && (0..3).all(|k| w[(j + k) % n] == 0) => {
            v = remove_at(w, j);
        }
        Move::AddOnes(j) if j < n && w[j] == 0 => bump(&mut v, j, 1),
        Move::SubOnes(j) if j < n && w[j] == 1 => bump(&mut v, j, -1),
        Move::Shift(k) => v.rotate_left((3 * k) % n),
        _ => return Err(not_applicable(m, w)),
    }
    Ok(v)
}

pub fn apply_move(w: &Word, m: Move) -> Result<Word> {
    Word::new(apply_raw(w.entries(), m)?)
}

/// Every move applicable to `w`, with insertions restricted to triple
/// boundaries.
pub fn applicable_moves(w: &Word) -> Vec<Move> {
    labeled_moves(w.entries())
        .into_iter()
        .map(|(m, _)| m)
        .collect()
}

fn labeled_moves(w: &[i32]) -> Vec<(Move, Vec<i32>)> {
    let n = w.len();
    let mut out = Vec::new();
    for j in 0..n {
        let m = match w[j] {
            0 => Some(Move::AddOnes(j)),
            1 => Some(Move::SubOnes(j)),
            _ => None,
        };
        if let Some(m) = m {
            out.push((m, apply_raw(w, m).expect("checked")));
        }
        if n > 3 && (0..3).all(|k| w[(j + k) % n] == 0) {
            out.push((Move::RemoveZeros(j), remove_at(w, j)));
        }
    }
    for j in (0..=n).step_by(3) {
        let m = Move::InsertZeros(j);
        out.push((m, apply_raw(w, m).expect("checked")));
    }
    out
}

/// Cyclically reduced image in the free group on `α, β` with
/// `l ↦ α^l`, `m ↦ β^m`, `n ↦ (αβ)^{−n}`; letters ±1 for `α^{±1}`, ±2 for `β^{±1}`.
fn free_group_image(w: &[i32]) -> Vec<i8> {
    let mut out: Vec<i8> = Vec::new();
    let mut push = |x: i8| {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    };
    for (j, &e) in w.iter().enumerate() {
        let seg: &[i8] = match (j % 3, e > 0) {
            (0, true) => &[1],
            (0, false) => &[-1],
            (1, true) => &[2],
            (1, false) => &[-2],
            (_, true) => &[-2, -1],
            (_, false) => &[1, 2],
        };
        for _ in 0..e.unsigned_abs() {
            for &x in seg {
                push(x);
            }
        }
    }
    let (mut i, mut k) = (0usize, out.len());
    while k > i + 1 && out[i] == -out[k - 1] {
        i += 1;
        k -= 1;
    }
    out[i..k].to_vec()
}

/// True when the free homotopy class is trivial or a power of one of the
/// three boundary loops, i.e. no hyperbolic representative exists.
pub fn is_non_hyperbolic(w: &Word) -> bool {
    let c = free_group_image(w.entries());
    if c.is_empty() {
        return true;
    }
    let first = c[0];
    if c.iter().all(|&x| x == first) {
        return true;
    }
    let alternating = |a: i8, b: i8| {
        c.iter().all(|&x| x == a || x == b)
            && c.windows(2).all(|p| p[0] != p[1])
            && c[0] != c[c.len() - 1]
    };
    alternating(-2, -1) || alternating(1, 2)
}

/// Breadth-first search over the move graph for a normal word.
pub fn bfs_to_normal(w: &Word, node_budget: usize) -> Result<MoveTrace> {
    let start = w.entries().to_vec();
    let len_cap = start.len() + 6;
    let entry_cap = start.iter().map(|x| x.abs()).max().unwrap_or(0) + 3;
    let mut prev: HashMap<Vec<i32>, Option<(Move, Vec<i32>)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if is_normal_slice(&u) {
            let mut moves = Vec::new();
            let mut cur = u;
            while let Some(Some((m, p))) = prev.get(&cur) {
                moves.push(*m);
                cur = p.clone();
            }
            moves.reverse();
            return Ok(MoveTrace { moves });
        }
        for (m, v) in labeled_moves(&u) {
            if v.len() > len_cap || v.iter().any(|x| x.abs() > entry_cap) || prev.contains_key(&v) {
                continue;
            }
            if prev.len() >= node_budget {
                return Err(Error::SearchBudgetExceeded);
            }
            prev.insert(v.clone(), Some((m, u.clone())));
            queue.push_back(v);
        }
    }
    Err(Error::SearchBudgetExceeded)
}

pub const BFS_NODE_BUDGET: usize = 1_000_000;

struct Rewriter {
    w: Vec<i32>,
    trace: Vec<Move>,
}

impl Rewriter {
    fn ap(&mut self, m: Move) {
        self.w = apply_raw(&self.w, m).expect("rewrite rule produced an inapplicable move");
        self.trace.push(m);
    }

    fn at(&self, j: usize) -> i32 {
        self.w[j % self.w.len()]
    }

    /// Move the weight of the entry after a zero pair at `j, j+1` onto
    /// the pair, then delete the resulting `(0,0,0)`.
    fn merge_zero_pair(&mut self, j: usize) {
        let n = self.w.len();
        let mut y = self.at(j + 2);
        while y > 0 {
            self.ap(Move::AddOnes(j));
            self.ap(Move::SubOnes((j + 1) % n));
            y -= 1;
        }
        while y < 0 {
            self.ap(Move::AddOnes((j + 1) % n));
            self.ap(Move::SubOnes(j));
            y += 1;
        }
        self.ap(Move::RemoveZeros(j));
    }

    fn step(&mut self) -> Result<bool> {
        let n = self.w.len();
        if self.w.iter().all(|&x| x == -1) {
            self.ap(Move::InsertZeros(0));
            self.ap(Move::AddOnes(0));
            for j in 2..n + 2 {
                self.ap(Move::AddOnes(j));
            }
            self.ap(Move::SubOnes(n + 2));
            self.ap(Move::RemoveZeros(n + 1));
            return Ok(true);
        }
        if n > 3 {
            if let Some(j) = (0..n).find(|&j| (0..3).all(|k| self.at(j + k) == 0)) {
                self.ap(Move::RemoveZeros(j));
                return Ok(true);
            }
        }
        if let Some(j) =
            (0..n).find(|&j| self.w[j] == 1 && (self.at(j + n - 1) >= 1 || self.at(j + 1) >= 1))
        {
            self.ap(Move::SubOnes(j));
            return Ok(true);
        }
        if let Some(j) =
            (0..n).find(|&j| self.w[j] == 0 && self.at(j + n - 1) <= -1 && self.at(j + 1) <= -1)
        {
            self.ap(Move::AddOnes(j));
            return Ok(true);
        }
        if n >= 6 {
            if let Some(j) = (0..n).find(|&j| self.w[j] == 0 && self.at(j + 1) == 0) {
                self.merge_zero_pair(j);
                return Ok(true);
            }
        }
        if let Some((j, k)) = minus_one_run(&self.w) {
            if n >= k + 4 {
                for i in 0..k - 1 {
                    self.ap(Move::AddOnes((j + i) % n));
                }
                self.merge_zero_pair((j + k - 1) % n);
                return Ok(true);
            }
        }
        if is_normal_slice(&self.w) {
            return Ok(false);
        }
        let t = bfs_to_normal(&Word::new(self.w.clone())?, BFS_NODE_BUDGET)?;
        for m in t.moves {
            self.ap(m);
        }
        Ok(true)
    }
}

/// The normal word equivalent to `w`, with the moves that reach it.
pub fn normalize(w: &Word) -> Result<(NormalWord, MoveTrace)> {
    if is_non_hyperbolic(w) {
        return Err(Error::NonHyperbolic);
    }
    let mut rw = Rewriter {
        w: w.entries().to_vec(),
        trace: Vec::new(),
    };
    let budget = 64
        * (w.len()
            + w.entries()
                .iter()
                .map(|x| x.unsigned_abs() as usize)
                .sum::<usize>())
        + 1024;
    for _ in 0..budget {
        if !rw.step()? {
            let nw = NormalWord::new(Word::new(rw.w)?)?;
            return Ok((nw, MoveTrace { moves: rw.trace }));
        }
    }
    Err(Error::SearchBudgetExceeded)
}
