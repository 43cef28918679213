//! Nielsen reduction of a word tuple towards the standard basis.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::GroupWord;

pub const DEFAULT_STEP_BUDGET: u64 = 2_000_000;
pub const STEP_BUDGET_ENV: &str = "AUGFIBER_STEP_BUDGET";

/// Plateau searches are run to exhaustion below this total length.
const EXHAUSTIVE_BELOW: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NielsenError {
    #[error("expected {rank} words over {rank} generators, got {words} words (largest generator {max_gen:?})")]
    RankMismatch {
        rank: usize,
        words: usize,
        max_gen: Option<usize>,
    },
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(u64),
}

/// Elementary Nielsen moves on a tuple `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Move {
    Swap { i: usize, j: usize },
    Invert { i: usize },
    /// `w[i] := w[j]^sign · w[i]`
    MultLeft { i: usize, j: usize, sign: i8 },
    /// `w[i] := w[i] · w[j]^sign`
    MultRight { i: usize, j: usize, sign: i8 },
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::MultLeft { i, j, sign } => Move::MultLeft { i, j, sign: -sign },
            Move::MultRight { i, j, sign } => Move::MultRight { i, j, sign: -sign },
            m => m,
        }
    }

    pub fn apply(self, w: &mut [GroupWord]) {
        match self {
            Move::Swap { i, j } => w.swap(i, j),
            Move::Invert { i } => w[i] = w[i].inverse(),
            Move::MultLeft { i, j, sign } => w[i] = w[j].pow(sign).mul(&w[i]),
            Move::MultRight { i, j, sign } => w[i] = w[i].mul(&w[j].pow(sign)),
        }
    }

    fn result(self, w: &[GroupWord]) -> GroupWord {
        match self {
            Move::MultLeft { i, j, sign } => w[j].pow(sign).mul(&w[i]),
            Move::MultRight { i, j, sign } => w[i].mul(&w[j].pow(sign)),
            _ => unreachable!("only multiplications are searched"),
        }
    }

    fn target(self) -> usize {
        match self {
            Move::Swap { i, .. }
            | Move::Invert { i }
            | Move::MultLeft { i, .. }
            | Move::MultRight { i, .. } => i,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub mv: Move,
    /// The tuple after this move.
    pub tuple: Vec<GroupWord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NielsenTrace {
    pub initial: Vec<GroupWord>,
    pub steps: Vec<TraceStep>,
}

impl NielsenTrace {
    pub fn final_tuple(&self) -> &[GroupWord] {
        self.steps
            .last()
            .map(|s| s.tuple.as_slice())
            .unwrap_or(&self.initial)
    }

    pub fn moves(&self) -> impl Iterator<Item = Move> + '_ {
        self.steps.iter().map(|s| s.mv)
    }

    /// Applies the moves to `start`, returning every intermediate tuple.
    pub fn replay(&self, start: &[GroupWord]) -> Vec<Vec<GroupWord>> {
        let mut cur = start.to_vec();
        let mut out = vec![];
        for mv in self.moves() {
            mv.apply(&mut cur);
            out.push(cur.clone());
        }
        out
    }

    /// Runs the inverse moves in reverse order, starting from `end`.
    pub fn replay_backward(&self, end: &[GroupWord]) -> Vec<Vec<GroupWord>> {
        let mut cur = end.to_vec();
        let mut out = vec![];
        for mv in self.steps.iter().rev().map(|s| s.mv.inverse()) {
            mv.apply(&mut cur);
            out.push(cur.clone());
        }
        out
    }

    /// True when replaying forwards reproduces every snapshot and replaying
    /// backwards from the final tuple returns to the initial one.
    pub fn is_consistent(&self) -> bool {
        let forward = self.replay(&self.initial);
        if forward.iter().zip(&self.steps).any(|(t, s)| *t != s.tuple) {
            return false;
        }
        let back = self.replay_backward(self.final_tuple());
        back.last().is_none_or(|t| *t == self.initial)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NielsenOutcome {
    pub generates: bool,
    pub trace: NielsenTrace,
    /// The tuple reduction stopped at.
    pub reduced: Vec<GroupWord>,
}

pub fn step_budget_from_env() -> u64 {
    std::env::var(STEP_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

pub fn nielsen_generates(images: &[GroupWord], rank: usize) -> Result<NielsenOutcome, NielsenError> {
    nielsen_generates_with_budget(images, rank, step_budget_from_env())
}

pub fn nielsen_generates_with_budget(
    images: &[GroupWord],
    rank: usize,
    budget: u64,
) -> Result<NielsenOutcome, NielsenError> {
    let max_gen = images.iter().filter_map(|w| w.max_generator()).max();
    if images.len() != rank || max_gen.is_some_and(|g| g >= rank) {
        return Err(NielsenError::RankMismatch {
            rank,
            words: images.len(),
            max_gen,
        });
    }
    let mut r = Reducer {
        cur: images.to_vec(),
        trace: NielsenTrace {
            initial: images.to_vec(),
            steps: vec![],
        },
        spent: 0,
        budget,
    };
    loop {
        if r.cur.iter().any(|w| w.is_empty()) {
            return Ok(r.finish(false));
        }
        if r.cur.iter().all(|w| w.len() == 1) {
            let generates = r.normalize();
            return Ok(r.finish(generates));
        }
        if let Some(mv) = r.best_decrease(&r.cur.clone())? {
            r.apply(mv);
            continue;
        }
        match r.plateau_search()? {
            Some(path) => {
                for mv in path {
                    r.apply(mv);
                }
            }
            None => return Ok(r.finish(false)),
        }
    }
}

struct Reducer {
    cur: Vec<GroupWord>,
    trace: NielsenTrace,
    spent: u64,
    budget: u64,
}

impl Reducer {
    fn apply(&mut self, mv: Move) {
        mv.apply(&mut self.cur);
        self.trace.steps.push(TraceStep {
            mv,
            tuple: self.cur.clone(),
        });
    }

    fn finish(self, generates: bool) -> NielsenOutcome {
        NielsenOutcome {
            generates,
            reduced: self.cur,
            trace: self.trace,
        }
    }

    fn tick(&mut self) -> Result<(), NielsenError> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(NielsenError::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    /// Multiplication moves in a fixed order: by target, then source, then
    /// left before right, then sign.
    fn candidates(n: usize) -> impl Iterator<Item = Move> {
        (0..n).flat_map(move |i| {
            (0..n).filter(move |&j| j != i).flat_map(move |j| {
                [
                    Move::MultLeft { i, j, sign: -1 },
                    Move::MultLeft { i, j, sign: 1 },
                    Move::MultRight { i, j, sign: -1 },
                    Move::MultRight { i, j, sign: 1 },
                ]
            })
        })
    }

    /// The move shortening the tuple the most; ties go to the smallest
    /// resulting word, then to candidate order.
    fn best_decrease(&mut self, w: &[GroupWord]) -> Result<Option<Move>, NielsenError> {
        let mut best: Option<(usize, GroupWord, Move)> = None;
        for mv in Self::candidates(w.len()) {
            self.tick()?;
            let i = mv.target();
            let new = mv.result(w);
            if new.len() >= w[i].len() {
                continue;
            }
            let gain = w[i].len() - new.len();
            let better = match &best {
                None => true,
                Some((g, word, _)) => gain > *g || (gain == *g && new < *word),
            };
            if better {
                best = Some((gain, new, mv));
            }
        }
        Ok(best.map(|(_, _, mv)| mv))
    }

    /// Breadth-first search through tuples of equal total length for one
    /// that admits a strictly shortening move. Returns the path including
    /// that final move.
    fn plateau_search(&mut self) -> Result<Option<Vec<Move>>, NielsenError> {
        let total: usize = self.cur.iter().map(|w| w.len()).sum();
        let start = self.cur.clone();
        let mut parent: HashMap<Vec<GroupWord>, Option<(Vec<GroupWord>, Move)>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            for mv in Self::candidates(state.len()) {
                self.tick()?;
                let i = mv.target();
                let new = mv.result(&state);
                if new.is_empty() || new.len() > state[i].len() {
                    continue;
                }
                let mut next = state.clone();
                next[i] = new;
                if parent.contains_key(&next) {
                    continue;
                }
                let shorter = next.iter().map(|w| w.len()).sum::<usize>() < total;
                parent.insert(next.clone(), Some((state.clone(), mv)));
                if shorter {
                    let mut path = vec![];
                    let mut at = next;
                    while let Some(Some((prev, mv))) = parent.get(&at) {
                        path.push(*mv);
                        at = prev.clone();
                    }
                    path.reverse();
                    return Ok(Some(path));
                }
                queue.push_back(next);
            }
            if total >= EXHAUSTIVE_BELOW && parent.len() as u64 > self.budget / 4 {
                return Err(NielsenError::BudgetExhausted(self.budget));
            }
        }
        Ok(None)
    }

    /// Brings a tuple of single letters to the standard basis with inversions
    /// and swaps. False if some generator is repeated.
    fn normalize(&mut self) -> bool {
        let n = self.cur.len();
        for i in 0..n {
            if let Some((_, -1)) = self.cur[i].as_generator() {
                self.apply(Move::Invert { i });
            }
        }
        for i in 0..n {
            let Some(j) = (i..n).find(|&j| self.cur[j].as_generator() == Some((i, 1))) else {
                return false;
            };
            if j != i {
                self.apply(Move::Swap { i, j });
            }
        }
        true
    }
}
