//! Exact game values by memoized backward induction.
//!
//! `val(W) = 0` if `W` is terminal, otherwise
//! `1 + min_T max(val(T), val(W ∖ T))` over the distinct traces `T = U ∩ W` of
//! open sets. Trivial traces (`∅` and `W`) leave the state unchanged in one
//! branch and are never optimal, so only proper traces are searched. The
//! search is a depth-first branch and bound: each call carries a limit and
//! only has to be exact below it, and the memo keeps either the exact value
//! or the best proven lower bound for each state.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{GameError, GameGoal};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

const DEFAULT_MAX_STATES: usize = 1 << 22;
const DEFAULT_SM_MAX_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Memo entries allowed per solve before aborting with [`GameError::StateLimit`].
    pub max_states: usize,
    /// Largest space on which [`sm`] enumerates all targets.
    pub sm_max_points: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_states: DEFAULT_MAX_STATES,
            sm_max_points: DEFAULT_SM_MAX_POINTS,
        }
    }
}

impl SolverConfig {
    /// Defaults, with `max_states` taken from `TOPOGAMES_MAX_STATES` when set.
    pub fn from_env() -> Self {
        let mut cfg = SolverConfig::default();
        if let Some(limit) = std::env::var("TOPOGAMES_MAX_STATES")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.max_states = limit;
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    Exact(u8),
    AtLeast(u8),
}

/// One solve of one game on one space. The memo is keyed by state only.
pub struct Solver<'a> {
    space: &'a FiniteSpace,
    goal: GameGoal,
    memo: FxHashMap<PointSet, Memo>,
    max_states: usize,
}

impl<'a> Solver<'a> {
    pub fn new(space: &'a FiniteSpace, goal: GameGoal) -> Result<Self, GameError> {
        Self::with_config(space, goal, &SolverConfig::default())
    }

    pub fn with_config(
        space: &'a FiniteSpace,
        goal: GameGoal,
        config: &SolverConfig,
    ) -> Result<Self, GameError> {
        if let GameGoal::SetMembership { target } = goal {
            if !target.is_subset(space.points()) {
                return Err(GameError::TargetOutOfRange {
                    target,
                    n: space.len(),
                });
            }
        }
        Ok(Solver {
            space,
            goal,
            memo: FxHashMap::default(),
            max_states: config.max_states,
        })
    }

    pub fn space(&self) -> &'a FiniteSpace {
        self.space
    }

    pub fn goal(&self) -> GameGoal {
        self.goal
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Value of the game started from the whole space.
    pub fn value(&mut self) -> Result<u32, GameError> {
        self.value_at(self.space.points())
    }

    /// Value of the game started from state `w`.
    pub fn value_at(&mut self, w: PointSet) -> Result<u32, GameError> {
        // A proper split shrinks both branches, so val(W) < |W| + 1.
        self.value_below(w, w.len() as u32 + 1)
    }

    /// `min(val(w), limit)`.
    pub fn value_below(&mut self, w: PointSet, limit: u32) -> Result<u32, GameError> {
        if limit == 0 || self.goal.is_terminal(w) {
            return Ok(0);
        }
        let mut lo = self.lower_bound(w);
        match self.memo.get(&w) {
            Some(&Memo::Exact(v)) => return Ok((v as u32).min(limit)),
            Some(&Memo::AtLeast(v)) => lo = lo.max(v as u32),
            None => {}
        }
        if lo >= limit {
            return Ok(limit);
        }
        if self.one_move_wins(w) {
            self.store(w, Memo::Exact(1))?;
            return Ok(1);
        }
        let mut best = limit;
        for (t, rest, floor) in self.candidates(w) {
            if 1 + floor >= best {
                break;
            }
            let child_limit = best - 1;
            let a = self.value_below(t, child_limit)?;
            if a >= child_limit {
                continue;
            }
            let b = self.value_below(rest, child_limit)?;
            if b >= child_limit {
                continue;
            }
            best = 1 + a.max(b);
            if best <= lo {
                break;
            }
        }
        let entry = if best < limit {
            Memo::Exact(best as u8)
        } else {
            Memo::AtLeast(limit as u8)
        };
        self.store(w, entry)?;
        Ok(best)
    }

    /// An optimal Seeker reply at `w`, as a trace `T ⊆ w`: among proper traces
    /// whose branches both have value `val(w) - 1`, the one with the smallest
    /// larger branch, then the lexicographically least. `None` at terminal
    /// states.
    pub fn optimal_trace(&mut self, w: PointSet) -> Result<Option<PointSet>, GameError> {
        if self.goal.is_terminal(w) {
            return Ok(None);
        }
        let v = self.value_at(w)?;
        let mut best: Option<(usize, PointSet)> = None;
        for t in self.space.relative_opens(w) {
            let rest = w - t;
            if t.is_empty() || rest.is_empty() {
                continue;
            }
            if self.value_below(t, v)? >= v || self.value_below(rest, v)? >= v {
                continue;
            }
            let worst = t.len().max(rest.len());
            let better = match best {
                None => true,
                Some((bw, bt)) => worst < bw || (worst == bw && t.lex_cmp(bt).is_lt()),
            };
            if better {
                best = Some((worst, t));
            }
        }
        Ok(best.map(|(_, t)| t))
    }

    /// A static lower bound on `val(w)` for a nonterminal `w`.
    fn lower_bound(&self, w: PointSet) -> u32 {
        match self.goal {
            // The Hider may follow any fixed point of w, and distinct points
            // must end with distinct reply strings.
            GameGoal::PointSeparating => log2ceil(w.len()),
            GameGoal::SetMembership { .. } => 1,
        }
    }

    /// `val(w) = 1` iff some single move makes both branches terminal.
    fn one_move_wins(&self, w: PointSet) -> bool {
        match self.goal {
            GameGoal::PointSeparating => w.len() == 2,
            GameGoal::SetMembership { target } => {
                self.space.is_relatively_open(w & target, w)
                    || self.space.is_relatively_open(w - target, w)
            }
        }
    }

    /// Proper traces with their static branch floor, most promising first.
    /// Of two complementary traces only one is kept.
    fn candidates(&self, w: PointSet) -> Vec<(PointSet, PointSet, u32)> {
        let mut out: Vec<(PointSet, PointSet, u32)> = self
            .space
            .relative_opens(w)
            .into_iter()
            .filter(|t| !t.is_empty() && *t != w)
            .filter(|&t| {
                let rest = w - t;
                !(rest < t && self.space.is_relatively_open(rest, w))
            })
            .map(|t| {
                let rest = w - t;
                let floor = branch_floor(&self.goal, t).max(branch_floor(&self.goal, rest));
                (t, rest, floor)
            })
            .collect();
        out.sort_by_key(|&(t, rest, floor)| (floor, t.len().max(rest.len()), t));
        out
    }

    fn store(&mut self, w: PointSet, entry: Memo) -> Result<(), GameError> {
        if !self.memo.contains_key(&w) && self.memo.len() >= self.max_states {
            return Err(GameError::StateLimit {
                limit: self.max_states,
            });
        }
        let merged = match (self.memo.get(&w), entry) {
            (Some(&Memo::AtLeast(old)), Memo::AtLeast(new)) => Memo::AtLeast(old.max(new)),
            _ => entry,
        };
        self.memo.insert(w, merged);
        Ok(())
    }
}

fn branch_floor(goal: &GameGoal, s: PointSet) -> u32 {
    if goal.is_terminal(s) {
        0
    } else {
        match goal {
            GameGoal::PointSeparating => log2ceil(s.len()),
            GameGoal::SetMembership { .. } => 1,
        }
    }
}

/// Least `k` with `m <= 2^k`.
pub fn log2ceil(m: usize) -> u32 {
    if m <= 1 {
        0
    } else {
        usize::BITS - (m - 1).leading_zeros()
    }
}

/// Least horizon at which the Seeker wins `goal` on `space`.
pub fn value(space: &FiniteSpace, goal: GameGoal) -> Result<u32, GameError> {
    Solver::new(space, goal)?.value()
}

/// Point-separating number.
pub fn ps(space: &FiniteSpace) -> Result<u32, GameError> {
    value(space, GameGoal::PointSeparating)
}

/// Set-membership number of the target `y`.
pub fn sm_set(space: &FiniteSpace, y: PointSet) -> Result<u32, GameError> {
    value(space, GameGoal::membership(y))
}

/// Maximum of [`sm_set`] over all targets. `Y` and its complement give the
/// same game, so only targets containing point 0 are solved.
pub fn sm(space: &FiniteSpace, config: &SolverConfig) -> Result<u32, GameError> {
    if space.len() > config.sm_max_points {
        return Err(GameError::TooLargeForSm {
            n: space.len(),
            cap: config.sm_max_points,
        });
    }
    if space.len() <= 1 {
        return Ok(0);
    }
    let rest = space.points() - PointSet::singleton(0);
    let targets: Vec<PointSet> = rest.subsets().map(|s| s.with(0)).collect();
    let values = targets
        .par_iter()
        .map(|&y| Solver::with_config(space, GameGoal::membership(y), config)?.value())
        .collect::<Result<Vec<u32>, GameError>>()?;
    Ok(values.into_iter().max().unwrap_or(0))
}
