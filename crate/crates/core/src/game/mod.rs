//! The Seeker/Hider cut-and-choose games on a finite T₀ space.
//!
//! Each round the Seeker names an open set `U` and the Hider answers a bit
//! `i`; the state shrinks to `W ∩ U` (i = 1) or `W ∖ U` (i = 0). The
//! point-separating game is won by the Seeker once `|W| <= 1`, the
//! set-membership game for a target `Y` once `W ⊆ Y` or `W ∩ Y = ∅`. Both win
//! conditions are inherited by subsets, so a game of length `n` is won by the
//! Seeker iff the condition holds at some round `<= n`.
//!
//! Game lengths are natural numbers here: ordinal sum, product and `2^{<β}`
//! become `+`, `×` and `2^β - 1`.

mod solver;
mod strategy;
mod transcript;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pointset::PointSet;
use crate::space::FiniteSpace;

pub use solver::{log2ceil, ps, sm, sm_set, value, SolverConfig, Solver};
pub use strategy::{
    decide, extract_hider, extract_seeker, strategy_range, HiderStrategy, HorizonWinner,
    MoveEntry, SeekerStrategy, StateMapSeeker, Strategy, ValueEntry, ValueHider,
};
pub use transcript::{play_out, GameTranscript, Round, TranscriptError};
pub use verify::{verify_hider, verify_seeker, verify_strategy, StrategyCheck};

/// Which game is being played.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GameGoal {
    PointSeparating,
    SetMembership { target: PointSet },
}

impl GameGoal {
    pub fn membership(target: PointSet) -> Self {
        GameGoal::SetMembership { target }
    }

    /// The Seeker's win condition holds at state `w`.
    pub fn is_terminal(&self, w: PointSet) -> bool {
        match *self {
            GameGoal::PointSeparating => w.len() <= 1,
            GameGoal::SetMembership { target } => w.is_subset(target) || w.is_disjoint(target),
        }
    }
}

/// Free-function form of [`GameGoal::is_terminal`].
pub fn is_terminal(goal: &GameGoal, w: PointSet) -> bool {
    goal.is_terminal(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Seeker,
    Hider,
}

/// `U` if `i = 1`, its complement if `i = 0`.
pub fn bracket(space: &FiniteSpace, u: PointSet, i: bool) -> PointSet {
    if i {
        u
    } else {
        u.complement(space.len())
    }
}

/// Intersection of the brackets of a play; the empty play gives the whole space.
pub fn trace(space: &FiniteSpace, opens: &[PointSet], replies: &[bool]) -> Result<PointSet, GameError> {
    if opens.len() != replies.len() {
        return Err(GameError::LengthMismatch {
            opens: opens.len(),
            replies: replies.len(),
        });
    }
    Ok(opens
        .iter()
        .zip(replies)
        .fold(space.points(), |w, (&u, &i)| w & bracket(space, u, i)))
}

/// A position reached after some rounds of play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    /// The current state `W`.
    pub state: PointSet,
    /// Moves so far as `(U, i)` pairs.
    pub history: Vec<(PointSet, bool)>,
    pub rounds_left: u32,
}

impl Position {
    pub fn start(space: &FiniteSpace, horizon: u32) -> Self {
        Position {
            state: space.points(),
            history: Vec::new(),
            rounds_left: horizon,
        }
    }

    pub fn round(&self) -> usize {
        self.history.len()
    }

    /// The position after the Seeker plays `u` and the Hider answers `i`.
    pub fn advance(&self, space: &FiniteSpace, u: PointSet, i: bool) -> Position {
        let mut history = self.history.clone();
        history.push((u, i));
        Position {
            state: self.state & bracket(space, u, i),
            history,
            rounds_left: self.rounds_left.saturating_sub(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("move sequence has {opens} open sets but {replies} replies")]
    LengthMismatch { opens: usize, replies: usize },
    #[error("the Hider cannot survive {horizon} rounds: the game value is {value}")]
    HiderCannotWin { value: u32, horizon: u32 },
    #[error("the Seeker cannot win within {horizon} rounds: the game value is {value}")]
    SeekerCannotWin { value: u32, horizon: u32 },
    #[error("Seeker strategy proposed {proposed} at state {state}, which is not open")]
    NonOpenMove { state: PointSet, proposed: PointSet },
    #[error("target {target} is not a subset of the {n}-point space")]
    TargetOutOfRange { target: PointSet, n: usize },
    #[error("memo table exceeded {limit} states; raise TOPOGAMES_MAX_STATES")]
    StateLimit { limit: usize },
    #[error("sm(X) over all targets is capped at {cap} points, got {n}")]
    TooLargeForSm { n: usize, cap: usize },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, sierpinski};

    #[test]
    fn bracket_examples() {
        let s = sierpinski();
        assert_eq!(bracket(&s, PointSet::from([1]), true), PointSet::from([1]));
        assert_eq!(bracket(&s, PointSet::from([1]), false), PointSet::from([0]));
        assert_eq!(bracket(&s, PointSet::EMPTY, false), s.points());
    }

    #[test]
    fn trace_examples() {
        let s = sierpinski();
        assert_eq!(trace(&s, &[PointSet::from([1])], &[true]).unwrap(), PointSet::from([1]));
        let c = chain(3);
        let w = trace(&c, &[PointSet::from([2]), PointSet::from([1, 2])], &[false, true]).unwrap();
        assert_eq!(w, PointSet::from([1]));
        assert_eq!(trace(&c, &[], &[]).unwrap(), c.points());
        assert!(matches!(
            trace(&c, &[PointSet::EMPTY], &[]),
            Err(GameError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn terminal_examples() {
        assert!(is_terminal(&GameGoal::PointSeparating, PointSet::EMPTY));
        let goal = GameGoal::membership(PointSet::from([0, 2]));
        assert!(goal.is_terminal(PointSet::from([1])));
        assert!(!goal.is_terminal(PointSet::from([0, 1])));
        assert!(goal.is_terminal(PointSet::from([0, 2])));
    }

    #[test]
    fn goal_json_shape() {
        let g = GameGoal::membership(PointSet::from([0, 2]));
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"kind":"set_membership","target":[0,2]}"#
        );
    }
}
