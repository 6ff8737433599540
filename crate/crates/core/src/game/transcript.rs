use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{bracket, GameGoal, HiderStrategy, Position, SeekerStrategy, Side};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// One round: the Seeker's open set, the Hider's bit, and the resulting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    #[serde(rename = "U")]
    pub open: PointSet,
    pub i: u8,
    #[serde(rename = "W")]
    pub state: PointSet,
}

/// Record of one play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub goal: GameGoal,
    pub rounds: Vec<Round>,
    pub outcome: PointSet,
    pub winner: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("round {round}: proposed set {open} is not open")]
    NotOpen { round: usize, open: PointSet },
    #[error("round {round}: reply must be 0 or 1, got {i}")]
    BadReply { round: usize, i: u8 },
    #[error("round {round}: recorded state {recorded} but the play gives {expected}")]
    StateMismatch {
        round: usize,
        recorded: PointSet,
        expected: PointSet,
    },
    #[error("recorded outcome {recorded} differs from the last state {expected}")]
    OutcomeMismatch { recorded: PointSet, expected: PointSet },
    #[error("recorded winner {recorded:?} inconsistent with the outcome")]
    WinnerMismatch { recorded: Side },
}

impl GameTranscript {
    /// Builds the transcript of a move list. The winner is the Seeker iff the
    /// final state satisfies the goal.
    pub fn replay(space: &FiniteSpace, goal: GameGoal, moves: &[(PointSet, bool)]) -> Self {
        let mut w = space.points();
        let rounds = moves
            .iter()
            .map(|&(u, i)| {
                w &= bracket(space, u, i);
                Round {
                    open: u,
                    i: i as u8,
                    state: w,
                }
            })
            .collect();
        GameTranscript {
            goal,
            rounds,
            outcome: w,
            winner: if goal.is_terminal(w) { Side::Seeker } else { Side::Hider },
        }
    }

    pub fn moves(&self) -> Vec<(PointSet, bool)> {
        self.rounds.iter().map(|r| (r.open, r.i == 1)).collect()
    }

    /// Checks `W(α+1) = W(α) ∩ U(α)^{i(α)}`, openness of every move, the
    /// outcome, and the winner.
    pub fn validate(&self, space: &FiniteSpace) -> Result<(), TranscriptError> {
        let mut w = space.points();
        for (round, r) in self.rounds.iter().enumerate() {
            if !space.is_open(r.open) {
                return Err(TranscriptError::NotOpen { round, open: r.open });
            }
            if r.i > 1 {
                return Err(TranscriptError::BadReply { round, i: r.i });
            }
            w &= bracket(space, r.open, r.i == 1);
            if w != r.state {
                return Err(TranscriptError::StateMismatch {
                    round,
                    recorded: r.state,
                    expected: w,
                });
            }
        }
        if w != self.outcome {
            return Err(TranscriptError::OutcomeMismatch {
                recorded: self.outcome,
                expected: w,
            });
        }
        let expected = if self.goal.is_terminal(w) { Side::Seeker } else { Side::Hider };
        if expected != self.winner {
            return Err(TranscriptError::WinnerMismatch { recorded: self.winner });
        }
        Ok(())
    }
}

/// Plays `seeker` against `hider` for at most `horizon` rounds, stopping early
/// once the state is terminal.
pub fn play_out(
    space: &FiniteSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    hider: &dyn HiderStrategy,
    horizon: u32,
) -> GameTranscript {
    let mut pos = Position::start(space, horizon);
    while pos.rounds_left > 0 && !goal.is_terminal(pos.state) {
        let u = seeker.choose(&pos);
        let i = hider.answer(&pos, u);
        pos = pos.advance(space, u, i);
    }
    GameTranscript::replay(space, goal, &pos.history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::chain;

    #[test]
    fn replay_and_validate() {
        let c = chain(3);
        let goal = GameGoal::membership(PointSet::from([0, 2]));
        let t = GameTranscript::replay(
            &c,
            goal,
            &[(PointSet::from([2]), false), (PointSet::from([1, 2]), true)],
        );
        assert_eq!(t.outcome, PointSet::from([1]));
        assert_eq!(t.winner, Side::Seeker);
        t.validate(&c).unwrap();

        let mut bad = t.clone();
        bad.rounds[0].state = PointSet::from([0]);
        assert!(matches!(bad.validate(&c), Err(TranscriptError::StateMismatch { round: 0, .. })));
        let mut bad = t.clone();
        bad.winner = Side::Hider;
        assert!(bad.validate(&c).is_err());
        let mut bad = t;
        bad.rounds[0].open = PointSet::from([0]);
        assert!(matches!(bad.validate(&c), Err(TranscriptError::NotOpen { .. })));
    }

    #[test]
    fn json_round_shape() {
        let r = Round {
            open: PointSet::from([1]),
            i: 0,
            state: PointSet::from([0]),
        };
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"U":[1],"i":0,"W":[0]}"#);
    }
}
