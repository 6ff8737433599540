//! Exhaustive adversary walks.

use serde::Serialize;

use super::{GameError, GameGoal, GameTranscript, HiderStrategy, Position, SeekerStrategy, Side, Strategy};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Result of checking one strategy against every opponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyCheck {
    pub side: Side,
    pub horizon: u32,
    pub passed: bool,
    /// Complete plays examined.
    pub plays: usize,
    /// A losing play, when `passed` is false.
    pub counterexample: Option<GameTranscript>,
}

pub fn verify_strategy(
    space: &FiniteSpace,
    goal: GameGoal,
    strategy: &Strategy,
    horizon: u32,
) -> Result<StrategyCheck, GameError> {
    match strategy {
        Strategy::Seeker(s) => verify_seeker(space, goal, s.as_ref(), horizon),
        Strategy::Hider(h) => Ok(verify_hider(space, goal, h.as_ref(), horizon)),
    }
}

/// Walks every Hider reply sequence, pruned at terminal states. Passes iff
/// every play reaches a terminal state within `horizon` rounds.
pub fn verify_seeker(
    space: &FiniteSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    horizon: u32,
) -> Result<StrategyCheck, GameError> {
    let mut plays = 0;
    let mut stack = vec![Position::start(space, horizon)];
    while let Some(pos) = stack.pop() {
        if goal.is_terminal(pos.state) {
            plays += 1;
            continue;
        }
        if pos.rounds_left == 0 {
            plays += 1;
            return Ok(StrategyCheck {
                side: Side::Seeker,
                horizon,
                passed: false,
                plays,
                counterexample: Some(GameTranscript::replay(space, goal, &pos.history)),
            });
        }
        let u = seeker.choose(&pos);
        if !space.is_open(u) {
            return Err(GameError::NonOpenMove {
                state: pos.state,
                proposed: u,
            });
        }
        stack.push(pos.advance(space, u, false));
        stack.push(pos.advance(space, u, true));
    }
    Ok(StrategyCheck {
        side: Side::Seeker,
        horizon,
        passed: true,
        plays,
        counterexample: None,
    })
}

/// Walks every Seeker move sequence, one move per distinct trace `T` of the
/// current state (played as the least open set `↑T`). Passes iff every play
/// still has a nonterminal state after `horizon` rounds, which also means a
/// point-committed Hider could have answered consistently.
pub fn verify_hider(
    space: &FiniteSpace,
    goal: GameGoal,
    hider: &dyn HiderStrategy,
    horizon: u32,
) -> StrategyCheck {
    let mut plays = 0;
    let mut stack = vec![Position::start(space, horizon)];
    while let Some(pos) = stack.pop() {
        if goal.is_terminal(pos.state) {
            plays += 1;
            return StrategyCheck {
                side: Side::Hider,
                horizon,
                passed: false,
                plays,
                counterexample: Some(GameTranscript::replay(space, goal, &pos.history)),
            };
        }
        if pos.rounds_left == 0 {
            plays += 1;
            continue;
        }
        for t in space.relative_opens(pos.state).into_iter().rev() {
            let u: PointSet = space.up_closure(t);
            let i = hider.answer(&pos, u);
            stack.push(pos.advance(space, u, i));
        }
    }
    StrategyCheck {
        side: Side::Hider,
        horizon,
        passed: true,
        plays,
        counterexample: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, discrete};
    use crate::game::{extract_hider, extract_seeker};

    struct Constant(PointSet);

    impl SeekerStrategy for Constant {
        fn choose(&self, _: &Position) -> PointSet {
            self.0
        }
    }

    #[test]
    fn optimal_seeker_passes_at_value_only() {
        let d = discrete(4);
        let s = extract_seeker(&d, GameGoal::PointSeparating).unwrap();
        let ok = verify_seeker(&d, GameGoal::PointSeparating, &s, 2).unwrap();
        assert!(ok.passed);
        assert_eq!(ok.plays, 4);
        let bad = verify_seeker(&d, GameGoal::PointSeparating, &s, 1).unwrap();
        assert!(!bad.passed);
        let t = bad.counterexample.unwrap();
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.winner, Side::Hider);
        t.validate(&d).unwrap();
    }

    #[test]
    fn non_open_move_is_an_error() {
        let c = chain(3);
        let err = verify_seeker(&c, GameGoal::PointSeparating, &Constant(PointSet::from([0])), 2);
        assert!(matches!(err, Err(GameError::NonOpenMove { .. })));
    }

    #[test]
    fn hider_checks() {
        let d = discrete(4);
        let h = extract_hider(&d, GameGoal::PointSeparating, 1).unwrap();
        assert!(verify_hider(&d, GameGoal::PointSeparating, &h, 1).passed);
        let strategy = Strategy::Hider(Box::new(h));
        let report = verify_strategy(&d, GameGoal::PointSeparating, &strategy, 2).unwrap();
        assert!(!report.passed);
        assert!(report.counterexample.is_some());
    }
}
