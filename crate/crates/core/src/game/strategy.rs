use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{GameError, GameGoal, Position, Side, Solver};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// A deterministic Seeker playbook. Moves must be open in the ambient space.
pub trait SeekerStrategy: Send + Sync {
    fn choose(&self, pos: &Position) -> PointSet;
}

/// A deterministic Hider playbook: `true` keeps `W ∩ U`, `false` keeps `W ∖ U`.
pub trait HiderStrategy: Send + Sync {
    fn answer(&self, pos: &Position, proposed: PointSet) -> bool;
}

/// Either side's strategy.
pub enum Strategy {
    Seeker(Box<dyn SeekerStrategy>),
    Hider(Box<dyn HiderStrategy>),
}

impl Strategy {
    pub fn side(&self) -> Side {
        match self {
            Strategy::Seeker(_) => Side::Seeker,
            Strategy::Hider(_) => Side::Hider,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveEntry {
    pub state: PointSet,
    #[serde(rename = "U")]
    pub open: PointSet,
}

/// A Seeker strategy that depends on the current state only, tabulated over
/// the nonterminal states its own play can reach. Unlisted states get `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateMapSeeker {
    pub goal: GameGoal,
    /// Rounds within which the strategy wins.
    pub value: u32,
    moves: Vec<MoveEntry>,
}

impl StateMapSeeker {
    pub fn move_at(&self, state: PointSet) -> Option<PointSet> {
        self.moves
            .binary_search_by_key(&state, |e| e.state)
            .ok()
            .map(|k| self.moves[k].open)
    }

    pub fn moves(&self) -> &[MoveEntry] {
        &self.moves
    }
}

impl SeekerStrategy for StateMapSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        self.move_at(pos.state).unwrap_or(PointSet::EMPTY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub state: PointSet,
    pub value: u32,
}

/// The Hider that always keeps the branch of larger game value (then the
/// larger set, then `W ∩ U`). It carries the exact values of every state its
/// own play can reach within its horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueHider {
    pub goal: GameGoal,
    /// Rounds the strategy survives.
    pub horizon: u32,
    values: Vec<ValueEntry>,
}

impl ValueHider {
    pub fn values(&self) -> &[ValueEntry] {
        &self.values
    }

    pub fn value_of(&self, state: PointSet) -> Option<u32> {
        self.values
            .binary_search_by_key(&state, |e| e.state)
            .ok()
            .map(|k| self.values[k].value)
    }

    fn keeps_inside(&self, inside: PointSet, outside: PointSet) -> bool {
        let key = |s: PointSet| {
            let v = self
                .value_of(s)
                .unwrap_or(if self.goal.is_terminal(s) { 0 } else { 1 });
            (v, s.len())
        };
        key(inside) >= key(outside)
    }
}

impl HiderStrategy for ValueHider {
    fn answer(&self, pos: &Position, proposed: PointSet) -> bool {
        self.keeps_inside(pos.state & proposed, pos.state - proposed)
    }
}

/// An optimal Seeker strategy for `goal`, winning within the game value.
/// Each move is the least open set `↑T` having the chosen optimal trace `T`.
pub fn extract_seeker(space: &FiniteSpace, goal: GameGoal) -> Result<StateMapSeeker, GameError> {
    let mut solver = Solver::new(space, goal)?;
    extract_seeker_with(&mut solver)
}

pub(crate) fn extract_seeker_with(solver: &mut Solver<'_>) -> Result<StateMapSeeker, GameError> {
    let space = solver.space();
    let value = solver.value()?;
    let mut moves = BTreeMap::new();
    let mut stack = vec![space.points()];
    while let Some(w) = stack.pop() {
        if moves.contains_key(&w) {
            continue;
        }
        let Some(t) = solver.optimal_trace(w)? else {
            continue;
        };
        let u = space.up_closure(t);
        moves.insert(w, u);
        stack.push(t);
        stack.push(w - t);
    }
    Ok(StateMapSeeker {
        goal: solver.goal(),
        value,
        moves: moves
            .into_iter()
            .map(|(state, open)| MoveEntry { state, open })
            .collect(),
    })
}

/// A Hider strategy surviving `horizon` rounds; fails when `horizon >= value`.
pub fn extract_hider(space: &FiniteSpace, goal: GameGoal, horizon: u32) -> Result<ValueHider, GameError> {
    let mut solver = Solver::new(space, goal)?;
    extract_hider_with(&mut solver, horizon)
}

fn extract_hider_with(solver: &mut Solver<'_>, horizon: u32) -> Result<ValueHider, GameError> {
    let space = solver.space();
    let value = solver.value()?;
    if horizon >= value {
        return Err(GameError::HiderCannotWin { value, horizon });
    }
    let mut values: BTreeMap<PointSet, u32> = BTreeMap::new();
    values.insert(space.points(), value);
    let mut explored: BTreeMap<PointSet, u32> = BTreeMap::new();
    let mut stack = vec![(space.points(), horizon)];
    while let Some((w, left)) = stack.pop() {
        if left == 0 || explored.get(&w).is_some_and(|&r| r >= left) {
            continue;
        }
        explored.insert(w, left);
        for t in space.relative_opens(w) {
            let rest = w - t;
            let vt = solver.value_at(t)?;
            let vr = solver.value_at(rest)?;
            values.insert(t, vt);
            values.insert(rest, vr);
            let keep = if (vt, t.len()) >= (vr, rest.len()) { t } else { rest };
            stack.push((keep, left - 1));
        }
    }
    Ok(ValueHider {
        goal: solver.goal(),
        horizon,
        values: values
            .into_iter()
            .map(|(state, value)| ValueEntry { state, value })
            .collect(),
    })
}

/// The winner of the horizon-`n` game with a strategy for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HorizonWinner {
    Seeker(StateMapSeeker),
    Hider(ValueHider),
}

impl HorizonWinner {
    pub fn side(&self) -> Side {
        match self {
            HorizonWinner::Seeker(_) => Side::Seeker,
            HorizonWinner::Hider(_) => Side::Hider,
        }
    }
}

/// Finite-horizon determinacy: exactly one side has a winning strategy.
pub fn decide(space: &FiniteSpace, goal: GameGoal, horizon: u32) -> Result<HorizonWinner, GameError> {
    let mut solver = Solver::new(space, goal)?;
    if solver.value()? <= horizon {
        extract_seeker_with(&mut solver).map(HorizonWinner::Seeker)
    } else {
        extract_hider_with(&mut solver, horizon).map(HorizonWinner::Hider)
    }
}

/// Distinct open sets the Seeker emits at reachable nonterminal positions
/// within `horizon` rounds, in lexicographic order.
pub fn strategy_range(
    space: &FiniteSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    horizon: u32,
) -> Vec<PointSet> {
    let mut range = BTreeSet::new();
    let mut stack = vec![Position::start(space, horizon)];
    while let Some(pos) = stack.pop() {
        if pos.rounds_left == 0 || goal.is_terminal(pos.state) {
            continue;
        }
        let u = seeker.choose(&pos);
        range.insert(u);
        stack.push(pos.advance(space, u, true));
        stack.push(pos.advance(space, u, false));
    }
    let mut out: Vec<PointSet> = range.into_iter().collect();
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, discrete, sierpinski};

    #[test]
    fn discrete_two_asks_zero() {
        let d = discrete(2);
        let s = extract_seeker(&d, GameGoal::PointSeparating).unwrap();
        assert_eq!(s.value, 1);
        assert_eq!(s.move_at(d.points()), Some(PointSet::from([0])));
        assert_eq!(strategy_range(&d, GameGoal::PointSeparating, &s, 1), vec![PointSet::from([0])]);
    }

    #[test]
    fn range_bound_discrete_four() {
        let d = discrete(4);
        let s = extract_seeker(&d, GameGoal::PointSeparating).unwrap();
        let range = strategy_range(&d, GameGoal::PointSeparating, &s, s.value);
        assert!(range.len() <= 3, "{range:?}");
    }

    #[test]
    fn hider_extraction() {
        let d = discrete(4);
        let h = extract_hider(&d, GameGoal::PointSeparating, 1).unwrap();
        // the first reply keeps a two-point half
        let pos = Position::start(&d, 1);
        for u in [PointSet::from([0]), PointSet::from([0, 1, 2]), PointSet::from([1, 3])] {
            let keep = if h.answer(&pos, u) { u } else { d.points() - u };
            assert!(keep.len() >= 2);
        }
        let c = chain(3);
        let goal = GameGoal::membership(PointSet::from([0, 2]));
        assert_eq!(
            extract_hider(&c, goal, 2).unwrap_err(),
            GameError::HiderCannotWin { value: 2, horizon: 2 }
        );
    }

    #[test]
    fn decide_picks_one_side() {
        let s = sierpinski();
        assert_eq!(decide(&s, GameGoal::PointSeparating, 0).unwrap().side(), Side::Hider);
        assert_eq!(decide(&s, GameGoal::PointSeparating, 1).unwrap().side(), Side::Seeker);
    }
}
