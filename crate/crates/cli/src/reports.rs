//! JSON reports for `solve` and `strategies`, with points given by name.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use topogames::format::{NamedSpace, SpaceDoc};
use topogames::game::{
    decide, extract_hider, extract_seeker, play_out, verify_hider, verify_seeker, GameGoal,
    GameTranscript, HiderStrategy, HorizonWinner, Position, SeekerStrategy, Side, Solver,
    SolverConfig, StateMapSeeker, StrategyCheck, ValueHider,
};
use topogames::strategies::{
    binary_coding, binary_coding_family, column_elimination_seeker, greedy_hider, product_seeker,
    sequential_separating_seeker, sum_membership_seeker, sum_seeker, two_move_membership, TwoMove,
};
use topogames::PointSet;

use crate::{named_product, named_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GoalKind {
    Ps,
    Sm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NamedGoal {
    PointSeparating,
    SetMembership { target: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedRound {
    #[serde(rename = "U")]
    pub open: Vec<String>,
    pub i: u8,
    #[serde(rename = "W")]
    pub state: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedTranscript {
    pub goal: NamedGoal,
    pub rounds: Vec<NamedRound>,
    pub outcome: Vec<String>,
    pub winner: Side,
}

pub fn name_goal(named: &NamedSpace, goal: GameGoal) -> NamedGoal {
    match goal {
        GameGoal::PointSeparating => NamedGoal::PointSeparating,
        GameGoal::SetMembership { target } => NamedGoal::SetMembership {
            target: named.names_of(target),
        },
    }
}

/// Validates the transcript against the space, then names its points.
pub fn name_transcript(named: &NamedSpace, t: &GameTranscript) -> Result<NamedTranscript> {
    t.validate(&named.space).context("transcript failed replay")?;
    Ok(NamedTranscript {
        goal: name_goal(named, t.goal),
        rounds: t
            .rounds
            .iter()
            .map(|r| NamedRound {
                open: named.names_of(r.open),
                i: r.i,
                state: named.names_of(r.state),
            })
            .collect(),
        outcome: named.names_of(t.outcome),
        winner: t.winner,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub side: Side,
    pub horizon: u32,
    pub passed: bool,
    pub plays: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<NamedTranscript>,
}

fn name_check(named: &NamedSpace, c: &StrategyCheck) -> Result<NamedCheck> {
    Ok(NamedCheck {
        side: c.side,
        horizon: c.horizon,
        passed: c.passed,
        plays: c.plays,
        counterexample: c
            .counterexample
            .as_ref()
            .map(|t| name_transcript(named, t))
            .transpose()?,
    })
}

/// One decision point of a tabulated strategy. `history` lists the replies
/// so far, e.g. `"10"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayMove {
    pub history: String,
    #[serde(rename = "W")]
    pub state: Vec<String>,
    #[serde(rename = "U")]
    pub open: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u8>,
}

fn replies(pos: &Position) -> String {
    pos.history.iter().map(|&(_, i)| if i { '1' } else { '0' }).collect()
}

/// The Seeker's move at every nonterminal position it can reach within
/// `horizon` rounds, in depth-first order with reply 1 first.
pub fn tabulate_seeker(
    named: &NamedSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    horizon: u32,
) -> Vec<PlayMove> {
    let mut out = Vec::new();
    let mut stack = vec![Position::start(&named.space, horizon)];
    while let Some(pos) = stack.pop() {
        if pos.rounds_left == 0 || goal.is_terminal(pos.state) {
            continue;
        }
        let u = seeker.choose(&pos);
        out.push(PlayMove {
            history: replies(&pos),
            state: named.names_of(pos.state),
            open: named.names_of(u),
            i: None,
        });
        stack.push(pos.advance(&named.space, u, false));
        stack.push(pos.advance(&named.space, u, true));
    }
    out
}

/// The Hider's reply to every least open set `↑T` of a trace `T`, at every
/// position reachable within `horizon` rounds.
pub fn tabulate_hider(
    named: &NamedSpace,
    goal: GameGoal,
    hider: &dyn HiderStrategy,
    horizon: u32,
) -> Vec<PlayMove> {
    let space = &named.space;
    let mut out = Vec::new();
    let mut stack = vec![Position::start(space, horizon)];
    while let Some(pos) = stack.pop() {
        if pos.rounds_left == 0 || goal.is_terminal(pos.state) {
            continue;
        }
        let mut next = Vec::new();
        for t in space.relative_opens(pos.state) {
            let u = space.up_closure(t);
            let i = hider.answer(&pos, u);
            out.push(PlayMove {
                history: replies(&pos),
                state: named.names_of(pos.state),
                open: named.names_of(u),
                i: Some(i as u8),
            });
            next.push(pos.advance(space, u, i));
        }
        stack.extend(next.into_iter().rev());
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum NamedStrategy {
    Seeker { value: u32, moves: Vec<NamedEntry> },
    Hider { horizon: u32, values: Vec<NamedValue> },
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedEntry {
    #[serde(rename = "W")]
    pub state: Vec<String>,
    #[serde(rename = "U")]
    pub open: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedValue {
    #[serde(rename = "W")]
    pub state: Vec<String>,
    pub value: u32,
}

fn name_seeker(named: &NamedSpace, s: &StateMapSeeker) -> NamedStrategy {
    NamedStrategy::Seeker {
        value: s.value,
        moves: s
            .moves()
            .iter()
            .map(|e| NamedEntry {
                state: named.names_of(e.state),
                open: named.names_of(e.open),
            })
            .collect(),
    }
}

fn name_hider(named: &NamedSpace, h: &ValueHider) -> NamedStrategy {
    NamedStrategy::Hider {
        horizon: h.horizon,
        values: h
            .values()
            .iter()
            .map(|e| NamedValue {
                state: named.names_of(e.state),
                value: e.value,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub horizon: u32,
    pub winner: Side,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutput {
    pub goal: NamedGoal,
    pub value: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decision: Option<Decision>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<NamedStrategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<NamedTranscript>,
}

#[derive(Debug, Clone, Default)]
pub struct SolveRequest {
    /// `None` for the point-separating game; `Some(None)` for `sm(X)`, which
    /// solves the first target of maximal value.
    pub target: Option<Option<PointSet>>,
    pub horizon: Option<u32>,
    pub emit_strategy: bool,
    pub emit_transcript: bool,
}

/// The first target containing point 0 (or the empty target) of maximal value.
pub fn hardest_target(named: &NamedSpace, config: &SolverConfig) -> Result<PointSet> {
    let space = &named.space;
    if space.len() > config.sm_max_points {
        bail!(
            "sm over all targets is capped at {} points, got {}",
            config.sm_max_points,
            space.len()
        );
    }
    let mut best = (0, PointSet::EMPTY);
    if space.is_empty() {
        return Ok(best.1);
    }
    let rest = space.points() - PointSet::singleton(0);
    for y in rest.subsets().map(|s| s.with(0)) {
        let v = Solver::with_config(space, GameGoal::membership(y), config)?.value()?;
        if v > best.0 {
            best = (v, y);
        }
    }
    Ok(best.1)
}

/// The optimal Seeker against the Hider that keeps the branch of larger
/// value, played until the Seeker wins.
fn optimal_play(named: &NamedSpace, goal: GameGoal, seeker: &StateMapSeeker) -> Result<GameTranscript> {
    let space = &named.space;
    let t = if seeker.value == 0 {
        GameTranscript::replay(space, goal, &[])
    } else {
        let hider = extract_hider(space, goal, seeker.value - 1)?;
        play_out(space, goal, seeker, &hider, seeker.value)
    };
    Ok(t)
}

pub fn solve(named: &NamedSpace, request: &SolveRequest, config: &SolverConfig) -> Result<SolveOutput> {
    let space = &named.space;
    let goal = match request.target {
        None => GameGoal::PointSeparating,
        Some(Some(y)) => GameGoal::membership(y),
        Some(None) => GameGoal::membership(hardest_target(named, config)?),
    };
    let value = Solver::with_config(space, goal, config)?.value()?;
    let mut out = SolveOutput {
        goal: name_goal(named, goal),
        value,
        decision: None,
        strategy: None,
        transcript: None,
    };
    match request.horizon {
        None => {
            let seeker = extract_seeker(space, goal)?;
            if request.emit_strategy {
                out.strategy = Some(name_seeker(named, &seeker));
            }
            if request.emit_transcript {
                out.transcript = Some(name_transcript(named, &optimal_play(named, goal, &seeker)?)?);
            }
        }
        Some(h) => {
            let winner = decide(space, goal, h)?;
            out.decision = Some(Decision {
                horizon: h,
                winner: winner.side(),
            });
            match winner {
                HorizonWinner::Seeker(seeker) => {
                    if request.emit_strategy {
                        out.strategy = Some(name_seeker(named, &seeker));
                    }
                    if request.emit_transcript {
                        let t = optimal_play(named, goal, &seeker)?;
                        out.transcript = Some(name_transcript(named, &t)?);
                    }
                }
                HorizonWinner::Hider(hider) => {
                    if request.emit_strategy {
                        out.strategy = Some(name_hider(named, &hider));
                    }
                    if request.emit_transcript {
                        let seeker = extract_seeker(space, goal)?;
                        let t = play_out(space, goal, &seeker, &hider, h);
                        out.transcript = Some(name_transcript(named, &t)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "two_move")]
    TwoMove,
    Seqsep,
    Sum,
    Product,
    Summem,
    Colelim,
    Greedy,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrategyOutput {
    pub which: String,
    /// The space the game is played on (the sum or product for composites).
    pub space: SpaceDoc,
    pub goal: NamedGoal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inapplicable: Option<String>,
    pub moves: Vec<PlayMove>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<NamedCheck>,
}

fn seeker_output(
    which: Which,
    named: &NamedSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    bound: u32,
) -> Result<StrategyOutput> {
    let check = verify_seeker(&named.space, goal, seeker, bound)?;
    Ok(StrategyOutput {
        which: which_name(which),
        space: named.to_doc(),
        goal: name_goal(named, goal),
        bound: Some(bound),
        inapplicable: None,
        moves: tabulate_seeker(named, goal, seeker, bound),
        report: Some(name_check(named, &check)?),
    })
}

fn which_name(which: Which) -> String {
    which
        .to_possible_value()
        .map(|v| v.get_name().replace('-', "_"))
        .unwrap_or_default()
}

fn single(parts: &[NamedSpace], which: Which) -> Result<&NamedSpace> {
    match parts {
        [one] => Ok(one),
        _ => bail!("{} takes exactly one input space", which_name(which)),
    }
}

/// Builds the chosen strategy, tabulates it and runs the exhaustive check at
/// its round bound. `target` names points of the game space (for sums, as
/// `i.name`). The greedy Hider is checked at `horizon`, by default one round
/// below the game value.
pub fn strategy_report(
    which: Which,
    parts: &[NamedSpace],
    target: Option<&str>,
    horizon: Option<u32>,
) -> Result<StrategyOutput> {
    let need_target = |named: &NamedSpace| -> Result<PointSet> {
        let list = target.with_context(|| format!("{} needs --target", which_name(which)))?;
        Ok(named.parse_set(list)?)
    };
    match which {
        Which::TwoMove => {
            let named = single(parts, which)?;
            let y = need_target(named)?;
            let goal = GameGoal::membership(y);
            match two_move_membership(&named.space, y) {
                TwoMove::Applicable(s) => seeker_output(which, named, goal, &s, s.round_bound()),
                TwoMove::Inapplicable { residue } => Ok(StrategyOutput {
                    which: which_name(which),
                    space: named.to_doc(),
                    goal: name_goal(named, goal),
                    bound: None,
                    inapplicable: Some(format!(
                        "Y minus its interior is {:?}, which is not closed",
                        named.names_of(residue)
                    )),
                    moves: Vec::new(),
                    report: None,
                }),
            }
        }
        Which::Seqsep => {
            let named = single(parts, which)?;
            let s = sequential_separating_seeker(&named.space, &binary_coding_family(&named.space))?;
            seeker_output(which, named, GameGoal::PointSeparating, &s, s.round_bound())
        }
        Which::Sum => {
            let (named, family) = named_sum(parts)?;
            let spaces: Vec<_> = parts.iter().map(|p| p.space.clone()).collect();
            let s = sum_seeker(&spaces, &family, &binary_coding(parts.len()))?;
            seeker_output(which, &named, GameGoal::PointSeparating, &s, s.round_bound())
        }
        Which::Product => {
            let [a, b] = parts else {
                bail!("product takes exactly two input spaces");
            };
            let named = named_product(a, b)?;
            let s = product_seeker(&a.space, &b.space)?;
            seeker_output(which, &named, GameGoal::PointSeparating, &s, s.round_bound())
        }
        Which::Summem | Which::Colelim => {
            let (named, family) = named_sum(parts)?;
            let spaces: Vec<_> = parts.iter().map(|p| p.space.clone()).collect();
            let y = need_target(&named)?;
            let goal = GameGoal::membership(y);
            if which == Which::Summem {
                let s = sum_membership_seeker(&spaces, &family, y)?;
                seeker_output(which, &named, goal, &s, s.round_bound())
            } else {
                let s = column_elimination_seeker(&spaces, &family, y)?;
                seeker_output(which, &named, goal, &s, s.round_bound())
            }
        }
        Which::Greedy => {
            let named = single(parts, which)?;
            let goal = match target {
                Some(list) => GameGoal::membership(named.parse_set(list)?),
                None => GameGoal::PointSeparating,
            };
            let value = Solver::new(&named.space, goal)?.value()?;
            let h = horizon.unwrap_or(value.saturating_sub(1));
            let hider = greedy_hider(goal);
            let check = verify_hider(&named.space, goal, &hider, h);
            Ok(StrategyOutput {
                which: which_name(which),
                space: named.to_doc(),
                goal: name_goal(named, goal),
                bound: Some(h),
                inapplicable: None,
                moves: tabulate_hider(named, goal, &hider, h),
                report: Some(name_check(named, &check)?),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use topogames::constructions::{chain, discrete, sierpinski};

    fn numbered(s: topogames::FiniteSpace) -> NamedSpace {
        NamedSpace::numbered(s)
    }

    #[test]
    fn solve_with_transcript() {
        let named = numbered(discrete(4));
        let req = SolveRequest {
            emit_strategy: true,
            emit_transcript: true,
            ..Default::default()
        };
        let out = solve(&named, &req, &SolverConfig::default()).unwrap();
        assert_eq!(out.value, 2);
        let t = out.transcript.unwrap();
        assert_eq!(t.rounds.len(), 2);
        assert_eq!(t.winner, Side::Seeker);
    }

    #[test]
    fn solve_decision_and_hardest_target() {
        let named = numbered(chain(3));
        let req = SolveRequest {
            target: Some(None),
            horizon: Some(1),
            emit_strategy: true,
            emit_transcript: true,
        };
        let out = solve(&named, &req, &SolverConfig::default()).unwrap();
        assert_eq!(out.value, 2);
        assert_eq!(out.decision.unwrap().winner, Side::Hider);
        assert!(matches!(out.strategy, Some(NamedStrategy::Hider { horizon: 1, .. })));
        assert_eq!(out.transcript.unwrap().winner, Side::Hider);
    }

    #[test]
    fn strategy_reports() {
        let c = numbered(chain(3));
        let out = strategy_report(Which::TwoMove, std::slice::from_ref(&c), Some("0,2"), None).unwrap();
        assert!(out.report.unwrap().passed);
        let out = strategy_report(Which::TwoMove, std::slice::from_ref(&c), Some("1"), None).unwrap();
        assert!(out.inapplicable.is_some());
        let s = numbered(sierpinski());
        let out = strategy_report(Which::Product, &[s.clone(), s.clone()], None, None).unwrap();
        assert_eq!(out.bound, Some(2));
        assert!(out.report.unwrap().passed);
        let d = numbered(discrete(2));
        let out = strategy_report(Which::Colelim, &[d.clone(), d], Some("0.0,1.1"), None).unwrap();
        assert!(out.report.unwrap().passed);
        let out = strategy_report(Which::Greedy, &[numbered(discrete(4))], None, None).unwrap();
        assert_eq!(out.bound, Some(1));
        assert!(out.report.unwrap().passed);
        assert!(strategy_report(Which::Product, &[c], None, None).is_err());
    }
}
