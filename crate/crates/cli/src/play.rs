//! Terminal play against the engine.

use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use clap::ValueEnum;
use topogames::format::NamedSpace;
use topogames::game::{extract_seeker, GameGoal, GameTranscript, Position, SeekerStrategy, Solver};
use topogames::PointSet;

/// The side the human plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HumanSide {
    Seeker,
    Hider,
}

/// Traces listed per round; larger states show a count only.
const TRACE_LISTING: usize = 32;

fn show(named: &NamedSpace, s: PointSet) -> String {
    format!("{{{}}}", named.names_of(s).join(","))
}

enum Line {
    Text(String),
    Quit,
}

fn prompt<R: BufRead, W: Write>(input: &mut R, out: &mut W, text: &str) -> Result<Line> {
    write!(out, "{text}")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        bail!("input ended before the game did");
    }
    let line = line.trim();
    Ok(if line == "q" || line == "quit" {
        Line::Quit
    } else {
        Line::Text(line.to_string())
    })
}

/// Runs one game and returns its transcript. A human Hider faces the optimal
/// Seeker, so the game ends within the game value. A human Seeker faces the
/// Hider that keeps the branch of larger value (then the larger set); the
/// game ends when the state is terminal or after `horizon` rounds (default:
/// the number of points). Entering `q` ends the session early.
pub fn play_session<R: BufRead, W: Write>(
    named: &NamedSpace,
    goal: GameGoal,
    side: HumanSide,
    horizon: Option<u32>,
    mut input: R,
    mut out: W,
) -> Result<GameTranscript> {
    let space = &named.space;
    let mut solver = Solver::new(space, goal)?;
    let value = solver.value()?;
    let horizon = match side {
        HumanSide::Hider => value,
        HumanSide::Seeker => horizon.unwrap_or(space.len() as u32),
    };
    let seeker = match side {
        HumanSide::Hider => Some(extract_seeker(space, goal)?),
        HumanSide::Seeker => None,
    };
    writeln!(out, "game value: {value} rounds; playing at most {horizon}")?;
    let mut pos = Position::start(space, horizon);
    while pos.rounds_left > 0 && !goal.is_terminal(pos.state) {
        writeln!(out, "round {}: W = {}", pos.round() + 1, show(named, pos.state))?;
        let (u, i) = match &seeker {
            Some(seeker) => {
                let u = seeker.choose(&pos);
                writeln!(out, "Seeker asks U = {}", show(named, u))?;
                let i = loop {
                    match prompt(&mut input, &mut out, "reply 1 (in U) or 0 (not in U): ")? {
                        Line::Quit => return Ok(GameTranscript::replay(space, goal, &pos.history)),
                        Line::Text(t) if t == "1" => break true,
                        Line::Text(t) if t == "0" => break false,
                        Line::Text(_) => writeln!(out, "please answer 0 or 1")?,
                    }
                };
                (u, i)
            }
            None => {
                let traces = space.relative_opens(pos.state);
                if traces.len() <= TRACE_LISTING {
                    let listed: Vec<String> = traces.iter().map(|&t| show(named, t)).collect();
                    writeln!(out, "distinct traces on W: {}", listed.join(" "))?;
                } else {
                    writeln!(out, "{} distinct traces on W", traces.len())?;
                }
                let u = loop {
                    let text = match prompt(&mut input, &mut out, "open set U (names, comma-separated): ")? {
                        Line::Quit => return Ok(GameTranscript::replay(space, goal, &pos.history)),
                        Line::Text(t) => t,
                    };
                    match named.parse_set(&text) {
                        Ok(u) if space.is_open(u) => break u,
                        Ok(u) => writeln!(
                            out,
                            "{} is not open (it must contain everything above its points)",
                            show(named, u)
                        )?,
                        Err(e) => writeln!(out, "{e}")?,
                    }
                };
                let inside = pos.state & u;
                let outside = pos.state - u;
                let i = (solver.value_at(inside)?, inside.len())
                    >= (solver.value_at(outside)?, outside.len());
                writeln!(out, "Hider replies {}", i as u8)?;
                (u, i)
            }
        };
        pos = pos.advance(space, u, i);
    }
    let t = GameTranscript::replay(space, goal, &pos.history);
    t.validate(space)?;
    writeln!(
        out,
        "final W = {}: {:?} wins after {} rounds",
        show(named, t.outcome),
        t.winner,
        t.rounds.len()
    )?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use topogames::constructions::{discrete, sierpinski};
    use topogames::game::Side;

    fn run(named: &NamedSpace, side: HumanSide, input: &str) -> (GameTranscript, String) {
        let mut out = Vec::new();
        let t = play_session(named, GameGoal::PointSeparating, side, None, input.as_bytes(), &mut out)
            .unwrap();
        (t, String::from_utf8(out).unwrap())
    }

    #[test]
    fn human_hider_loses_in_value_rounds() {
        let named = NamedSpace::numbered(discrete(4));
        for replies in ["1\n1\n", "0\n1\n", "x\n0\n0\n"] {
            let (t, _) = run(&named, HumanSide::Hider, replies);
            assert_eq!(t.rounds.len(), 2);
            assert_eq!(t.winner, Side::Seeker);
        }
    }

    #[test]
    fn human_seeker_and_reprompt() {
        let named = NamedSpace::numbered(sierpinski());
        let (t, _) = run(&named, HumanSide::Seeker, "1\n");
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.winner, Side::Seeker);
        let (t, text) = run(&named, HumanSide::Seeker, "0\n1\n");
        assert!(text.contains("is not open"));
        assert_eq!(t.rounds.len(), 1);
    }

    #[test]
    fn quitting_and_running_out() {
        let named = NamedSpace::numbered(discrete(4));
        let (t, _) = run(&named, HumanSide::Seeker, "q\n");
        assert!(t.rounds.is_empty());
        let mut out = Vec::new();
        let err = play_session(&named, GameGoal::PointSeparating, HumanSide::Seeker, None, &b""[..], &mut out);
        assert!(err.is_err());
    }
}
