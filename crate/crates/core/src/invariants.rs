//! The T₀-pseudoweight `ψw₀` and corpus-wide checks of the relations between
//! `sm`, `ps`, `ψw₀` and the constructive strategies.
//!
//! Each check returns an [`InvariantReport`]. Corpus items are evaluated in
//! parallel and merged in corpus order, so reports are reproducible.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical_code;
use crate::constructions::{enumerate_t0, product, sum, ConstructionError, EnumMode};
use crate::format::{space_doc, SpaceDoc};
use crate::game::{
    decide, extract_hider, extract_seeker, ps, sm, sm_set, strategy_range, value, verify_hider,
    verify_seeker, GameError, GameGoal, GameTranscript, HorizonWinner, SeekerStrategy, Solver,
    SolverConfig, StrategyCheck,
};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;
use crate::strategies::{
    binary_coding, binary_coding_family, column_elimination_seeker, greedy_hider, product_seeker,
    sequential_separating_seeker, sum_membership_seeker, sum_seeker, two_move_membership,
    StrategyError, TwoMove,
};

pub use crate::game::log2ceil;

/// Largest summand size in the pair sweeps (sums up to 6 points, products up to 9).
pub const PAIR_MAX_N: usize = 3;
/// Largest space on which every target is run through the two-move strategy.
pub const TWO_MOVE_MAX_N: usize = 4;
/// Discrete spaces `1..=DISCRETE_MAX_M` get their exact triple checked.
pub const DISCRETE_MAX_M: usize = 16;

/// A minimum-size family of open sets separating every pair of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Psw0 {
    pub value: u32,
    pub witness: Vec<PointSet>,
}

pub fn psw0(space: &FiniteSpace) -> u32 {
    psw0_witness(space).value
}

/// Iterative deepening from `⌈log₂ n⌉` up to a greedy cover's size. The
/// search branches on the opens that split the first unsplit pair, in
/// lexicographic order, so the witness is the first minimum family found in
/// that order.
pub fn psw0_witness(space: &FiniteSpace) -> Psw0 {
    let n = space.len();
    let full = space.points();
    if n <= 1 {
        return Psw0 {
            value: 0,
            witness: Vec::new(),
        };
    }
    let mut opens: Vec<PointSet> = space
        .all_opens()
        .iter()
        .copied()
        .filter(|&u| !u.is_empty() && u != full)
        .collect();
    opens.sort_by(|a, b| a.lex_cmp(*b));

    let greedy = greedy_separating(full, &opens);
    let mut chosen = Vec::new();
    for k in log2ceil(n)..greedy.len() as u32 {
        if separate(&opens, vec![full], k, &mut chosen) {
            return Psw0 {
                value: k,
                witness: chosen,
            };
        }
    }
    Psw0 {
        value: greedy.len() as u32,
        witness: greedy,
    }
}

fn split(classes: &[PointSet], u: PointSet) -> Vec<PointSet> {
    classes
        .iter()
        .flat_map(|&c| [c & u, c - u])
        .filter(|c| c.len() > 1)
        .collect()
}

fn greedy_separating(full: PointSet, opens: &[PointSet]) -> Vec<PointSet> {
    let mut classes = vec![full];
    let mut family = Vec::new();
    while !classes.is_empty() {
        let gain = |u: PointSet| -> usize {
            classes
                .iter()
                .map(|&c| (c & u).len() * (c - u).len())
                .sum()
        };
        let mut best = None;
        let mut best_gain = 0;
        for &u in opens {
            let g = gain(u);
            if g > best_gain {
                best = Some(u);
                best_gain = g;
            }
        }
        let u = best.expect("a T0 space has an open set splitting any pair");
        family.push(u);
        classes = split(&classes, u);
    }
    family
}

/// Classes are the blocks of size >= 2 still to be split.
fn separate(opens: &[PointSet], classes: Vec<PointSet>, budget: u32, chosen: &mut Vec<PointSet>) -> bool {
    let Some(first) = classes.iter().min_by_key(|c| c.first()) else {
        return true;
    };
    // one open splits each class in two at most
    if classes.iter().any(|c| log2ceil(c.len()) > budget) {
        return false;
    }
    let mut members = first.iter();
    let (p, q) = (members.next().unwrap(), members.next().unwrap());
    for &u in opens {
        if u.contains(p) == u.contains(q) {
            continue;
        }
        chosen.push(u);
        if separate(opens, split(&classes, u), budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Whether some member contains exactly one point of each pair in `points`.
pub fn separates_pairs(points: PointSet, family: &[PointSet]) -> bool {
    let pts: Vec<usize> = points.iter().collect();
    pts.iter().enumerate().all(|(k, &p)| {
        pts[k + 1..]
            .iter()
            .all(|&q| family.iter().any(|u| u.contains(p) != u.contains(q)))
    })
}

/// A failed assertion, with enough data to replay it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub code: String,
    pub space: SpaceDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<PointSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transcript: Option<GameTranscript>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantReport {
    pub predicate: String,
    pub corpus: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Recorded (not asserted) tallies.
    pub observations: BTreeMap<String, usize>,
    /// Not serialized, so that reports of identical runs are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl InvariantReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Spaces a check runs over.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub label: String,
    pub spaces: Vec<FiniteSpace>,
}

impl Corpus {
    /// All T₀ spaces with `1 <= n <= max_n` points up to isomorphism, by size
    /// then canonical code.
    pub fn up_to_iso(max_n: usize) -> Result<Self, ConstructionError> {
        let mut spaces = Vec::new();
        for n in 1..=max_n {
            spaces.extend(enumerate_t0(n, EnumMode::UpToIso)?);
        }
        Ok(Corpus {
            label: format!("T0 spaces up to isomorphism, 1 <= n <= {max_n}"),
            spaces,
        })
    }

    pub fn new(label: impl Into<String>, spaces: Vec<FiniteSpace>) -> Self {
        Corpus {
            label: label.into(),
            spaces,
        }
    }

    fn restricted(&self, max_n: usize) -> Vec<&FiniteSpace> {
        self.spaces.iter().filter(|s| s.len() <= max_n).collect()
    }

    /// Ordered pairs of spaces with at most [`PAIR_MAX_N`] points.
    pub fn pairs(&self) -> Vec<(&FiniteSpace, &FiniteSpace)> {
        let small = self.restricted(PAIR_MAX_N);
        small
            .iter()
            .flat_map(|&a| small.iter().map(move |&b| (a, b)))
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    subject: Option<FiniteSpace>,
    passed: usize,
    failures: Vec<Counterexample>,
    observations: BTreeMap<String, usize>,
}

impl Tally {
    fn subject(&mut self, space: &FiniteSpace) {
        self.subject = Some(space.clone());
    }

    fn counterexample(
        &self,
        target: Option<PointSet>,
        transcript: Option<GameTranscript>,
        detail: String,
    ) -> Counterexample {
        let space = self.subject.clone().unwrap_or_else(FiniteSpace::empty);
        Counterexample {
            code: canonical_code(&space).to_hex(),
            space: space_doc(&space),
            target,
            transcript,
            detail,
        }
    }

    fn check(&mut self, ok: bool, target: Option<PointSet>, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            let c = self.counterexample(target, None, detail());
            self.failures.push(c);
        }
    }

    fn check_play(&mut self, check: &StrategyCheck, target: Option<PointSet>, what: &str) {
        if check.passed {
            self.passed += 1;
        } else {
            let detail = format!("{what} failed at horizon {}", check.horizon);
            let c = self.counterexample(target, check.counterexample.clone(), detail);
            self.failures.push(c);
        }
    }

    fn observe(&mut self, key: &str) {
        *self.observations.entry(key.to_string()).or_default() += 1;
    }
}

fn run<T: Sync>(
    predicate: &str,
    corpus: String,
    items: &[T],
    check: impl Fn(&T, &mut Tally) -> Result<(), String> + Sync,
) -> InvariantReport {
    let start = Instant::now();
    let tallies: Vec<Tally> = items
        .par_iter()
        .map(|item| {
            let mut tally = Tally::default();
            if let Err(e) = check(item, &mut tally) {
                let c = tally.counterexample(None, None, format!("error: {e}"));
                tally.failures.push(c);
            }
            tally
        })
        .collect();
    let mut report = InvariantReport {
        predicate: predicate.to_string(),
        corpus,
        passed: 0,
        failed: 0,
        counterexamples: Vec::new(),
        observations: BTreeMap::new(),
        wall_time: Duration::ZERO,
    };
    for t in tallies {
        report.passed += t.passed;
        report.failed += t.failures.len();
        report.counterexamples.extend(t.failures);
        for (k, v) in t.observations {
            *report.observations.entry(k).or_default() += v;
        }
    }
    report.wall_time = start.elapsed();
    report
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Per space: `sm ≤ ps ≤ ψw₀`, `ps ≥ ⌈log₂ n⌉`, `ψw₀ ≤ 2^ps − 1`, the
/// optimal strategy's range separates all pairs and has at most `2^ps − 1`
/// members, and the binary coding family gives
/// `ps ≤ Σ sm(A_α) ≤ ⌈log₂ n⌉ · sm`.
pub fn check_core_chain(corpus: &Corpus, config: &SolverConfig) -> InvariantReport {
    run("core_chain", corpus.label.clone(), &corpus.spaces, |x, t| {
        t.subject(x);
        let n = x.len();
        let ps = ps(x).map_err(err)?;
        let sm = sm(x, config).map_err(err)?;
        let w = psw0_witness(x);
        let log = log2ceil(n);
        let pow = (1u64 << ps) - 1;
        t.check(sm <= ps, None, || format!("sm {sm} > ps {ps}"));
        t.check(ps <= w.value, None, || format!("ps {ps} > psw0 {}", w.value));
        t.check(ps >= log, None, || format!("ps {ps} < log2ceil(n) {log}"));
        t.check(u64::from(w.value) <= pow, None, || {
            format!("psw0 {} > 2^ps - 1 = {pow}", w.value)
        });
        t.check(
            w.witness.len() == w.value as usize
                && w.witness.iter().all(|&u| x.is_open(u))
                && separates_pairs(x.points(), &w.witness),
            None,
            || format!("psw0 witness {:?} is not a separating family of opens", w.witness),
        );

        let goal = GameGoal::PointSeparating;
        let seeker = extract_seeker(x, goal).map_err(err)?;
        let range = strategy_range(x, goal, &seeker, ps);
        t.check(separates_pairs(x.points(), &range), None, || {
            format!("strategy range {range:?} does not separate all pairs")
        });
        t.check(range.len() as u64 <= pow, None, || {
            format!("strategy range has {} sets, more than 2^ps - 1 = {pow}", range.len())
        });

        let family = binary_coding_family(x);
        let cost = family
            .members
            .iter()
            .map(|&a| sm_set(x, a))
            .sum::<Result<u32, _>>()
            .map_err(err)?;
        t.check(ps <= cost && cost <= log * sm, None, || {
            format!("binary coding: ps {ps}, sum of sm {cost}, log2ceil(n) * sm {}", log * sm)
        });

        t.observe(if ps == sm.max(log) {
            "ps_equals_max_sm_log2"
        } else {
            "ps_exceeds_max_sm_log2"
        });
        Ok(())
    })
}

/// Per ordered pair `(a, b)`: `ps(a ⊕ b) ≤ 1 + max ps`, `sm(a ⊕ b) ≤ max sm + 1`,
/// `ps(a × b) ≤ ps a + ps b`, and `sm(a ⊕ b) ≤ max(|a|, |b|)` when both are
/// discrete. Whether `sm(a ⊕ b) = max sm` is recorded.
pub fn check_composition_theorems(corpus: &Corpus, config: &SolverConfig) -> InvariantReport {
    let pairs = corpus.pairs();
    let label = format!("ordered pairs from {} with n <= {PAIR_MAX_N}", corpus.label);
    run("composition", label, &pairs, |&(a, b), t| {
        let (psa, psb) = (ps(a).map_err(err)?, ps(b).map_err(err)?);
        let (sma, smb) = (sm(a, config).map_err(err)?, sm(b, config).map_err(err)?);

        let s = sum(&[a.clone(), b.clone()]).map_err(err)?;
        t.subject(&s.space);
        let ps_sum = ps(&s.space).map_err(err)?;
        let sm_sum = sm(&s.space, config).map_err(err)?;
        let bound = log2ceil(2) + psa.max(psb);
        t.check(ps_sum <= bound, None, || format!("ps of sum {ps_sum} > {bound}"));
        let bound = sma.max(smb) + 1;
        t.check(sm_sum <= bound, None, || format!("sm of sum {sm_sum} > {bound}"));
        if a.is_discrete() && b.is_discrete() {
            let bound = a.len().max(b.len()) as u32;
            t.check(sm_sum <= bound, None, || {
                format!("sm of discrete sum {sm_sum} > largest part {bound}")
            });
        }
        t.observe(if sm_sum == sma.max(smb) {
            "sum_sm_equals_max"
        } else {
            "sum_sm_exceeds_max"
        });

        let p = product(a, b).map_err(err)?;
        t.subject(&p);
        let ps_prod = ps(&p).map_err(err)?;
        t.check(ps_prod <= psa + psb, None, || {
            format!("ps of product {ps_prod} > {psa} + {psb}")
        });
        t.observe(if ps_prod == psa + psb {
            "product_ps_additive"
        } else {
            "product_ps_subadditive"
        });
        Ok(())
    })
}

enum SpecialItem<'a> {
    Space(&'a FiniteSpace),
    Discrete(usize),
}

/// Door spaces have `sm ≤ 1`; `discrete(m)` has `ps = ψw₀ = ⌈log₂ m⌉` and
/// `sm = 1` for `m ≥ 2` (0 below); `Y ∖ int(Y)` closed implies
/// `sm(Y, X) ≤ 2` (on spaces with at most [`TWO_MOVE_MAX_N`] points); no
/// space is resolvable and every nonempty space has an isolated point.
pub fn check_special_classes(corpus: &Corpus, config: &SolverConfig) -> InvariantReport {
    let mut items: Vec<SpecialItem> = corpus.spaces.iter().map(SpecialItem::Space).collect();
    items.extend((1..=DISCRETE_MAX_M).map(SpecialItem::Discrete));
    let discrete_config = SolverConfig {
        sm_max_points: config.sm_max_points.max(DISCRETE_MAX_M),
        ..*config
    };
    let label = format!("{} plus discrete(1..={DISCRETE_MAX_M})", corpus.label);
    run("special_classes", label, &items, |item, t| match *item {
        SpecialItem::Space(x) => {
            t.subject(x);
            t.check(!x.is_resolvable(), None, || "space is resolvable".into());
            t.check(x.is_empty() || !x.isolated_points().is_empty(), None, || {
                "no isolated point".into()
            });
            if x.is_door() {
                t.observe("door");
                let s = sm(x, config).map_err(err)?;
                t.check(s <= 1, None, || format!("door space with sm {s}"));
            }
            if x.len() <= TWO_MOVE_MAX_N {
                for y in x.points().subsets() {
                    if let TwoMove::Applicable(_) = two_move_membership(x, y) {
                        t.observe("two_move_applicable");
                        let v = sm_set(x, y).map_err(err)?;
                        t.check(v <= 2, Some(y), || format!("closed residue but sm {v}"));
                    } else {
                        t.observe("two_move_inapplicable");
                    }
                }
            }
            Ok(())
        }
        SpecialItem::Discrete(m) => {
            let d = crate::constructions::discrete(m);
            t.subject(&d);
            let want = (log2ceil(m), u32::from(m >= 2), log2ceil(m));
            let got = (
                ps(&d).map_err(err)?,
                sm(&d, &discrete_config).map_err(err)?,
                psw0(&d),
            );
            t.check(got == want, None, || {
                format!("discrete({m}): (ps, sm, psw0) = {got:?}, expected {want:?}")
            });
            Ok(())
        }
    })
}

enum StrategyItem<'a> {
    Single(&'a FiniteSpace),
    Pair(&'a FiniteSpace, &'a FiniteSpace),
}

fn verify(
    t: &mut Tally,
    space: &FiniteSpace,
    goal: GameGoal,
    seeker: &dyn SeekerStrategy,
    bound: u32,
    what: &str,
) -> Result<(), String> {
    t.subject(space);
    let target = match goal {
        GameGoal::SetMembership { target } => Some(target),
        GameGoal::PointSeparating => None,
    };
    let check = verify_seeker(space, goal, seeker, bound).map_err(err)?;
    t.check_play(&check, target, what);
    t.observe(&format!("verified_{what}"));
    Ok(())
}

/// Every constructive strategy passes the exhaustive adversary at its stated
/// round bound: the two-move strategy on all applicable `(X, Y)` with at most
/// [`TWO_MOVE_MAX_N`] points, and the separating-family, sum, product,
/// sum-membership and column-elimination strategies over the pair sweep.
/// The greedy Hider must lose at the game value; whether it survives one
/// round less is recorded.
pub fn check_strategies(corpus: &Corpus) -> InvariantReport {
    let mut items: Vec<StrategyItem> = corpus
        .restricted(TWO_MOVE_MAX_N)
        .into_iter()
        .map(StrategyItem::Single)
        .collect();
    items.extend(corpus.pairs().into_iter().map(|(a, b)| StrategyItem::Pair(a, b)));
    let label = format!(
        "{}; two-move on n <= {TWO_MOVE_MAX_N}, composites of pairs with n <= {PAIR_MAX_N}",
        corpus.label
    );
    run("strategies", label, &items, |item, t| match *item {
        StrategyItem::Single(x) => {
            for y in x.points().subsets() {
                if let TwoMove::Applicable(s) = two_move_membership(x, y) {
                    verify(t, x, GameGoal::membership(y), &s, s.round_bound(), "two_move")?;
                }
            }
            Ok(())
        }
        StrategyItem::Pair(a, b) => {
            let parts = [a.clone(), b.clone()];
            let s = sum(&parts).map_err(err)?;
            let p = product(a, b).map_err(err)?;
            let ps_goal = GameGoal::PointSeparating;

            let seeker = sum_seeker(&parts, &s.family, &binary_coding(2)).map_err(err)?;
            verify(t, &s.space, ps_goal, &seeker, seeker.round_bound(), "sum")?;

            let seeker = product_seeker(a, b).map_err(err)?;
            verify(t, &p, ps_goal, &seeker, seeker.round_bound(), "product")?;

            for space in [&s.space, &p] {
                let seeker = sequential_separating_seeker(space, &binary_coding_family(space))
                    .map_err(err)?;
                verify(t, space, ps_goal, &seeker, seeker.round_bound(), "seqsep")?;
            }

            let all_discrete = a.is_discrete() && b.is_discrete();
            for y in s.space.points().subsets() {
                let goal = GameGoal::membership(y);
                let seeker = sum_membership_seeker(&parts, &s.family, y).map_err(err)?;
                verify(t, &s.space, goal, &seeker, seeker.round_bound(), "summem")?;
                match column_elimination_seeker(&parts, &s.family, y) {
                    Ok(seeker) => {
                        verify(t, &s.space, goal, &seeker, seeker.round_bound(), "colelim")?
                    }
                    Err(StrategyError::NotT1(_)) => {
                        t.subject(&s.space);
                        t.check(!all_discrete, Some(y), || "colelim rejected discrete parts".into());
                    }
                    Err(e) => return Err(err(e)),
                }
            }

            t.subject(&s.space);
            let v = ps(&s.space).map_err(err)?;
            let hider = greedy_hider(ps_goal);
            let at_value = verify_hider(&s.space, ps_goal, &hider, v);
            t.check(!at_value.passed, None, || {
                format!("greedy hider survived {v} rounds, the game value")
            });
            if v > 0 {
                let below = verify_hider(&s.space, ps_goal, &hider, v - 1);
                t.observe(if below.passed {
                    "greedy_hider_survives_value_minus_one"
                } else {
                    "greedy_hider_falls_short"
                });
            }
            Ok(())
        }
    })
}

/// For seeded random `(X, Y, n)` with `n ≤ ψw₀(X)`: exactly one of the
/// Seeker and Hider extractions succeeds for the horizon-`n` membership game,
/// the successful strategy passes the exhaustive adversary, and a Seeker win
/// persists at horizon `n + 1`.
pub fn check_determinacy(corpus: &Corpus, seed: u64, samples: usize) -> InvariantReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(usize, PointSet, u32)> = (0..samples)
        .filter(|_| !corpus.spaces.is_empty())
        .map(|_| {
            let k = rng.gen_range(0..corpus.spaces.len());
            let x = &corpus.spaces[k];
            let y = PointSet::from_bits(rng.gen::<u32>()) & x.points();
            let h = rng.gen_range(0..=psw0(x));
            (k, y, h)
        })
        .collect();
    let label = format!("{samples} draws from {} (seed {seed})", corpus.label);
    run("determinacy", label, &draws, |&(k, y, h), t| {
        let x = &corpus.spaces[k];
        t.subject(x);
        let goal = GameGoal::membership(y);
        let v = value(x, goal).map_err(err)?;
        let seeker_wins = v <= h;
        let hider = match extract_hider(x, goal, h) {
            Ok(hider) => Some(hider),
            Err(GameError::HiderCannotWin { .. }) => None,
            Err(e) => return Err(err(e)),
        };
        t.check(seeker_wins != hider.is_some(), Some(y), || {
            format!("value {v}, horizon {h}: both or neither side extracted")
        });
        let decided = decide(x, goal, h).map_err(err)?;
        match (&decided, hider) {
            (HorizonWinner::Seeker(s), _) => {
                t.observe("seeker_wins");
                t.check(seeker_wins, Some(y), || format!("decide says Seeker at {h} < {v}"));
                t.check_play(&verify_seeker(x, goal, s, h).map_err(err)?, Some(y), "seeker");
                t.check_play(
                    &verify_seeker(x, goal, s, h + 1).map_err(err)?,
                    Some(y),
                    "seeker at horizon + 1",
                );
            }
            (HorizonWinner::Hider(d), Some(hider)) => {
                t.observe("hider_wins");
                t.check(*d == hider, Some(y), || "decide and extract_hider disagree".into());
                // a surviving play ends nonterminal, so a committed point
                // consistent with every reply exists
                t.check_play(&verify_hider(x, goal, &hider, h), Some(y), "hider");
            }
            (HorizonWinner::Hider(_), None) => {
                t.check(false, Some(y), || "decide says Hider but extraction failed".into());
            }
        }
        Ok(())
    })
}

/// For seeded random `W' ⊆ W` under a random goal: terminal states stay
/// terminal on shrinking, `val(W') ≤ val(W)`, and membership values are
/// symmetric in the target.
pub fn check_monotonicity(corpus: &Corpus, seed: u64, samples: usize) -> InvariantReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<(usize, GameGoal, PointSet, PointSet)> = (0..samples)
        .filter(|_| !corpus.spaces.is_empty())
        .map(|_| {
            let k = rng.gen_range(0..corpus.spaces.len());
            let full = corpus.spaces[k].points();
            let goal = if rng.gen_bool(0.5) {
                GameGoal::PointSeparating
            } else {
                GameGoal::membership(PointSet::from_bits(rng.gen::<u32>()) & full)
            };
            let w = PointSet::from_bits(rng.gen::<u32>()) & full;
            let w2 = PointSet::from_bits(rng.gen::<u32>()) & w;
            (k, goal, w, w2)
        })
        .collect();
    let label = format!("{samples} draws from {} (seed {seed})", corpus.label);
    run("monotonicity", label, &draws, |&(k, goal, w, w2), t| {
        let x = &corpus.spaces[k];
        t.subject(x);
        let target = match goal {
            GameGoal::SetMembership { target } => Some(target),
            GameGoal::PointSeparating => None,
        };
        t.check(!goal.is_terminal(w) || goal.is_terminal(w2), target, || {
            format!("terminal {w} has nonterminal subset {w2}")
        });
        let mut solver = Solver::new(x, goal).map_err(err)?;
        let (v, v2) = (solver.value_at(w).map_err(err)?, solver.value_at(w2).map_err(err)?);
        t.check(v2 <= v, target, || format!("val({w2}) = {v2} > val({w}) = {v}"));
        if let Some(y) = target {
            let mut mirror = Solver::new(x, GameGoal::membership(x.points() - y)).map_err(err)?;
            let m = mirror.value_at(w).map_err(err)?;
            t.check(m == v, target, || format!("complement target gives {m}, not {v}"));
        }
        Ok(())
    })
}
