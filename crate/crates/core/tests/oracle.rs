mod support;

use support::*;
use topogames::canon::canonical_code;
use topogames::constructions::{
    chain, discrete, enumerate_t0, labeled_posets, posets_up_to_iso, sierpinski, EnumMode,
};
use topogames::game::{
    extract_seeker, ps, sm, sm_set, strategy_range, value, verify_seeker, GameGoal, SolverConfig,
};
use topogames::invariants::{psw0, psw0_witness, separates_pairs};
use topogames::{FiniteSpace, PointSet};

fn labeled_upto(max_n: usize) -> Vec<FiniteSpace> {
    (0..=max_n).flat_map(labeled_posets).collect()
}

#[test]
fn values_match_naive_minimax_on_labeled_spaces() {
    for x in labeled_upto(3) {
        assert_eq!(ps(&x).unwrap(), naive_value(&x, GameGoal::PointSeparating), "{x:?}");
        for y in x.points().subsets() {
            let goal = GameGoal::membership(y);
            assert_eq!(value(&x, goal).unwrap(), naive_value(&x, goal), "{x:?} {y}");
        }
    }
}

#[test]
fn values_match_naive_minimax_on_four_points() {
    for x in enumerate_t0(4, EnumMode::UpToIso).unwrap() {
        assert_eq!(ps(&x).unwrap(), naive_value(&x, GameGoal::PointSeparating), "{x:?}");
        assert_eq!(sm(&x, &SolverConfig::default()).unwrap(), naive_sm(&x), "{x:?}");
    }
}

#[test]
fn opens_match_definition() {
    for x in labeled_upto(4) {
        assert_eq!(x.all_opens(), brute_opens(&x).as_slice(), "{x:?}");
        for w in x.points().subsets() {
            let mut traces: Vec<PointSet> = brute_opens(&x).iter().map(|&u| u & w).collect();
            traces.sort();
            traces.dedup();
            let mut got = x.relative_opens(w);
            got.sort();
            assert_eq!(got, traces, "{x:?} {w}");
        }
    }
}

#[test]
fn psw0_matches_exhaustive_family_search() {
    for x in labeled_upto(3).into_iter().chain(enumerate_t0(4, EnumMode::UpToIso).unwrap()) {
        let w = psw0_witness(&x);
        assert_eq!(w.value, brute_psw0(&x), "{x:?}");
        assert!(separates_pairs(x.points(), &w.witness));
        assert!(w.witness.iter().all(|&u| x.is_open(u)));
    }
}

#[test]
fn labeled_counts_match_topology_axioms() {
    for n in 0..=4 {
        assert_eq!(labeled_posets(n).count(), brute_t0_topology_count(n), "n = {n}");
    }
    assert_eq!(labeled_posets(3).count(), 19);
    let mut mine: Vec<Vec<(usize, usize)>> = labeled_posets(4).map(|s| s.order_pairs()).collect();
    let mut theirs: Vec<Vec<(usize, usize)>> = brute_posets(4).iter().map(|s| s.order_pairs()).collect();
    mine.sort();
    theirs.sort();
    assert_eq!(mine, theirs);
}

#[test]
fn iso_classes_match_pairwise_isomorphism() {
    for n in 0..=5 {
        let classes = brute_classes(labeled_posets(n));
        let reps: Vec<FiniteSpace> = posets_up_to_iso(n).map(|(s, _)| s).collect();
        assert_eq!(reps.len(), classes.len(), "n = {n}");
        for c in &classes {
            assert_eq!(reps.iter().filter(|r| brute_isomorphic(r, c)).count(), 1);
        }
    }
}

#[test]
fn canonical_code_agrees_with_isomorphism() {
    let spaces = labeled_upto(4);
    for a in spaces.iter().step_by(3) {
        for b in spaces.iter().step_by(7) {
            assert_eq!(
                canonical_code(a) == canonical_code(b),
                brute_isomorphic(a, b),
                "{a:?} {b:?}"
            );
        }
    }
}

#[test]
fn engine_examples() {
    assert_eq!(ps(&sierpinski()).unwrap(), 1);
    assert_eq!(ps(&discrete(4)).unwrap(), 2);
    assert_eq!(sm_set(&chain(3), PointSet::from([0, 2])).unwrap(), 2);
    let cfg = SolverConfig::default();
    assert_eq!(sm(&discrete(4), &cfg).unwrap(), 1);
    assert_eq!(sm(&sierpinski(), &cfg).unwrap(), 1);
    assert_eq!(sm(&chain(3), &cfg).unwrap(), 2);
    assert_eq!(psw0(&discrete(4)), 2);

    let c = chain(3);
    let s = extract_seeker(&c, GameGoal::PointSeparating).unwrap();
    let range = strategy_range(&c, GameGoal::PointSeparating, &s, s.value);
    assert!(separates_pairs(c.points(), &range));
    assert!(verify_seeker(&c, GameGoal::PointSeparating, &s, 2).unwrap().passed);
    assert!(!verify_seeker(&c, GameGoal::PointSeparating, &s, 1).unwrap().passed);
}
