mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use support::{brute_isomorphic, naive_value};
use topogames::canon::{canonical_code, canonical_relabel, relabel};
use topogames::game::{
    extract_hider, extract_seeker, log2ceil, play_out, ps, sm, trace, value, verify_hider,
    verify_seeker, GameGoal, GameTranscript, Solver, SolverConfig,
};
use topogames::invariants::psw0;
use topogames::{FiniteSpace, PointSet};

/// Random orders on up to `max_n` points: edges only go from lower to higher
/// index, so every relation is acyclic, and a random relabeling hides that.
fn space(max_n: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max_n).prop_flat_map(|n| {
        let edges = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(n), edges, perm).prop_map(|(n, edges, perm)| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for x in 0..n {
                for y in x + 1..n {
                    if edges[k] {
                        pairs.push((perm[x], perm[y]));
                    }
                    k += 1;
                }
            }
            FiniteSpace::from_order(n, &pairs).unwrap()
        })
    })
}

fn with_subset(max_n: usize) -> impl Strategy<Value = (FiniteSpace, PointSet)> {
    space(max_n).prop_flat_map(|x| {
        let full = x.points().bits();
        (Just(x), any::<u32>().prop_map(move |b| PointSet::from_bits(b & full)))
    })
}

fn goal_on(x: &FiniteSpace, bits: Option<u32>) -> GameGoal {
    match bits {
        None => GameGoal::PointSeparating,
        Some(b) => GameGoal::membership(PointSet::from_bits(b) & x.points()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interior_and_closure_laws((x, s) in with_subset(7)) {
        let int = x.interior(s);
        let cl = x.closure(s);
        prop_assert!(int.is_subset(s) && s.is_subset(cl));
        prop_assert_eq!(x.interior(int), int);
        prop_assert_eq!(x.closure(cl), cl);
        prop_assert!(x.is_open(int) && x.is_closed(cl));
        prop_assert_eq!(x.is_open(s), int == s);
        prop_assert_eq!(x.is_closed(s), cl == s);
        prop_assert_eq!(x.points() - int, x.closure(x.points() - s));
        prop_assert_eq!(x.is_open(s), x.all_opens().contains(&s));
    }

    #[test]
    fn opens_round_trip(x in space(6)) {
        let back = FiniteSpace::from_opens(x.len(), x.all_opens()).unwrap();
        prop_assert_eq!(&back, &x);
        let opens = x.all_opens();
        for &a in opens {
            for &b in opens {
                prop_assert!(x.is_open(a | b) && x.is_open(a & b));
            }
        }
        prop_assert!(!x.isolated_points().is_empty());
        prop_assert!(!x.is_resolvable());
    }

    #[test]
    fn canonical_code_is_an_isomorphism_invariant(
        x in space(7),
        seed in any::<u64>(),
    ) {
        let n = x.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let y = relabel(&x, &perm);
        prop_assert_eq!(canonical_code(&x), canonical_code(&y));
        prop_assert_eq!(canonical_relabel(&x), canonical_relabel(&y));
    }

    #[test]
    fn equal_codes_only_for_isomorphic_spaces(a in space(5), b in space(5)) {
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), brute_isomorphic(&a, &b));
    }

    #[test]
    fn value_matches_naive_minimax(x in space(4), bits in proptest::option::of(any::<u32>())) {
        let goal = goal_on(&x, bits);
        prop_assert_eq!(value(&x, goal).unwrap(), naive_value(&x, goal));
    }

    #[test]
    fn absorption_and_monotonicity(
        (x, w) in with_subset(7),
        sub in any::<u32>(),
        bits in proptest::option::of(any::<u32>()),
    ) {
        let goal = goal_on(&x, bits);
        let w2 = PointSet::from_bits(sub) & w;
        prop_assert!(!goal.is_terminal(w) || goal.is_terminal(w2));
        let mut solver = Solver::new(&x, goal).unwrap();
        prop_assert!(solver.value_at(w2).unwrap() <= solver.value_at(w).unwrap());
    }

    #[test]
    fn membership_symmetric_in_target((x, y) in with_subset(7)) {
        let a = value(&x, GameGoal::membership(y)).unwrap();
        let b = value(&x, GameGoal::membership(x.points() - y)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn chain_of_numbers(x in space(6)) {
        let p = ps(&x).unwrap();
        let s = sm(&x, &SolverConfig::default()).unwrap();
        let w = psw0(&x);
        prop_assert!(s <= p && p <= w);
        prop_assert!(p >= log2ceil(x.len()));
        prop_assert!(u64::from(w) < 1u64 << p || x.len() <= 1);
    }

    #[test]
    fn extracted_strategies_are_tight(x in space(6), bits in proptest::option::of(any::<u32>())) {
        let goal = goal_on(&x, bits);
        let seeker = extract_seeker(&x, goal).unwrap();
        let v = seeker.value;
        prop_assert!(verify_seeker(&x, goal, &seeker, v).unwrap().passed);
        prop_assert!(verify_seeker(&x, goal, &seeker, v + 1).unwrap().passed);
        for &entry in seeker.moves() {
            prop_assert!(x.is_open(entry.open));
        }
        if v > 0 {
            prop_assert!(!verify_seeker(&x, goal, &seeker, v - 1).unwrap().passed);
            let hider = extract_hider(&x, goal, v - 1).unwrap();
            prop_assert!(verify_hider(&x, goal, &hider, v - 1).passed);
            prop_assert!(!verify_hider(&x, goal, &hider, v).passed);
            let t = play_out(&x, goal, &seeker, &hider, v);
            prop_assert_eq!(t.rounds.len() as u32, v);
            prop_assert!(t.validate(&x).is_ok());
        } else {
            prop_assert!(extract_hider(&x, goal, 0).is_err());
        }
    }

    #[test]
    fn transcripts_replay(x in space(6), moves in proptest::collection::vec((any::<u32>(), any::<bool>()), 0..5)) {
        let opens = x.all_opens();
        let moves: Vec<(PointSet, bool)> = moves
            .into_iter()
            .map(|(k, i)| (opens[k as usize % opens.len()], i))
            .collect();
        let t = GameTranscript::replay(&x, GameGoal::PointSeparating, &moves);
        prop_assert!(t.validate(&x).is_ok());
        let us: Vec<PointSet> = moves.iter().map(|m| m.0).collect();
        let is: Vec<bool> = moves.iter().map(|m| m.1).collect();
        prop_assert_eq!(trace(&x, &us, &is).unwrap(), t.outcome);
        let json = serde_json::to_string(&t).unwrap();
        let back: GameTranscript = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn point_set_matches_a_set_model(a in any::<u32>(), b in any::<u32>(), n in 0usize..=20) {
        let mask = (1u32 << n) - 1;
        let (a, b) = (PointSet::from_bits(a & mask), PointSet::from_bits(b & mask));
        let ma: BTreeSet<usize> = a.iter().collect();
        let mb: BTreeSet<usize> = b.iter().collect();
        prop_assert_eq!((a | b).iter().collect::<BTreeSet<_>>(), &ma | &mb);
        prop_assert_eq!((a & b).iter().collect::<BTreeSet<_>>(), &ma & &mb);
        prop_assert_eq!((a - b).iter().collect::<BTreeSet<_>>(), &ma - &mb);
        prop_assert_eq!(a.len(), ma.len());
        prop_assert_eq!(a.is_subset(b), ma.is_subset(&mb));
        prop_assert_eq!(a.complement(n).len(), n - ma.len());
        prop_assert_eq!(a.lex_cmp(b), ma.iter().cmp(mb.iter()));
    }
}
