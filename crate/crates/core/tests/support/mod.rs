//! Brute-force reference implementations. Nothing here uses the library's
//! open-set enumeration, solver, canonical codes or ψw₀ search.

#![allow(dead_code)]

use topogames::game::GameGoal;
use topogames::{FiniteSpace, PointSet};

/// Opens by definition: subsets closed upward under the order.
pub fn brute_opens(space: &FiniteSpace) -> Vec<PointSet> {
    let n = space.len();
    (0u32..1 << n)
        .map(PointSet::from_bits)
        .filter(|u| {
            u.iter()
                .all(|x| (0..n).all(|y| !space.leq(x, y) || u.contains(y)))
        })
        .collect()
}

fn terminal(goal: GameGoal, w: PointSet) -> bool {
    match goal {
        GameGoal::PointSeparating => w.len() <= 1,
        GameGoal::SetMembership { target } => {
            (w & target) == w || (w & target).is_empty()
        }
    }
}

/// The Seeker wins from `w` within `k` rounds: some open set leaves a
/// position won within `k - 1` rounds whatever the reply. Unmemoized.
pub fn naive_wins(opens: &[PointSet], goal: GameGoal, w: PointSet, k: u32) -> bool {
    if terminal(goal, w) {
        return true;
    }
    k > 0
        && opens.iter().any(|&u| {
            naive_wins(opens, goal, w & u, k - 1) && naive_wins(opens, goal, w - u, k - 1)
        })
}

/// Least horizon won by the Seeker, by plain minimax at each horizon.
pub fn naive_value(space: &FiniteSpace, goal: GameGoal) -> u32 {
    let opens = brute_opens(space);
    (0..)
        .find(|&k| naive_wins(&opens, goal, space.points(), k))
        .unwrap()
}

pub fn naive_sm(space: &FiniteSpace) -> u32 {
    (0u32..1 << space.len())
        .map(|y| naive_value(space, GameGoal::membership(PointSet::from_bits(y))))
        .max()
        .unwrap_or(0)
}

/// Least number of opens separating every pair, over all families.
pub fn brute_psw0(space: &FiniteSpace) -> u32 {
    let n = space.len();
    let opens = brute_opens(space);
    let separates = |family: &[PointSet]| {
        (0..n).all(|p| {
            (p + 1..n).all(|q| family.iter().any(|u| u.contains(p) != u.contains(q)))
        })
    };
    let m = opens.len();
    (0u64..1 << m)
        .filter_map(|mask| {
            let family: Vec<PointSet> = (0..m).filter(|&k| mask >> k & 1 == 1).map(|k| opens[k]).collect();
            separates(&family).then_some(family.len() as u32)
        })
        .min()
        .unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    let n = a.len();
    if n != b.len() || a.order_pairs().len() != b.order_pairs().len() {
        return false;
    }
    permutations(n).iter().any(|f| {
        (0..n).all(|x| (0..n).all(|y| a.leq(x, y) == b.leq(f[x], f[y])))
    })
}

/// Number of T₀ topologies on `n` labeled points, by testing every family of
/// subsets against the axioms.
pub fn brute_t0_topology_count(n: usize) -> usize {
    let subsets = 1usize << n;
    let full = subsets - 1;
    (0u64..1 << subsets)
        .filter(|&fam| {
            let has = |s: usize| fam >> s & 1 == 1;
            has(0)
                && has(full)
                && (0..subsets).all(|a| {
                    !has(a) || (0..subsets).all(|b| !has(b) || (has(a | b) && has(a & b)))
                })
                && (0..n).all(|p| {
                    (p + 1..n).all(|q| (0..subsets).any(|s| has(s) && (s >> p & 1) != (s >> q & 1)))
                })
        })
        .count()
}

/// One representative per isomorphism class, by pairwise brute-force checks.
pub fn brute_classes(spaces: impl IntoIterator<Item = FiniteSpace>) -> Vec<FiniteSpace> {
    let mut reps: Vec<FiniteSpace> = Vec::new();
    for s in spaces {
        if !reps.iter().any(|r| brute_isomorphic(r, &s)) {
            reps.push(s);
        }
    }
    reps
}

/// Every labeled partial order on `n` points from all relations, by
/// testing reflexivity, antisymmetry and transitivity directly.
pub fn brute_posets(n: usize) -> Vec<FiniteSpace> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    (0u64..1 << cells.len())
        .filter_map(|mask| {
            let rel = |x: usize, y: usize| {
                x == y || cells.iter().position(|&c| c == (x, y)).is_some_and(|k| mask >> k & 1 == 1)
            };
            let antisymmetric = (0..n).all(|x| (0..n).all(|y| x == y || !(rel(x, y) && rel(y, x))));
            let transitive = (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| !(rel(x, y) && rel(y, z)) || rel(x, z)))
            });
            if !(antisymmetric && transitive) {
                return None;
            }
            let pairs: Vec<(usize, usize)> = cells
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            Some(FiniteSpace::from_order(n, &pairs).unwrap())
        })
        .collect()
}
