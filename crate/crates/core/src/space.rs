//! Finite T₀ spaces, stored as their specialization order.
//!
//! Convention: `x <= y` means every open set containing `x` also contains `y`,
//! so open sets are exactly the up-sets of the order and closed sets are the
//! down-sets. Every finite topology is Alexandrov, so the order loses nothing.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::pointset::{PointSet, MAX_POINTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("point index {index} out of range for a {n}-point space")]
    Index { index: usize, n: usize },
    #[error("order has a cycle through points {a} and {b}; the space would not be T0")]
    Cycle { a: usize, b: usize },
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("points {a} and {b} lie in exactly the same open sets; the space is not T0")]
    NotT0 { a: usize, b: usize },
    #[error("the up-sets of the derived order differ from the listed open sets")]
    NotAlexandrovConsistent,
    #[error("{n} points exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// A finite T₀ topological space on the points `0..n`.
#[derive(Clone)]
pub struct FiniteSpace {
    n: usize,
    /// `up[x]` is the least open set containing `x`.
    up: Vec<PointSet>,
    /// `down[x]` is the closure of `{x}`.
    down: Vec<PointSet>,
    /// Points sorted so that every strict upper bound of a point precedes it.
    top_down: Vec<usize>,
    opens: OnceLock<Vec<PointSet>>,
}

impl FiniteSpace {
    /// Reflexive-transitive closure of `pairs` (each `(a, b)` meaning `a <= b`).
    pub fn from_order(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SpaceError> {
        check_size(n)?;
        let mut up: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(SpaceError::Index { index, n });
                }
            }
            up[a].insert(b);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x] | up[k];
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter().filter(|&b| b > a) {
                if up[b].contains(a) {
                    return Err(SpaceError::Cycle { a, b });
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds a space from a listed family of open sets, which must be exactly
    /// a T₀ topology on `0..n`.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<Self, SpaceError> {
        check_size(n)?;
        let full = PointSet::full(n);
        let mut family: Vec<PointSet> = opens.to_vec();
        family.sort();
        family.dedup();
        if let Some(bad) = family.iter().find(|u| !u.is_subset(full)) {
            return Err(SpaceError::Index {
                index: bad.bound() - 1,
                n,
            });
        }
        if family.binary_search(&PointSet::EMPTY).is_err() {
            return Err(SpaceError::NotATopology("the empty set is not listed".into()));
        }
        if family.binary_search(&full).is_err() {
            return Err(SpaceError::NotATopology("the whole space is not listed".into()));
        }
        for (k, &u) in family.iter().enumerate() {
            for &v in &family[k + 1..] {
                if family.binary_search(&(u | v)).is_err() {
                    return Err(SpaceError::NotATopology(format!("union of {u} and {v} is missing")));
                }
                if family.binary_search(&(u & v)).is_err() {
                    return Err(SpaceError::NotATopology(format!(
                        "intersection of {u} and {v} is missing"
                    )));
                }
            }
        }
        let up: Vec<PointSet> = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|u| u.contains(x))
                    .fold(full, |acc, &u| acc & u)
            })
            .collect();
        for a in 0..n {
            for b in a + 1..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(SpaceError::NotT0 { a, b });
                }
            }
        }
        let space = Self::from_up_sets(up);
        if space.all_opens() != family.as_slice() {
            return Err(SpaceError::NotAlexandrovConsistent);
        }
        Ok(space)
    }

    /// Trusted constructor: `up` must already be a reflexive, transitive,
    /// antisymmetric relation given row-wise.
    pub(crate) fn from_up_sets(up: Vec<PointSet>) -> Self {
        let n = up.len();
        let mut down = vec![PointSet::EMPTY; n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        // A strict upper bound has a strictly smaller up-set.
        let mut top_down: Vec<usize> = (0..n).collect();
        top_down.sort_by_key(|&x| (up[x].len(), x));
        FiniteSpace {
            n,
            up,
            down,
            top_down,
            opens: OnceLock::new(),
        }
    }

    /// The empty space.
    pub fn empty() -> Self {
        Self::from_up_sets(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The whole point set.
    pub fn points(&self) -> PointSet {
        PointSet::full(self.n)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Least open set containing `x`, i.e. `↑x`.
    pub fn min_open(&self, x: usize) -> PointSet {
        self.up[x]
    }

    /// Closure of `{x}`, i.e. `↓x`.
    pub fn point_closure(&self, x: usize) -> PointSet {
        self.down[x]
    }

    /// All comparable pairs `(x, y)` with `x < y`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| self.up[x].iter().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }

    /// Covering pairs (the Hasse diagram), the transitive reduction of the order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.order_pairs()
            .into_iter()
            .filter(|&(x, y)| {
                let between = self.up[x] & self.down[y];
                between.len() == 2
            })
            .collect()
    }

    pub fn is_open(&self, s: PointSet) -> bool {
        s.is_subset(self.points()) && s.iter().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_closed(&self, s: PointSet) -> bool {
        s.is_subset(self.points()) && s.iter().all(|x| self.down[x].is_subset(s))
    }

    /// Largest open subset: `{x : ↑x ⊆ s}`.
    pub fn interior(&self, s: PointSet) -> PointSet {
        s.iter().filter(|&x| self.up[x].is_subset(s)).collect()
    }

    /// Smallest closed superset: `↓s`.
    pub fn closure(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc | self.down[x])
    }

    /// Smallest open superset: `↑s`.
    pub fn up_closure(&self, s: PointSet) -> PointSet {
        s.iter().fold(PointSet::EMPTY, |acc, x| acc | self.up[x])
    }

    pub fn is_dense(&self, s: PointSet) -> bool {
        self.closure(s) == self.points()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|x| self.up[x] == PointSet::singleton(x))
    }

    /// Points `x` with `{x}` open; these are the maximal elements of the order.
    pub fn isolated_points(&self) -> PointSet {
        (0..self.n)
            .filter(|&x| self.up[x] == PointSet::singleton(x))
            .collect()
    }

    /// Every subset is open or closed.
    pub fn is_door(&self) -> bool {
        self.points()
            .subsets()
            .all(|s| self.is_open(s) || self.is_closed(s))
    }

    /// Searches for a set `D` such that `D` and its complement are both dense.
    ///
    /// Such a pair exists iff the space is resolvable. Fixing point 0 inside
    /// `D` halves the search. A finite T₀ space always has an isolated maximal
    /// point, which no two disjoint dense sets can share, so the answer is
    /// always `false`; the search exists to cross-check the representation.
    pub fn is_resolvable(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let full = self.points();
        let rest = full.difference(PointSet::singleton(0));
        rest.subsets()
            .map(|s| s.with(0))
            .any(|d| self.is_dense(d) && self.is_dense(full - d))
    }

    /// Every open set, sorted by bit pattern.
    pub fn all_opens(&self) -> &[PointSet] {
        self.opens.get_or_init(|| self.relative_opens(self.points()))
    }

    /// Open sets of the subspace `w`, i.e. the distinct traces `U ∩ w` of open
    /// sets `U`. These are exactly the up-sets of the order restricted to `w`.
    /// Sorted by bit pattern.
    pub fn relative_opens(&self, w: PointSet) -> Vec<PointSet> {
        let order: Vec<usize> = self.top_down.iter().copied().filter(|&x| w.contains(x)).collect();
        let mut out = Vec::new();
        self.collect_up_sets(w, &order, 0, PointSet::EMPTY, &mut out);
        out.sort();
        out
    }

    fn collect_up_sets(
        &self,
        w: PointSet,
        order: &[usize],
        k: usize,
        cur: PointSet,
        out: &mut Vec<PointSet>,
    ) {
        let Some(&x) = order.get(k) else {
            out.push(cur);
            return;
        };
        self.collect_up_sets(w, order, k + 1, cur, out);
        // Strict upper bounds of x inside w were decided earlier.
        if (self.up[x] & w).difference(PointSet::singleton(x)).is_subset(cur) {
            self.collect_up_sets(w, order, k + 1, cur.with(x), out);
        }
    }

    /// `t` is an open set of the subspace `w`.
    pub fn is_relatively_open(&self, t: PointSet, w: PointSet) -> bool {
        t.is_subset(w) && t.iter().all(|x| (self.up[x] & w).is_subset(t))
    }
}

fn check_size(n: usize) -> Result<(), SpaceError> {
    if n > MAX_POINTS {
        Err(SpaceError::TooLarge { n, cap: MAX_POINTS })
    } else {
        Ok(())
    }
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("n", &self.n)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::from_order(2, &[(0, 1)]).unwrap()
    }

    fn chain3() -> FiniteSpace {
        FiniteSpace::from_order(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn set<const N: usize>(p: [usize; N]) -> PointSet {
        PointSet::from(p)
    }

    #[test]
    fn from_order_reads_off_up_sets() {
        assert_eq!(sierpinski().all_opens(), &[set([]), set([1]), set([0, 1])]);
        let mut opens = chain3().all_opens().to_vec();
        opens.sort_by_key(|u| u.len());
        assert_eq!(opens, vec![set([]), set([2]), set([1, 2]), set([0, 1, 2])]);
        assert!(chain3().leq(0, 2));
    }

    #[test]
    fn from_order_errors() {
        assert_eq!(
            FiniteSpace::from_order(2, &[(0, 1), (1, 0)]).unwrap_err(),
            SpaceError::Cycle { a: 0, b: 1 }
        );
        assert!(matches!(
            FiniteSpace::from_order(2, &[(0, 2)]),
            Err(SpaceError::Index { index: 2, n: 2 })
        ));
        assert!(matches!(
            FiniteSpace::from_order(21, &[]),
            Err(SpaceError::TooLarge { .. })
        ));
    }

    #[test]
    fn from_opens_cases() {
        let s = FiniteSpace::from_opens(2, &[set([]), set([1]), set([0, 1])]).unwrap();
        assert_eq!(s, sierpinski());
        assert_eq!(s.order_pairs(), vec![(0, 1)]);
        assert!(matches!(
            FiniteSpace::from_opens(2, &[set([]), set([0, 1])]),
            Err(SpaceError::NotT0 { a: 0, b: 1 })
        ));
        assert!(matches!(
            FiniteSpace::from_opens(3, &[set([]), set([1, 2]), set([0, 2]), set([0, 1, 2])]),
            Err(SpaceError::NotATopology(_))
        ));
        assert!(matches!(
            FiniteSpace::from_opens(2, &[set([1]), set([0, 1])]),
            Err(SpaceError::NotATopology(_))
        ));
    }

    #[test]
    fn interior_and_closure_examples() {
        let s = sierpinski();
        assert_eq!(s.interior(set([0])), set([]));
        assert_eq!(s.closure(set([1])), set([0, 1]));
        let c = chain3();
        assert_eq!(c.interior(set([0, 2])), set([2]));
        assert_eq!(c.closure(set([1])), set([0, 1]));
        assert_eq!(c.closure(set([])), set([]));
        assert_eq!(c.interior(c.points()), c.points());
    }

    #[test]
    fn predicates() {
        assert!(sierpinski().is_door());
        assert!(!chain3().is_door());
        assert!(!chain3().is_open(set([0, 2])) && !chain3().is_closed(set([0, 2])));
        assert!(!sierpinski().is_resolvable());
        assert!(!chain3().is_resolvable());
        assert_eq!(chain3().isolated_points(), set([2]));
        assert!(!chain3().is_discrete());
        assert!(FiniteSpace::from_order(3, &[]).unwrap().is_discrete());
        assert!(chain3().is_dense(set([2])));
        assert!(!chain3().is_dense(set([0, 1])));
    }

    #[test]
    fn empty_space() {
        let e = FiniteSpace::empty();
        assert_eq!(e.all_opens(), &[PointSet::EMPTY]);
        assert!(e.is_door());
        assert!(!e.is_resolvable());
        assert!(e.is_discrete());
    }

    #[test]
    fn relative_opens_are_traces() {
        let c = chain3();
        let w = set([0, 2]);
        let mut traces: Vec<_> = c.all_opens().iter().map(|&u| u & w).collect();
        traces.sort();
        traces.dedup();
        assert_eq!(c.relative_opens(w), traces);
        assert!(c.is_relatively_open(set([2]), w));
        assert!(!c.is_relatively_open(set([0]), w));
    }

    #[test]
    fn covers_are_transitive_reduction() {
        assert_eq!(chain3().cover_pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(chain3().order_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }
}
