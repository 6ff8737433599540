//! Isomorphism-invariant codes for finite orders.
//!
//! Individualization-refinement: points are split into ordered cells by
//! iterated neighbourhood signatures, then the first non-singleton cell is
//! branched on. The code of a leaf is the order matrix read in leaf order, and
//! the canonical code is the least leaf code. Branches on order twins (points
//! with the same strict upper and lower sets) are skipped, since swapping two
//! twins is an automorphism fixing the current node.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::pointset::PointSet;
use crate::space::FiniteSpace;

/// Canonical code of a finite order: equal iff the orders are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

pub fn canonical_code(space: &FiniteSpace) -> CanonicalCode {
    canonical_form(space).0
}

/// Canonical code plus a labeling achieving it: `perm[i]` is the original
/// point placed at position `i`.
pub fn canonical_form(space: &FiniteSpace) -> (CanonicalCode, Vec<usize>) {
    let n = space.len();
    let mut search = Search {
        space,
        strict_up: (0..n)
            .map(|x| space.min_open(x).difference(PointSet::singleton(x)))
            .collect(),
        strict_down: (0..n)
            .map(|x| space.point_closure(x).difference(PointSet::singleton(x)))
            .collect(),
        best: None,
    };
    if n > 0 {
        search.descend(vec![(0..n).collect()]);
    }
    let (code, perm) = search.best.unwrap_or_else(|| (encode(space, &[]), Vec::new()));
    (CanonicalCode(code), perm)
}

/// The space relabeled so that new point `i` is old point `perm[i]`.
pub fn relabel(space: &FiniteSpace, perm: &[usize]) -> FiniteSpace {
    let mut position = vec![0; perm.len()];
    for (i, &x) in perm.iter().enumerate() {
        position[x] = i;
    }
    let up = perm
        .iter()
        .map(|&x| space.min_open(x).iter().map(|y| position[y]).collect())
        .collect();
    FiniteSpace::from_up_sets(up)
}

/// The canonical representative of the isomorphism class of `space`.
pub fn canonical_relabel(space: &FiniteSpace) -> FiniteSpace {
    let (_, perm) = canonical_form(space);
    relabel(space, &perm)
}

fn encode(space: &FiniteSpace, perm: &[usize]) -> Vec<u8> {
    let n = perm.len();
    let mut out = Vec::with_capacity(1 + (n * n).div_ceil(8));
    out.push(n as u8);
    let mut byte = 0u8;
    let mut used = 0;
    for &x in perm {
        for &y in perm {
            byte = byte << 1 | space.leq(x, y) as u8;
            used += 1;
            if used == 8 {
                out.push(byte);
                byte = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(byte << (8 - used));
    }
    out
}

struct Search<'a> {
    space: &'a FiniteSpace,
    strict_up: Vec<PointSet>,
    strict_down: Vec<PointSet>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let perm: Vec<usize> = cells.into_iter().flatten().collect();
            let code = encode(self.space, &perm);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, perm));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        self.strict_up[u] == self.strict_up[v] && self.strict_down[u] == self.strict_down[v]
    }

    /// Splits cells by (count of strict upper neighbours per cell, count of
    /// strict lower neighbours per cell) until stable. Sub-cells are ordered by
    /// signature, so the result depends only on the isomorphism type of
    /// (order, input partition).
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.space.len();
        loop {
            let mut color = vec![0usize; n];
            for (c, cell) in cells.iter().enumerate() {
                for &x in cell {
                    color[x] = c;
                }
            }
            let signature = |x: usize| -> Vec<u32> {
                let mut sig = vec![0u32; 2 * cells.len()];
                for y in self.strict_up[x].iter() {
                    sig[color[y]] += 1;
                }
                for y in self.strict_down[x].iter() {
                    sig[cells.len() + color[y]] += 1;
                }
                sig
            };
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> =
                    cell.iter().map(|&x| (signature(x), x)).collect();
                keyed.sort();
                let mut group: Vec<usize> = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[0].0 != w[1].0 {
                        next.push(std::mem::take(&mut group));
                    }
                    group.push(w[1].1);
                }
                next.push(group);
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: usize, pairs: &[(usize, usize)]) -> FiniteSpace {
        FiniteSpace::from_order(n, pairs).unwrap()
    }

    #[test]
    fn relabeled_sierpinski_matches() {
        let a = order(2, &[(0, 1)]);
        let b = order(2, &[(1, 0)]);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(canonical_code(&a), canonical_code(&order(2, &[])));
    }

    #[test]
    fn chain_vs_vee() {
        let chain = order(3, &[(0, 1), (1, 2)]);
        let vee = order(3, &[(0, 1), (0, 2)]);
        assert_ne!(canonical_code(&chain), canonical_code(&vee));
    }

    #[test]
    fn canonical_relabel_is_isomorphic() {
        let s = order(4, &[(3, 0), (3, 1), (1, 2)]);
        let c = canonical_relabel(&s);
        assert_eq!(canonical_code(&s), canonical_code(&c));
        assert_eq!(c.order_pairs().len(), s.order_pairs().len());
    }

    #[test]
    fn large_antichain_is_fast() {
        let big = order(20, &[]);
        let code = canonical_code(&big);
        assert_eq!(code.as_bytes()[0], 20);
    }

    #[test]
    fn empty_space_has_a_code() {
        assert_eq!(canonical_code(&FiniteSpace::empty()).as_bytes(), &[0]);
    }
}
