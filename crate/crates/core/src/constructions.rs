//! Standard spaces, sums, products, subspaces, and corpus enumeration.

use std::collections::HashSet;

use thiserror::Error;

use crate::canon::{canonical_form, relabel, CanonicalCode};
use crate::pointset::{PointSet, MAX_POINTS};
use crate::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction needs {points} points, above the cap of {cap}")]
    TooLarge { points: usize, cap: usize },
    #[error("a topological sum needs at least one summand")]
    EmptySum,
    #[error("enumeration of {n}-point spaces exceeds the cap of {cap} for this mode")]
    EnumerationCap { n: usize, cap: usize },
}

/// Default caps for [`enumerate_t0`].
pub const LABELED_CAP: usize = 4;
pub const UP_TO_ISO_CAP: usize = 6;

/// `m` pairwise incomparable points; every subset is open.
pub fn discrete(m: usize) -> FiniteSpace {
    assert!(m <= MAX_POINTS, "discrete({m}) exceeds the point cap");
    FiniteSpace::from_up_sets((0..m).map(PointSet::singleton).collect())
}

/// The chain `0 < 1 < .. < m-1`, whose opens are the final segments.
pub fn chain(m: usize) -> FiniteSpace {
    assert!(m <= MAX_POINTS, "chain({m}) exceeds the point cap");
    FiniteSpace::from_up_sets(
        (0..m)
            .map(|x| PointSet::full(m).difference(PointSet::full(x)))
            .collect(),
    )
}

/// The two-point Sierpiński space: `0 <= 1`, opens `∅, {1}, {0,1}`.
pub fn sierpinski() -> FiniteSpace {
    chain(2)
}

/// Summand bookkeeping for a topological sum: summand `i` occupies the global
/// points `offsets[i] .. offsets[i] + sizes[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFamily {
    pub offsets: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl SpaceFamily {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Global point set of summand `i`.
    pub fn part(&self, i: usize) -> PointSet {
        PointSet::full(self.sizes[i]).embed(self.offsets[i])
    }

    /// Global subset restricted to summand `i`, in the summand's local indices.
    pub fn local(&self, i: usize, s: PointSet) -> PointSet {
        s.extract(self.offsets[i], self.sizes[i])
    }

    /// Local subset of summand `i` mapped to global indices.
    pub fn global(&self, i: usize, s: PointSet) -> PointSet {
        s.embed(self.offsets[i])
    }

    /// Index of the summand containing global point `x`.
    pub fn summand_of(&self, x: usize) -> usize {
        self.offsets.partition_point(|&o| o <= x) - 1
    }

    /// Union of the summands whose index lies in `indices`.
    pub fn union_of(&self, indices: PointSet) -> PointSet {
        indices.iter().fold(PointSet::EMPTY, |acc, i| acc | self.part(i))
    }
}

/// A topological sum together with its summand table.
#[derive(Debug, Clone)]
pub struct SumSpace {
    pub space: FiniteSpace,
    pub family: SpaceFamily,
}

/// Disjoint union; `U` is open iff every trace `U ∩ Xᵢ` is open in `Xᵢ`.
pub fn sum(parts: &[FiniteSpace]) -> Result<SumSpace, ConstructionError> {
    if parts.is_empty() {
        return Err(ConstructionError::EmptySum);
    }
    let total: usize = parts.iter().map(FiniteSpace::len).sum();
    if total > MAX_POINTS {
        return Err(ConstructionError::TooLarge {
            points: total,
            cap: MAX_POINTS,
        });
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut up = Vec::with_capacity(total);
    let mut offset = 0;
    for part in parts {
        offsets.push(offset);
        up.extend((0..part.len()).map(|x| part.min_open(x).embed(offset)));
        offset += part.len();
    }
    Ok(SumSpace {
        space: FiniteSpace::from_up_sets(up),
        family: SpaceFamily {
            offsets,
            sizes: parts.iter().map(FiniteSpace::len).collect(),
        },
    })
}

/// Index arithmetic for a binary product: `(x, y)` is point `x * |b| + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductLayout {
    pub left: usize,
    pub right: usize,
}

impl ProductLayout {
    pub fn index(&self, x: usize, y: usize) -> usize {
        x * self.right + y
    }

    pub fn coords(&self, p: usize) -> (usize, usize) {
        (p / self.right, p % self.right)
    }

    pub fn project_left(&self, s: PointSet) -> PointSet {
        s.iter().map(|p| p / self.right).collect()
    }

    pub fn project_right(&self, s: PointSet) -> PointSet {
        s.iter().map(|p| p % self.right).collect()
    }

    /// `h × B` for `h` a subset of the left factor.
    pub fn left_cylinder(&self, h: PointSet) -> PointSet {
        h.iter()
            .flat_map(|x| (0..self.right).map(move |y| x * self.right + y))
            .collect()
    }

    /// `A × h` for `h` a subset of the right factor.
    pub fn right_cylinder(&self, h: PointSet) -> PointSet {
        (0..self.left)
            .flat_map(|x| h.iter().map(move |y| x * self.right + y))
            .collect()
    }
}

/// Componentwise order; for finite spaces its up-set topology is the product
/// topology.
pub fn product(a: &FiniteSpace, b: &FiniteSpace) -> Result<FiniteSpace, ConstructionError> {
    let points = a.len() * b.len();
    if points > MAX_POINTS {
        return Err(ConstructionError::TooLarge {
            points,
            cap: MAX_POINTS,
        });
    }
    let layout = ProductLayout {
        left: a.len(),
        right: b.len(),
    };
    let up = (0..points)
        .map(|p| {
            let (x, y) = layout.coords(p);
            layout.left_cylinder(a.min_open(x)) & layout.right_cylinder(b.min_open(y))
        })
        .collect();
    Ok(FiniteSpace::from_up_sets(up))
}

/// Layout of `product(a, b)`.
pub fn product_layout(a: &FiniteSpace, b: &FiniteSpace) -> ProductLayout {
    ProductLayout {
        left: a.len(),
        right: b.len(),
    }
}

/// Induced order on `subset`; its points are renumbered in increasing order.
pub fn subspace(space: &FiniteSpace, subset: PointSet) -> FiniteSpace {
    let subset = subset & space.points();
    let members: Vec<usize> = subset.iter().collect();
    let up = members
        .iter()
        .map(|&x| {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &y)| space.leq(x, y))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    FiniteSpace::from_up_sets(up)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    Labeled,
    UpToIso,
}

/// Streams finite T₀ spaces on `n` points, enforcing the default caps.
pub fn enumerate_t0(
    n: usize,
    mode: EnumMode,
) -> Result<Box<dyn Iterator<Item = FiniteSpace>>, ConstructionError> {
    match mode {
        EnumMode::Labeled if n > LABELED_CAP => {
            Err(ConstructionError::EnumerationCap { n, cap: LABELED_CAP })
        }
        EnumMode::UpToIso if n > UP_TO_ISO_CAP => {
            Err(ConstructionError::EnumerationCap { n, cap: UP_TO_ISO_CAP })
        }
        EnumMode::Labeled => Ok(Box::new(labeled_posets(n))),
        EnumMode::UpToIso => Ok(Box::new(posets_up_to_iso(n).map(|(s, _)| s))),
    }
}

/// Every partial order on `0..n`, each exactly once, without a cap.
///
/// A poset on `0..k+1` restricts to a unique poset on `0..k`; conversely it is
/// determined by the down-set `D` and up-set `U` of the new point in the old
/// poset, which must be disjoint and satisfy `d <= u` for all `d ∈ D, u ∈ U`.
/// The generator extends depth-first, holding one frame per level.
pub fn labeled_posets(n: usize) -> LabeledPosets {
    assert!(n <= MAX_POINTS);
    // The empty poset is the only one on zero points.
    let extensions = if n == 0 {
        Vec::new()
    } else {
        vec![(PointSet::EMPTY, PointSet::EMPTY)]
    };
    LabeledPosets {
        target: n,
        empty_pending: n == 0,
        stack: vec![Frame {
            up: Vec::new(),
            extensions,
            next: 0,
        }],
    }
}

pub struct LabeledPosets {
    target: usize,
    empty_pending: bool,
    stack: Vec<Frame>,
}

struct Frame {
    up: Vec<PointSet>,
    extensions: Vec<(PointSet, PointSet)>,
    next: usize,
}

impl Iterator for LabeledPosets {
    type Item = FiniteSpace;

    fn next(&mut self) -> Option<FiniteSpace> {
        if std::mem::take(&mut self.empty_pending) {
            return Some(FiniteSpace::empty());
        }
        loop {
            let frame = self.stack.last_mut()?;
            let Some(&(below, above)) = frame.extensions.get(frame.next) else {
                self.stack.pop();
                continue;
            };
            frame.next += 1;
            let up = extend(&frame.up, below, above);
            if up.len() == self.target {
                return Some(FiniteSpace::from_up_sets(up));
            }
            let extensions = point_extensions(&up);
            self.stack.push(Frame {
                up,
                extensions,
                next: 0,
            });
        }
    }
}

/// Adds a point `k` with strict lower set `below` and strict upper set `above`.
fn extend(up: &[PointSet], below: PointSet, above: PointSet) -> Vec<PointSet> {
    let k = up.len();
    let mut next: Vec<PointSet> = up
        .iter()
        .enumerate()
        .map(|(x, &row)| if below.contains(x) { row.with(k) } else { row })
        .collect();
    next.push(above.with(k));
    next
}

/// All valid `(down-set, up-set)` placements of a new point.
fn point_extensions(up: &[PointSet]) -> Vec<(PointSet, PointSet)> {
    let space = FiniteSpace::from_up_sets(up.to_vec());
    let ups = space.all_opens();
    let downs: Vec<PointSet> = ups.iter().map(|u| u.complement(up.len())).collect();
    let mut out = Vec::new();
    for &d in &downs {
        // Everything above some element of d must lie in U's allowed region:
        // U ⊆ ∩_{x ∈ d} ↑x, and U ∩ d = ∅.
        let allowed = d
            .iter()
            .fold(space.points(), |acc, x| acc & space.min_open(x))
            .difference(d);
        for &u in ups {
            if u.is_subset(allowed) {
                out.push((d, u));
            }
        }
    }
    out
}

/// Streams one canonical representative per isomorphism class of `n`-point
/// posets, together with its code. Classes of size `n` are produced by
/// extending every class of size `n - 1`, so only the smaller level is held
/// in memory.
pub fn posets_up_to_iso(n: usize) -> impl Iterator<Item = (FiniteSpace, CanonicalCode)> {
    assert!(n <= MAX_POINTS);
    let base: Vec<FiniteSpace> = if n == 0 {
        Vec::new()
    } else {
        posets_up_to_iso(n - 1).map(|(s, _)| s).collect()
    };
    let seeds: Box<dyn Iterator<Item = FiniteSpace>> = if n == 0 {
        Box::new(std::iter::once(FiniteSpace::empty()))
    } else {
        Box::new(base.into_iter().flat_map(|s| {
            let up: Vec<PointSet> = (0..s.len()).map(|x| s.min_open(x)).collect();
            point_extensions(&up)
                .into_iter()
                .map(move |(d, u)| FiniteSpace::from_up_sets(extend(&up, d, u)))
        }))
    };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    seeds.filter_map(move |s| {
        let (code, perm) = canonical_form(&s);
        seen.insert(code.clone())
            .then(|| (relabel(&s, &perm), code))
    })
}
