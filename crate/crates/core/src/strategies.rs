//! Constructive Seeker strategies for separating families, sums and products,
//! the two-move membership strategy, and a greedy Hider.
//!
//! Parallel block games over a partition of an infinite ordinal have no finite
//! analogue (a finite length never splits into two pieces of the same length),
//! so every composition here runs its blocks one after another. This is sound
//! because a block that ends with `W ⊆ A` or `W ∩ A = ∅` keeps that property
//! under any later shrinking of `W`.
//!
//! Each construction reports the round bound it guarantees; inner blocks use
//! the engine's extracted optimal strategies.

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{product_layout, ProductLayout, SpaceFamily};
use crate::game::{
    self, extract_seeker, GameError, GameGoal, HiderStrategy, Position, SeekerStrategy,
    StateMapSeeker,
};
use crate::pointset::PointSet;
use crate::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("family does not separate points {0} and {1}")]
    NotSeparating(usize, usize),
    #[error("summand {0} is not T1 (finite T1 spaces are discrete)")]
    NotT1(usize),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Subsets such that every pair of distinct points is split by some member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingFamily {
    pub members: Vec<PointSet>,
}

impl SeparatingFamily {
    /// The first pair `(p, q)`, `p < q < n`, that no member splits.
    pub fn unseparated_pair(&self, n: usize) -> Option<(usize, usize)> {
        (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .find(|&(p, q)| {
                !self
                    .members
                    .iter()
                    .any(|a| a.contains(p) != a.contains(q))
            })
    }

    pub fn separates(&self, n: usize) -> bool {
        self.unseparated_pair(n).is_none()
    }
}

/// Binary coding of the points of `space`.
pub fn binary_coding_family(space: &FiniteSpace) -> SeparatingFamily {
    binary_coding(space.len())
}

/// Member `α` holds the indices below `n` with bit `α` set; `⌈log₂ n⌉` members.
pub fn binary_coding(n: usize) -> SeparatingFamily {
    let bits = game::log2ceil(n) as usize;
    SeparatingFamily {
        members: (0..bits)
            .map(|b| (0..n).filter(|x| x >> b & 1 == 1).collect())
            .collect(),
    }
}

struct Block {
    target: PointSet,
    seeker: StateMapSeeker,
}

/// Plays optimal membership games for each family member in turn.
///
/// The position is replayed to find the active block and its block-local
/// state (the state of that block's own game, started from the whole space);
/// a block ends once its local state is decided for its target.
pub struct SequentialSeparatingSeeker {
    full: PointSet,
    blocks: Vec<Block>,
    bound: u32,
}

impl SequentialSeparatingSeeker {
    /// Guaranteed round bound `Σ_α sm(A_α, X)`.
    pub fn round_bound(&self) -> u32 {
        self.bound
    }

    fn bracket(&self, u: PointSet, i: bool) -> PointSet {
        if i {
            u
        } else {
            self.full - u
        }
    }

    fn decided(&self, block: usize, local: PointSet) -> bool {
        GameGoal::membership(self.blocks[block].target).is_terminal(local)
    }
}

impl SeekerStrategy for SequentialSeparatingSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        let mut block = 0;
        let mut local = self.full;
        let advance = |block: &mut usize, local: &mut PointSet| {
            while *block < self.blocks.len() && self.decided(*block, *local) {
                *block += 1;
                *local = self.full;
            }
        };
        advance(&mut block, &mut local);
        for &(u, i) in &pos.history {
            local &= self.bracket(u, i);
            advance(&mut block, &mut local);
        }
        match self.blocks.get(block) {
            Some(b) => b.seeker.move_at(local).unwrap_or(PointSet::EMPTY),
            None => PointSet::EMPTY,
        }
    }
}

pub fn sequential_separating_seeker(
    space: &FiniteSpace,
    family: &SeparatingFamily,
) -> Result<SequentialSeparatingSeeker, StrategyError> {
    if let Some((p, q)) = family.unseparated_pair(space.len()) {
        return Err(StrategyError::NotSeparating(p, q));
    }
    let mut blocks = Vec::with_capacity(family.members.len());
    let mut bound = 0;
    for &target in &family.members {
        let seeker = extract_seeker(space, GameGoal::membership(target & space.points()))?;
        bound += seeker.value;
        blocks.push(Block {
            target: target & space.points(),
            seeker,
        });
    }
    Ok(SequentialSeparatingSeeker {
        full: space.points(),
        blocks,
        bound,
    })
}

/// Plays `int(Y)` and then `X ∖ F` with `F = Y ∖ int(Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoMoveSeeker {
    pub first: PointSet,
    pub second: PointSet,
}

impl TwoMoveSeeker {
    pub fn round_bound(&self) -> u32 {
        2
    }
}

impl SeekerStrategy for TwoMoveSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        match pos.round() {
            0 => self.first,
            1 => self.second,
            _ => PointSet::EMPTY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TwoMove {
    Applicable(TwoMoveSeeker),
    /// `Y ∖ int(Y)` is not closed.
    Inapplicable { residue: PointSet },
}

/// The two-move membership strategy, applicable when `Y ∖ int(Y)` is closed.
/// The four outcomes are `int(Y)`, `∅`, `F` and `X ∖ Y`.
pub fn two_move_membership(space: &FiniteSpace, y: PointSet) -> TwoMove {
    let y = y & space.points();
    let interior = space.interior(y);
    let residue = y - interior;
    if space.is_closed(residue) {
        TwoMove::Applicable(TwoMoveSeeker {
            first: interior,
            second: space.points() - residue,
        })
    } else {
        TwoMove::Inapplicable { residue }
    }
}

/// Seeker for a topological sum: first identify the summand by asking unions
/// of summands along a family separating the summand indices, then run every
/// summand's optimal point-separating strategy in parallel inside its own
/// summand.
pub struct SumSeeker {
    family: SpaceFamily,
    identification: Vec<PointSet>,
    inner: Vec<StateMapSeeker>,
    bound: u32,
}

impl SumSeeker {
    /// `|family| + max_i ps(X_i)`.
    pub fn round_bound(&self) -> u32 {
        self.bound
    }
}

impl SeekerStrategy for SumSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        if let Some(&u) = self.identification.get(pos.round()) {
            return u;
        }
        // Identification moves are unions of whole summands and later moves
        // are unions of per-summand moves, so W ∩ X_i is exactly the state of
        // summand i's own game.
        (0..self.family.len()).fold(PointSet::EMPTY, |acc, i| {
            let local = self.family.local(i, pos.state);
            match self.inner[i].move_at(local) {
                Some(h) => acc | self.family.global(i, h),
                None => acc,
            }
        })
    }
}

/// `indices` must separate the summand indices `0..k`.
pub fn sum_seeker(
    parts: &[FiniteSpace],
    family: &SpaceFamily,
    indices: &SeparatingFamily,
) -> Result<SumSeeker, StrategyError> {
    if let Some((p, q)) = indices.unseparated_pair(parts.len()) {
        return Err(StrategyError::NotSeparating(p, q));
    }
    let inner = parts
        .iter()
        .map(|p| extract_seeker(p, GameGoal::PointSeparating))
        .collect::<Result<Vec<_>, _>>()?;
    let inner_bound = inner.iter().map(|s| s.value).max().unwrap_or(0);
    Ok(SumSeeker {
        family: family.clone(),
        identification: indices.members.iter().map(|&a| family.union_of(a)).collect(),
        bound: indices.members.len() as u32 + inner_bound,
        inner,
    })
}

/// Seeker for `a × b`: the optimal strategy of `a` played through cylinders
/// `H × b` until the first coordinate is pinned, then that of `b` through
/// cylinders `a × H`.
pub struct ProductSeeker {
    layout: ProductLayout,
    left: StateMapSeeker,
    right: StateMapSeeker,
}

impl ProductSeeker {
    /// `ps(a) + ps(b)`.
    pub fn round_bound(&self) -> u32 {
        self.left.value + self.right.value
    }
}

impl SeekerStrategy for ProductSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        // Cylinder moves keep the state a rectangle, so the factor states are
        // its projections.
        let a = self.layout.project_left(pos.state);
        let b = self.layout.project_right(pos.state);
        if a.len() > 1 {
            self.layout
                .left_cylinder(self.left.move_at(a).unwrap_or(PointSet::EMPTY))
        } else if b.len() > 1 {
            self.layout
                .right_cylinder(self.right.move_at(b).unwrap_or(PointSet::EMPTY))
        } else {
            PointSet::EMPTY
        }
    }
}

pub fn product_seeker(a: &FiniteSpace, b: &FiniteSpace) -> Result<ProductSeeker, StrategyError> {
    Ok(ProductSeeker {
        layout: product_layout(a, b),
        left: extract_seeker(a, GameGoal::PointSeparating)?,
        right: extract_seeker(b, GameGoal::PointSeparating)?,
    })
}

/// Membership Seeker for a sum: unions of the summands' optimal membership
/// strategies for `Y ∩ X_i` until every summand is decided, then one move
/// asking the union of the summands whose trace lies in `Y`.
pub struct SumMembershipSeeker {
    family: SpaceFamily,
    target: PointSet,
    inner: Vec<StateMapSeeker>,
    bound: u32,
}

impl SumMembershipSeeker {
    /// `max_i sm(Y ∩ X_i, X_i) + 1`.
    pub fn round_bound(&self) -> u32 {
        self.bound
    }
}

impl SeekerStrategy for SumMembershipSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        let mut union = PointSet::EMPTY;
        let mut playing = false;
        for i in 0..self.family.len() {
            let local = self.family.local(i, pos.state);
            if let Some(h) = self.inner[i].move_at(local) {
                union |= self.family.global(i, h);
                playing = true;
            }
        }
        if playing {
            return union;
        }
        let inside: PointSet = (0..self.family.len())
            .filter(|&i| (pos.state & self.family.part(i)).is_subset(self.target))
            .collect();
        self.family.union_of(inside)
    }
}

pub fn sum_membership_seeker(
    parts: &[FiniteSpace],
    family: &SpaceFamily,
    y: PointSet,
) -> Result<SumMembershipSeeker, StrategyError> {
    let inner = parts
        .iter()
        .enumerate()
        .map(|(i, p)| extract_seeker(p, GameGoal::membership(family.local(i, y))))
        .collect::<Result<Vec<_>, _>>()?;
    let inner_bound = inner.iter().map(|s| s.value).max().unwrap_or(0);
    Ok(SumMembershipSeeker {
        family: family.clone(),
        target: y,
        inner,
        bound: inner_bound + 1,
    })
}

/// Membership Seeker for a sum of discrete spaces. Point `η` of every summand
/// forms row `η`. The Seeker removes rows `0, 1, ..` (asking `X ∖ row_η`)
/// until a 0 reply pins the row, then asks the union of the summands whose
/// row-`η` point is in `Y`. When only the last row can remain, it classifies
/// straight away, which keeps the total within `max_i |X_i|` rounds.
pub struct ColumnEliminationSeeker {
    full: PointSet,
    rows: Vec<PointSet>,
    classifiers: Vec<PointSet>,
}

impl ColumnEliminationSeeker {
    /// `max_i |X_i|`.
    pub fn round_bound(&self) -> u32 {
        self.rows.len() as u32
    }
}

impl SeekerStrategy for ColumnEliminationSeeker {
    fn choose(&self, pos: &Position) -> PointSet {
        if self.rows.is_empty() {
            return PointSet::EMPTY;
        }
        let last = self.rows.len() - 1;
        for (round, &(_, reply)) in pos.history.iter().enumerate() {
            if round >= last {
                // that move was the classifying one
                return PointSet::EMPTY;
            }
            if !reply {
                return if pos.round() == round + 1 {
                    self.classifiers[round]
                } else {
                    PointSet::EMPTY
                };
            }
        }
        let round = pos.round();
        match round.cmp(&last) {
            std::cmp::Ordering::Less => self.full - self.rows[round],
            std::cmp::Ordering::Equal => self.classifiers[round],
            std::cmp::Ordering::Greater => PointSet::EMPTY,
        }
    }
}

pub fn column_elimination_seeker(
    parts: &[FiniteSpace],
    family: &SpaceFamily,
    y: PointSet,
) -> Result<ColumnEliminationSeeker, StrategyError> {
    if let Some(i) = parts.iter().position(|p| !p.is_discrete()) {
        return Err(StrategyError::NotT1(i));
    }
    let height = family.sizes.iter().copied().max().unwrap_or(0);
    let rows: Vec<PointSet> = (0..height)
        .map(|eta| {
            (0..family.len())
                .filter(|&i| eta < family.sizes[i])
                .map(|i| family.offsets[i] + eta)
                .collect()
        })
        .collect();
    let classifiers = (0..height)
        .map(|eta| {
            let summands: PointSet = (0..family.len())
                .filter(|&i| eta < family.sizes[i] && y.contains(family.offsets[i] + eta))
                .collect();
            family.union_of(summands)
        })
        .collect();
    Ok(ColumnEliminationSeeker {
        full: PointSet::full(family.sizes.iter().sum()),
        rows,
        classifiers,
    })
}

/// A fast Hider heuristic: keep the branch that is nonterminal, then has the
/// larger cheap lower bound on its value, then is larger; ties keep `W ∩ U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyHider {
    pub goal: GameGoal,
}

impl GreedyHider {
    fn key(&self, s: PointSet) -> (bool, u32, usize) {
        let open = !self.goal.is_terminal(s);
        let floor = match self.goal {
            GameGoal::PointSeparating => game::log2ceil(s.len()),
            GameGoal::SetMembership { .. } => open as u32,
        };
        (open, floor, s.len())
    }
}

impl HiderStrategy for GreedyHider {
    fn answer(&self, pos: &Position, proposed: PointSet) -> bool {
        self.key(pos.state & proposed) >= self.key(pos.state - proposed)
    }
}

pub fn greedy_hider(goal: GameGoal) -> GreedyHider {
    GreedyHider { goal }
}

/// Sum of the exact membership numbers of a family's members.
pub fn family_membership_cost(space: &FiniteSpace, family: &SeparatingFamily) -> Result<u32, GameError> {
    family
        .members
        .iter()
        .map(|&a| game::sm_set(space, a & space.points()))
        .sum()
}
