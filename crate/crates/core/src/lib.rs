//! Exact solver for Seeker/Hider cut-and-choose games on finite T₀ spaces.
//!
//! A finite T₀ space is stored as its specialization order (open sets are the
//! up-sets). On top of that the crate computes the point-separating number
//! `ps`, the set-membership numbers `sm(Y, X)` and `sm(X)`, and the
//! T₀-pseudoweight `ψw₀`; extracts and exhaustively verifies winning
//! strategies; implements the constructive Seeker strategies for sums,
//! products and separating families; and checks the finite consequences of the
//! known inequalities over enumerated corpora.
//!
//! The empty space is admitted; every game value on it is 0.

pub mod canon;
pub mod constructions;
pub mod format;
pub mod game;
pub mod invariants;
pub mod pointset;
pub mod space;
pub mod strategies;

pub use canon::{canonical_code, CanonicalCode};
pub use pointset::{PointSet, MAX_POINTS};
pub use space::{FiniteSpace, SpaceError};
