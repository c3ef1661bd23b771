//! Exact classification of crossed-product orders `A_f` over a discrete
//! valuation ring, driven entirely by the valuations of the associated
//! two-cocycle `f` at the maximal ideals of `S`.
//!
//! The crate decides whether `A_f` is Azumaya, hereditary, or maximal, and
//! computes its structural invariants: the unit subgroup `H`, the partial
//! order on `G/H` ("the graph of f"), the Jacobson radical profile, and
//! the behaviour of restrictions and localizations. A fully exact backend
//! over `Q(i)(x)` grounds the valuation model in one faithful instance.

pub mod classify;
pub mod cohomology;
pub mod doc;
pub mod group;
mod hnf;
pub mod qix;
pub mod valuation;

pub use classify::{classify, ClassificationReport, GraphOfF};
pub use cohomology::{CoboundaryWitness, CocycleLattice};
pub use group::{FiniteGroup, GaloisSetup, IdealAction, Subgroup};
pub use valuation::{RadicalProfile, ValCocycle, ValVector};
