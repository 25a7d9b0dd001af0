//! Finite category theory engine: finite 1- and 2-categories, nerves,
//! homology and derived limits, Grothendieck constructions, twisted
//! 2-cells and ordinal adjunctions.

#![allow(clippy::result_large_err, clippy::type_complexity, clippy::needless_range_loop)]

pub mod adj;
pub mod cat;
pub mod groth;
pub mod homology;
pub mod linalg;
pub mod simplicial;
pub mod tw2;
pub mod two_cat;

pub use adj::{AdjError, CompatGraph, Gap, OrdMap, SplitOrdinal};
pub use cat::{CatError, FinCategory, FinFunctor, Mor, Obj, RawCategory};
pub use groth::{CatValuedTwoFunctor, GrothError, Grothendieck};
pub use homology::{AbGroup, HomologyError};
pub use linalg::{IntMatrix, LinalgError};
pub use simplicial::{ChainComplex, SimplicialError, SimplicialSet};
pub use tw2::{Monoid, Tw2Error};
pub use two_cat::{FinTwoCategory, RawTwoCategory, TwoCatError, TwoFunctor};
