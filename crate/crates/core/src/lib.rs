//! Exact computations with semiorthogonal decompositions, t-stabilities and
//! their mutations for the path algebras of type `A_n` and for the weighted
//! projective line of weight type (2).

pub mod error;
pub mod exceptional;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod notation;
pub mod sod;
pub mod typea;
pub mod wpl2;

pub use error::{Error, Result};
pub use lattice::{euler_pairing, EulerForm, K0Class, QuiverSpec};
pub use typea::{DerivedObject, Interval, Side, ThickSubcat, TypeAEngine};
