//! Finite weighted chain complexes, θ-seminorms, mapping cones, duality and
//! gluing, all computed exactly by linear programming.
//!
//! These are finite-dimensional analogues: the singular chain complexes of
//! spaces are never touched, only complexes small enough to write down.

mod complex;
mod glue;
pub mod lp;
mod matrix;
mod norms;

pub use complex::{FiniteChainComplex, HomClass, PairComplex};
pub use glue::{glue_assemble, GluePiece, GlueResult, Identification, Interface};
pub use matrix::Matrix;
pub use norms::{
    below_unit_theta, ConeChain, ConeCochain, DualCone, DualityResult, LexicographicResult,
    MappingCone, SeminormResult, Theta, ThurstonResult, ThurstonStatus,
};
