//! Constructive bounded-cohomology toolkit for graphs of groups.
//!
//! The crate is `no_std` (it only needs `alloc`) and purely algorithmic:
//!
//! - [`presentations`]: graphs of groups with free or finitely generated
//!   abelian vertex groups, reduced path normal forms for the fundamental
//!   group, coset transversals and bounded enumeration.
//! - [`bass_serre`]: the Bass–Serre tree and its barycentric subdivision as
//!   lazy coset structures (geodesics, stars, barycenters, retractions).
//! - [`transplant`]: the amenable Γ-set `S`, vertex sets `S_v`, the
//!   projection to the subdivided tree and the barycentric transplant map
//!   on alternating cochains, with verification harnesses.
//! - [`quasimorphism`]: Rolli's cocycles on free products and the check
//!   that they are carried to transplanted coboundaries.
//! - [`seminorm`]: finite weighted chain complexes, θ-seminorms, mapping
//!   cones, duality and gluing, all solved by an exact rational simplex.
//!
//! Everything is exact: group exponents are arbitrary precision integers and
//! all cochain values and seminorms are [`Q`] rationals.

#![no_std]

extern crate alloc;

pub mod bass_serre;
mod error;
#[doc(hidden)]
pub mod fault;
pub mod instances;
mod intmat;
pub mod presentations;
pub mod quasimorphism;
pub mod rational;
pub mod seminorm;
pub mod transplant;

pub use error::{Error, Result};
pub use rational::Q;
