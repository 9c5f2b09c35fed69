//! Exact constructions around the glued lattice `L12 = (A2⊕A2⊕D4) + glue(A2⊕A2)`
//! and the aperiodic ten-dimensional packing `Q10` cut from it.
//!
//! Every norm, depth, count and distance is computed in exact arithmetic over
//! ℚ or ℚ(√3); floating point appears only in SVG rendering, display, and a conservative
//! candidate prefilter during patch generation whose survivors are decided exactly.
//!
//! Module map:
//! - [`exactnum`]: rationals, ℚ(√3), LDLᵀ.
//! - [`lattice`]: Gram lattices, Fincke–Pohst enumeration, depths Δ and counts τ.
//! - [`glue`]: the 36-element glue group, its 48 symmetries, orbit tables for L8 and L4.
//! - [`laminate`]: L8, L4 and the glued lattice L12 (kissing number, densities, Gram export).
//! - [`project`]: the invariant-plane split of L4, forbidden vectors, the minimal-vector lemma scan.
//! - [`windowq`]: the dodecagonal window, patches of Q10, packing certificates, the 378 configuration,
//!   density and tiling.
//! - [`report`]: the recomputed tables as text, CSV or JSON.

pub mod error;
pub mod exactnum;
pub mod glue;
pub mod laminate;
pub mod lattice;
pub mod project;
pub mod report;
pub mod windowq;

pub use error::{Error, Result};
pub use exactnum::{q, qs, ExactScalar, Rational};
