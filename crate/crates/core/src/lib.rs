//! Rational cohomology bookkeeping for circle actions on spaces of Toda type.
//!
//! The crate is organised bottom-up:
//!
//! - [`graded`]: Poincaré polynomials and the wedge/join/product rules.
//! - [`ring`]: graded-commutative ring presentations and their additive ranks.
//! - [`space`]: the space-expression tree, its Poincaré polynomial and the
//!   type-(a,b) labels.
//! - [`chains`]: finite simplicial models with exact rational homology, used
//!   as an independent oracle for [`space`].
//! - [`equivariant`]: circle-action combinators, fixed-point sets, and the
//!   rank/Euler-characteristic consistency checks.
//! - [`classify`]: constraint enumeration of admissible fixed-point-set types.
//! - [`degree`]: degree and bidegree computations for explicit sphere maps.
//! - [`dsl`]: a small parser and printer for space and action expressions.
//! - [`sample`]: seeded random expressions for the randomized checks.
//! - [`cli`]: the command runner behind the `s1fix` binary.

pub mod chains;
pub mod classify;
pub mod cli;
pub mod degree;
pub mod dsl;
pub mod equivariant;
mod error;
mod exact;
pub mod graded;
pub mod ring;
pub mod sample;
pub mod space;

pub use error::{Error, ParseErrorKind, Result};
