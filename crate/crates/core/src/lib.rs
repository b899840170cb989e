//! Lifting finite algebras through monoidal monads.
//!
//! The crate computes with finite sets only. A [`monads::Monad`] acts on
//! finite sets through explicit element encodings, a
//! [`algebra::FinAlgebra`] is a set of operation tables, and lifting an
//! algebra through a monad gives the algebra on `TA` whose operations are
//! `Tσ ∘ ψⁿ`. On top of that sit the preservation checker, the structural
//! property checks, and the monoid-presentation tools.

pub mod algebra;
pub mod error;
pub mod finite;
pub mod monads;
pub mod par;
pub mod presentations;
pub mod preserve;
pub mod props;
pub mod reproduce;
pub mod terms;

pub use error::{Error, ParseError, Result};
