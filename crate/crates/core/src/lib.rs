//! Exact computer algebra for monoidal comonads and their coalgebras.
//!
//! - [`linalg`]: Smith normal form, Diophantine systems, unimodular inverses.
//! - [`ab`]: finitely generated abelian groups, tensor, hom, duals.
//! - [`graded`]: graded groups and chain complexes, the cofree and sum comonads,
//!   fusion maps, created duals.
//! - [`fincat`]: tabulated finite monoidal categories with comonads, EM categories,
//!   Kan extension search.
//! - [`report`], [`corpus`], [`sweep`]: verdicts, deterministic corpora, parallel sweeps.

pub mod ab;
pub mod corpus;
pub mod error;
pub mod fincat;
pub mod graded;
pub mod int;
pub mod linalg;
mod memo;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use int::Int;
