//! Permutation groups inside wreath products `Sym(q) wr Sym(m)` acting on
//! `Π = {0..q}^m` in product action: coordinate components, normalizing
//! base elements, embeddings into `G wr H`, and code canonicalization.

pub mod cli;
pub mod codes;
pub mod components;
pub mod error;
pub mod normalize;
pub mod perm;
pub mod textio;
pub mod wreath;

pub use error::{Error, Hypothesis, Result};
