//! Exact arithmetic in cyclotomic fields.

mod embed;
mod number;
pub mod poly;
mod residue;

pub use embed::GUARD_BITS;
pub use number::{ArithOp, CyclotomicNumber};
pub(crate) use number::greedy_generators;
pub use residue::{cyclotomic_factors_mod, ResidueReport, DEFAULT_SEED};
