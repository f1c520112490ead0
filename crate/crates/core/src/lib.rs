pub mod analysis;
pub mod arith;
pub mod cyclotomic;
pub mod euler;
pub mod error;
pub mod ffpoly;
pub mod fields;
pub mod group_ring;
pub mod interval;
pub mod json;
pub mod lattice;
pub mod rational;

pub use cyclotomic::{ArithOp, CyclotomicNumber};
pub use error::{Error, Result};
pub use euler::{
    coleman_odd, coleman_system, cyclotomic_system, trivial_system, FiniteEulerSystem, PairMode, VerifyOptions,
};
pub use fields::{subfields, AbelianField, GaloisGroup};
pub use group_ring::{CycElement, GroupRingElement, IntElement, RatElement};
