//! Finite-field arithmetic, matrices and column twisted Reed-Solomon codes.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
pub mod matrix;
pub mod certify;
pub mod codec;
pub mod construct;
pub mod poly;
pub mod reference;
pub mod subgroup;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use matrix::Matrix;
pub use subgroup::Subgroup;
pub use construct::{CodeSpec, Family, FiveStepChoices, Regime, Shape, SpecParts};
