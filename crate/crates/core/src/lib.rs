//! Exact Cauchy-matrix and min-matrix identities.
//!
//! Closed forms for the Cauchy matrix `C = (1 / (xᵢ + yⱼ))` (determinant,
//! inverse, inverse and adjugate entry sums, bordered determinant) and the
//! min matrix `F = (min(xᵢ, yⱼ))` (inverse entry and column sums,
//! determinant), each paired with a generic dense oracle in [`densela`].
//! Arithmetic is exact over ℚ or a prime field; [`canary`] repeats the
//! inversion in `f64` to show how quickly it degrades.

pub mod canary;
pub mod cauchy;
pub mod cli;
pub mod densela;
pub mod error;
pub mod minmat;
pub mod random;
pub mod ring;
pub mod spec_io;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{RingContext, Scalar};
