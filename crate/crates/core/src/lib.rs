//! Numerical and exact kernels for checking closed-form identities, together
//! with the built-in identity corpus.

// `!(x > y)` is used on purpose so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compensated;
pub mod constants;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod quad;
pub mod seqsum;
pub mod solve;
pub mod specfun;

pub use error::{Error, Result};
