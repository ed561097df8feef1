//! Dual-domain linear-programming decoding of LDPC codes.
//!
//! The LP relaxation of maximum-likelihood decoding is attacked through its
//! dual, whose variables live on the edges of the Tanner graph. This crate
//! provides
//!
//! - [`dual`]: the dual state, soft-min message arithmetic, objective,
//!   `{0,?,1}` decisions and optimality certificates,
//! - [`ascent`]: coordinate ascent with the closed-form soft update and the
//!   hard interval update,
//! - [`subgradient`]: incremental subgradient ascent,
//! - [`baseline`]: flooding min-sum and sum-product decoders,
//! - [`oracle`]: brute-force ML, an exact small-instance LP solver and other
//!   ground truth for tests.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]
// `!(x > 0.0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ascent;
pub mod baseline;
pub mod channel;
pub mod code;
pub mod dual;
mod error;
pub mod oracle;
pub mod softmin;
pub mod subgradient;

pub use ascent::{AscentConfig, DecodeReport, IntervalPick, Schedule};
pub use channel::LlrVector;
pub use code::ParityCheckMatrix;
pub use dual::{Certificate, DualState, Ternary, TernaryDecision};
pub use error::{CodeError, DecodeError, OracleError};
pub use softmin::Temperature;
