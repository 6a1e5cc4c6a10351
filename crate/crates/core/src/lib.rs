//! Achievable rates of simple transmission schemes over SISO Gaussian
//! interference channels.
//!
//! The crate covers three channel models:
//!
//! * the two-user symmetric channel `Y1 = √P·X1 + √(aP)·X2 + Z1` (and its mirror),
//! * the two-user asymmetric channel with powers `P1 ≥ P2` and cross gains `a1, a2`,
//! * the K-user symmetric channel where every receiver sees `K − 1` interferers at `aP`.
//!
//! For each model it classifies the interference regime and evaluates the
//! symmetric (or sum) rate of point-to-point codes with treating-interference-
//! as-noise or joint decoding, TDMA, and the fixed common/private split scheme
//! of Etkin, Tse and Wang. Closed forms are paired with brute-force oracles,
//! and [`verify`] checks the comparison theorems on parameter grids.
//!
//! All rates are in bits per channel use; SNR `P` and ISR `a` are linear.
//!
//! Grid and sample evaluation runs on rayon when the `parallel` feature is on
//! (the default) and falls back to plain iterators otherwise. Reductions are
//! always performed sequentially in input order, so results are bit-identical
//! regardless of thread count.

// Parameter checks use `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod format;
pub mod numerics;
pub mod par;
pub mod rates2;
pub mod rates_k;
pub mod sweep;
pub mod verify;

pub use channel::{Channel2Asym, Channel2Sym, ChannelKSym, Regime2, RegimeAsym, RegimeK};
pub use error::{Error, Result};
pub use par::Exec;
pub use rates2::{ActiveBound, RateResult, Scheme};
