//! Diversity-multiplexing tradeoff analysis for MIMO multihop relay
//! channels.
//!
//! The crate has two halves. The analytic half ([`dmt`], [`reduction`],
//! [`recursion`], [`partition`]) computes exact tradeoff curves, channel
//! reductions and relay partitions with integer/rational arithmetic. The
//! simulation half ([`sim`], [`stbc`]) draws Rayleigh hop matrices, builds
//! the end-to-end channel of each relaying scheme and estimates outage and
//! codeword error rates with reproducible, worker-count-invariant Monte
//! Carlo.

pub mod cli;
pub mod dmt;
pub mod partition;
pub mod recursion;
pub mod reduction;
pub mod sim;
pub mod stbc;
