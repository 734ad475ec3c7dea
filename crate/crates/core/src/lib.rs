#![forbid(unsafe_code)]

//! Analytics and simulation for longest-chain (proof-of-work) protocols whose
//! block propagation delay is exponentially distributed.
//!
//! The crate answers three design questions about such a chain:
//!
//! * how likely is it that a transaction confirmed at depth `k` is later
//!   displaced from the longest chain ([`seclat`]),
//! * how many transactions per second can the mempool queue sustain, with and
//!   without adversarial interference ([`queue`]), and
//! * how do the two interact when the transaction has to wait in a backlogged
//!   mempool before entering a block ([`mempool`]).
//!
//! Every analytic quantity is cross-checked by a seeded, deterministic Monte
//! Carlo simulator ([`sim`]), and parameter grids for tables and figures are
//! produced by [`sweep`].

pub mod dist;
pub mod error;
mod exec;
pub mod mempool;
pub mod params;
pub mod queue;
pub mod seclat;
pub mod sim;
pub mod sweep;

pub use dist::Pmf;
pub use error::Error;
pub use params::{ChainParams, NetworkModel};
pub use seclat::{BoundKind, SafetyReport};

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
