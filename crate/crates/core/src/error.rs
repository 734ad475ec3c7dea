//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input parameter is outside its mathematical domain.
    #[error("parameter out of domain: {0}")]
    ParamDomain(String),

    /// The adversary's lead escapes to infinity: no stationary lead exists
    /// for these parameters, so no finite-confirmation guarantee can be made.
    #[error(
        "lead chain not positive recurrent (alpha = {alpha}, kappa = {kappa}): \
         requires alpha > 1/(2 - kappa) for the upper bound"
    )]
    NotPositiveRecurrent { alpha: f64, kappa: f64 },

    /// The requested violation threshold cannot be met at any mining rate.
    #[error(
        "violation threshold {threshold} unreachable at k = {k}: \
         the bound stays above it even as the fork rate vanishes"
    )]
    ThresholdUnreachable { k: u32, threshold: f64 },

    /// Arrival rate at or above the batch-service stability threshold.
    #[error("queue unstable: lambda = {lambda} >= threshold {threshold}")]
    Unstable { lambda: f64, threshold: f64 },

    /// A truncated computation hit its size cap before reaching the
    /// requested tail tolerance.
    #[error("truncation failed: {0}")]
    TruncationFailure(String),

    /// The selfish miner controls the whole longest chain; honest fraction
    /// of the chain is zero.
    #[error("selfish miner dominates the chain (stationary racing mass <= 0)")]
    SelfishDominates,

    /// A convolution result would exceed the hard support-length cap.
    #[error("pmf support overflow: result length {len} exceeds cap {cap}")]
    SupportOverflow { len: usize, cap: usize },

    /// A sweep specification is inconsistent or incomplete.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    /// A config document could not be applied.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::ParamDomain(msg.into())
    }
}

/// Rejects non-finite or out-of-range values with a uniform message.
pub(crate) fn require(cond: bool, msg: &str) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(msg))
    }
}
