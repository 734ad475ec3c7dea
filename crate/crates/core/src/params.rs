//! Protocol parameters and the algebraic identities among them.
//!
//! Everything downstream consumes these fields, so the identities are checked
//! at construction instead of being assumed.

use serde::{Deserialize, Serialize};

use crate::error::{require, Error};
use crate::Result;

/// Immutable bundle of protocol and adversary rates.
///
/// * `alpha` — honest fraction of the total mining power, in `(0, 1]`,
/// * `mu1` — rate of the exponential block-propagation delay (1/seconds),
/// * `mu2` — block mining rate (1/seconds),
///
/// plus the derived quantities used throughout the analysis:
/// `beta = 1 - alpha`, the fork rate `kappa = mu2 / mu1`, the probability
/// `sigma = mu1 / (mu1 + mu2)` that a pending block is published before the
/// next mining event (and `rho = 1 - sigma`), and the primed variants
/// `sigma_prime = mu1 / (mu1 + mu2 * beta)`, `rho_prime = 1 - sigma_prime`
/// where only adversarial mining competes with the delay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainParams {
    pub alpha: f64,
    pub beta: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub kappa: f64,
    pub sigma: f64,
    pub rho: f64,
    pub sigma_prime: f64,
    pub rho_prime: f64,
}

impl ChainParams {
    /// Builds the parameter set from the three free quantities.
    ///
    /// Rejects non-finite or out-of-range inputs. `alpha = 1` is permitted
    /// (no adversary; `sigma_prime = 1`).
    pub fn derive(alpha: f64, mu1: f64, mu2: f64) -> Result<Self> {
        require(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]")?;
        require(mu1.is_finite() && mu1 > 0.0, "mu1 must be a positive finite rate")?;
        require(mu2.is_finite() && mu2 > 0.0, "mu2 must be a positive finite rate")?;
        let beta = 1.0 - alpha;
        let sigma = mu1 / (mu1 + mu2);
        let sigma_prime = mu1 / (mu1 + mu2 * beta);
        Ok(ChainParams {
            alpha,
            beta,
            mu1,
            mu2,
            kappa: mu2 / mu1,
            sigma,
            rho: 1.0 - sigma,
            sigma_prime,
            rho_prime: 1.0 - sigma_prime,
        })
    }

    /// Same parameters with `(mu1, mu2)` rescaled to `(1, kappa)`. The
    /// dimensionless fields are unchanged, which is what makes the fork rate
    /// a scale-free safety parameter.
    pub fn normalized(&self) -> Self {
        // Cannot fail: kappa > 0 whenever the original parameters were valid.
        ChainParams::derive(self.alpha, 1.0, self.kappa).expect("valid params stay valid")
    }
}

/// Linear model of propagation delay as a function of block size:
/// `delay(b) = b / c + delta0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    /// Network speed in transactions per second.
    pub c: f64,
    /// Base propagation delay in seconds.
    pub delta0: f64,
}

impl NetworkModel {
    pub fn new(c: f64, delta0: f64) -> Result<Self> {
        require(c.is_finite() && c > 0.0, "network speed c must be positive")?;
        require(delta0.is_finite() && delta0 >= 0.0, "delta0 must be nonnegative")?;
        Ok(NetworkModel { c, delta0 })
    }

    /// Mean propagation delay of a block holding `b` transactions.
    pub fn delay(&self, b: u32) -> f64 {
        f64::from(b) / self.c + self.delta0
    }

    /// Delay rate `g(b) = 1 / delay(b)`.
    pub fn delay_rate(&self, b: u32) -> f64 {
        1.0 / self.delay(b)
    }
}

/// Delay rate such that `P(delay <= delay_value) = percentile` under an
/// exponential delay, i.e. `-ln(1 - percentile) / delay_value`.
pub fn mu1_from_percentile(delay_value: f64, percentile: f64) -> Result<f64> {
    require(delay_value.is_finite() && delay_value > 0.0, "delay value must be positive")?;
    require(
        percentile.is_finite() && percentile > 0.0 && percentile < 1.0,
        "percentile must be in (0, 1)",
    )?;
    Ok(-(1.0 - percentile).ln() / delay_value)
}

/// Expected time for a block to reach depth `k`: `k / mu2` seconds.
pub fn expected_confirmation_latency(k: u32, mu2: f64) -> Result<f64> {
    require(k >= 1, "confirmation depth must be at least 1")?;
    require(mu2.is_finite() && mu2 > 0.0, "mu2 must be a positive finite rate")?;
    Ok(f64::from(k) / mu2)
}
