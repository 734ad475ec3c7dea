//! Truncated discrete probability vectors.
//!
//! Infinite-support distributions (geometric-type tails) are materialized
//! until the accumulated mass reaches `1 - tol`; whatever is left is carried
//! around explicitly as `tail_mass` so that tail probabilities can always be
//! reported conservatively. All operations are pure; values are immutable
//! after construction.

use std::io::Write;

use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// Default cap on materialized / convolved support length.
pub const SUPPORT_CAP: usize = 10_000_000;

/// A probability mass function on a contiguous integer support
/// `offset ..= offset + probs.len() - 1`, plus the mass `tail_mass` beyond
/// the truncation point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pmf {
    offset: i64,
    probs: Vec<f64>,
    tail_mass: f64,
    tol: f64,
}

impl Pmf {
    /// Wraps an explicit probability vector. The tail mass is defined as
    /// `1 - sum(probs)` and must not exceed `tol`; trailing and leading zeros
    /// are trimmed (adjusting the offset).
    pub fn from_probs(offset: i64, probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::domain("pmf entries must be finite and nonnegative"));
        }
        let sum: f64 = probs.iter().sum();
        if sum > 1.0 + 1e-10 {
            return Err(Error::domain("pmf mass exceeds 1"));
        }
        let tail = (1.0 - sum).max(0.0);
        if tail > tol + 1e-12 {
            return Err(Error::TruncationFailure(format!(
                "tail mass {tail:.3e} exceeds tolerance {tol:.3e}"
            )));
        }
        let mut pmf = Pmf { offset, probs, tail_mass: tail, tol };
        pmf.trim();
        if pmf.probs.is_empty() {
            return Err(Error::domain("pmf must have at least one positive entry"));
        }
        Ok(pmf)
    }

    /// All mass at a single point.
    pub fn point_mass(value: i64) -> Self {
        Pmf { offset: value, probs: vec![1.0], tail_mass: 0.0, tol: 0.0 }
    }

    /// Materializes `f(0), f(1), ...` starting at `offset` until the
    /// cumulative mass reaches `1 - tol` and at least `min_len` entries
    /// exist. Fails with [`Error::TruncationFailure`] if `max_len` entries
    /// do not suffice.
    pub fn materialize<F>(offset: i64, tol: f64, min_len: usize, max_len: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize) -> f64,
    {
        let mut probs = Vec::new();
        let mut cum = 0.0;
        loop {
            if probs.len() >= max_len {
                return Err(Error::TruncationFailure(format!(
                    "mass {cum:.17} after {max_len} entries, needed 1 - {tol:.3e}"
                )));
            }
            let p = f(probs.len());
            if !p.is_finite() || p < -1e-15 {
                return Err(Error::domain("materialized pmf entry must be finite and nonnegative"));
            }
            cum += p.max(0.0);
            probs.push(p.max(0.0));
            if cum >= 1.0 - tol && probs.len() >= min_len {
                break;
            }
        }
        let mut pmf = Pmf { offset, probs, tail_mass: (1.0 - cum).max(0.0), tol };
        pmf.trim();
        Ok(pmf)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Probability at an absolute support point (zero outside the truncated
    /// range).
    pub fn prob_at(&self, point: i64) -> f64 {
        let idx = point - self.offset;
        if idx < 0 || idx as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[idx as usize]
        }
    }

    /// Mass captured by the truncated part.
    pub fn truncated_mass(&self) -> f64 {
        1.0 - self.tail_mass
    }

    /// Mean of the truncated part (tail mass contributes nothing).
    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| (self.offset + i as i64) as f64 * p)
            .sum()
    }

    /// `P(X >= threshold)`, counting the whole tail mass as above the
    /// threshold. The result therefore upper-bounds the true tail.
    pub fn tail_prob(&self, threshold: i64) -> f64 {
        let start = (threshold - self.offset).max(0) as usize;
        let entries: f64 = self.probs.iter().skip(start).sum();
        entries + self.tail_mass
    }

    /// Exact discrete convolution of the truncated parts.
    pub fn convolve(&self, other: &Pmf) -> Result<Pmf> {
        self.convolve_capped(other, SUPPORT_CAP)
    }

    pub(crate) fn convolve_capped(&self, other: &Pmf, cap: usize) -> Result<Pmf> {
        let len = self.probs.len() + other.probs.len() - 1;
        if len > cap {
            return Err(Error::SupportOverflow { len, cap });
        }
        let mut out = vec![0.0; len];
        for (i, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            for (j, &q) in other.probs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        let sum: f64 = out.iter().sum();
        let tail = (1.0 - sum).max(self.tail_mass.max(other.tail_mass));
        let mut pmf = Pmf {
            offset: self.offset + other.offset,
            probs: out,
            tail_mass: tail,
            tol: (self.tol + other.tol).max(tail),
        };
        pmf.trim();
        Ok(pmf)
    }

    /// Total variation distance over the union support, counting half of
    /// each tail mass.
    pub fn total_variation(&self, other: &Pmf) -> f64 {
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.probs.len() as i64).max(other.offset + other.probs.len() as i64);
        let mut acc = 0.0;
        for point in lo..hi {
            acc += (self.prob_at(point) - other.prob_at(point)).abs();
        }
        0.5 * acc + 0.5 * (self.tail_mass + other.tail_mass)
    }

    /// Writes `support_point,probability` lines. Debug/plotting format, not
    /// a stable interface.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "support_point,probability")?;
        for (i, p) in self.probs.iter().enumerate() {
            writeln!(w, "{},{}", self.offset + i as i64, p)?;
        }
        Ok(())
    }

    fn trim(&mut self) {
        while self.probs.last() == Some(&0.0) {
            self.probs.pop();
        }
        let lead = self.probs.iter().take_while(|p| **p == 0.0).count();
        if lead > 0 && lead < self.probs.len() {
            self.probs.drain(..lead);
            self.offset += lead as i64;
        }
    }
}

/// Exact split of `P(X_1 + ... + X_n >= threshold)` for pmfs with
/// nonnegative support.
///
/// `at_least` is the mass provably at or above the threshold using truncated
/// entries only; `below` is the mass provably below it. The remainder
/// `1 - below - at_least` involves at least one tail and cannot be placed.
/// An upper bound on the sum's tail probability is therefore
/// `1 - below`, a lower bound is `at_least`; the upper bound coincides with
/// `convolve`-then-`tail_prob` while keeping every intermediate support
/// shorter than the threshold.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SumThresholdSplit {
    pub below: f64,
    pub at_least: f64,
}

impl SumThresholdSplit {
    pub fn upper(&self) -> f64 {
        (1.0 - self.below).clamp(0.0, 1.0)
    }

    pub fn lower(&self) -> f64 {
        self.at_least.clamp(0.0, 1.0)
    }

    /// Mass that could not be attributed to either side (tail combinations).
    pub fn unresolved(&self) -> f64 {
        (1.0 - self.below - self.at_least).max(0.0)
    }
}

pub(crate) fn sum_threshold_split(parts: &[&Pmf], threshold: i64) -> SumThresholdSplit {
    debug_assert!(parts.iter().all(|p| p.offset() >= 0));
    if threshold <= 0 {
        // Nonnegative supports: every combination of truncated entries is at
        // or above the threshold.
        let at_least = parts.iter().map(|p| p.truncated_mass()).product();
        return SumThresholdSplit { below: 0.0, at_least };
    }
    let cap = threshold as usize;
    // `below[v]` is the probability that the partial sum equals v < threshold.
    let mut below = vec![0.0; cap];
    below[0] = 1.0;
    let mut at_least = 0.0;
    for part in parts {
        let suffix = suffix_sums(part.probs());
        let mut next = vec![0.0; cap];
        let mut hit = at_least * part.truncated_mass();
        for (v, &p) in below.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            // First index of `part` that pushes the sum to >= threshold.
            let cut = (threshold - v as i64 - part.offset()).max(0) as usize;
            let cut = cut.min(part.len());
            for (j, &q) in part.probs()[..cut].iter().enumerate() {
                next[v + (part.offset() as usize) + j] += p * q;
            }
            hit += p * suffix[cut];
        }
        below = next;
        at_least = hit;
    }
    SumThresholdSplit { below: below.iter().sum(), at_least }
}

fn suffix_sums(probs: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        out[i] = out[i + 1] + probs[i];
    }
    out
}

/// Geometric law on {0, 1, ...} with success probability `success`,
/// truncated at `tol`: `P(X = n) = success * (1 - success)^n`.
pub fn geometric(success: f64, tol: f64) -> Result<Pmf> {
    if !(success.is_finite() && success > 0.0 && success <= 1.0) {
        return Err(Error::domain("geometric success probability must be in (0, 1]"));
    }
    let failure = 1.0 - success;
    let mut term = success;
    Pmf::materialize(0, tol, 1, SUPPORT_CAP, |n| {
        if n == 0 {
            term
        } else {
            term *= failure;
            term
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn point_mass_is_identity_for_convolution() {
        let x = geometric(0.5, 1e-12).unwrap();
        let id = Pmf::point_mass(0);
        let y = id.convolve(&x).unwrap();
        assert_eq!(y.offset(), x.offset());
        assert_eq!(y.len(), x.len());
        for (a, b) in y.probs().iter().zip(x.probs()) {
            assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn point_masses_add_offsets() {
        let z = Pmf::point_mass(2).convolve(&Pmf::point_mass(3)).unwrap();
        assert_eq!(z.offset(), 5);
        assert_eq!(z.probs(), &[1.0]);
        assert_eq!(z.tail_mass(), 0.0);
    }

    #[test]
    fn geometric_squared_is_negative_binomial() {
        let g = geometric(0.5, 1e-12).unwrap();
        let nb = g.convolve(&g).unwrap();
        // Closed-form oracle: P(N = n) = (n + 1) p^2 q^n for r = 2.
        for (n, &p) in nb.probs().iter().enumerate() {
            let expect = (n as f64 + 1.0) * 0.25 * 0.5f64.powi(n as i32);
            assert!((p - expect).abs() <= 1e-12, "entry {n}: {p} vs {expect}");
        }
    }

    #[test]
    fn tail_prob_examples() {
        let pm = Pmf::point_mass(0);
        assert_eq!(pm.tail_prob(1), 0.0 + pm.tail_mass());

        let g = geometric(0.5, 1e-12).unwrap();
        assert!((g.tail_prob(g.offset()) - 1.0).abs() <= 1e-10);
        assert!((g.tail_prob(3) - 0.125).abs() <= 1e-10);
    }

    #[test]
    fn tail_prob_at_end_equals_tail_mass() {
        let g = geometric(0.3, 1e-9).unwrap();
        let end = g.offset() + g.len() as i64;
        assert_eq!(g.tail_prob(end), g.tail_mass());
    }

    #[test]
    fn total_variation_examples() {
        let g = geometric(0.5, 1e-13).unwrap();
        assert_eq!(0.5 * (g.tail_mass() + g.tail_mass()), g.total_variation(&g));

        let a = Pmf::point_mass(0);
        let b = Pmf::point_mass(1);
        assert_eq!(a.total_variation(&b), 1.0);

        // Independent direct-summation oracle.
        let h = geometric(0.25, 1e-13).unwrap();
        let mut direct = 0.0;
        for n in 0..200i64 {
            let pg = 0.5 * 0.5f64.powi(n as i32);
            let ph = 0.25 * 0.75f64.powi(n as i32);
            direct += 0.5 * (pg - ph).abs();
        }
        let tv = g.total_variation(&h);
        assert!((tv - direct).abs() <= 1e-12, "{tv} vs {direct}");
    }

    #[test]
    fn convolve_respects_support_cap() {
        let flat = Pmf::from_probs(0, vec![0.25; 4], 0.0).unwrap();
        assert!(matches!(
            flat.convolve_capped(&flat, 5),
            Err(Error::SupportOverflow { len: 7, cap: 5 })
        ));
    }

    #[test]
    fn materialize_enforces_cap() {
        let r = Pmf::materialize(0, 1e-15, 1, 8, |_| 0.01);
        assert!(matches!(r, Err(Error::TruncationFailure(_))));
    }

    #[test]
    fn from_probs_validates() {
        assert!(Pmf::from_probs(0, vec![0.5, 0.6], 0.0).is_err());
        assert!(Pmf::from_probs(0, vec![0.5, -0.1], 1.0).is_err());
        assert!(Pmf::from_probs(0, vec![0.5], 1e-3).is_err()); // tail 0.5 > tol
        let p = Pmf::from_probs(1, vec![0.0, 0.5, 0.5, 0.0], 0.0).unwrap();
        assert_eq!(p.offset(), 2);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn sum_threshold_split_matches_convolve_route() {
        let a = geometric(0.4, 1e-13).unwrap();
        let b = geometric(0.7, 1e-13).unwrap();
        for threshold in [0i64, 1, 3, 10, 40] {
            let split = sum_threshold_split(&[&a, &b, &a], threshold);
            let conv = a.convolve(&b).unwrap().convolve(&a).unwrap();
            let upper = conv.tail_prob(threshold);
            assert!(
                (split.upper() - upper).abs() <= 1e-12,
                "threshold {threshold}: {} vs {upper}",
                split.upper()
            );
            assert!(split.lower() <= split.upper() + 1e-15);
            assert!(split.unresolved() <= a.tail_mass() * 2.0 + b.tail_mass() + 1e-12);
        }
    }

    fn arb_pmf() -> impl Strategy<Value = Pmf> {
        (1usize..12, 0i64..6).prop_flat_map(|(n, off)| {
            (proptest::collection::vec(1e-3..1.0f64, n), Just(off)).prop_map(|(w, off)| {
                let total: f64 = w.iter().sum();
                // Leave a small explicit tail so tail handling is exercised.
                let scale = (1.0 - 1e-6) / total;
                let probs: Vec<f64> = w.iter().map(|x| x * scale).collect();
                Pmf::from_probs(off, probs, 2e-6).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn convolution_commutes(a in arb_pmf(), b in arb_pmf()) {
            let ab = a.convolve(&b).unwrap();
            let ba = b.convolve(&a).unwrap();
            prop_assert_eq!(ab.offset(), ba.offset());
            for (x, y) in ab.probs().iter().zip(ba.probs()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn convolution_is_associative(a in arb_pmf(), b in arb_pmf(), c in arb_pmf()) {
            let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
            let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
            prop_assert_eq!(left.offset(), right.offset());
            for (x, y) in left.probs().iter().zip(right.probs()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn tail_prob_is_nonincreasing(a in arb_pmf()) {
            let lo = a.offset() - 1;
            let hi = a.offset() + a.len() as i64 + 1;
            let mut prev = f64::INFINITY;
            for t in lo..=hi {
                let cur = a.tail_prob(t);
                prop_assert!(cur <= prev + 1e-15);
                prev = cur;
            }
        }

        #[test]
        fn convolution_tail_dominates_inputs(a in arb_pmf(), b in arb_pmf()) {
            let c = a.convolve(&b).unwrap();
            prop_assert!(c.tail_mass() + 1e-15 >= a.tail_mass().max(b.tail_mass()));
            let total: f64 = c.probs().iter().sum::<f64>() + c.tail_mass();
            prop_assert!((total - 1.0).abs() <= 1e-10);
        }
    }
}
