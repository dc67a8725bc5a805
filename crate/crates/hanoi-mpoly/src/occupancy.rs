//! Occupancy structure of the puzzle state space.
//!
//! A state of the p-peg, n-disc puzzle assigns each disc to a peg. Its
//! occupancy μ is the number of nonempty pegs, and every state of occupancy μ
//! has the same vertex degree: one legal move onto each of the p−μ empty pegs
//! from each nonempty peg top that is allowed to go there, which telescopes
//! to f(μ) = C(p,2) − C(p−μ,2). This module exposes that degree law together
//! with exact counts of states by occupancy (and by number of singleton pegs,
//! the refinement that edge counting needs).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinatorics::{
    binomial, falling_factorial, stirling2, stirling2_assoc2, Count,
};
use crate::error::{Error, Result};

/// Problem instance: `p` pegs and `n` discs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HanoiParams {
    p: u32,
    n: u32,
}

impl HanoiParams {
    /// At least one peg is required; any number of discs (including zero,
    /// which yields the empty graph) is accepted.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidPegCount);
        }
        Ok(HanoiParams { p, n })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest attainable occupancy, min{n, p}. Derived on demand so it can
    /// never disagree with `p` and `n`.
    pub fn r(&self) -> u32 {
        self.n.min(self.p)
    }

    /// p^n, the number of states.
    pub fn state_count(&self) -> Count {
        num_traits::Pow::pow(Count::from(self.p), self.n)
    }

    pub(crate) fn check_mu(&self, mu: u32) -> Result<()> {
        if mu < 1 || mu > self.r() {
            return Err(Error::OccupancyOutOfRange {
                mu,
                r: self.r(),
                p: self.p,
                n: self.n,
            });
        }
        Ok(())
    }
}

/// Occupancy profile of a state: μ occupied pegs, ν of them singletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupancyProfile {
    pub mu: u32,
    pub nu: u32,
}

impl OccupancyProfile {
    /// Whether any state of the given instance has this profile. The μ−ν
    /// multiton pegs need at least two discs each, so n − ν ≥ 2(μ−ν); when
    /// every occupied peg is a singleton the remaining disc count must be
    /// exactly zero.
    pub fn realizable(&self, params: &HanoiParams) -> bool {
        let (mu, nu, n) = (self.mu, self.nu, params.n());
        if mu < 1 || mu > params.r() || nu > mu || nu > n {
            return false;
        }
        if mu == nu {
            n == nu
        } else {
            n - nu >= 2 * (mu - nu)
        }
    }
}

pub(crate) fn degree_value(p: u64, mu: u64) -> u64 {
    let tri = |x: u64| x * x.saturating_sub(1) / 2;
    tri(p) - tri(p - mu)
}

/// Vertex degree shared by all states of occupancy `mu`:
/// f(μ) = C(p,2) − C(p−μ,2).
pub fn degree_of_occupancy(params: &HanoiParams, mu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    Ok(Count::from(degree_value(params.p() as u64, mu as u64)))
}

/// The distinct degrees of an instance, with the occupancies that attain
/// each. The map is degenerate in exactly one way: when n ≥ p, occupancies
/// p−1 and p share the top degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpectrum {
    degrees: Vec<u64>,
    classes: BTreeMap<u64, Vec<u32>>,
}

impl DegreeSpectrum {
    /// Distinct degree values in increasing order.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.degrees.first().copied()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.degrees.last().copied()
    }

    /// Occupancies whose states have the given degree, in increasing order.
    pub fn occupancies_at(&self, degree: u64) -> &[u32] {
        self.classes.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Degree spectrum of the instance; empty when n = 0 (the graph has no
/// vertices under the convention used throughout this crate).
pub fn degree_spectrum(params: &HanoiParams) -> DegreeSpectrum {
    let mut classes: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for mu in 1..=params.r() {
        let d = degree_value(params.p() as u64, mu as u64);
        classes.entry(d).or_default().push(mu);
    }
    DegreeSpectrum {
        degrees: classes.keys().copied().collect(),
        classes,
    }
}

/// Number of states with exactly `mu` occupied pegs:
/// O(μ) = {n, μ} · p·(p−1)·…·(p−μ+1).
pub fn occupancy_count(params: &HanoiParams, mu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    let blocks = stirling2(params.n() as u64, mu as u64)?;
    Ok(blocks * falling_factorial(params.p() as u64, mu as u64)?)
}

/// Number of states with `mu` occupied pegs of which `nu` are singletons:
/// O(ν|μ) = C(n,ν) · {n−ν, μ−ν}₂ · p·(p−1)·…·(p−μ+1).
pub fn refined_count(params: &HanoiParams, mu: u32, nu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    if nu > mu {
        return Err(Error::SingletonOutOfRange { nu, mu });
    }
    let n = params.n() as u64;
    let choose = binomial(n, nu as u64)?;
    if choose.is_zero() {
        return Ok(Count::zero());
    }
    let multitons = stirling2_assoc2(n - nu as u64, (mu - nu) as u64)?;
    Ok(choose * multitons * falling_factorial(params.p() as u64, mu as u64)?)
}
