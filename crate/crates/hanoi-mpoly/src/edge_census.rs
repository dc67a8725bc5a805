//! Exact edge counts of the puzzle graph, partitioned three ways.
//!
//! Let O(μ) count states with μ occupied pegs and O(ν|μ) those with ν
//! singleton pegs among the μ. Three partitions of the edge set have closed
//! forms in these counts:
//!
//! * by move target: edges whose move lands on an occupied peg (`a1`) versus
//!   an empty peg (`a2`);
//! * by move kind: singleton-to-empty (`e1`, occupancy preserved),
//!   multiton-to-occupied (`e2`, occupancy preserved), and multiton-to-empty
//!   (`e3`, occupancy raised by one);
//! * by occupancy class of the endpoints: edges inside class μ (`within`)
//!   and edges joining class μ to class μ+1 (`cross`, which are exactly the
//!   `e3` edges split by class).
//!
//! `within` has no per-class closed form of its own; it is recovered from
//! the degree sum of the class after peeling off cross-class incidences,
//! which is why this module checks parity and nonnegativity instead of
//! clamping.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{CheckedSub, Zero};

use crate::combinatorics::Count;
use crate::error::{Error, Result};
use crate::occupancy::{degree_value, occupancy_count, refined_count, HanoiParams};

/// Every edge total this crate knows how to compute, assembled in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCensus {
    pub total: Count,
    /// Edges whose move targets an occupied peg.
    pub a1: Count,
    /// Edges whose move targets an empty peg.
    pub a2: Count,
    /// Singleton-to-empty edges (both endpoints in the same class).
    pub e1: Count,
    /// Multiton-to-occupied edges (both endpoints in the same class).
    pub e2: Count,
    /// Multiton-to-empty edges (endpoints in adjacent classes).
    pub e3: Count,
    /// cross[μ]: edges between class μ and class μ+1, for 1 ≤ μ ≤ r.
    pub cross: BTreeMap<u32, Count>,
    /// within[μ]: edges with both endpoints in class μ.
    pub within: BTreeMap<u32, Count>,
    /// e1_class[μ]: singleton-to-empty edges inside class μ.
    pub e1_class: BTreeMap<u32, Count>,
}

fn exact_half(x: Count, what: &str) -> Result<Count> {
    if x.is_odd() {
        return Err(Error::Internal(format!("{what} is odd: {x}")));
    }
    Ok(x >> 1)
}

fn exact_quarter(x: Count, what: &str) -> Result<Count> {
    let (q, rem) = x.div_rem(&Count::from(4u32));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("{what} is not divisible by 4: {x}")));
    }
    Ok(q)
}

/// |E| = (1/4) Σ_μ μ(2p−μ−1) O(μ).
pub fn total_edges(params: &HanoiParams) -> Result<Count> {
    let p = params.p() as u64;
    let mut acc = Count::zero();
    for mu in 1..=params.r() {
        let m = mu as u64;
        acc += occupancy_count(params, mu)? * Count::from(m * (2 * p - m - 1));
    }
    exact_quarter(acc, "edge total degree sum")
}

/// (a1, a2): edges by move target, occupied versus empty. From any state of
/// occupancy μ exactly one move runs between each pair of occupied pegs
/// (smaller top onto larger), and one onto each empty peg from each occupied
/// peg top, hence (1/2)ΣC(μ,2)O(μ) and (1/2)Σμ(p−μ)O(μ).
pub fn block_counts(params: &HanoiParams) -> Result<(Count, Count)> {
    let p = params.p() as u64;
    let mut towards_occupied = Count::zero();
    let mut towards_empty = Count::zero();
    for mu in 1..=params.r() {
        let m = mu as u64;
        let o = occupancy_count(params, mu)?;
        towards_occupied += &o * Count::from(m * (m - 1) / 2);
        towards_empty += o * Count::from(m * (p - m));
    }
    Ok((
        exact_half(towards_occupied, "occupied-target incidence sum")?,
        exact_half(towards_empty, "empty-target incidence sum")?,
    ))
}

/// Edges between class μ and class μ+1. Each comes from moving the top of a
/// multiton peg to one of the p−μ empty pegs, counted once from its lower
/// endpoint: cross(μ) = (p−μ) Σ_ν (μ−ν) O(ν|μ).
pub fn cross_class_edges(params: &HanoiParams, mu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    let p = params.p() as u64;
    let m = mu as u64;
    let mut acc = Count::zero();
    for nu in 0..=mu {
        let multitons = (m - nu as u64) * (p - m);
        if multitons == 0 {
            continue;
        }
        acc += refined_count(params, mu, nu)? * Count::from(multitons);
    }
    Ok(acc)
}

/// Singleton-to-empty edges inside class μ:
/// e1_class(μ) = (1/2)(p−μ) Σ_ν ν O(ν|μ).
pub fn e1_class_edges(params: &HanoiParams, mu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    let p = params.p() as u64;
    let m = mu as u64;
    let mut acc = Count::zero();
    for nu in 1..=mu {
        acc += refined_count(params, mu, nu)? * Count::from(nu as u64 * (p - m));
    }
    exact_half(acc, "singleton-to-empty incidence sum")
}

/// Edges with both endpoints in class μ, recovered by degree-sum balancing:
/// the class's total incidence O(μ)f(μ) minus its cross-class incidences
/// cross(μ−1) + cross(μ) must be even and nonnegative; half of it is the
/// within-class edge count. A violation is reported, never clamped.
pub fn within_class_edges(params: &HanoiParams, mu: u32) -> Result<Count> {
    params.check_mu(mu)?;
    let p = params.p() as u64;
    let incidence = occupancy_count(params, mu)? * Count::from(degree_value(p, mu as u64));
    let mut outward = cross_class_edges(params, mu)?;
    if mu > 1 {
        outward += cross_class_edges(params, mu - 1)?;
    }
    let bracket = incidence.checked_sub(&outward).ok_or_else(|| Error::BalanceViolation {
        mu,
        reason: format!("cross-class incidences {outward} exceed class degree sum"),
    })?;
    if bracket.is_odd() {
        return Err(Error::BalanceViolation {
            mu,
            reason: format!("residual incidence {bracket} is odd"),
        });
    }
    Ok(bracket >> 1)
}

/// (e1, e2, e3): edges by move kind. e1 and e3 have direct closed forms;
/// e2 is the exact remainder total − e1 − e3.
pub fn move_type_counts(params: &HanoiParams) -> Result<(Count, Count, Count)> {
    let mut e1 = Count::zero();
    let mut e3 = Count::zero();
    for mu in 1..=params.r() {
        e1 += e1_class_edges(params, mu)?;
        e3 += cross_class_edges(params, mu)?;
    }
    let total = total_edges(params)?;
    let e2 = total
        .checked_sub(&(&e1 + &e3))
        .ok_or_else(|| Error::Internal(format!("e1 + e3 = {} exceeds edge total {total}", &e1 + &e3)))?;
    Ok((e1, e2, e3))
}

/// Assemble every count in one structure.
pub fn edge_census(params: &HanoiParams) -> Result<EdgeCensus> {
    let (a1, a2) = block_counts(params)?;
    let (e1, e2, e3) = move_type_counts(params)?;
    let mut cross = BTreeMap::new();
    let mut within = BTreeMap::new();
    let mut e1_class = BTreeMap::new();
    for mu in 1..=params.r() {
        cross.insert(mu, cross_class_edges(params, mu)?);
        within.insert(mu, within_class_edges(params, mu)?);
        e1_class.insert(mu, e1_class_edges(params, mu)?);
    }
    Ok(EdgeCensus {
        total: total_edges(params)?,
        a1,
        a2,
        e1,
        e2,
        e3,
        cross,
        within,
        e1_class,
    })
}
