//! Brute-force construction of the puzzle graph.
//!
//! Everything here is computed by enumerating states and generating legal
//! moves one by one, never through the closed-form counts, so the censuses
//! collected below are an independent witness for the formula side. The two
//! sides meet in [`verify`], which compares them field by field.
//!
//! A state maps each disc to a peg and is encoded as the base-p integer
//! Σ peg(d)·p^d with disc 0 the smallest. A peg's stack order is implied by
//! disc size, so the assignment is the whole state. Legal move: the top
//! (smallest) disc of a peg may go to any empty peg or onto any peg whose top
//! disc is larger.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::combinatorics::Count;
use crate::edge_census::edge_census;
use crate::error::{Error, Result};
use crate::mpolynomial::{m_polynomial, MPolynomial};
use crate::occupancy::{
    degree_value, occupancy_count, refined_count, HanoiParams, OccupancyProfile,
};

/// Default ceiling on p^n for oracle runs, about 160 MB of decode work.
pub const DEFAULT_STATE_CAP: u64 = 20_000_000;

/// Directed legal moves bucketed by source stack height (singleton or
/// multi-disc peg) and target status (empty or occupied). Each undirected
/// edge appears twice, once per direction; the buckets of the two directions
/// need not match, which is exactly what distinguishes the edge classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveTally {
    pub single_to_empty: u64,
    pub single_to_occupied: u64,
    pub multi_to_empty: u64,
    pub multi_to_occupied: u64,
}

impl MoveTally {
    fn merge(&mut self, other: MoveTally) {
        self.single_to_empty += other.single_to_empty;
        self.single_to_occupied += other.single_to_occupied;
        self.multi_to_empty += other.multi_to_empty;
        self.multi_to_occupied += other.multi_to_occupied;
    }

    fn directed_total(&self) -> u64 {
        self.single_to_empty + self.single_to_occupied + self.multi_to_empty
            + self.multi_to_occupied
    }
}

/// Everything the enumeration tallies. Counts are plain u64: the state cap
/// bounds vertices, and edge counts are at most C(p,2)·p^n/2 which stays in
/// range for any enumerable instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSummary {
    pub vertex_count: u64,
    /// degree → number of states.
    pub degree_histogram: BTreeMap<u64, u64>,
    /// (μ, ν) profile → number of states.
    pub refined_census: BTreeMap<OccupancyProfile, u64>,
    /// Sorted endpoint-degree pair → number of undirected edges.
    pub degree_pair_census: BTreeMap<(u64, u64), u64>,
    pub moves: MoveTally,
    /// μ → undirected edges joining occupancy μ to μ+1, keyed by the lower
    /// class. Tallied on the multi-to-empty direction so each edge counts
    /// once.
    pub cross_class: BTreeMap<u32, u64>,
    /// μ → directed within-class moves from states of occupancy μ. Both
    /// directions of such an edge land in the same key, so entries are even.
    pub within_class_directed: BTreeMap<u32, u64>,
    /// μ → directed single-disc-to-empty-peg moves, the within-class subset
    /// whose endpoints swap a singleton peg. Even for the same reason.
    pub single_move_directed: BTreeMap<u32, u64>,
}

fn halved(map: &BTreeMap<u32, u64>, what: &str) -> BTreeMap<u32, u64> {
    map.iter()
        .map(|(&mu, &c)| {
            assert!(c % 2 == 0, "{what} tally at occupancy {mu} is odd: {c}");
            (mu, c / 2)
        })
        .collect()
}

impl GraphSummary {
    /// Pointwise sum. Partitioning the state range and merging the partial
    /// summaries gives the same value as one pass, in any merge order.
    pub fn merge(&mut self, other: GraphSummary) {
        self.vertex_count += other.vertex_count;
        for (k, v) in other.degree_histogram {
            *self.degree_histogram.entry(k).or_default() += v;
        }
        for (k, v) in other.refined_census {
            *self.refined_census.entry(k).or_default() += v;
        }
        for (k, v) in other.degree_pair_census {
            *self.degree_pair_census.entry(k).or_default() += v;
        }
        self.moves.merge(other.moves);
        for (k, v) in other.cross_class {
            *self.cross_class.entry(k).or_default() += v;
        }
        for (k, v) in other.within_class_directed {
            *self.within_class_directed.entry(k).or_default() += v;
        }
        for (k, v) in other.single_move_directed {
            *self.single_move_directed.entry(k).or_default() += v;
        }
    }

    pub fn total_edges(&self) -> u64 {
        let directed = self.moves.directed_total();
        assert!(directed.is_multiple_of(2), "directed move count is odd");
        directed / 2
    }

    /// Single disc moved between a singleton peg and an empty peg.
    pub fn e1(&self) -> u64 {
        assert!(self.moves.single_to_empty.is_multiple_of(2));
        self.moves.single_to_empty / 2
    }

    /// Top of a multi-disc peg moved onto an occupied peg.
    pub fn e2(&self) -> u64 {
        assert!(self.moves.multi_to_occupied.is_multiple_of(2));
        self.moves.multi_to_occupied / 2
    }

    /// Top of a multi-disc peg moved to an empty peg; these are exactly the
    /// cross-class edges, and their reversals are exactly the
    /// singleton-onto-occupied moves.
    pub fn e3(&self) -> u64 {
        assert_eq!(self.moves.multi_to_empty, self.moves.single_to_occupied);
        self.moves.multi_to_empty
    }

    /// Undirected edges whose move lands on an occupied peg.
    pub fn a1(&self) -> u64 {
        let directed = self.moves.single_to_occupied + self.moves.multi_to_occupied;
        assert!(directed.is_multiple_of(2));
        directed / 2
    }

    /// Undirected edges whose move lands on an empty peg.
    pub fn a2(&self) -> u64 {
        let directed = self.moves.single_to_empty + self.moves.multi_to_empty;
        assert!(directed.is_multiple_of(2));
        directed / 2
    }

    /// μ → number of states with exactly μ occupied pegs.
    pub fn occupancy_census(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (profile, count) in &self.refined_census {
            *out.entry(profile.mu).or_default() += count;
        }
        out
    }

    pub fn within_class(&self) -> BTreeMap<u32, u64> {
        halved(&self.within_class_directed, "within-class")
    }

    pub fn single_move_class(&self) -> BTreeMap<u32, u64> {
        halved(&self.single_move_directed, "single-move")
    }

    pub fn to_m_polynomial(&self, params: HanoiParams) -> MPolynomial {
        MPolynomial::from_coefficients(
            params,
            self.degree_pair_census
                .iter()
                .map(|(&(i, j), &c)| ((i, j), Count::from(c))),
        )
    }
}

struct PegInfo {
    peg: u32,
    /// Smallest disc on the peg, i.e. the one free to move.
    top: usize,
    count: u32,
}

struct Enumerator {
    p: u64,
    n: usize,
    /// pows[d] = p^d; p ≥ 2 here so the cap keeps n ≤ 63.
    pows: Vec<u64>,
}

impl Enumerator {
    fn new(params: &HanoiParams) -> Self {
        let p = params.p() as u64;
        let n = params.n() as usize;
        let mut pows = Vec::with_capacity(n + 1);
        let mut acc = 1u64;
        for _ in 0..=n {
            pows.push(acc);
            acc = acc.saturating_mul(p);
        }
        Enumerator { p, n, pows }
    }

    fn occupied_pegs(&self, mut s: u64, occupied: &mut Vec<PegInfo>) {
        occupied.clear();
        for d in 0..self.n {
            let peg = (s % self.p) as u32;
            s /= self.p;
            match occupied.iter_mut().find(|info| info.peg == peg) {
                Some(info) => info.count += 1,
                None => occupied.push(PegInfo {
                    peg,
                    top: d,
                    count: 1,
                }),
            }
        }
    }

    /// Degree and occupancy of a state, by literally counting its legal
    /// moves: per source top, every empty peg plus every occupied peg with a
    /// larger top.
    fn degree_and_occupancy(&self, s: u64, occupied: &mut Vec<PegInfo>) -> (u64, u32) {
        self.occupied_pegs(s, occupied);
        let mu = occupied.len() as u32;
        let empty = self.p - mu as u64;
        let mut degree = 0u64;
        for src in occupied.iter() {
            degree += empty;
            degree += occupied
                .iter()
                .filter(|dst| dst.top > src.top)
                .count() as u64;
        }
        (degree, mu)
    }

    fn summarize(&self, lo: u64, hi: u64) -> GraphSummary {
        let mut summary = GraphSummary::default();
        let mut occupied: Vec<PegInfo> = Vec::with_capacity(self.n);
        let mut scratch: Vec<PegInfo> = Vec::with_capacity(self.n);
        let p32 = self.p as u32;

        for s in lo..hi {
            self.occupied_pegs(s, &mut occupied);
            let mu = occupied.len() as u32;
            let nu = occupied.iter().filter(|info| info.count == 1).count() as u32;
            summary.vertex_count += 1;
            *summary
                .refined_census
                .entry(OccupancyProfile { mu, nu })
                .or_default() += 1;

            let (own_degree, _) = self.degree_and_occupancy(s, &mut scratch);
            let mut degree = 0u64;
            for src in occupied.iter() {
                let pw = self.pows[src.top];
                let stripped = s - src.peg as u64 * pw;
                let single = src.count == 1;
                for dst_peg in 0..p32 {
                    let target = occupied.iter().find(|info| info.peg == dst_peg);
                    let legal = match target {
                        Some(info) => info.peg != src.peg && info.top > src.top,
                        None => true,
                    };
                    if !legal {
                        continue;
                    }
                    let target_empty = target.is_none();
                    degree += 1;
                    match (single, target_empty) {
                        (true, true) => {
                            summary.moves.single_to_empty += 1;
                            *summary.within_class_directed.entry(mu).or_default() += 1;
                            *summary.single_move_directed.entry(mu).or_default() += 1;
                        }
                        (true, false) => summary.moves.single_to_occupied += 1,
                        (false, true) => {
                            summary.moves.multi_to_empty += 1;
                            *summary.cross_class.entry(mu).or_default() += 1;
                        }
                        (false, false) => {
                            summary.moves.multi_to_occupied += 1;
                            *summary.within_class_directed.entry(mu).or_default() += 1;
                        }
                    }

                    let neighbor = stripped + dst_peg as u64 * pw;
                    if neighbor > s {
                        let (other_degree, other_mu) =
                            self.degree_and_occupancy(neighbor, &mut scratch);
                        let predicted_mu = match (single, target_empty) {
                            (true, true) | (false, false) => mu,
                            (true, false) => mu - 1,
                            (false, true) => mu + 1,
                        };
                        assert_eq!(other_mu, predicted_mu, "occupancy step at edge {s}-{neighbor}");
                        let gap = self.p - mu.max(other_mu) as u64;
                        let diff = own_degree.abs_diff(other_degree);
                        assert!(
                            diff == 0 || diff == gap,
                            "degree gap at edge {s}-{neighbor}: {diff} vs {gap}"
                        );
                        let key = if own_degree <= other_degree {
                            (own_degree, other_degree)
                        } else {
                            (other_degree, own_degree)
                        };
                        *summary.degree_pair_census.entry(key).or_default() += 1;
                    }
                }
            }

            assert_eq!(degree, own_degree, "move count at state {s}");
            assert_eq!(
                degree,
                degree_value(self.p, mu as u64),
                "degree law at state {s}"
            );
            *summary.degree_histogram.entry(degree).or_default() += 1;
        }
        summary
    }
}

fn empty_graph_summary() -> GraphSummary {
    GraphSummary::default()
}

fn single_peg_summary(params: &HanoiParams) -> GraphSummary {
    let mut summary = GraphSummary {
        vertex_count: 1,
        ..GraphSummary::default()
    };
    summary.degree_histogram.insert(0, 1);
    let nu = if params.n() == 1 { 1 } else { 0 };
    summary
        .refined_census
        .insert(OccupancyProfile { mu: 1, nu }, 1);
    summary
}

fn checked_states(params: &HanoiParams, cap: u64) -> Result<u64> {
    let states = params.state_count();
    if states > Count::from(cap) {
        return Err(Error::StateCapExceeded {
            states: states.to_string(),
            cap,
        });
    }
    // Fits because the cap does.
    Ok(states.to_u64().expect("bounded by cap"))
}

/// Census a sub-range [lo, hi) of the state encodings. Intended for
/// order-independence checks and parallel partitioning; merging the pieces
/// reproduces `brute_force_summary` exactly.
pub fn summarize_range(params: &HanoiParams, cap: u64, lo: u64, hi: u64) -> Result<GraphSummary> {
    let states = checked_states(params, cap)?;
    if params.n() == 0 {
        return Ok(empty_graph_summary());
    }
    if params.p() == 1 {
        let mut summary = single_peg_summary(params);
        if lo > 0 || hi == 0 {
            summary = GraphSummary::default();
        }
        return Ok(summary);
    }
    let hi = hi.min(states);
    let enumerator = Enumerator::new(params);
    Ok(enumerator.summarize(lo.min(hi), hi))
}

/// Enumerate the whole graph and tally every census, subject to `cap` on the
/// number of states. With zero discs this returns the empty summary: the
/// degree-spectrum convention treats that graph as empty rather than as one
/// discless state.
pub fn brute_force_summary(params: &HanoiParams, cap: u64) -> Result<GraphSummary> {
    let states = checked_states(params, cap)?;
    summarize_range(params, cap, 0, states)
}

/// One compared quantity in a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

/// Outcome of comparing the closed-form predictions against the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: HanoiParams,
    pub states_enumerated: u64,
    pub edges_enumerated: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }
}

fn fmt_map<K: std::fmt::Display, V: std::fmt::Display>(
    entries: impl IntoIterator<Item = (K, V)>,
) -> String {
    let mut out = String::from("{");
    for (idx, (k, v)) in entries.into_iter().enumerate() {
        if idx > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{k}: {v}");
    }
    out.push('}');
    out
}

fn fmt_pair_map<V: std::fmt::Display>(
    entries: impl IntoIterator<Item = ((u64, u64), V)>,
) -> String {
    fmt_map(entries.into_iter().map(|((i, j), v)| (format!("({i},{j})"), v)))
}

/// Compare every closed-form census against the brute-force one. Mismatches
/// become failed checks, not errors; only resource limits error out.
pub fn verify(params: &HanoiParams, cap: u64) -> Result<VerificationReport> {
    let summary = brute_force_summary(params, cap)?;
    let poly = m_polynomial(params)?;
    let census = edge_census(params)?;
    let r = params.r();

    let mut checks = Vec::new();
    let mut push = |name: &'static str, expected: String, actual: String| {
        checks.push(CheckResult {
            name,
            expected,
            actual,
        });
    };

    let formula_vertices = if params.n() == 0 {
        Count::from(0u32)
    } else {
        params.state_count()
    };
    push(
        "vertices",
        formula_vertices.to_string(),
        summary.vertex_count.to_string(),
    );

    let mut occupancy = BTreeMap::new();
    for mu in 1..=r {
        occupancy.insert(mu, occupancy_count(params, mu)?);
    }
    push(
        "occupancy census",
        fmt_map(occupancy.iter().map(|(k, v)| (k, v.to_string()))),
        fmt_map(summary.occupancy_census()),
    );

    let mut refined = BTreeMap::new();
    for mu in 1..=r {
        for nu in 0..=mu {
            let profile = OccupancyProfile { mu, nu };
            if profile.realizable(params) {
                refined.insert((mu, nu), refined_count(params, mu, nu)?);
            }
        }
    }
    push(
        "refined occupancy census",
        fmt_map(refined.iter().map(|(&(mu, nu), v)| (format!("({mu},{nu})"), v.to_string()))),
        fmt_map(
            summary
                .refined_census
                .iter()
                .map(|(prof, v)| (format!("({},{})", prof.mu, prof.nu), v.to_string())),
        ),
    );

    let mut histogram: BTreeMap<u64, Count> = BTreeMap::new();
    for (&mu, count) in &occupancy {
        let degree = degree_value(params.p() as u64, mu as u64);
        *histogram.entry(degree).or_default() += count;
    }
    push(
        "degree histogram",
        fmt_map(histogram.iter().map(|(k, v)| (k, v.to_string()))),
        fmt_map(summary.degree_histogram.iter().map(|(&k, v)| (k, v))),
    );

    push(
        "degree pair census",
        fmt_pair_map(poly.terms().iter().map(|(&k, v)| (k, v.to_string()))),
        fmt_pair_map(summary.degree_pair_census.iter().map(|(&k, &v)| (k, v))),
    );

    push(
        "total edges",
        census.total.to_string(),
        summary.total_edges().to_string(),
    );
    push("block a1", census.a1.to_string(), summary.a1().to_string());
    push("block a2", census.a2.to_string(), summary.a2().to_string());
    push(
        "single-to-empty edges e1",
        census.e1.to_string(),
        summary.e1().to_string(),
    );
    push(
        "multi-to-occupied edges e2",
        census.e2.to_string(),
        summary.e2().to_string(),
    );
    push(
        "multi-to-empty edges e3",
        census.e3.to_string(),
        summary.e3().to_string(),
    );

    // The closed-form census lists every class, including empty ones; the
    // enumeration only creates keys it increments. Compare without zeros.
    let nonzero = |map: &BTreeMap<u32, Count>| {
        fmt_map(
            map.iter()
                .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                .map(|(&k, v)| (k, v.to_string()))
                .collect::<Vec<_>>(),
        )
    };
    push(
        "cross-class edges",
        nonzero(&census.cross),
        fmt_map(summary.cross_class.iter().map(|(&k, &v)| (k, v))),
    );
    push(
        "within-class edges",
        nonzero(&census.within),
        fmt_map(summary.within_class().iter().map(|(&k, &v)| (k, v))),
    );
    push(
        "single-move class edges",
        nonzero(&census.e1_class),
        fmt_map(summary.single_move_class().iter().map(|(&k, &v)| (k, v))),
    );

    Ok(VerificationReport {
        params: *params,
        states_enumerated: summary.vertex_count,
        edges_enumerated: summary.total_edges(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, n: u32) -> HanoiParams {
        HanoiParams::new(p, n).unwrap()
    }

    #[test]
    fn worked_example_census() {
        let s = brute_force_summary(&params(4, 2), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(s.vertex_count, 16);
        assert_eq!(s.total_edges(), 36);
        assert_eq!(s.degree_pair_census[&(3, 5)], 12);
        assert_eq!(s.degree_pair_census[&(5, 5)], 24);
        assert_eq!(s.moves.single_to_empty, 48);
        assert_eq!(s.moves.single_to_occupied, 12);
        assert_eq!(s.moves.multi_to_empty, 12);
        assert_eq!(s.moves.multi_to_occupied, 0);
        assert_eq!(s.e1(), 24);
        assert_eq!(s.e2(), 0);
        assert_eq!(s.e3(), 12);
        assert_eq!(s.a1(), 6);
        assert_eq!(s.a2(), 30);
    }

    #[test]
    fn larger_fixture_census() {
        let s = brute_force_summary(&params(4, 7), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(s.vertex_count, 16384);
        assert_eq!(s.total_edges(), 48768);
        assert_eq!(s.degree_pair_census[&(6, 6)], 45444);
    }

    #[test]
    fn handshake_identity() {
        let s = brute_force_summary(&params(5, 4), DEFAULT_STATE_CAP).unwrap();
        let degree_sum: u64 = s.degree_histogram.iter().map(|(d, c)| d * c).sum();
        assert_eq!(degree_sum, 2 * s.total_edges());
        let pair_sum: u64 = s.degree_pair_census.values().sum();
        assert_eq!(pair_sum, s.total_edges());
    }

    #[test]
    fn verification_passes_on_small_grid() {
        for p in 1..=5u32 {
            for n in 0..=5u32 {
                let report = verify(&params(p, n), DEFAULT_STATE_CAP).unwrap();
                assert!(
                    report.passed(),
                    "p={p} n={n}: {:?}",
                    report.checks.iter().filter(|c| !c.ok()).collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn range_partition_merges_to_whole() {
        let h = params(3, 5);
        let whole = brute_force_summary(&h, DEFAULT_STATE_CAP).unwrap();
        let states = 3u64.pow(5);
        for split in [1, 7, 81, 121, 242] {
            let mut merged = summarize_range(&h, DEFAULT_STATE_CAP, 0, split).unwrap();
            merged.merge(summarize_range(&h, DEFAULT_STATE_CAP, split, states).unwrap());
            assert_eq!(merged, whole, "split at {split}");
        }
        // Order independence of the merge itself.
        let mut reversed = summarize_range(&h, DEFAULT_STATE_CAP, 100, states).unwrap();
        reversed.merge(summarize_range(&h, DEFAULT_STATE_CAP, 0, 100).unwrap());
        assert_eq!(reversed, whole);
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_force_summary(&params(5, 12), 1_000).unwrap_err();
        match err {
            Error::StateCapExceeded { states, cap } => {
                assert_eq!(states, 5u64.pow(12).to_string());
                assert_eq!(cap, 1_000);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn degenerate_instances() {
        let zero = brute_force_summary(&params(4, 0), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(zero.vertex_count, 0);
        assert!(zero.degree_pair_census.is_empty());
        assert!(verify(&params(4, 0), DEFAULT_STATE_CAP).unwrap().passed());

        let lone = brute_force_summary(&params(1, 6), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(lone.vertex_count, 1);
        assert_eq!(lone.degree_histogram[&0], 1);
        assert_eq!(lone.total_edges(), 0);
        assert!(verify(&params(1, 6), DEFAULT_STATE_CAP).unwrap().passed());

        // Two pegs: a path on 2^n vertices, so 2^(n-1)... edges only at n=1;
        // for n discs the graph is 1-regular with 2^(n-1) disjoint edges.
        let pair = brute_force_summary(&params(2, 5), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(pair.vertex_count, 32);
        assert_eq!(pair.total_edges(), 16);
        assert_eq!(pair.degree_histogram[&1], 32);
    }

    #[test]
    fn oracle_polynomial_matches_closed_form() {
        for p in 2..=5u32 {
            for n in 1..=4u32 {
                let h = params(p, n);
                let summary = brute_force_summary(&h, DEFAULT_STATE_CAP).unwrap();
                assert_eq!(
                    summary.to_m_polynomial(h),
                    m_polynomial(&h).unwrap(),
                    "p={p} n={n}"
                );
            }
        }
    }
}
