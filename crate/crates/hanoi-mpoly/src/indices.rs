//! Degree-based topological indices extracted from an M-polynomial.
//!
//! Every index is a sum over edge classes of a rational function of the
//! endpoint degrees, so all ten families stay exact; only the general Randić
//! pair evaluated at a fractional exponent leaves ℚ and is carried in
//! binary64. Two independent evaluation routes are provided: the direct
//! edge-class sums, and the classical operator pipelines over the
//! polynomial. They must agree, which is one of the crate's standing
//! cross-checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::combinatorics::{Count, Exact};
use crate::error::{Error, Result};
use crate::mpolynomial::{m_polynomial, MPolynomial};
use crate::occupancy::{degree_of_occupancy, occupancy_count, HanoiParams};
use crate::scalar::{count_to_exact, exact_to_count, Scalar};

/// Exponent of a general Randić index.
pub type Alpha = num_rational::Rational64;

/// Exact power guard: integer Randić exponents beyond this magnitude are
/// evaluated in binary64 instead of exactly, to keep memory bounded.
const MAX_EXACT_POWER: i64 = 4096;

/// The αs every report carries unless the caller asks for others.
pub fn default_alphas() -> Vec<Alpha> {
    vec![
        Alpha::from_integer(1),
        Alpha::from_integer(-1),
        Alpha::new(1, 2),
        Alpha::new(-1, 2),
    ]
}

/// All indices of one instance. Integer-valued families are counts, the
/// rational families exact rationals; `r_alpha`/`rr_alpha` hold one value
/// per requested exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    /// First Zagreb: Σ (i+j).
    pub m1: Count,
    /// Second Zagreb: Σ ij.
    pub m2: Count,
    /// Forgotten index: Σ (i²+j²).
    pub f: Count,
    /// Modified second Zagreb: Σ 1/(ij).
    pub mm2: Exact,
    /// Symmetric division degree: Σ (i²+j²)/(ij).
    pub ssd: Exact,
    /// Harmonic: Σ 2/(i+j).
    pub h: Exact,
    /// Inverse sum indeg: Σ ij/(i+j).
    pub isi: Exact,
    /// Augmented Zagreb: Σ (ij/(i+j−2))³, with edges of degree pair (1,1)
    /// contributing zero.
    pub a: Exact,
    /// General Randić: Σ (ij)^α per requested α.
    pub r_alpha: BTreeMap<Alpha, Scalar>,
    /// Inverse general Randić: Σ (ij)^{−α} per requested α.
    pub rr_alpha: BTreeMap<Alpha, Scalar>,
}

fn product_power(base: u64, alpha: Alpha) -> Scalar {
    debug_assert!(base >= 1);
    if alpha.is_integer() {
        let a = *alpha.numer();
        if a.abs() <= MAX_EXACT_POWER {
            let q = Exact::from_integer(BigInt::from(base)).pow(a as i32);
            return Scalar::Exact(q);
        }
    }
    Scalar::Approx((base as f64).powf(*alpha.numer() as f64 / *alpha.denom() as f64))
}

/// Direct evaluation: fold the defining edge-class sums.
pub fn indices_direct(poly: &MPolynomial, alphas: &[Alpha]) -> IndexReport {
    let wanted: BTreeSet<Alpha> = alphas.iter().copied().collect();
    let mut m1 = Count::zero();
    let mut m2 = Count::zero();
    let mut f = Count::zero();
    let mut mm2 = Exact::zero();
    let mut ssd = Exact::zero();
    let mut h = Exact::zero();
    let mut isi = Exact::zero();
    let mut a = Exact::zero();
    let mut r_alpha: BTreeMap<Alpha, Scalar> =
        wanted.iter().map(|&al| (al, Scalar::zero())).collect();
    let mut rr_alpha = r_alpha.clone();

    for (&(i, j), count) in poly.terms() {
        let sum = i + j;
        let product = i * j;
        m1 += count * Count::from(sum);
        m2 += count * Count::from(product);
        f += count * Count::from(i * i + j * j);

        let c = count_to_exact(count);
        let sum_q = Exact::from_integer(BigInt::from(sum));
        let product_q = Exact::from_integer(BigInt::from(product));
        let squares_q = Exact::from_integer(BigInt::from(i * i + j * j));
        mm2 += &c / &product_q;
        ssd += &c * &squares_q / &product_q;
        h += &c * Exact::new(BigInt::from(2), BigInt::from(sum));
        isi += &c * &product_q / &sum_q;
        if sum > 2 {
            let ratio = Exact::new(BigInt::from(product), BigInt::from(sum - 2));
            a += &c * ratio.pow(3i32);
        }

        for (&al, acc) in r_alpha.iter_mut() {
            *acc = acc.clone() + product_power(product, al).mul_exact(&c);
        }
        for (&al, acc) in rr_alpha.iter_mut() {
            *acc = acc.clone() + product_power(product, -al).mul_exact(&c);
        }
    }

    IndexReport {
        m1,
        m2,
        f,
        mm2,
        ssd,
        h,
        isi,
        a,
        r_alpha,
        rr_alpha,
    }
}

fn scalar_to_count(s: Scalar, what: &str) -> Result<Count> {
    s.as_exact()
        .and_then(exact_to_count)
        .ok_or_else(|| Error::Internal(format!("{what} is not a nonnegative integer")))
}

fn scalar_to_exact(s: Scalar, what: &str) -> Result<Exact> {
    s.as_exact()
        .cloned()
        .ok_or_else(|| Error::Internal(format!("{what} left exact arithmetic")))
}

/// Operator evaluation: run the classical pipelines over the polynomial and
/// read each index off at x = y = 1.
///
/// * M1 = (Dx + Dy),  M2 = Dx Dy,  F = (Dx² + Dy²)
/// * mM2 = Sx Sy,  R_α = Dx^α Dy^α,  RR_α = Sx^α Sy^α
/// * SSD = Dx Sy + Dy Sx,  H = 2 Sx J,  ISI = Sx J Dx Dy
/// * A = Sx³ Q₋₂ J Dx³ Dy³, dropping the terms Q₋₂ sends to exponent zero
pub fn indices_via_operators(poly: &MPolynomial, alphas: &[Alpha]) -> Result<IndexReport> {
    let wanted: BTreeSet<Alpha> = alphas.iter().copied().collect();
    let g = poly.to_general();
    let three = Exact::from_integer(BigInt::from(3));
    let two = Exact::from_integer(BigInt::from(2));

    let m1 = scalar_to_count(
        g.dx().value_at_unit() + g.dy().value_at_unit(),
        "first Zagreb",
    )?;
    let m2 = scalar_to_count(g.dx().dy().value_at_unit(), "second Zagreb")?;
    let f = scalar_to_count(
        g.dx_pow(&two)?
            .value_at_unit()
             + g.dy_pow(&two)?.value_at_unit(),
        "forgotten index",
    )?;
    let mm2 = scalar_to_exact(g.sx()?.sy()?.value_at_unit(), "modified second Zagreb")?;
    let ssd = scalar_to_exact(
        g.dx().sy()?.value_at_unit() + g.dy().sx()?.value_at_unit(),
        "symmetric division degree",
    )?;
    let h = scalar_to_exact(g.diagonal().sx()?.value_at_unit(), "harmonic")? * &two;
    let isi = scalar_to_exact(
        g.dy().dx().diagonal().sx()?.value_at_unit(),
        "inverse sum indeg",
    )?;
    let a = scalar_to_exact(
        g.dy_pow(&three)?
            .dx_pow(&three)?
            .diagonal()
            .shift_x(&Exact::from_integer(BigInt::from(-2)))
            .sx_pow_dropping_singular(&three)?
            .value_at_unit(),
        "augmented Zagreb",
    )?;

    let mut r_alpha = BTreeMap::new();
    let mut rr_alpha = BTreeMap::new();
    for &al in &wanted {
        let aq = alpha_to_exact(al);
        r_alpha.insert(al, g.dx_pow(&aq)?.dy_pow(&aq)?.value_at_unit());
        rr_alpha.insert(al, g.sx_pow(&aq)?.sy_pow(&aq)?.value_at_unit());
    }

    Ok(IndexReport {
        m1,
        m2,
        f,
        mm2,
        ssd,
        h,
        isi,
        a,
        r_alpha,
        rr_alpha,
    })
}

pub fn alpha_to_exact(alpha: Alpha) -> Exact {
    Exact::new(BigInt::from(*alpha.numer()), BigInt::from(*alpha.denom()))
}

/// First Zagreb from the vertex side, Σ_v deg(v)² = Σ_μ O(μ) f(μ)². Equals
/// the edge-side M1 on these graphs and serves as an extra consistency hook.
pub fn vertex_form_first_zagreb(params: &HanoiParams) -> Result<Count> {
    let mut acc = Count::zero();
    for mu in 1..=params.r() {
        let d = degree_of_occupancy(params, mu)?;
        acc += occupancy_count(params, mu)? * &d * &d;
    }
    Ok(acc)
}

/// Integer sequences read along a one-parameter family of instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sequence {
    /// M1(H(3,k)), k ≥ 1
    M1ThreePegs,
    /// M2(H(3,k))
    M2ThreePegs,
    /// floor(mM2(H(3,k)))
    FloorMm2ThreePegs,
    /// SSD(H(3,k)), integral on this family
    SsdThreePegs,
    /// floor(H(H(3,k)))
    FloorHThreePegs,
    /// M1(H(k,1))
    M1OneDisc,
    /// M2(H(k,1))
    M2OneDisc,
    /// SSD(H(k,1)), integral on this family
    SsdOneDisc,
    /// F(H(k,1))
    FOneDisc,
    /// floor(mM2(H(k,3)))
    FloorMm2ThreeDiscs,
    /// ceil(mM2(H(k,3)))
    CeilMm2ThreeDiscs,
}

impl Sequence {
    pub const ALL: [Sequence; 11] = [
        Sequence::M1ThreePegs,
        Sequence::M2ThreePegs,
        Sequence::FloorMm2ThreePegs,
        Sequence::SsdThreePegs,
        Sequence::FloorHThreePegs,
        Sequence::M1OneDisc,
        Sequence::M2OneDisc,
        Sequence::SsdOneDisc,
        Sequence::FOneDisc,
        Sequence::FloorMm2ThreeDiscs,
        Sequence::CeilMm2ThreeDiscs,
    ];

    pub fn slug(&self) -> &'static str {
        match self {
            Sequence::M1ThreePegs => "m1-h3k",
            Sequence::M2ThreePegs => "m2-h3k",
            Sequence::FloorMm2ThreePegs => "floor-mm2-h3k",
            Sequence::SsdThreePegs => "ssd-h3k",
            Sequence::FloorHThreePegs => "floor-h-h3k",
            Sequence::M1OneDisc => "m1-hk1",
            Sequence::M2OneDisc => "m2-hk1",
            Sequence::SsdOneDisc => "ssd-hk1",
            Sequence::FOneDisc => "f-hk1",
            Sequence::FloorMm2ThreeDiscs => "floor-mm2-hk3",
            Sequence::CeilMm2ThreeDiscs => "ceil-mm2-hk3",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Sequence::M1ThreePegs => "first Zagreb index of H(3,k)",
            Sequence::M2ThreePegs => "second Zagreb index of H(3,k)",
            Sequence::FloorMm2ThreePegs => "floor of the modified second Zagreb index of H(3,k)",
            Sequence::SsdThreePegs => "symmetric division degree index of H(3,k)",
            Sequence::FloorHThreePegs => "floor of the harmonic index of H(3,k)",
            Sequence::M1OneDisc => "first Zagreb index of H(k,1)",
            Sequence::M2OneDisc => "second Zagreb index of H(k,1)",
            Sequence::SsdOneDisc => "symmetric division degree index of H(k,1)",
            Sequence::FOneDisc => "forgotten index of H(k,1)",
            Sequence::FloorMm2ThreeDiscs => "floor of the modified second Zagreb index of H(k,3)",
            Sequence::CeilMm2ThreeDiscs => "ceil of the modified second Zagreb index of H(k,3)",
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sequence::ALL
            .iter()
            .copied()
            .find(|seq| seq.slug() == s)
            .ok_or_else(|| Error::UnknownSequence(s.to_string()))
    }
}

fn floor_to_count(q: &Exact) -> Result<Count> {
    if q.is_negative() {
        return Err(Error::Internal(format!("negative sequence value {q}")));
    }
    q.floor()
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Internal("floor of a nonnegative rational".into()))
}

fn ceil_to_count(q: &Exact) -> Result<Count> {
    if q.is_negative() {
        return Err(Error::Internal(format!("negative sequence value {q}")));
    }
    q.ceil()
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Internal("ceil of a nonnegative rational".into()))
}

fn sequence_term(seq: Sequence, k: u32) -> Result<Count> {
    let params = match seq {
        Sequence::M1ThreePegs
        | Sequence::M2ThreePegs
        | Sequence::FloorMm2ThreePegs
        | Sequence::SsdThreePegs
        | Sequence::FloorHThreePegs => HanoiParams::new(3, k)?,
        Sequence::M1OneDisc | Sequence::M2OneDisc | Sequence::SsdOneDisc | Sequence::FOneDisc => {
            HanoiParams::new(k, 1)?
        }
        Sequence::FloorMm2ThreeDiscs | Sequence::CeilMm2ThreeDiscs => HanoiParams::new(k, 3)?,
    };
    let report = indices_direct(&m_polynomial(&params)?, &[]);
    match seq {
        Sequence::M1ThreePegs | Sequence::M1OneDisc => Ok(report.m1),
        Sequence::M2ThreePegs | Sequence::M2OneDisc => Ok(report.m2),
        Sequence::FOneDisc => Ok(report.f),
        Sequence::SsdThreePegs | Sequence::SsdOneDisc => {
            exact_to_count(&report.ssd).ok_or_else(|| {
                Error::Internal(format!("symmetric division degree {} is not integral", report.ssd))
            })
        }
        Sequence::FloorMm2ThreePegs | Sequence::FloorMm2ThreeDiscs => floor_to_count(&report.mm2),
        Sequence::CeilMm2ThreeDiscs => ceil_to_count(&report.mm2),
        Sequence::FloorHThreePegs => floor_to_count(&report.h),
    }
}

/// First `terms` values of the sequence, for k = 1, 2, …
pub fn oeis_sequence(seq: Sequence, terms: u32) -> Result<Vec<Count>> {
    (1..=terms).map(|k| sequence_term(seq, k)).collect()
}
