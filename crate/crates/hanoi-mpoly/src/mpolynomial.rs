//! The M-polynomial M(x, y) = Σ m_{ij} x^i y^j, where m_{ij} counts edges
//! whose endpoint degrees are {i, j}, together with the operator calculus
//! that turns it into topological indices.
//!
//! Coefficients are assembled per occupancy class: cross-class edges land on
//! the key (f(μ), f(μ+1)) and within-class edges on (f(μ), f(μ)). Keys are
//! concrete degree values, so when the two highest occupancies share the top
//! degree their contributions merge by construction instead of by a special
//! case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::combinatorics::{stirling2, Count, Exact};
use crate::edge_census::{cross_class_edges, within_class_edges};
use crate::error::{Error, Result};
use crate::occupancy::{degree_value, occupancy_count, refined_count, HanoiParams};
use crate::scalar::{count_to_exact, exact_to_f64, Scalar};

/// Edge-degree generating polynomial with exact nonnegative coefficients.
/// Term keys are ordered degree pairs (i ≤ j); zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPolynomial {
    params: HanoiParams,
    terms: BTreeMap<(u64, u64), Count>,
}

impl MPolynomial {
    /// Build from explicit coefficients, normalizing key order and dropping
    /// zeros. Lets an independently assembled edge census (for instance the
    /// brute-force one) flow into the same index machinery.
    pub fn from_coefficients<I>(params: HanoiParams, coeffs: I) -> Self
    where
        I: IntoIterator<Item = ((u64, u64), Count)>,
    {
        let mut terms: BTreeMap<(u64, u64), Count> = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let key = if i <= j { (i, j) } else { (j, i) };
            *terms.entry(key).or_insert_with(Count::zero) += c;
        }
        MPolynomial { params, terms }
    }

    pub fn params(&self) -> HanoiParams {
        self.params
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), Count> {
        &self.terms
    }

    pub fn coefficient(&self, i: u64, j: u64) -> Count {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.terms.get(&key).cloned().unwrap_or_else(Count::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// M(1, 1): the number of edges.
    pub fn edge_count(&self) -> Count {
        self.terms.values().sum()
    }

    pub fn to_general(&self) -> GeneralPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                (
                    (exact_from_u64(i), exact_from_u64(j)),
                    Scalar::Exact(count_to_exact(c)),
                )
            })
            .collect();
        GeneralPolynomial { terms }
    }
}

impl fmt::Display for MPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("{c}\u{b7}x^{i}\u{b7}y^{j}"))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// M-polynomial of the instance from the exact class censuses.
pub fn m_polynomial(params: &HanoiParams) -> Result<MPolynomial> {
    let p = params.p() as u64;
    let mut coeffs = Vec::new();
    for mu in 1..=params.r() {
        let d = degree_value(p, mu as u64);
        coeffs.push(((d, d), within_class_edges(params, mu)?));
        if mu < params.r() {
            let up = degree_value(p, mu as u64 + 1);
            coeffs.push(((d, up), cross_class_edges(params, mu)?));
        }
    }
    Ok(MPolynomial::from_coefficients(*params, coeffs))
}

fn exact_from_u64(v: u64) -> Exact {
    Exact::from_integer(BigInt::from(v))
}

/// A two-variable polynomial under the operator calculus: exponents are
/// exact rationals (they can leave ℕ through exponent shifts) and
/// coefficients are [`Scalar`]s (they leave ℚ only when a fractional
/// operator power is applied).
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralPolynomial {
    terms: BTreeMap<(Exact, Exact), Scalar>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Var {
    X,
    Y,
}

impl Var {
    fn letter(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

/// What to do when an operator power with a negative exponent meets a term
/// whose relevant exponent is zero.
#[derive(Clone, Copy, PartialEq, Eq)]
enum SingularPolicy {
    Reject,
    DropTerm,
}

enum TermFactor {
    Exact(Exact),
    Approx(f64),
    Drop,
}

impl GeneralPolynomial {
    pub fn zero() -> Self {
        GeneralPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Exact, Exact), &Scalar)> {
        self.terms.iter()
    }

    fn insert(terms: &mut BTreeMap<(Exact, Exact), Scalar>, key: (Exact, Exact), value: Scalar) {
        let entry = match terms.remove(&key) {
            Some(existing) => existing + value,
            None => value,
        };
        let keep = match &entry {
            Scalar::Exact(q) => !q.is_zero(),
            Scalar::Approx(v) => *v != 0.0,
        };
        if keep {
            terms.insert(key, entry);
        }
    }

    /// Multiply every coefficient by exponent^alpha in the chosen variable.
    /// Integer alphas stay exact; fractional alphas push the coefficient to
    /// binary64. A zero exponent with positive alpha annihilates the term;
    /// with negative alpha it is singular and handled per `policy`.
    fn scale_pow(&self, var: Var, alpha: &Exact, policy: SingularPolicy) -> Result<Self> {
        let mut out = BTreeMap::new();
        for ((ex, ey), coeff) in &self.terms {
            let exp = match var {
                Var::X => ex,
                Var::Y => ey,
            };
            let factor = exponent_power(exp, alpha, var, policy)?;
            let scaled = match factor {
                TermFactor::Drop => continue,
                TermFactor::Exact(q) => coeff.clone().mul_exact(&q),
                TermFactor::Approx(v) => Scalar::Approx(coeff.to_f64() * v),
            };
            Self::insert(&mut out, (ex.clone(), ey.clone()), scaled);
        }
        Ok(GeneralPolynomial { terms: out })
    }

    /// D_x: multiply each coefficient by its x-exponent.
    pub fn dx(&self) -> Self {
        self.dx_pow(&Exact::one())
            .expect("positive integer power is never singular")
    }

    /// D_y: multiply each coefficient by its y-exponent.
    pub fn dy(&self) -> Self {
        self.dy_pow(&Exact::one())
            .expect("positive integer power is never singular")
    }

    pub fn dx_pow(&self, alpha: &Exact) -> Result<Self> {
        self.scale_pow(Var::X, alpha, SingularPolicy::Reject)
    }

    pub fn dy_pow(&self, alpha: &Exact) -> Result<Self> {
        self.scale_pow(Var::Y, alpha, SingularPolicy::Reject)
    }

    /// S_x: divide each coefficient by its x-exponent. Singular on a
    /// surviving term with zero x-exponent.
    pub fn sx(&self) -> Result<Self> {
        self.sx_pow(&Exact::one())
    }

    /// S_y: divide each coefficient by its y-exponent.
    pub fn sy(&self) -> Result<Self> {
        self.sy_pow(&Exact::one())
    }

    pub fn sx_pow(&self, alpha: &Exact) -> Result<Self> {
        self.scale_pow(Var::X, &(-alpha.clone()), SingularPolicy::Reject)
    }

    pub fn sy_pow(&self, alpha: &Exact) -> Result<Self> {
        self.scale_pow(Var::Y, &(-alpha.clone()), SingularPolicy::Reject)
    }

    /// S_x power that drops (with a warning) terms on which it would be
    /// singular instead of failing. The augmented-Zagreb pipeline runs with
    /// this policy so degree pairs summing to the shift offset contribute
    /// zero, matching the direct definition of that index.
    pub fn sx_pow_dropping_singular(&self, alpha: &Exact) -> Result<Self> {
        self.scale_pow(Var::X, &(-alpha.clone()), SingularPolicy::DropTerm)
    }

    /// J: substitute y := x, merging exponents additively.
    pub fn diagonal(&self) -> Self {
        let mut out = BTreeMap::new();
        for ((ex, ey), coeff) in &self.terms {
            Self::insert(&mut out, (ex + ey, Exact::zero()), coeff.clone());
        }
        GeneralPolynomial { terms: out }
    }

    /// Q_alpha: add alpha to every x-exponent.
    pub fn shift_x(&self, alpha: &Exact) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|((ex, ey), c)| ((ex + alpha, ey.clone()), c.clone()))
            .collect();
        GeneralPolynomial { terms }
    }

    /// Exact evaluation. Exponents must be integers unless the matching base
    /// is 0 or 1; all coefficients must still be exact.
    pub fn evaluate(&self, x: &Exact, y: &Exact) -> Result<Exact> {
        let mut acc = Exact::zero();
        for ((ex, ey), coeff) in &self.terms {
            let q = match coeff {
                Scalar::Exact(q) => q,
                Scalar::Approx(_) => {
                    return Err(Error::Internal(
                        "exact evaluation of a polynomial with binary64 coefficients".into(),
                    ))
                }
            };
            acc += q * base_power(x, ex)? * base_power(y, ey)?;
        }
        Ok(acc)
    }

    /// Sum of coefficients, i.e. the value at x = y = 1 in whichever regime
    /// the coefficients are in.
    pub fn value_at_unit(&self) -> Scalar {
        self.terms
            .values()
            .fold(Scalar::zero(), |acc, c| acc + c.clone())
    }
}

fn exponent_power(
    exp: &Exact,
    alpha: &Exact,
    var: Var,
    policy: SingularPolicy,
) -> Result<TermFactor> {
    if alpha.is_zero() {
        return Ok(TermFactor::Exact(Exact::one()));
    }
    if exp.is_zero() {
        if alpha.is_positive() {
            return Ok(TermFactor::Drop);
        }
        return match policy {
            SingularPolicy::DropTerm => {
                log::warn!(
                    "dropping term with zero {}-exponent under a singular operator power",
                    var.letter()
                );
                Ok(TermFactor::Drop)
            }
            SingularPolicy::Reject => Err(Error::SingularOperator { var: var.letter() }),
        };
    }
    if alpha.is_integer() {
        // Exact only while the power is small enough to keep memory bounded;
        // past the guard a term would need gigabytes of digits.
        let small = alpha
            .to_integer()
            .to_i32()
            .filter(|a| a.unsigned_abs() <= 4096);
        if let Some(a) = small {
            return Ok(TermFactor::Exact(exp.clone().pow(a)));
        }
    }
    if exp.is_negative() && !alpha.is_integer() {
        return Err(Error::FractionalExponent);
    }
    Ok(TermFactor::Approx(
        exact_to_f64(exp).powf(exact_to_f64(alpha)),
    ))
}

fn base_power(base: &Exact, exp: &Exact) -> Result<Exact> {
    if base.is_one() {
        return Ok(Exact::one());
    }
    if !exp.is_integer() {
        if base.is_zero() && exp.is_positive() {
            return Ok(Exact::zero());
        }
        return Err(Error::FractionalExponent);
    }
    let e = exp
        .to_integer()
        .to_i32()
        .ok_or_else(|| Error::Internal("evaluation exponent exceeds i32".into()))?;
    if base.is_zero() {
        return match e.cmp(&0) {
            std::cmp::Ordering::Greater => Ok(Exact::zero()),
            std::cmp::Ordering::Equal => Ok(Exact::one()),
            std::cmp::Ordering::Less => Err(Error::ZeroToNegativePower),
        };
    }
    Ok(base.clone().pow(e))
}

/// Which literal per-class coefficient expression an entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralFamily {
    /// Signed per-class slice claimed for the coefficient of x^f(μ) y^f(μ),
    /// μ ≤ min(r, p−2). Only the sum of the slices is meaningful; single
    /// slices can be negative.
    EqualDegree { mu: u32 },
    /// Claimed top-diagonal coefficient (1/4)(p²−p)(O(p)+O(p−1)) when the
    /// two highest occupancies share the top degree.
    EqualDegreeTop,
    /// Claimed coefficient of x^f(μ−1) y^f(μ) for 2 ≤ μ ≤ min(r, p−1).
    AdjacentDegree { mu: u32 },
    /// Claimed coefficient of x^f(p−1) y^f(p) when r = p. Its key collides
    /// with the top diagonal and it re-counts cross-class edges already
    /// emitted by the adjacent-degree family.
    AdjacentDegreeTop,
}

impl LiteralFamily {
    pub fn label(&self) -> String {
        match self {
            LiteralFamily::EqualDegree { mu } => format!("equal-degree mu={mu}"),
            LiteralFamily::EqualDegreeTop => "equal-degree top".into(),
            LiteralFamily::AdjacentDegree { mu } => format!("adjacent-degree mu={mu}"),
            LiteralFamily::AdjacentDegreeTop => "adjacent-degree top".into(),
        }
    }
}

/// One literal coefficient expression evaluated exactly, next to the
/// canonical coefficient at the same key.
#[derive(Debug, Clone, PartialEq)]
pub struct LiteralEntry {
    pub family: LiteralFamily,
    pub key: (u64, u64),
    pub literal: Exact,
    pub canonical: Count,
    pub diverges: bool,
}

/// Evaluation of the compact top-coefficient identity m_{Δ,Δ} = (1/4)p{n+1,p}
/// offered for the r = p case. The claim is dimensionally short by a factor
/// that grows with p (the falling-factorial mass of the occupancy counts),
/// so it is reported, never used.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactTopIdentity {
    pub claimed: Exact,
    pub canonical: Count,
    pub matches: bool,
}

/// Side-by-side evaluation of the literal per-class coefficient formulas
/// against the canonical polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LiteralReport {
    pub p: u32,
    pub n: u32,
    pub entries: Vec<LiteralEntry>,
    pub compact_top: Option<CompactTopIdentity>,
    /// Sum of all literal coefficient values.
    pub literal_total: Exact,
    /// Canonical edge total M(1,1).
    pub canonical_total: Count,
}

impl LiteralReport {
    pub fn divergent_entries(&self) -> impl Iterator<Item = &LiteralEntry> {
        self.entries.iter().filter(|e| e.diverges)
    }
}

/// Evaluate the literal per-class coefficient formulas exactly and pair each
/// with the canonical value at its key. The canonical pipeline is left
/// untouched; this is a diagnostic view.
pub fn literal_report(params: &HanoiParams) -> Result<LiteralReport> {
    let poly = m_polynomial(params)?;
    let p = params.p();
    let r = params.r();
    let pu = p as u64;
    let mut entries = Vec::new();

    let push = |entries: &mut Vec<LiteralEntry>, family, key: (u64, u64), literal: Exact| {
        let canonical = poly.coefficient(key.0, key.1);
        let diverges = literal != count_to_exact(&canonical);
        entries.push(LiteralEntry {
            family,
            key,
            literal,
            canonical,
            diverges,
        });
    };

    for mu in 1..=r.min(p.saturating_sub(2)) {
        let mut acc = BigInt::zero();
        for nu in 0..=mu {
            let (m, v, pp) = (mu as i64, nu as i64, p as i64);
            let coef = 3 * m * m - 2 * pp * m - m + 4 * pp * v - 4 * m * v;
            acc += BigInt::from(refined_count(params, mu, nu)?) * coef;
        }
        let d = degree_value(pu, mu as u64);
        push(
            &mut entries,
            LiteralFamily::EqualDegree { mu },
            (d, d),
            Exact::new(acc, BigInt::from(4)),
        );
    }

    if r == p {
        let top = degree_value(pu, pu);
        let mut occupied = occupancy_count(params, p)?;
        if p >= 2 {
            occupied += occupancy_count(params, p - 1)?;
        }
        let literal = Exact::new(
            BigInt::from(occupied) * BigInt::from(pu * pu - pu),
            BigInt::from(4),
        );
        push(&mut entries, LiteralFamily::EqualDegreeTop, (top, top), literal);
    }

    for mu in 2..=r.min(p.saturating_sub(1)) {
        let mut acc = BigInt::zero();
        for nu in 0..mu {
            let weight = (p as u64 - mu as u64 + 1) * (mu as u64 - 1 - nu as u64);
            acc += BigInt::from(refined_count(params, mu - 1, nu)?) * BigInt::from(weight);
        }
        let key = (degree_value(pu, mu as u64 - 1), degree_value(pu, mu as u64));
        push(
            &mut entries,
            LiteralFamily::AdjacentDegree { mu },
            key,
            Exact::from_integer(acc),
        );
    }

    if r == p && p >= 2 {
        let mut acc = BigInt::zero();
        for nu in 0..p - 1 {
            acc += BigInt::from(refined_count(params, p - 1, nu)?)
                * BigInt::from(pu - 1 - nu as u64);
        }
        if p >= 3 {
            for nu in 0..p - 2 {
                acc += BigInt::from(refined_count(params, p - 2, nu)?)
                    * BigInt::from(2 * (pu - 2 - nu as u64));
            }
        }
        let key = (degree_value(pu, pu - 1), degree_value(pu, pu));
        push(
            &mut entries,
            LiteralFamily::AdjacentDegreeTop,
            key,
            Exact::from_integer(acc),
        );
    }

    let compact_top = if r == p {
        let top = degree_value(pu, pu);
        let canonical = poly.coefficient(top, top);
        let claimed = Exact::new(
            BigInt::from(stirling2(params.n() as u64 + 1, pu)?) * BigInt::from(pu),
            BigInt::from(4),
        );
        let matches = claimed == count_to_exact(&canonical);
        Some(CompactTopIdentity {
            claimed,
            canonical,
            matches,
        })
    } else {
        None
    };

    let literal_total = entries
        .iter()
        .fold(Exact::zero(), |acc, e| acc + e.literal.clone());
    Ok(LiteralReport {
        p,
        n: params.n(),
        entries,
        compact_top,
        literal_total,
        canonical_total: poly.edge_count(),
    })
}
