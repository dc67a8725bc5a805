//! Exact M-polynomials and degree-based topological indices of the multi-peg
//! Tower of Hanoi graphs H(p, n): p pegs, n discs, one vertex per disc
//! placement, one edge per legal move.
//!
//! The closed-form side builds everything from occupancy combinatorics
//! (Stirling partitions of discs onto pegs) in arbitrary-precision integer
//! and rational arithmetic; the [`oracle`] module independently enumerates
//! the state space and must agree census by census. On top of the polynomial
//! sit ten index families, each computed twice (direct edge sums and the
//! operator calculus) as another cross-check.
//!
//! ```
//! use hanoi_mpoly::occupancy::HanoiParams;
//! use hanoi_mpoly::mpolynomial::m_polynomial;
//!
//! let params = HanoiParams::new(4, 2).unwrap();
//! let poly = m_polynomial(&params).unwrap();
//! assert_eq!(poly.to_string(), "12\u{b7}x^3\u{b7}y^5 + 24\u{b7}x^5\u{b7}y^5");
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod combinatorics;
pub mod edge_census;
pub mod error;
pub mod indices;
pub mod mpolynomial;
pub mod occupancy;
pub mod oracle;
pub mod scalar;

pub use combinatorics::{Count, Exact};
pub use error::{Error, Result};
pub use occupancy::HanoiParams;
