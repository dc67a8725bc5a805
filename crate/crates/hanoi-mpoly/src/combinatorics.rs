//! Arbitrary-precision combinatorial primitives.
//!
//! Everything here is exact: counts are [`BigUint`](num_bigint::BigUint) and
//! rationals are [`BigRational`](num_rational::BigRational), so no quantity in
//! the crate ever overflows or rounds. The four counting functions memoize
//! into process-global tables that grow on demand; a table row is computed at
//! most once per process and lookups may come from any number of threads.
//! The first argument of each function is capped at [`TABLE_GUARD`] so the
//! tables cannot grow without bound.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Nonnegative exact integer count.
pub type Count = BigUint;

/// Exact rational number, kept in lowest terms with a positive denominator.
pub type Exact = num_rational::BigRational;

/// Largest admissible first argument of the memoized counting functions.
pub const TABLE_GUARD: u64 = 4096;

fn guard(value: u64) -> Result<()> {
    if value > TABLE_GUARD {
        return Err(Error::GuardExceeded {
            value,
            max: TABLE_GUARD,
        });
    }
    Ok(())
}

/// Binomial coefficient C(n, k). Zero when k > n.
pub fn binomial(n: u64, k: u64) -> Result<Count> {
    guard(n)?;
    if k > n {
        return Ok(Count::zero());
    }
    Ok(lookup(&BINOMIAL, n, k))
}

/// Falling factorial p·(p−1)·…·(p−mu+1), with the empty product equal to 1.
/// Zero when mu > p.
pub fn falling_factorial(p: u64, mu: u64) -> Result<Count> {
    guard(mu)?;
    if mu > p {
        return Ok(Count::zero());
    }
    let mut tables = FALLING.write().expect("falling factorial table poisoned");
    let row = tables.entry(p).or_insert_with(|| vec![Count::one()]);
    while (row.len() as u64) <= mu {
        let m = row.len() as u64;
        let next = row.last().expect("row is never empty") * Count::from(p - m + 1);
        row.push(next);
    }
    Ok(row[mu as usize].clone())
}

/// Stirling number of the second kind: partitions of an n-set into k
/// nonempty blocks. Satisfies {n,k} = k·{n−1,k} + {n−1,k−1}.
pub fn stirling2(n: u64, k: u64) -> Result<Count> {
    guard(n)?;
    if k > n {
        return Ok(Count::zero());
    }
    Ok(lookup(&STIRLING2, n, k))
}

/// 2-associated Stirling number: partitions of an n-set into k blocks, each
/// of size at least two. Zero when n < 2k, one at (0, 0), and otherwise
/// governed by {n,k}₂ = k·{n−1,k}₂ + (n−1)·{n−2,k−1}₂.
pub fn stirling2_assoc2(n: u64, k: u64) -> Result<Count> {
    guard(n)?;
    if n < 2 * k {
        // Covers k > n as well; the (0, 0) cell falls through to the table.
        return Ok(Count::zero());
    }
    Ok(lookup(&ASSOC2, n, k))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Recurrence {
    Binomial,
    Stirling2,
    Assoc2,
}

/// Column-major triangular memo. `cols[k][n - k]` holds the (n, k) cell for
/// n ≥ k, so filling column k up to row n costs O(n) cells and never touches
/// columns beyond k. That keeps a query with small k quasi-linear in n
/// instead of quadratic.
struct ColumnTable {
    rec: Recurrence,
    cols: Vec<Vec<Count>>,
}

impl ColumnTable {
    fn new(rec: Recurrence) -> Self {
        ColumnTable {
            rec,
            cols: Vec::new(),
        }
    }

    fn filled(&self, n: u64, k: u64) -> bool {
        self.cols
            .get(k as usize)
            .is_some_and(|col| (col.len() as u64) > n - k)
    }

    fn cell(&self, n: u64, k: u64) -> Count {
        self.cols[k as usize][(n - k) as usize].clone()
    }

    /// (n, k) cell with the out-of-triangle convention applied.
    fn stored_or_zero(&self, n: u64, k: u64) -> Count {
        if n < k {
            Count::zero()
        } else {
            self.cols[k as usize][(n - k) as usize].clone()
        }
    }

    fn ensure(&mut self, n: u64, k: u64) {
        for j in 0..=k {
            if self.cols.len() as u64 == j {
                self.cols.push(Vec::new());
            }
            while (self.cols[j as usize].len() as u64) + j <= n {
                let row = self.cols[j as usize].len() as u64 + j;
                let value = self.next_cell(row, j);
                self.cols[j as usize].push(value);
            }
        }
    }

    fn next_cell(&self, n: u64, k: u64) -> Count {
        if k == 0 {
            return match self.rec {
                Recurrence::Binomial => Count::one(),
                Recurrence::Stirling2 | Recurrence::Assoc2 => {
                    if n == 0 {
                        Count::one()
                    } else {
                        Count::zero()
                    }
                }
            };
        }
        let same_col = if n > k {
            self.stored_or_zero(n - 1, k)
        } else {
            Count::zero()
        };
        match self.rec {
            Recurrence::Binomial => same_col + self.stored_or_zero(n - 1, k - 1),
            Recurrence::Stirling2 => same_col * Count::from(k) + self.stored_or_zero(n - 1, k - 1),
            Recurrence::Assoc2 => {
                let reach_back = if n >= 2 {
                    self.stored_or_zero(n - 2, k - 1) * Count::from(n - 1)
                } else {
                    Count::zero()
                };
                same_col * Count::from(k) + reach_back
            }
        }
    }
}

static BINOMIAL: LazyLock<RwLock<ColumnTable>> =
    LazyLock::new(|| RwLock::new(ColumnTable::new(Recurrence::Binomial)));
static STIRLING2: LazyLock<RwLock<ColumnTable>> =
    LazyLock::new(|| RwLock::new(ColumnTable::new(Recurrence::Stirling2)));
static ASSOC2: LazyLock<RwLock<ColumnTable>> =
    LazyLock::new(|| RwLock::new(ColumnTable::new(Recurrence::Assoc2)));
static FALLING: LazyLock<RwLock<HashMap<u64, Vec<Count>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

fn lookup(table: &RwLock<ColumnTable>, n: u64, k: u64) -> Count {
    {
        let t = table.read().expect("memo table poisoned");
        if t.filled(n, k) {
            return t.cell(n, k);
        }
    }
    let mut t = table.write().expect("memo table poisoned");
    t.ensure(n, k);
    t.cell(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: count partitions of {0,…,n−1} into exactly k
    /// blocks, every block of size at least `min_block`, by exhaustive
    /// enumeration of restricted-growth assignments.
    fn partition_oracle(n: usize, k: usize, min_block: usize) -> u64 {
        fn recurse(
            next: usize,
            n: usize,
            sizes: &mut Vec<usize>,
            k: usize,
            min_block: usize,
        ) -> u64 {
            if next == n {
                return (sizes.len() == k && sizes.iter().all(|&s| s >= min_block)) as u64;
            }
            let mut total = 0;
            for b in 0..sizes.len() {
                sizes[b] += 1;
                total += recurse(next + 1, n, sizes, k, min_block);
                sizes[b] -= 1;
            }
            sizes.push(1);
            total += recurse(next + 1, n, sizes, k, min_block);
            sizes.pop();
            total
        }
        if n == 0 {
            return (k == 0) as u64;
        }
        recurse(0, n, &mut Vec::new(), k, min_block)
    }

    /// Independent oracle for binomials: an additively built Pascal triangle.
    fn pascal_oracle(rows: usize) -> Vec<Vec<u64>> {
        let mut t = vec![vec![1u64]];
        for n in 1..rows {
            let prev = &t[n - 1];
            let mut row = vec![1u64];
            for k in 1..n {
                row.push(prev[k - 1] + prev[k]);
            }
            row.push(1);
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(3, 1).unwrap(), Count::from(3u32));
        assert_eq!(binomial(2, 5).unwrap(), Count::zero());
        assert_eq!(binomial(8, 4).unwrap(), Count::from(70u32));
        assert_eq!(binomial(0, 0).unwrap(), Count::one());
    }

    #[test]
    fn binomial_matches_pascal_oracle() {
        let oracle = pascal_oracle(20);
        for (n, row) in oracle.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n as u64, k as u64).unwrap(), Count::from(v));
            }
        }
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(4, 2).unwrap(), Count::from(12u32));
        assert_eq!(falling_factorial(3, 3).unwrap(), Count::from(6u32));
        assert_eq!(falling_factorial(5, 0).unwrap(), Count::one());
        assert_eq!(falling_factorial(3, 4).unwrap(), Count::zero());
        assert_eq!(falling_factorial(0, 0).unwrap(), Count::one());
    }

    #[test]
    fn stirling2_small_values() {
        assert_eq!(stirling2(5, 1).unwrap(), Count::one());
        assert_eq!(stirling2(5, 4).unwrap(), Count::from(10u32));
        assert_eq!(stirling2(4, 3).unwrap(), Count::from(6u32));
        assert_eq!(stirling2(0, 0).unwrap(), Count::one());
        assert_eq!(stirling2(3, 0).unwrap(), Count::zero());
    }

    #[test]
    fn stirling2_matches_partition_oracle() {
        for n in 0..=10u64 {
            for k in 0..=n {
                assert_eq!(
                    stirling2(n, k).unwrap(),
                    Count::from(partition_oracle(n as usize, k as usize, 1)),
                    "stirling2({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn assoc2_small_values() {
        assert_eq!(stirling2_assoc2(0, 0).unwrap(), Count::one());
        assert_eq!(stirling2_assoc2(1, 0).unwrap(), Count::zero());
        assert_eq!(stirling2_assoc2(3, 2).unwrap(), Count::zero());
        assert_eq!(stirling2_assoc2(5, 2).unwrap(), Count::from(10u32));
        // 8 elements into 3 blocks of size ≥ 2: size profiles 2+2+4 and
        // 2+3+3 contribute 210 and 280.
        assert_eq!(stirling2_assoc2(8, 3).unwrap(), Count::from(490u32));
        for n in 2..=8u64 {
            assert_eq!(stirling2_assoc2(n, 1).unwrap(), Count::one());
        }
    }

    #[test]
    fn assoc2_matches_partition_oracle() {
        for n in 0..=10u64 {
            for k in 0..=n {
                assert_eq!(
                    stirling2_assoc2(n, k).unwrap(),
                    Count::from(partition_oracle(n as usize, k as usize, 2)),
                    "stirling2_assoc2({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn stirling2_recurrence_holds() {
        for n in 1..=64u64 {
            for k in 1..=n {
                let lhs = stirling2(n, k).unwrap();
                let rhs =
                    stirling2(n - 1, k).unwrap() * Count::from(k) + stirling2(n - 1, k - 1).unwrap();
                assert_eq!(lhs, rhs, "recurrence at ({n}, {k})");
            }
        }
    }

    #[test]
    fn assoc2_recurrence_holds() {
        for n in 2..=64u64 {
            for k in 1..=n {
                let lhs = stirling2_assoc2(n, k).unwrap();
                let rhs = stirling2_assoc2(n - 1, k).unwrap() * Count::from(k)
                    + stirling2_assoc2(n - 2, k - 1).unwrap() * Count::from(n - 1);
                assert_eq!(lhs, rhs, "recurrence at ({n}, {k})");
            }
        }
    }

    #[test]
    fn stirling2_column_absorption() {
        // p·{n,p} + {n,p−1} = {n+1,p}
        for n in 1..=32u64 {
            for p in 1..=n {
                let lhs = stirling2(n, p).unwrap() * Count::from(p) + stirling2(n, p - 1).unwrap();
                assert_eq!(lhs, stirling2(n + 1, p).unwrap(), "absorption at ({n}, {p})");
            }
        }
    }

    #[test]
    fn stirling2_expands_powers() {
        // Σ_k {n,k}·x·(x−1)·…·(x−k+1) = x^n
        for x in 1..=16u64 {
            for n in 0..=16u64 {
                let mut sum = Count::zero();
                for k in 0..=n {
                    sum += stirling2(n, k).unwrap() * falling_factorial(x, k).unwrap();
                }
                assert_eq!(sum, Count::from(x).pow(n as u32), "power sum at x={x}, n={n}");
            }
        }
    }

    #[test]
    fn guard_rejects_oversized_inputs() {
        assert!(matches!(
            stirling2(TABLE_GUARD + 1, 2),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            binomial(TABLE_GUARD + 1, 1),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            stirling2_assoc2(TABLE_GUARD + 1, 1),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            falling_factorial(10, TABLE_GUARD + 1),
            Err(Error::GuardExceeded { .. })
        ));
        // The guard applies to the table dimension, not the other argument.
        assert!(binomial(10, TABLE_GUARD + 1).is_ok());
        assert!(falling_factorial(TABLE_GUARD + 1, 3).is_ok());
    }

    #[test]
    fn tables_are_readable_from_many_threads() {
        let handles: Vec<_> = (0..8)
            .map(|t| {
                std::thread::spawn(move || {
                    for n in 0..=40u64 {
                        let k = (n + t) % 7;
                        let a = stirling2(n, k).unwrap();
                        let b = stirling2(n, k).unwrap();
                        assert_eq!(a, b);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }
}
