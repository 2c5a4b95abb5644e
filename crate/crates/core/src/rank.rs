//! Exact rank over the rationals by fraction-free (Bareiss) elimination.
//!
//! Elimination runs in `i128` first. Any overflow abandons that attempt and the
//! whole elimination is redone with arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;

trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Option<Self>;
    /// `(a*b - c*d) / e`, exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn scale_div(a: &Self, b: &Self, e: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % e, 0, "Bareiss division must be exact");
        num.checked_div(*e)
    }
    fn scale_div(a: &Self, b: &Self, e: &Self) -> Option<Self> {
        let num = a.checked_mul(*b)?;
        debug_assert_eq!(num % e, 0, "Bareiss division must be exact");
        num.checked_div(*e)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d) / e)
    }
    fn scale_div(a: &Self, b: &Self, e: &Self) -> Option<Self> {
        Some((a * b) / e)
    }
}

/// Returns `None` on overflow.
fn bareiss_rank<R: Ring>(m: &IntMatrix) -> Option<usize> {
    // Work on the orientation with fewer columns; rank is transpose-invariant.
    let owned;
    let m = if m.cols() > m.rows() {
        owned = m.transpose();
        &owned
    } else {
        m
    };
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<R>> = (0..rows)
        .filter(|&i| m.row(i).iter().any(|&v| v != 0))
        .map(|i| m.row(i).iter().map(|&v| R::from_i64(v)).collect())
        .collect();
    let rows = a.len().min(rows);
    let mut prev = R::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        let same = pivot == prev;
        let opposite = pivot.neg()? == prev;
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                // Only the scaling by pivot/prev applies.
                if same {
                    continue;
                }
                for x in row[col + 1..cols].iter_mut() {
                    if x.is_zero() {
                        continue;
                    }
                    *x = if opposite { x.neg()? } else { R::scale_div(&pivot, x, &prev)? };
                }
                continue;
            }
            let lead = row[col].clone();
            for j in col + 1..cols {
                if row[j].is_zero() && pivot_row[j].is_zero() {
                    continue;
                }
                row[j] = R::cross_div(&pivot, &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = R::zero();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Rank over ℚ. Exact; no floating point is involved.
pub fn exact_rank(m: &IntMatrix) -> usize {
    bareiss_rank::<i128>(m).unwrap_or_else(|| exact_rank_bigint(m))
}

pub fn exact_rank_bigint(m: &IntMatrix) -> usize {
    bareiss_rank::<BigInt>(m).expect("arbitrary precision cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by plain rational Gaussian elimination with `(num, den)` pairs in
    /// i128; independent of the Bareiss recurrence.
    #[allow(clippy::needless_range_loop)]
    fn rational_rank(m: &IntMatrix) -> usize {
        use num_integer::Integer;
        let mut a: Vec<Vec<(i128, i128)>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(|&v| (v as i128, 1i128)).collect())
            .collect();
        let norm = |(n, d): (i128, i128)| {
            let g = n.gcd(&d).max(1);
            let (n, d) = (n / g, d / g);
            if d < 0 { (-n, -d) } else { (n, d) }
        };
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| a[i][col].0 != 0) else { continue };
            a.swap(rank, p);
            let piv = a[rank][col];
            for i in rank + 1..a.len() {
                let f = a[i][col];
                if f.0 == 0 {
                    continue;
                }
                // row_i -= (f / piv) * row_rank
                let q = norm((f.0 * piv.1, f.1 * piv.0));
                for j in col..m.cols() {
                    let r = a[rank][j];
                    let prod = norm((q.0 * r.0, q.1 * r.1));
                    let cur = a[i][j];
                    a[i][j] = norm((cur.0 * prod.1 - prod.0 * cur.1, cur.1 * prod.1));
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_cases() {
        assert_eq!(exact_rank(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(exact_rank(&IntMatrix::identity(5)), 5);
        let m = IntMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(exact_rank(&m), 2);
        assert_eq!(exact_rank(&m.transpose()), 2);
    }

    #[test]
    fn overflow_escalates_to_bigint() {
        // Hilbert-like integer matrix with huge minors.
        let n = 24;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| ((i as i64 + 3) * (j as i64 + 7)).pow(3) % 1_000_003 + i as i64 * 7919).collect())
            .collect();
        let m = IntMatrix::from_rows(rows);
        assert!(bareiss_rank::<i128>(&m).is_none());
        assert_eq!(exact_rank(&m), exact_rank_bigint(&m));
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in 1usize..7, cols in 1usize..7,
            seed in proptest::collection::vec(-2i64..=2, 49)
        ) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 7 + j]).collect()).collect();
            let m = IntMatrix::from_rows(data);
            prop_assert_eq!(exact_rank(&m), rational_rank(&m));
            prop_assert_eq!(exact_rank_bigint(&m), rational_rank(&m));
        }
    }
}
