//! Exact rank of integer matrices by fraction-free (Bareiss) elimination.
//!
//! Every intermediate entry is a minor of the input, so the division by the
//! previous pivot is exact. The word-size pass uses checked arithmetic and
//! hands over to arbitrary precision on the first overflow.

use num_bigint::BigInt;
use num_traits::{One, Zero};

trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn zero() -> Self;
    fn one() -> Self;
    /// `(a * d - b * c) / prev`, or `None` on overflow.
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn zero() -> Self {
        0
    }

    fn one() -> Self {
        1
    }

    fn cross(a: &i64, d: &i64, b: &i64, c: &i64, prev: &i64) -> Option<i64> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
        num.checked_div(*prev)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn cross(a: &BigInt, d: &BigInt, b: &BigInt, c: &BigInt, prev: &BigInt) -> Option<BigInt> {
        Some((a * d - b * c) / prev)
    }
}

fn bareiss<T: Entry>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = T::cross(&pivot_row[col], &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank over `Q` of the matrix with the given rows.
///
/// Rows must all have the same length.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    assert!(rows.windows(2).all(|w| w[0].len() == w[1].len()), "ragged matrix");
    bareiss(rows.to_vec()).unwrap_or_else(|| bigint_rank(rows))
}

/// Same as [`integer_rank`] but always in arbitrary precision.
pub fn bigint_rank(rows: &[Vec<i64>]) -> usize {
    let m = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    bareiss::<BigInt>(m).expect("arbitrary precision never overflows")
}
