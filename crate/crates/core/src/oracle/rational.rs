//! Exact rank over the rationals by fraction-free elimination.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix by Bareiss elimination. Every intermediate
/// entry is a minor of the input, so coefficient growth stays polynomial.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(bareiss_rank(mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(mat(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(bareiss_rank(mat(&[&[0, 0, 0]])), 0);
        assert_eq!(
            bareiss_rank(mat(&[&[2, 3, 5], &[7, 11, 13], &[9, 14, 18]])),
            2
        );
        assert_eq!(
            bareiss_rank(mat(&[&[0, 2, 1, 4], &[0, 4, 2, 8], &[1, 0, 0, 3]])),
            2
        );
    }
}
