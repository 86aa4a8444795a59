//! Fraction-free (Bareiss) elimination over an integer ring.
//!
//! Every intermediate entry is a minor of the input, so the divisions by
//! the previous pivot are exact and no rationals are ever formed.

use num_integer::Integer;
use num_traits::Signed;

/// Rank of an integer matrix given as rows.
pub fn rank_fraction_free<I>(rows: &[Vec<I>]) -> usize
where
    I: Integer + Signed + Clone,
{
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<I>> = rows.to_vec();
    let mut prev = I::one();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..n {
                let v = a[r][c].clone() * a[i][j].clone() - a[i][c].clone() * a[r][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][c] = I::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `cols - rank`.
pub fn nullity_fraction_free<I>(rows: &[Vec<I>], cols: usize) -> usize
where
    I: Integer + Signed + Clone,
{
    cols - rank_fraction_free(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_ranks() {
        let a: Vec<Vec<i64>> = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank_fraction_free(&a), 2);
        let id: Vec<Vec<i64>> = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(rank_fraction_free(&id), 2);
        let z: Vec<Vec<i64>> = vec![vec![0, 0, 0]];
        assert_eq!(nullity_fraction_free(&z, 3), 3);
        assert_eq!(rank_fraction_free::<i64>(&[]), 0);
    }

    #[test]
    fn needs_row_swaps_and_skipped_columns() {
        let a: Vec<Vec<BigInt>> = [[0, 0, 2, 1], [0, 3, 1, 0], [0, 6, 4, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rank_fraction_free(&a), 2);
    }
}
