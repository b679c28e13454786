//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::geometry::Rat;

/// Reduces `rows` in place to row echelon form and returns the pivot
/// column of each nonzero row, in order. The length of the result is the
/// rank.
pub fn row_echelon(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for j in col..width {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Rank over the rationals of the given row vectors.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut work = rows.to_vec();
    row_echelon(&mut work).len()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    fn rows(data: &[&[i64]]) -> Vec<Vec<Rat>> {
        data.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&rows(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&rows(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&rows(&[&[0, 0, 0]])), 0);
        assert_eq!(rank(&rows(&[&[0, 1, 1], &[0, 2, 3], &[0, 0, 5]])), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn pivots_skip_zero_columns() {
        let mut m = rows(&[&[0, 2, 1], &[0, 4, 5]]);
        assert_eq!(row_echelon(&mut m), vec![1, 2]);
    }
}
