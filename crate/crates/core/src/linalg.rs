//! Exact rank of small rational matrices.

use num::Zero;

use crate::scalar::Rational;

/// Rank by fraction-exact Gaussian elimination. Rows may be empty.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &p;
            let (top, rest) = rows.split_at_mut(i);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= &factor * y;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| rational_int(v)).collect())
            .collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])), 3);
        assert_eq!(rank(m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        assert_eq!(rank(vec![vec![rational(1, 3), rational(2, 3)], vec![rational_int(1), rational_int(2)]]), 1);
    }
}
