//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::{Rational, Vector};

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns. The result depends only on the row space of the input.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : row . x = 0 for every row}` in canonical (reduced) form.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vector> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    // Canonicalize so the result is independent of the free-column choice.
    rref(&basis, ncols).0
}

/// Solves the square or overdetermined system `cols * y = rhs` where the
/// matrix is given by its columns. Returns `None` if inconsistent. The
/// columns must be linearly independent.
pub fn solve_columns(cols: &[Vector], rhs: &[Rational]) -> Option<Vector> {
    let n = rhs.len();
    let q = cols.len();
    // augmented rows: [A | b]
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut row: Vector = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows, q + 1);
    if pivots.contains(&q) {
        return None;
    }
    let mut y = vec![Rational::zero(); q];
    for (row, &p) in r.iter().zip(&pivots) {
        y[p] = row[q].clone();
    }
    Some(y)
}

/// Determinant by fraction-free-ish elimination over the rationals.
pub fn det(m: &[Vector]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vector> = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let pv = a[c][c].clone();
        d *= &pv;
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pv;
            let pivot_row = a[c].clone();
            for (x, y) in a[i][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Solves a square system; `None` when singular.
pub fn solve_square(m: &[Vector], rhs: &[Rational]) -> Option<Vector> {
    let n = m.len();
    let rows: Vec<Vector> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&rows, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, vector};

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vector(&[1, 2, 3]), vector(&[2, 4, 6]), vector(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(crate::rational::dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant() {
        let m = vec![vector(&[2, 1]), vector(&[1, 3])];
        assert_eq!(det(&m), int(5));
        let s = vec![vector(&[1, 2]), vector(&[2, 4])];
        assert_eq!(det(&s), int(0));
    }

    #[test]
    fn solving() {
        let cols = vec![vector(&[2, 0]), vector(&[0, 4])];
        assert_eq!(solve_columns(&cols, &vector(&[1, 1])).unwrap(), vec![frac(1, 2), frac(1, 4)]);
        let cols = vec![vector(&[1, 1])];
        assert!(solve_columns(&cols, &vector(&[1, 2])).is_none());
        let m = vec![vector(&[1, 1]), vector(&[1, -1])];
        assert_eq!(solve_square(&m, &vector(&[2, 0])).unwrap(), vector(&[1, 1]));
    }
}
