//! Exact dense linear algebra over a [`Field`].

use crate::scalar::Field;

/// Row-reduce in place; returns the pivot columns.
fn row_reduce<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = x.clone() * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = factor.clone() * &m[row][c];
                    m[r][c] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

pub fn det<F: Field>(rows: &[Vec<F>]) -> F {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        acc = acc * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * &inv;
            for c in col..n {
                let delta = factor.clone() * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    Inconsistent,
    Underdetermined,
}

/// Solve `a·x = b` for square or rectangular `a`.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Solution<F> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, cols + 1);
    if pivots.contains(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique(m.iter().take(cols).map(|r| r[cols].clone()).collect())
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    if row_reduce(&mut m, n).len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(F::zero(), |acc, k| acc + &(row[k].clone() * &b[k][j])))
                .collect()
        })
        .collect()
}

pub fn transpose<F: Field>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[0, 1, 1]])), 2);
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), Rational::from(-1));
        assert_eq!(det(&m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), Rational::from(4));
    }

    #[test]
    fn solving() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = [Rational::from(3), Rational::from(1)];
        assert_eq!(solve(&a, &b), Solution::Unique(vec![Rational::from(2), Rational::from(1)]));
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &b), Solution::Inconsistent);
        let b = [Rational::from(1), Rational::from(2)];
        assert_eq!(solve(&a, &b), Solution::Underdetermined);
    }

    #[test]
    fn inversion() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
