//! Exact dense linear algebra over the rationals.
//!
//! Pivot choice is deterministic (smallest eligible row/column index), so
//! every downstream computation is reproducible bit for bit.

use crate::error::TropError;
use crate::rat::{qi, Q};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = qi(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mat_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of row reduction: reduced echelon matrix, pivot column per pivot
/// row, and the rank.
pub struct Echelon {
    pub mat: QMatrix,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form with smallest-index pivoting.
pub fn rref(m: &QMatrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = &a[(i, j)] - &f * &a[(r, j)];
                    a[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { mat: a, pivots }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).pivots.len()
}

/// Solves `A x = b` exactly. Returns `None` when the system is inconsistent.
pub fn solve(a: &QMatrix, b: &[Q]) -> Result<Option<Vec<Q>>, TropError> {
    if a.rows != b.len() {
        return Err(TropError::Dimension(format!(
            "solve: {} rows vs rhs length {}",
            a.rows,
            b.len()
        )));
    }
    let mut aug = QMatrix::zero(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let ech = rref(&aug);
    // Inconsistent iff some pivot lands in the rhs column.
    if ech.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Q::zero(); a.cols];
    for (r, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.mat[(r, a.cols)].clone();
    }
    Ok(Some(x))
}

/// Basis of the nullspace `{x : A x = 0}`; `rank + nullity = cols`.
pub fn nullspace(a: &QMatrix) -> Vec<Vec<Q>> {
    let ech = rref(a);
    let pivot_set: std::collections::HashSet<usize> = ech.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); a.cols];
            v[f] = qi(1);
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = -ech.mat[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// Rank of a set of vectors given as rows.
pub fn rank_of_rows(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rank(&QMatrix::from_rows(rows.to_vec()))
}

/// Affine rank minus one: dimension of the affine hull of the given points.
pub fn affine_dim(points: &[Vec<Q>]) -> i64 {
    if points.is_empty() {
        return -1;
    }
    let p0 = &points[0];
    let diffs: Vec<Vec<Q>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    rank_of_rows(&diffs) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn identity_solve() {
        let a = QMatrix::identity(3);
        let b = vec![qi(1), qi(2), qi(3)];
        assert_eq!(solve(&a, &b).unwrap().unwrap(), b);
    }

    #[test]
    fn inconsistent_system_reports_none() {
        let a = QMatrix::from_rows(vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]]);
        let b = vec![qi(1), qi(2)];
        assert_eq!(solve(&a, &b).unwrap(), None);
    }

    #[test]
    fn diagonal_solve() {
        let a = QMatrix::from_rows(vec![vec![qi(2), qi(0)], vec![qi(0), qi(3)]]);
        let b = vec![qi(1), qi(1)];
        assert_eq!(solve(&a, &b).unwrap().unwrap(), vec![q(1, 2), q(1, 3)]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = QMatrix::identity(2);
        assert!(solve(&a, &[qi(1)]).is_err());
    }

    #[test]
    fn nullspace_examples() {
        let a = QMatrix::from_rows(vec![vec![qi(1), qi(1)]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        // basis vector proportional to (1, -1)
        assert_eq!(&ns[0][0] + &ns[0][1], Q::zero());
        assert!(!ns[0][0].is_zero());

        assert!(nullspace(&QMatrix::identity(2)).is_empty());

        let a = QMatrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]);
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&ns[0][0] * qi(1), &ns[0][1] * qi(-2));
    }

    #[test]
    fn solved_systems_reproduce_rhs_and_rank_nullity_adds_up() {
        // A fixed, not-too-random family of matrices.
        let mats = vec![
            QMatrix::from_rows(vec![
                vec![qi(2), qi(3), qi(5)],
                vec![qi(7), qi(11), qi(13)],
            ]),
            QMatrix::from_rows(vec![
                vec![qi(1), qi(2), qi(3)],
                vec![qi(2), qi(4), qi(6)],
                vec![qi(0), qi(1), qi(-1)],
            ]),
        ];
        for a in mats {
            assert_eq!(rank(&a) + nullspace(&a).len(), a.cols);
            let x0: Vec<Q> = (0..a.cols).map(|j| q(j as i64 + 1, 3)).collect();
            let b = a.mat_vec(&x0);
            let x = solve(&a, &b).unwrap().unwrap();
            assert_eq!(a.mat_vec(&x), b);
        }
    }
}
