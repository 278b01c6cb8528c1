//! Grid vectors on the (k-1) x (n-k) index grid, the tropical-torus gauge,
//! and generalized positive roots.

use crate::error::TropError;
use crate::rat::{qi, Q};
use crate::subsets::KSubset;
use num_traits::Zero;

/// A rational vector over the (k-1) x (n-k) grid. Rows are indexed 1..k-1,
/// columns 1..n-k; storage is row-major 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridVector {
    pub k: u32,
    pub n: u32,
    pub entries: Vec<Q>,
}

impl GridVector {
    pub fn zero(k: u32, n: u32) -> Self {
        GridVector { k, n, entries: vec![Q::zero(); ((k - 1) * (n - k)) as usize] }
    }

    pub fn rows(&self) -> u32 {
        self.k - 1
    }

    pub fn cols(&self) -> u32 {
        self.n - self.k
    }

    pub fn get(&self, i: u32, j: u32) -> &Q {
        assert!(i >= 1 && i <= self.rows() && j >= 1 && j <= self.cols());
        &self.entries[((i - 1) * self.cols() + (j - 1)) as usize]
    }

    pub fn set(&mut self, i: u32, j: u32, v: Q) {
        assert!(i >= 1 && i <= self.rows() && j >= 1 && j <= self.cols());
        let c = self.cols();
        self.entries[((i - 1) * c + (j - 1)) as usize] = v;
    }

    pub fn add_scaled(&mut self, other: &GridVector, c: &Q) {
        assert!(self.k == other.k && self.n == other.n);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += c * b;
        }
    }

    /// Canonical representative of the tropical-torus quotient: subtract the
    /// first column entry from each row, so `y_{i,1} = 0`.
    pub fn gauge_fixed(&self) -> GridVector {
        let mut out = self.clone();
        for i in 1..=self.rows() {
            let base = out.get(i, 1).clone();
            if base.is_zero() {
                continue;
            }
            for j in 1..=self.cols() {
                let v = out.get(i, j) - &base;
                out.set(i, j, v);
            }
        }
        out
    }

    pub fn eq_mod_gauge(&self, other: &GridVector) -> bool {
        self.gauge_fixed() == other.gauge_fixed()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Q::is_zero)
    }
}

/// The generalized positive root `v_J = sum_i e_{i, [j_i-(i-1), j_{i+1}-i-1]}`
/// attached to a nonfrozen subset; a 0/1 interval indicator per grid row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub subset: KSubset,
    pub vector: GridVector,
}

/// Interval of row i: `[j_i - (i-1), j_{i+1} - i - 1]`, empty when the upper
/// end is below the lower.
pub fn root_row_interval(j: &KSubset, i: u32) -> (i64, i64) {
    let els = &j.elems;
    let lo = els[(i - 1) as usize] as i64 - (i as i64 - 1);
    let hi = els[i as usize] as i64 - i as i64 - 1;
    (lo, hi)
}

pub fn positive_root_vector(j: &KSubset, k: u32, n: u32) -> Result<PositiveRoot, TropError> {
    if j.k() != k {
        return Err(TropError::Dimension(format!("subset {j} is not a {k}-subset")));
    }
    if j.is_frozen(n) {
        return Err(TropError::Invalid(format!("frozen subset {j} has no positive root")));
    }
    let mut v = GridVector::zero(k, n);
    for i in 1..k {
        let (lo, hi) = root_row_interval(j, i);
        for t in lo..=hi {
            assert!(t >= 1 && t <= (n - k) as i64, "root interval out of grid");
            v.set(i, t as u32, qi(1));
        }
    }
    Ok(PositiveRoot { subset: j.clone(), vector: v })
}

/// `gamma_J(alpha) = <v_J, alpha>`.
pub fn gamma_value(j: &KSubset, alpha: &GridVector) -> Result<Q, TropError> {
    let root = positive_root_vector(j, alpha.k, alpha.n)?;
    Ok(root
        .vector
        .entries
        .iter()
        .zip(&alpha.entries)
        .map(|(a, b)| a * b)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn k3_root_intervals_match_the_closed_form() {
        // row-1 support [j1, j2-2], row-2 support [j2-1, j3-3]
        for n in 6..=9u32 {
            for j in crate::subsets::enumerate_nonfrozen(3, n) {
                let (lo1, hi1) = root_row_interval(&j, 1);
                assert_eq!(lo1, j.elems[0] as i64);
                assert_eq!(hi1, j.elems[1] as i64 - 2);
                let (lo2, hi2) = root_row_interval(&j, 2);
                assert_eq!(lo2, j.elems[1] as i64 - 1);
                assert_eq!(hi2, j.elems[2] as i64 - 3);
            }
        }
    }

    #[test]
    fn root_135_at_36() {
        let r = positive_root_vector(&ks(6, &[1, 3, 5]), 3, 6).unwrap();
        // row1 support {1}, row2 support {2}
        assert_eq!(r.vector.get(1, 1), &qi(1));
        assert_eq!(r.vector.get(1, 2), &Q::zero());
        assert_eq!(r.vector.get(1, 3), &Q::zero());
        assert_eq!(r.vector.get(2, 1), &Q::zero());
        assert_eq!(r.vector.get(2, 2), &qi(1));
        assert_eq!(r.vector.get(2, 3), &Q::zero());
    }

    #[test]
    fn roots_are_zero_one_and_frozen_rejected() {
        for j in crate::subsets::enumerate_nonfrozen(3, 7) {
            let r = positive_root_vector(&j, 3, 7).unwrap();
            assert!(r.vector.entries.iter().all(|e| e.is_zero() || e == &qi(1)));
        }
        assert!(positive_root_vector(&ks(7, &[1, 2, 3]), 3, 7).is_err());
    }

    #[test]
    fn gauge_fixing_kills_row_constants() {
        let mut y = GridVector::zero(3, 6);
        y.set(1, 1, qi(5));
        y.set(1, 2, qi(7));
        y.set(2, 3, qi(1));
        let g = y.gauge_fixed();
        assert_eq!(g.get(1, 1), &Q::zero());
        assert_eq!(g.get(1, 2), &qi(2));
        assert_eq!(g.get(2, 3), &qi(1));
        let mut shifted = y.clone();
        for j in 1..=3 {
            let v = shifted.get(2, j) + qi(11);
            shifted.set(2, j, v);
        }
        assert!(y.eq_mod_gauge(&shifted));
    }
}
