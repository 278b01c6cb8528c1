//! Symbolic expansion of the Pluecker coordinates on the positive
//! parametrization, and their tropicalizations.
//!
//! The parametrization matrix has an identity block in columns 1..k and, in
//! column k+j, the entries `m_{i,j} = sum_{b_i <= ... <= b_{k-1} <= j}
//! x_{i,b_i} ... x_{k-1,b_{k-1}}` stacked over a row of ones. Every maximal
//! minor expands, up to one overall sign, with all coefficients +1; the
//! expansion verifies this and fails loudly otherwise.

use crate::error::TropError;
use crate::grid::GridVector;
use crate::rat::Q;
use crate::subsets::{indexer, KSubset};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Exponent vector over the (k-1) x (n-k) grid, row-major.
pub type Expo = Vec<u8>;

/// Per subset J (lexicographic order), the exponent vectors of the monomials
/// of the minor `p_J`, after sign normalization.
pub struct MonomialTable {
    pub k: u32,
    pub n: u32,
    pub monos: Vec<Vec<Expo>>,
}

fn grid_pos(k: u32, n: u32, row: u32, col: u32) -> usize {
    debug_assert!(row >= 1 && row < k && col >= 1 && col <= n - k);
    ((row - 1) * (n - k) + (col - 1)) as usize
}

/// Monomials of `m_{i,j}`: one variable per grid row i..k-1 with
/// nondecreasing column indices bounded by j.
fn entry_monomials(k: u32, n: u32, i: u32, j: u32) -> Vec<Expo> {
    let dim = ((k - 1) * (n - k)) as usize;
    let mut out = Vec::new();
    let mut stack: Vec<(u32, u32, Expo)> = vec![(i, 1, vec![0u8; dim])];
    while let Some((row, min_b, expo)) = stack.pop() {
        if row == k {
            out.push(expo);
            continue;
        }
        for b in min_b..=j {
            let mut e = expo.clone();
            e[grid_pos(k, n, row, b)] += 1;
            stack.push((row + 1, b, e));
        }
    }
    out.sort();
    out
}

/// Signed polynomial as exponent -> coefficient map.
type Poly = HashMap<Expo, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = HashMap::with_capacity(a.len() * b.len());
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Expo = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out
}

/// Expands the maximal minor on column set J by permutation sum over the
/// non-identity block, then normalizes the overall sign.
fn expand_minor(k: u32, n: u32, j: &KSubset) -> Result<Vec<Expo>, TropError> {
    let dim = ((k - 1) * (n - k)) as usize;
    let in_identity: Vec<u32> = j.elems.iter().copied().filter(|&c| c <= k).collect();
    let tail: Vec<u32> = j.elems.iter().copied().filter(|&c| c > k).collect();
    let rows: Vec<u32> = (1..=k).filter(|r| !in_identity.contains(r)).collect();
    debug_assert_eq!(rows.len(), tail.len());
    let m = rows.len();
    if m == 0 {
        return Ok(vec![vec![0u8; dim]]);
    }
    // entry polynomial at (row r, column k+c)
    let entry = |r: u32, c: u32| -> Poly {
        if r == k {
            let mut p = Poly::new();
            p.insert(vec![0u8; dim], 1);
            p
        } else {
            entry_monomials(k, n, r, c).into_iter().map(|e| (e, 1)).collect()
        }
    };
    // permutation sum over the m x m submatrix
    let mut total = Poly::new();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        let mut sign = 1i64;
        // count inversions
        for a in 0..m {
            for b in (a + 1)..m {
                if perm[a] > perm[b] {
                    sign = -sign;
                }
            }
        }
        let mut prod = Poly::new();
        prod.insert(vec![0u8; dim], sign);
        for (ri, &ci) in perm.iter().enumerate() {
            let e = entry(rows[ri], tail[ci] - k);
            prod = poly_mul(&prod, &e);
        }
        for (e, c) in prod {
            *total.entry(e).or_insert(0) += c;
        }
        // next permutation (lexicographic)
        let mut i = m as i64 - 2;
        while i >= 0 && perm[i as usize] >= perm[i as usize + 1] {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let i = i as usize;
        let mut jx = m - 1;
        while perm[jx] <= perm[i] {
            jx -= 1;
        }
        perm.swap(i, jx);
        perm[i + 1..].reverse();
    }
    total.retain(|_, c| {
        if *c == 0 {
            // exact cancellation would silently shrink the Newton polytope
            return false;
        }
        true
    });
    if total.is_empty() {
        return Err(TropError::NonPositiveMinor(format!("minor p_{j} expanded to zero")));
    }
    let signs: Vec<i64> = total.values().copied().collect();
    let all_pos = signs.iter().all(|&c| c == 1);
    let all_neg = signs.iter().all(|&c| c == -1);
    if !(all_pos || all_neg) {
        return Err(TropError::NonPositiveMinor(format!(
            "minor p_{j} has mixed or non-unit coefficients"
        )));
    }
    let mut monos: Vec<Expo> = total.into_keys().collect();
    monos.sort();
    Ok(monos)
}

static TABLE: OnceLock<Mutex<HashMap<(u32, u32), Arc<MonomialTable>>>> = OnceLock::new();

pub fn monomial_table(k: u32, n: u32) -> Result<Arc<MonomialTable>, TropError> {
    if k < 2 || k > n - 2 {
        return Err(TropError::Invalid(format!("monomial table needs 2 <= k <= n-2, got ({k},{n})")));
    }
    {
        let cache = TABLE.get_or_init(|| Mutex::new(HashMap::new()));
        let guard = cache.lock().unwrap();
        if let Some(t) = guard.get(&(k, n)) {
            return Ok(t.clone());
        }
    }
    let idx = indexer(k, n);
    let mut monos = Vec::with_capacity(idx.len());
    for j in &idx.subsets {
        monos.push(expand_minor(k, n, j)?);
    }
    let table = Arc::new(MonomialTable { k, n, monos });
    let cache = TABLE.get().unwrap();
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry((k, n)).or_insert(table).clone())
}

impl MonomialTable {
    /// Tropicalized Pluecker coordinate: min over monomials of `<expo, y>`.
    pub fn trop_eval(&self, subset_pos: usize, y: &GridVector) -> Q {
        self.monos[subset_pos]
            .iter()
            .map(|e| {
                let mut acc = Q::zero();
                for (pos, &pow) in e.iter().enumerate() {
                    if pow > 0 {
                        acc += &y.entries[pos] * crate::rat::qi(pow as i64);
                    }
                }
                acc
            })
            .min()
            .unwrap()
    }

    /// Integer variant used by fan machinery.
    pub fn trop_eval_int(&self, subset_pos: usize, y: &[i64]) -> i64 {
        self.monos[subset_pos]
            .iter()
            .map(|e| e.iter().enumerate().map(|(p, &pw)| pw as i64 * y[p]).sum::<i64>())
            .min()
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_m11_at_36_is_x11_x21() {
        let monos = entry_monomials(3, 6, 1, 1);
        assert_eq!(monos.len(), 1);
        let e = &monos[0];
        assert_eq!(e[grid_pos(3, 6, 1, 1)], 1);
        assert_eq!(e[grid_pos(3, 6, 2, 1)], 1);
        assert_eq!(e.iter().map(|&x| x as u32).sum::<u32>(), 2);
    }

    #[test]
    fn entry_m23_at_4n_has_six_monomials() {
        // m_{2,3} = x21 x31 + x21 x32 + x22 x32 + x21 x33 + x22 x33 + x23 x33
        let monos = entry_monomials(4, 8, 2, 3);
        assert_eq!(monos.len(), 6);
    }

    #[test]
    fn identity_minor_is_constant() {
        let t = monomial_table(3, 6).unwrap();
        let idx = indexer(3, 6);
        let first = idx.index_of(&KSubset::new(6, [1, 2, 3]).unwrap());
        assert_eq!(t.monos[first], vec![vec![0u8; 6]]);
    }

    #[test]
    fn all_minors_expand_positively_small() {
        for (k, n) in [(2, 6), (3, 6), (3, 7), (4, 8)] {
            monomial_table(k, n).unwrap();
        }
    }

    #[test]
    fn trop_eval_zero_vector_is_zero() {
        let t = monomial_table(3, 6).unwrap();
        let y = GridVector::zero(3, 6);
        for pos in 0..indexer(3, 6).len() {
            assert!(t.trop_eval(pos, &y).is_zero());
        }
    }
}
