//! k-element subsets of {1..n} and their lexicographic indexing.

use crate::error::TropError;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// A k-element subset of {1..n}, stored sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KSubset {
    pub elems: Vec<u32>,
}

impl KSubset {
    pub fn new(n: u32, elems: impl IntoIterator<Item = u32>) -> Result<Self, TropError> {
        let mut e: Vec<u32> = elems.into_iter().collect();
        e.sort_unstable();
        if e.is_empty() || e.windows(2).any(|w| w[0] == w[1]) {
            return Err(TropError::Invalid("subset elements must be distinct".into()));
        }
        if e[0] < 1 || *e.last().unwrap() > n {
            return Err(TropError::Invalid(format!("subset elements out of 1..{n}")));
        }
        Ok(KSubset { elems: e })
    }

    pub fn k(&self) -> u32 {
        self.elems.len() as u32
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Decomposition into maximal cyclic runs; the run containing 1 (or the
    /// one starting at the smallest element) comes first.
    pub fn cyclic_runs(&self, n: u32) -> Vec<Vec<u32>> {
        let k = self.elems.len();
        let mut runs: Vec<Vec<u32>> = Vec::new();
        let mut cur: Vec<u32> = vec![self.elems[0]];
        for &x in &self.elems[1..] {
            if x == *cur.last().unwrap() + 1 {
                cur.push(x);
            } else {
                runs.push(std::mem::take(&mut cur));
                cur.push(x);
            }
        }
        runs.push(cur);
        // merge a run ending at n with a run starting at 1
        if runs.len() > 1 {
            let wraps = runs.last().unwrap().last() == Some(&n) && runs[0][0] == 1;
            if wraps {
                let tail = runs.pop().unwrap();
                let head = std::mem::take(&mut runs[0]);
                runs[0] = tail.into_iter().chain(head).collect();
            }
        }
        debug_assert_eq!(runs.iter().map(|r| r.len()).sum::<usize>(), k);
        runs
    }

    /// A subset is frozen when it forms a single cyclic interval.
    pub fn is_frozen(&self, n: u32) -> bool {
        self.cyclic_runs(n).len() == 1
    }

    pub fn complement(&self, n: u32) -> KSubset {
        KSubset { elems: (1..=n).filter(|x| !self.contains(*x)).collect() }
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Lexicographic index of all k-subsets of {1..n}, shared per (k,n).
pub struct SubsetIndexer {
    pub k: u32,
    pub n: u32,
    pub subsets: Vec<KSubset>,
    pos: HashMap<Vec<u32>, usize>,
    pub frozen: Vec<bool>,
}

impl SubsetIndexer {
    fn build(k: u32, n: u32) -> Self {
        assert!(k >= 1 && k <= n, "need 1 <= k <= n");
        let mut subsets = Vec::new();
        let mut cur: Vec<u32> = (1..=k).collect();
        loop {
            subsets.push(KSubset { elems: cur.clone() });
            // next lexicographic k-combination
            let mut i = k as i64 - 1;
            while i >= 0 && cur[i as usize] == n - (k - 1 - i as u32) {
                i -= 1;
            }
            if i < 0 {
                break;
            }
            cur[i as usize] += 1;
            for j in (i as usize + 1)..k as usize {
                cur[j] = cur[j - 1] + 1;
            }
        }
        let pos = subsets.iter().enumerate().map(|(i, s)| (s.elems.clone(), i)).collect();
        let frozen = subsets.iter().map(|s| s.is_frozen(n)).collect();
        SubsetIndexer { k, n, subsets, pos, frozen }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn index_of(&self, s: &KSubset) -> usize {
        *self.pos.get(&s.elems).unwrap_or_else(|| panic!("subset {s} not of this (k,n)"))
    }

    pub fn nonfrozen_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.frozen[i])
    }
}

static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<SubsetIndexer>>>> = OnceLock::new();

/// Shared indexer for (k,n); built once per process.
pub fn indexer(k: u32, n: u32) -> Arc<SubsetIndexer> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut g = cache.lock().unwrap();
    g.entry((k, n)).or_insert_with(|| Arc::new(SubsetIndexer::build(k, n))).clone()
}

/// All nonfrozen k-subsets of {1..n}, lexicographically sorted.
pub fn enumerate_nonfrozen(k: u32, n: u32) -> Vec<KSubset> {
    let idx = indexer(k, n);
    idx.nonfrozen_indices().map(|i| idx.subsets[i].clone()).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn frozen_classification() {
        assert!(ks(6, &[1, 2, 3]).is_frozen(6));
        assert!(ks(6, &[5, 6, 1]).is_frozen(6));
        assert!(!ks(6, &[1, 3, 5]).is_frozen(6));
        // exactly n frozen subsets per (k,n)
        for (k, n) in [(2, 5), (3, 6), (3, 7), (4, 8)] {
            let idx = indexer(k, n);
            let frozen = idx.frozen.iter().filter(|&&f| f).count();
            assert_eq!(frozen as u32, n);
        }
    }

    #[test]
    fn nonfrozen_counts() {
        assert_eq!(
            enumerate_nonfrozen(2, 4),
            vec![ks(4, &[1, 3]), ks(4, &[2, 4])]
        );
        assert_eq!(enumerate_nonfrozen(3, 6).len(), 14);
        assert_eq!(enumerate_nonfrozen(4, 8).len(), 62);
    }

    #[test]
    fn cyclic_runs_wrap() {
        let j = ks(6, &[1, 3, 6]);
        let runs = j.cyclic_runs(6);
        assert_eq!(runs, vec![vec![6, 1], vec![3]]);
        let j = ks(9, &[2, 5, 8, 9]);
        assert_eq!(j.cyclic_runs(9), vec![vec![2], vec![5], vec![8, 9]]);
    }

    #[test]
    fn indexer_is_lexicographic_and_total() {
        let idx = indexer(3, 6);
        assert_eq!(idx.len() as u64, binomial(6, 3));
        for i in 1..idx.len() {
            assert!(idx.subsets[i - 1].elems < idx.subsets[i].elems);
        }
        for (i, s) in idx.subsets.iter().enumerate() {
            assert_eq!(idx.index_of(s), i);
        }
    }
}
