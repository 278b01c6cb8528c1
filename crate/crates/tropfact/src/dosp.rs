//! Decorated ordered set partitions and the subset <-> DOSP bijection.
//!
//! A DOSP `((S_1)_{r_1}, ..., (S_d)_{r_d})` carries ordered disjoint blocks
//! covering {1..n} and positive integer decorations summing to k. Blades are
//! invariant under cyclic rotation of the blocks, so the canonical rotation
//! puts the block containing 1 first.

use crate::error::TropError;
use crate::subsets::KSubset;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dosp {
    pub n: u32,
    /// blocks as sorted ascending element lists, in partition order
    pub blocks: Vec<Vec<u32>>,
    pub decorations: Vec<u32>,
}

impl Dosp {
    pub fn new(
        n: u32,
        blocks: Vec<Vec<u32>>,
        decorations: Vec<u32>,
    ) -> Result<Self, TropError> {
        if blocks.len() != decorations.len() || blocks.is_empty() {
            return Err(TropError::Invalid("blocks/decorations length mismatch".into()));
        }
        if decorations.iter().any(|&r| r == 0) {
            return Err(TropError::Invalid("decorations must be positive".into()));
        }
        let mut seen = vec![false; n as usize + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(TropError::Invalid("empty block".into()));
            }
            for &x in b {
                if x < 1 || x > n || seen[x as usize] {
                    return Err(TropError::Invalid("blocks must partition {1..n}".into()));
                }
                seen[x as usize] = true;
            }
        }
        if seen[1..].iter().any(|&s| !s) {
            return Err(TropError::Invalid("blocks must cover {1..n}".into()));
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        let mut d = Dosp { n, blocks, decorations };
        d.canonicalize_rotation();
        Ok(d)
    }

    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    pub fn k(&self) -> u32 {
        self.decorations.iter().sum()
    }

    /// Rotate blocks so that 1 lies in the first block.
    fn canonicalize_rotation(&mut self) {
        let pos = self.blocks.iter().position(|b| b.contains(&1)).expect("1 must be covered");
        self.blocks.rotate_left(pos);
        self.decorations.rotate_left(pos);
    }

    /// Type Delta: every decoration satisfies `1 <= r_j <= |S_j| - 1`.
    pub fn is_type_delta(&self) -> bool {
        self.blocks
            .iter()
            .zip(&self.decorations)
            .all(|(b, &r)| r >= 1 && (r as usize) < b.len())
    }

    /// Degenerate single-block partition (blade is identically zero).
    pub fn is_degenerate(&self) -> bool {
        self.d() == 1
    }

    /// Block-incidence counts `|J ∩ S_j|` for a subset.
    pub fn incidence(&self, j: &KSubset) -> Vec<u32> {
        self.blocks
            .iter()
            .map(|b| j.elems.iter().filter(|x| b.binary_search(x).is_ok()).count() as u32)
            .collect()
    }

    /// True when every block is a cyclic interval of {1..n}.
    pub fn blocks_are_cyclic_intervals(&self) -> bool {
        self.blocks.iter().all(|b| {
            KSubset { elems: b.clone() }.cyclic_runs(self.n).len() == 1 || b.len() == self.n as usize
        })
    }

    /// Renders a block in cyclic traversal order when it is an interval,
    /// ascending otherwise; labels joined without separators for n <= 9.
    fn block_string(&self, i: usize) -> String {
        let b = &self.blocks[i];
        let order: Vec<u32> = if b.len() == self.n as usize {
            (1..=self.n).collect()
        } else {
            let runs = KSubset { elems: b.clone() }.cyclic_runs(self.n);
            if runs.len() == 1 { runs[0].clone() } else { b.clone() }
        };
        if self.n <= 9 {
            order.iter().map(|x| x.to_string()).collect()
        } else {
            order.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Display for Dosp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.d() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}_{}", self.block_string(i), self.decorations[i])?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Dosp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"12_1|345_1"` (single-digit labels) or `"1,2_1|3,4,5_1"`.
pub fn parse_dosp(s: &str, n: u32) -> Result<Dosp, TropError> {
    let mut blocks = Vec::new();
    let mut decorations = Vec::new();
    for part in s.split('|') {
        let part = part.trim();
        let (labels, deco) = part
            .rsplit_once('_')
            .ok_or_else(|| TropError::Invalid(format!("block '{part}' missing _decoration")))?;
        let r: u32 = deco
            .trim()
            .parse()
            .map_err(|_| TropError::Invalid(format!("bad decoration '{deco}'")))?;
        let elems: Vec<u32> = if labels.contains(',') {
            labels
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| TropError::Invalid(format!("bad label '{t}'"))))
                .collect::<Result<_, _>>()?
        } else {
            labels
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u32)
                        .ok_or_else(|| TropError::Invalid(format!("bad label char '{c}'")))
                })
                .collect::<Result<_, _>>()?
        };
        blocks.push(elems);
        decorations.push(r);
    }
    Dosp::new(n, blocks, decorations)
}

/// The bijection direction subset -> DOSP: decompose `J` into cyclic runs
/// `J_j`, interlace with the complement gaps `C_j` that precede them, and set
/// `(S_j, r_j) = (J_j ∪ C_j, |J_j|)`. Frozen subsets give the degenerate
/// single-block partition.
pub fn dosp_of_subset(j: &KSubset, n: u32) -> Dosp {
    let runs = j.cyclic_runs(n);
    if runs.len() == 1 && j.k() == n {
        return Dosp::new(n, vec![(1..=n).collect()], vec![n]).unwrap();
    }
    let d = runs.len();
    let in_j = |x: u32| j.contains(x);
    let prev = |x: u32| if x == 1 { n } else { x - 1 };
    let mut blocks = Vec::with_capacity(d);
    let mut decorations = Vec::with_capacity(d);
    for run in &runs {
        // gap of consecutive non-elements immediately before the run
        let mut gap = Vec::new();
        let mut x = prev(run[0]);
        while !in_j(x) && gap.len() < n as usize {
            gap.push(x);
            x = prev(x);
        }
        gap.reverse();
        let block: Vec<u32> = gap.iter().copied().chain(run.iter().copied()).collect();
        blocks.push(block);
        decorations.push(run.len() as u32);
    }
    Dosp::new(n, blocks, decorations).expect("bijection output is a valid DOSP")
}

/// Inverse direction: each block must be a cyclic interval whose last `r_j`
/// elements (in traversal order) recover the run `J_j`.
pub fn subset_of_dosp(d: &Dosp) -> Result<KSubset, TropError> {
    let n = d.n;
    let mut elems = Vec::new();
    for (b, &r) in d.blocks.iter().zip(&d.decorations) {
        let order: Vec<u32> = if b.len() == n as usize {
            (1..=n).collect()
        } else {
            let runs = KSubset { elems: b.clone() }.cyclic_runs(n);
            if runs.len() != 1 {
                return Err(TropError::NotInBijectionImage(format!(
                    "block {:?} is not a cyclic interval",
                    b
                )));
            }
            runs[0].clone()
        };
        if (r as usize) > order.len() {
            return Err(TropError::NotInBijectionImage(format!(
                "decoration {r} exceeds block size {}",
                order.len()
            )));
        }
        elems.extend_from_slice(&order[order.len() - r as usize..]);
    }
    let j = KSubset::new(n, elems)
        .map_err(|e| TropError::NotInBijectionImage(format!("{e}")))?;
    // round-trip check guards blocks whose gap/run split disagrees
    let back = dosp_of_subset(&j, n);
    if &back != d {
        return Err(TropError::NotInBijectionImage(format!(
            "round trip gives {back} instead of {d}"
        )));
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn bijection_printed_examples() {
        // (3,7): {2,4,6} -> (712_1 34_1 56_1)
        let d = dosp_of_subset(&ks(7, &[2, 4, 6]), 7);
        assert_eq!(d, parse_dosp("712_1|34_1|56_1", 7).unwrap());
        assert_eq!(d.to_string(), "(712_1 34_1 56_1)");

        // (4,9): {2,5,8,9} -> (12_1 345_1 6789_2)
        let d = dosp_of_subset(&ks(9, &[2, 5, 8, 9]), 9);
        assert_eq!(d, parse_dosp("12_1|345_1|6789_2", 9).unwrap());

        // (3,6): {3,5,6} -> (123_1 456_2)
        let d = dosp_of_subset(&ks(6, &[3, 5, 6]), 6);
        assert_eq!(d, parse_dosp("123_1|456_2", 6).unwrap());
    }

    #[test]
    fn inverse_printed_examples() {
        let d = parse_dosp("123_1|456_2", 6).unwrap();
        assert_eq!(subset_of_dosp(&d).unwrap(), ks(6, &[3, 5, 6]));
        let d = parse_dosp("712_1|34_1|56_1", 7).unwrap();
        assert_eq!(subset_of_dosp(&d).unwrap(), ks(7, &[2, 4, 6]));
        let d = parse_dosp("12_1|345_1|6789_2", 9).unwrap();
        assert_eq!(subset_of_dosp(&d).unwrap(), ks(9, &[2, 5, 8, 9]));
    }

    #[test]
    fn not_in_image_is_reported() {
        // non-interval block
        let d = Dosp::new(6, vec![vec![1, 4], vec![2, 3, 5, 6]], vec![1, 2]).unwrap();
        assert!(subset_of_dosp(&d).is_err());
        // interval blocks but wrong decoration split: (12_1 3456_1) has
        // last-elements {2, 6}, whose bijection image is (12_1 3456_1)? check
        let d = parse_dosp("12_1|3456_1", 6).unwrap();
        let j = subset_of_dosp(&d).unwrap();
        assert_eq!(j, ks(6, &[2, 6]));
    }

    #[test]
    fn frozen_inputs_degenerate() {
        let d = dosp_of_subset(&ks(6, &[2, 3, 4]), 6);
        assert!(d.is_degenerate());
        assert_eq!(d.decorations, vec![3]);
        assert_eq!(d.blocks[0].len(), 6);
    }

    #[test]
    fn roundtrip_all_nonfrozen_up_to_n10() {
        for n in 4..=10u32 {
            for k in 2..=(n - 2) {
                for j in crate::subsets::enumerate_nonfrozen(k, n) {
                    let d = dosp_of_subset(&j, n);
                    assert!(d.is_type_delta(), "bijection image must be type Delta: {d}");
                    assert_eq!(subset_of_dosp(&d).unwrap(), j, "roundtrip at ({k},{n})");
                }
            }
        }
    }

    #[test]
    fn canonical_rotation_puts_1_first() {
        let d = Dosp::new(6, vec![vec![3, 4], vec![5, 6, 1, 2]], vec![1, 2]).unwrap();
        assert!(d.blocks[0].contains(&1));
    }
}
