//! Tropicalized Pluecker vectors, the positive tropical Pluecker test, and
//! the Speyer-Williams projection back to grid space.

use crate::blades::{planar_basis, HeightVector};
use crate::error::TropError;
use crate::grid::{positive_root_vector, GridVector};
use crate::monomial::monomial_table;
use crate::rat::Q;
use crate::subsets::{indexer, KSubset};

/// The map `F^{(k)}_n`: tropicalized Pluecker coordinates of a grid point.
pub fn trop_plucker(y: &GridVector) -> Result<HeightVector, TropError> {
    let (k, n) = (y.k, y.n);
    let table = monomial_table(k, n)?;
    let yg = y.gauge_fixed();
    let coeffs: Vec<Q> = (0..indexer(k, n).len()).map(|p| table.trop_eval(p, &yg)).collect();
    Ok(HeightVector { k, n, coeffs })
}

/// Positive tropical Pluecker test: every three-term relation
/// `pi_{Lac} + pi_{Lbd} = min(pi_{Lab} + pi_{Lcd}, pi_{Lad} + pi_{Lbc})`
/// holds with exact min, over all (k-2)-subsets L and a<b<c<d disjoint
/// from L. Cyclic rotations of {a,b,c,d} give the same relation.
pub fn is_positive_tropical_plucker(pi: &HeightVector) -> bool {
    first_violated_relation(pi).is_none()
}

/// The witness version: the first violated (L, {a,b,c,d}) in scan order.
pub fn first_violated_relation(pi: &HeightVector) -> Option<(Vec<u32>, [u32; 4])> {
    let (k, n) = (pi.k, pi.n);
    let idx = indexer(k, n);
    let val = |elems: &mut Vec<u32>| -> &Q {
        elems.sort_unstable();
        &pi.coeffs[idx.index_of(&KSubset { elems: elems.clone() })]
    };
    let l_subsets: Vec<Vec<u32>> = if k == 2 {
        vec![vec![]]
    } else {
        indexer(k - 2, n).subsets.iter().map(|s| s.elems.clone()).collect()
    };
    for l in &l_subsets {
        let rest: Vec<u32> = (1..=n).filter(|x| !l.contains(x)).collect();
        let m = rest.len();
        for ai in 0..m {
            for bi in (ai + 1)..m {
                for ci in (bi + 1)..m {
                    for di in (ci + 1)..m {
                        let (a, b, c, d) = (rest[ai], rest[bi], rest[ci], rest[di]);
                        let mut lac = l.clone();
                        lac.extend([a, c]);
                        let mut lbd = l.clone();
                        lbd.extend([b, d]);
                        let mut lab = l.clone();
                        lab.extend([a, b]);
                        let mut lcd = l.clone();
                        lcd.extend([c, d]);
                        let mut lad = l.clone();
                        lad.extend([a, d]);
                        let mut lbc = l.clone();
                        lbc.extend([b, c]);
                        let lhs = val(&mut lac) + val(&mut lbd);
                        let r1 = val(&mut lab) + val(&mut lcd);
                        let r2 = val(&mut lad) + val(&mut lbc);
                        if lhs != r1.clone().min(r2.clone()) {
                            return Some((l.clone(), [a, b, c, d]));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `proj^{Rt}`: planar-basis coefficients pushed to grid space,
/// `h_J -> v_J` on nonfrozen subsets and lineality to zero; returned
/// gauge-fixed.
pub fn proj_rt(pi: &HeightVector) -> Result<GridVector, TropError> {
    let basis = planar_basis(pi.k, pi.n)?;
    let exp = basis.expand(pi)?;
    let mut out = GridVector::zero(pi.k, pi.n);
    for (j, c) in &exp.coeffs {
        let root = positive_root_vector(j, pi.k, pi.n)?;
        out.add_scaled(&root.vector, c);
    }
    Ok(out.gauge_fixed())
}

/// Sum of positive roots of a collection, the argument fed to `F` in the
/// coarsest-subdivision constructions.
pub fn root_sum(collection: &[KSubset], k: u32, n: u32) -> Result<GridVector, TropError> {
    let mut y = GridVector::zero(k, n);
    for j in collection {
        let r = positive_root_vector(j, k, n)?;
        y.add_scaled(&r.vector, &crate::rat::qi(1));
    }
    Ok(y)
}
