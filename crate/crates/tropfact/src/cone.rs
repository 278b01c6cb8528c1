//! Exact polyhedral cones by the double description method: V- and
//! H-representations, ray/facet incidence, f-vectors and face lattices.
//!
//! All arithmetic is rational; pivots and insertion orders are
//! index-deterministic so ray and facet orderings are reproducible.

use crate::error::TropError;
use crate::linalg::{self, QMatrix};
use crate::rat::{qi, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};

/// Scales a rational vector to a primitive integer vector (gcd one), keeping
/// orientation.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    let mut l = BigInt::from(1);
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return vec![Q::zero(); v.len()];
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Incremental double description for a pointed cone `{x : rows_i . x >= 0}`
/// with `rank(rows) == dim`. Returns the extreme rays, primitive and
/// lexicographically sorted.
fn dd_pointed(rows: &[Vec<Q>], dim: usize) -> Result<Vec<Vec<Q>>, TropError> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    // initial independent subset, smallest indices first
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Q>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut v = r.clone();
        for e in &echelon {
            let lead = e.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = &v[lead] / &e[lead];
                for (a, b) in v.iter_mut().zip(e) {
                    *a -= &f * b;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        return Err(TropError::Invalid(format!(
            "double description needs a pointed cone: rank {} < dim {dim}",
            chosen.len()
        )));
    }
    // rays of the initial simplicial cone: columns of the inverse
    let m0 = QMatrix::from_rows(chosen.iter().map(|&i| rows[i].clone()).collect());
    let mut init_rays: Vec<Vec<Q>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![Q::zero(); dim];
        e[j] = qi(1);
        let col = linalg::solve(&m0, &e)?.expect("initial submatrix invertible");
        init_rays.push(primitive(&col));
    }
    let mut rays = init_rays;
    let mut inserted: Vec<usize> = chosen.clone();
    let tight_set = |r: &Vec<Q>, inserted: &[usize]| -> Vec<usize> {
        inserted.iter().copied().filter(|&i| dot(&rows[i], r).is_zero()).collect()
    };
    for i in 0..rows.len() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|r| dot(&rows[i], r)).collect();
        let neg: Vec<usize> =
            (0..rays.len()).filter(|&t| vals[t].is_negative()).collect();
        if neg.is_empty() {
            inserted.push(i);
            continue;
        }
        let pos: Vec<usize> =
            (0..rays.len()).filter(|&t| vals[t].is_positive()).collect();
        let zero: Vec<usize> = (0..rays.len()).filter(|&t| vals[t].is_zero()).collect();
        let tights: Vec<Vec<usize>> = rays.iter().map(|r| tight_set(r, &inserted)).collect();
        let mut new_rays: Vec<Vec<Q>> = Vec::new();
        for &p in &pos {
            for &m in &neg {
                // adjacency: common tight rows have rank dim - 2
                let common: Vec<usize> = tights[p]
                    .iter()
                    .copied()
                    .filter(|x| tights[m].binary_search(x).is_ok() || tights[m].contains(x))
                    .collect();
                if common.len() < dim.saturating_sub(2) {
                    continue;
                }
                let sub: Vec<Vec<Q>> = common.iter().map(|&t| rows[t].clone()).collect();
                if linalg::rank_of_rows(&sub) != dim - 2 {
                    continue;
                }
                let mut r = vec![Q::zero(); dim];
                for t in 0..dim {
                    r[t] = &vals[p] * &rays[m][t] - &vals[m] * &rays[p][t];
                }
                new_rays.push(primitive(&r));
            }
        }
        let mut next: Vec<Vec<Q>> = Vec::new();
        for &t in pos.iter().chain(&zero) {
            next.push(rays[t].clone());
        }
        next.extend(new_rays);
        next.sort();
        next.dedup();
        rays = next;
        inserted.push(i);
    }
    rays.sort();
    Ok(rays)
}

/// A polyhedral cone with both descriptions and ray/facet incidence, stored
/// in internal pointed coordinates plus the ambient lift.
pub struct Cone {
    pub ambient: usize,
    /// dimension of the cone (including lineality)
    pub dim: usize,
    pub lineality: Vec<Vec<Q>>,
    /// extreme rays in ambient coordinates, primitive, deterministic order
    pub rays: Vec<Vec<Q>>,
    /// pointed-coordinate data for combinatorics
    rays_w: Vec<Vec<Q>>,
    facets_w: Vec<Vec<Q>>,
    /// per facet, the sorted list of incident ray indices
    pub facet_rays: Vec<Vec<usize>>,
}

impl Cone {
    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn n_facets(&self) -> usize {
        self.facets_w.len()
    }

    fn from_pointed_w(
        ambient: usize,
        lineality: Vec<Vec<Q>>,
        rays_w: Vec<Vec<Q>>,
        lift: impl Fn(&[Q]) -> Vec<Q>,
    ) -> Result<Self, TropError> {
        let s = rays_w.first().map_or(0, |r| r.len());
        let pointed_dim = linalg::rank_of_rows(&rays_w);
        if pointed_dim != s {
            return Err(TropError::Invalid(
                "internal: pointed coordinates not full-dimensional".into(),
            ));
        }
        let facets_w = if s == 0 { Vec::new() } else { dd_pointed(&rays_w, s)? };
        let facet_rays: Vec<Vec<usize>> = facets_w
            .iter()
            .map(|f| {
                (0..rays_w.len()).filter(|&r| dot(f, &rays_w[r]).is_zero()).collect()
            })
            .collect();
        let rays: Vec<Vec<Q>> = rays_w.iter().map(|r| primitive(&lift(r))).collect();
        Ok(Cone {
            ambient,
            dim: s + lineality.len(),
            lineality,
            rays,
            rays_w,
            facets_w,
            facet_rays,
        })
    }

    /// Cone from generators; redundant generators are dropped.
    pub fn from_generators(gens: &[Vec<Q>]) -> Result<Self, TropError> {
        let ambient = gens.first().map(|g| g.len()).ok_or_else(|| {
            TropError::Invalid("cone needs at least one generator".into())
        })?;
        let gens: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| primitive(g))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        if gens.is_empty() {
            return Err(TropError::Invalid("all generators are zero".into()));
        }
        // span basis via echelon of the generators (deterministic)
        let ech = linalg::rref(&QMatrix::from_rows(gens.clone()));
        let s = ech.pivots.len();
        let basis: Vec<Vec<Q>> = (0..s).map(|i| ech.mat.row(i).to_vec()).collect();
        // coordinates of generators in the span basis: by pivot columns
        let coords: Vec<Vec<Q>> = gens
            .iter()
            .map(|g| ech.pivots.iter().map(|&c| g[c].clone()).collect())
            .collect();
        // hmm: since basis rows are reduced echelon, coordinate extraction by
        // pivot columns is exact: g = sum_i g[pivot_i] * basis_i.
        // dual cone rows are the generator coordinate vectors
        let dual_rays = dd_pointed(&coords, s);
        let (lineality, rays_w, lift_basis) = match dual_rays {
            Ok(facets) => {
                // primal pointed iff facets span; otherwise quotient lineality
                if linalg::rank_of_rows(&facets) == s {
                    let rays_w = dd_pointed(&facets, s)?;
                    (Vec::new(), rays_w, basis)
                } else {
                    return Self::quotient_lineality(ambient, &gens, &basis, &coords, &facets);
                }
            }
            Err(_) => {
                return Err(TropError::Invalid(
                    "generator cone is degenerate (dual not pointed)".into(),
                ))
            }
        };
        let lift = |w: &[Q]| -> Vec<Q> {
            let mut x = vec![Q::zero(); ambient];
            for (c, b) in w.iter().zip(&lift_basis) {
                for (xa, bb) in x.iter_mut().zip(b) {
                    *xa += c * bb;
                }
            }
            x
        };
        Cone::from_pointed_w(ambient, lineality, rays_w, lift)
    }

    fn quotient_lineality(
        ambient: usize,
        _gens: &[Vec<Q>],
        basis: &[Vec<Q>],
        coords: &[Vec<Q>],
        dual_rays: &[Vec<Q>],
    ) -> Result<Self, TropError> {
        let s = basis.len();
        // lineality in coords: orthogonal to every dual ray
        let dual_mat = QMatrix::from_rows(dual_rays.to_vec());
        let lin_coords = linalg::nullspace(&dual_mat);
        // complement coordinates: pivot columns of the dual ray matrix
        let ech = linalg::rref(&dual_mat);
        let piv = ech.pivots.clone();
        let proj = |v: &[Q]| -> Vec<Q> {
            // subtract the lineality part so that non-pivot coords vanish;
            // cheap exact projection: solve for lineality multipliers on the
            // complement coords
            let lin = QMatrix::from_rows(lin_coords.clone()).transpose();
            let free: Vec<usize> = (0..s).filter(|c| !piv.contains(c)).collect();
            let sub = QMatrix::from_rows(
                free.iter().map(|&f| lin.row(f).to_vec()).collect::<Vec<_>>(),
            );
            let rhs: Vec<Q> = free.iter().map(|&f| v[f].clone()).collect();
            let mu = linalg::solve(&sub, &rhs).ok().flatten().expect("lineality complement");
            let mut out = v.to_vec();
            for (j, l) in lin_coords.iter().enumerate() {
                for (o, lv) in out.iter_mut().zip(l) {
                    *o -= &mu[j] * lv;
                }
            }
            // now restricted to pivot coordinates
            piv.iter().map(|&c| out[c].clone()).collect()
        };
        let qcoords: Vec<Vec<Q>> = coords.iter().map(|c| proj(c)).collect();
        let sq = piv.len();
        let dual2 = dd_pointed(&qcoords, sq)?;
        let rays_wq = dd_pointed(&dual2, sq)?;
        // lift: pivot coordinate vectors back through basis
        let lift = |w: &[Q]| -> Vec<Q> {
            let mut x = vec![Q::zero(); ambient];
            for (t, &c) in piv.iter().enumerate() {
                for (xa, bb) in x.iter_mut().zip(&basis[c]) {
                    *xa += &w[t] * bb;
                }
            }
            x
        };
        let lin_ambient: Vec<Vec<Q>> = lin_coords
            .iter()
            .map(|l| {
                let mut x = vec![Q::zero(); ambient];
                for (c, b) in l.iter().zip(basis) {
                    for (xa, bb) in x.iter_mut().zip(b) {
                        *xa += c * bb;
                    }
                }
                primitive(&x)
            })
            .collect();
        Cone::from_pointed_w(ambient, lin_ambient, rays_wq, lift)
    }

    /// Cone from `ineqs . x >= 0` and `eqs . x = 0`.
    pub fn from_inequalities(ineqs: &[Vec<Q>], eqs: &[Vec<Q>]) -> Result<Self, TropError> {
        let ambient = ineqs
            .first()
            .or_else(|| eqs.first())
            .map(|r| r.len())
            .ok_or_else(|| TropError::Invalid("empty cone description".into()))?;
        // solve equalities
        let nbasis: Vec<Vec<Q>> = if eqs.is_empty() {
            (0..ambient)
                .map(|i| {
                    let mut e = vec![Q::zero(); ambient];
                    e[i] = qi(1);
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&QMatrix::from_rows(eqs.to_vec()))
        };
        if nbasis.is_empty() {
            return Err(TropError::Invalid("equalities force the zero cone".into()));
        }
        let z = nbasis.len();
        let rows_z: Vec<Vec<Q>> = ineqs
            .iter()
            .map(|a| nbasis.iter().map(|b| dot(a, b)).collect())
            .collect();
        let rows_z: Vec<Vec<Q>> = rows_z
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        // lineality of the cone in z-space
        let lin_z = if rows_z.is_empty() {
            (0..z)
                .map(|i| {
                    let mut e = vec![Q::zero(); z];
                    e[i] = qi(1);
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&QMatrix::from_rows(rows_z.clone()))
        };
        // complement coordinates: pivots of the row matrix
        let piv: Vec<usize> = if rows_z.is_empty() {
            Vec::new()
        } else {
            linalg::rref(&QMatrix::from_rows(rows_z.clone())).pivots
        };
        // w-space: x = sum w_t * nbasis[piv_t] plus lineality; rows become
        // columns selected at pivots only after projecting out lineality —
        // equivalently parametrize z = C w + L u with C = coordinate
        // injection on pivot columns; a row's value on z is row . C w since
        // rows annihilate L.
        let rows_w: Vec<Vec<Q>> = rows_z
            .iter()
            .map(|r| piv.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let sw = piv.len();
        let rays_w = if sw == 0 { Vec::new() } else { dd_pointed(&rows_w, sw)? };
        let lift = |w: &[Q]| -> Vec<Q> {
            let mut x = vec![Q::zero(); ambient];
            for (t, &c) in piv.iter().enumerate() {
                for (xa, bb) in x.iter_mut().zip(&nbasis[c]) {
                    *xa += &w[t] * bb;
                }
            }
            x
        };
        let lin_ambient: Vec<Vec<Q>> = lin_z
            .iter()
            .map(|l| {
                let mut x = vec![Q::zero(); ambient];
                for (c, b) in l.iter().zip(&nbasis) {
                    for (xa, bb) in x.iter_mut().zip(b) {
                        *xa += c * bb;
                    }
                }
                primitive(&x)
            })
            .collect();
        Cone::from_pointed_w(ambient, lin_ambient, rays_w, lift)
    }

    /// Face counts by dimension `1..=pointed dim`, computed by closing the
    /// ray/facet incidence sets under intersection. Faces inside the
    /// lineality space are not counted separately (our test cones are
    /// pointed).
    pub fn f_vector(&self) -> Vec<u64> {
        let nr = self.rays_w.len();
        assert!(nr <= 128, "f_vector supports up to 128 rays");
        let full: u128 = if nr == 128 { !0 } else { (1u128 << nr) - 1 };
        let facet_masks: Vec<u128> = self
            .facet_rays
            .iter()
            .map(|rs| rs.iter().fold(0u128, |m, &r| m | (1u128 << r)))
            .collect();
        let mut seen: HashSet<u128> = HashSet::new();
        let mut queue: VecDeque<u128> = VecDeque::new();
        seen.insert(full);
        queue.push_back(full);
        while let Some(f) = queue.pop_front() {
            for fm in &facet_masks {
                let g = f & fm;
                if g != 0 && g != f && seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        let pointed_dim = self.dim - self.lineality.len();
        let mut counts = vec![0u64; pointed_dim + 1];
        let faces: Vec<u128> = seen.into_iter().collect();
        let dims: Vec<usize> = {
            use rayon::prelude::*;
            faces
                .par_iter()
                .map(|&mask| {
                    let rows: Vec<Vec<Q>> = (0..nr)
                        .filter(|&r| mask & (1u128 << r) != 0)
                        .map(|r| self.rays_w[r].clone())
                        .collect();
                    linalg::rank_of_rows(&rows)
                })
                .collect()
        };
        for d in dims {
            if d >= 1 {
                counts[d] += 1;
            }
        }
        counts.remove(0);
        counts
    }
}

/// Memoized rank of ray subsets keyed by bitmask, for repeated face-lattice
/// queries on the same cone.
pub struct RaySubsetRank<'a> {
    cone: &'a Cone,
    memo: HashMap<u128, usize>,
}

impl<'a> RaySubsetRank<'a> {
    pub fn new(cone: &'a Cone) -> Self {
        RaySubsetRank { cone, memo: HashMap::new() }
    }

    pub fn rank(&mut self, mask: u128) -> usize {
        if let Some(&r) = self.memo.get(&mask) {
            return r;
        }
        let rows: Vec<Vec<Q>> = (0..self.cone.rays_w.len())
            .filter(|&r| mask & (1u128 << r) != 0)
            .map(|r| self.cone.rays_w[r].clone())
            .collect();
        let r = linalg::rank_of_rows(&rows);
        self.memo.insert(mask, r);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn orthant_from_rays_and_inequalities() {
        let rays = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
        let c = Cone::from_generators(&rays).unwrap();
        assert_eq!(c.n_rays(), 3);
        assert_eq!(c.n_facets(), 3);
        assert_eq!(c.dim, 3);
        assert_eq!(c.f_vector(), vec![3, 3, 1]);

        let c2 = Cone::from_inequalities(&rays, &[]).unwrap();
        assert_eq!(c2.n_rays(), 3);
        assert_eq!(c2.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn square_cone() {
        // cone over a square: 4 rays, 4 facets
        let rays = vec![
            qv(&[1, 1, 1]),
            qv(&[-1, 1, 1]),
            qv(&[1, -1, 1]),
            qv(&[-1, -1, 1]),
        ];
        let c = Cone::from_generators(&rays).unwrap();
        assert_eq!(c.n_rays(), 4);
        assert_eq!(c.n_facets(), 4);
        assert_eq!(c.f_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn redundant_generator_dropped() {
        let rays = vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])];
        let c = Cone::from_generators(&rays).unwrap();
        assert_eq!(c.n_rays(), 2);
        assert_eq!(c.f_vector(), vec![2, 1]);
    }

    #[test]
    fn factorization_cone_k3_fvector() {
        // C^(3) = {c in R^6_{>=0} : balancing}, coordinates
        // (c12, c13, c21, c23, c31, c32); f-vector (5, 9, 6, 1).
        let mut ineqs = Vec::new();
        for i in 0..6 {
            let mut row = vec![Q::zero(); 6];
            row[i] = qi(1);
            ineqs.push(row);
        }
        let eqs = vec![
            // c12 + c13 = c21 + c31
            qv(&[1, 1, -1, 0, -1, 0]),
            // c23 + c21 = c32 + c12
            qv(&[-1, 0, 1, 1, 0, -1]),
            // c31 + c32 = c13 + c23
            qv(&[0, -1, 0, -1, 1, 1]),
        ];
        let c = Cone::from_inequalities(&ineqs, &eqs).unwrap();
        assert_eq!(c.dim, 4);
        assert!(c.lineality.is_empty());
        assert_eq!(c.n_rays(), 5);
        assert_eq!(c.f_vector(), vec![5, 9, 6, 1]);
    }

    #[test]
    fn lower_dimensional_generator_cone() {
        // 2-dim cone inside R^3
        let rays = vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])];
        let c = Cone::from_generators(&rays).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(c.f_vector(), vec![2, 1]);
    }

    #[test]
    fn double_description_roundtrip() {
        // rays -> facets -> rays is the identity up to scaling/order
        let rays = vec![
            qv(&[2, 0, 0]),
            qv(&[0, 3, 0]),
            qv(&[0, 0, 5]),
            qv(&[1, 1, 1]),
        ];
        let c = Cone::from_generators(&rays).unwrap();
        // the interior generator is redundant; three primitive unit rays
        let mut got = c.rays.clone();
        got.sort();
        let mut want = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
        want.sort();
        assert_eq!(got, want);
    }
}
