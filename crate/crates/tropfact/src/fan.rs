//! Common-refinement fans of min-plus structures.
//!
//! A `MinStructure` is a list of summands, each the vertex set of a Newton
//! polytope (integer exponent vectors). Maximal cones of the common
//! refinement of their normal fans (min convention) are enumerated by
//! breadth-first facet crossing; each cone corresponds to one minimizing
//! vertex per summand, i.e. to a vertex of the Minkowski sum.

use crate::cone::Cone;
use crate::error::TropError;
use crate::linalg;
use crate::rat::{q, qi, Q};
use num_traits::Zero;
use std::collections::{HashMap, VecDeque};

/// One summand: polytope vertices (reduced from the raw monomial list) and
/// vertex adjacency along polytope edges.
pub struct Summand {
    pub verts: Vec<Vec<i64>>,
    pub adj: Vec<Vec<usize>>,
}

impl Summand {
    /// Reduces a raw monomial list to polytope vertices with adjacency.
    pub fn from_monomials(monos: &[Vec<i64>]) -> Result<Self, TropError> {
        if monos.len() == 1 {
            return Ok(Summand { verts: vec![monos[0].clone()], adj: vec![vec![]] });
        }
        let gens: Vec<Vec<Q>> = monos
            .iter()
            .map(|m| {
                let mut g: Vec<Q> = m.iter().map(|&x| qi(x)).collect();
                g.push(qi(1));
                g
            })
            .collect();
        let cone = Cone::from_generators(&gens)?;
        // map cone rays back to monomials
        let vert_ids: Vec<usize> = cone
            .rays
            .iter()
            .map(|r| {
                gens.iter()
                    .position(|g| g == r)
                    .expect("integer monomial points are primitive homogenized")
            })
            .collect();
        let nr = cone.n_rays();
        let mut rank = crate::cone::RaySubsetRank::new(&cone);
        let facet_masks: Vec<u128> = cone
            .facet_rays
            .iter()
            .map(|fr| fr.iter().fold(0u128, |m, &r| m | (1u128 << r)))
            .collect();
        let mut adj = vec![Vec::new(); nr];
        for a in 0..nr {
            for b in (a + 1)..nr {
                let mask = (1u128 << a) | (1u128 << b);
                let mut common: Option<u128> = None;
                for fm in &facet_masks {
                    if fm & mask == mask {
                        common = Some(common.map_or(*fm, |c| c & fm));
                    }
                }
                if common == Some(mask) && rank.rank(mask) == 2 {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        // degenerate segments and points have no facet pairs; connect all
        if nr == 2 {
            adj = vec![vec![1], vec![0]];
        }
        let verts: Vec<Vec<i64>> = vert_ids.iter().map(|&i| monos[i].clone()).collect();
        Ok(Summand { verts, adj })
    }

    fn min_at(&self, u: &[Q]) -> (Q, Vec<usize>) {
        let mut best: Option<Q> = None;
        let mut arg = Vec::new();
        for (i, v) in self.verts.iter().enumerate() {
            let val: Q = v.iter().zip(u).map(|(&a, b)| qi(a) * b).sum();
            match &best {
                None => {
                    best = Some(val);
                    arg = vec![i];
                }
                Some(b) => {
                    if &val < b {
                        best = Some(val);
                        arg = vec![i];
                    } else if &val == b {
                        arg.push(i);
                    }
                }
            }
        }
        (best.unwrap(), arg)
    }
}

pub struct MinStructure {
    pub dim: usize,
    pub summands: Vec<Summand>,
}

/// A maximal cone of the common refinement: the minimizing vertex per
/// summand, plus its extreme rays and lineality from double description.
pub struct FanCone {
    pub tuple: Vec<usize>,
    pub rays: Vec<Vec<Q>>,
    pub lineality: Vec<Vec<Q>>,
}

impl MinStructure {
    pub fn new(dim: usize, summands: Vec<Summand>) -> Self {
        MinStructure { dim, summands }
    }

    /// Deterministic pseudo-generic directions for tie refinement.
    fn generic_dir(&self, round: i64) -> Vec<Q> {
        (0..self.dim as i64)
            .map(|i| q(((round + 3) * (i * i + 1) + 7 * i + round * round) % 1009 + 1, 64))
            .collect()
    }

    /// Refines per-summand argmin sets along successive generic directions
    /// until each is a single vertex; the result is the maximal cone whose
    /// closure contains `u` on the side selected by the direction sequence.
    fn resolve_tuple(&self, u: &[Q], first_dir: Option<&[Q]>) -> Vec<usize> {
        let mut args: Vec<Vec<usize>> = self.summands.iter().map(|s| s.min_at(u).1).collect();
        let mut round = 0;
        loop {
            if args.iter().all(|a| a.len() == 1) {
                return args.into_iter().map(|a| a[0]).collect();
            }
            let d: Vec<Q> = if round == 0 {
                match first_dir {
                    Some(d) => d.to_vec(),
                    None => self.generic_dir(0),
                }
            } else {
                self.generic_dir(round)
            };
            for (s, arg) in self.summands.iter().zip(args.iter_mut()) {
                if arg.len() == 1 {
                    continue;
                }
                let mut best: Option<Q> = None;
                let mut keep = Vec::new();
                for &i in arg.iter() {
                    let val: Q =
                        s.verts[i].iter().zip(&d).map(|(&a, b)| qi(a) * b).sum();
                    match &best {
                        None => {
                            best = Some(val);
                            keep = vec![i];
                        }
                        Some(b) => {
                            if &val < b {
                                best = Some(val);
                                keep = vec![i];
                            } else if &val == b {
                                keep.push(i);
                            }
                        }
                    }
                }
                *arg = keep;
            }
            round += 1;
            assert!(round < 200, "tie refinement failed to converge");
        }
    }

    /// Inequality rows of the cone of a tuple: edge neighbors only.
    fn cone_rows(&self, tuple: &[usize]) -> Vec<Vec<Q>> {
        let mut rows = Vec::new();
        for (s, &t) in self.summands.iter().zip(tuple) {
            for &o in &s.adj[t] {
                let row: Vec<Q> = s.verts[o]
                    .iter()
                    .zip(&s.verts[t])
                    .map(|(&a, &b)| qi(a - b))
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    pub fn cone_of_tuple(&self, tuple: &[usize]) -> Result<Cone, TropError> {
        let rows = self.cone_rows(tuple);
        if rows.is_empty() {
            // single cone: all of space
            return Cone::from_inequalities(&[vec![Q::zero(); self.dim]], &[]);
        }
        Cone::from_inequalities(&rows, &[])
    }

    /// True when the tuple's vertex minimizes every summand at `u`.
    pub fn tuple_active_at(&self, tuple: &[usize], u: &[Q]) -> bool {
        self.summands.iter().zip(tuple).all(|(s, &t)| {
            let (m, _) = s.min_at(u);
            let val: Q = s.verts[t].iter().zip(u).map(|(&a, b)| qi(a) * b).sum();
            val == m
        })
    }

    /// Enumerates maximal cones by facet crossing. With `star_at`, only the
    /// cones whose closure contains the given point are visited (the star of
    /// that point), seeded from the point itself.
    pub fn enumerate(&self, star_at: Option<&[Q]>) -> Result<Vec<FanCone>, TropError> {
        let start = match star_at {
            Some(p) => self.resolve_tuple(p, None),
            None => {
                let u = self.generic_dir(1);
                self.resolve_tuple(&u, None)
            }
        };
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out: Vec<FanCone> = Vec::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        seen.insert(start.clone(), 0);
        queue.push_back(start);
        while let Some(tuple) = queue.pop_front() {
            let cone = self.cone_of_tuple(&tuple)?;
            let pointed_dim = cone.dim - cone.lineality.len();
            for fr in &cone.facet_rays {
                if fr.is_empty() && pointed_dim > 1 {
                    continue;
                }
                // relint point of the facet and an interior point
                let mut u_f = vec![Q::zero(); self.dim];
                for &r in fr {
                    for (a, b) in u_f.iter_mut().zip(&cone.rays[r]) {
                        *a += b;
                    }
                }
                let mut u_int = vec![Q::zero(); self.dim];
                for ray in &cone.rays {
                    for (a, b) in u_int.iter_mut().zip(ray) {
                        *a += b;
                    }
                }
                // crossing direction: from interior through the facet
                let d: Vec<Q> = u_f.iter().zip(&u_int).map(|(a, b)| a - b).collect();
                if d.iter().all(Q::is_zero) {
                    continue;
                }
                let neighbor = self.resolve_tuple(&u_f, Some(&d));
                if neighbor == tuple {
                    continue;
                }
                if let Some(p) = star_at {
                    if !self.tuple_active_at(&neighbor, p) {
                        continue;
                    }
                }
                if !seen.contains_key(&neighbor) {
                    seen.insert(neighbor.clone(), out.len() + 1);
                    queue.push_back(neighbor.clone());
                }
            }
            out.push(FanCone {
                tuple,
                rays: cone.rays.clone(),
                lineality: cone.lineality.clone(),
            });
        }
        Ok(out)
    }

    /// Minkowski-sum vertex of a tuple.
    pub fn tuple_vertex(&self, tuple: &[usize]) -> Vec<i64> {
        let mut v = vec![0i64; self.summands[0].verts[0].len()];
        for (s, &t) in self.summands.iter().zip(tuple) {
            for (a, b) in v.iter_mut().zip(&s.verts[t]) {
                *a += b;
            }
        }
        v
    }
}

/// Triangulates a pointed cone given by its extreme rays into simplicial
/// subcones (lists of ray indices), by recursive pulling: cone the
/// lexicographically first ray over the facets not containing it.
pub fn triangulate_rays(rays: &[Vec<Q>]) -> Result<Vec<Vec<usize>>, TropError> {
    let dim = linalg::rank_of_rows(rays);
    triangulate_impl(rays, &(0..rays.len()).collect::<Vec<_>>(), dim)
}

fn triangulate_impl(
    all: &[Vec<Q>],
    members: &[usize],
    dim: usize,
) -> Result<Vec<Vec<usize>>, TropError> {
    if members.len() == dim {
        return Ok(vec![members.to_vec()]);
    }
    let gens: Vec<Vec<Q>> = members.iter().map(|&i| all[i].clone()).collect();
    let cone = Cone::from_generators(&gens)?;
    if !cone.lineality.is_empty() {
        return Err(TropError::Invalid("cannot triangulate a non-pointed cone".into()));
    }
    // map cone rays back to member ids
    let ray_ids: Vec<usize> = cone
        .rays
        .iter()
        .map(|r| {
            let pos = gens
                .iter()
                .position(|g| &crate::cone::primitive(g) == r)
                .expect("extreme rays come from the generators");
            members[pos]
        })
        .collect();
    if ray_ids.len() == dim {
        return Ok(vec![ray_ids]);
    }
    let apex_pos = (0..ray_ids.len()).min_by_key(|&i| ray_ids[i]).unwrap();
    let mut out = Vec::new();
    for fr in &cone.facet_rays {
        if fr.contains(&apex_pos) {
            continue;
        }
        let facet_members: Vec<usize> = fr.iter().map(|&i| ray_ids[i]).collect();
        for simplex in triangulate_impl(all, &facet_members, dim - 1)? {
            let mut s = simplex;
            s.push(ray_ids[apex_pos]);
            s.sort_unstable();
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summand(monos: &[&[i64]]) -> Summand {
        Summand::from_monomials(&monos.iter().map(|m| m.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn segment_summand_has_two_cones() {
        // min(0, y): two cones y >= 0 and y <= 0
        let ms = MinStructure::new(1, vec![summand(&[&[0], &[1]])]);
        let cones = ms.enumerate(None).unwrap();
        assert_eq!(cones.len(), 2);
    }

    #[test]
    fn interior_monomials_are_dropped() {
        let s = summand(&[&[0], &[1], &[2]]);
        assert_eq!(s.verts.len(), 2);
    }

    #[test]
    fn two_segments_in_the_plane() {
        // min(0,x) and min(0,y): four quadrant cones
        let ms = MinStructure::new(
            2,
            vec![summand(&[&[0, 0], &[1, 0]]), summand(&[&[0, 0], &[0, 1]])],
        );
        let cones = ms.enumerate(None).unwrap();
        assert_eq!(cones.len(), 4);
    }

    #[test]
    fn star_restriction_keeps_cones_touching_the_point() {
        let ms = MinStructure::new(
            2,
            vec![summand(&[&[0, 0], &[1, 0]]), summand(&[&[0, 0], &[0, 1]])],
        );
        // the point (1, 0) lies on the wall x free, y = 0: two cones touch it
        let p = vec![qi(0), qi(1)];
        let cones = ms.enumerate(Some(&p)).unwrap();
        assert_eq!(cones.len(), 2);
    }

    #[test]
    fn triangulation_of_square_cone() {
        let rays = vec![
            vec![qi(1), qi(0), qi(1)],
            vec![qi(0), qi(1), qi(1)],
            vec![qi(-1), qi(0), qi(1)],
            vec![qi(0), qi(-1), qi(1)],
        ];
        let tris = triangulate_rays(&rays).unwrap();
        assert_eq!(tris.len(), 2);
        for t in &tris {
            assert_eq!(t.len(), 3);
        }
    }

    #[test]
    fn hexagon_fan() {
        // Newt of min(0, x, y, x+y): the square; together with min(0, x-y):
        // refines into 6 cones
        let ms = MinStructure::new(
            2,
            vec![
                summand(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
                summand(&[&[0, 0], &[1, -1]]),
            ],
        );
        let cones = ms.enumerate(None).unwrap();
        assert_eq!(cones.len(), 6);
    }
}
