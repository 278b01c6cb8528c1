//! Regular subdivisions of the hypersimplex: plate refinements of blade
//! arrangements, an independent lower-hull oracle, matroid/positroid
//! certification, dual graphs, and the coarsest-subdivision (ray) test.

use crate::blades::HeightVector;
use crate::dosp::Dosp;
use crate::error::TropError;
use crate::linalg::{self, QMatrix};
use crate::rat::{q, qi, Q};
use crate::subsets::{indexer, KSubset};
use crate::trop::is_positive_tropical_plucker;
use crate::wsep::Graph;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// A subdivision of the hypersimplex: maximal cells as sorted lists of
/// subset indices (lexicographic order of the indexer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub k: u32,
    pub n: u32,
    pub cells: Vec<Vec<usize>>,
}

impl Subdivision {
    pub fn cell_subsets(&self, cell: usize) -> Vec<KSubset> {
        let idx = indexer(self.k, self.n);
        self.cells[cell].iter().map(|&i| idx.subsets[i].clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1
    }

    pub fn covers_all_vertices(&self) -> bool {
        let total = indexer(self.k, self.n).len();
        let mut seen = vec![false; total];
        for c in &self.cells {
            for &v in c {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }
}

fn vertex_coords(k: u32, n: u32) -> Vec<Vec<Q>> {
    indexer(k, n)
        .subsets
        .iter()
        .map(|s| (1..=n).map(|x| if s.contains(x) { qi(1) } else { Q::zero() }).collect())
        .collect()
}

/// The plate with leading block `j`: vertices satisfying the cyclic chain
/// `x_{S_j} >= r_j`, `x_{S_j}+x_{S_{j+1}} >= r_j+r_{j+1}`, ...
pub fn plate_vertices(d: &Dosp, lead: usize, k: u32) -> Vec<usize> {
    let n = d.n;
    let idx = indexer(k, n);
    let dd = d.d();
    let mut out = Vec::new();
    'vertex: for (pos, s) in idx.subsets.iter().enumerate() {
        let inc = d.incidence(s);
        let mut lhs = 0i64;
        let mut rhs = 0i64;
        for t in 0..dd.saturating_sub(1) {
            let b = (lead + t) % dd;
            lhs += inc[b] as i64;
            rhs += d.decorations[b] as i64;
            if lhs < rhs {
                continue 'vertex;
            }
        }
        out.push(pos);
    }
    out
}

/// Common refinement of the plate complexes of a positively weighted,
/// pairwise weakly separated blade collection: pick one plate per blade,
/// intersect vertex sets, keep full-dimensional intersections.
pub fn plate_refinement(blades: &[Dosp], k: u32) -> Result<Subdivision, TropError> {
    let n = blades.first().ok_or_else(|| TropError::Invalid("no blades".into()))?.n;
    let coords = vertex_coords(k, n);
    let per_blade: Vec<Vec<Vec<usize>>> = blades
        .iter()
        .map(|d| (0..d.d()).map(|lead| plate_vertices(d, lead, k)).collect())
        .collect();
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut choice = vec![0usize; blades.len()];
    loop {
        // intersect the chosen plates
        let mut cell: Vec<usize> = per_blade[0][choice[0]].clone();
        for b in 1..blades.len() {
            let set: HashSet<usize> = per_blade[b][choice[b]].iter().copied().collect();
            cell.retain(|v| set.contains(v));
            if cell.is_empty() {
                break;
            }
        }
        if !cell.is_empty() {
            let pts: Vec<Vec<Q>> = cell.iter().map(|&v| coords[v].clone()).collect();
            if linalg::affine_dim(&pts) == n as i64 - 1 {
                cells.insert(cell);
            }
        }
        // odometer over plate choices
        let mut b = 0;
        loop {
            if b == blades.len() {
                let cells: Vec<Vec<usize>> = cells.into_iter().collect();
                return Ok(Subdivision { k, n, cells });
            }
            choice[b] += 1;
            if choice[b] < per_blade[b].len() {
                break;
            }
            choice[b] = 0;
            b += 1;
        }
    }
}

/// A supporting functional of a lower-hull cell: `pi_I + <u, e_I> >= c`,
/// with equality exactly on the cell.
struct Support {
    u: Vec<Q>,
    c: Q,
}

fn support_values(pi: &HeightVector, coords: &[Vec<Q>], u: &[Q]) -> Vec<Q> {
    coords
        .iter()
        .zip(&pi.coeffs)
        .map(|(x, p)| p + x.iter().zip(u).map(|(a, b)| a * b).sum::<Q>())
        .collect()
}

/// Exact lower-hull enumeration of the maximal cells of the regular
/// subdivision induced by `pi`, by support rotation: grow a tight set to a
/// full cell, then breadth-first across interior walls.
pub fn lower_hull_cells(pi: &HeightVector, guard: usize) -> Result<Subdivision, TropError> {
    let (k, n) = (pi.k, pi.n);
    let idx = indexer(k, n);
    let m = idx.len();
    if m > guard {
        return Err(TropError::Guard(format!(
            "lower hull oracle guarded at {guard} vertices, (k,n)=({k},{n}) has {m}"
        )));
    }
    let coords = vertex_coords(k, n);
    // degenerate: pi affine on the whole hypersimplex
    {
        let lifted: Vec<Vec<Q>> = coords
            .iter()
            .zip(&pi.coeffs)
            .map(|(x, p)| {
                let mut v = x.clone();
                v.push(p.clone());
                v
            })
            .collect();
        let full: Vec<Vec<Q>> = coords.to_vec();
        if linalg::affine_dim(&lifted) == linalg::affine_dim(&full) {
            return Ok(Subdivision { k, n, cells: vec![(0..m).collect()] });
        }
    }
    let dim_cell = n as i64 - 1;

    // deterministic pseudo-generic start direction
    let mut u: Vec<Q> = (0..n as i64).map(|i| q(7 * i * i + 3 * i + 1, 64)).collect();
    let mut c;
    let mut tight: Vec<usize>;
    loop {
        let vals = support_values(pi, &coords, &u);
        c = vals.iter().min().unwrap().clone();
        tight = (0..m).filter(|&i| vals[i] == c).collect();
        let pts: Vec<Vec<Q>> = tight.iter().map(|&v| coords[v].clone()).collect();
        if linalg::affine_dim(&pts) == dim_cell {
            break;
        }
        // rotate to enlarge the tight set: try each nontrivial direction in
        // both orientations until one hits a new point at finite t
        let dirs = rotation_directions(&coords, &tight, n);
        let mut moved = false;
        'dirs: for (du, dc) in dirs {
            for sign in [1i64, -1i64] {
                let du_s: Vec<Q> = du.iter().map(|x| x * qi(sign)).collect();
                let dc_s = &dc * qi(sign);
                if let Some((t, _)) = min_ratio(&coords, pi, &u, &c, &du_s, &dc_s, &tight) {
                    for (ui, d) in u.iter_mut().zip(&du_s) {
                        *ui += &t * d;
                    }
                    c += &t * &dc_s;
                    moved = true;
                    break 'dirs;
                }
            }
        }
        if !moved {
            return Err(TropError::Invalid("cannot grow initial cell".into()));
        }
    }

    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<usize>, Support)> = VecDeque::new();
    cells.insert(tight.clone());
    queue.push_back((tight, Support { u, c }));
    while let Some((cell, sup)) = queue.pop_front() {
        // facets of the cell polytope via cone over the lifted vertices
        let gens: Vec<Vec<Q>> = cell
            .iter()
            .map(|&v| {
                let mut g = coords[v].clone();
                g.push(qi(1));
                g
            })
            .collect();
        let cone = crate::cone::Cone::from_generators(&gens)?;
        // cone rays are re-normalized and sorted; map them back to vertices
        let ray_vertex: Vec<usize> = cone
            .rays
            .iter()
            .map(|r| {
                let pos = gens
                    .iter()
                    .position(|g| g == r)
                    .expect("every 0/1 vertex is an extreme ray of its cell");
                cell[pos]
            })
            .collect();
        for fr in &cone.facet_rays {
            let ridge: Vec<usize> = fr.iter().map(|&t| ray_vertex[t]).collect();
            let pts: Vec<Vec<Q>> = ridge.iter().map(|&v| coords[v].clone()).collect();
            if linalg::affine_dim(&pts) != dim_cell - 1 {
                continue;
            }
            // rotate the support across this ridge, away from the cell
            let outside: Vec<usize> =
                cell.iter().copied().filter(|v| !ridge.contains(v)).collect();
            let Some((du, dc)) = rotation_direction_across(&coords, &ridge, n, &outside) else {
                continue;
            };
            let Some((t, _)) = min_ratio(&coords, pi, &sup.u, &sup.c, &du, &dc, &cell) else {
                // wall on the boundary of the hypersimplex
                continue;
            };
            let mut u2 = sup.u.clone();
            for (ui, d) in u2.iter_mut().zip(&du) {
                *ui += &t * d;
            }
            let c2 = &sup.c + &t * &dc;
            let vals = support_values(pi, &coords, &u2);
            let min = vals.iter().min().unwrap().clone();
            if min != c2 {
                continue;
            }
            let new_cell: Vec<usize> = (0..m).filter(|&i| vals[i] == c2).collect();
            let pts: Vec<Vec<Q>> = new_cell.iter().map(|&v| coords[v].clone()).collect();
            if linalg::affine_dim(&pts) != dim_cell {
                continue;
            }
            if cells.insert(new_cell.clone()) {
                queue.push_back((new_cell, Support { u: u2, c: c2 }));
            }
        }
    }
    Ok(Subdivision { k, n, cells: cells.into_iter().collect() })
}

/// All nontrivial directions `(du, dc)` keeping the support tight on
/// `tight` (the global-shift direction with constant du is dropped).
fn rotation_directions(coords: &[Vec<Q>], tight: &[usize], n: u32) -> Vec<(Vec<Q>, Q)> {
    // unknowns (du, dc): du . e_I - dc = 0 for I in tight
    let rows: Vec<Vec<Q>> = tight
        .iter()
        .map(|&v| {
            let mut r = coords[v].clone();
            r.push(qi(-1));
            r
        })
        .collect();
    let null = linalg::nullspace(&QMatrix::from_rows(rows));
    null.into_iter()
        .filter_map(|cand| {
            let du = cand[..n as usize].to_vec();
            let dc = cand[n as usize].clone();
            if du.iter().all(|x| x == &du[0]) {
                None
            } else {
                Some((du, dc))
            }
        })
        .collect()
}

/// A direction rotating the support across a ridge, away from the cell:
/// tight on the ridge, with every released cell vertex strictly positive.
fn rotation_direction_across(
    coords: &[Vec<Q>],
    ridge: &[usize],
    n: u32,
    release: &[usize],
) -> Option<(Vec<Q>, Q)> {
    for (du, dc) in rotation_directions(coords, ridge, n) {
        let rate = |v: usize| -> Q {
            coords[v].iter().zip(&du).map(|(a, b)| a * b).sum::<Q>() - dc.clone()
        };
        let rates: Vec<Q> = release.iter().map(|&v| rate(v)).collect();
        if rates.iter().all(|r| r.is_positive()) {
            return Some((du, dc));
        }
        if rates.iter().all(|r| r.is_negative()) {
            return Some((du.iter().map(|x| -x).collect(), -dc));
        }
        // mixed signs: not a supporting rotation for this ridge
    }
    None
}

/// Smallest `t > 0` at which a non-tight point becomes tight along the
/// rotation; `None` when the rotation is unbounded (boundary wall).
fn min_ratio(
    coords: &[Vec<Q>],
    pi: &HeightVector,
    u: &[Q],
    c: &Q,
    du: &[Q],
    dc: &Q,
    current_tight: &[usize],
) -> Option<(Q, Vec<usize>)> {
    let mut best: Option<Q> = None;
    let mut hitters: Vec<usize> = Vec::new();
    for i in 0..coords.len() {
        if current_tight.contains(&i) {
            continue;
        }
        let slack: Q = &pi.coeffs[i]
            + coords[i].iter().zip(u).map(|(a, b)| a * b).sum::<Q>()
            - c.clone();
        let rate: Q = coords[i].iter().zip(du).map(|(a, b)| a * b).sum::<Q>() - dc.clone();
        if rate.is_negative() {
            // slack >= 0, rate < 0: tie at t = slack / (-rate)
            let t = slack / -rate;
            match &best {
                None => {
                    best = Some(t);
                    hitters = vec![i];
                }
                Some(b) => {
                    if &t < b {
                        best = Some(t);
                        hitters = vec![i];
                    } else if &t == b {
                        hitters.push(i);
                    }
                }
            }
        }
    }
    best.map(|t| (t, hitters))
}

/// Subdivision induced by an explicit blade combination. Nonnegative
/// combinations use the plate-refinement path (the common refinement of the
/// constituent multi-splits, which is the regular subdivision for
/// compatible blades and has no size guard); mixed-sign combinations are
/// genuinely different objects and go through the lower-hull oracle.
pub fn subdivision_from_height(
    terms: &[(Dosp, Q)],
    k: u32,
    guard: usize,
) -> Result<Subdivision, TropError> {
    let n = terms
        .first()
        .ok_or_else(|| TropError::Invalid("empty blade combination".into()))?
        .0
        .n;
    let active: Vec<&(Dosp, Q)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
    if active.is_empty() {
        return lower_hull_cells(&HeightVector::zero(k, n), guard);
    }
    if active.iter().all(|(_, c)| c.is_positive()) {
        let blades: Vec<Dosp> = active.iter().map(|(d, _)| d.clone()).collect();
        return plate_refinement(&blades, k);
    }
    let mut pi = HeightVector::zero(k, n);
    for (d, c) in &active[..] {
        pi.add_scaled(&crate::blades::height_of_dosp(d, k), c);
    }
    lower_hull_cells(&pi, guard)
}

/// Basis exchange on every cell's vertex set.
pub fn is_matroidal(sub: &Subdivision) -> bool {
    let idx = indexer(sub.k, sub.n);
    for cell in &sub.cells {
        let bases: HashSet<&Vec<u32>> =
            cell.iter().map(|&v| &idx.subsets[v].elems).collect();
        for &a in cell {
            for &b in cell {
                if a == b {
                    continue;
                }
                let sa = &idx.subsets[a];
                let sb = &idx.subsets[b];
                for &x in sa.elems.iter().filter(|x| !sb.contains(**x)) {
                    let mut found = false;
                    for &y in sb.elems.iter().filter(|y| !sa.contains(**y)) {
                        let mut cand: Vec<u32> =
                            sa.elems.iter().copied().filter(|&e| e != x).collect();
                        cand.push(y);
                        cand.sort_unstable();
                        if bases.contains(&cand) {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Secondary matroid certificate: every edge of each cell polytope is a
/// difference of two unit vectors. Only run on small cells.
pub fn cells_have_root_edges(sub: &Subdivision) -> Result<bool, TropError> {
    let idx = indexer(sub.k, sub.n);
    for cell in &sub.cells {
        let gens: Vec<Vec<Q>> = cell
            .iter()
            .map(|&v| {
                let mut g: Vec<Q> = (1..=sub.n)
                    .map(|x| if idx.subsets[v].contains(x) { qi(1) } else { Q::zero() })
                    .collect();
                g.push(qi(1));
                g
            })
            .collect();
        let cone = crate::cone::Cone::from_generators(&gens)?;
        // edges of the polytope = 2-ray faces of the cone over it
        let nr = cone.n_rays();
        let mut rank = crate::cone::RaySubsetRank::new(&cone);
        for a in 0..nr {
            for b in (a + 1)..nr {
                let mask = (1u128 << a) | (1u128 << b);
                // the pair spans an edge iff it is the intersection of the
                // facets containing both
                let mut common: Option<u128> = None;
                for fr in &cone.facet_rays {
                    let fm = fr.iter().fold(0u128, |m, &r| m | (1u128 << r));
                    if fm & mask == mask {
                        common = Some(common.map_or(fm, |c| c & fm));
                    }
                }
                if common != Some(mask) || rank.rank(mask) != 2 {
                    continue;
                }
                let d: Vec<Q> = cone.rays[a]
                    .iter()
                    .zip(&cone.rays[b])
                    .map(|(x, y)| x - y)
                    .collect();
                // drop homogenizing coordinate; direction must be e_i - e_j
                let mut pos = 0;
                let mut neg = 0;
                for v in &d[..sub.n as usize] {
                    if v.is_positive() {
                        pos += 1;
                    } else if v.is_negative() {
                        neg += 1;
                    }
                }
                if !(pos == 1 && neg == 1) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Positroidal = matroidal cells + the inducing height is a positive
/// tropical Pluecker vector.
pub fn is_positroidal(sub: &Subdivision, pi: &HeightVector) -> bool {
    is_matroidal(sub) && is_positive_tropical_plucker(pi)
}

/// Dual graph: nodes are maximal cells, edges join cells whose intersection
/// has codimension one.
pub fn dual_graph(sub: &Subdivision) -> Graph {
    let coords = vertex_coords(sub.k, sub.n);
    let mut g = Graph::new((0..sub.cells.len()).map(|i| format!("cell{i}")).collect());
    for a in 0..sub.cells.len() {
        let sa: HashSet<usize> = sub.cells[a].iter().copied().collect();
        for b in (a + 1)..sub.cells.len() {
            let common: Vec<usize> =
                sub.cells[b].iter().copied().filter(|v| sa.contains(v)).collect();
            if common.is_empty() {
                continue;
            }
            let pts: Vec<Vec<Q>> = common.iter().map(|&v| coords[v].clone()).collect();
            if linalg::affine_dim(&pts) == sub.n as i64 - 2 {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Dimension of the space W of vertex heights affine on every maximal cell.
/// Affine functions contribute n (the constant overlaps the sum relation);
/// the subdivision is coarsest iff exactly one more degree of freedom
/// remains: dim W = n + 1.
pub fn affine_per_cell_dim(sub: &Subdivision) -> usize {
    let (k, n) = (sub.k, sub.n);
    let coords = vertex_coords(k, n);
    let m = coords.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for cell in &sub.cells {
        // greedy affine basis of the cell
        let mut basis: Vec<usize> = Vec::new();
        let mut basis_pts: Vec<Vec<Q>> = Vec::new();
        for &v in cell {
            let mut trial = basis_pts.clone();
            trial.push(coords[v].clone());
            if linalg::affine_dim(&trial) as usize == trial.len() - 1 {
                basis.push(v);
                basis_pts.push(coords[v].clone());
            }
        }
        // interpolation constraints for the remaining vertices
        let bsize = basis.len();
        let mut sys = QMatrix::zero(n as usize + 1, bsize);
        for (col, &bv) in basis.iter().enumerate() {
            for r in 0..n as usize {
                sys[(r, col)] = coords[bv][r].clone();
            }
            sys[(n as usize, col)] = qi(1);
        }
        for &v in cell {
            if basis.contains(&v) {
                continue;
            }
            let mut rhs: Vec<Q> = coords[v].clone();
            rhs.push(qi(1));
            let lambda = linalg::solve(&sys, &rhs)
                .expect("dims")
                .expect("cell vertex lies in the affine hull of its basis");
            let mut row = vec![Q::zero(); m];
            row[v] = qi(1);
            for (col, &bv) in basis.iter().enumerate() {
                row[bv] -= &lambda[col];
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return m;
    }
    m - linalg::rank_of_rows(&rows)
}

/// Coarsest test for the subdivision induced by `pi`.
pub fn is_coarsest(pi: &HeightVector, sub: &Subdivision) -> bool {
    !sub.is_trivial() && affine_per_cell_dim(sub) == pi.n as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blades::{height_of_dosp, height_of_subset};
    use crate::dosp::{dosp_of_subset, parse_dosp};

    fn ks(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn trivial_subdivision_from_zero_height() {
        let pi = HeightVector::zero(3, 6);
        let sub = lower_hull_cells(&pi, 250).unwrap();
        assert!(sub.is_trivial());
        assert!(is_matroidal(&sub));
        assert_eq!(dual_graph(&sub).labels.len(), 1);
    }

    #[test]
    fn three_split_plates_at_36() {
        let d = parse_dosp("12_1|34_1|56_1", 6).unwrap();
        let sub = plate_refinement(&[d.clone()], 3).unwrap();
        assert_eq!(sub.cells.len(), 3);
        assert!(sub.covers_all_vertices());
        assert!(is_matroidal(&sub));
        // oracle agreement
        let pi = height_of_dosp(&d, 3);
        let oracle = lower_hull_cells(&pi, 250).unwrap();
        assert_eq!(sub, oracle);
        // multi-splits are coarsest
        assert!(is_coarsest(&pi, &sub));
    }

    #[test]
    fn two_split_oracle_agreement() {
        let d = parse_dosp("12_1|3456_2", 6).unwrap();
        let sub = plate_refinement(&[d.clone()], 3).unwrap();
        let pi = height_of_dosp(&d, 3);
        let oracle = lower_hull_cells(&pi, 250).unwrap();
        assert_eq!(sub, oracle);
        assert_eq!(sub.cells.len(), 2);
    }

    #[test]
    fn refinement_of_weakly_separated_pair() {
        // h_135 + h_136: a 2-parameter refinement, not coarsest
        let mut pi = height_of_subset(&ks(6, &[1, 3, 5]), 3, 6);
        pi.add_scaled(&height_of_subset(&ks(6, &[1, 3, 6]), 3, 6), &qi(1));
        let sub = lower_hull_cells(&pi, 250).unwrap();
        let blades =
            vec![dosp_of_subset(&ks(6, &[1, 3, 5]), 6), dosp_of_subset(&ks(6, &[1, 3, 6]), 6)];
        let plated = plate_refinement(&blades, 3).unwrap();
        assert_eq!(sub, plated);
        assert!(is_matroidal(&sub));
        assert!(!is_coarsest(&pi, &sub));
        assert_eq!(affine_per_cell_dim(&sub), 6 + 2);
    }

    #[test]
    fn non_weakly_separated_pair_not_matroidal() {
        let mut pi = height_of_subset(&ks(6, &[1, 3, 5]), 3, 6);
        pi.add_scaled(&height_of_subset(&ks(6, &[2, 4, 6]), 3, 6), &qi(1));
        let sub = lower_hull_cells(&pi, 250).unwrap();
        assert!(!is_matroidal(&sub));
        assert!(!is_positroidal(&sub, &pi));
    }

    #[test]
    fn single_blade_coarsest_sweep_36() {
        for j in crate::subsets::enumerate_nonfrozen(3, 6) {
            let d = dosp_of_subset(&j, 6);
            let pi = height_of_dosp(&d, 3);
            let sub = plate_refinement(&[d.clone()], 3).unwrap();
            assert_eq!(sub.cells.len(), d.d());
            assert!(is_coarsest(&pi, &sub), "multi-split of {j} must be coarsest");
            assert!(is_matroidal(&sub));
        }
    }

    #[test]
    fn root_edge_certificate_on_multisplits() {
        let d = parse_dosp("12_1|34_1|56_1", 6).unwrap();
        let sub = plate_refinement(&[d], 3).unwrap();
        assert!(cells_have_root_edges(&sub).unwrap());
    }

    #[test]
    fn dual_graph_of_three_split() {
        let d = parse_dosp("12_1|34_1|56_1", 6).unwrap();
        let sub = plate_refinement(&[d], 3).unwrap();
        let g = dual_graph(&sub);
        // three plates pairwise share a wall
        assert_eq!(g.edges.len(), 3);
    }
}
