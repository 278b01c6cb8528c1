use tropfact::blades::*;
use tropfact::subdiv::*;
use tropfact::subsets::KSubset;
use tropfact::trop::{trop_plucker, root_sum, is_positive_tropical_plucker};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let ks = |e: &[u32]| KSubset::new(12, e.iter().copied()).unwrap();
    let y = root_sum(&[ks(&[1, 6, 9]), ks(&[2, 5, 10])], 3, 12).unwrap();
    let pi = trop_plucker(&y).unwrap();
    println!("trop ok ({:?}), positive: {}", t0.elapsed(), is_positive_tropical_plucker(&pi));
    let t1 = Instant::now();
    let sub = lower_hull_cells(&pi, 250).unwrap();
    println!("oracle cells: {} ({:?})", sub.cells.len(), t1.elapsed());
    for c in &sub.cells { println!("  size {}", c.len()); }
    println!("matroidal: {}", is_matroidal(&sub));
    let t2 = Instant::now();
    println!("coarsest: {} (dimW={}) ({:?})", is_coarsest(&pi, &sub), affine_per_cell_dim(&sub), t2.elapsed());
    let g = dual_graph(&sub);
    println!("dual graph edges: {}", g.edges.len());
    // plate refinement path with the +/- expansion blades
    let t3 = Instant::now();
    let blades: Vec<_> = [[1u32,5,9],[1,5,10],[1,6,9],[2,5,9]].iter()
        .map(|e| tropfact::dosp::dosp_of_subset(&ks(e), 12)).collect();
    let plered = plate_refinement(&blades, 3).unwrap();
    println!("plate refinement cells: {} ({:?})", plered.cells.len(), t3.elapsed());
    println!("agree: {}", plered == sub);
    println!("total {:?}", t0.elapsed());
}
