//! Index data of the spin action on a branched cover along a surface.

use spin_actions::topology::{index_from_cover, ManifoldSpec, SurfaceClass};

fn main() {
    let m = ManifoldSpec::connected_sum_cp2(2);
    let class = SurfaceClass::new(vec![4, 4]);
    for g in [6, 7, 8] {
        let c = index_from_cover(&m, &class, g, 2).unwrap();
        println!("g = {g}: k = {}, m = {:?}", c.invariants.k, c.invariants.m);
        for e in &c.equations {
            println!("  {e}");
        }
        for cond in &c.nondegeneracy {
            println!("  {} : {}", cond.name, cond.holds);
        }
    }
}
