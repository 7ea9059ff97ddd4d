//! Minimal genus bounds for characteristic-type classes.

use spin_actions::topology::{genus_bound, ManifoldSpec, SurfaceClass};

fn main() {
    let cases = [
        (ManifoldSpec::connected_sum_cp2(2), vec![6, 2], 1),
        (ManifoldSpec::s2xs2_cp2(), vec![4, 4, 6], 1),
        (ManifoldSpec::connected_sum_cp2(4), vec![4; 4], 2),
        (ManifoldSpec::connected_sum_cp2(8), vec![4; 8], 2),
    ];
    for (m, class, p) in cases {
        let r = genus_bound(&m, &SurfaceClass::new(class), p).unwrap();
        println!(
            "{} {:?} p = {}: furuta {}  refined {}  excluded {:?}  minimum genus {}",
            r.manifold, r.class, r.p, r.furuta_bound, r.refined_bound, r.excluded_genera, r.effective_min_genus
        );
    }
}
