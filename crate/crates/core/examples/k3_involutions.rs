//! Spin involutions on K3 with b₂⁺ of the quotient forced by the degree.

use spin_actions::topology::{classify_qk3_involution, k3_cover_construction_check, SpinType};

fn main() {
    for ty in [SpinType::Even, SpinType::Odd] {
        let c = classify_qk3_involution(ty).unwrap();
        println!("{ty:?}: b₂⁺ = {}, b₂⁻ = {:?}, fixed points = {:?}", c.b2plus_quotient, c.b2minus_quotient, c.fixed_points);
        for s in &c.splittings {
            println!("  t = {:?}: {:?}", s.t, s.verdict);
        }
    }
    let k = k3_cover_construction_check();
    println!("double cover χ = {}, σ = {}; blown down χ = {}, σ = {}", k.chi_cover, k.sigma_cover, k.chi_blown_down, k.sigma_blown_down);
}
