//! With no invariant part of t the λ₋₁ trace at φ·ν has a pole, so no degree exists.

use spin_actions::degree::verify_theorem_c;
use spin_actions::repring::IndexData;

fn main() {
    for idx in [
        IndexData::cyclic_even(1, &[1, 1], &[3, 0]).unwrap(),
        IndexData::odd(2, &[1, 0, 1, 0], &[1, 1, 1, 0]).unwrap(),
    ] {
        let r = verify_theorem_c(&idx).unwrap();
        println!("{}: tr = {}", r.element, r.trace);
        println!("  denominator {}  contradiction: {}", r.offending_denominator, r.certified);
    }
}
