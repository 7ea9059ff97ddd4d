//! The representation ring: fusion rules, characters and restriction to S¹.

use spin_actions::repring::{parse_ring_expr, GroupElement, GroupSpec, Pin2Part};

fn main() {
    let pin2 = GroupSpec::trivial();
    for expr in ["h1*h1", "h1*h2", "(1 - t1)^2", "h2*t1"] {
        println!("{expr} = {}", parse_ring_expr(expr, &pin2).unwrap());
    }

    let odd = GroupSpec::odd(1).unwrap();
    let e = parse_ring_expr("z1*h1 + z1^2*t1", &odd).unwrap();
    println!("over {odd}: {e}");
    println!("  restricted to S¹: {}", e.restrict_to_circle());
    for pin in [Pin2Part::GenericTorus, Pin2Part::J] {
        for a in odd.elements() {
            let g = GroupElement::new(pin, a);
            println!("  tr at {}: {}", g.label(&odd), e.character(&g));
        }
    }
}
