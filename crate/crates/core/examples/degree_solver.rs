//! Trace equations for index data, their solution, and the resulting inequality.

use spin_actions::degree::{build_trace_system, check_nondegeneracy, conclude_bound, solve_degree, DEFAULT_H_CUTOFF};
use spin_actions::repring::IndexData;

fn main() {
    let cases = [
        ("Pin(2), k = 1, m = 3", IndexData::furuta(1, 3).unwrap()),
        ("Z/2 even, s = (1,1), t = (2,1)", IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap()),
        ("odd p = 1, s = (1,1), t = (1,2)", IndexData::odd(1, &[1, 1], &[1, 2]).unwrap()),
        ("odd p = 1, s = (1,1), t = (2,1)", IndexData::odd(1, &[1, 1], &[2, 1]).unwrap()),
    ];
    for (name, idx) in cases {
        println!("== {name}");
        let sys = build_trace_system(&idx, DEFAULT_H_CUTOFF).unwrap();
        print!("{sys}");
        let sol = solve_degree(&sys);
        match sol.alpha() {
            Some(a) => println!("α = {a}"),
            None => println!("{}", sol.status()),
        }
        for c in check_nondegeneracy(&idx) {
            println!("  {} : {}", c.name, c.holds);
        }
        if let Ok(r) = conclude_bound(&sol, &idx) {
            println!("{}  ({})", r.conclusion, r.instantiated);
        }
    }
}
