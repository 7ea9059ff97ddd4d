//! Exact arithmetic with 2-power roots of unity and rational functions in φ.

use spin_actions::cyclotomic::{CyclotomicNumber, LaurentPoly, RationalFn};

fn main() {
    let zeta8 = CyclotomicNumber::root_of_unity(3, 1);
    let sum = &zeta8 + &CyclotomicNumber::root_of_unity(3, 7);
    println!("ζ₈ + ζ₈⁻¹ = {sum}  ≈ {}", sum.to_complex());
    println!("(ζ₈ + ζ₈⁻¹)² = {}", &sum * &sum);
    println!("1/(1 + ζ₈) = {}", (&CyclotomicNumber::one() + &zeta8).inv().unwrap());

    let one = LaurentPoly::one();
    let phi = LaurentPoly::phi();
    let num = &(&one - &phi) * &(&one + &phi);
    let den = &one - &phi;
    let f = RationalFn::new(num, den).unwrap();
    println!("(1 − φ²)/(1 − φ) = {f}  polynomial: {}", f.is_polynomial());
}
