//! Direct linear-algebra route to the degree: unknowns are the coefficients of
//! `α` in the basis `χ·1`, `χ·1̃`, `χ·h_i`, and every trace equation is expanded
//! into scalar rows. Slower than interpolation, but shares none of its logic.

use crate::cyclotomic::CyclotomicNumber;
use crate::repring::{Basis, Character, Parity, Pin2Part, RepElement};

use super::solve::{j_rhs, torus_rhs, Certificate, DegreeSolution};
use super::system::TraceSystem;

struct Row {
    coeffs: Vec<CyclotomicNumber>,
    rhs: CyclotomicNumber,
    origin: String,
}

pub fn solve_degree_dense(sys: &TraceSystem) -> DegreeSolution {
    let group = sys.index.group();
    let mut unknowns: Vec<(Basis, Character)> = Vec::new();
    for chi in group.characters_of_parity(Parity::Even) {
        unknowns.push((Basis::One, chi.clone()));
        unknowns.push((Basis::Tilde, chi));
    }
    for i in 1..=sys.h_cutoff {
        for chi in group.characters_of_parity(Basis::H(i).parity()) {
            unknowns.push((Basis::H(i), chi));
        }
    }

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for eq in &sys.equations {
        let label = sys.label(&eq.element);
        let Some(rhs) = eq.rhs() else {
            skipped.push(label);
            continue;
        };
        let a = &eq.element.finite;
        match eq.element.pin2 {
            Pin2Part::GenericTorus => {
                let poly = match torus_rhs(&label, &rhs, sys.h_cutoff) {
                    Ok(p) => p,
                    Err(c) => return DegreeSolution::Inconsistent { certificate: c },
                };
                let cut = sys.h_cutoff as i64;
                for e in -cut..=cut {
                    let coeffs = unknowns
                        .iter()
                        .map(|(b, chi)| {
                            let hit = match b {
                                Basis::One | Basis::Tilde => e == 0,
                                Basis::H(i) => e.unsigned_abs() == *i as u64,
                            };
                            if hit {
                                group.char_value(chi, a).to_number()
                            } else {
                                CyclotomicNumber::zero()
                            }
                        })
                        .collect();
                    rows.push(Row { coeffs, rhs: poly.coeff_at(e), origin: label.clone() });
                }
            }
            Pin2Part::J => {
                let value = match j_rhs(&label, &rhs) {
                    Ok(v) => v,
                    Err(c) => return DegreeSolution::Inconsistent { certificate: c },
                };
                let coeffs = unknowns
                    .iter()
                    .map(|(b, chi)| {
                        let v = group.char_value(chi, a).to_number();
                        match b {
                            Basis::One => v,
                            Basis::Tilde => -v,
                            Basis::H(_) => CyclotomicNumber::zero(),
                        }
                    })
                    .collect();
                rows.push(Row { coeffs, rhs: value, origin: label });
            }
            Pin2Part::TorusIdentity => {}
        }
    }

    // Row reduction to reduced echelon form.
    let n = unknowns.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r].coeffs[col].inv().expect("nonzero pivot");
        rows[r].coeffs = rows[r].coeffs.iter().map(|c| c * &inv).collect();
        rows[r].rhs = &rows[r].rhs * &inv;
        for i in 0..rows.len() {
            if i == r || rows[i].coeffs[col].is_zero() {
                continue;
            }
            let f = rows[i].coeffs[col].clone();
            let (coeffs, rhs) = {
                let pivot = &rows[r];
                let c: Vec<_> =
                    rows[i].coeffs.iter().zip(&pivot.coeffs).map(|(x, y)| x - &(&f * y)).collect();
                (c, &rows[i].rhs - &(&f * &pivot.rhs))
            };
            rows[i].coeffs = coeffs;
            rows[i].rhs = rhs;
        }
        pivots.push((r, col));
        r += 1;
    }
    if let Some(bad) = rows[r..].iter().find(|row| !row.rhs.is_zero()) {
        let first = pivots.first().map(|(i, _)| rows[*i].origin.clone()).unwrap_or_default();
        return DegreeSolution::Inconsistent {
            certificate: Certificate::Conflict { first, second: bad.origin.clone() },
        };
    }
    if pivots.len() < n {
        let pinned: Vec<usize> = pivots.iter().map(|(_, c)| *c).collect();
        let free = (0..n)
            .filter(|c| !pinned.contains(c))
            .map(|c| {
                let (b, chi) = &unknowns[c];
                format!("{:?} {chi}", b)
            })
            .collect();
        return DegreeSolution::Underdetermined { skipped, free };
    }

    let mut alpha = RepElement::zero(group);
    for (row, col) in pivots {
        let value = &rows[row].rhs;
        let (b, chi) = &unknowns[col];
        let Some(q) = value.as_rational() else {
            return DegreeSolution::Inconsistent {
                certificate: Certificate::NonRational { term: format!("{chi}·{b:?}"), value: value.clone() },
            };
        };
        alpha.add_term(*b, chi.clone(), q.clone());
    }
    DegreeSolution::Unique { alpha }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::{build_trace_system, solve_degree};
    use crate::repring::IndexData;

    #[test]
    fn agrees_with_interpolation() {
        let cases = [
            IndexData::furuta(1, 3).unwrap(),
            IndexData::furuta(2, 7).unwrap(),
            IndexData::cyclic_even(1, &[1, 1], &[2, 1]).unwrap(),
            IndexData::cyclic_even(2, &[1, 0, 1, 0], &[1, 2, 0, 3]).unwrap(),
            IndexData::odd(1, &[1, 1], &[1, 2]).unwrap(),
            IndexData::odd(2, &[1, 1, 1, 1], &[0, 1, 1, 5]).unwrap(),
            IndexData::odd(1, &[1, 1], &[2, 1]).unwrap(),
        ];
        for idx in cases {
            let sys = build_trace_system(&idx, 5).unwrap();
            let a = solve_degree(&sys);
            let b = solve_degree_dense(&sys);
            assert_eq!(a.status(), b.status(), "{idx:?}");
            assert_eq!(a.alpha(), b.alpha(), "{idx:?}");
        }
    }
}
