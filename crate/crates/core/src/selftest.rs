//! Seeded end-to-end checks of the main results, run by `spin-actions selftest`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicNumber, LaurentPoly};
use crate::degree::{
    all_hold, build_trace_system, check_nondegeneracy, closed_form_alpha, conclude_bound, solve_degree,
    solve_degree_dense, verify_theorem_c, DegreeSolution,
};
use crate::repring::{
    power_of_two, Basis, Character, GroupElement, GroupSpec, IndexData, Pin2Part, RepElement,
};
use crate::topology::{
    classify_qk3_involution, genus_bound, k3_cover_construction_check, ManifoldSpec, SpinType, SurfaceClass,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestRecord {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl SelftestRecord {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

/// Nonnegative entries with an even sum, at most `max` each.
pub fn random_s(rng: &mut impl Rng, n: usize, max: i64) -> Vec<i64> {
    let mut s: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    if s.iter().sum::<i64>() % 2 != 0 {
        let i = rng.gen_range(0..n);
        s[i] += 1;
    }
    s
}

pub fn random_t(rng: &mut impl Rng, n: usize, max: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..=max)).collect()
}

/// Random admissible index data over `group`, with `t` supported on the
/// allowed characters.
pub fn random_index(rng: &mut impl Rng, group: &GroupSpec, max: i64) -> IndexData {
    match group {
        GroupSpec::Odd { p } => {
            let n = 1usize << p;
            IndexData::odd(*p, &random_s(rng, n, max), &random_t(rng, n, max)).expect("admissible")
        }
        GroupSpec::Even { .. } => {
            let chars = group.characters();
            let s_vals = random_s(rng, chars.len(), max);
            let s = chars.iter().cloned().zip(s_vals).collect();
            let t = chars.iter().map(|c| (c.clone(), rng.gen_range(0..=max))).collect();
            IndexData::new(group.clone(), s, t).expect("admissible")
        }
    }
}

/// A random parity-valid element with small rational coefficients.
pub fn random_rep(rng: &mut impl Rng, group: &GroupSpec, terms: usize, max_h: u32) -> RepElement {
    let mut e = RepElement::zero(group);
    for _ in 0..terms {
        let basis = match rng.gen_range(0..3) {
            0 => Basis::One,
            1 => Basis::Tilde,
            _ => Basis::H(rng.gen_range(1..=max_h)),
        };
        let chars = group.characters_of_parity(basis.parity());
        let chi = chars.choose(rng).expect("nonempty").clone();
        let q = BigRational::new(BigInt::from(rng.gen_range(-4..=4)), BigInt::from(rng.gen_range(1..=3)));
        e.add_term(basis, chi, q);
    }
    e
}

pub fn sample_groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::trivial(),
        GroupSpec::cyclic_even(1).unwrap(),
        GroupSpec::cyclic_even(2).unwrap(),
        GroupSpec::elementary(2),
        GroupSpec::even(vec![2, 4]).unwrap(),
        GroupSpec::odd(1).unwrap(),
        GroupSpec::odd(2).unwrap(),
    ]
}

fn unique_alpha(idx: &IndexData) -> Result<RepElement, String> {
    let sys = build_trace_system(idx, 6).map_err(|e| e.to_string())?;
    match solve_degree(&sys) {
        DegreeSolution::Unique { alpha } => Ok(alpha),
        other => Err(format!("{idx:?}: {}", other.status())),
    }
}

/// Random non-degenerate data for one family, retrying until the conditions hold.
fn nondegenerate(rng: &mut impl Rng, group: &GroupSpec) -> IndexData {
    loop {
        let idx = random_index(rng, group, 3);
        if all_hold(&check_nondegeneracy(&idx)) && idx.m() > 0 {
            return idx;
        }
    }
}

fn families() -> Vec<(&'static str, GroupSpec, &'static str)> {
    let mut out = vec![("Furuta", GroupSpec::trivial(), "m ≥ 2k+1"), ("B", GroupSpec::cyclic_even(1).unwrap(), "m ≥ 2k+2")];
    for q in 2..=3 {
        out.push(("D", GroupSpec::elementary(q), "m ≥ 2k+1+q"));
    }
    for p in 1..=3 {
        out.push(("A", GroupSpec::odd(p).unwrap(), "m ≥ 2k+1+p"));
    }
    out
}

fn closed_forms(rng: &mut impl Rng) -> Check {
    let mut n = 0;
    for (name, group, _) in families() {
        for _ in 0..8 {
            let idx = nondegenerate(rng, &group);
            let alpha = unique_alpha(&idx)?;
            ensure(alpha == closed_form_alpha(&idx), || format!("{name} {group}: α = {alpha}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} systems matched the closed form"))
}

fn conclusions(rng: &mut impl Rng) -> Check {
    let mut n = 0;
    for (name, group, expect) in families() {
        for _ in 0..4 {
            let idx = nondegenerate(rng, &group);
            let sys = build_trace_system(&idx, 6).map_err(|e| e.to_string())?;
            let rep = conclude_bound(&solve_degree(&sys), &idx).map_err(|e| e.to_string())?;
            ensure(rep.conclusion == expect, || format!("{name} {group}: {}", rep.conclusion))?;
            n += 1;
        }
    }
    Ok(format!("{n} conclusions matched"))
}

fn trace_identity(rng: &mut impl Rng) -> Check {
    let mut n = 0;
    for group in sample_groups() {
        for _ in 0..10 {
            let idx = random_index(rng, &group, 4);
            let j = GroupElement::new(Pin2Part::J, group.identity());
            let v = idx.lambda_minus_one_trace(&j).map_err(|e| e.to_string())?;
            let expect = LaurentPoly::constant(power_of_two(idx.m() - 2 * idx.k()));
            ensure(v.as_polynomial() == Some(&expect), || format!("{group}: {v}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} index data"))
}

fn genus_corollaries() -> Check {
    let a = genus_bound(&ManifoldSpec::connected_sum_cp2(2), &SurfaceClass::new(vec![6, 2]), 1)
        .map_err(|e| e.to_string())?;
    let b = genus_bound(&ManifoldSpec::s2xs2_cp2(), &SurfaceClass::new(vec![4, 4, 6]), 1).map_err(|e| e.to_string())?;
    ensure(a.effective_min_genus == 10 && b.effective_min_genus == 19, || {
        format!("got {} and {}", a.effective_min_genus, b.effective_min_genus)
    })?;
    Ok("10 and 19".into())
}

fn example_sweep() -> Check {
    for n in 2..=12i64 {
        let m = ManifoldSpec::connected_sum_cp2(n as usize);
        let rep = genus_bound(&m, &SurfaceClass::new(vec![4; n as usize]), 2).map_err(|e| e.to_string())?;
        let refined = BigRational::new(BigInt::from(8 * n + 3), BigInt::from(3));
        let expect = if n <= 5 { 3 * n } else { refined.ceil().to_integer().try_into().unwrap() };
        ensure(rep.refined_bound == refined, || format!("N = {n}: refined {}", rep.refined_bound))?;
        ensure(rep.effective_min_genus as i64 == expect, || format!("N = {n}: {}", rep.effective_min_genus))?;
    }
    Ok("N = 2..12".into())
}

fn k3() -> Check {
    let even = classify_qk3_involution(SpinType::Even).map_err(|e| e.to_string())?;
    let odd = classify_qk3_involution(SpinType::Odd).map_err(|e| e.to_string())?;
    let c = k3_cover_construction_check();
    ensure(
        (even.fixed_points, even.b2plus_quotient, even.b2minus_quotient) == (Some(8), 3, Some(11)),
        || format!("even: {:?}", (even.fixed_points, even.b2plus_quotient, even.b2minus_quotient)),
    )?;
    ensure(odd.b2plus_quotient == 1, || format!("odd: {}", odd.b2plus_quotient))?;
    ensure(
        (c.chi_cover, c.chi_blown_down, c.sigma_blown_down, c.sigma_cover_discrepancy) == (32, 24, -16, true),
        || format!("{c:?}"),
    )?;
    Ok(format!("N = 8, b₂⁺ = 3, b₂⁻ = 11; odd b₂⁺ = 1; σ(X̃) = {} flagged", c.sigma_cover))
}

/// All `v` with nonnegative entries summing to `total`.
pub fn compositions(len: usize, total: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn no_invariant_pole() -> Check {
    let mut n = 0;
    for p in 1..=2u32 {
        let len = 1usize << p;
        for k in 1..=2 {
            for m in 1..=4 {
                for s in compositions(len, 2 * k) {
                    for mut t in compositions(len - 1, m) {
                        t.push(0);
                        for idx in [IndexData::odd(p, &s, &t), IndexData::cyclic_even(p, &s, &t)] {
                            let idx = idx.map_err(|e| e.to_string())?;
                            let r = verify_theorem_c(&idx).map_err(|e| e.to_string())?;
                            ensure(r.certified, || format!("{idx:?}: {}", r.trace))?;
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} index data certified"))
}

fn oracle(rng: &mut impl Rng) -> Check {
    let mut unique = 0;
    for i in 0..50 {
        let group = GroupSpec::odd(1 + (i % 2)).unwrap();
        let idx = random_index(rng, &group, 3);
        let sys = build_trace_system(&idx, 5).map_err(|e| e.to_string())?;
        let (a, b) = (solve_degree(&sys), solve_degree_dense(&sys));
        ensure(a.status() == b.status() && a.alpha() == b.alpha(), || format!("{idx:?}"))?;
        unique += a.alpha().is_some() as usize;
    }
    Ok(format!("50 systems agree ({unique} unique)"))
}

fn ring_properties(rng: &mut impl Rng) -> Check {
    let g = GroupSpec::trivial();
    for i in 0..=6 {
        for j in 0..=6 {
            for k in 0..=6 {
                let (a, b, c) = (RepElement::h(&g, i), RepElement::h(&g, j), RepElement::h(&g, k));
                ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("h{i} h{j} h{k}"))?;
            }
        }
    }
    let groups = sample_groups();
    for n in 0..100 {
        let group = &groups[n % groups.len()];
        let a = random_rep(rng, group, 4, 3);
        let b = random_rep(rng, group, 4, 3);
        let ab = &a * &b;
        ensure(ab.is_parity_valid(), || format!("parity: {a} · {b}"))?;
        ensure(ab.restrict_to_circle() == &a.restrict_to_circle() * &b.restrict_to_circle(), || {
            format!("restriction: {a} · {b}")
        })?;
        for pin2 in [Pin2Part::GenericTorus, Pin2Part::J, Pin2Part::TorusIdentity] {
            for x in group.elements() {
                let g = GroupElement::new(pin2, x);
                ensure(ab.character(&g) == &a.character(&g) * &b.character(&g), || {
                    format!("character at {}: {a} · {b}", g.label(group))
                })?;
            }
        }
    }
    Ok("associativity to h6; 100 random products".into())
}

/// Random exact number paired with an independently tracked float value.
fn random_number(rng: &mut impl Rng) -> (CyclotomicNumber, Complex64) {
    let level = rng.gen_range(1..=4u32);
    let mut exact = CyclotomicNumber::zero();
    let mut float = Complex64::new(0.0, 0.0);
    for _ in 0..rng.gen_range(1..=3) {
        let e = rng.gen_range(0..(1i64 << level));
        let (num, den) = (rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        exact = &exact + &CyclotomicNumber::root_of_unity(level, e).scale(&q);
        let angle = 2.0 * std::f64::consts::PI * e as f64 / (1u64 << level) as f64;
        float += Complex64::from_polar(num as f64 / den as f64, angle);
    }
    (exact, float)
}

fn float_cross_check(rng: &mut impl Rng) -> Check {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (mut x, mut fx) = random_number(rng);
        for _ in 0..4 {
            let (y, fy) = random_number(rng);
            match rng.gen_range(0..4) {
                0 => (x, fx) = (&x + &y, fx + fy),
                1 => (x, fx) = (&x - &y, fx - fy),
                2 => (x, fx) = (&x * &y, fx * fy),
                _ => {
                    if let Ok(inv) = y.inv() {
                        (x, fx) = (&x * &inv, fx / fy);
                    }
                }
            }
        }
        let d = (x.to_complex() - fx).norm();
        worst = worst.max(d);
        ensure(d <= 1e-9, || format!("{x}: |Δ| = {d:e}"))?;
    }
    Ok(format!("max |Δ| = {worst:.1e}"))
}

pub fn criteria_names() -> [&'static str; 10] {
    [
        "degree closed forms (trivial, Z/2, elementary, odd)",
        "inequality conclusions",
        "J trace of λ₋₁ equals 2^(m−2k)",
        "genus minima 10 and 19",
        "#N CP² example sweep",
        "K3 involution classification",
        "pole when b₂⁺(X/A) = 0",
        "interpolation vs dense solver",
        "representation ring properties",
        "float cross-check",
    ]
}

pub fn run_selftest(seed: u64) -> SelftestRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results: Vec<Check> = vec![
        closed_forms(&mut rng),
        conclusions(&mut rng),
        trace_identity(&mut rng),
        genus_corollaries(),
        example_sweep(),
        k3(),
        no_invariant_pole(),
        oracle(&mut rng),
        ring_properties(&mut rng),
        float_cross_check(&mut rng),
    ];
    let criteria = results
        .into_iter()
        .zip(criteria_names())
        .enumerate()
        .map(|(i, (r, name))| {
            let (passed, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CriterionResult { id: i as u32 + 1, name: name.into(), passed, detail }
        })
        .collect();
    SelftestRecord { seed, criteria }
}

/// Characters of a finite group as a map, handy for building elements.
pub fn character_map(group: &GroupSpec, values: &[i64]) -> BTreeMap<Character, i64> {
    group.characters().into_iter().zip(values.iter().copied()).collect()
}
