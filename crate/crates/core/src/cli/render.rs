//! Plain-text rendering of run reports.

use std::fmt::Write;

use crate::degree::Condition;
use crate::repring::GroupSpec;
use crate::selftest::SelftestRecord;
use crate::topology::{CoverConstraints, GenusBoundReport, K3CoverCheck, Qk3Classification};

use super::report::{DegreeRecord, RingRecord, RunReport, RunResult};

fn mark(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAIL" }
}

fn conditions(out: &mut String, title: &str, list: &[Condition]) {
    if list.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}:");
    for c in list {
        let _ = writeln!(out, "  [{:>4}] {}  ({})", mark(c.holds), c.name, c.detail);
    }
}

fn bound(out: &mut String, r: &GenusBoundReport, cover: Option<&CoverConstraints>) {
    let _ = writeln!(out, "manifold: {}", r.manifold);
    let _ = writeln!(out, "class: {:?}  square: {}  p: {}", r.class, r.class_square, r.p);
    let _ = writeln!(out, "furuta bound: g ≥ {}", r.furuta_bound);
    let _ = writeln!(out, "refined bound: g ≥ {}", r.refined_bound);
    let _ = writeln!(out, "excluded genera: {:?}", r.excluded_genera);
    let _ = writeln!(out, "effective minimum genus: {}", r.effective_min_genus);
    if let Some(c) = &r.cover_at_effective {
        let _ = writeln!(out, "cover at g = {}: k = {}, m = {:?}", r.effective_min_genus, c.k, c.m);
    }
    if let Some(c) = cover {
        let _ = writeln!(out, "cover constraints: k = {}, m = {:?}", c.invariants.k, c.invariants.m);
        let _ = writeln!(out, "  Σ s_i = {}", c.s_total);
        for e in &c.equations {
            let _ = writeln!(out, "  {e}");
        }
        conditions(out, "cover non-degeneracy", &c.nondegeneracy);
    }
}

/// `m ≥ 2k+1+p` with the group's `p` or `q` filled in.
fn substituted(group: &GroupSpec, conclusion: &str) -> String {
    let (name, value) = match group {
        GroupSpec::Odd { p } => ("p", *p as usize),
        GroupSpec::Even { orders } => ("q", orders.len()),
    };
    match conclusion.strip_suffix(name) {
        Some(head) => format!(", {name} = {value}: {head}{value}"),
        None => String::new(),
    }
}

fn degree(out: &mut String, r: &DegreeRecord) {
    let _ = writeln!(out, "group: {}  k = {}  m = {}  h cutoff: {}", r.group, r.k, r.m, r.h_cutoff);
    let _ = writeln!(out, "equations:");
    for e in &r.equations {
        let extra = e.value.as_deref().or(e.reason.as_deref()).unwrap_or("");
        let _ = writeln!(out, "  {:<12} dim V^g = {:<3} dim W^g = {:<3} {:<8} {}", e.element, e.dim_v, e.dim_w, e.kind, extra);
    }
    let _ = writeln!(out, "status: {}", r.status);
    if let Some(a) = &r.alpha {
        let _ = writeln!(out, "alpha = {a}");
    }
    if let Some(c) = &r.closed_form {
        let _ = writeln!(out, "      = {c}");
    }
    for s in &r.skipped {
        let _ = writeln!(out, "skipped: {s}");
    }
    for f in &r.free {
        let _ = writeln!(out, "free: {f}");
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(out, "certificate: {c}");
    }
    if let Some(i) = &r.inequality {
        let _ = writeln!(out, "conclusion: {}{}  (binding {})", i.conclusion, substituted(&r.group, &i.conclusion), i.binding);
        let _ = writeln!(out, "  v₂(α₀ at trivial) = {}  coefficient {}", i.coefficient_valuation, i.trivial_coefficient);
        let _ = writeln!(out, "  instantiated: {}  [{}]", i.instantiated, mark(i.holds_for_input));
    }
    if let Some(c) = &r.contradiction {
        let _ = writeln!(out, "trace of λ₋₁ at {}: {}", c.element, c.trace);
        let _ = writeln!(out, "  denominator {}  polynomial: {}  contradiction: {}", c.offending_denominator, c.is_polynomial, c.certified);
    }
}

fn classification(out: &mut String, c: &Qk3Classification) {
    let _ = writeln!(out, "spin type: {:?}  k = {}  m = {}", c.spin_type, c.k, c.m);
    for s in &c.splittings {
        let _ = writeln!(out, "  t = {:?}: {:?}  {}", s.t, s.verdict, s.detail);
    }
    let _ = writeln!(out, "b₂⁺(X/σ) = {}", c.b2plus_quotient);
    if let Some(b) = c.b2minus_quotient {
        let _ = writeln!(out, "b₂⁻(X/σ) = {b}");
    }
    if let Some(n) = c.fixed_points {
        let _ = writeln!(out, "isolated fixed points: {n}");
    }
    if let Some(q) = &c.quotient {
        let _ = writeln!(out, "σ(X/σ) = {}  χ(X/σ) = {}", q.sigma_quotient, q.chi_quotient);
    }
}

fn construction(out: &mut String, c: &K3CoverCheck) {
    let _ = writeln!(out, "base: χ = {}  σ = {}  with {} spheres", c.chi_base, c.sigma_base, c.spheres);
    let _ = writeln!(out, "branch locus: square {}  Euler characteristic {}", c.branch_square, c.branch_euler);
    let _ = writeln!(out, "preimage sphere square: {}", c.preimage_sphere_square);
    let _ = writeln!(out, "double cover: χ = {}  σ = {}", c.chi_cover, c.sigma_cover);
    if c.sigma_cover_discrepancy {
        let _ = writeln!(out, "  note: signature sign differs from the stated value {}", c.sigma_cover_stated);
    }
    let _ = writeln!(out, "blown down: χ = {}  σ = {}", c.chi_blown_down, c.sigma_blown_down);
    let _ = writeln!(out, "spin: k = {}", c.spin_k);
}

fn ring(out: &mut String, r: &RingRecord) {
    let _ = writeln!(out, "group: {}", r.group);
    let _ = writeln!(out, "{} = {}", r.expression, r.normal_form);
    let _ = writeln!(out, "dimension: {}", r.dimension);
    let _ = writeln!(out, "restriction to S¹: {}", r.restriction);
    for c in &r.characters {
        let _ = writeln!(out, "  tr at {}: {}", c.element, c.value);
    }
}

fn selftest(out: &mut String, r: &SelftestRecord) {
    let _ = writeln!(out, "seed: {}", r.seed);
    for c in &r.criteria {
        let _ = writeln!(out, "[{:>4}] {:>2}. {}: {}", mark(c.passed), c.id, c.name, c.detail);
    }
    let passed = r.criteria.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "{passed}/{} passed", r.criteria.len());
}

pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    match &report.result {
        RunResult::Bound { report: r, cover } => {
            bound(&mut out, r, cover.as_ref());
            conditions(&mut out, "hypotheses", &report.diagnostics);
        }
        RunResult::Degree(r) => {
            degree(&mut out, r);
            conditions(&mut out, "non-degeneracy", &report.diagnostics);
        }
        RunResult::Classification(c) => classification(&mut out, c),
        RunResult::Construction(c) => construction(&mut out, c),
        RunResult::Ring(r) => ring(&mut out, r),
        RunResult::Selftest(r) => selftest(&mut out, r),
        RunResult::Failure { error, .. } => {
            let _ = writeln!(out, "error: {error}");
            conditions(&mut out, "hypotheses", &report.diagnostics);
        }
    }
    out
}
