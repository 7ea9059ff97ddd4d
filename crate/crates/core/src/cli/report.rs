//! Machine-readable run reports and the commands that produce them.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::degree::{
    build_trace_system, check_nondegeneracy, closed_form_alpha, conclude_bound, solve_degree, verify_theorem_c,
    Condition, ContradictionReport, DegreeSolution, EquationKind, InequalityReport, DEFAULT_H_CUTOFF,
};
use crate::repring::{parse_ring_expr, GroupElement, GroupSpec, IndexData, Parity, Pin2Part, RepElement};
use crate::selftest::{run_selftest, SelftestRecord};
use crate::topology::{
    classify_qk3_involution, genus_bound, genus_hypotheses, index_from_cover, k3_cover_construction_check,
    CoverConstraints, GenusBoundReport, K3CoverCheck, Qk3Classification, SpinType, TopologyError,
};

use super::doc::{BoundDoc, IndexDoc, RingDoc, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub command: String,
    pub inputs: Value,
    pub result: RunResult,
    pub diagnostics: Vec<Condition>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RunResult {
    Bound {
        report: Box<GenusBoundReport>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cover: Option<CoverConstraints>,
    },
    Degree(Box<DegreeRecord>),
    Classification(Qk3Classification),
    Construction(K3CoverCheck),
    Ring(RingRecord),
    Selftest(SelftestRecord),
    Failure { error: String, exit_code: i32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub element: String,
    pub dim_v: i64,
    pub dim_w: i64,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub group: GroupSpec,
    pub k: i64,
    pub m: i64,
    pub h_cutoff: u32,
    pub equations: Vec<EquationRecord>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    /// `alpha` written as `2^e·(Σ χ)·(1 − 1̃)` when it has that shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequality: Option<InequalityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contradiction: Option<ContradictionReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterValue {
    pub element: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingRecord {
    pub group: GroupSpec,
    pub expression: String,
    pub normal_form: String,
    pub dimension: String,
    pub restriction: String,
    pub characters: Vec<CharacterValue>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            RunResult::Failure { exit_code, .. } => *exit_code,
            RunResult::Selftest(r) if !r.all_passed() => EXIT_HYPOTHESIS,
            _ => EXIT_OK,
        }
    }

    pub fn failure(command: &str, inputs: Value, error: impl ToString, exit_code: i32) -> Self {
        RunReport {
            version: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            result: RunResult::Failure { error: error.to_string(), exit_code },
            diagnostics: vec![],
        }
    }

    fn ok(command: &str, inputs: Value, result: RunResult, diagnostics: Vec<Condition>) -> Self {
        RunReport { version: SCHEMA_VERSION, command: command.into(), inputs, result, diagnostics }
    }
}

fn echo<T: Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).unwrap_or(Value::Null)
}

pub fn cmd_bound(doc: &BoundDoc) -> RunReport {
    let inputs = echo(doc);
    let cls = doc.surface_class();
    let hypotheses = match genus_hypotheses(&doc.manifold, &cls, doc.p) {
        Ok(h) => h,
        Err(e) => return RunReport::failure("bound", inputs, e, EXIT_INPUT),
    };
    match genus_bound(&doc.manifold, &cls, doc.p) {
        Ok(report) => {
            let mut diagnostics = hypotheses;
            let cover = doc.genus.and_then(|g| match index_from_cover(&doc.manifold, &cls, g, doc.p) {
                Ok(c) => Some(c),
                Err(e) => {
                    diagnostics.push(Condition {
                        name: format!("cover index data at g = {g}"),
                        holds: false,
                        detail: e.to_string(),
                    });
                    None
                }
            });
            RunReport::ok("bound", inputs, RunResult::Bound { report: Box::new(report), cover }, diagnostics)
        }
        Err(e) => {
            let code = match e {
                TopologyError::HypothesisFailed { .. } => EXIT_HYPOTHESIS,
                _ => EXIT_INPUT,
            };
            let mut r = RunReport::failure("bound", inputs, e, code);
            r.diagnostics = hypotheses;
            r
        }
    }
}

fn closed_form_label(idx: &IndexData) -> String {
    let group = idx.group();
    let e = idx.m() - 2 * idx.k() - 1 - group.log2_action_order() as i64;
    let sum = match group {
        GroupSpec::Even { orders } if orders.is_empty() => String::new(),
        GroupSpec::Even { orders } if orders.iter().all(|&n| n == 2) => {
            (1..=orders.len()).map(|i| format!("(1 + z{i})")).collect::<Vec<_>>().join("")
        }
        _ => {
            let terms: Vec<String> = group
                .characters_of_parity(Parity::Even)
                .iter()
                .map(|c| if group.is_trivial_character(c) { "1".to_string() } else { c.to_string() })
                .collect();
            format!("({})", terms.join(" + "))
        }
    };
    format!("2^{e}{sum}(1 - t1)")
}

pub fn degree_record(idx: &IndexData, h_cutoff: u32) -> Result<DegreeRecord, String> {
    let sys = build_trace_system(idx, h_cutoff).map_err(|e| e.to_string())?;
    let equations = sys
        .equations
        .iter()
        .map(|eq| EquationRecord {
            element: sys.label(&eq.element),
            dim_v: eq.dims.v,
            dim_w: eq.dims.w,
            kind: eq.kind.name().into(),
            value: match &eq.kind {
                EquationKind::LambdaTrace { value } => Some(value.to_string()),
                _ => None,
            },
            reason: match &eq.kind {
                EquationKind::Skipped { reason } => Some(reason.clone()),
                _ => None,
            },
        })
        .collect();
    let sol = solve_degree(&sys);
    let mut rec = DegreeRecord {
        group: idx.group().clone(),
        k: idx.k(),
        m: idx.m(),
        h_cutoff,
        equations,
        status: sol.status().into(),
        alpha: None,
        closed_form: None,
        skipped: vec![],
        free: vec![],
        certificate: None,
        inequality: None,
        contradiction: None,
    };
    match &sol {
        DegreeSolution::Unique { alpha } => {
            rec.alpha = Some(alpha.to_string());
            if *alpha == closed_form_alpha(idx) {
                rec.closed_form = Some(closed_form_label(idx));
            }
            rec.inequality = conclude_bound(&sol, idx).ok();
        }
        DegreeSolution::Underdetermined { skipped, free } => {
            rec.skipped = skipped.clone();
            rec.free = free.clone();
        }
        DegreeSolution::Inconsistent { certificate } => rec.certificate = Some(certificate.to_string()),
    }
    rec.contradiction = verify_theorem_c(idx).ok();
    Ok(rec)
}

pub fn cmd_degree(doc: &IndexDoc) -> RunReport {
    let inputs = echo(doc);
    let idx = match doc.index_data() {
        Ok(i) => i,
        Err(e) => return RunReport::failure("degree", inputs, e, EXIT_INPUT),
    };
    match degree_record(&idx, doc.h_cutoff.unwrap_or(DEFAULT_H_CUTOFF)) {
        Ok(rec) => RunReport::ok("degree", inputs, RunResult::Degree(Box::new(rec)), check_nondegeneracy(&idx)),
        Err(e) => RunReport::failure("degree", inputs, e, EXIT_INPUT),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3Mode {
    Even,
    Odd,
    Construction,
}

pub fn cmd_k3(mode: K3Mode) -> RunReport {
    let name = match mode {
        K3Mode::Even => "even",
        K3Mode::Odd => "odd",
        K3Mode::Construction => "construction",
    };
    let inputs = serde_json::json!({ "mode": name });
    let ty = match mode {
        K3Mode::Construction => {
            return RunReport::ok("k3", inputs, RunResult::Construction(k3_cover_construction_check()), vec![])
        }
        K3Mode::Even => SpinType::Even,
        K3Mode::Odd => SpinType::Odd,
    };
    match classify_qk3_involution(ty) {
        Ok(c) => RunReport::ok("k3", inputs, RunResult::Classification(c), vec![]),
        Err(e) => RunReport::failure("k3", inputs, e, EXIT_HYPOTHESIS),
    }
}

pub fn ring_record(expression: &str, group: &GroupSpec) -> Result<RingRecord, String> {
    let value: RepElement = parse_ring_expr(expression, group).map_err(|e| e.to_string())?;
    let mut characters = Vec::new();
    for pin2 in [Pin2Part::GenericTorus, Pin2Part::J] {
        for a in group.elements() {
            let g = GroupElement::new(pin2, a);
            characters.push(CharacterValue { element: g.label(group), value: value.character(&g).to_string() });
        }
    }
    Ok(RingRecord {
        group: group.clone(),
        expression: expression.into(),
        normal_form: value.to_string(),
        dimension: value.dimension().to_string(),
        restriction: value.restrict_to_circle().to_string(),
        characters,
    })
}

pub fn cmd_ring(doc: &RingDoc) -> RunReport {
    let inputs = echo(doc);
    match ring_record(&doc.expression, &doc.group) {
        Ok(r) => RunReport::ok("ring", inputs, RunResult::Ring(r), vec![]),
        Err(e) => RunReport::failure("ring", inputs, e, EXIT_INPUT),
    }
}

pub fn cmd_selftest(seed: u64) -> RunReport {
    let rec = run_selftest(seed);
    let diagnostics = rec
        .criteria
        .iter()
        .map(|c| Condition { name: format!("{}. {}", c.id, c.name), holds: c.passed, detail: c.detail.clone() })
        .collect();
    RunReport::ok("selftest", serde_json::json!({ "seed": seed }), RunResult::Selftest(rec), diagnostics)
}
