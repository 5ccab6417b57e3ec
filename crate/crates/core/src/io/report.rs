use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::text::{describe_witness, fmt_map, fmt_pair, fmt_partition, fmt_relation, fmt_set};
use super::{DocError, InstanceDoc, REPORT_SCHEMA};
use crate::claims::{evaluate, Bounds, ClaimId, Found, Instance, Mode, SearchReport, Side, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub name: String,
    pub value: String,
}

/// A witness rendered with labels; equal witnesses give equal documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub kind: String,
    pub description: String,
    pub terms: Vec<TermDoc>,
    pub offending: String,
}

impl WitnessDoc {
    pub fn new(inst: &Instance, w: &Witness) -> Self {
        let uni = |on: &Side| match on {
            Side::Domain => inst.domain(),
            Side::Codomain => inst.codomain(),
        };
        let term = |name: &str, value: String| TermDoc {
            name: name.to_string(),
            value,
        };
        let (kind, terms, offending) = match w {
            Witness::RelationInclusion {
                on,
                lhs,
                rhs,
                left,
                right,
                pair,
            }
            | Witness::RelationEquality {
                on,
                lhs,
                rhs,
                left,
                right,
                pair,
            } => {
                let u = uni(on);
                let kind = if matches!(w, Witness::RelationInclusion { .. }) {
                    "relation-inclusion"
                } else {
                    "relation-equality"
                };
                (
                    kind,
                    vec![term(lhs, fmt_relation(u, left)), term(rhs, fmt_relation(u, right))],
                    fmt_pair(u, *pair),
                )
            }
            Witness::SetInclusion {
                on,
                lhs,
                rhs,
                left,
                right,
                element,
            } => {
                let u = uni(on);
                (
                    "set-inclusion",
                    vec![term(lhs, fmt_set(u, left)), term(rhs, fmt_set(u, right))],
                    u.label(*element),
                )
            }
            Witness::SetEquality { on, terms, element } => {
                let u = uni(on);
                (
                    "set-equality",
                    terms.iter().map(|(n, s)| term(n, fmt_set(u, s))).collect(),
                    u.label(*element),
                )
            }
            Witness::NotEquivalence {
                on,
                name,
                relation,
                violation,
            } => {
                let u = uni(on);
                let pairs: Vec<String> = violation.pairs.iter().map(|&p| fmt_pair(u, p)).collect();
                (
                    "not-equivalence",
                    vec![
                        term(name, fmt_relation(u, relation)),
                        term("condition", violation.condition.to_string()),
                    ],
                    pairs.join(" "),
                )
            }
            Witness::ReflexivityMismatch {
                relation,
                surjective,
                element,
            } => (
                "reflexivity-mismatch",
                vec![
                    term("f(R)", fmt_relation(inst.codomain(), relation)),
                    term("surjective", surjective.to_string()),
                ],
                inst.codomain().label(*element),
            ),
        };
        WitnessDoc {
            kind: kind.to_string(),
            description: describe_witness(inst, w),
            terms,
            offending,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    /// Position in the canonical instance order, counting from 0.
    pub ordinal: u64,
    pub instance: InstanceDoc,
    pub witness: WitnessDoc,
}

impl CounterexampleDoc {
    fn new(claim: ClaimId, found: &Found) -> Self {
        CounterexampleDoc {
            ordinal: found.ordinal,
            instance: InstanceDoc::from_instance(&found.instance, &[], Some(claim.as_str())),
            witness: WitnessDoc::new(&found.instance, &found.witness),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TalliesDoc {
    pub instances: u64,
    pub holds: u64,
    pub fails: u64,
    pub ill_typed: u64,
    pub vacuous: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffortDoc {
    pub workers: usize,
    pub evaluated: u64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub schema: String,
    pub tool_version: String,
    pub command: Mode,
    pub claim: String,
    pub statement: String,
    pub expected_status: String,
    pub bounds: Bounds,
    pub tallies: TalliesDoc,
    pub ill_typed_reasons: BTreeMap<String, u64>,
    pub stopped_early: bool,
    pub first_counterexample: Option<CounterexampleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<CounterexampleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Timing and work counters; absent from reproducible documents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effort: Option<EffortDoc>,
}

impl ReportDoc {
    pub fn from_report(r: &SearchReport, with_effort: bool) -> Self {
        let t = &r.outcome.tallies;
        let claim = r.claim.claim();
        ReportDoc {
            schema: REPORT_SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: r.mode,
            claim: r.claim.as_str().to_string(),
            statement: claim.statement.to_string(),
            expected_status: claim.expected.as_str().to_string(),
            bounds: r.bounds,
            tallies: TalliesDoc {
                instances: t.total(),
                holds: t.holds,
                fails: t.fails,
                ill_typed: t.ill_typed,
                vacuous: t.vacuous,
            },
            ill_typed_reasons: r
                .outcome
                .ill_typed_reasons
                .iter()
                .map(|(k, v)| (k.as_str().to_string(), *v))
                .collect(),
            stopped_early: r.outcome.stopped_early,
            first_counterexample: r
                .outcome
                .first_counterexample
                .as_ref()
                .map(|f| CounterexampleDoc::new(r.claim, f)),
            failures: r
                .outcome
                .failures
                .iter()
                .map(|f| CounterexampleDoc::new(r.claim, f))
                .collect(),
            note: note(r),
            effort: with_effort.then_some(EffortDoc {
                workers: r.effort.workers,
                evaluated: r.effort.evaluated,
                wall_time_ms: r.effort.elapsed.as_millis() as u64,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents serialize")
    }
}

fn note(r: &SearchReport) -> Option<String> {
    if r.outcome.tallies.total() == 0 {
        Some("no instances exist within these bounds".to_string())
    } else {
        None
    }
}

fn fmt_bounds(b: &Bounds) -> String {
    format!("|U| ≤ {}, {} ≤ |V| ≤ {}", b.max_u, b.min_v, b.max_v)
}

/// Renders an instance as indented `key: value` lines.
pub(crate) fn fmt_instance(out: &mut String, inst: &Instance, indent: &str) {
    let u = inst.domain();
    let _ = writeln!(out, "{indent}U = {}", fmt_set(u, &crate::structures::Subset::full(u.size())));
    let v = inst.codomain();
    let _ = writeln!(out, "{indent}V = {}", fmt_set(v, &crate::structures::Subset::full(v.size())));
    let _ = writeln!(out, "{indent}f: {}", fmt_map(inst));
    let parts = inst.partitions();
    for (i, p) in parts.iter().enumerate() {
        let name = if parts.len() == 1 {
            "R".to_string()
        } else {
            format!("R{}", i + 1)
        };
        let _ = writeln!(out, "{indent}{name} = {}", fmt_partition(u, p));
    }
    if let Some(x) = inst.subset() {
        let _ = writeln!(out, "{indent}X = {}", fmt_set(u, x));
    }
}

fn text(r: &SearchReport) -> String {
    let claim = r.claim.claim();
    let t = &r.outcome.tallies;
    let mut out = String::new();
    let _ = writeln!(out, "claim {} ({}): {}", r.claim, claim.expected.as_str(), claim.statement);
    let mode = match r.mode {
        Mode::Falsify => "falsify",
        Mode::Verify => "verify",
    };
    let _ = writeln!(out, "{mode} over {}", fmt_bounds(&r.bounds));
    let _ = writeln!(
        out,
        "instances {}: holds {}, fails {}, ill-typed {}, vacuous {}",
        t.total(),
        t.holds,
        t.fails,
        t.ill_typed,
        t.vacuous
    );
    for (reason, n) in &r.outcome.ill_typed_reasons {
        let _ = writeln!(out, "  ill-typed ({}): {n}", reason.as_str());
    }
    if let Some(n) = note(r) {
        let _ = writeln!(out, "note: {n}");
    }
    let shown: Vec<&Found> = match r.mode {
        Mode::Falsify => r.outcome.first_counterexample.iter().collect(),
        Mode::Verify => r.outcome.failures.iter().collect(),
    };
    if shown.is_empty() {
        let _ = writeln!(out, "no counterexample within these bounds");
    }
    for (i, f) in shown.iter().enumerate() {
        let heading = if i == 0 { "minimal counterexample" } else { "counterexample" };
        let _ = writeln!(
            out,
            "{heading} #{} (|U| = {}, |V| = {}):",
            f.ordinal,
            f.instance.domain().size(),
            f.instance.codomain().size()
        );
        fmt_instance(&mut out, &f.instance, "  ");
        let _ = writeln!(out, "  witness: {}", describe_witness(&f.instance, &f.witness));
    }
    if r.mode == Mode::Verify && t.fails > r.outcome.failures.len() as u64 {
        let _ = writeln!(out, "({} further failures not shown)", t.fails - r.outcome.failures.len() as u64);
    }
    out
}

/// Text summary plus the structured document (with effort counters).
pub fn emit_report(r: &SearchReport) -> (String, ReportDoc) {
    (text(r), ReportDoc::from_report(r, true))
}

pub fn write_report(path: &Path, doc: &ReportDoc) -> Result<(), DocError> {
    std::fs::write(path, doc.to_json() + "\n").map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_report(text: &str) -> Result<ReportDoc, DocError> {
    let doc: ReportDoc = serde_json::from_str(text).map_err(DocError::from_json)?;
    if doc.schema != REPORT_SCHEMA {
        return Err(DocError::validation(
            "schema",
            format!("expected `{REPORT_SCHEMA}`, found `{}`", doc.schema),
        ));
    }
    Ok(doc)
}

/// Re-evaluates every embedded counterexample and checks that it fails
/// with the recorded witness. Returns how many were checked.
pub fn revalidate(doc: &ReportDoc) -> Result<usize, DocError> {
    let claim: ClaimId = doc
        .claim
        .parse()
        .map_err(|e: crate::Error| DocError::validation("claim", e.to_string()))?;
    let entries = doc
        .first_counterexample
        .iter()
        .map(|c| ("first_counterexample".to_string(), c))
        .chain(doc.failures.iter().enumerate().map(|(i, c)| (format!("failures[{i}]"), c)));
    let mut checked = 0;
    for (field, c) in entries {
        let parsed = c
            .instance
            .to_instance()
            .map_err(|e| DocError::validation(&field, e.to_string()))?;
        let verdict =
            evaluate(claim, &parsed.instance).map_err(|e| DocError::validation(&field, e.to_string()))?;
        match verdict {
            Verdict::Fails(w) if w.recheck() && WitnessDoc::new(&parsed.instance, &w) == c.witness => {
                checked += 1
            }
            Verdict::Fails(w) => {
                return Err(DocError::validation(
                    field,
                    format!("re-evaluation fails with a different witness: {}", describe_witness(&parsed.instance, &w)),
                ))
            }
            other => {
                return Err(DocError::validation(
                    field,
                    format!("re-evaluation gives `{}` instead of a failure", other.label()),
                ))
            }
        }
    }
    Ok(checked)
}
