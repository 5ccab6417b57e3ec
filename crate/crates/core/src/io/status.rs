//! The claim-status page: reproducible desk-scale findings for every claim
//! whose truth value is not settled in advance.

use std::fmt::Write as _;

use super::report::{fmt_instance, ReportDoc};
use super::text::describe_witness;
use crate::claims::{verify, Bounds, ClaimId, SearchOptions, SearchReport};
use crate::Result;

/// Claims and bounds covered by the status page.
pub const STATUS_RUNS: [(ClaimId, Bounds); 5] = [
    (ClaimId::T31, Bounds { max_u: 6, max_v: 4, min_v: 1 }),
    (ClaimId::T31Refl, Bounds { max_u: 5, max_v: 5, min_v: 1 }),
    (ClaimId::L312Eq, Bounds { max_u: 6, max_v: 3, min_v: 1 }),
    (ClaimId::L313Eq, Bounds { max_u: 6, max_v: 3, min_v: 1 }),
    (ClaimId::L313Join, Bounds { max_u: 6, max_v: 3, min_v: 1 }),
];

/// Runs every status scan in verify mode.
pub fn run_status(workers: usize) -> Result<Vec<SearchReport>> {
    let opts = SearchOptions {
        workers,
        max_failures: 1,
    };
    STATUS_RUNS
        .iter()
        .map(|&(claim, bounds)| verify(claim, bounds, opts))
        .collect()
}

/// One-line finding for a verify report.
pub fn finding(r: &SearchReport) -> String {
    if r.outcome.tallies.fails == 0 {
        format!(
            "holds at these bounds ({} non-vacuous instances checked)",
            r.outcome.tallies.holds
        )
    } else {
        format!(
            "refuted at these bounds: {} of {} instances fail",
            r.outcome.tallies.fails,
            r.outcome.tallies.total()
        )
    }
}

/// Renders the markdown page. Contains no timing data, so equal scans give byte-equal pages.
pub fn render_status(reports: &[SearchReport]) -> String {
    let mut out = String::new();
    out.push_str("# Claim status at desk-scale bounds\n\n");
    out.push_str(
        "Generated by `roughmap status`; do not edit by hand. Each section is an exhaustive\n\
         `verify` scan. These are computed findings for statements whose truth value is not\n\
         settled in advance, valid only at the stated bounds. Every embedded counterexample\n\
         re-validates with `roughmap eval --input <report.json>`.\n",
    );
    for r in reports {
        let claim = r.claim.claim();
        let t = &r.outcome.tallies;
        let b = &r.bounds;
        let _ = write!(
            out,
            "\n## {}\n\n\
             - statement: {}\n\
             - status before search: {}\n\
             - bounds: |U| ≤ {}, {} ≤ |V| ≤ {}\n\
             - instances: {} (holds {}, fails {}, ill-typed {}, vacuous {})\n\
             - finding: {}\n",
            r.claim,
            claim.statement,
            claim.expected.as_str(),
            b.max_u,
            b.min_v,
            b.max_v,
            t.total(),
            t.holds,
            t.fails,
            t.ill_typed,
            t.vacuous,
            finding(r)
        );
        for (reason, n) in &r.outcome.ill_typed_reasons {
            let _ = writeln!(out, "- ill-typed ({}): {n}", reason.as_str());
        }
        if let Some(f) = &r.outcome.first_counterexample {
            let _ = writeln!(
                out,
                "\nMinimal counterexample (#{} in canonical order):\n\n```text",
                f.ordinal
            );
            fmt_instance(&mut out, &f.instance, "");
            let _ = writeln!(out, "witness: {}\n```", describe_witness(&f.instance, &f.witness));
        }
        let doc = ReportDoc::from_report(r, false);
        let _ = writeln!(out, "\n```json\n{}\n```", doc.to_json());
    }
    out
}

/// Pulls the embedded report documents back out of a rendered page.
pub fn embedded_reports(page: &str) -> std::result::Result<Vec<ReportDoc>, super::DocError> {
    let mut docs = Vec::new();
    let mut rest = page;
    while let Some(start) = rest.find("```json\n") {
        let body = &rest[start + 8..];
        let end = body.find("\n```").unwrap_or(body.len());
        docs.push(super::parse_report(&body[..end])?);
        rest = &body[end..];
    }
    Ok(docs)
}
