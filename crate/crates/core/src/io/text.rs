//! Plain-text rendering with element labels, e.g. `{(a, a), (b, b)}`.

use crate::claims::{Instance, Side, Witness};
use crate::structures::{BinRelation, Partition, Subset, Universe};

pub fn fmt_element(u: &Universe, x: usize) -> String {
    u.label(x)
}

/// `{1, 2}`, or `∅`.
pub fn fmt_set(u: &Universe, s: &Subset) -> String {
    if s.is_empty() {
        return "∅".to_string();
    }
    let items: Vec<String> = s.elements().map(|x| u.label(x)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn fmt_pair(u: &Universe, (x, y): (usize, usize)) -> String {
    format!("({}, {})", u.label(x), u.label(y))
}

/// Diagonal pairs first, then the rest in row-major order; `∅` when empty.
pub fn fmt_relation(u: &Universe, r: &BinRelation) -> String {
    if r.is_empty() {
        return "∅".to_string();
    }
    let diagonal = r.pairs().filter(|(x, y)| x == y);
    let rest = r.pairs().filter(|(x, y)| x != y);
    let items: Vec<String> = diagonal.chain(rest).map(|p| fmt_pair(u, p)).collect();
    format!("{{{}}}", items.join(", "))
}

/// `{{1}, {2, 3}, {4}}`.
pub fn fmt_partition(u: &Universe, p: &Partition) -> String {
    let blocks: Vec<String> = p.blocks().map(|b| fmt_set(u, &b)).collect();
    format!("{{{}}}", blocks.join(", "))
}

/// `1 ↦ a, 2 ↦ a, ..`.
pub fn fmt_map(inst: &Instance) -> String {
    let f = inst.map();
    (0..inst.domain().size())
        .map(|x| format!("{} ↦ {}", inst.domain().label(x), inst.codomain().label(f.apply(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn side(inst: &Instance, on: Side) -> &Universe {
    match on {
        Side::Domain => inst.domain(),
        Side::Codomain => inst.codomain(),
    }
}

/// One-line human account of a failure.
pub fn describe_witness(inst: &Instance, w: &Witness) -> String {
    match w {
        Witness::RelationInclusion {
            on,
            lhs,
            rhs,
            left,
            right,
            pair,
        } => {
            let u = side(inst, *on);
            format!(
                "{lhs} ⊄ {rhs}: {} ∈ {lhs} = {} but ∉ {rhs} = {}",
                fmt_pair(u, *pair),
                fmt_relation(u, left),
                fmt_relation(u, right)
            )
        }
        Witness::RelationEquality {
            on,
            lhs,
            rhs,
            left,
            right,
            pair,
        } => {
            let u = side(inst, *on);
            let (inside, outside) = if left.contains(pair.0, pair.1) {
                (lhs, rhs)
            } else {
                (rhs, lhs)
            };
            format!(
                "{lhs} ≠ {rhs}: {} ∈ {inside} but ∉ {outside}; {lhs} = {}, {rhs} = {}",
                fmt_pair(u, *pair),
                fmt_relation(u, left),
                fmt_relation(u, right)
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
            let u = side(inst, *on);
            format!(
                "{lhs} = {} ⊄ {} = {rhs}: {} is missing on the right",
                fmt_set(u, left),
                fmt_set(u, right),
                u.label(*element)
            )
        }
        Witness::SetEquality { on, terms, element } => {
            let u = side(inst, *on);
            let parts: Vec<String> = terms
                .iter()
                .map(|(name, s)| format!("{name} = {}", fmt_set(u, s)))
                .collect();
            format!("terms disagree on {}: {}", u.label(*element), parts.join(", "))
        }
        Witness::NotEquivalence {
            on,
            name,
            relation,
            violation,
        } => {
            let u = side(inst, *on);
            let (last, present) = violation.pairs.split_last().unwrap();
            let present: Vec<String> = present.iter().map(|&p| fmt_pair(u, p)).collect();
            let because = if present.is_empty() {
                format!("{} ∉ {name}", fmt_pair(u, *last))
            } else {
                format!(
                    "{} ∈ {name} but {} ∉ {name}",
                    present.join(", "),
                    fmt_pair(u, *last)
                )
            };
            format!(
                "{name} = {} fails {}: {because}",
                fmt_relation(u, relation),
                violation.condition
            )
        }
        Witness::ReflexivityMismatch {
            relation,
            surjective,
            element,
        } => {
            let u = inst.codomain();
            if *surjective {
                format!(
                    "f is surjective but ({0}, {0}) ∉ f(R) = {1}",
                    u.label(*element),
                    fmt_relation(u, relation)
                )
            } else {
                format!(
                    "{} is outside f(U) yet f(R) = {} is reflexive",
                    u.label(*element),
                    fmt_relation(u, relation)
                )
            }
        }
    }
}
