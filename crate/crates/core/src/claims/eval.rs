use serde::{Deserialize, Serialize};

use super::{ClaimId, MapConstraint};
use crate::approx::{is_definable, lower_approx, upper_approx};
use crate::error::check_same;
use crate::relmap::{image_subset, relmap, SurjMap};
use crate::structures::{BinRelation, Partition, Subset, Universe, Violation};
use crate::{Condition, Error, Result};

/// Concrete data a claim is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    map: SurjMap,
    partitions: Vec<Partition>,
    subset: Option<Subset>,
}

impl Instance {
    pub fn new(map: SurjMap, partitions: Vec<Partition>, subset: Option<Subset>) -> Result<Self> {
        let n = map.domain().size();
        for p in &partitions {
            check_same(n, p.universe_size())?;
        }
        if let Some(x) = &subset {
            check_same(n, x.universe_size())?;
        }
        Ok(Instance {
            map,
            partitions,
            subset,
        })
    }

    pub fn domain(&self) -> &Universe {
        self.map.domain()
    }

    pub fn codomain(&self) -> &Universe {
        self.map.codomain()
    }

    pub fn map(&self) -> &SurjMap {
        &self.map
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn subset(&self) -> Option<&Subset> {
        self.subset.as_ref()
    }
}

/// Which universe a witness lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Domain,
    Codomain,
}

/// Why a statement cannot even be formed on an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IllTypedReason {
    IntersectionNotEquivalence,
    UnionNotEquivalence,
    DifferenceNotReflexive,
    DifferenceNotSymmetric,
    DifferenceNotTransitive,
    RelmapNotEquivalence,
}

impl IllTypedReason {
    pub fn as_str(self) -> &'static str {
        match self {
            IllTypedReason::IntersectionNotEquivalence => "intersection-not-equivalence",
            IllTypedReason::UnionNotEquivalence => "union-not-equivalence",
            IllTypedReason::DifferenceNotReflexive => "difference-not-reflexive",
            IllTypedReason::DifferenceNotSymmetric => "difference-not-symmetric",
            IllTypedReason::DifferenceNotTransitive => "difference-not-transitive",
            IllTypedReason::RelmapNotEquivalence => "relmap-not-equivalence",
        }
    }
}

/// The concrete object that violates a conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `pair ∈ left` but `pair ∉ right`.
    RelationInclusion {
        on: Side,
        lhs: &'static str,
        rhs: &'static str,
        left: BinRelation,
        right: BinRelation,
        pair: (usize, usize),
    },
    /// `pair` lies in exactly one of `left`, `right`.
    RelationEquality {
        on: Side,
        lhs: &'static str,
        rhs: &'static str,
        left: BinRelation,
        right: BinRelation,
        pair: (usize, usize),
    },
    /// `element ∈ left` but `element ∉ right`.
    SetInclusion {
        on: Side,
        lhs: &'static str,
        rhs: &'static str,
        left: Subset,
        right: Subset,
        element: usize,
    },
    /// `element` lies in some but not all of the terms.
    SetEquality {
        on: Side,
        terms: Vec<(&'static str, Subset)>,
        element: usize,
    },
    NotEquivalence {
        on: Side,
        name: &'static str,
        relation: BinRelation,
        violation: Violation,
    },
    /// Reflexivity of `relation` on the codomain disagrees with surjectivity at `element`.
    ReflexivityMismatch {
        relation: BinRelation,
        surjective: bool,
        element: usize,
    },
}

impl Witness {
    /// Checks the witness against its own data, independent of the claim that produced it.
    pub fn recheck(&self) -> bool {
        match self {
            Witness::RelationInclusion {
                left, right, pair, ..
            } => left.contains(pair.0, pair.1) && !right.contains(pair.0, pair.1),
            Witness::RelationEquality {
                left, right, pair, ..
            } => left.contains(pair.0, pair.1) != right.contains(pair.0, pair.1),
            Witness::SetInclusion {
                left,
                right,
                element,
                ..
            } => left.contains(*element) && !right.contains(*element),
            Witness::SetEquality { terms, element, .. } => {
                terms.iter().any(|(_, s)| s.contains(*element))
                    && terms.iter().any(|(_, s)| !s.contains(*element))
            }
            Witness::NotEquivalence {
                relation,
                violation,
                ..
            } => {
                let (last, present) = violation.pairs.split_last().unwrap();
                let shape_ok = match (violation.condition, violation.pairs.as_slice()) {
                    (Condition::Reflexivity, [(x, y)]) => x == y,
                    (Condition::Symmetry, [(x, y), (y2, x2)]) => x == x2 && y == y2,
                    (Condition::Transitivity, [(x, y), (y2, z), (x2, z2)]) => {
                        y == y2 && x == x2 && z == z2
                    }
                    _ => false,
                };
                shape_ok
                    && present.iter().all(|&(a, b)| relation.contains(a, b))
                    && !relation.contains(last.0, last.1)
            }
            Witness::ReflexivityMismatch {
                relation,
                surjective,
                element,
            } => {
                if *surjective {
                    !relation.contains(*element, *element)
                } else {
                    // a non-surjective map whose image relation is still reflexive
                    relation.is_reflexive() && *element < relation.universe_size()
                }
            }
        }
    }
}

/// Outcome of checking one claim on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    IllTyped(IllTypedReason),
    /// The claim's hypothesis is false on this instance.
    Vacuous,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::IllTyped(_) => "ill-typed",
            Verdict::Vacuous => "vacuous",
        }
    }
}

fn check_shape(claim: ClaimId, inst: &Instance) -> Result<()> {
    let shape = claim.claim().shape;
    if inst.partitions.len() != shape.partitions {
        return Err(Error::BadInstance(format!(
            "{claim} needs {} partition(s), instance has {}",
            shape.partitions,
            inst.partitions.len()
        )));
    }
    if shape.subset && inst.subset.is_none() {
        return Err(Error::BadInstance(format!("{claim} needs a subset X")));
    }
    match shape.map {
        MapConstraint::Any => {}
        MapConstraint::Surjective if !inst.map.is_surjective() => {
            return Err(Error::BadInstance(format!("{claim} needs a surjective map")));
        }
        MapConstraint::Bijective if !inst.map.is_bijective() => {
            return Err(Error::BadInstance(format!("{claim} needs a bijective map")));
        }
        _ => {}
    }
    Ok(())
}

fn relation_inclusion(
    on: Side,
    lhs: &'static str,
    rhs: &'static str,
    left: BinRelation,
    right: BinRelation,
) -> Verdict {
    let pair = left.pairs().find(|&(x, y)| !right.contains(x, y));
    match pair {
        None => Verdict::Holds,
        Some(pair) => Verdict::Fails(Witness::RelationInclusion {
            on,
            lhs,
            rhs,
            left,
            right,
            pair,
        }),
    }
}

fn relation_equality(
    on: Side,
    lhs: &'static str,
    rhs: &'static str,
    left: BinRelation,
    right: BinRelation,
) -> Verdict {
    let n = left.universe_size();
    let pair = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| left.contains(x, y) != right.contains(x, y));
    match pair {
        None => Verdict::Holds,
        Some(pair) => Verdict::Fails(Witness::RelationEquality {
            on,
            lhs,
            rhs,
            left,
            right,
            pair,
        }),
    }
}

fn set_inclusion(lhs: &'static str, rhs: &'static str, left: Subset, right: Subset) -> Verdict {
    match left.elements().find(|&e| !right.contains(e)) {
        None => Verdict::Holds,
        Some(element) => Verdict::Fails(Witness::SetInclusion {
            on: Side::Codomain,
            lhs,
            rhs,
            left,
            right,
            element,
        }),
    }
}

fn set_equality(terms: Vec<(&'static str, Subset)>) -> Verdict {
    let all = terms.iter().fold(0u64, |a, (_, s)| a | s.bits());
    let common = terms.iter().fold(u64::MAX, |a, (_, s)| a & s.bits());
    let odd = all & !common;
    if odd == 0 {
        Verdict::Holds
    } else {
        Verdict::Fails(Witness::SetEquality {
            on: Side::Codomain,
            terms,
            element: odd.trailing_zeros() as usize,
        })
    }
}

fn fiber_condition(f: &SurjMap, parts: &[Partition]) -> bool {
    parts.iter().all(|p| f.fibers_within(p).unwrap_or(false))
}

/// `f(R)` as a partition, or the reason it is not one.
fn relmap_partition(f: &SurjMap, p: &Partition) -> std::result::Result<Partition, IllTypedReason> {
    Partition::from_relation(&relmap(f, p).expect("checked universe"))
        .map_err(|_| IllTypedReason::RelmapNotEquivalence)
}

/// Evaluates a claim on an instance.
///
/// Order of checks: every object the statement mentions must be well formed
/// (otherwise [`Verdict::IllTyped`]); then the hypothesis (otherwise
/// [`Verdict::Vacuous`]); then the conclusion.
pub fn evaluate(claim: ClaimId, inst: &Instance) -> Result<Verdict> {
    check_shape(claim, inst)?;
    let f = &inst.map;
    let fm = |p: &Partition| relmap(f, p).expect("checked universe");
    let ps = &inst.partitions;
    use ClaimId::*;
    let verdict = match claim {
        T31 => {
            let rel = fm(&ps[0]);
            match rel.violation() {
                None => Verdict::Holds,
                Some(violation) => Verdict::Fails(Witness::NotEquivalence {
                    on: Side::Codomain,
                    name: "f(R)",
                    relation: rel,
                    violation,
                }),
            }
        }
        T31Refl => {
            let rel = fm(&ps[0]);
            let surjective = f.is_surjective();
            let n = rel.universe_size();
            if rel.is_reflexive() == surjective {
                Verdict::Holds
            } else {
                let element = if surjective {
                    (0..n).find(|&v| !rel.contains(v, v)).unwrap()
                } else {
                    f.range().complement().elements().next().unwrap()
                };
                Verdict::Fails(Witness::ReflexivityMismatch {
                    relation: rel,
                    surjective,
                    element,
                })
            }
        }
        L311Fwd => {
            if !ps[0].refines(&ps[1])? {
                Verdict::Vacuous
            } else {
                relation_inclusion(Side::Codomain, "f(R1)", "f(R2)", fm(&ps[0]), fm(&ps[1]))
            }
        }
        L311Bwd => {
            if !fm(&ps[0]).is_subset(&fm(&ps[1]))? {
                Verdict::Vacuous
            } else {
                relation_inclusion(
                    Side::Domain,
                    "R1",
                    "R2",
                    ps[0].to_relation(),
                    ps[1].to_relation(),
                )
            }
        }
        L312Inc | L312Eq => {
            let meet = ps[0].to_relation().intersection(&ps[1].to_relation())?;
            match Partition::from_relation(&meet) {
                Err(_) => Verdict::IllTyped(IllTypedReason::IntersectionNotEquivalence),
                Ok(_) if claim == L312Eq && !fiber_condition(f, ps) => Verdict::Vacuous,
                Ok(meet) => {
                    let left = fm(&meet);
                    let right = fm(&ps[0]).intersection(&fm(&ps[1]))?;
                    if claim == L312Inc {
                        relation_inclusion(Side::Codomain, "f(R1 ∩ R2)", "f(R1) ∩ f(R2)", left, right)
                    } else {
                        relation_equality(Side::Codomain, "f(R1 ∩ R2)", "f(R1) ∩ f(R2)", left, right)
                    }
                }
            }
        }
        L313Inc | L313Eq => {
            let union = ps[0].union_raw(&ps[1])?;
            match Partition::from_relation(&union) {
                Err(_) => Verdict::IllTyped(IllTypedReason::UnionNotEquivalence),
                Ok(_) if claim == L313Eq && !fiber_condition(f, ps) => Verdict::Vacuous,
                Ok(union) => {
                    let left = fm(&ps[0]).union(&fm(&ps[1]))?;
                    let right = fm(&union);
                    if claim == L313Inc {
                        relation_inclusion(Side::Codomain, "f(R1) ∪ f(R2)", "f(R1 ∪ R2)", left, right)
                    } else {
                        relation_equality(Side::Codomain, "f(R1 ∪ R2)", "f(R1) ∪ f(R2)", right, left)
                    }
                }
            }
        }
        L313Join => {
            let join = ps[0].join(&ps[1])?;
            let left = fm(&ps[0]).union(&fm(&ps[1]))?;
            relation_inclusion(Side::Codomain, "f(R1) ∪ f(R2)", "f(R1 ∨ R2)", left, fm(&join))
        }
        L32 => {
            let diff = ps[0].to_relation().difference(&ps[1].to_relation())?;
            match diff.classify().first_failure() {
                Some(Condition::Reflexivity) => Verdict::IllTyped(IllTypedReason::DifferenceNotReflexive),
                Some(Condition::Symmetry) => Verdict::IllTyped(IllTypedReason::DifferenceNotSymmetric),
                Some(Condition::Transitivity) => Verdict::IllTyped(IllTypedReason::DifferenceNotTransitive),
                None => {
                    let diff = Partition::from_relation(&diff)?;
                    if !fiber_condition(f, ps) {
                        Verdict::Vacuous
                    } else {
                        let left = fm(&ps[0]).difference(&fm(&ps[1]))?;
                        relation_equality(Side::Codomain, "f(R1) − f(R2)", "f(R1 − R2)", left, fm(&diff))
                    }
                }
            }
        }
        T411 | T412 | T421 | T422 | T431 | T432 => {
            let r = &ps[0];
            let x = inst.subset.as_ref().expect("shape checked");
            let fr = match relmap_partition(f, r) {
                Ok(p) => p,
                Err(reason) => return Ok(Verdict::IllTyped(reason)),
            };
            let fx = image_subset(f, x)?;
            let lower = matches!(claim, T411 | T421 | T431);
            let (image_of_approx, approx_of_image) = if lower {
                (image_subset(f, &lower_approx(r, x)?)?, lower_approx(&fr, &fx)?)
            } else {
                (image_subset(f, &upper_approx(r, x)?)?, upper_approx(&fr, &fx)?)
            };
            let (lhs, rhs) = if lower {
                ("f(lower_R X)", "lower_f(R) f(X)")
            } else {
                ("f(upper_R X)", "upper_f(R) f(X)")
            };
            match claim {
                T411 => set_inclusion(lhs, rhs, image_of_approx, approx_of_image),
                T412 => set_inclusion(rhs, lhs, approx_of_image, image_of_approx),
                T421 | T422 => set_equality(vec![(lhs, image_of_approx), (rhs, approx_of_image)]),
                _ => {
                    if !is_definable(r, x)? {
                        Verdict::Vacuous
                    } else {
                        set_equality(vec![
                            (lhs, image_of_approx),
                            (rhs, approx_of_image),
                            ("f(X)", fx),
                        ])
                    }
                }
            }
        }
    };
    Ok(verdict)
}
