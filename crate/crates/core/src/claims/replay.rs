//! Replays the two published counterexample instances and a bijective
//! spot-check, recomputing every displayed object and comparing it with the
//! hard-coded expected value.

use super::{evaluate, ClaimId, Instance, Verdict, Witness};
use crate::approx::{is_definable, lower_approx, upper_approx};
use crate::io::text::{fmt_relation, fmt_set};
use crate::relmap::{direct_image, image_subset, relmap, SurjMap};
use crate::structures::{BinRelation, Partition, Subset, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayCheck {
    pub section: &'static str,
    pub assertion: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
}

impl ReplayReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn value(&mut self, section: &'static str, assertion: &str, expected: &str, actual: String) {
        self.checks.push(ReplayCheck {
            section,
            assertion: assertion.to_string(),
            expected: expected.to_string(),
            pass: actual == expected,
            actual,
        });
    }

    /// Compares a relation both structurally and in printed form.
    fn relation(&mut self, section: &'static str, name: &str, v: &Universe, expected: &BinRelation, actual: &BinRelation) {
        self.checks.push(ReplayCheck {
            section,
            assertion: name.to_string(),
            expected: fmt_relation(v, expected),
            actual: fmt_relation(v, actual),
            pass: expected == actual,
        });
    }

    fn fact(&mut self, section: &'static str, assertion: &str, expected: bool, actual: bool) {
        self.value(section, assertion, &expected.to_string(), actual.to_string());
    }

    fn verdict(&mut self, section: &'static str, claim: ClaimId, inst: &Instance, expected: &str) {
        let actual = match evaluate(claim, inst) {
            Ok(Verdict::Fails(w)) if w.recheck() => match &w {
                Witness::RelationInclusion { pair, on, .. } if *on == super::Side::Codomain => {
                    format!("fails at {}", crate::io::text::fmt_pair(inst.codomain(), *pair))
                }
                _ => "fails".to_string(),
            },
            Ok(Verdict::Fails(_)) => "fails with an inconsistent witness".to_string(),
            Ok(Verdict::IllTyped(r)) => format!("ill-typed ({})", r.as_str()),
            Ok(v) => v.label().to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.value(section, &format!("{claim} on this instance"), expected, actual);
    }
}

/// `U = {1..6}`, `V = {a, b}`, `f = 1,2,5,6 ↦ a; 3,4 ↦ b`, with
/// `R1 = {{1},{2},{3},{4,5,6}}` and `R2 = {{3},{1,2,4,5,6}}`.
pub fn inclusion_instance() -> Instance {
    let u = Universe::numbered(6).unwrap();
    let v = Universe::lettered(2).unwrap();
    let f = SurjMap::new(u.clone(), v, vec![0, 0, 1, 1, 0, 0]).unwrap();
    let r1 = Partition::from_blocks(&u, &[vec![0], vec![1], vec![2], vec![3, 4, 5]]).unwrap();
    let r2 = Partition::from_blocks(&u, &[vec![2], vec![0, 1, 3, 4, 5]]).unwrap();
    Instance::new(f, vec![r1, r2], None).unwrap()
}

/// `U = {1..4}`, `V = {a, b}`, `f = 1,2 ↦ a; 3,4 ↦ b`, `R = {{1},{2,3},{4}}`, `X = {1}`.
pub fn approximation_instance() -> Instance {
    let u = Universe::numbered(4).unwrap();
    let v = Universe::lettered(2).unwrap();
    let f = SurjMap::new(u.clone(), v, vec![0, 0, 1, 1]).unwrap();
    let r = Partition::from_blocks(&u, &[vec![0], vec![1, 2], vec![3]]).unwrap();
    Instance::new(f, vec![r], Some(Subset::singleton(4, 0).unwrap())).unwrap()
}

const SIX: &str = "six-point instance";
const FOUR: &str = "four-point instance";
const BIJ: &str = "bijective spot-check";

pub fn replay_paper() -> ReplayReport {
    let mut rep = ReplayReport::default();
    replay_inclusion(&mut rep);
    replay_approximation(&mut rep);
    replay_bijection(&mut rep);
    rep
}

fn replay_inclusion(rep: &mut ReplayReport) {
    let inst = inclusion_instance();
    let f = inst.map();
    let v = inst.codomain();
    let (r1, r2) = (&inst.partitions()[0], &inst.partitions()[1]);
    let full = BinRelation::from_pairs(2, [(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
    let id = BinRelation::from_pairs(2, [(0, 0), (1, 1)]).unwrap();

    let f1 = relmap(f, r1).unwrap();
    let f2 = relmap(f, r2).unwrap();
    rep.relation(SIX, "f(R1)", v, &full, &f1);
    rep.relation(SIX, "f(R2)", v, &id, &f2);
    rep.value(SIX, "f(R1) printed", "{(a, a), (b, b), (a, b), (b, a)}", fmt_relation(v, &f1));
    rep.value(SIX, "f(R2) printed", "{(a, a), (b, b)}", fmt_relation(v, &f2));

    rep.fact(SIX, "R1 ⊆ R2", true, r1.refines(r2).unwrap());
    rep.fact(SIX, "R2 ⊆ R1", false, r2.refines(r1).unwrap());
    rep.fact(SIX, "f(R1) ⊆ f(R2)", false, f1.is_subset(&f2).unwrap());
    rep.fact(SIX, "f(R2) ⊆ f(R1)", true, f2.is_subset(&f1).unwrap());

    let meet = r1.meet(r2).unwrap();
    let f_meet = relmap(f, &meet).unwrap();
    let f_cap = f1.intersection(&f2).unwrap();
    rep.relation(SIX, "f(R1 ∩ R2)", v, &full, &f_meet);
    rep.fact(SIX, "f(R1 ∩ R2) = f(R1)", true, f_meet == f1);
    rep.fact(SIX, "f(R1) ∩ f(R2) = f(R2)", true, f_cap == f2);
    rep.fact(
        SIX,
        "f(R1 ∩ R2) ⊋ f(R1) ∩ f(R2)",
        true,
        f_cap.is_subset(&f_meet).unwrap() && f_cap != f_meet,
    );

    let raw = r1.union_raw(r2).unwrap();
    rep.fact(SIX, "R1 ∪ R2 is an equivalence", true, raw.classify().equivalence());
    rep.fact(SIX, "R1 ∪ R2 = R2", true, raw == r2.to_relation());
    let union = Partition::from_relation(&raw).unwrap();
    let f_union = relmap(f, &union).unwrap();
    let f_cup = f1.union(&f2).unwrap();
    rep.relation(SIX, "f(R1 ∪ R2)", v, &id, &f_union);
    rep.fact(SIX, "f(R1 ∪ R2) = f(R2)", true, f_union == f2);
    rep.fact(SIX, "f(R1) ∪ f(R2) = f(R1)", true, f_cup == f1);
    rep.fact(SIX, "f(R1 ∪ R2) ⊇ f(R1) ∪ f(R2)", false, f_cup.is_subset(&f_union).unwrap());

    rep.verdict(SIX, ClaimId::L311Fwd, &inst, "fails at (a, b)");
    let swapped = Instance::new(f.clone(), vec![r2.clone(), r1.clone()], None).unwrap();
    rep.verdict(SIX, ClaimId::L311Bwd, &swapped, "fails");
    rep.verdict(SIX, ClaimId::L312Inc, &inst, "fails at (a, b)");
    rep.verdict(SIX, ClaimId::L313Inc, &inst, "fails at (a, b)");
    rep.verdict(SIX, ClaimId::L32, &inst, "ill-typed (difference-not-reflexive)");
}

fn replay_approximation(rep: &mut ReplayReport) {
    let inst = approximation_instance();
    let f = inst.map();
    let (u, v) = (inst.domain(), inst.codomain());
    let r = &inst.partitions()[0];
    let x = inst.subset().unwrap();

    rep.value(FOUR, "lower_R X", "{1}", fmt_set(u, &lower_approx(r, x).unwrap()));
    rep.value(FOUR, "upper_R X", "{1}", fmt_set(u, &upper_approx(r, x).unwrap()));
    rep.fact(FOUR, "X is definable", true, is_definable(r, x).unwrap());
    let fx = image_subset(f, x).unwrap();
    rep.value(FOUR, "f(X)", "{a}", fmt_set(v, &fx));
    let fr = relmap(f, r).unwrap();
    rep.relation(FOUR, "f(R)", v, &BinRelation::full(2), &fr);
    rep.value(FOUR, "f(R) printed", "{(a, a), (b, b), (a, b), (b, a)}", fmt_relation(v, &fr));
    let frp = Partition::from_relation(&fr).unwrap();
    rep.value(FOUR, "lower_f(R) f(X)", "∅", fmt_set(v, &lower_approx(&frp, &fx).unwrap()));
    rep.value(FOUR, "upper_f(R) f(X)", "{a, b}", fmt_set(v, &upper_approx(&frp, &fx).unwrap()));
    rep.fact(FOUR, "upper_f(R) f(X) = V", true, upper_approx(&frp, &fx).unwrap() == Subset::full(2));
    let f_lower = image_subset(f, &lower_approx(r, x).unwrap()).unwrap();
    let f_upper = image_subset(f, &upper_approx(r, x).unwrap()).unwrap();
    rep.value(FOUR, "f(lower_R X)", "{a}", fmt_set(v, &f_lower));
    rep.value(FOUR, "f(upper_R X)", "{a}", fmt_set(v, &f_upper));
    for c in [ClaimId::T411, ClaimId::T412, ClaimId::T431, ClaimId::T432] {
        rep.verdict(FOUR, c, &inst, "fails");
    }
}

fn replay_bijection(rep: &mut ReplayReport) {
    let base = approximation_instance();
    let u = base.domain().clone();
    let f = SurjMap::new(u.clone(), Universe::lettered(4).unwrap(), vec![0, 1, 2, 3]).unwrap();
    let r = base.partitions()[0].clone();
    rep.fact(
        BIJ,
        "f(R) is the direct image of R",
        true,
        relmap(&f, &r).unwrap() == direct_image(&f, &r).unwrap(),
    );
    for claim in [ClaimId::T421, ClaimId::T422] {
        let all_hold = (0..16u64).all(|bits| {
            let x = Subset::from_bits(4, bits).unwrap();
            let inst = Instance::new(f.clone(), vec![r.clone()], Some(x)).unwrap();
            evaluate(claim, &inst).unwrap() == Verdict::Holds
        });
        rep.fact(BIJ, &format!("{claim} holds for every X ⊆ U"), true, all_hold);
    }
}
