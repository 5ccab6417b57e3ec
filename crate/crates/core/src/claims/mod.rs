//! The closed registry of statements about the relation mapping, their
//! per-instance evaluation, exhaustive search, and the reference replay.

mod eval;
pub mod replay;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

pub use eval::{evaluate, IllTypedReason, Instance, Side, Verdict, Witness};
pub use search::{
    falsify, run_search, verify, Bounds, Effort, Found, Mode, SearchOptions, SearchOutcome,
    SearchReport, Tallies,
};

/// Stable claim identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    T31,
    T31Refl,
    L311Fwd,
    L311Bwd,
    L312Inc,
    L312Eq,
    L313Inc,
    L313Eq,
    L313Join,
    L32,
    T411,
    T412,
    T421,
    T422,
    T431,
    T432,
}

impl ClaimId {
    pub const ALL: [ClaimId; 16] = [
        ClaimId::T31,
        ClaimId::T31Refl,
        ClaimId::L311Fwd,
        ClaimId::L311Bwd,
        ClaimId::L312Inc,
        ClaimId::L312Eq,
        ClaimId::L313Inc,
        ClaimId::L313Eq,
        ClaimId::L313Join,
        ClaimId::L32,
        ClaimId::T411,
        ClaimId::T412,
        ClaimId::T421,
        ClaimId::T422,
        ClaimId::T431,
        ClaimId::T432,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::T31 => "T31",
            ClaimId::T31Refl => "T31-refl",
            ClaimId::L311Fwd => "L31-1-fwd",
            ClaimId::L311Bwd => "L31-1-bwd",
            ClaimId::L312Inc => "L31-2-inc",
            ClaimId::L312Eq => "L31-2-eq",
            ClaimId::L313Inc => "L31-3-inc",
            ClaimId::L313Eq => "L31-3-eq",
            ClaimId::L313Join => "L31-3-join",
            ClaimId::L32 => "L32",
            ClaimId::T411 => "T41-1",
            ClaimId::T412 => "T41-2",
            ClaimId::T421 => "T42-1",
            ClaimId::T422 => "T42-2",
            ClaimId::T431 => "T43-1",
            ClaimId::T432 => "T43-2",
        }
    }

    pub fn claim(self) -> &'static Claim {
        &REGISTRY[self as usize]
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What an instance's map must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapConstraint {
    Any,
    Surjective,
    Bijective,
}

/// Components an instance must carry for a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub partitions: usize,
    pub subset: bool,
    pub map: MapConstraint,
    /// The claim assumes `[x]_f ⊆ [x]_{R_i}` for every `x` and every partition.
    pub fiber_condition: bool,
}

/// Status of a claim before any search is run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedStatus {
    /// A published counterexample exists.
    Refuted,
    /// Known to hold.
    Proven,
    /// Applies `f` or an approximation to something that is not an equivalence.
    IllTyped,
    /// No truth value is established; searches report what they find.
    Open,
}

impl ExpectedStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpectedStatus::Refuted => "refuted",
            ExpectedStatus::Proven => "proven",
            ExpectedStatus::IllTyped => "ill-typed",
            ExpectedStatus::Open => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: ClaimId,
    pub statement: &'static str,
    pub shape: Shape,
    pub expected: ExpectedStatus,
    /// Which property of the relation mapping the claim is about.
    pub topic: &'static str,
}

const fn shape(partitions: usize, subset: bool, map: MapConstraint, fiber_condition: bool) -> Shape {
    Shape {
        partitions,
        subset,
        map,
        fiber_condition,
    }
}

use ExpectedStatus as S;
use MapConstraint as M;

static REGISTRY: [Claim; 16] = [
    Claim {
        id: ClaimId::T31,
        statement: "f surjective, R ∈ ℜ(U) ⇒ f(R) is an equivalence relation on V",
        shape: shape(1, false, M::Surjective, false),
        expected: S::Open,
        topic: "mapping lands in ℜ(V); reflexivity needs surjectivity, transitivity unsettled",
    },
    Claim {
        id: ClaimId::T31Refl,
        statement: "f(R) is reflexive on V ⇔ f is surjective",
        shape: shape(1, false, M::Any, false),
        expected: S::Proven,
        topic: "surjectivity is exactly what reflexivity of f(R) needs",
    },
    Claim {
        id: ClaimId::L311Fwd,
        statement: "R1 ⊆ R2 ⇒ f(R1) ⊆ f(R2)",
        shape: shape(2, false, M::Surjective, false),
        expected: S::Refuted,
        topic: "monotonicity of the mapping",
    },
    Claim {
        id: ClaimId::L311Bwd,
        statement: "f(R1) ⊆ f(R2) ⇒ R1 ⊆ R2",
        shape: shape(2, false, M::Surjective, false),
        expected: S::Refuted,
        topic: "order reflection of the mapping",
    },
    Claim {
        id: ClaimId::L312Inc,
        statement: "f(R1 ∩ R2) ⊆ f(R1) ∩ f(R2)",
        shape: shape(2, false, M::Surjective, false),
        expected: S::Refuted,
        topic: "image of an intersection",
    },
    Claim {
        id: ClaimId::L312Eq,
        statement: "∀x: [x]_f ⊆ [x]_R1 ∧ [x]_f ⊆ [x]_R2 ⇒ f(R1 ∩ R2) = f(R1) ∩ f(R2)",
        shape: shape(2, false, M::Surjective, true),
        expected: S::Open,
        topic: "image of an intersection under the fiber condition",
    },
    Claim {
        id: ClaimId::L313Inc,
        statement: "R1 ∪ R2 ∈ ℜ(U) ⇒ f(R1 ∪ R2) ⊇ f(R1) ∪ f(R2)",
        shape: shape(2, false, M::Surjective, false),
        expected: S::Refuted,
        topic: "image of a literal union",
    },
    Claim {
        id: ClaimId::L313Eq,
        statement: "R1 ∪ R2 ∈ ℜ(U), ∀x: [x]_f ⊆ [x]_R1 ∧ [x]_f ⊆ [x]_R2 ⇒ f(R1 ∪ R2) = f(R1) ∪ f(R2)",
        shape: shape(2, false, M::Surjective, true),
        expected: S::Open,
        topic: "image of a literal union under the fiber condition",
    },
    Claim {
        id: ClaimId::L313Join,
        statement: "f(R1 ∨ R2) ⊇ f(R1) ∪ f(R2), where ∨ is the partition join",
        shape: shape(2, false, M::Surjective, false),
        expected: S::Open,
        topic: "image of a join",
    },
    Claim {
        id: ClaimId::L32,
        statement: "∀x: [x]_f ⊆ [x]_R1 ∧ [x]_f ⊆ [x]_R2 ⇒ f(R1) − f(R2) = f(R1 − R2)",
        shape: shape(2, false, M::Surjective, true),
        expected: S::IllTyped,
        topic: "image of a difference",
    },
    Claim {
        id: ClaimId::T411,
        statement: "f(lower_R X) ⊆ lower_f(R) f(X)",
        shape: shape(1, true, M::Surjective, false),
        expected: S::Refuted,
        topic: "lower approximation commutes outward",
    },
    Claim {
        id: ClaimId::T412,
        statement: "f(upper_R X) ⊇ upper_f(R) f(X)",
        shape: shape(1, true, M::Surjective, false),
        expected: S::Refuted,
        topic: "upper approximation commutes inward",
    },
    Claim {
        id: ClaimId::T421,
        statement: "f bijective ⇒ f(lower_R X) = lower_f(R) f(X)",
        shape: shape(1, true, M::Bijective, false),
        expected: S::Proven,
        topic: "bijections preserve lower approximations",
    },
    Claim {
        id: ClaimId::T422,
        statement: "f bijective ⇒ f(upper_R X) = upper_f(R) f(X)",
        shape: shape(1, true, M::Bijective, false),
        expected: S::Proven,
        topic: "bijections preserve upper approximations",
    },
    Claim {
        id: ClaimId::T431,
        statement: "lower_R X = upper_R X = X ⇒ f(lower_R X) = lower_f(R) f(X) = f(X)",
        shape: shape(1, true, M::Surjective, false),
        expected: S::Refuted,
        topic: "definable sets keep their lower approximation",
    },
    Claim {
        id: ClaimId::T432,
        statement: "lower_R X = upper_R X = X ⇒ f(upper_R X) = upper_f(R) f(X) = f(X)",
        shape: shape(1, true, M::Surjective, false),
        expected: S::Refuted,
        topic: "definable sets keep their upper approximation",
    },
];

/// Every registered claim in id order.
pub fn list_claims() -> &'static [Claim] {
    &REGISTRY
}
