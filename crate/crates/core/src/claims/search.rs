//! Exhaustive search over bounded instance spaces.
//!
//! Instances are visited in a fixed canonical order: increasing `|U|`, then
//! `|V|`, then the map (canonical surjections, all bijections, or all maps,
//! depending on the claim), then the partition(s) in restricted-growth order,
//! then `X` in mask order. Work is split by map into groups; groups run in
//! parallel batches and are merged back in order, so every reported number
//! except the effort counters is independent of the worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eval::{evaluate, IllTypedReason, Instance, Verdict, Witness};
use super::{ClaimId, MapConstraint};
use crate::enumerate::{bijections_iter, maps_iter, partitions_iter, subsets_iter, surjections_iter};
use crate::relmap::SurjMap;
use crate::structures::{Partition, Subset};
use crate::{Error, Result};

/// Largest `|U|` a search accepts; Bell(10) partitions squared is already 10^10.
pub const MAX_SEARCH_ELEMENTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Stop at the first failing instance.
    Falsify,
    /// Scan the whole space.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_u: usize,
    pub max_v: usize,
    /// Smallest codomain size visited.
    #[serde(default = "one")]
    pub min_v: usize,
}

fn one() -> usize {
    1
}

impl Bounds {
    pub fn new(max_u: usize, max_v: usize) -> Self {
        Bounds {
            max_u,
            max_v,
            min_v: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_u == 0 || self.max_v == 0 || self.min_v == 0 {
            return Err(Error::EmptyUniverse);
        }
        if self.max_u > MAX_SEARCH_ELEMENTS || self.max_v > MAX_SEARCH_ELEMENTS {
            return Err(Error::TooLarge(self.max_u.max(self.max_v)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub workers: usize,
    /// Verify mode keeps at most this many failures (the first in canonical order).
    pub max_failures: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_failures: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tallies {
    pub holds: u64,
    pub fails: u64,
    pub ill_typed: u64,
    pub vacuous: u64,
}

impl Tallies {
    pub fn total(&self) -> u64 {
        self.holds + self.fails + self.ill_typed + self.vacuous
    }

    fn add(&mut self, other: &Tallies) {
        self.holds += other.holds;
        self.fails += other.fails;
        self.ill_typed += other.ill_typed;
        self.vacuous += other.vacuous;
    }
}

/// A failing instance and its position in the canonical order (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Found {
    pub ordinal: u64,
    pub instance: Instance,
    pub witness: Witness,
}

/// Everything a search determines; equal across worker counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub tallies: Tallies,
    pub ill_typed_reasons: BTreeMap<IllTypedReason, u64>,
    pub first_counterexample: Option<Found>,
    pub failures: Vec<Found>,
    /// Falsify stopped before exhausting the space.
    pub stopped_early: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Effort {
    pub workers: usize,
    /// Instances actually evaluated, including speculative work past a stopping point.
    pub evaluated: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub claim: ClaimId,
    pub mode: Mode,
    pub bounds: Bounds,
    pub outcome: SearchOutcome,
    pub effort: Effort,
}

struct Space {
    partitions: Vec<Partition>,
    subsets: Vec<Subset>,
}

struct GroupResult {
    tallies: Tallies,
    reasons: BTreeMap<IllTypedReason, u64>,
    failures: Vec<(u64, Instance, Witness)>,
}

fn maps_for(claim: ClaimId, n: usize, bounds: &Bounds) -> Result<Vec<SurjMap>> {
    let mut out = Vec::new();
    match claim.claim().shape.map {
        MapConstraint::Surjective => {
            for m in bounds.min_v..=bounds.max_v.min(n) {
                out.extend(surjections_iter(n, m, true)?);
            }
        }
        MapConstraint::Bijective => {
            if (bounds.min_v..=bounds.max_v).contains(&n) {
                out.extend(bijections_iter(n)?);
            }
        }
        MapConstraint::Any => {
            for m in bounds.min_v..=bounds.max_v {
                out.extend(maps_iter(n, m)?);
            }
        }
    }
    Ok(out)
}

fn run_group(claim: ClaimId, map: &SurjMap, space: &Space, mode: Mode, cap: usize) -> GroupResult {
    let shape = claim.claim().shape;
    let mut res = GroupResult {
        tallies: Tallies::default(),
        reasons: BTreeMap::new(),
        failures: Vec::new(),
    };
    let mut ordinal = 0u64;
    let mut visit = |parts: Vec<Partition>, subset: Option<Subset>| -> bool {
        let inst = Instance::new(map.clone(), parts, subset).expect("enumerated sizes agree");
        let verdict = evaluate(claim, &inst).expect("enumerated instances fit their claim");
        match verdict {
            Verdict::Holds => res.tallies.holds += 1,
            Verdict::Vacuous => res.tallies.vacuous += 1,
            Verdict::IllTyped(r) => {
                res.tallies.ill_typed += 1;
                *res.reasons.entry(r).or_default() += 1;
            }
            Verdict::Fails(w) => {
                res.tallies.fails += 1;
                if res.failures.len() < cap {
                    res.failures.push((ordinal, inst, w));
                }
            }
        }
        ordinal += 1;
        // keep going unless falsify just found its counterexample
        !(mode == Mode::Falsify && res.tallies.fails > 0)
    };
    let ps = &space.partitions;
    match (shape.partitions, shape.subset) {
        (1, false) => {
            for r in ps {
                if !visit(vec![r.clone()], None) {
                    break;
                }
            }
        }
        (1, true) => {
            'outer: for r in ps {
                for x in &space.subsets {
                    if !visit(vec![r.clone()], Some(*x)) {
                        break 'outer;
                    }
                }
            }
        }
        _ => {
            'outer: for r1 in ps {
                for r2 in ps {
                    if !visit(vec![r1.clone(), r2.clone()], None) {
                        break 'outer;
                    }
                }
            }
        }
    }
    res
}

/// Runs a falsify or verify scan.
pub fn run_search(claim: ClaimId, bounds: Bounds, mode: Mode, opts: SearchOptions) -> Result<SearchReport> {
    bounds.validate()?;
    let start = Instant::now();
    let workers = opts.workers.max(1);
    let cap = match mode {
        Mode::Falsify => 1,
        Mode::Verify => opts.max_failures,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::BadInstance(format!("cannot start workers: {e}")))?;

    let mut outcome = SearchOutcome {
        tallies: Tallies::default(),
        ill_typed_reasons: BTreeMap::new(),
        first_counterexample: None,
        failures: Vec::new(),
        stopped_early: false,
    };
    let mut evaluated = 0u64;
    let batch = workers * 4;

    'sizes: for n in 1..=bounds.max_u {
        let space = Space {
            partitions: partitions_iter(n)?.collect(),
            subsets: subsets_iter(n)?.collect(),
        };
        let maps = maps_for(claim, n, &bounds)?;
        for chunk in maps.chunks(batch) {
            let results: Vec<GroupResult> = pool.install(|| {
                chunk
                    .par_iter()
                    .map(|f| run_group(claim, f, &space, mode, cap))
                    .collect()
            });
            for r in results {
                evaluated += r.tallies.total();
                if outcome.stopped_early {
                    continue;
                }
                let offset = outcome.tallies.total();
                outcome.tallies.add(&r.tallies);
                for (k, v) in r.reasons {
                    *outcome.ill_typed_reasons.entry(k).or_default() += v;
                }
                for (ord, instance, witness) in r.failures {
                    if outcome.failures.len() < cap {
                        outcome.failures.push(Found {
                            ordinal: offset + ord,
                            instance,
                            witness,
                        });
                    }
                }
                if mode == Mode::Falsify && outcome.tallies.fails > 0 {
                    outcome.stopped_early = true;
                }
            }
            if outcome.stopped_early {
                break 'sizes;
            }
        }
    }
    outcome.first_counterexample = outcome.failures.first().cloned();
    if mode == Mode::Falsify {
        outcome.failures.clear();
    }
    Ok(SearchReport {
        claim,
        mode,
        bounds,
        outcome,
        effort: Effort {
            workers,
            evaluated,
            elapsed: start.elapsed(),
        },
    })
}

/// Scans in canonical order and stops at the first failing instance.
pub fn falsify(claim: ClaimId, bounds: Bounds, opts: SearchOptions) -> Result<SearchReport> {
    run_search(claim, bounds, Mode::Falsify, opts)
}

/// Scans the whole bounded space, keeping the first `max_failures` failures.
pub fn verify(claim: ClaimId, bounds: Bounds, opts: SearchOptions) -> Result<SearchReport> {
    run_search(claim, bounds, Mode::Verify, opts)
}
