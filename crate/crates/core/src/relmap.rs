//! Including degrees and the degree-filtered relation mapping `f(R)`.
//!
//! For a map `f: U -> V` and a partition `R` of `U`, each element `x` gets the
//! degree `D([x]_R / [x]_f) = |[x]_f ∩ [x]_R| / |[x]_f|`. The mapped relation
//! keeps `(f(x), f(y))` for every `(x, y) ∈ R` whose two endpoints have equal
//! degrees. Degrees are kept as unreduced integer pairs and compared by
//! cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::check_same;
use crate::structures::{bits, BinRelation, Partition, Subset, Universe};
use crate::{Error, Result};

/// A total map between two finite universes with its fibers precomputed.
///
/// Construction does not demand surjectivity; [`SurjMap::is_surjective`]
/// records whether every fiber is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurjMap {
    domain: Universe,
    codomain: Universe,
    table: Vec<u8>,
    fibers: Vec<u64>,
}

impl SurjMap {
    pub fn new(domain: Universe, codomain: Universe, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.size() {
            return Err(Error::BadMapLength {
                expected: domain.size(),
                got: table.len(),
            });
        }
        if let Some((element, &image)) = table.iter().enumerate().find(|(_, &v)| v >= codomain.size()) {
            return Err(Error::BadImage {
                element,
                image,
                codomain: codomain.size(),
            });
        }
        let table = table.into_iter().map(|v| v as u8).collect();
        Ok(Self::from_table_unchecked(domain, codomain, table))
    }

    pub(crate) fn from_table_unchecked(domain: Universe, codomain: Universe, table: Vec<u8>) -> Self {
        let mut fibers = vec![0u64; codomain.size()];
        for (x, &v) in table.iter().enumerate() {
            fibers[v as usize] |= 1 << x;
        }
        SurjMap {
            domain,
            codomain,
            table,
            fibers,
        }
    }

    pub fn domain(&self) -> &Universe {
        &self.domain
    }

    pub fn codomain(&self) -> &Universe {
        &self.codomain
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    pub fn is_surjective(&self) -> bool {
        self.fibers.iter().all(|&f| f != 0)
    }

    pub fn is_injective(&self) -> bool {
        self.fibers.iter().all(|f| f.count_ones() <= 1)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_surjective()
    }

    /// `f⁻¹(v)`.
    pub fn fiber(&self, v: usize) -> Result<Subset> {
        self.codomain.check_element(v)?;
        Ok(Subset::from_bits_unchecked(self.domain.size(), self.fibers[v]))
    }

    /// `[x]_f = {y | f(y) = f(x)}`.
    pub fn fiber_of(&self, x: usize) -> Result<Subset> {
        self.domain.check_element(x)?;
        Ok(Subset::from_bits_unchecked(self.domain.size(), self.fiber_mask_of(x)))
    }

    #[inline]
    pub(crate) fn fiber_mask_of(&self, x: usize) -> u64 {
        self.fibers[self.table[x] as usize]
    }

    /// `f(U)`.
    pub fn range(&self) -> Subset {
        let bits = self
            .fibers
            .iter()
            .enumerate()
            .filter(|(_, &f)| f != 0)
            .fold(0u64, |acc, (v, _)| acc | 1 << v);
        Subset::from_bits_unchecked(self.codomain.size(), bits)
    }

    /// True iff `[x]_f ⊆ [x]_R` for every `x`.
    pub fn fibers_within(&self, p: &Partition) -> Result<bool> {
        check_same(self.domain.size(), p.universe_size())?;
        Ok((0..self.table.len()).all(|x| self.fiber_mask_of(x) & !p.block_mask_of(x) == 0))
    }
}

/// The including degree `|E ∩ F| / |E|` as an unreduced fraction.
///
/// Equality and ordering use cross-multiplication, so `1/2 == 2/4`.
#[derive(Clone, Copy, Serialize, Deserialize)]
pub struct DegreeRatio {
    num: u32,
    den: u32,
}

impl DegreeRatio {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::EmptyReference);
        }
        assert!(num <= den, "degree {num}/{den} exceeds one");
        Ok(DegreeRatio { num, den })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl PartialEq for DegreeRatio {
    fn eq(&self, other: &Self) -> bool {
        degree_eq(*self, *other)
    }
}

impl Eq for DegreeRatio {}

impl Ord for DegreeRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for DegreeRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for DegreeRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for DegreeRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact rational equality by cross-multiplication.
#[inline]
pub fn degree_eq(a: DegreeRatio, b: DegreeRatio) -> bool {
    a.num as u64 * b.den as u64 == b.num as u64 * a.den as u64
}

/// `D(F/E) = |E ∩ F| / |E|`.
pub fn including_degree(e: &Subset, f: &Subset) -> Result<DegreeRatio> {
    let common = e.intersection(f)?;
    if e.is_empty() {
        return Err(Error::EmptyReference);
    }
    Ok(DegreeRatio {
        num: common.len() as u32,
        den: e.len() as u32,
    })
}

/// `D([x]_R / [x]_f)` for every element `x` of the domain.
pub fn degrees(f: &SurjMap, p: &Partition) -> Result<Vec<DegreeRatio>> {
    check_same(f.domain.size(), p.universe_size())?;
    Ok(degrees_unchecked(f, p))
}

#[inline]
fn degrees_unchecked(f: &SurjMap, p: &Partition) -> Vec<DegreeRatio> {
    (0..f.table.len())
        .map(|x| {
            let fiber = f.fiber_mask_of(x);
            DegreeRatio {
                num: (fiber & p.block_mask_of(x)).count_ones(),
                den: fiber.count_ones(),
            }
        })
        .collect()
}

/// The relation mapping `f(R)` on the codomain.
pub fn relmap(f: &SurjMap, p: &Partition) -> Result<BinRelation> {
    check_same(f.domain.size(), p.universe_size())?;
    let deg = degrees_unchecked(f, p);
    let mut out = BinRelation::empty(f.codomain.size());
    for x in 0..f.table.len() {
        for y in bits(p.block_mask_of(x)) {
            if degree_eq(deg[x], deg[y]) {
                out.insert(f.apply(x), f.apply(y));
            }
        }
    }
    Ok(out)
}

/// `{(f(x), f(y)) | (x, y) ∈ R}` with no degree filter.
pub fn direct_image(f: &SurjMap, p: &Partition) -> Result<BinRelation> {
    check_same(f.domain.size(), p.universe_size())?;
    let mut out = BinRelation::empty(f.codomain.size());
    for x in 0..f.table.len() {
        for y in bits(p.block_mask_of(x)) {
            out.insert(f.apply(x), f.apply(y));
        }
    }
    Ok(out)
}

/// `f(X) = {f(x) | x ∈ X}`.
pub fn image_subset(f: &SurjMap, x: &Subset) -> Result<Subset> {
    check_same(f.domain.size(), x.universe_size())?;
    let bits = x.elements().fold(0u64, |acc, e| acc | 1 << f.apply(e));
    Ok(Subset::from_bits_unchecked(f.codomain.size(), bits))
}
