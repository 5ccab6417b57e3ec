//! Lazy, canonically ordered generators for the search space.
//!
//! Every stream is driven by an [`EnumCursor`] whose state is the digit
//! string of the next item to produce, so a cursor can be serialized and
//! resumed anywhere. Orders:
//!
//! * partitions: lexicographic on restricted-growth strings;
//! * subsets: increasing mask (element `i` is bit `i`);
//! * maps and surjections: lexicographic on the image table, element 0 most
//!   significant. Canonical surjections are the tables whose codomain values
//!   first appear in increasing order, one per relabelling orbit of `V`.

use serde::{Deserialize, Serialize};

use crate::relmap::SurjMap;
use crate::structures::{Partition, Subset, Universe};
use crate::{Error, Result, MAX_ELEMENTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EnumKind {
    Partitions { n: usize },
    Subsets { n: usize },
    Surjections { n: usize, m: usize, canonical: bool },
    Maps { n: usize, m: usize },
}

impl EnumKind {
    fn n(&self) -> usize {
        match *self {
            EnumKind::Partitions { n } | EnumKind::Subsets { n } => n,
            EnumKind::Surjections { n, .. } | EnumKind::Maps { n, .. } => n,
        }
    }
}

/// Resumable position in one of the canonical streams.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumCursor {
    kind: EnumKind,
    /// Digits of the next item, `None` once the stream is exhausted.
    position: Option<Vec<u8>>,
}

impl EnumCursor {
    pub fn new(kind: EnumKind) -> Result<Self> {
        let n = kind.n();
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let first = match kind {
            EnumKind::Partitions { n } | EnumKind::Subsets { n } => vec![0; n],
            EnumKind::Maps { n, m } => {
                if m == 0 {
                    return Err(Error::EmptyUniverse);
                }
                vec![0; n]
            }
            EnumKind::Surjections { n, m, canonical } => {
                if m == 0 {
                    return Err(Error::EmptyUniverse);
                }
                if m > n {
                    return Err(Error::NoSurjection {
                        domain: n,
                        codomain: m,
                    });
                }
                if canonical {
                    // zeros, then 1..m-1 packed at the end
                    let mut d = vec![0u8; n];
                    for (k, slot) in d[n - (m - 1)..].iter_mut().enumerate() {
                        *slot = k as u8 + 1;
                    }
                    d
                } else {
                    let mut d = vec![0u8; n];
                    if !is_onto(&d, m) {
                        next_map(&mut d, m, true);
                    }
                    d
                }
            }
        };
        Ok(EnumCursor {
            kind,
            position: Some(first),
        })
    }

    pub fn kind(&self) -> EnumKind {
        self.kind
    }

    pub fn is_done(&self) -> bool {
        self.position.is_none()
    }

    /// Checks that a deserialized cursor describes a reachable stream position.
    pub fn validate(&self) -> Result<()> {
        let Some(d) = &self.position else {
            return Ok(());
        };
        let n = self.kind.n();
        let bad = |msg: &str| Err(Error::BadInstance(format!("cursor position {d:?}: {msg}")));
        if d.len() != n {
            return bad("wrong length");
        }
        match self.kind {
            EnumKind::Partitions { .. } => {
                if Partition::from_rgs(d.clone()).is_err() {
                    return bad("not a restricted-growth string");
                }
            }
            EnumKind::Subsets { .. } => {
                if d.iter().any(|&b| b > 1) {
                    return bad("subset digits must be 0 or 1");
                }
            }
            EnumKind::Maps { m, .. } => {
                if d.iter().any(|&b| b as usize >= m) {
                    return bad("image out of range");
                }
            }
            EnumKind::Surjections { m, canonical, .. } => {
                if d.iter().any(|&b| b as usize >= m) || !is_onto(d, m) {
                    return bad("not a surjection");
                }
                if canonical && Partition::from_rgs(d.clone()).is_err() {
                    return bad("not in canonical form");
                }
            }
        }
        Ok(())
    }

    /// Returns the digits of the current item and advances.
    pub fn next_digits(&mut self) -> Option<Vec<u8>> {
        let current = self.position.take()?;
        let mut next = current.clone();
        let more = match self.kind {
            EnumKind::Partitions { .. } => next_rgs(&mut next, usize::MAX),
            EnumKind::Subsets { .. } => next_bits(&mut next),
            EnumKind::Maps { m, .. } => next_map(&mut next, m, false),
            EnumKind::Surjections { m, canonical: true, .. } => next_rgs(&mut next, m),
            EnumKind::Surjections { m, canonical: false, .. } => next_map(&mut next, m, true),
        };
        if more {
            self.position = Some(next);
        }
        Some(current)
    }
}

fn is_onto(d: &[u8], m: usize) -> bool {
    let mut seen = 0u64;
    for &v in d {
        seen |= 1 << v;
    }
    seen.count_ones() as usize == m
}

/// Lexicographic successor among restricted-growth strings; with a finite
/// `blocks`, only strings using exactly that many blocks are visited.
fn next_rgs(d: &mut [u8], blocks: usize) -> bool {
    let n = d.len();
    let mut prefix_max = vec![0u8; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(d[i - 1]);
    }
    for i in (1..n).rev() {
        let cap = if blocks == usize::MAX {
            prefix_max[i] as usize + 1
        } else {
            (prefix_max[i] as usize + 1).min(blocks - 1)
        };
        let c = d[i] as usize + 1;
        if c > cap {
            continue;
        }
        let top = (prefix_max[i] as usize).max(c);
        let tail = n - i - 1;
        if blocks != usize::MAX && top + 1 + tail < blocks {
            continue;
        }
        d[i] = c as u8;
        for x in &mut d[i + 1..] {
            *x = 0;
        }
        if blocks != usize::MAX {
            // fill the new blocks in at the very end
            let missing = blocks - 1 - top;
            for (k, slot) in d[n - missing..].iter_mut().enumerate() {
                *slot = (top + 1 + k) as u8;
            }
        }
        return true;
    }
    false
}

fn next_bits(d: &mut [u8]) -> bool {
    for b in d.iter_mut() {
        if *b == 0 {
            *b = 1;
            return true;
        }
        *b = 0;
    }
    false
}

fn next_map(d: &mut [u8], m: usize, onto: bool) -> bool {
    loop {
        let mut carried = true;
        for b in d.iter_mut().rev() {
            if (*b as usize) + 1 < m {
                *b += 1;
                carried = false;
                break;
            }
            *b = 0;
        }
        if carried {
            return false;
        }
        if !onto || is_onto(d, m) {
            return true;
        }
    }
}

/// Stream of partitions of `{0, .., n-1}`.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    cursor: EnumCursor,
}

/// Stream of subsets of `{0, .., n-1}`.
#[derive(Debug, Clone)]
pub struct SubsetIter {
    cursor: EnumCursor,
}

/// Stream of maps, all or surjective, between two enumerated universes.
#[derive(Debug, Clone)]
pub struct MapIter {
    cursor: EnumCursor,
    domain: Universe,
    codomain: Universe,
}

macro_rules! cursor_access {
    ($ty:ty) => {
        impl $ty {
            /// Position of the next item.
            pub fn cursor(&self) -> &EnumCursor {
                &self.cursor
            }
        }
    };
}
cursor_access!(PartitionIter);
cursor_access!(SubsetIter);
cursor_access!(MapIter);

impl PartitionIter {
    pub fn resume(cursor: EnumCursor) -> Result<Self> {
        match cursor.kind {
            EnumKind::Partitions { .. } => {
                cursor.validate()?;
                Ok(PartitionIter { cursor })
            }
            k => Err(Error::BadInstance(format!("{k:?} is not a partition cursor"))),
        }
    }
}

impl SubsetIter {
    pub fn resume(cursor: EnumCursor) -> Result<Self> {
        match cursor.kind {
            EnumKind::Subsets { .. } => {
                cursor.validate()?;
                Ok(SubsetIter { cursor })
            }
            k => Err(Error::BadInstance(format!("{k:?} is not a subset cursor"))),
        }
    }
}

impl MapIter {
    pub fn resume(cursor: EnumCursor) -> Result<Self> {
        let (n, m) = match cursor.kind {
            EnumKind::Surjections { n, m, .. } | EnumKind::Maps { n, m } => (n, m),
            k => return Err(Error::BadInstance(format!("{k:?} is not a map cursor"))),
        };
        cursor.validate()?;
        Ok(MapIter {
            cursor,
            domain: Universe::numbered(n)?,
            codomain: Universe::lettered(m)?,
        })
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;
    fn next(&mut self) -> Option<Partition> {
        self.cursor.next_digits().map(Partition::from_rgs_unchecked)
    }
}

impl Iterator for SubsetIter {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        let d = self.cursor.next_digits()?;
        let bits = d
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        Some(Subset::from_bits_unchecked(d.len(), bits))
    }
}

impl Iterator for MapIter {
    type Item = SurjMap;
    fn next(&mut self) -> Option<SurjMap> {
        let d = self.cursor.next_digits()?;
        Some(SurjMap::from_table_unchecked(
            self.domain.clone(),
            self.codomain.clone(),
            d,
        ))
    }
}

/// All partitions of an `n`-element universe in lexicographic RGS order.
pub fn partitions_iter(n: usize) -> Result<PartitionIter> {
    PartitionIter::resume(EnumCursor::new(EnumKind::Partitions { n })?)
}

/// All `2^n` subsets in increasing mask order.
pub fn subsets_iter(n: usize) -> Result<SubsetIter> {
    SubsetIter::resume(EnumCursor::new(EnumKind::Subsets { n })?)
}

/// Surjections `{1..n} -> {a, b, ..}`; `canonical` keeps one per codomain relabelling orbit.
pub fn surjections_iter(n: usize, m: usize, canonical: bool) -> Result<MapIter> {
    MapIter::resume(EnumCursor::new(EnumKind::Surjections { n, m, canonical })?)
}

/// All `m^n` maps, surjective or not.
pub fn maps_iter(n: usize, m: usize) -> Result<MapIter> {
    MapIter::resume(EnumCursor::new(EnumKind::Maps { n, m })?)
}

/// All `n!` bijections of an `n`-element universe onto `n` letters.
pub fn bijections_iter(n: usize) -> Result<MapIter> {
    surjections_iter(n, n, false)
}

/// Closed-form sizes of the streams, used to cross-check the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub bell: u128,
    pub surjections: u128,
    pub subsets: u128,
}

pub fn count_check(n: usize, m: usize) -> Result<Counts> {
    if n == 0 || m == 0 {
        return Err(Error::EmptyUniverse);
    }
    if m > n {
        return Err(Error::NoSurjection {
            domain: n,
            codomain: m,
        });
    }
    Ok(Counts {
        bell: bell(n),
        surjections: factorial(m) * stirling2(n, m),
        subsets: 1u128 << n,
    })
}

/// Bell number via the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &above in &row {
            let left = *next.last().unwrap();
            next.push(left + above);
        }
        row = next;
    }
    row[0]
}

/// Stirling number of the second kind, `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
