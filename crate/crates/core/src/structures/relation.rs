use std::fmt;

use serde::{Deserialize, Serialize};

use super::{bits, full_mask, Subset};
use crate::error::check_same;
use crate::{Condition, Error, Result, MAX_ELEMENTS};

/// A binary relation on `{0, .., n-1}`; row `x` is the mask of all `y` with `(x, y)` in the relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinRelation {
    rows: Vec<u64>,
}

/// Which equivalence conditions a relation satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl Classification {
    pub fn equivalence(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }

    /// First failing condition in the order reflexivity, symmetry, transitivity.
    pub fn first_failure(&self) -> Option<Condition> {
        if !self.reflexive {
            Some(Condition::Reflexivity)
        } else if !self.symmetric {
            Some(Condition::Symmetry)
        } else if !self.transitive {
            Some(Condition::Transitivity)
        } else {
            None
        }
    }
}

/// A concrete reason a relation is not an equivalence.
///
/// Every pair but the last is in the relation; the last one is missing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub pairs: Vec<(usize, usize)>,
}

impl BinRelation {
    pub fn empty(n: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENTS).contains(&n));
        BinRelation { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        BinRelation {
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        BinRelation {
            rows: vec![full_mask(n); n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyUniverse);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut rel = BinRelation::empty(n);
        for (x, y) in pairs {
            for e in [x, y] {
                if e >= n {
                    return Err(Error::BadElement { element: e, size: n });
                }
            }
            rel.rows[x] |= 1 << y;
        }
        Ok(rel)
    }

    #[inline]
    pub(crate) fn from_rows(rows: Vec<u64>) -> Self {
        BinRelation { rows }
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub(crate) fn insert(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
    }

    pub fn universe_size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.rows.len() && y < self.rows.len() && self.rows[x] >> y & 1 == 1
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// `{y | (x, y) ∈ self}`.
    pub fn row(&self, x: usize) -> Subset {
        Subset::from_bits_unchecked(self.rows.len(), self.rows[x])
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| bits(r).map(move |y| (x, y)))
    }

    pub fn union(&self, other: &BinRelation) -> Result<BinRelation> {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &BinRelation) -> Result<BinRelation> {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BinRelation) -> Result<BinRelation> {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &BinRelation) -> Result<bool> {
        check_same(self.rows.len(), other.rows.len())?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    fn zip(&self, other: &BinRelation, op: impl Fn(u64, u64) -> u64) -> Result<BinRelation> {
        check_same(self.rows.len(), other.rows.len())?;
        Ok(BinRelation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows.iter().enumerate().all(|(x, r)| r >> x & 1 == 1)
    }

    /// Contains `(x, x)` for every `x` in `on`.
    pub fn is_reflexive_on(&self, on: &Subset) -> bool {
        on.elements().all(|x| self.rows[x] >> x & 1 == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.rows[y] >> x & 1 == 1)
    }

    pub fn is_transitive(&self) -> bool {
        // (x,y) and (y,z) imply (x,z): every row reachable from x is inside row x
        self.rows
            .iter()
            .all(|&rx| bits(rx).all(|y| self.rows[y] & !rx == 0))
    }

    pub fn classify(&self) -> Classification {
        Classification {
            reflexive: self.is_reflexive(),
            symmetric: self.is_symmetric(),
            transitive: self.is_transitive(),
        }
    }

    /// The smallest violation of the first failing condition, or `None` for an equivalence.
    pub fn violation(&self) -> Option<Violation> {
        let n = self.rows.len();
        if let Some(x) = (0..n).find(|&x| !self.contains(x, x)) {
            return Some(Violation {
                condition: Condition::Reflexivity,
                pairs: vec![(x, x)],
            });
        }
        if let Some((x, y)) = self.pairs().find(|&(x, y)| !self.contains(y, x)) {
            return Some(Violation {
                condition: Condition::Symmetry,
                pairs: vec![(x, y), (y, x)],
            });
        }
        for (x, y) in self.pairs() {
            let missing = self.rows[y] & !self.rows[x];
            if missing != 0 {
                let z = missing.trailing_zeros() as usize;
                return Some(Violation {
                    condition: Condition::Transitivity,
                    pairs: vec![(x, y), (y, z), (x, z)],
                });
            }
        }
        None
    }

    pub fn transitive_closure(&self) -> BinRelation {
        let mut rows = self.rows.clone();
        for k in 0..rows.len() {
            let rk = rows[k];
            for r in rows.iter_mut() {
                if *r >> k & 1 == 1 {
                    *r |= rk;
                }
            }
        }
        BinRelation { rows }
    }
}

impl fmt::Debug for BinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
