use std::fmt;

use super::{bits, full_mask};
use crate::error::check_same;
use crate::{Error, Result};

/// A subset of the universe `{0, .., n-1}` stored as a membership mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: u8,
    bits: u64,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= 64);
        Subset { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    pub fn singleton(n: usize, x: usize) -> Result<Self> {
        Self::from_elements(n, [x])
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for x in elements {
            if x >= n {
                return Err(Error::BadElement {
                    element: x,
                    size: n,
                });
            }
            bits |= 1 << x;
        }
        Ok(Subset { n: n as u8, bits })
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if bits & !full_mask(n) != 0 {
            let element = 63 - bits.leading_zeros() as usize;
            return Err(Error::BadElement { element, size: n });
        }
        Ok(Subset { n: n as u8, bits })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !full_mask(n), 0);
        Subset { n: n as u8, bits }
    }

    pub fn universe_size(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n as usize && self.bits >> x & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        bits(self.bits)
    }

    pub fn complement(&self) -> Subset {
        Subset {
            n: self.n,
            bits: !self.bits & full_mask(self.n as usize),
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.same(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits | other.bits,
        })
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.same(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits & other.bits,
        })
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.same(other)?;
        Ok(Subset {
            n: self.n,
            bits: self.bits & !other.bits,
        })
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        self.same(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    fn same(&self, other: &Subset) -> Result<()> {
        check_same(self.n as usize, other.n as usize)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

/// Everything [`subset_algebra`] derives from a pair of subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetAlgebra {
    pub union: Subset,
    pub intersection: Subset,
    pub difference: Subset,
    pub complement: Subset,
    pub cardinality: usize,
    pub is_subset: bool,
}

pub fn subset_algebra(a: &Subset, b: &Subset) -> Result<SubsetAlgebra> {
    Ok(SubsetAlgebra {
        union: a.union(b)?,
        intersection: a.intersection(b)?,
        difference: a.difference(b)?,
        complement: a.complement(),
        cardinality: a.len(),
        is_subset: a.is_subset(b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_against_singleton_block() {
        // {1,2,5,6} and {1} written 0-based
        let a = Subset::from_elements(6, [0, 1, 4, 5]).unwrap();
        let b = Subset::from_elements(6, [0]).unwrap();
        let alg = subset_algebra(&a, &b).unwrap();
        assert_eq!(alg.intersection, b);
        assert_eq!(alg.cardinality, 4);
        assert_eq!(alg.union, a);
        assert_eq!(alg.difference.elements().collect::<Vec<_>>(), vec![1, 4, 5]);
        assert_eq!(alg.complement.elements().collect::<Vec<_>>(), vec![2, 3]);
        assert!(!alg.is_subset);
        assert!(b.is_subset(&a).unwrap());
    }

    #[test]
    fn complement_of_empty_is_full() {
        assert_eq!(Subset::empty(5).complement(), Subset::full(5));
        assert_eq!(Subset::empty(64).complement(), Subset::full(64));
    }

    #[test]
    fn equal_sets_include_each_other() {
        let a = Subset::from_elements(4, [1, 3]).unwrap();
        assert!(a.is_subset(&a).unwrap());
        let alg = subset_algebra(&a, &a).unwrap();
        assert!(alg.is_subset);
    }

    #[test]
    fn mixed_universe() {
        let a = Subset::empty(3);
        let b = Subset::empty(4);
        assert_eq!(
            a.union(&b),
            Err(Error::MixedUniverse { left: 3, right: 4 })
        );
        assert!(subset_algebra(&a, &b).is_err());
    }

    #[test]
    fn out_of_range_elements() {
        assert!(Subset::from_elements(3, [3]).is_err());
        assert!(Subset::from_bits(3, 0b1000).is_err());
        assert!(!Subset::full(3).contains(7));
    }
}
