use std::fmt;

use super::{bits, full_mask, BinRelation, Subset, Universe};
use crate::error::check_same;
use crate::{Error, Result, MAX_ELEMENTS};

/// An equivalence relation stored canonically as a restricted-growth string.
///
/// `rgs[i]` is the block number of element `i`; block numbers appear in order
/// of first occurrence, so `rgs[0] == 0` and `rgs[i] <= 1 + max(rgs[..i])`.
/// Equal partitions have equal encodings, and the derived `Ord` is the
/// lexicographic order on encodings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rgs: Vec<u8>,
    blocks: Vec<u64>,
}

impl Partition {
    /// Validates a restricted-growth string.
    pub fn from_rgs(rgs: Vec<u8>) -> Result<Self> {
        if rgs.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if rgs.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge(rgs.len()));
        }
        let mut next = 0u8;
        for (i, &b) in rgs.iter().enumerate() {
            if b > next {
                return Err(Error::NotAPartition(format!(
                    "position {i} holds block {b}, expected at most {next}"
                )));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(Self::from_rgs_unchecked(rgs))
    }

    pub(crate) fn from_rgs_unchecked(rgs: Vec<u8>) -> Self {
        let count = rgs.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut blocks = vec![0u64; count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b as usize] |= 1 << i;
        }
        Partition { rgs, blocks }
    }

    /// Builds the canonical partition from any labelling `element -> key`.
    fn from_keys<K: PartialEq + Copy>(keys: &[K]) -> Self {
        let mut seen: Vec<K> = Vec::new();
        let rgs = keys
            .iter()
            .map(|k| match seen.iter().position(|s| s == k) {
                Some(p) => p as u8,
                None => {
                    seen.push(*k);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Self::from_rgs_unchecked(rgs)
    }

    /// Builds a partition from explicit blocks; block and element order are irrelevant.
    pub fn from_blocks(universe: &Universe, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = universe.size();
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("empty block {b}")));
            }
            for &x in block {
                universe.check_element(x)?;
                if owner[x] != usize::MAX {
                    return Err(Error::NotAPartition(format!(
                        "overlap: element {} appears in blocks {} and {b}",
                        universe.label(x),
                        owner[x]
                    )));
                }
                owner[x] = b;
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::NotAPartition(format!(
                "gap: element {} is in no block",
                universe.label(x)
            )));
        }
        Ok(Self::from_keys(&owner))
    }

    /// Every element in its own block.
    pub fn discrete(n: usize) -> Self {
        Self::from_rgs_unchecked((0..n as u8).collect())
    }

    /// A single block holding the whole universe.
    pub fn one_block(n: usize) -> Self {
        Self::from_rgs_unchecked(vec![0; n])
    }

    pub fn universe_size(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks ordered by their smallest element.
    pub fn blocks(&self) -> impl Iterator<Item = Subset> + '_ {
        let n = self.rgs.len();
        self.blocks
            .iter()
            .map(move |&b| Subset::from_bits_unchecked(n, b))
    }

    #[inline]
    pub(crate) fn block_masks(&self) -> &[u64] {
        &self.blocks
    }

    #[inline]
    pub(crate) fn block_mask_of(&self, x: usize) -> u64 {
        self.blocks[self.rgs[x] as usize]
    }

    /// `[x]_R`, the block containing `x`.
    pub fn block_of(&self, x: usize) -> Result<Subset> {
        let n = self.rgs.len();
        if x >= n {
            return Err(Error::BadElement { element: x, size: n });
        }
        Ok(Subset::from_bits_unchecked(n, self.block_mask_of(x)))
    }

    pub fn to_relation(&self) -> BinRelation {
        BinRelation::from_rows((0..self.rgs.len()).map(|x| self.block_mask_of(x)).collect())
    }

    /// Inverse of [`Partition::to_relation`]; fails on non-equivalences.
    pub fn from_relation(rel: &BinRelation) -> Result<Self> {
        if let Some(cond) = rel.classify().first_failure() {
            return Err(Error::NotEquivalence(cond));
        }
        // rows of an equivalence are its classes; the smallest member names each class
        let keys: Vec<u32> = rel.rows().iter().map(|r| r.trailing_zeros()).collect();
        Ok(Self::from_keys(&keys))
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        self.same(other)?;
        Ok(self
            .blocks
            .iter()
            .all(|&b| b & !other.block_mask_of(b.trailing_zeros() as usize) == 0))
    }

    /// Coarsest common refinement; its pairs are the intersection of both pair sets.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same(other)?;
        let keys: Vec<(u8, u8)> = self.rgs.iter().copied().zip(other.rgs.iter().copied()).collect();
        Ok(Self::from_keys(&keys))
    }

    /// Finest common coarsening: the transitive closure of the pair-set union.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same(other)?;
        let mut comps: Vec<u64> = Vec::with_capacity(self.blocks.len());
        for &seed in self.blocks.iter().chain(&other.blocks) {
            let mut merged = seed;
            comps.retain(|&c| {
                if c & merged != 0 {
                    merged |= c;
                    false
                } else {
                    true
                }
            });
            comps.push(merged);
        }
        let n = self.rgs.len();
        debug_assert_eq!(comps.iter().fold(0, |a, c| a | c), full_mask(n));
        let keys: Vec<u32> = (0..n)
            .map(|x| {
                let c = comps.iter().find(|&&c| c >> x & 1 == 1).unwrap();
                c.trailing_zeros()
            })
            .collect();
        Ok(Self::from_keys(&keys))
    }

    /// Literal union of the two pair sets, which need not be transitive.
    pub fn union_raw(&self, other: &Partition) -> Result<BinRelation> {
        self.same(other)?;
        self.to_relation().union(&other.to_relation())
    }

    fn same(&self, other: &Partition) -> Result<()> {
        check_same(self.rgs.len(), other.rgs.len())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.blocks.iter().map(|&b| bits(b).collect::<Vec<_>>()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u6() -> Universe {
        Universe::numbered(6).unwrap()
    }

    // blocks written with 1-based labels
    fn part(u: &Universe, blocks: &[&[usize]]) -> Partition {
        let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|x| x - 1).collect()).collect();
        Partition::from_blocks(u, &b).unwrap()
    }

    #[test]
    fn four_block_partition_of_six() {
        let u = u6();
        let r1 = part(&u, &[&[1], &[2], &[3], &[4, 5, 6]]);
        assert_eq!(r1.block_count(), 4);
        assert_eq!(r1.rgs(), &[0, 1, 2, 3, 3, 3]);
        assert_eq!(
            r1.block_of(4).unwrap(),
            Subset::from_elements(6, [3, 4, 5]).unwrap()
        );
        // input order is irrelevant
        assert_eq!(r1, part(&u, &[&[6, 4, 5], &[3], &[1], &[2]]));
    }

    #[test]
    fn discrete_and_one_block() {
        let u = u6();
        let d = part(&u, &[&[1], &[2], &[3], &[4], &[5], &[6]]);
        assert_eq!(d.rgs(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(d, Partition::discrete(6));
        assert_eq!(d.to_relation(), BinRelation::identity(6));
        assert_eq!(d.block_of(2).unwrap(), Subset::singleton(6, 2).unwrap());
        let one = part(&u, &[&[1, 2, 3, 4, 5, 6]]);
        assert_eq!(one.rgs(), &[0; 6]);
        assert_eq!(one.block_of(3).unwrap(), Subset::full(6));
        assert!(one.block_of(6).is_err());
    }

    #[test]
    fn non_partitions_rejected() {
        let u = Universe::numbered(3).unwrap();
        assert!(matches!(
            Partition::from_blocks(&u, &[vec![0], vec![0, 1], vec![2]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(matches!(
            Partition::from_blocks(&u, &[vec![0, 1]]),
            Err(Error::NotAPartition(_))
        ));
        assert!(Partition::from_rgs(vec![0, 2, 1]).is_err());
        assert!(Partition::from_rgs(vec![1]).is_err());
    }

    #[test]
    fn pair_counts_are_sums_of_squares() {
        let u = u6();
        let r2 = part(&u, &[&[3], &[1, 2, 4, 5, 6]]);
        assert_eq!(r2.to_relation().len(), 26);
    }

    #[test]
    fn relation_round_trip_and_rejection() {
        let u = u6();
        let r2 = part(&u, &[&[3], &[1, 2, 4, 5, 6]]);
        assert_eq!(Partition::from_relation(&r2.to_relation()).unwrap(), r2);
        let r = BinRelation::from_pairs(2, [(0, 0)]).unwrap();
        assert_eq!(
            Partition::from_relation(&r),
            Err(Error::NotEquivalence(crate::Condition::Reflexivity))
        );
    }

    #[test]
    fn lattice_operations_on_nested_pair() {
        let u = u6();
        let r1 = part(&u, &[&[1], &[2], &[3], &[4, 5, 6]]);
        let r2 = part(&u, &[&[3], &[1, 2, 4, 5, 6]]);
        assert!(r1.refines(&r2).unwrap());
        assert!(!r2.refines(&r1).unwrap());
        assert!(r1.refines(&r1).unwrap());
        assert_eq!(r1.meet(&r2).unwrap(), r1);
        assert_eq!(r1.join(&r2).unwrap(), r2);
        let raw = r1.union_raw(&r2).unwrap();
        assert_eq!(raw, r2.to_relation());
        assert!(raw.classify().equivalence());
        let d = Partition::discrete(6);
        assert_eq!(d.join(&d).unwrap(), d);
        assert!(!Partition::one_block(2).refines(&Partition::discrete(2)).unwrap());
        assert!(r1.meet(&Partition::discrete(3)).is_err());
    }

    #[test]
    fn raw_union_can_fail_transitivity() {
        let a = Partition::from_rgs(vec![0, 0, 1]).unwrap();
        let b = Partition::from_rgs(vec![0, 1, 1]).unwrap();
        let raw = a.union_raw(&b).unwrap();
        assert!(!raw.is_transitive());
        assert_eq!(a.join(&b).unwrap(), Partition::one_block(3));
        assert_eq!(raw.transitive_closure(), Partition::one_block(3).to_relation());
    }
}
