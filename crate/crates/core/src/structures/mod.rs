//! Finite universes, subsets, binary relations and partitions.

mod partition;
mod relation;
mod subset;
mod universe;

pub use partition::Partition;
pub use relation::{BinRelation, Classification, Violation};
pub use subset::{subset_algebra, Subset, SubsetAlgebra};
pub use universe::Universe;

/// Largest supported universe; subsets and relation rows are `u64` masks.
pub const MAX_ELEMENTS: usize = 64;

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
