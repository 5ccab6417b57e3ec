//! Lower and upper approximations of a subset with respect to a partition.

use crate::error::check_same;
use crate::structures::{Partition, Subset};
use crate::Result;

/// Union of the blocks wholly contained in `x`.
pub fn lower_approx(p: &Partition, x: &Subset) -> Result<Subset> {
    check_same(p.universe_size(), x.universe_size())?;
    let bits = p
        .block_masks()
        .iter()
        .filter(|&&b| b & !x.bits() == 0)
        .fold(0, |acc, b| acc | b);
    Ok(Subset::from_bits_unchecked(x.universe_size(), bits))
}

/// Union of the blocks that meet `x`.
pub fn upper_approx(p: &Partition, x: &Subset) -> Result<Subset> {
    check_same(p.universe_size(), x.universe_size())?;
    let bits = p
        .block_masks()
        .iter()
        .filter(|&&b| b & x.bits() != 0)
        .fold(0, |acc, b| acc | b);
    Ok(Subset::from_bits_unchecked(x.universe_size(), bits))
}

/// True iff `x` is a union of blocks, i.e. both approximations equal `x`.
pub fn is_definable(p: &Partition, x: &Subset) -> Result<bool> {
    Ok(lower_approx(p, x)? == *x && upper_approx(p, x)? == *x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Universe;

    #[test]
    fn singleton_block_is_definable() {
        let u = Universe::numbered(4).unwrap();
        let r = Partition::from_blocks(&u, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        let x = Subset::singleton(4, 0).unwrap();
        assert_eq!(lower_approx(&r, &x).unwrap(), x);
        assert_eq!(upper_approx(&r, &x).unwrap(), x);
        assert!(is_definable(&r, &x).unwrap());
    }

    #[test]
    fn one_block_on_two_points() {
        let p = Partition::one_block(2);
        let a = Subset::singleton(2, 0).unwrap();
        assert!(lower_approx(&p, &a).unwrap().is_empty());
        assert_eq!(upper_approx(&p, &a).unwrap(), Subset::full(2));
        assert!(!is_definable(&p, &a).unwrap());
    }

    #[test]
    fn trivial_cases() {
        let p = Partition::from_rgs(vec![0, 1, 0, 2, 1]).unwrap();
        assert_eq!(lower_approx(&p, &Subset::full(5)).unwrap(), Subset::full(5));
        assert!(upper_approx(&p, &Subset::empty(5)).unwrap().is_empty());
        assert!(is_definable(&p, &Subset::empty(5)).unwrap());
        let x = Subset::from_elements(5, [1, 3]).unwrap();
        let d = Partition::discrete(5);
        assert_eq!(upper_approx(&d, &x).unwrap(), x);
        assert!(lower_approx(&p, &Subset::empty(4)).is_err());
    }
}
