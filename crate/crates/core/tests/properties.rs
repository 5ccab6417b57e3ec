mod common;

use common::*;
use proptest::prelude::*;
use roughmap::claims::Bounds;
use roughmap::relmap::{degree_eq, including_degree, DegreeRatio};
use roughmap::structures::Subset;

#[test]
fn relmap_matches_definition_and_is_symmetric() {
    check_relmap(5, 5).unwrap();
}

#[test]
fn degree_one_collapse() {
    check_degree_one_collapse(5, 5).unwrap();
}

#[test]
fn approximation_laws() {
    check_approximations(5).unwrap();
}

#[test]
fn partition_relation_round_trip() {
    check_round_trip(6).unwrap();
}

#[test]
fn partition_lattice() {
    check_lattice(5).unwrap();
}

#[test]
fn falsify_is_worker_independent() {
    check_worker_determinism(Bounds::new(5, 3)).unwrap();
}

proptest! {
    #[test]
    fn degree_eq_is_equality_of_reduced_fractions(a in 0u32..50, b in 1u32..50, c in 0u32..50, d in 1u32..50) {
        let x = DegreeRatio::new(a.min(b), b).unwrap();
        let y = DegreeRatio::new(c.min(d), d).unwrap();
        let reduce = |n: u32, m: u32| {
            let mut g = (n, m);
            while g.1 != 0 { g = (g.1, g.0 % g.1); }
            (n / g.0, m / g.0)
        };
        prop_assert_eq!(degree_eq(x, y), reduce(a.min(b), b) == reduce(c.min(d), d));
        prop_assert_eq!(x == y, degree_eq(x, y));
    }

    #[test]
    fn including_degree_counts_overlap(n in 1usize..=64, e in any::<u64>(), f in any::<u64>()) {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let (e, f) = (e & mask, f & mask);
        let es = Subset::from_bits(n, e).unwrap();
        let fs = Subset::from_bits(n, f).unwrap();
        match including_degree(&es, &fs) {
            Err(_) => prop_assert_eq!(e, 0),
            Ok(d) => {
                prop_assert_eq!(d.num(), (e & f).count_ones());
                prop_assert_eq!(d.den(), e.count_ones());
            }
        }
    }

    #[test]
    fn subset_complement_duality(n in 1usize..=64, a in any::<u64>(), b in any::<u64>()) {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let x = Subset::from_bits(n, a & mask).unwrap();
        let y = Subset::from_bits(n, b & mask).unwrap();
        let lhs = x.union(&y).unwrap().complement();
        let rhs = x.complement().intersection(&y.complement()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.complement().complement(), x);
        prop_assert_eq!(x.difference(&y).unwrap(), x.intersection(&y.complement()).unwrap());
    }
}
