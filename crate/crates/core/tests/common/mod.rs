//! Brute-force oracles and exhaustive property checks shared by the
//! integration suites. Nothing here calls the library's own algorithms to
//! compute an expected value; the library is only the thing being checked.

#![allow(dead_code)]

use std::collections::BTreeSet;

use roughmap::approx::{lower_approx, upper_approx};
use roughmap::claims::{falsify, verify, Bounds, ClaimId, SearchOptions};
use roughmap::enumerate::maps_iter;
use roughmap::relmap::{degrees, direct_image, relmap, SurjMap};
use roughmap::structures::{BinRelation, Partition, Subset, Universe};

pub type Pairs = BTreeSet<(usize, usize)>;
pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// All set partitions of 0..n, built by inserting each element into an
/// existing block or a new one.
pub fn naive_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for x in 0..n {
        let mut next = Vec::new();
        for p in &acc {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        acc = next;
    }
    acc
}

pub fn to_partition(n: usize, blocks: &[Vec<usize>]) -> Partition {
    Partition::from_blocks(&Universe::of_size(n).unwrap(), blocks).unwrap()
}

pub fn all_partitions(n: usize) -> Vec<(Vec<Vec<usize>>, Partition)> {
    naive_partitions(n)
        .into_iter()
        .map(|b| {
            let p = to_partition(n, &b);
            (b, p)
        })
        .collect()
}

pub fn same_block(blocks: &[Vec<usize>], x: usize, y: usize) -> bool {
    blocks.iter().any(|b| b.contains(&x) && b.contains(&y))
}

pub fn block_pairs(blocks: &[Vec<usize>]) -> Pairs {
    let mut s = Pairs::new();
    for b in blocks {
        for &x in b {
            for &y in b {
                s.insert((x, y));
            }
        }
    }
    s
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Including degree of x's block in x's fiber, reduced to lowest terms.
pub fn naive_degree(table: &[usize], blocks: &[Vec<usize>], x: usize) -> (usize, usize) {
    let n = table.len();
    let fiber: Vec<usize> = (0..n).filter(|&y| table[y] == table[x]).collect();
    let inside = fiber.iter().filter(|&&y| same_block(blocks, x, y)).count();
    let g = gcd(inside, fiber.len());
    (inside / g, fiber.len() / g)
}

pub fn naive_relmap(table: &[usize], blocks: &[Vec<usize>]) -> Pairs {
    let n = table.len();
    let mut s = Pairs::new();
    for x in 0..n {
        for y in 0..n {
            if same_block(blocks, x, y) && naive_degree(table, blocks, x) == naive_degree(table, blocks, y) {
                s.insert((table[x], table[y]));
            }
        }
    }
    s
}

pub fn naive_direct_image(table: &[usize], blocks: &[Vec<usize>]) -> Pairs {
    block_pairs(blocks).into_iter().map(|(x, y)| (table[x], table[y])).collect()
}

pub fn pairs_of(r: &BinRelation) -> Pairs {
    r.pairs().collect()
}

pub fn table_of(f: &SurjMap) -> Vec<usize> {
    f.table().iter().map(|&v| v as usize).collect()
}

pub fn set_of(s: &Subset) -> BTreeSet<usize> {
    s.elements().collect()
}

pub fn naive_lower(blocks: &[Vec<usize>], x: &BTreeSet<usize>) -> BTreeSet<usize> {
    blocks.iter().filter(|b| b.iter().all(|e| x.contains(e))).flatten().copied().collect()
}

pub fn naive_upper(blocks: &[Vec<usize>], x: &BTreeSet<usize>) -> BTreeSet<usize> {
    blocks.iter().filter(|b| b.iter().any(|e| x.contains(e))).flatten().copied().collect()
}

fn every_map(max_u: usize, max_v: usize) -> impl Iterator<Item = SurjMap> {
    (1..=max_u).flat_map(move |n| (1..=max_v).flat_map(move |m| maps_iter(n, m).unwrap()))
}

/// relmap agrees with the definition, is symmetric, contains the diagonal on
/// the range, and is reflexive on V exactly when f is onto.
pub fn check_relmap(max_u: usize, max_v: usize) -> Check {
    let parts: Vec<_> = (0..=max_u).map(|n| if n == 0 { vec![] } else { all_partitions(n) }).collect();
    let mut seen = 0u64;
    for f in every_map(max_u, max_v) {
        let n = f.domain().size();
        let m = f.codomain().size();
        let table = table_of(&f);
        let onto = (0..m).all(|v| table.contains(&v));
        ensure!(f.is_surjective() == onto, "surjectivity flag wrong for {table:?}");
        for (blocks, p) in &parts[n] {
            let r = relmap(&f, p).unwrap();
            let got = pairs_of(&r);
            ensure!(got == naive_relmap(&table, blocks), "relmap mismatch: f={table:?} R={blocks:?}");
            ensure!(got.iter().all(|&(a, b)| got.contains(&(b, a))), "not symmetric: f={table:?} R={blocks:?}");
            ensure!(table.iter().all(|&v| got.contains(&(v, v))), "range not reflexive: f={table:?}");
            ensure!(r.is_reflexive() == onto, "reflexive on V != onto: f={table:?} R={blocks:?}");
            seen += 1;
        }
    }
    ensure!(seen > 0, "nothing checked");
    Ok(())
}

/// For bijections and for maps whose fibers sit inside R-blocks, every degree
/// is 1 and relmap is the plain direct image.
pub fn check_degree_one_collapse(max_u: usize, max_v: usize) -> Check {
    let mut bij = 0u64;
    let mut fiber = 0u64;
    for f in every_map(max_u, max_v) {
        let n = f.domain().size();
        let table = table_of(&f);
        let injective = (0..n).all(|x| (0..n).all(|y| x == y || table[x] != table[y]));
        let bijective = injective && f.codomain().size() == n;
        ensure!(f.is_bijective() == bijective, "bijectivity flag wrong for {table:?}");
        for (blocks, p) in all_partitions(n) {
            let cond = (0..n).all(|x| (0..n).all(|y| table[x] != table[y] || same_block(&blocks, x, y)));
            ensure!(f.fibers_within(&p).unwrap() == cond, "fiber condition flag wrong: f={table:?} R={blocks:?}");
            if !(bijective || cond) {
                continue;
            }
            ensure!(
                degrees(&f, &p).unwrap().iter().all(|d| d.is_one()),
                "degree != 1: f={table:?} R={blocks:?}"
            );
            let r = pairs_of(&relmap(&f, &p).unwrap());
            ensure!(r == naive_direct_image(&table, &blocks), "relmap != direct image: f={table:?} R={blocks:?}");
            ensure!(r == pairs_of(&direct_image(&f, &p).unwrap()), "direct_image disagrees: f={table:?}");
            if bijective {
                bij += 1;
            }
            if cond {
                fiber += 1;
            }
        }
    }
    ensure!(bij > 0 && fiber > 0, "nothing checked");
    Ok(())
}

/// Approximations match the definition; lower ⊆ X ⊆ upper; the two are dual
/// under complement; both are monotone.
pub fn check_approximations(max_u: usize) -> Check {
    for n in 1..=max_u {
        let full: BTreeSet<usize> = (0..n).collect();
        for (blocks, p) in all_partitions(n) {
            let mut lows = Vec::new();
            let mut ups = Vec::new();
            for bits in 0..1u64 << n {
                let x = Subset::from_bits(n, bits).unwrap();
                let xs = set_of(&x);
                let lo = set_of(&lower_approx(&p, &x).unwrap());
                let hi = set_of(&upper_approx(&p, &x).unwrap());
                ensure!(lo == naive_lower(&blocks, &xs), "lower mismatch R={blocks:?} X={xs:?}");
                ensure!(hi == naive_upper(&blocks, &xs), "upper mismatch R={blocks:?} X={xs:?}");
                ensure!(lo.is_subset(&xs) && xs.is_subset(&hi), "sandwich fails R={blocks:?} X={xs:?}");
                let comp: BTreeSet<usize> = full.difference(&xs).copied().collect();
                let hi_comp = set_of(&upper_approx(&p, &x.complement()).unwrap());
                let dual: BTreeSet<usize> = full.difference(&hi_comp).copied().collect();
                ensure!(lo == dual, "duality fails R={blocks:?} X={xs:?} ({comp:?})");
                lows.push(lo);
                ups.push(hi);
            }
            for a in 0..1usize << n {
                for b in 0..1usize << n {
                    if a & b == a {
                        ensure!(lows[a].is_subset(&lows[b]), "lower not monotone R={blocks:?}");
                        ensure!(ups[a].is_subset(&ups[b]), "upper not monotone R={blocks:?}");
                    }
                }
            }
        }
    }
    Ok(())
}

/// Partition → relation → partition is the identity, and every relation on
/// three points is accepted back exactly when it is an equivalence.
pub fn check_round_trip(max_u: usize) -> Check {
    for n in 1..=max_u {
        for (blocks, p) in all_partitions(n) {
            let r = p.to_relation();
            ensure!(pairs_of(&r) == block_pairs(&blocks), "pairs mismatch R={blocks:?}");
            ensure!(Partition::from_relation(&r).unwrap() == p, "round trip fails R={blocks:?}");
        }
    }
    let n = 3;
    let all: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let equivalences: BTreeSet<Pairs> = naive_partitions(n).iter().map(|b| block_pairs(b)).collect();
    for mask in 0..1u32 << all.len() {
        let pairs: Pairs = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let r = BinRelation::from_pairs(n, pairs.iter().copied()).unwrap();
        let back = Partition::from_relation(&r);
        ensure!(back.is_ok() == equivalences.contains(&pairs), "from_relation wrong on {pairs:?}");
    }
    Ok(())
}

/// Refinement is pair inclusion; meet is pair intersection; join is the
/// least partition above both.
pub fn check_lattice(max_u: usize) -> Check {
    for n in 1..=max_u {
        let parts = all_partitions(n);
        for (ba, a) in &parts {
            let pa = block_pairs(ba);
            for (bb, b) in &parts {
                let pb = block_pairs(bb);
                ensure!(a.refines(b).unwrap() == pa.is_subset(&pb), "refines wrong {ba:?} {bb:?}");
                let meet = pairs_of(&a.meet(b).unwrap().to_relation());
                ensure!(meet == pa.intersection(&pb).copied().collect(), "meet wrong {ba:?} {bb:?}");
                let join = a.join(b).unwrap();
                let pj = pairs_of(&join.to_relation());
                ensure!(pa.is_subset(&pj) && pb.is_subset(&pj), "join not an upper bound {ba:?} {bb:?}");
                for (bc, _) in &parts {
                    let pc = block_pairs(bc);
                    if pa.is_subset(&pc) && pb.is_subset(&pc) {
                        ensure!(pj.is_subset(&pc), "join not least {ba:?} {bb:?} vs {bc:?}");
                    }
                }
            }
        }
    }
    Ok(())
}

pub const REFUTED: [ClaimId; 8] = [
    ClaimId::L311Fwd,
    ClaimId::L311Bwd,
    ClaimId::L312Inc,
    ClaimId::L313Inc,
    ClaimId::T411,
    ClaimId::T412,
    ClaimId::T431,
    ClaimId::T432,
];

fn opts(workers: usize) -> SearchOptions {
    SearchOptions { workers, max_failures: 10 }
}

/// Search outcomes are identical for 1, 2 and 8 workers.
pub fn check_worker_determinism(bounds: Bounds) -> Check {
    for claim in REFUTED {
        let base = falsify(claim, bounds, opts(1)).unwrap().outcome;
        ensure!(base.first_counterexample.is_some(), "{claim}: no counterexample at {bounds:?}");
        for w in [2, 8] {
            ensure!(falsify(claim, bounds, opts(w)).unwrap().outcome == base, "{claim}: falsify differs at {w} workers");
        }
    }
    for claim in [ClaimId::L313Join, ClaimId::T31Refl] {
        let b = Bounds::new(4, 3);
        let base = verify(claim, b, opts(1)).unwrap().outcome;
        for w in [2, 8] {
            ensure!(verify(claim, b, opts(w)).unwrap().outcome == base, "{claim}: verify differs at {w} workers");
        }
    }
    Ok(())
}

/// Bell numbers from the set-partition recurrence B(n+1) = Σ C(n,k) B(k).
pub fn bell_recurrence(n: usize) -> u128 {
    let mut b = vec![1u128];
    for k in 0..n {
        let mut c = 1u128;
        let mut s = 0u128;
        for (i, bi) in b.iter().enumerate() {
            s += c * bi;
            c = c * (k - i) as u128 / (i + 1) as u128;
        }
        b.push(s);
    }
    b[n]
}

/// Surjections n → m by inclusion–exclusion: Σ (-1)^k C(m,k) (m-k)^n.
pub fn surjections_incl_excl(n: usize, m: usize) -> u128 {
    let mut total: i128 = 0;
    let mut c: i128 = 1;
    for k in 0..=m {
        let term = c * ((m - k) as i128).pow(n as u32);
        total += if k % 2 == 0 { term } else { -term };
        c = c * (m - k) as i128 / (k + 1) as i128;
    }
    total as u128
}

/// Runs the count oracles for every n ≤ max_n.
pub fn check_counts(max_n: usize) -> Check {
    use roughmap::enumerate::{count_check, partitions_iter, subsets_iter, surjections_iter};
    for n in 1..=max_n {
        let parts = partitions_iter(n).unwrap().count() as u128;
        ensure!(parts == bell_recurrence(n), "partitions({n}) = {parts}");
        ensure!(parts == naive_partitions(n).len() as u128, "partitions({n}) vs naive");
        let subs = subsets_iter(n).unwrap().count() as u128;
        ensure!(subs == 1u128 << n, "subsets({n}) = {subs}");
        for m in 1..=n {
            let c = count_check(n, m).unwrap();
            let want = surjections_incl_excl(n, m);
            ensure!(c.bell == bell_recurrence(n) && c.subsets == 1u128 << n, "count_check({n},{m})");
            ensure!(c.surjections == want, "count_check surjections({n},{m}) = {}", c.surjections);
            let got = surjections_iter(n, m, false).unwrap().count() as u128;
            ensure!(got == want, "surjections({n},{m}) = {got}, expected {want}");
            let mut fact = 1u128;
            for i in 1..=m {
                fact *= i as u128;
            }
            let canon = surjections_iter(n, m, true).unwrap().count() as u128;
            ensure!(canon * fact == want, "canonical surjections({n},{m}) = {canon}");
        }
    }
    Ok(())
}
