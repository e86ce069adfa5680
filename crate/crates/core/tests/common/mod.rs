//! Test-side reference implementations. None of these call the detector,
//! the branch and bound, or `posetlab::oracle`.

#![allow(dead_code)]

use posetlab::family::Mask;
use posetlab::{FreenessMode, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Strict order of a poset as a matrix, computed from its covers by
/// Floyd-Warshall style closure.
pub fn strict_order(poset: &Poset) -> Vec<Vec<bool>> {
    let k = poset.len();
    let mut lt = vec![vec![false; k]; k];
    for &(a, b) in poset.covers() {
        lt[a][b] = true;
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if lt[i][m] && lt[m][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    lt
}

/// Length of the longest chain ending at each element, counting edges.
pub fn longest_chain_ranks(poset: &Poset) -> Vec<usize> {
    let lt = strict_order(poset);
    let k = poset.len();
    let mut rank = vec![0; k];
    // k passes of relaxation suffice for a DAG on k vertices.
    for _ in 0..k {
        for i in 0..k {
            for j in 0..k {
                if lt[i][j] {
                    rank[j] = rank[j].max(rank[i] + 1);
                }
            }
        }
    }
    rank
}

/// Class (rank or color) per element, `Err(())` if the mode is not
/// applicable, `Ok(None)` when sizes are unconstrained.
fn classes(poset: &Poset, mode: &FreenessMode) -> Result<Option<Vec<usize>>, ()> {
    let lt = strict_order(poset);
    match mode {
        FreenessMode::Weak | FreenessMode::Induced => Ok(None),
        FreenessMode::RankPreserving => {
            let rank = longest_chain_ranks(poset);
            for &(a, b) in poset.covers() {
                if rank[b] != rank[a] + 1 {
                    return Err(());
                }
            }
            Ok(Some(rank))
        }
        FreenessMode::Colored(c) => {
            let colors = c.colors().to_vec();
            if colors.len() != poset.len() {
                return Err(());
            }
            for i in 0..poset.len() {
                for j in 0..poset.len() {
                    if lt[i][j] && colors[i] == colors[j] {
                        return Err(());
                    }
                }
            }
            Ok(Some(colors))
        }
    }
}

/// Checks every defining condition of a copy directly.
pub fn is_copy(poset: &Poset, mode: &FreenessMode, images: &[Mask]) -> bool {
    let Ok(cls) = classes(poset, mode) else {
        return false;
    };
    let lt = strict_order(poset);
    let k = poset.len();
    if images.len() != k {
        return false;
    }
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            if images[i] == images[j] {
                return false;
            }
            let sub = images[i] & images[j] == images[i];
            if lt[i][j] && !sub {
                return false;
            }
            if matches!(mode, FreenessMode::Induced) && sub && !lt[i][j] {
                return false;
            }
            if let Some(c) = &cls {
                if c[i] == c[j] && images[i].count_ones() != images[j].count_ones() {
                    return false;
                }
            }
        }
    }
    true
}

/// `Some(true/false)` for whether `members` contains a copy, `None` when the
/// mode does not apply to the poset (ungraded for rank-preserving, bad coloring).
pub fn has_copy(members: &[Mask], poset: &Poset, mode: &FreenessMode) -> Option<bool> {
    classes(poset, mode).ok()?;
    let mut chosen = Vec::new();
    Some(extend(members, poset, mode, &mut chosen))
}

fn extend(members: &[Mask], poset: &Poset, mode: &FreenessMode, chosen: &mut Vec<Mask>) -> bool {
    if chosen.len() == poset.len() {
        return is_copy(poset, mode, chosen);
    }
    for &m in members {
        if chosen.contains(&m) {
            continue;
        }
        chosen.push(m);
        if extend(members, poset, mode, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Every copy image in `2^[n]` as a bitmask over subsets (bit `s` = subset `s`).
fn all_images(n: u32, poset: &Poset, mode: &FreenessMode) -> Vec<u32> {
    let sets: Vec<Mask> = (0..1 << n).collect();
    let k = poset.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    let total = sets.len().pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for slot in idx.iter_mut() {
            *slot = c % sets.len();
            c /= sets.len();
        }
        let images: Vec<Mask> = idx.iter().map(|&i| sets[i]).collect();
        if is_copy(poset, mode, &images) {
            out.push(images.iter().fold(0u32, |acc, &s| acc | 1 << s));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Maximum free family size by scanning all `2^(2^n)` families; `n <= 4`.
pub fn exhaustive_la(n: u32, forbidden: &[Poset], mode: &FreenessMode) -> usize {
    assert!(n <= 4);
    let images: Vec<u32> = forbidden.iter().flat_map(|p| all_images(n, p, mode)).collect();
    let mut best = 0;
    for fam in 0u32..1 << (1 << n) {
        if images.iter().all(|&img| fam & img != img) {
            best = best.max(fam.count_ones() as usize);
        }
    }
    best
}

/// Number of pairs `A ⊊ B` by checking every ordered pair.
pub fn naive_2chains(members: &[Mask]) -> u64 {
    let mut count = 0;
    for &a in members {
        for &b in members {
            if a != b && a & b == a {
                count += 1;
            }
        }
    }
    count
}

/// Minimum number of 2-chains over all `m`-member families of `2^[n]`,
/// by depth-first search over subsets pruned at the best count so far.
pub fn min_2chains(m: usize, n: u32) -> u64 {
    fn go(sets: &[Mask], start: usize, m: usize, chosen: &mut Vec<Mask>, count: u64, best: &mut u64) {
        if count >= *best {
            return;
        }
        if chosen.len() == m {
            *best = count;
            return;
        }
        if sets.len() - start < m - chosen.len() {
            return;
        }
        for i in start..sets.len() {
            let s = sets[i];
            let added = chosen.iter().filter(|&&c| c & s == c || c & s == s).count() as u64;
            chosen.push(s);
            go(sets, i + 1, m, chosen, count + added, best);
            chosen.pop();
        }
    }
    let sets: Vec<Mask> = (0..1 << n).collect();
    let mut best = u64::MAX;
    go(&sets, 0, m, &mut Vec::new(), 0, &mut best);
    best
}

/// Random family over `[n]` with a random inclusion density.
pub fn random_members(rng: &mut ChaCha8Rng, n: u32) -> Vec<Mask> {
    let p: f64 = rng.gen_range(0.05..0.95);
    (0..1u32 << n).filter(|_| rng.gen_bool(p)).collect()
}

/// Sum over all `n!` orderings of the ground set of the chain weight, with
/// `w(F) = C(n, |F|)`, via explicit permutations.
pub fn chain_weight_total_by_permutations(n: u32, members: &[Mask]) -> u128 {
    let binom = |k: u32| -> u128 {
        let mut r: u128 = 1;
        for i in 0..k as u128 {
            r = r * (n as u128 - i) / (i + 1);
        }
        r
    };
    let mut perm: Vec<u32> = (0..n).collect();
    let mut total = 0u128;
    loop {
        let mut set: Mask = 0;
        let mut weight = if members.contains(&0) { binom(0) } else { 0 };
        for &e in &perm {
            set |= 1 << e;
            if members.contains(&set) {
                weight += binom(set.count_ones());
            }
        }
        total += weight;
        // Next permutation in lexicographic order.
        let Some(i) = (0..perm.len().saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Whether `members ∪ {through}` has a copy whose image contains `through`.
pub fn has_copy_through(members: &[Mask], poset: &Poset, mode: &FreenessMode, through: Mask) -> Option<bool> {
    classes(poset, mode).ok()?;
    let mut pool = members.to_vec();
    pool.push(through);
    let mut chosen = Vec::new();
    Some(extend_through(&pool, poset, mode, through, &mut chosen))
}

fn extend_through(pool: &[Mask], poset: &Poset, mode: &FreenessMode, through: Mask, chosen: &mut Vec<Mask>) -> bool {
    if chosen.len() == poset.len() {
        return chosen.contains(&through) && is_copy(poset, mode, chosen);
    }
    for &m in pool {
        if chosen.contains(&m) {
            continue;
        }
        chosen.push(m);
        if extend_through(pool, poset, mode, through, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Random poset on `1..=max_len` elements: each pair `i < j` is related with
/// probability one half.
pub fn random_poset(rng: &mut ChaCha8Rng, max_len: usize) -> Poset {
    let len = rng.gen_range(1..=max_len);
    let labels: Vec<String> = (0..len).map(|i| format!("q{i}")).collect();
    let mut relations = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if rng.gen_bool(0.5) {
                relations.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::from_covers(&labels, &relations).expect("acyclic")
}
