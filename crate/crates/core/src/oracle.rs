//! Brute-force references used by `verify paper`.
//!
//! Nothing here shares code with the detector or the branch and bound: the
//! matcher tries every injective assignment and the extremal value scans
//! every family of `2^[n]` for `n <= 4`.

use crate::embed::{EmbedError, FreenessMode};
use crate::family::{Mask, SetFamily};
use crate::poset::Poset;

/// Largest `n` for [`exhaustive_la`]: `2^(2^n)` families.
pub const MAX_EXHAUSTIVE_N: u32 = 4;

/// Size class of each element (rank or color), or `None` for weak and induced.
fn size_classes(poset: &Poset, mode: &FreenessMode) -> Result<Option<Vec<usize>>, EmbedError> {
    match mode {
        FreenessMode::Weak | FreenessMode::Induced => Ok(None),
        FreenessMode::RankPreserving => {
            let r = poset.rank_assignment();
            if !r.graded {
                return Err(EmbedError::NotGraded);
            }
            Ok(Some(r.ranks))
        }
        FreenessMode::Colored(c) => {
            if c.validate(poset).is_err() {
                return Err(EmbedError::InvalidColoring("rejected by oracle".into()));
            }
            Ok(Some(c.colors().to_vec()))
        }
    }
}

/// Whether `images` (one distinct set per element) is a copy under `mode`.
fn is_copy(poset: &Poset, images: &[Mask], induced: bool, classes: Option<&[usize]>) -> bool {
    let len = poset.len();
    for x in 0..len {
        for y in 0..len {
            if x == y {
                continue;
            }
            let inside = images[x] & !images[y] == 0;
            if poset.lt(x, y) && !inside {
                return false;
            }
            if induced && inside && !poset.lt(x, y) {
                return false;
            }
            if let Some(c) = classes {
                if c[x] == c[y] && images[x].count_ones() != images[y].count_ones() {
                    return false;
                }
            }
        }
    }
    true
}

/// Tries every injective map from the poset into `members`; returns the
/// first copy in lexicographic order of member indices.
pub fn brute_force_copy(members: &[Mask], poset: &Poset, mode: &FreenessMode) -> Result<Option<Vec<Mask>>, EmbedError> {
    let classes = size_classes(poset, mode)?;
    let induced = matches!(mode, FreenessMode::Induced);
    let k = poset.len();
    let m = members.len();
    if k > m {
        return Ok(None);
    }
    let mut idx = vec![0usize; k];
    loop {
        let distinct = (0..k).all(|a| (a + 1..k).all(|b| idx[a] != idx[b]));
        if distinct {
            let images: Vec<Mask> = idx.iter().map(|&i| members[i]).collect();
            if is_copy(poset, &images, induced, classes.as_deref()) {
                return Ok(Some(images));
            }
        }
        // Odometer over {0..m}^k.
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Every copy image in `2^[n]`, as a bitmask over the `2^n` subsets.
fn copy_images(n: u32, poset: &Poset, mode: &FreenessMode) -> Result<Vec<u16>, EmbedError> {
    let all: Vec<Mask> = (0..1u32 << n).collect();
    let classes = size_classes(poset, mode)?;
    let induced = matches!(mode, FreenessMode::Induced);
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(poset.len());
    collect_images(poset, &all, induced, classes.as_deref(), &mut images, &mut out);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn collect_images(
    poset: &Poset,
    all: &[Mask],
    induced: bool,
    classes: Option<&[usize]>,
    images: &mut Vec<Mask>,
    out: &mut Vec<u16>,
) {
    if images.len() == poset.len() {
        if is_copy(poset, images, induced, classes) {
            out.push(images.iter().fold(0u16, |acc, &s| acc | 1 << s));
        }
        return;
    }
    for &s in all {
        if !images.contains(&s) {
            images.push(s);
            collect_images(poset, all, induced, classes, images, out);
            images.pop();
        }
    }
}

/// Maximum size of a family in `2^[n]` free of every poset in `forbidden`,
/// with the lowest-numbered family attaining it (bit `s` = subset `s`).
pub fn exhaustive_la(n: u32, forbidden: &[Poset], mode: &FreenessMode) -> Result<(usize, SetFamily), EmbedError> {
    assert!(n <= MAX_EXHAUSTIVE_N, "exhaustive search needs n <= {MAX_EXHAUSTIVE_N}");
    let mut images = Vec::new();
    for p in forbidden {
        images.extend(copy_images(n, p, mode)?);
    }
    let universe: u32 = 1 << (1u32 << n);
    let mut best = (0usize, 0u32);
    for fam in 0..universe {
        let size = fam.count_ones() as usize;
        if size <= best.0 {
            continue;
        }
        if images.iter().all(|&img| fam & img as u32 != img as u32) {
            best = (size, fam);
        }
    }
    let members = (0..1u32 << n).filter(|&s| best.1 >> s & 1 == 1);
    let family = SetFamily::new(n, members).expect("subsets of [n]");
    Ok((best.0, family))
}
