//! Set families over the ground set `[n]`, stored as bitmasks.
//!
//! Element `i` of `[n]` is bit `i - 1`. Members are kept distinct and in
//! canonical order: ascending popcount, then ascending numeric value. All
//! iteration order (and therefore every witness and serialization) follows
//! from that order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::numbers::binomial;

pub const MAX_GROUND: u32 = 24;

pub type Mask = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("ground set size {0} outside 1..={MAX_GROUND}")]
    GroundSize(u32),
    #[error("mask {mask:#b} has bits outside [{n}]")]
    MaskOutOfRange { mask: Mask, n: u32 },
    #[error("line {line}: element {element} outside [1..{n}]")]
    ElementOutOfRange { line: usize, element: i64, n: u32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("construction requires even n, got {0}")]
    OddN(u32),
}

/// A family of distinct subsets of `[n]` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u32,
    members: Vec<Mask>,
}

#[inline]
pub fn canonical_key(mask: Mask) -> (u32, Mask) {
    (mask.count_ones(), mask)
}

/// Mask of the given 1-based elements.
pub fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &e| m | 1 << (e - 1))
}

/// 1-based elements of `mask`, ascending.
pub fn elements_of(mask: Mask) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Strict inclusion `a ⊊ b`.
#[inline]
/// One member in the text format: `1,3,4`, or `-` for the empty set.
pub fn format_mask(mask: Mask) -> String {
    if mask == 0 {
        return "-".to_string();
    }
    let parts: Vec<String> = elements_of(mask).iter().map(|e| e.to_string()).collect();
    parts.join(",")
}

pub fn is_proper_subset(a: Mask, b: Mask) -> bool {
    a != b && a & !b == 0
}

fn check_ground(n: u32) -> Result<(), FamilyError> {
    if (1..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(FamilyError::GroundSize(n))
    }
}

/// All `k`-subsets of `[n]` in increasing numeric order.
pub fn layer_masks(n: u32, k: u32) -> Vec<Mask> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: Mask = (1 << k) - 1;
    let limit: u64 = 1u64 << n;
    while (m as u64) < limit {
        out.push(m);
        // Gosper's hack: next integer with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

impl SetFamily {
    /// Builds a family; duplicates are merged and members sorted canonically.
    pub fn new(n: u32, masks: impl IntoIterator<Item = Mask>) -> Result<Self, FamilyError> {
        check_ground(n)?;
        let mut members: Vec<Mask> = masks.into_iter().collect();
        if let Some(&mask) = members.iter().find(|&&m| (m as u64) >> n != 0) {
            return Err(FamilyError::MaskOutOfRange { mask, n });
        }
        members.sort_unstable_by_key(|&m| canonical_key(m));
        members.dedup();
        Ok(SetFamily { n, members })
    }

    /// Builds a family from 1-based element lists.
    pub fn from_sets(n: u32, sets: &[&[usize]]) -> Result<Self, FamilyError> {
        check_ground(n)?;
        let mut masks = Vec::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            for &e in s.iter() {
                if e == 0 || e > n as usize {
                    return Err(FamilyError::ElementOutOfRange {
                        line: i + 1,
                        element: e as i64,
                        n,
                    });
                }
            }
            masks.push(mask_of(s));
        }
        Self::new(n, masks)
    }

    pub fn empty(n: u32) -> Result<Self, FamilyError> {
        Self::new(n, [])
    }

    pub fn power_set(n: u32) -> Result<Self, FamilyError> {
        check_ground(n)?;
        Ok(SetFamily {
            n,
            members: (0..=n).flat_map(|k| layer_masks(n, k)).collect(),
        })
    }

    /// Union of the full layers `sizes` of `[n]`.
    pub fn layers(n: u32, sizes: impl IntoIterator<Item = u32>) -> Result<Self, FamilyError> {
        check_ground(n)?;
        let mut sizes: Vec<u32> = sizes.into_iter().filter(|&k| k <= n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        Ok(SetFamily {
            n,
            members: sizes.into_iter().flat_map(|k| layer_masks(n, k)).collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.members
            .binary_search_by_key(&canonical_key(mask), |&m| canonical_key(m))
            .is_ok()
    }

    /// `F_k`: members of size `k`.
    pub fn layer(&self, k: u32) -> impl Iterator<Item = Mask> + '_ {
        self.iter().filter(move |m| m.count_ones() == k)
    }

    /// This family with `mask` added.
    pub fn with(&self, mask: Mask) -> Result<Self, FamilyError> {
        if (mask as u64) >> self.n != 0 {
            return Err(FamilyError::MaskOutOfRange { mask, n: self.n });
        }
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search_by_key(&canonical_key(mask), |&m| canonical_key(m)) {
            members.insert(pos, mask);
        }
        Ok(SetFamily { n: self.n, members })
    }

    pub fn layer_profile(&self) -> LayerProfile {
        let mut counts = vec![0usize; self.n as usize + 1];
        for m in self.iter() {
            counts[m.count_ones() as usize] += 1;
        }
        LayerProfile(counts)
    }

    /// Serializes in the text format: `n=<n>` then one member per line,
    /// elements comma separated, `-` for the empty set.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for m in self.iter() {
            out.push_str(&format_mask(m));
            out.push('\n');
        }
        out
    }

    /// Parses the text format. Blank lines are ignored; members may repeat and
    /// list elements in any order (the result is canonical).
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(FamilyError::Parse {
            line: 1,
            msg: "missing `n=<int>` header".into(),
        })?;
        let n: u32 = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| FamilyError::Parse {
                line: first,
                msg: format!("expected `n=<int>`, found `{header}`"),
            })?;
        check_ground(n)?;
        let mut masks = Vec::new();
        for (line, body) in lines {
            if body == "-" {
                masks.push(0);
                continue;
            }
            let mut mask: Mask = 0;
            for tok in body.split(',') {
                let tok = tok.trim();
                let element: i64 = tok.parse().map_err(|_| FamilyError::Parse {
                    line,
                    msg: format!("`{tok}` is not an integer"),
                })?;
                if element < 1 || element > n as i64 {
                    return Err(FamilyError::ElementOutOfRange { line, element, n });
                }
                let bit = 1 << (element - 1);
                if mask & bit != 0 {
                    return Err(FamilyError::Parse {
                        line,
                        msg: format!("element {element} repeated"),
                    });
                }
                mask |= bit;
            }
            masks.push(mask);
        }
        Self::new(n, masks)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SetFamily {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetFamily::parse(s)
    }
}

/// Counts `|F_i|` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerProfile(pub Vec<usize>);

impl LayerProfile {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

fn check_h(n: u32, h: u32) -> Result<(), FamilyError> {
    if h == 0 || h > n + 1 {
        return Err(FamilyError::InvalidParam(format!(
            "need 1 <= h <= n+1, got n={n}, h={h}"
        )));
    }
    Ok(())
}

/// Layer sizes `⌊(n−h)/2⌋ + i` for `i = 1..=h`.
pub fn middle_layer_sizes(n: u32, h: u32) -> Vec<u32> {
    let base = (n as i64 - h as i64).div_euclid(2);
    (1..=h as i64).map(|i| (base + i) as u32).collect()
}

/// The `h` middle layers of `2^[n]`.
pub fn middle_layers(n: u32, h: u32) -> Result<SetFamily, FamilyError> {
    check_ground(n)?;
    check_h(n, h)?;
    SetFamily::layers(n, middle_layer_sizes(n, h))
}

/// Number of sets on the `h` middle layers, `Σ_{i=1..h} C(n, ⌊(n−h)/2⌋ + i)`.
pub fn sigma(n: u32, h: u32) -> Result<BigUint, FamilyError> {
    check_h(n, h)?;
    Ok(middle_layer_sizes(n, h)
        .into_iter()
        .map(|k| binomial(n as u64, k as u64))
        .sum())
}

/// Sets of size `n/2 + 1` containing both `n−1` and `n`, together with the
/// sets of size `n/2` containing at most one of them.
pub fn f23_construction(n: u32) -> Result<SetFamily, FamilyError> {
    if n % 2 == 1 {
        return Err(FamilyError::OddN(n));
    }
    if n < 4 {
        return Err(FamilyError::InvalidParam(format!("need n >= 4, got {n}")));
    }
    check_ground(n)?;
    let pair: Mask = 0b11 << (n - 2);
    let upper = layer_masks(n, n / 2 + 1).into_iter().filter(|m| m & pair == pair);
    let middle = layer_masks(n, n / 2)
        .into_iter()
        .filter(|m| (m & pair).count_ones() <= 1);
    SetFamily::new(n, upper.chain(middle))
}

/// The closed-form size printed alongside the construction:
/// `C(n−2, n/2+1) + C(n, n/2) − C(n−2, n/2−2)`. It does not agree with the
/// enumerated size (22 vs 17 at `n = 6`); it is exposed so reports can show
/// both numbers.
pub fn f23_printed_size(n: u32) -> Result<BigUint, FamilyError> {
    if n % 2 == 1 {
        return Err(FamilyError::OddN(n));
    }
    if n < 4 {
        return Err(FamilyError::InvalidParam(format!("need n >= 4, got {n}")));
    }
    let (n, h) = (n as u64, n as u64 / 2);
    Ok(binomial(n - 2, h + 1) + binomial(n, h) - binomial(n - 2, h - 2))
}

/// Levels `0..=h−2` and `n−h+2..=n`.
pub fn lubell_tail_family(n: u32, h: u32) -> Result<SetFamily, FamilyError> {
    check_ground(n)?;
    if h < 3 || n < 2 * h {
        return Err(FamilyError::InvalidParam(format!(
            "need h >= 3 and n >= 2h, got n={n}, h={h}"
        )));
    }
    SetFamily::layers(n, (0..=h - 2).chain(n - h + 2..=n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_layer_examples() {
        let f = middle_layers(4, 2).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(f.layer_profile().counts(), &[0, 0, 6, 4, 0]);
        assert_eq!(middle_layer_sizes(5, 1), vec![3]);
        assert_eq!(middle_layers(5, 1).unwrap().len(), 10);
        assert_eq!(middle_layers(6, 2).unwrap().len(), 35);
        assert_eq!(middle_layer_sizes(4, 5), vec![0, 1, 2, 3, 4]);
        assert!(middle_layers(4, 0).is_err());
        assert!(middle_layers(4, 6).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(4, 2).unwrap(), 10u32.into());
        assert_eq!(sigma(5, 2).unwrap(), 20u32.into());
        assert_eq!(sigma(6, 2).unwrap(), 35u32.into());
        for n in 1..=12 {
            assert_eq!(sigma(n, n + 1).unwrap(), BigUint::from(1u32 << n));
            for h in 1..=n + 1 {
                assert_eq!(BigUint::from(middle_layers(n, h).unwrap().len()), sigma(n, h).unwrap());
            }
        }
    }

    #[test]
    fn f23() {
        let f = f23_construction(6).unwrap();
        assert_eq!(f.len(), 22);
        assert_eq!(f.layer_profile().counts(), &[0, 0, 0, 16, 6, 0, 0]);
        assert_eq!(f23_printed_size(6).unwrap(), 17u32.into());
        assert_eq!(f23_construction(5), Err(FamilyError::OddN(5)));
    }

    #[test]
    fn f23_matches_set_builder_enumeration() {
        for n in (4..=12).step_by(2) {
            let brute = (0u32..1 << n)
                .filter(|&m| {
                    let has = |e: u32| m >> (e - 1) & 1 == 1;
                    let k = m.count_ones();
                    (k == n / 2 + 1 && has(n - 1) && has(n))
                        || (k == n / 2 && !(has(n - 1) && has(n)))
                })
                .count();
            assert_eq!(f23_construction(n).unwrap().len(), brute, "n={n}");
        }
    }

    #[test]
    fn tail_family() {
        assert_eq!(lubell_tail_family(8, 3).unwrap().len(), 18);
        assert_eq!(
            lubell_tail_family(8, 3).unwrap().layer_profile().counts(),
            &[1, 8, 0, 0, 0, 0, 0, 8, 1]
        );
        assert_eq!(lubell_tail_family(6, 3).unwrap().len(), 14);
        assert!(lubell_tail_family(5, 3).is_err());
        assert!(lubell_tail_family(8, 2).is_err());
    }

    #[test]
    fn parse_and_serialize() {
        let f = SetFamily::parse("n=3\n1,2\n3\n").unwrap();
        assert_eq!(f.members(), &[0b100, 0b011]);
        assert_eq!(f.to_text(), "n=3\n3\n1,2\n");
        let g = SetFamily::parse("n=3\n\n-\n2,1\n-\n").unwrap();
        assert_eq!(g.to_text(), "n=3\n-\n1,2\n");
        assert_eq!(
            SetFamily::parse("n=3\n4\n"),
            Err(FamilyError::ElementOutOfRange {
                line: 2,
                element: 4,
                n: 3
            })
        );
        assert!(matches!(SetFamily::parse("n=3\n1,x\n"), Err(FamilyError::Parse { line: 2, .. })));
        assert!(matches!(SetFamily::parse("3\n"), Err(FamilyError::Parse { line: 1, .. })));
        assert_eq!(SetFamily::parse("n=30\n"), Err(FamilyError::GroundSize(30)));
        let e = SetFamily::parse("n=3\n").unwrap();
        assert!(e.is_empty());
        assert_eq!(SetFamily::parse("n=3\n-\n").unwrap().layer_profile().counts(), &[1, 0, 0, 0]);
    }

    #[test]
    fn membership_and_insert() {
        let f = middle_layers(4, 2).unwrap();
        assert!(f.contains(mask_of(&[1, 2])));
        assert!(!f.contains(mask_of(&[1])));
        let g = f.with(mask_of(&[1])).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g.members()[0], 1);
        assert!(f.with(1 << 4).is_err());
        assert!(SetFamily::new(3, [8]).is_err());
    }

    #[test]
    fn layer_enumeration() {
        assert_eq!(layer_masks(4, 2), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(layer_masks(24, 24).len(), 1);
        assert_eq!(SetFamily::power_set(5).unwrap().len(), 32);
    }
}
