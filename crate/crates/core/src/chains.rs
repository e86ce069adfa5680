//! Exact counting over maximal chains of `2^[n]`.
//!
//! Everything is computed with arbitrary-precision integers or rationals; no
//! asserted quantity goes through floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::family::{is_proper_subset, SetFamily};
use crate::numbers::{binomial, binomial_row, binomial_u64, factorial};

/// Chain enumeration visits all `n!` maximal chains.
pub const MAX_ENUMERATION_N: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainsError {
    #[error("enumerating all {n}! maximal chains needs n <= {MAX_ENUMERATION_N}")]
    TooLargeForEnumeration { n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainAverageMethod {
    /// `(1/n!) Σ_F |F|!(n−|F|)! · C(n,|F|)`.
    Formula,
    /// Walks every maximal chain and sums member weights along it.
    Enumeration,
}

fn big(v: BigUint) -> BigInt {
    BigInt::from(v)
}

/// Lubell mass `Σ_{F∈F} 1 / C(n, |F|)`.
pub fn lubell_mass(family: &SetFamily) -> BigRational {
    let n = family.n() as u64;
    family
        .layer_profile()
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| BigRational::new(BigInt::from(c), big(binomial(n, k as u64))))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// `Σ_{F∈F} |F|!(n−|F|)!`: the number of pairs (member, maximal chain through it).
pub fn pair_count(family: &SetFamily) -> BigUint {
    let n = family.n() as u64;
    family
        .layer_profile()
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| factorial(k as u64) * factorial(n - k as u64) * c)
        .sum()
}

/// Average over maximal chains of the chain weight, where each member `F`
/// weighs `C(n, |F|)`. Both methods return the same exact value, `|F|`.
pub fn chain_weight_average(family: &SetFamily, via: ChainAverageMethod) -> Result<BigRational, ChainsError> {
    let n = family.n();
    match via {
        ChainAverageMethod::Formula => {
            let n = n as u64;
            let total: BigUint = family
                .iter()
                .map(|m| {
                    let k = m.count_ones() as u64;
                    factorial(k) * factorial(n - k) * binomial(n, k)
                })
                .sum();
            Ok(BigRational::new(big(total), big(factorial(n))))
        }
        ChainAverageMethod::Enumeration => {
            let total = chain_weight_total(family)?;
            Ok(BigRational::new(BigInt::from(total), big(factorial(n as u64))))
        }
    }
}

/// `Σ_C w(C)` over all maximal chains, by explicit enumeration.
///
/// The chain space is split by the first element added to `∅`; subtrees are
/// summed in parallel and the exact integer total does not depend on the
/// schedule.
pub fn chain_weight_total(family: &SetFamily) -> Result<u128, ChainsError> {
    let n = family.n();
    if n > MAX_ENUMERATION_N {
        return Err(ChainsError::TooLargeForEnumeration { n });
    }
    let weights: Vec<u128> = (0..=n).map(|k| binomial_u64(n, k) as u128).collect();
    let mut weight_of = vec![0u128; 1 << n];
    for m in family.iter() {
        weight_of[m as usize] = weights[m.count_ones() as usize];
    }
    let full = (1u32 << n) - 1;
    let base = weight_of[0];
    if n == 0 {
        return Ok(base);
    }
    let total: u128 = (0..n)
        .into_par_iter()
        .map(|e| walk(1 << e, full, &weight_of, base + weight_of[1 << e]))
        .sum();
    Ok(total)
}

/// Sum over chains from `mask` up to `full` of `acc` plus the weights met above `mask`.
fn walk(mask: u32, full: u32, weight_of: &[u128], acc: u128) -> u128 {
    if mask == full {
        return acc;
    }
    let mut total = 0;
    let mut free = full & !mask;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        free &= free - 1;
        let next = mask | bit;
        total += walk(next, full, weight_of, acc + weight_of[next as usize]);
    }
    total
}

/// Number of pairs `A ⊊ B` in the family.
pub fn count_2chains(family: &SetFamily) -> u64 {
    let members = family.members();
    let mut count = 0u64;
    for (i, &a) in members.iter().enumerate() {
        // Canonical order puts every proper superset after `a`.
        count += members[i + 1..].iter().filter(|&&b| is_proper_subset(a, b)).count() as u64;
    }
    count
}

/// Number of pairs `A ⊊ B` with `|A| = i` and `|B| = j`.
pub fn count_2chains_between(family: &SetFamily, i: u32, j: u32) -> u64 {
    if i >= j {
        return 0;
    }
    let upper: Vec<u32> = family.layer(j).collect();
    family
        .layer(i)
        .map(|a| upper.iter().filter(|&&b| a & !b == 0).count() as u64)
        .sum()
}

/// `max(0, ⌈(m − C(n, ⌊n/2⌋)) · n / 2⌉)`, a lower bound on the number of
/// 2-chains in any `m`-member family over `[n]`. Rounding up is sound since
/// the count is an integer.
pub fn kleitman_lower_bound(m: u64, n: u32) -> BigUint {
    let central = binomial(n as u64, n as u64 / 2);
    let m = BigUint::from(m);
    if m <= central {
        return BigUint::zero();
    }
    ((m - central) * n + 1u32) / 2u32
}

/// Base of the logarithm in the tail window `n/2 ± 2√(n log n)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }
}

/// Whether size `k` falls strictly outside `n/2 ± 2√(n log n)`.
///
/// `|k − n/2| > 2√(n log n)` is tested as `(2k − n)² > 16 n log n`, keeping
/// the left side an exact integer.
pub fn outside_tail_window(n: u64, k: u64, base: LogBase) -> bool {
    let d = 2 * k as i128 - n as i128;
    let lhs = (d * d) as f64;
    lhs > 16.0 * n as f64 * base.log(n as f64)
}

/// Number of subsets of `[n]` whose size lies outside `n/2 ± 2√(n ln n)`.
pub fn tail_count(n: u64) -> BigUint {
    tail_count_with_base(n, LogBase::Natural)
}

pub fn tail_count_with_base(n: u64, base: LogBase) -> BigUint {
    binomial_row(n)
        .into_iter()
        .enumerate()
        .filter(|&(k, _)| outside_tail_window(n, k as u64, base))
        .map(|(_, c)| c)
        .sum()
}

/// Tail count against the scale `C(n, ⌊n/2⌋) / n^{3/2}`; reported only.
#[derive(Debug, Clone, PartialEq)]
pub struct TailDiagnostic {
    pub n: u64,
    pub tail: BigUint,
    pub central: BigUint,
    /// `tail · n^{3/2} / C(n, ⌊n/2⌋)`.
    pub ratio: f64,
}

pub fn tail_diagnostic(n: u64) -> TailDiagnostic {
    let tail = tail_count(n);
    let central = binomial(n, n / 2);
    let ratio = BigRational::new(big(tail.clone()), big(central.clone()))
        .to_f64()
        .unwrap_or(f64::NAN)
        * (n as f64).powf(1.5);
    TailDiagnostic {
        n,
        tail,
        central,
        ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{layer_masks, lubell_tail_family, middle_layers, SetFamily};

    fn rational(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn lubell_examples() {
        assert_eq!(lubell_mass(&middle_layers(4, 2).unwrap()), rational(2, 1));
        for n in 1..=8 {
            assert_eq!(lubell_mass(&SetFamily::power_set(n).unwrap()), rational(n as i64 + 1, 1));
        }
        assert_eq!(lubell_mass(&lubell_tail_family(8, 3).unwrap()), rational(4, 1));
        let single = SetFamily::new(4, [0b11]).unwrap();
        assert_eq!(lubell_mass(&single), rational(1, 6));
    }

    #[test]
    fn pair_count_examples() {
        for n in 1..=6 {
            let f = SetFamily::new(n, [0]).unwrap();
            assert_eq!(pair_count(&f), factorial(n as u64));
        }
        assert_eq!(pair_count(&middle_layers(4, 2).unwrap()), BigUint::from(48u32));
    }

    #[test]
    fn chain_average() {
        let f = SetFamily::new(3, [0]).unwrap();
        for via in [ChainAverageMethod::Formula, ChainAverageMethod::Enumeration] {
            assert_eq!(chain_weight_average(&f, via).unwrap(), rational(1, 1));
            assert_eq!(
                chain_weight_average(&middle_layers(4, 2).unwrap(), via).unwrap(),
                rational(10, 1)
            );
        }
        let big = SetFamily::new(9, [0]).unwrap();
        assert_eq!(
            chain_weight_average(&big, ChainAverageMethod::Enumeration),
            Err(ChainsError::TooLargeForEnumeration { n: 9 })
        );
        assert!(chain_weight_average(&big, ChainAverageMethod::Formula).is_ok());
    }

    #[test]
    fn two_chains() {
        let f = middle_layers(4, 2).unwrap();
        assert_eq!(count_2chains(&f), 12);
        assert_eq!(count_2chains_between(&f, 2, 3), 12);
        assert_eq!(count_2chains(&SetFamily::layers(5, [2]).unwrap()), 0);
        let g = SetFamily::from_sets(2, &[&[], &[1], &[1, 2]]).unwrap();
        assert_eq!(count_2chains(&g), 3);
    }

    #[test]
    fn full_layer_counts() {
        let n = 7;
        let f = SetFamily::power_set(n).unwrap();
        for i in 0..=n {
            for j in i + 1..=n {
                assert_eq!(
                    count_2chains_between(&f, i, j),
                    binomial_u64(n, j) * binomial_u64(j, i)
                );
            }
        }
        assert_eq!(layer_masks(n, 3).len() as u64, binomial_u64(n, 3));
    }

    #[test]
    fn kleitman_examples() {
        assert_eq!(kleitman_lower_bound(6, 4), BigUint::zero());
        assert_eq!(kleitman_lower_bound(3, 4), BigUint::zero());
        assert_eq!(kleitman_lower_bound(10, 4), BigUint::from(8u32));
        assert_eq!(kleitman_lower_bound(11, 5), BigUint::from(2u32 + 1));
    }

    #[test]
    fn tails() {
        assert!(tail_count(16).is_zero());
        assert!(tail_count(2).is_zero());
        // 16·100·ln 100 ≈ 7368 and (2k−100)² must exceed it: |2k−100| ≥ 86.
        let expected: BigUint = (0..=7u64).chain(93..=100).map(|k| binomial(100, k)).sum();
        assert_eq!(tail_count(100), expected);
        assert!(tail_count_with_base(100, LogBase::Two) < tail_count(100));
    }
}
