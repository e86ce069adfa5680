//! Exact extremal values by branch and bound, plus saturation and layer probes.
//!
//! `la_exact` branches on the `2^n` subsets of `[n]` in canonical order,
//! include-branch first. Alongside the current family it maintains the list
//! of *live* candidates: later sets whose addition would not create a
//! forbidden copy. Containing a copy is monotone under adding sets, so a dead
//! candidate stays dead and `|current| + |live|` is a valid upper bound.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::embed::{find_copy, creates_copy_through, Detector, EmbedError, Embedding, FreenessMode};
use crate::family::{middle_layers, FamilyError, Mask, SetFamily, MAX_GROUND};
use crate::poset::Poset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("seed family is not free: it contains a copy of forbidden poset #{0}")]
    SeedNotFree(usize),
    #[error("seed family is over [{seed}] but the search is over [{n}]")]
    SeedGround { seed: u32, n: u32 },
    #[error("input family is not free: it contains a copy of forbidden poset #{0}")]
    NotFree(usize),
    #[error("exact search supports n <= {0}")]
    TooLarge(u32),
}

/// Largest `n` accepted by [`la_exact`]; results are only expected to
/// complete for `n <= 6`.
pub const MAX_SEARCH_N: u32 = 8;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub budget: Option<Duration>,
    pub workers: usize,
    /// Only allow `{1..k}` as the first chosen set. Sound because every copy
    /// notion here is invariant under permuting the ground set.
    pub symmetry: bool,
    /// A known free family used as the starting lower bound.
    pub seed: Option<SetFamily>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            workers: 1,
            symmetry: false,
            seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub value: usize,
    pub witness: SetFamily,
    pub nodes_explored: u64,
    pub mode: FreenessMode,
    pub forbidden: Vec<Poset>,
    /// False when the budget ran out; `value` is then only a lower bound.
    pub exact: bool,
}

impl SearchOutcome {
    /// `names` label the forbidden posets in the output (same order).
    pub fn to_json(&self, names: &[String]) -> Value {
        json!({
            "n": self.witness.n(),
            "value": self.value,
            "exact": self.exact,
            "mode": self.mode.to_string(),
            "forbidden": names,
            "nodesExplored": self.nodes_explored,
            "witness": self.witness.to_text().lines().skip(1).collect::<Vec<_>>(),
        })
    }
}

fn detectors<'p>(forbidden: &'p [Poset], mode: &FreenessMode) -> Result<Vec<Detector<'p>>, EmbedError> {
    forbidden.iter().map(|p| Detector::new(p, mode)).collect()
}

/// Checks `family` against every forbidden poset; the first copy found is
/// returned together with the index of its poset.
pub fn verify_free(
    family: &SetFamily,
    forbidden: &[Poset],
    mode: &FreenessMode,
) -> Result<(bool, Option<(usize, Embedding)>), EmbedError> {
    for (i, p) in forbidden.iter().enumerate() {
        if let Some(e) = find_copy(family, p, mode)? {
            return Ok((false, Some((i, e))));
        }
    }
    Ok((true, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    /// Adding this set creates no forbidden copy.
    Counterexample(Mask),
}

/// Whether every set outside `family` creates a forbidden copy when added.
pub fn saturation_check(family: &SetFamily, forbidden: &[Poset], mode: &FreenessMode) -> Result<Saturation, SearchError> {
    if let (false, Some((i, _))) = verify_free(family, forbidden, mode)? {
        return Err(SearchError::NotFree(i));
    }
    let dets = detectors(forbidden, mode)?;
    let n = family.n();
    for s in crate::family::SetFamily::power_set(n)?.iter() {
        if family.contains(s) {
            continue;
        }
        if !dets.iter().any(|d| d.find(family.members(), n, Some(s)).is_some()) {
            return Ok(Saturation::Counterexample(s));
        }
    }
    Ok(Saturation::Saturated)
}

/// Saturation witness for a single added set, as used by reports.
pub fn copy_created_by(
    family: &SetFamily,
    forbidden: &[Poset],
    mode: &FreenessMode,
    set: Mask,
) -> Result<Option<(usize, Embedding)>, EmbedError> {
    for (i, p) in forbidden.iter().enumerate() {
        if let Some(e) = creates_copy_through(family, p, mode, set)? {
            return Ok(Some((i, e)));
        }
    }
    Ok(None)
}

/// Largest `k` such that the `k` middle layers of `[n]` are free of `poset`;
/// 0 if even one layer contains a copy.
pub fn max_free_layers(poset: &Poset, n: u32, mode: &FreenessMode) -> Result<u32, SearchError> {
    let mut best = 0;
    // The k middle layers are contained in the k+1 middle layers, so freeness
    // is monotone in k.
    for k in 1..=n + 1 {
        let f = middle_layers(n, k)?;
        if find_copy(&f, poset, mode)?.is_some() {
            break;
        }
        best = k;
    }
    Ok(best)
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<Mask>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    deadline: Option<Instant>,
}

struct Explorer<'s, 'p> {
    shared: &'s Shared,
    dets: &'s [Detector<'p>],
    n: u32,
    symmetry: bool,
    nodes: u64,
}

impl Explorer<'_, '_> {
    fn creates_copy(&self, current: &[Mask], s: Mask) -> bool {
        self.dets.iter().any(|d| d.find(current, self.n, Some(s)).is_some())
    }

    fn live_after(&self, current: &[Mask], candidates: &[Mask]) -> Vec<Mask> {
        candidates.iter().copied().filter(|&s| !self.creates_copy(current, s)).collect()
    }

    fn record(&self, current: &[Mask]) {
        let mut w = self.shared.witness.lock().expect("witness lock");
        if current.len() > self.shared.best.load(Ordering::SeqCst) {
            self.shared.best.store(current.len(), Ordering::SeqCst);
            *w = current.to_vec();
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            self.shared.nodes.fetch_add(1024, Ordering::Relaxed);
            self.nodes = 0;
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.stop.store(true, Ordering::SeqCst);
                }
            }
        }
        !self.shared.stop.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        self.shared.nodes.fetch_add(self.nodes, Ordering::Relaxed);
        self.nodes = 0;
    }

    fn explore(&mut self, current: &mut Vec<Mask>, live: &[Mask]) {
        if !self.tick() {
            return;
        }
        if current.len() + live.len() <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let Some((&c, rest)) = live.split_first() else {
            return;
        };
        if !(self.symmetry && current.is_empty() && !is_initial_segment(c)) {
            current.push(c);
            let next = self.live_after(current, rest);
            if current.len() > self.shared.best.load(Ordering::Relaxed) {
                self.record(current);
            }
            self.explore(current, &next);
            current.pop();
        }
        self.explore(current, rest);
    }

    /// Expands the top of the tree breadth-limited into independent
    /// subproblems `(current, live)`, in the order a sequential run meets them.
    fn frontier(&mut self, current: Vec<Mask>, live: Vec<Mask>, depth: usize, out: &mut Vec<(Vec<Mask>, Vec<Mask>)>) {
        if depth == 0 || live.is_empty() {
            out.push((current, live));
            return;
        }
        let (c, rest) = (live[0], live[1..].to_vec());
        if !(self.symmetry && current.is_empty() && !is_initial_segment(c)) {
            let mut with = current.clone();
            with.push(c);
            let next = self.live_after(&with, &rest);
            if with.len() > self.shared.best.load(Ordering::Relaxed) {
                self.record(&with);
            }
            self.frontier(with, next, depth - 1, out);
        }
        self.frontier(current, rest, depth - 1, out);
    }
}

fn is_initial_segment(m: Mask) -> bool {
    m & (m + 1) == 0
}

/// `max |F|` over families in `2^[n]` free of every poset in `forbidden`
/// under `mode`: `La`, `La*` or `La_rp` depending on the mode.
pub fn la_exact(n: u32, forbidden: &[Poset], mode: &FreenessMode, cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if n == 0 || n > MAX_GROUND {
        return Err(FamilyError::GroundSize(n).into());
    }
    if n > MAX_SEARCH_N {
        return Err(SearchError::TooLarge(MAX_SEARCH_N));
    }
    let dets = detectors(forbidden, mode)?;

    let (best, witness) = match &cfg.seed {
        Some(seed) => {
            if seed.n() != n {
                return Err(SearchError::SeedGround { seed: seed.n(), n });
            }
            if let (false, Some((i, _))) = verify_free(seed, forbidden, mode)? {
                return Err(SearchError::SeedNotFree(i));
            }
            (seed.len(), seed.members().to_vec())
        }
        None => (0, Vec::new()),
    };
    let shared = Shared {
        best: AtomicUsize::new(best),
        witness: Mutex::new(witness),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        deadline: cfg.budget.map(|b| Instant::now() + b),
    };
    let mut root = Explorer {
        shared: &shared,
        dets: &dets,
        n,
        symmetry: cfg.symmetry,
        nodes: 0,
    };
    let all = SetFamily::power_set(n)?;
    let live = root.live_after(&[], all.members());

    if cfg.workers <= 1 {
        root.explore(&mut Vec::new(), &live);
        root.flush();
    } else {
        let mut jobs = Vec::new();
        let depth = (usize::BITS - (4 * cfg.workers).leading_zeros()) as usize;
        root.frontier(Vec::new(), live, depth, &mut jobs);
        root.flush();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            jobs.into_par_iter().for_each(|(mut current, live)| {
                let mut ex = Explorer {
                    shared: &shared,
                    dets: &dets,
                    n,
                    symmetry: cfg.symmetry,
                    nodes: 0,
                };
                ex.explore(&mut current, &live);
                ex.flush();
            });
        });
    }

    let witness = shared.witness.into_inner().expect("witness lock");
    Ok(SearchOutcome {
        value: witness.len(),
        witness: SetFamily::new(n, witness)?,
        nodes_explored: shared.nodes.into_inner(),
        mode: mode.clone(),
        forbidden: forbidden.to_vec(),
        exact: !shared.stop.into_inner(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{f23_construction, lubell_tail_family, mask_of};
    use crate::poset::{chain, t_r3, y, y_prime};

    #[test]
    fn sperner_small() {
        for (n, v) in [(1, 1), (2, 2), (3, 3), (4, 6)] {
            let out = la_exact(n, &[chain(2).unwrap()], &FreenessMode::Weak, &SearchConfig::default()).unwrap();
            assert_eq!(out.value, v, "n={n}");
            assert!(out.exact);
            assert!(verify_free(&out.witness, &out.forbidden, &FreenessMode::Weak).unwrap().0);
        }
    }

    #[test]
    fn workers_and_symmetry_agree() {
        let forbidden = [y(1, 2).unwrap(), y_prime(1, 2).unwrap()];
        let base = la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig::default()).unwrap();
        assert_eq!(base.value, 6);
        let par = la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig { workers: 3, ..Default::default() }).unwrap();
        assert_eq!(par.value, 6);
        let sym = la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig { symmetry: true, ..Default::default() }).unwrap();
        assert_eq!(sym.value, 6);
        assert!(sym.nodes_explored <= base.nodes_explored);
        let again = la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig::default()).unwrap();
        assert_eq!(again.witness, base.witness);
        assert_eq!(again.nodes_explored, base.nodes_explored);
    }

    #[test]
    fn seed_and_budget() {
        let forbidden = [chain(2).unwrap()];
        let seed = SetFamily::layers(4, [2]).unwrap();
        let out = la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig { seed: Some(seed.clone()), ..Default::default() }).unwrap();
        assert_eq!(out.value, 6);
        assert_eq!(out.witness, seed);
        let bad = SetFamily::layers(4, [1, 2]).unwrap();
        assert_eq!(
            la_exact(4, &forbidden, &FreenessMode::Weak, &SearchConfig { seed: Some(bad), ..Default::default() }).unwrap_err(),
            SearchError::SeedNotFree(0)
        );
        let out = la_exact(
            6,
            &[y(1, 2).unwrap(), y_prime(1, 2).unwrap()],
            &FreenessMode::Weak,
            &SearchConfig { budget: Some(Duration::from_millis(1)), ..Default::default() },
        )
        .unwrap();
        assert!(!out.exact);
        assert_eq!(out.value, out.witness.len());
    }

    #[test]
    fn saturation_examples() {
        let mid = SetFamily::layers(4, [2]).unwrap();
        assert_eq!(saturation_check(&mid, &[chain(2).unwrap()], &FreenessMode::Weak).unwrap(), Saturation::Saturated);
        let single = SetFamily::from_sets(2, &[&[1]]).unwrap();
        assert_eq!(
            saturation_check(&single, &[chain(2).unwrap()], &FreenessMode::Weak).unwrap(),
            Saturation::Counterexample(mask_of(&[2]))
        );
        let two = SetFamily::layers(4, [1, 2]).unwrap();
        assert_eq!(saturation_check(&two, &[chain(2).unwrap()], &FreenessMode::Weak), Err(SearchError::NotFree(0)));
        let m = middle_layers(6, 2).unwrap();
        let yy = [y(2, 2).unwrap(), y_prime(2, 2).unwrap()];
        assert_eq!(saturation_check(&m, &yy, &FreenessMode::RankPreserving).unwrap(), Saturation::Saturated);
    }

    #[test]
    fn layer_probe() {
        assert_eq!(max_free_layers(&chain(2).unwrap(), 5, &FreenessMode::Weak).unwrap(), 1);
        assert_eq!(max_free_layers(&y(2, 2).unwrap(), 6, &FreenessMode::Weak).unwrap(), 2);
        assert_eq!(max_free_layers(&t_r3(2).unwrap(), 8, &FreenessMode::RankPreserving).unwrap(), 2);
    }

    #[test]
    fn constructions_are_free() {
        let f = f23_construction(6).unwrap();
        assert!(verify_free(&f, &[y(1, 2).unwrap(), y_prime(1, 3).unwrap()], &FreenessMode::Weak).unwrap().0);
        let t = lubell_tail_family(8, 3).unwrap();
        assert!(verify_free(&t, &[y(3, 2).unwrap(), y_prime(3, 2).unwrap()], &FreenessMode::Weak).unwrap().0);
        let (free, witness) = verify_free(&middle_layers(6, 3).unwrap(), &[y(2, 2).unwrap()], &FreenessMode::Weak).unwrap();
        assert!(!free);
        assert_eq!(witness.unwrap().0, 0);
    }
}
