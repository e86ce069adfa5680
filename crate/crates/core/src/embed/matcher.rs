use crate::family::{canonical_key, Mask};
use crate::poset::{bits, Poset};

use super::{EmbedError, FreenessMode, ModeKind};

/// Backtracking copy detector for one poset under one mode.
#[derive(Debug, Clone)]
pub struct Detector<'p> {
    poset: &'p Poset,
    kind: ModeKind,
    classes: Option<Classes>,
    /// Lower bound on the image size of each element (its rank).
    min_size: Vec<u32>,
    /// Longest chain above each element; the image has at most `n - depth` elements.
    up_depth: Vec<u32>,
    /// `plans[x]` starts at element `x`; `plans[len]` is the free-start plan.
    plans: Vec<Plan>,
}

/// Equal-size classes for rank-preserving and colored modes.
#[derive(Debug, Clone)]
struct Classes {
    of: Vec<usize>,
    count: usize,
    /// Number of elements in each class.
    sizes: Vec<usize>,
    /// `smaller[a]` has bit `b` when some element of class `a` lies below
    /// some element of class `b`, forcing `size(a) < size(b)`.
    smaller: Vec<u64>,
}

/// Element order for backtracking plus, for each position, which earlier
/// elements are below, above, or incomparable to it.
#[derive(Debug, Clone)]
struct Plan {
    order: Vec<usize>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    incomparable: Vec<Vec<usize>>,
}

impl<'p> Detector<'p> {
    pub fn new(poset: &'p Poset, mode: &FreenessMode) -> Result<Self, EmbedError> {
        let ranks = poset.rank_assignment();
        let class_of = match mode {
            FreenessMode::Weak | FreenessMode::Induced => None,
            FreenessMode::RankPreserving => {
                if !ranks.graded {
                    return Err(EmbedError::NotGraded);
                }
                Some(ranks.ranks.clone())
            }
            FreenessMode::Colored(c) => {
                c.validate(poset).map_err(|pair| {
                    EmbedError::InvalidColoring(match pair {
                        Some((x, y)) => format!(
                            "comparable elements `{}` and `{}` share color {}",
                            poset.label(x),
                            poset.label(y),
                            c.color(x)
                        ),
                        None => format!("{} colors for {} elements", c.colors().len(), poset.len()),
                    })
                })?;
                Some(c.colors().to_vec())
            }
        };
        let classes = class_of.map(|of| Classes::new(poset, of));
        let len = poset.len();
        let induced = matches!(mode, FreenessMode::Induced);
        let plans = (0..=len)
            .map(|start| Plan::new(poset, (start < len).then_some(start), induced))
            .collect();
        Ok(Detector {
            poset,
            kind: mode.kind(),
            classes,
            min_size: ranks.ranks.iter().map(|&r| r as u32).collect(),
            up_depth: poset.depth_above(),
            plans,
        })
    }

    pub fn poset(&self) -> &Poset {
        self.poset
    }

    pub fn mode(&self) -> ModeKind {
        self.kind
    }

    /// Searches `pool` (distinct masks in canonical order) for a copy.
    ///
    /// With `through = Some(s)`, `s` must not be in `pool` and the copy is
    /// required to use it. Returns the images indexed by poset element.
    pub fn find(&self, pool: &[Mask], n: u32, through: Option<Mask>) -> Option<Vec<Mask>> {
        debug_assert!(pool.windows(2).all(|w| canonical_key(w[0]) < canonical_key(w[1])));
        let len = self.poset.len();
        if pool.len() + usize::from(through.is_some()) < len {
            return None;
        }
        let mut offsets = vec![pool.len(); n as usize + 2];
        for (i, m) in pool.iter().enumerate().rev() {
            offsets[m.count_ones() as usize] = i;
        }
        for k in (0..=n as usize).rev() {
            offsets[k] = offsets[k].min(offsets[k + 1]);
        }
        let mut run = Run {
            det: self,
            plan: &self.plans[len],
            pool,
            offsets,
            n,
            images: vec![0; len],
            used: vec![false; pool.len()],
            target: vec![None; len],
        };
        match through {
            None => run.start(None, 0),
            Some(s) => {
                let size = s.count_ones();
                for x in 0..len {
                    if size < self.min_size[x] || size + self.up_depth[x] > n {
                        continue;
                    }
                    run.plan = &self.plans[x];
                    run.images[x] = s;
                    if run.start(Some((x, size)), 1) {
                        return Some(run.images);
                    }
                }
                return None;
            }
        }
        .then_some(run.images)
    }
}

impl Classes {
    fn new(poset: &Poset, raw: Vec<usize>) -> Self {
        // Relabel to 0..count so class bitsets stay within 64 bits.
        let mut distinct = raw.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let of: Vec<usize> = raw.iter().map(|c| distinct.binary_search(c).expect("present")).collect();
        let count = distinct.len();
        let mut sizes = vec![0; count];
        let mut smaller = vec![0u64; count];
        for x in 0..poset.len() {
            sizes[of[x]] += 1;
            for y in bits(poset.above(x)) {
                smaller[of[x]] |= 1 << of[y];
            }
        }
        Classes {
            of,
            count,
            sizes,
            smaller,
        }
    }
}

impl Plan {
    fn new(poset: &Poset, start: Option<usize>, induced: bool) -> Self {
        let len = poset.len();
        let ranks = poset.rank_assignment().ranks;
        let related = |x: usize| poset.above(x) | poset.below(x);
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(len);
        let first = start.unwrap_or_else(|| {
            (0..len)
                .max_by_key(|&x| (related(x).count_ones(), std::cmp::Reverse(x)))
                .expect("poset is non-empty")
        });
        order.push(first);
        placed |= 1 << first;
        while order.len() < len {
            let next = (0..len)
                .filter(|&x| placed >> x & 1 == 0)
                .max_by_key(|&x| {
                    (
                        (related(x) & placed).count_ones(),
                        related(x).count_ones(),
                        std::cmp::Reverse((ranks[x], x)),
                    )
                })
                .expect("unplaced element exists");
            order.push(next);
            placed |= 1 << next;
        }
        let mut below = Vec::with_capacity(len);
        let mut above = Vec::with_capacity(len);
        let mut incomparable = Vec::with_capacity(len);
        for (pos, &x) in order.iter().enumerate() {
            let earlier = &order[..pos];
            below.push(earlier.iter().copied().filter(|&y| poset.lt(y, x)).collect());
            above.push(earlier.iter().copied().filter(|&y| poset.lt(x, y)).collect());
            incomparable.push(if induced {
                earlier.iter().copied().filter(|&y| !poset.comparable(x, y)).collect()
            } else {
                Vec::new()
            });
        }
        Plan {
            order,
            below,
            above,
            incomparable,
        }
    }
}

struct Run<'a, 'p> {
    det: &'a Detector<'p>,
    plan: &'a Plan,
    pool: &'a [Mask],
    /// `offsets[k]` is the first pool index with popcount `>= k`.
    offsets: Vec<usize>,
    n: u32,
    images: Vec<Mask>,
    used: Vec<bool>,
    target: Vec<Option<u32>>,
}

impl Run<'_, '_> {
    /// Fixes class sizes if the mode needs them, then backtracks from `pos`.
    /// `pinned` is the element already mapped to the required set and its size.
    fn start(&mut self, pinned: Option<(usize, u32)>, pos: usize) -> bool {
        let det = self.det;
        let Some(classes) = &det.classes else {
            return self.extend(pos);
        };
        let mut available: Vec<usize> = self.offsets.windows(2).map(|w| w[1] - w[0]).collect();
        let mut fixed = vec![None; classes.count];
        if let Some((x, size)) = pinned {
            fixed[classes.of[x]] = Some(size);
            available[size as usize] += 1;
        }
        let mut assigned = vec![0u32; classes.count];
        self.assign_class(classes, 0, &fixed, &mut assigned, &mut available, pos)
    }

    fn assign_class(
        &mut self,
        classes: &Classes,
        c: usize,
        fixed: &[Option<u32>],
        assigned: &mut [u32],
        available: &mut [usize],
        pos: usize,
    ) -> bool {
        if c == classes.count {
            for x in 0..self.target.len() {
                self.target[x] = Some(assigned[classes.of[x]]);
            }
            return self.extend(pos);
        }
        if classes.sizes[c] == 0 {
            return self.assign_class(classes, c + 1, fixed, assigned, available, pos);
        }
        let candidates: Vec<u32> = match fixed[c] {
            Some(s) => vec![s],
            None => (0..=self.n).collect(),
        };
        for size in candidates {
            if available[size as usize] < classes.sizes[c] {
                continue;
            }
            let consistent = (0..c).filter(|&b| classes.sizes[b] > 0).all(|b| {
                let sb = assigned[b];
                (classes.smaller[b] >> c & 1 == 0 || sb < size)
                    && (classes.smaller[c] >> b & 1 == 0 || size < sb)
            });
            if !consistent {
                continue;
            }
            assigned[c] = size;
            available[size as usize] -= classes.sizes[c];
            let found = self.assign_class(classes, c + 1, fixed, assigned, available, pos);
            available[size as usize] += classes.sizes[c];
            if found {
                return true;
            }
        }
        false
    }

    fn extend(&mut self, pos: usize) -> bool {
        let plan = self.plan;
        if pos == plan.order.len() {
            return true;
        }
        let x = plan.order[pos];
        let (lo, hi) = match self.target[x] {
            Some(size) => (size, size),
            None => (self.det.min_size[x], self.n - self.det.up_depth[x].min(self.n)),
        };
        if lo > hi {
            return false;
        }
        let range = self.offsets[lo as usize]..self.offsets[hi as usize + 1];
        for i in range {
            if self.used[i] {
                continue;
            }
            let m = self.pool[i];
            if !plan.below[pos].iter().all(|&y| self.images[y] & !m == 0)
                || !plan.above[pos].iter().all(|&y| m & !self.images[y] == 0)
                || !plan.incomparable[pos].iter().all(|&y| {
                    let other = self.images[y];
                    other & !m != 0 && m & !other != 0
                })
            {
                continue;
            }
            self.used[i] = true;
            self.images[x] = m;
            if self.extend(pos + 1) {
                return true;
            }
            self.used[i] = false;
        }
        false
    }
}
