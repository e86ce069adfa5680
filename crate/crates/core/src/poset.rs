//! Finite posets stored through their Hasse diagram.
//!
//! A [`Poset`] keeps the (transitively reduced) cover relation together with
//! the strict order as one `u64` bitset per element, so posets are limited to
//! [`MAX_ELEMENTS`] elements. Everything here is immutable after construction.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover refers to unknown element `{0}`")]
    UnknownLabel(String),
    #[error("cover relation contains a cycle")]
    Cycle,
    #[error("poset has {0} elements, at most {MAX_ELEMENTS} are supported")]
    TooLarge(usize),
    #[error("poset must have at least one element")]
    Empty,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("malformed poset description: {0}")]
    Malformed(String),
}

/// A finite poset given by labelled elements and its cover relation.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// Irredundant covers `(x, y)` meaning `x ⋖ y`, sorted by index.
    covers: Vec<(usize, usize)>,
    /// `up[x]` has bit `y` set iff `x < y`.
    up: Vec<u64>,
    /// `down[y]` has bit `x` set iff `x < y`.
    down: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.labels)
            .field("covers", &self.cover_labels().collect::<Vec<_>>())
            .finish()
    }
}

impl Poset {
    /// Builds a poset from labels and a (possibly redundant) cover list.
    ///
    /// Redundant pairs, i.e. `(x, y)` with some `z` such that `x < z < y`, and
    /// repeated pairs are dropped, so the stored covers are exactly the Hasse
    /// diagram of the generated order.
    pub fn from_covers<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = {
            let mut index = HashMap::with_capacity(labels.len());
            for (i, l) in labels.iter().enumerate() {
                if index.insert(l.as_str(), i).is_some() {
                    return Err(PosetError::DuplicateLabel(l.clone()));
                }
            }
            index
        };
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| PosetError::UnknownLabel(l.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_covers(labels, pairs)
    }

    pub(crate) fn from_index_covers(
        labels: Vec<String>,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Self, PosetError> {
        let len = labels.len();
        if len == 0 {
            return Err(PosetError::Empty);
        }
        if len > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(len));
        }
        let edges: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        let order = topological_order(len, &edges).ok_or(PosetError::Cycle)?;

        let mut down = vec![0u64; len];
        let mut succ = vec![Vec::new(); len];
        for &(x, y) in &edges {
            succ[x].push(y);
        }
        for &x in &order {
            for &y in &succ[x] {
                down[y] |= down[x] | (1u64 << x);
            }
        }
        let mut up = vec![0u64; len];
        for (y, &d) in down.iter().enumerate() {
            for x in bits(d) {
                up[x] |= 1u64 << y;
            }
        }
        let covers = edges
            .into_iter()
            .filter(|&(x, y)| up[x] & down[y] == 0)
            .collect();
        Ok(Poset {
            labels,
            covers,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cover pairs as element indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_labels(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.covers
            .iter()
            .map(|&(x, y)| (self.labels[x].as_str(), self.labels[y].as_str()))
    }

    /// Strict order `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.lt(y, x)
    }

    /// Elements strictly above `x`, as a bitset.
    pub fn above(&self, x: usize) -> u64 {
        self.up[x]
    }

    /// Elements strictly below `x`, as a bitset.
    pub fn below(&self, x: usize) -> u64 {
        self.down[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x] == 0).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x] == 0).collect()
    }

    /// The dual poset: same labels, every cover reversed.
    pub fn dual(&self) -> Poset {
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(x, y)| (y, x)).collect();
        covers.sort_unstable();
        Poset {
            labels: self.labels.clone(),
            covers,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn rank_assignment(&self) -> RankAssignment {
        let mut ranks = vec![0usize; self.len()];
        // Longest chains only use covers, so one pass in a linear extension suffices.
        for x in self.linear_extension() {
            for &(a, b) in &self.covers {
                if a == x {
                    ranks[b] = ranks[b].max(ranks[a] + 1);
                }
            }
        }
        let graded = self.covers.iter().all(|&(x, y)| ranks[y] == ranks[x] + 1);
        RankAssignment { ranks, graded }
    }

    /// Number of levels: element count of a longest chain.
    pub fn height(&self) -> usize {
        1 + self.rank_assignment().ranks.iter().copied().max().unwrap_or(0)
    }

    /// Elements ordered so that `x < y` implies `x` comes first; ties by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let edges: BTreeSet<(usize, usize)> = self.covers.iter().copied().collect();
        topological_order(self.len(), &edges).expect("poset order is acyclic")
    }

    /// Longest chain (in covers) starting at each element and going up.
    pub(crate) fn depth_above(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.len()];
        for x in self.linear_extension().into_iter().rev() {
            for &(a, b) in &self.covers {
                if a == x {
                    depth[a] = depth[a].max(depth[b] + 1);
                }
            }
        }
        depth
    }

    pub fn classify_tree(&self) -> TreeClass {
        let len = self.len();
        if self.covers.len() + 1 != len || !self.hasse_connected() {
            return TreeClass::NotTree;
        }
        if self.minimal_elements().len() == 1 {
            TreeClass::MonotoneIncreasing
        } else if self.maximal_elements().len() == 1 {
            TreeClass::MonotoneDecreasing
        } else {
            TreeClass::Tree
        }
    }

    fn hasse_connected(&self) -> bool {
        let len = self.len();
        let mut adj = vec![Vec::new(); len];
        for &(x, y) in &self.covers {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; len];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Undirected neighbours of `x` in the Hasse diagram.
    pub fn hasse_neighbors(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .covers
            .iter()
            .filter_map(|&(a, b)| {
                if a == x {
                    Some(b)
                } else if b == x {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Same labels and the same order relation.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.labels == other.labels && self.up == other.up
    }

    pub fn to_file(&self) -> PosetFile {
        let mut covers: Vec<[String; 2]> = self
            .cover_labels()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        covers.sort();
        PosetFile {
            elements: self.labels.clone(),
            covers,
        }
    }

    /// Canonical JSON form: elements in the given order, covers sorted
    /// lexicographically by label.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
        file.into_poset()
    }
}

/// On-disk poset description: `{"elements": [...], "covers": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl PosetFile {
    pub fn into_poset(self) -> Result<Poset, PosetError> {
        let covers: Vec<(String, String)> = self
            .covers
            .into_iter()
            .map(|[a, b]| (a, b))
            .collect();
        Poset::from_covers(&self.elements, &covers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    /// Indexed by element.
    pub ranks: Vec<usize>,
    pub graded: bool,
}

impl RankAssignment {
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// The rank function viewed as a coloring.
    pub fn to_coloring(&self) -> Coloring {
        Coloring::new(self.ranks.clone())
    }
}

/// Assignment of a color index to every poset element.
///
/// A coloring is only meaningful when each color class is an antichain; use
/// [`Coloring::validate`] before relying on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn from_labels(poset: &Poset, pairs: &[(&str, usize)]) -> Result<Self, PosetError> {
        let mut colors = vec![None; poset.len()];
        for &(label, c) in pairs {
            let x = poset
                .index_of(label)
                .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))?;
            colors[x] = Some(c);
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(x, c)| {
                c.ok_or_else(|| {
                    PosetError::InvalidParam(format!("element `{}` has no color", poset.label(x)))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Coloring { colors })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, x: usize) -> usize {
        self.colors[x]
    }

    /// Checks length and that no two comparable elements share a color.
    /// Returns the offending pair on failure.
    pub fn validate(&self, poset: &Poset) -> Result<(), Option<(usize, usize)>> {
        if self.colors.len() != poset.len() {
            return Err(None);
        }
        for x in 0..poset.len() {
            for y in bits(poset.above(x)) {
                if self.colors[x] == self.colors[y] {
                    return Err(Some((x, y)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeClass {
    NotTree,
    Tree,
    /// Unique minimal element. Chains (unique minimum and maximum) land here.
    MonotoneIncreasing,
    MonotoneDecreasing,
}

/// How the "degree r" condition on the height-3 monotone tree is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum T3Reading {
    /// Every non-leaf has Hasse degree `r`: root with `r` children, each
    /// middle element with one parent and `r - 1` children.
    #[default]
    HasseDegree,
    /// Every non-leaf has `r` children.
    Children,
}

/// The named posets used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedPoset {
    Chain(usize),
    Antichain(usize),
    /// `x1 < ... < xh < y1, ..., ys`.
    Y { h: usize, s: usize },
    /// Dual of `Y { h, s }`.
    YPrime { h: usize, s: usize },
    /// Monotone increasing tree of height three.
    T3 { r: usize, reading: T3Reading },
    /// Levels of the given sizes, every element related to every element of
    /// the other levels.
    CompleteMultilevel(Vec<usize>),
}

impl NamedPoset {
    pub fn build(&self) -> Result<Poset, PosetError> {
        let positive = |v: usize, what: &str| {
            if v == 0 {
                Err(PosetError::InvalidParam(format!("{what} must be positive")))
            } else {
                Ok(())
            }
        };
        match *self {
            NamedPoset::Chain(k) => {
                positive(k, "chain length")?;
                let labels: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
                let covers = (0..k - 1).map(|i| (i, i + 1)).collect();
                Poset::from_index_covers(labels, covers)
            }
            NamedPoset::Antichain(k) => {
                positive(k, "antichain size")?;
                Poset::from_index_covers((1..=k).map(|i| format!("a{i}")).collect(), vec![])
            }
            NamedPoset::Y { h, s } => {
                positive(h, "h")?;
                positive(s, "s")?;
                let mut labels: Vec<String> = (1..=h).map(|i| format!("x{i}")).collect();
                labels.extend((1..=s).map(|j| format!("y{j}")));
                let mut covers: Vec<(usize, usize)> = (0..h - 1).map(|i| (i, i + 1)).collect();
                covers.extend((0..s).map(|j| (h - 1, h + j)));
                Poset::from_index_covers(labels, covers)
            }
            NamedPoset::YPrime { h, s } => Ok(NamedPoset::Y { h, s }.build()?.dual()),
            NamedPoset::T3 { r, reading } => {
                let per_middle = match reading {
                    T3Reading::HasseDegree => {
                        if r < 2 {
                            return Err(PosetError::InvalidParam(
                                "t3 under the Hasse-degree reading needs r >= 2".into(),
                            ));
                        }
                        r - 1
                    }
                    T3Reading::Children => {
                        positive(r, "r")?;
                        r
                    }
                };
                let mut labels = vec!["root".to_string()];
                let mut covers = Vec::new();
                for m in 1..=r {
                    labels.push(format!("m{m}"));
                    covers.push((0, labels.len() - 1));
                }
                for m in 1..=r {
                    for l in 1..=per_middle {
                        labels.push(format!("l{m}_{l}"));
                        covers.push((m, labels.len() - 1));
                    }
                }
                Poset::from_index_covers(labels, covers)
            }
            NamedPoset::CompleteMultilevel(ref sizes) => {
                if sizes.is_empty() || sizes.contains(&0) {
                    return Err(PosetError::InvalidParam(
                        "level sizes must be a non-empty list of positive integers".into(),
                    ));
                }
                let mut labels = Vec::new();
                let mut levels: Vec<Vec<usize>> = Vec::new();
                for (lvl, &size) in sizes.iter().enumerate() {
                    let mut level = Vec::new();
                    for i in 1..=size {
                        level.push(labels.len());
                        labels.push(format!("L{}_{i}", lvl + 1));
                    }
                    levels.push(level);
                }
                let mut covers = Vec::new();
                for w in levels.windows(2) {
                    for &x in &w[0] {
                        for &y in &w[1] {
                            covers.push((x, y));
                        }
                    }
                }
                Poset::from_index_covers(labels, covers)
            }
        }
    }
}

impl fmt::Display for NamedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedPoset::Chain(k) => write!(f, "chain({k})"),
            NamedPoset::Antichain(k) => write!(f, "antichain({k})"),
            NamedPoset::Y { h, s } => write!(f, "y({h},{s})"),
            NamedPoset::YPrime { h, s } => write!(f, "y'({h},{s})"),
            NamedPoset::T3 {
                r,
                reading: T3Reading::HasseDegree,
            } => write!(f, "t3({r})"),
            NamedPoset::T3 {
                r,
                reading: T3Reading::Children,
            } => write!(f, "t3c({r})"),
            NamedPoset::CompleteMultilevel(sizes) => {
                let parts: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
                write!(f, "multilevel({})", parts.join(","))
            }
        }
    }
}

impl FromStr for NamedPoset {
    type Err = PosetError;

    /// Parses `chain(k)`, `antichain(k)`, `y(h,s)`, `y'(h,s)`, `t3(r)`,
    /// `t3c(r)` (children reading) and `multilevel(a,b,...)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || PosetError::Malformed(format!("unrecognised poset name `{s}`"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(malformed)?;
        if !s.ends_with(')') {
            return Err(malformed());
        }
        let name = s[..open].trim();
        let args: Vec<usize> = s[open + 1..s.len() - 1]
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed())?;
        let one = || match args[..] {
            [a] => Ok(a),
            _ => Err(malformed()),
        };
        let two = || match args[..] {
            [a, b] => Ok((a, b)),
            _ => Err(malformed()),
        };
        Ok(match name {
            "chain" => NamedPoset::Chain(one()?),
            "antichain" => NamedPoset::Antichain(one()?),
            "y" => {
                let (h, s) = two()?;
                NamedPoset::Y { h, s }
            }
            "y'" | "y_prime" | "yprime" => {
                let (h, s) = two()?;
                NamedPoset::YPrime { h, s }
            }
            "t3" | "t_r3" => NamedPoset::T3 {
                r: one()?,
                reading: T3Reading::HasseDegree,
            },
            "t3c" => NamedPoset::T3 {
                r: one()?,
                reading: T3Reading::Children,
            },
            "multilevel" | "complete_multilevel" => NamedPoset::CompleteMultilevel(args),
            _ => return Err(malformed()),
        })
    }
}

pub fn chain(k: usize) -> Result<Poset, PosetError> {
    NamedPoset::Chain(k).build()
}

pub fn antichain(k: usize) -> Result<Poset, PosetError> {
    NamedPoset::Antichain(k).build()
}

pub fn y(h: usize, s: usize) -> Result<Poset, PosetError> {
    NamedPoset::Y { h, s }.build()
}

pub fn y_prime(h: usize, s: usize) -> Result<Poset, PosetError> {
    NamedPoset::YPrime { h, s }.build()
}

pub fn t_r3(r: usize) -> Result<Poset, PosetError> {
    NamedPoset::T3 {
        r,
        reading: T3Reading::HasseDegree,
    }
    .build()
}

pub fn complete_multilevel(sizes: &[usize]) -> Result<Poset, PosetError> {
    NamedPoset::CompleteMultilevel(sizes.to_vec()).build()
}

/// All height-two tree posets on `t` elements, one per isomorphism class.
///
/// Labelled trees come from Prüfer sequences; each is oriented both ways
/// across its bipartition and duplicates are removed by brute-force
/// canonical labelling, so keep `t` small (at most 7).
pub fn height_two_trees(t: usize) -> Vec<Poset> {
    assert!((2..=7).contains(&t), "height_two_trees supports 2 <= t <= 7");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = t.pow(t as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(t - 2);
        let mut c = code;
        for _ in 0..t - 2 {
            seq.push(c % t);
            c /= t;
        }
        let edges = prufer_edges(t, &seq);
        let side = bipartition(t, &edges);
        for flip in [false, true] {
            let covers: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| if side[a] != flip { (b, a) } else { (a, b) })
                .collect();
            let key = canonical_digraph(t, &covers);
            if seen.insert(key) {
                let labels = (1..=t).map(|i| format!("v{i}")).collect();
                out.push(Poset::from_index_covers(labels, covers).expect("tree orientation is acyclic"));
            }
        }
    }
    out
}

fn prufer_edges(t: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; t];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(t - 1);
    for &v in seq {
        let leaf = (0..t).find(|&u| degree[u] == 1).expect("prufer leaf");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..t).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn bipartition(t: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut side = vec![None; t];
    side[0] = Some(false);
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            match (side[a], side[b]) {
                (Some(s), None) => {
                    side[b] = Some(!s);
                    changed = true;
                }
                (None, Some(s)) => {
                    side[a] = Some(!s);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    side.into_iter().map(|s| s.expect("tree is connected")).collect()
}

fn canonical_digraph(t: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..t).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut relabeled: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        relabeled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Kahn's algorithm, smallest available index first. `None` on a cycle.
fn topological_order(len: usize, edges: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; len];
    let mut succ = vec![Vec::new(); len];
    for &(x, y) in edges {
        if x == y {
            return None;
        }
        indegree[y] += 1;
        succ[x].push(y);
    }
    let mut ready: BTreeSet<usize> = (0..len).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(len);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == len).then_some(order)
}

/// Indices of the set bits of `word`, ascending.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}
