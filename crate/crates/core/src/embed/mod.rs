//! Copies of a poset inside a set family.
//!
//! A copy is an injective map `φ` from poset elements to family members with
//! `x ≤ y ⇒ φ(x) ⊆ φ(y)`. The stricter notions add:
//!
//! * induced: `φ(x) ⊆ φ(y) ⇒ x ≤ y`;
//! * rank-preserving: equal rank ⇒ equal set size (poset must be graded);
//! * colored: equal color ⇒ equal set size (color classes must be antichains).
//!
//! [`Detector`] holds everything that depends only on the poset and the mode,
//! so callers that test many families against the same poset (the exact
//! search in particular) build it once.

mod bigraph;
mod matcher;

pub use bigraph::{build_inclusion_bigraph, greedy_tree_embed, min_degree_subgraph, InclusionBigraph};
pub use matcher::Detector;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::family::{elements_of, is_proper_subset, Mask, SetFamily};
use crate::poset::{Coloring, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rank-preserving copies need a graded poset")]
    NotGraded,
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("set {0:#b} is already a member of the family")]
    AlreadyMember(Mask),
    #[error("set {mask:#b} lies outside the ground set [{n}]")]
    OutOfRange { mask: Mask, n: u32 },
    #[error("layers must satisfy i < j <= n, got i={i}, j={j}")]
    LayerOrder { i: u32, j: u32 },
    #[error("poset is not a height-two tree")]
    NotHeightTwoTree,
    #[error("greedy embedding got stuck at element `{0}`")]
    EmbedFailed(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// Which copy notion to test for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FreenessMode {
    Weak,
    Induced,
    RankPreserving,
    Colored(Coloring),
}

impl FreenessMode {
    pub fn kind(&self) -> ModeKind {
        match self {
            FreenessMode::Weak => ModeKind::Weak,
            FreenessMode::Induced => ModeKind::Induced,
            FreenessMode::RankPreserving => ModeKind::RankPreserving,
            FreenessMode::Colored(_) => ModeKind::Colored,
        }
    }
}

impl fmt::Display for FreenessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind().fmt(f)
    }
}

/// [`FreenessMode`] without the coloring payload; used to annotate witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Weak,
    Induced,
    RankPreserving,
    Colored,
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeKind::Weak => "weak",
            ModeKind::Induced => "induced",
            ModeKind::RankPreserving => "rank_preserving",
            ModeKind::Colored => "colored",
        })
    }
}

/// A witness copy: `images[x]` is the set assigned to poset element `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    images: Vec<Mask>,
    mode: ModeKind,
}

impl Embedding {
    pub fn new(images: Vec<Mask>, mode: ModeKind) -> Self {
        Embedding { images, mode }
    }

    pub fn images(&self) -> &[Mask] {
        &self.images
    }

    pub fn image(&self, x: usize) -> Mask {
        self.images[x]
    }

    pub fn mode(&self) -> ModeKind {
        self.mode
    }

    pub fn uses(&self, mask: Mask) -> bool {
        self.images.contains(&mask)
    }

    /// `{"mode": ..., "map": {label: [elements...]}}`, labels in poset order.
    pub fn to_json(&self, poset: &Poset) -> Value {
        let mut map = Map::new();
        for (x, &m) in self.images.iter().enumerate() {
            map.insert(poset.label(x).to_string(), json!(elements_of(m)));
        }
        json!({ "mode": self.mode, "map": map })
    }

    /// Re-checks every defining condition of a copy directly, without going
    /// through the search code.
    pub fn validate(&self, poset: &Poset, family: &SetFamily, mode: &FreenessMode) -> Result<(), EmbedError> {
        let bad = |msg: String| Err(EmbedError::InvalidWitness(msg));
        if self.images.len() != poset.len() {
            return bad(format!("{} images for {} elements", self.images.len(), poset.len()));
        }
        for (x, &m) in self.images.iter().enumerate() {
            if !family.contains(m) {
                return bad(format!("image of `{}` is not a member", poset.label(x)));
            }
        }
        let colors = match mode {
            FreenessMode::RankPreserving => Some(poset.rank_assignment().ranks),
            FreenessMode::Colored(c) => Some(c.colors().to_vec()),
            _ => None,
        };
        for x in 0..poset.len() {
            for y in 0..poset.len() {
                if x == y {
                    continue;
                }
                let (a, b) = (self.images[x], self.images[y]);
                if a == b {
                    return bad("not injective".into());
                }
                if poset.lt(x, y) && !is_proper_subset(a, b) {
                    return bad(format!("{} < {} not preserved", poset.label(x), poset.label(y)));
                }
                if *mode == FreenessMode::Induced && is_proper_subset(a, b) && !poset.lt(x, y) {
                    return bad(format!("{} and {} related only in the image", poset.label(x), poset.label(y)));
                }
                if let Some(c) = &colors {
                    if c[x] == c[y] && a.count_ones() != b.count_ones() {
                        return bad(format!("{} and {} share a class but differ in size", poset.label(x), poset.label(y)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Finds a copy of `poset` in `family` under `mode`, or `None`.
///
/// Rank-preserving and colored searches first fix a set size for each color
/// class (ascending), then backtrack on element images in canonical family
/// order; the first witness found is returned.
pub fn find_copy(family: &SetFamily, poset: &Poset, mode: &FreenessMode) -> Result<Option<Embedding>, EmbedError> {
    let detector = Detector::new(poset, mode)?;
    Ok(detector
        .find(family.members(), family.n(), None)
        .map(|images| Embedding::new(images, mode.kind())))
}

pub fn find_colored_copy(family: &SetFamily, poset: &Poset, coloring: &Coloring) -> Result<Option<Embedding>, EmbedError> {
    find_copy(family, poset, &FreenessMode::Colored(coloring.clone()))
}

/// Looks for a copy in `family ∪ {set}` whose image contains `set`.
pub fn creates_copy_through(
    family: &SetFamily,
    poset: &Poset,
    mode: &FreenessMode,
    set: Mask,
) -> Result<Option<Embedding>, EmbedError> {
    if (set as u64) >> family.n() != 0 {
        return Err(EmbedError::OutOfRange { mask: set, n: family.n() });
    }
    if family.contains(set) {
        return Err(EmbedError::AlreadyMember(set));
    }
    let detector = Detector::new(poset, mode)?;
    Ok(detector
        .find(family.members(), family.n(), Some(set))
        .map(|images| Embedding::new(images, mode.kind())))
}
