use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;

use crate::family::{is_proper_subset, Mask, SetFamily};
use crate::poset::Poset;

use super::{EmbedError, Embedding, ModeKind};

/// Bipartite inclusion graph between two layers of a family.
///
/// Vertices `0..lower.len()` are the smaller sets, the rest the larger ones;
/// an edge joins `A` and `B` exactly when `A ⊊ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionBigraph {
    lower: Vec<Mask>,
    upper: Vec<Mask>,
    adj: Vec<Vec<usize>>,
}

impl InclusionBigraph {
    /// Builds the inclusion graph between two arbitrary lists of sets.
    pub fn from_sides(lower: Vec<Mask>, upper: Vec<Mask>) -> Self {
        let offset = lower.len();
        let mut adj = vec![Vec::new(); lower.len() + upper.len()];
        for (a, &la) in lower.iter().enumerate() {
            for (b, &ub) in upper.iter().enumerate() {
                if is_proper_subset(la, ub) {
                    adj[a].push(offset + b);
                    adj[offset + b].push(a);
                }
            }
        }
        InclusionBigraph { lower, upper, adj }
    }

    pub fn lower(&self) -> &[Mask] {
        &self.lower
    }

    pub fn upper(&self) -> &[Mask] {
        &self.upper
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.lower.len()].iter().map(Vec::len).sum()
    }

    pub fn is_lower(&self, v: usize) -> bool {
        v < self.lower.len()
    }

    pub fn mask(&self, v: usize) -> Mask {
        if self.is_lower(v) {
            self.lower[v]
        } else {
            self.upper[v - self.lower.len()]
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// `2|E| / |V|`, exactly; `None` for the empty graph.
    pub fn average_degree(&self) -> Option<Ratio<usize>> {
        (!self.is_empty()).then(|| Ratio::new(2 * self.edge_count(), self.vertex_count()))
    }

    /// Vertices removed when peeling to minimum degree `d`, in removal order.
    /// Each step removes the lowest-indexed vertex of minimum degree.
    pub fn peeling_order(&self, d: usize) -> Vec<usize> {
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut queue: BTreeSet<(usize, usize)> = degree.iter().copied().zip(0..).collect();
        let mut alive = vec![true; self.adj.len()];
        let mut removed = Vec::new();
        while let Some(&(deg, v)) = queue.first() {
            if deg >= d {
                break;
            }
            queue.pop_first();
            alive[v] = false;
            removed.push(v);
            for &w in &self.adj[v] {
                if alive[w] {
                    queue.remove(&(degree[w], w));
                    degree[w] -= 1;
                    queue.insert((degree[w], w));
                }
            }
        }
        removed
    }

    /// Induced subgraph on `keep` (must be sorted); sides and order preserved.
    fn restrict(&self, keep: &[bool]) -> Self {
        let lower = (0..self.lower.len()).filter(|&v| keep[v]).map(|v| self.lower[v]).collect();
        let upper = (self.lower.len()..self.adj.len())
            .filter(|&v| keep[v])
            .map(|v| self.mask(v))
            .collect();
        Self::from_sides(lower, upper)
    }
}

/// The inclusion graph between `F_i` and `F_j`.
pub fn build_inclusion_bigraph(family: &SetFamily, i: u32, j: u32) -> Result<InclusionBigraph, EmbedError> {
    if i >= j || j > family.n() {
        return Err(EmbedError::LayerOrder { i, j });
    }
    Ok(InclusionBigraph::from_sides(
        family.layer(i).collect(),
        family.layer(j).collect(),
    ))
}

/// Largest subgraph with minimum degree at least `d` (possibly empty),
/// obtained by repeatedly deleting a vertex of degree below `d`.
pub fn min_degree_subgraph(graph: &InclusionBigraph, d: usize) -> InclusionBigraph {
    let mut keep = vec![true; graph.vertex_count()];
    for v in graph.peeling_order(d) {
        keep[v] = false;
    }
    graph.restrict(&keep)
}

/// Greedily embeds a height-two tree poset: minimal elements go to lower
/// vertices, maximal ones to upper vertices, Hasse edges to inclusion edges.
///
/// Elements are placed in breadth-first order from element 0, each on the
/// lowest-indexed free neighbour of its parent's image. Minimum degree
/// `t − 1` guarantees success; otherwise the element where the greedy step
/// ran out of neighbours is reported.
pub fn greedy_tree_embed(graph: &InclusionBigraph, tree: &Poset) -> Result<Embedding, EmbedError> {
    let t = tree.len();
    if t < 2 || tree.height() != 2 || tree.covers().len() + 1 != t {
        return Err(EmbedError::NotHeightTwoTree);
    }
    let is_min = |x: usize| tree.below(x) == 0;
    let mut image: Vec<Option<usize>> = vec![None; t];
    let mut used = vec![false; graph.vertex_count()];

    let root_vertex = (0..graph.vertex_count()).find(|&v| graph.is_lower(v) == is_min(0));
    let Some(root_vertex) = root_vertex else {
        return Err(EmbedError::EmbedFailed(tree.label(0).to_string()));
    };
    image[0] = Some(root_vertex);
    used[root_vertex] = true;

    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let vx = image[x].expect("queued elements are placed");
        for y in tree.hasse_neighbors(x) {
            if image[y].is_some() {
                continue;
            }
            let free = graph.neighbors(vx).iter().copied().find(|&w| !used[w]);
            let Some(w) = free else {
                return Err(EmbedError::EmbedFailed(tree.label(y).to_string()));
            };
            used[w] = true;
            image[y] = Some(w);
            queue.push_back(y);
        }
    }
    if image.iter().any(Option::is_none) {
        return Err(EmbedError::NotHeightTwoTree);
    }
    Ok(Embedding::new(
        image.into_iter().map(|v| graph.mask(v.expect("all placed"))).collect(),
        ModeKind::RankPreserving,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::FreenessMode;
    use crate::family::{mask_of, middle_layers, SetFamily};
    use crate::poset::{chain, y, y_prime};

    fn k33() -> InclusionBigraph {
        InclusionBigraph::from_sides(
            vec![mask_of(&[1]), mask_of(&[2]), mask_of(&[3])],
            vec![mask_of(&[1, 2, 3, 4]), mask_of(&[1, 2, 3, 5]), mask_of(&[1, 2, 3, 6])],
        )
    }

    fn path3() -> InclusionBigraph {
        InclusionBigraph::from_sides(
            vec![mask_of(&[1]), mask_of(&[2])],
            vec![mask_of(&[1, 3]), mask_of(&[1, 2])],
        )
    }

    #[test]
    fn inclusion_graph_edges() {
        let f = SetFamily::power_set(4).unwrap();
        assert_eq!(build_inclusion_bigraph(&f, 2, 3).unwrap().edge_count(), 12);
        let g = middle_layers(5, 2).unwrap();
        assert_eq!(build_inclusion_bigraph(&g, 2, 3).unwrap().edge_count(), 30);
        let empty = build_inclusion_bigraph(&g, 0, 3).unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert!(build_inclusion_bigraph(&g, 3, 3).is_err());
    }

    #[test]
    fn peeling() {
        let g = k33();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(min_degree_subgraph(&g, 2), g);
        let p = path3();
        assert_eq!(p.edge_count(), 3);
        assert!(min_degree_subgraph(&p, 2).is_empty());
        // Degree-1 vertices go first, lowest index first.
        assert_eq!(p.peeling_order(2), vec![1, 2, 0, 3]);
    }

    #[test]
    fn greedy_star() {
        let g = k33();
        let star = y(1, 3).unwrap();
        let e = greedy_tree_embed(&g, &star).unwrap();
        let f = SetFamily::new(6, g.lower().iter().chain(g.upper()).copied()).unwrap();
        e.validate(&star, &f, &FreenessMode::RankPreserving).unwrap();
        let lambda = y_prime(1, 3).unwrap();
        assert!(greedy_tree_embed(&g, &lambda).is_ok());

        let edge = InclusionBigraph::from_sides(vec![1], vec![3]);
        assert!(matches!(greedy_tree_embed(&edge, &star), Err(EmbedError::EmbedFailed(_))));
        assert_eq!(greedy_tree_embed(&g, &chain(3).unwrap()), Err(EmbedError::NotHeightTwoTree));
    }
}
