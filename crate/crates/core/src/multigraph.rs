//! Finite multigraphs with a fixed edge order, and the combinatorics of their
//! spanning subgraphs ("states").

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}

/// A multigraph on vertices `0..vertex_count` whose edge list order is the
/// fixed ordering `e_1, ..., e_n`. Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// Subset `S` of the edges, bit `i` set iff `e_{i+1}` is in `S`.
///
/// This is also the cube vertex `alpha` with `alpha_i = 1` iff `e_i` in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSubset {
    mask: u64,
    width: usize,
}

impl StateSubset {
    pub fn new(mask: u64, width: usize) -> Result<Self> {
        if width > 63 {
            return Err(Error::TooManyEdgesForMask);
        }
        if mask >> width != 0 {
            return Err(Error::StateMaskOverflow { mask, width });
        }
        Ok(Self { mask, width })
    }

    pub fn empty(width: usize) -> Result<Self> {
        Self::new(0, width)
    }

    pub fn full(width: usize) -> Result<Self> {
        if width > 63 {
            return Err(Error::TooManyEdgesForMask);
        }
        Self::new((1u64 << width) - 1, width)
    }

    pub fn from_edges(edges: &[usize], width: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &e in edges {
            if e >= width {
                return Err(Error::EdgeIndexOutOfRange {
                    index: e,
                    edge_count: width,
                });
            }
            mask |= 1 << e;
        }
        Self::new(mask, width)
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn width(self) -> usize {
        self.width
    }

    /// `|S|`, the height of the cube vertex.
    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < self.width && self.mask >> e & 1 == 1
    }

    /// Number of edges of `S` with index below `e`.
    pub fn rank_of(self, e: usize) -> usize {
        (self.mask & ((1u64 << e) - 1)).count_ones() as usize
    }

    /// Edge indices of `S` in ascending order.
    pub fn edges(self) -> impl Iterator<Item = usize> {
        (0..self.width).filter(move |&e| self.mask >> e & 1 == 1)
    }

    /// `S ∪ {e}`.
    pub fn with(self, e: usize) -> Self {
        Self {
            mask: self.mask | 1 << e,
            width: self.width,
        }
    }
}

/// Betti numbers and canonical component list of a state `[G:S]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateStats {
    /// `|S|`.
    pub edges: usize,
    /// Number of connected components of `[G:S]`.
    pub b0: usize,
    /// First Betti number of `[G:S]`.
    pub b1: usize,
    /// Vertex sets of the components, sorted by minimal vertex.
    pub components: Vec<Vec<usize>>,
    /// `component_of[v]` is the index of `v`'s component in `components`.
    pub component_of: Vec<usize>,
}

/// How adding an edge to a state changes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeAddition {
    /// Both endpoints lie in one component: `b0` stays, `b1` grows by one.
    ClosesCycle { component: usize },
    /// Endpoints lie in two components which merge: `b0` drops by one.
    Merges { first: usize, second: usize },
}

impl StateStats {
    pub fn classify_addition(&self, endpoints: (usize, usize)) -> EdgeAddition {
        let a = self.component_of[endpoints.0];
        let b = self.component_of[endpoints.1];
        if a == b {
            EdgeAddition::ClosesCycle { component: a }
        } else {
            EdgeAddition::Merges {
                first: a.min(b),
                second: a.max(b),
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Loop,
    Isthmus,
    Ordinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    Delete,
    Contract,
}

/// Wire form: `{"vertices": <int>, "edges": [[u,v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: i64,
    pub edges: Vec<[i64; 2]>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::EndpointOutOfRange {
                        edge: i,
                        endpoint: w as i64,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    /// Validates signed input, as read from JSON.
    pub fn build(vertex_count: i64, edges: &[(i64, i64)]) -> Result<Self> {
        if vertex_count < 0 {
            return Err(Error::NegativeVertexCount(vertex_count));
        }
        let n = vertex_count as usize;
        let mut out = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w < 0 || w >= vertex_count {
                    return Err(Error::EndpointOutOfRange {
                        edge: i,
                        endpoint: w,
                        vertex_count: n,
                    });
                }
            }
            out.push((u as usize, v as usize));
        }
        Self::new(n, out)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::GraphJson(e.to_string()))?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count as i64,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [u as i64, v as i64])
                .collect(),
        }
    }

    pub fn empty() -> Self {
        Self {
            vertex_count: 0,
            edges: Vec::new(),
        }
    }

    /// `k` vertices, no edges.
    pub fn isolated(k: usize) -> Self {
        Self {
            vertex_count: k,
            edges: Vec::new(),
        }
    }

    /// The path `T_n`: a tree with `n` edges on `n + 1` vertices.
    pub fn path(n: usize) -> Self {
        Self {
            vertex_count: n + 1,
            edges: (0..n).map(|i| (i, i + 1)).collect(),
        }
    }

    /// The bouquet `L_n`: one vertex carrying `n` loops.
    pub fn bouquet(n: usize) -> Self {
        Self {
            vertex_count: 1,
            edges: vec![(0, 0); n],
        }
    }

    /// `D_n`: two vertices joined by `n` parallel edges.
    pub fn multi_edge(n: usize) -> Self {
        Self {
            vertex_count: 2,
            edges: vec![(0, 1); n],
        }
    }

    /// The simple cycle `P_n` with `n` edges (`P_1` is a loop, `P_2` the bigon).
    pub fn cycle(n: usize) -> Self {
        match n {
            0 => Self::isolated(1),
            1 => Self::bouquet(1),
            _ => Self {
                vertex_count: n,
                edges: (0..n).map(|i| (i, (i + 1) % n)).collect(),
            },
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges
            .get(e)
            .copied()
            .ok_or(Error::EdgeIndexOutOfRange {
                index: e,
                edge_count: self.edges.len(),
            })
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    pub fn full_state(&self) -> Result<StateSubset> {
        StateSubset::full(self.edges.len())
    }

    fn check_state(&self, s: StateSubset) -> Result<()> {
        if s.width() != self.edges.len() {
            return Err(Error::StateWidthMismatch {
                state: s.width(),
                graph: self.edges.len(),
            });
        }
        Ok(())
    }

    /// `(b0, b1)` of `[G:S]` without building the component list.
    pub fn betti(&self, s: StateSubset) -> Result<(usize, usize)> {
        self.check_state(s)?;
        Ok(self.betti_of_mask(s.mask()))
    }

    pub(crate) fn betti_of_mask(&self, mask: u64) -> (usize, usize) {
        let mut dsu = DisjointSets::new(self.vertex_count);
        let mut size = 0;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dsu.union(u, v);
                size += 1;
            }
        }
        let b0 = dsu.count();
        (b0, size + b0 - self.vertex_count)
    }

    pub fn state_stats(&self, s: StateSubset) -> Result<StateStats> {
        self.check_state(s)?;
        let mut dsu = DisjointSets::new(self.vertex_count);
        for e in s.edges() {
            let (u, v) = self.edges[e];
            dsu.union(u, v);
        }
        let mut root_slot = vec![usize::MAX; self.vertex_count];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut component_of = vec![0; self.vertex_count];
        // ascending vertex scan yields components sorted by minimal vertex
        for (v, slot) in component_of.iter_mut().enumerate() {
            let r = dsu.find(v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = components.len();
                components.push(Vec::new());
            }
            *slot = root_slot[r];
            components[root_slot[r]].push(v);
        }
        let b0 = components.len();
        let edges = s.len();
        Ok(StateStats {
            edges,
            b0,
            b1: edges + b0 - self.vertex_count,
            components,
            component_of,
        })
    }

    pub fn classify_edge(&self, e: usize) -> Result<EdgeKind> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Ok(EdgeKind::Loop);
        }
        let all = (1u64 << self.edges.len()) - 1;
        let (with, _) = self.betti_of_mask(all);
        let (without, _) = self.betti_of_mask(all & !(1 << e));
        Ok(if without > with {
            EdgeKind::Isthmus
        } else {
            EdgeKind::Ordinary
        })
    }

    pub fn reduce(&self, e: usize, mode: Reduction) -> Result<Self> {
        match mode {
            Reduction::Delete => self.delete_edge(e),
            Reduction::Contract => self.contract_edge(e),
        }
    }

    /// `G - e`; vertices are kept.
    pub fn delete_edge(&self, e: usize) -> Result<Self> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Self {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// `G / e`. The endpoints merge into the smaller label, higher labels
    /// shift down by one, and surviving parallel edges become loops.
    pub fn contract_edge(&self, e: usize) -> Result<Self> {
        let (u, v) = self.edge(e)?;
        if u == v {
            return Err(Error::ContractLoop(e));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            if w == gone {
                keep
            } else if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)))
            .collect();
        Ok(Self {
            vertex_count: self.vertex_count - 1,
            edges,
        })
    }

    /// `G_sigma`: the edge at new position `i` is old edge `sigma[i]`.
    pub fn permute_edges(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.edges.len();
        if sigma.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "length {} for {} edges",
                sigma.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &s in sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!("{sigma:?}")));
            }
        }
        Ok(Self {
            vertex_count: self.vertex_count,
            edges: sigma.iter().map(|&s| self.edges[s]).collect(),
        })
    }

    /// Spanning subgraph `Γ` on the given edges, in their induced order.
    pub fn spanning_subgraph(&self, subset: &[usize]) -> Result<Self> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::NotASubgraph(format!("repeated edge in {subset:?}")));
        }
        if let Some(&bad) = sorted.iter().find(|&&e| e >= self.edges.len()) {
            return Err(Error::NotASubgraph(format!(
                "edge {bad} not in a graph with {} edges",
                self.edges.len()
            )));
        }
        Ok(Self {
            vertex_count: self.vertex_count,
            edges: sorted.iter().map(|&e| self.edges[e]).collect(),
        })
    }

    /// Disjoint union; `other`'s vertices and edges come after `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Self {
            vertex_count: self.vertex_count + other.vertex_count,
            edges,
        }
    }

    /// One-point union `H·K` identifying vertex `at_self` with `at_other`.
    pub fn wedge(&self, at_self: usize, other: &Self, at_other: usize) -> Result<Self> {
        if at_self >= self.vertex_count || at_other >= other.vertex_count {
            return Err(Error::EndpointOutOfRange {
                edge: 0,
                endpoint: at_self.max(at_other) as i64,
                vertex_count: self.vertex_count.min(other.vertex_count),
            });
        }
        let shift = self.vertex_count;
        let relabel = |w: usize| {
            if w == at_other {
                at_self
            } else if w > at_other {
                shift + w - 1
            } else {
                shift + w
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (relabel(a), relabel(b))));
        Ok(Self {
            vertex_count: self.vertex_count + other.vertex_count - 1,
            edges,
        })
    }

    /// Splits into connected components, each relabelled in vertex order.
    pub fn components(&self) -> Vec<Self> {
        let Ok(full) = self.full_state() else {
            return vec![self.clone()];
        };
        let stats = self
            .state_stats(full)
            .expect("full state matches the graph");
        let mut local = vec![0; self.vertex_count];
        for comp in &stats.components {
            for (i, &v) in comp.iter().enumerate() {
                local[v] = i;
            }
        }
        let mut out: Vec<Self> = stats
            .components
            .iter()
            .map(|c| Self::isolated(c.len()))
            .collect();
        for &(u, v) in &self.edges {
            out[stats.component_of[u]].edges.push((local[u], local[v]));
        }
        out
    }
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let edges: Vec<(i64, i64)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::build(raw.vertices, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigon() -> Multigraph {
        Multigraph::build(2, &[(0, 1), (0, 1)]).unwrap()
    }

    fn triangle() -> Multigraph {
        Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let p2 = bigon();
        assert_eq!(p2.edges(), &[(0, 1), (0, 1)]);
        assert_eq!(Multigraph::build(0, &[]).unwrap(), Multigraph::empty());
        assert_eq!(Multigraph::build(1, &[(0, 0)]).unwrap(), Multigraph::bouquet(1));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Multigraph::build(-1, &[]),
            Err(Error::NegativeVertexCount(-1))
        );
        assert!(matches!(
            Multigraph::build(2, &[(0, 2)]),
            Err(Error::EndpointOutOfRange { endpoint: 2, .. })
        ));
        assert!(Multigraph::build(2, &[(-1, 0)]).is_err());
    }

    #[test]
    fn edge_order_is_identity() {
        let a = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let b = Multigraph::new(3, vec![(1, 2), (0, 1)]).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.permute_edges(&[1, 0]).unwrap(), b);
    }

    #[test]
    fn state_stats_of_bigon() {
        let p2 = bigon();
        let s = p2.state_stats(StateSubset::new(0b00, 2).unwrap()).unwrap();
        assert_eq!((s.b0, s.b1), (2, 0));
        assert_eq!(s.components, vec![vec![0], vec![1]]);
        let s = p2.state_stats(StateSubset::new(0b11, 2).unwrap()).unwrap();
        assert_eq!((s.b0, s.b1), (1, 1));
        let l1 = Multigraph::bouquet(1);
        let s = l1.state_stats(StateSubset::new(1, 1).unwrap()).unwrap();
        assert_eq!((s.b0, s.b1), (1, 1));
    }

    #[test]
    fn state_width_mismatch() {
        assert_eq!(
            bigon().state_stats(StateSubset::new(0, 3).unwrap()),
            Err(Error::StateWidthMismatch { state: 3, graph: 2 })
        );
        assert!(StateSubset::new(0b100, 2).is_err());
    }

    #[test]
    fn components_sorted_by_min_vertex() {
        let g = Multigraph::new(5, vec![(3, 1), (4, 0)]).unwrap();
        let s = g.state_stats(g.full_state().unwrap()).unwrap();
        assert_eq!(s.components, vec![vec![0, 4], vec![1, 3], vec![2]]);
        assert_eq!(s.component_of, vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn classify() {
        assert_eq!(bigon().classify_edge(0).unwrap(), EdgeKind::Ordinary);
        assert_eq!(Multigraph::path(1).classify_edge(0).unwrap(), EdgeKind::Isthmus);
        assert_eq!(Multigraph::bouquet(1).classify_edge(0).unwrap(), EdgeKind::Loop);
        assert!(matches!(
            bigon().classify_edge(2),
            Err(Error::EdgeIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn reductions() {
        let p2 = bigon();
        assert_eq!(p2.contract_edge(0).unwrap(), Multigraph::bouquet(1));
        assert_eq!(p2.delete_edge(1).unwrap(), Multigraph::path(1));
        assert_eq!(triangle().contract_edge(0).unwrap(), Multigraph::multi_edge(2));
        assert_eq!(
            Multigraph::bouquet(1).reduce(0, Reduction::Contract),
            Err(Error::ContractLoop(0))
        );
    }

    #[test]
    fn deleting_isolates_keeps_vertices() {
        let t = Multigraph::path(1).delete_edge(0).unwrap();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.betti(StateSubset::empty(0).unwrap()).unwrap(), (2, 0));
    }

    #[test]
    fn invalid_permutations() {
        let g = triangle();
        assert!(g.permute_edges(&[0, 1]).is_err());
        assert!(g.permute_edges(&[0, 0, 1]).is_err());
        assert!(g.permute_edges(&[0, 1, 3]).is_err());
    }

    #[test]
    fn wedge_and_components() {
        let w = Multigraph::path(1)
            .wedge(1, &Multigraph::bouquet(1), 0)
            .unwrap();
        assert_eq!(w.vertex_count(), 2);
        assert_eq!(w.edges(), &[(0, 1), (1, 1)]);
        let u = triangle().disjoint_union(&Multigraph::bouquet(2));
        let parts = u.components();
        assert_eq!(parts, vec![triangle(), Multigraph::bouquet(2)]);
    }

    #[test]
    fn json_round_trip() {
        let g = Multigraph::from_json_str(r#"{"vertices": 2, "edges": [[0,1],[0,1]]}"#).unwrap();
        assert_eq!(g, bigon());
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(text, r#"{"vertices":2,"edges":[[0,1],[0,1]]}"#);
        assert!(Multigraph::from_json_str(r#"{"vertices": 1, "edges": [[0,1]]}"#).is_err());
        assert!(Multigraph::from_json_str(r#"{"vertices": 1}"#).is_err());
    }

    #[test]
    fn lemma_adding_edge_exhaustive() {
        // every (S, e ∉ S) falls in exactly one case of the adding-edge lemma
        let graphs = [
            triangle(),
            bigon(),
            Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1), (1, 3), (2, 3)])
                .unwrap(),
        ];
        for g in graphs {
            let n = g.edge_count();
            for mask in 0..1u64 << n {
                let s = StateSubset::new(mask, n).unwrap();
                let before = g.state_stats(s).unwrap();
                assert_eq!(before.b1 + g.vertex_count(), s.len() + before.b0);
                for e in (0..n).filter(|&e| !s.contains(e)) {
                    let after = g.state_stats(s.with(e)).unwrap();
                    let same = after.b0 == before.b0 && after.b1 == before.b1 + 1;
                    let merge = after.b0 + 1 == before.b0 && after.b1 == before.b1;
                    assert!(same ^ merge);
                    let case = before.classify_addition(g.edges()[e]);
                    assert_eq!(matches!(case, EdgeAddition::ClosesCycle { .. }), same);
                }
            }
        }
    }

    #[test]
    fn isthmus_deletion_raises_b0() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
        for e in 0..g.edge_count() {
            if g.classify_edge(e).unwrap() == EdgeKind::Isthmus {
                let h = g.delete_edge(e).unwrap();
                let (b0g, _) = g.betti(g.full_state().unwrap()).unwrap();
                let (b0h, _) = h.betti(h.full_state().unwrap()).unwrap();
                assert_eq!(b0h, b0g + 1);
            }
        }
        assert_eq!(g.classify_edge(3).unwrap(), EdgeKind::Isthmus);
    }
}
