//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitmasks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order; adjacency rows are `u64` masks.
pub const MAX_ORDER: usize = 64;

pub type Vertex = usize;

/// A set of vertices of a bound graph, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: Vertex) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<Vertex> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = Vertex;
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Labeled simple undirected graph on vertices `0..order`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adj: Vec<u64>,
    tag: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tag: Option<String>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Graph> {
        Ok(Graph::from_edge_list(r.order, &r.edges)?.with_tag_opt(r.tag))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            order: g.order(),
            edges: g.edges(),
            tag: g.tag,
        }
    }
}

impl PartialEq for Graph {
    // Structural equality; the tag is a label only.
    fn eq(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Graph");
        if let Some(tag) = &self.tag {
            d.field("tag", tag);
        }
        d.field("order", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::input("graph order must be at least 1"));
        }
        if n > MAX_ORDER {
            return Err(Error::capacity(format!(
                "graph order {n} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        Ok(Graph {
            adj: vec![0; n],
            tag: None,
        })
    }

    /// Builds a graph from an edge list; duplicate edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{n}"
            )));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Graph {
        self.tag = Some(tag.into());
        self
    }

    fn with_tag_opt(mut self, tag: Option<String>) -> Graph {
        self.tag = tag;
        self
    }

    pub fn tag(&self) -> Option<&str> {
        self.tag.as_deref()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order() && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in VertexSet(self.adj[u] & !((2u64 << u) - 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighborhood(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        if v >= self.order() {
            return Err(Error::input(format!(
                "vertex {v} outside 0..{}",
                self.order()
            )));
        }
        Ok(self.closed_nbhd(v))
    }

    /// Unchecked `N[v]` for hot paths.
    #[inline]
    pub(crate) fn closed_nbhd(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    pub(crate) fn adjacency_bits(&self) -> &[u64] {
        &self.adj
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        let all = self.vertices();
        (0..self.order())
            .filter(|&v| self.closed_nbhd(v) == all)
            .collect()
    }

    pub fn leaf_support_profile(&self) -> LeafSupportProfile {
        let leaves: VertexSet = (0..self.order()).filter(|&v| self.degree(v) == 1).collect();
        let mut supports = VertexSet::EMPTY;
        let mut strong = VertexSet::EMPTY;
        for v in 0..self.order() {
            let c = self.neighborhood(v).intersection(leaves).len();
            if c >= 1 {
                supports.insert(v);
            }
            if c >= 2 {
                strong.insert(v);
            }
        }
        LeafSupportProfile {
            leaves,
            supports,
            strong_supports: strong,
        }
    }

    /// Subgraph induced by `keep`, relabeled to `0..|keep|` in increasing order.
    /// Returns the graph and the map from new labels to old ones.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        let map: Vec<Vertex> = keep.iter().collect();
        let mut g = Graph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok((g, map))
    }

    /// The vertices reachable from `start` inside `within`.
    pub fn component_within(&self, start: Vertex, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for v in frontier {
                next |= self.adj[v];
            }
            let next = VertexSet(next).intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by least vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_within(v, within);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_within(0, self.vertices()) == self.vertices()
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.size() + self.components_within(self.vertices()).len() == self.order()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size() + 1 == self.order()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n || VertexSet::from_iter(perm.iter().copied()) != self.vertices() {
            return Err(Error::input("relabeling is not a permutation of the vertex set"));
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .map(|(u, v)| (perm[u], perm[v]))
            .collect();
        Ok(Graph::from_edge_list(n, &edges)?.with_tag_opt(self.tag.clone()))
    }

    /// `G − e`.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        g.tag = None;
        g
    }

    /// Cartesian product `G □ H`; vertex `(g, h)` gets label `g * |H| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph> {
        let (n, m) = (self.order(), other.order());
        let mut g = Graph::empty(n * m)?;
        for a in 0..n {
            for b in 0..m {
                let id = a * m + b;
                for b2 in other.neighborhood(b) {
                    if b2 > b {
                        g.add_edge(id, a * m + b2)?;
                    }
                }
                for a2 in self.neighborhood(a) {
                    if a2 > a {
                        g.add_edge(id, a2 * m + b)?;
                    }
                }
            }
        }
        Ok(g)
    }

    /// Corona `G ∘ K_1`: leaf `v + n` is attached to each vertex `v`.
    pub fn corona(&self) -> Result<Graph> {
        let n = self.order();
        let mut g = Graph::empty(2 * n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for v in 0..n {
            g.add_edge(v, v + n)?;
        }
        Ok(g)
    }

    /// Subdivision `S(G)`: old vertices keep their labels, the edge with index `i`
    /// in [`Graph::edges`] order becomes the new vertex `n + i`.
    pub fn subdivision(&self) -> Result<Graph> {
        let n = self.order();
        let edges = self.edges();
        let mut g = Graph::empty(n + edges.len())?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(u, n + i)?;
            g.add_edge(v, n + i)?;
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order();
        let mut g = Graph::empty(n + other.order())?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + n, v + n)?;
        }
        Ok(g)
    }

    /// Parses the edge-list text format: a header line `n m`, then `m` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut offset = 0;
        let mut lines = Vec::new();
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                lines.push((offset, trimmed));
            }
            offset += line.len();
        }
        let parse_pair = |(off, line): (usize, &str)| -> Result<(usize, usize)> {
            let mut it = line.split_whitespace();
            let bad = || Error::Parse {
                offset: off,
                message: format!("expected two non-negative integers, found {line:?}"),
            };
            let a = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let b = it.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((a, b))
        };
        let mut iter = lines.into_iter();
        let header = iter.next().ok_or(Error::Parse {
            offset: 0,
            message: "missing header line".into(),
        })?;
        let (n, m) = parse_pair(header)?;
        let edges = iter.map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::Parse {
                offset,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_edge_list_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.order(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// Leaves, support vertices and strong supports of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeafSupportProfile {
    pub leaves: VertexSet,
    pub supports: VertexSet,
    pub strong_supports: VertexSet,
}

impl LeafSupportProfile {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn support_count(&self) -> usize {
        self.supports.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let p4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (1, 0)]).unwrap();
        assert_eq!(p4.size(), 3);
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);

        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(k1.min_degree(), 0);

        let bowtie =
            Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.degree(2), 4);
        assert_eq!(bowtie.size(), 6);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::Input(_))
        ));
        assert!(Graph::from_edge_list(0, &[]).is_err());
        assert!(matches!(Graph::empty(65), Err(Error::Capacity(_))));
    }

    #[test]
    fn closed_neighborhoods() {
        assert_eq!(path(4).closed_neighborhood(0).unwrap(), [0, 1].into_iter().collect());
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.closed_neighborhood(2).unwrap(), k4.vertices());
        assert_eq!(cycle(5).closed_neighborhood(3).unwrap(), [2, 3, 4].into_iter().collect());
        assert!(path(4).closed_neighborhood(4).is_err());
    }

    #[test]
    fn leaf_support_profiles() {
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = star.leaf_support_profile();
        assert_eq!(p.leaves, [1, 2, 3].into_iter().collect());
        assert_eq!(p.supports, VertexSet::singleton(0));
        assert_eq!(p.strong_supports, VertexSet::singleton(0));

        let p = path(4).leaf_support_profile();
        assert_eq!(p.leaves, [0, 3].into_iter().collect());
        assert_eq!(p.supports, [1, 2].into_iter().collect());
        assert!(p.strong_supports.is_empty());
        assert_eq!((p.leaf_count(), p.support_count()), (2, 2));

        let p = cycle(6).leaf_support_profile();
        assert!(p.leaves.is_empty() && p.supports.is_empty() && p.strong_supports.is_empty());
    }

    #[test]
    fn products_and_operations() {
        let grid = path(2).cartesian_product(&path(3)).unwrap();
        assert_eq!((grid.order(), grid.size()), (6, 7));

        let corona = cycle(3).corona().unwrap();
        assert_eq!(corona.order(), 6);
        for v in 0..3 {
            assert!(corona.has_edge(v, v + 3));
            assert_eq!(corona.degree(v + 3), 1);
        }

        let bowtie =
            Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let s = bowtie.subdivision().unwrap();
        assert_eq!((s.order(), s.size()), (11, 12));
        // edge (0,1) is the first edge in lexicographic order
        assert!(s.has_edge(0, 5) && s.has_edge(1, 5));
        assert!(s.is_triangle_free());
    }

    #[test]
    fn structure_queries() {
        assert!(path(5).is_tree());
        assert!(!cycle(5).is_forest());
        let two_p2 = path(4).without_edge(1, 2);
        assert!(two_p2.is_forest() && !two_p2.is_connected());
        assert_eq!(two_p2.components_within(two_p2.vertices()).len(), 2);
    }

    #[test]
    fn edge_list_text_format() {
        let g = Graph::parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g, path(4));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list_text()).unwrap(), g);
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 1\n0 x\n"),
            Err(Error::Parse { offset: 4, .. })
        ));
    }
}
