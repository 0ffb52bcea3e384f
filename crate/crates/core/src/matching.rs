//! Maximum-cardinality matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const MATCHING_MAX_ORDER: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    order: usize,
    /// Matched edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.edges.len() == self.order
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

const NONE: usize = usize::MAX;

pub fn maximum_matching(g: &Graph) -> Result<Matching> {
    let n = g.order();
    if n > MATCHING_MAX_ORDER {
        return Err(Error::capacity(format!(
            "matching limited to {MATCHING_MAX_ORDER} vertices, got {n}"
        )));
    }
    let mut b = Blossom::new(g);
    // greedy start
    for u in 0..n {
        if b.mate[u] == NONE {
            if let Some(v) = g.neighborhood(u).iter().find(|&v| b.mate[v] == NONE) {
                b.mate[u] = v;
                b.mate[v] = u;
            }
        }
    }
    for root in 0..n {
        if b.mate[root] == NONE {
            if let Some(end) = b.find_augmenting_path(root) {
                b.augment(end);
            }
        }
    }
    let mut edges: Vec<_> = (0..n)
        .filter(|&u| b.mate[u] != NONE && u < b.mate[u])
        .map(|u| (u, b.mate[u]))
        .collect();
    edges.sort_unstable();
    Ok(Matching { order: n, edges })
}

pub fn has_perfect_matching(g: &Graph) -> Result<bool> {
    Ok(maximum_matching(g)?.is_perfect())
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in self.g.neighborhood(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use proptest::prelude::*;

    fn g(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    /// Exhaustive maximum matching size.
    fn brute_force_size(g: &Graph) -> usize {
        fn go(g: &Graph, free: u64) -> usize {
            if free == 0 {
                return 0;
            }
            let v = free.trailing_zeros() as usize;
            let rest = free & !(1 << v);
            let mut best = go(g, rest);
            for u in g.neighborhood(v) {
                if rest >> u & 1 == 1 {
                    best = best.max(1 + go(g, rest & !(1 << u)));
                }
            }
            best
        }
        go(g, g.vertices().bits())
    }

    #[test]
    fn small_families() {
        let m = maximum_matching(&g("path:4")).unwrap();
        assert_eq!(m.edges, vec![(0, 1), (2, 3)]);
        assert!(m.is_perfect());
        let m = maximum_matching(&g("path:5")).unwrap();
        assert_eq!(m.size(), 2);
        assert!(!m.is_perfect());
        let m = maximum_matching(&g("cycle:6")).unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.is_perfect());
        assert_eq!(m.partner(m.edges[0].0), Some(m.edges[0].1));
    }

    #[test]
    fn odd_cycle_blossom() {
        // triangle with a pendant path forces a blossom contraction
        let graph = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (1, 5)]).unwrap();
        assert!(maximum_matching(&graph).unwrap().is_perfect());
        assert!(maximum_matching(&g("grid:3,4")).unwrap().is_perfect());
        assert!(!maximum_matching(&g("grid:3,3")).unwrap().is_perfect());
        assert!(maximum_matching(&g("path:33")).is_err());
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(n in 1usize..11, bits in any::<u64>()) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits >> (k % 64) & 1 == 1 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let graph = Graph::from_edge_list(n, &edges).unwrap();
            let m = maximum_matching(&graph).unwrap();
            prop_assert_eq!(m.size(), brute_force_size(&graph));
            let mut seen = 0u64;
            for &(u, v) in &m.edges {
                prop_assert!(graph.has_edge(u, v));
                prop_assert_eq!(seen & (1 << u | 1 << v), 0);
                seen |= 1 << u | 1 << v;
            }
        }
    }
}
