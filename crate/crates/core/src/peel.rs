//! Forest peeling: repeatedly strip all leaves and support vertices.
//!
//! `F_0` is the input forest and `F_i = F_{i-1} - (L(F_{i-1}) ∪ S(F_{i-1}))`.
//! Peeling stops at the first layer that has an isolated vertex or a
//! "large" star `K_{1,r}` (`r >= 2`) as a component, or when nothing is left.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeelTerminal {
    IsolatedVertex { layer: usize, vertex: Vertex },
    LargeStar { layer: usize, center: Vertex },
    Exhausted,
}

/// Layers are vertex subsets of the input graph; labels are never renumbered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelSequence {
    pub layers: Vec<VertexSet>,
    /// `L(F_i)` for each layer, computed inside `F_i`.
    pub leaves: Vec<VertexSet>,
    /// `S(F_i)` for each layer, computed inside `F_i`.
    pub supports: Vec<VertexSet>,
    pub terminal: PeelTerminal,
}

impl PeelSequence {
    /// Index `q` of the last layer.
    pub fn last_layer(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_graph(&self, g: &Graph, i: usize) -> Result<(Graph, Vec<Vertex>)> {
        g.induced_subgraph(self.layers[i])
    }

    /// The layer `i` with `v ∈ L(F_i) ∪ S(F_i)`, if `v` was stripped.
    pub fn stripped_at(&self, v: Vertex) -> Option<usize> {
        (0..self.leaves.len()).find(|&i| self.leaves[i].contains(v) || self.supports[i].contains(v))
    }
}

fn degree_within(g: &Graph, v: Vertex, within: VertexSet) -> usize {
    g.neighborhood(v).intersection(within).len()
}

/// Leaves and supports of the subgraph induced by `within`.
pub fn leaves_and_supports_within(g: &Graph, within: VertexSet) -> (VertexSet, VertexSet) {
    let leaves: VertexSet = within
        .iter()
        .filter(|&v| degree_within(g, v, within) == 1)
        .collect();
    let supports: VertexSet = within
        .iter()
        .filter(|&v| !g.neighborhood(v).intersection(leaves).is_empty())
        .collect();
    (leaves, supports)
}

fn classify_layer(g: &Graph, layer: usize, within: VertexSet) -> Option<PeelTerminal> {
    let comps = g.components_within(within);
    if let Some(c) = comps.iter().find(|c| c.len() == 1) {
        return Some(PeelTerminal::IsolatedVertex {
            layer,
            vertex: c.first().unwrap(),
        });
    }
    comps.iter().find_map(|&c| {
        if c.len() < 3 {
            return None;
        }
        c.iter()
            .find(|&v| degree_within(g, v, c) == c.len() - 1)
            .filter(|_| c.iter().filter(|&u| degree_within(g, u, c) == 1).count() == c.len() - 1)
            .map(|center| PeelTerminal::LargeStar { layer, center })
    })
}

pub fn forest_peel_sequence(g: &Graph) -> Result<PeelSequence> {
    if !g.is_forest() {
        return Err(Error::input("forest peeling requires an acyclic graph"));
    }
    let mut layers = vec![g.vertices()];
    let mut leaves = Vec::new();
    let mut supports = Vec::new();
    loop {
        let i = layers.len() - 1;
        let current = layers[i];
        if let Some(terminal) = classify_layer(g, i, current) {
            return Ok(PeelSequence {
                layers,
                leaves,
                supports,
                terminal,
            });
        }
        let (l, s) = leaves_and_supports_within(g, current);
        let next = current.difference(l.union(s));
        leaves.push(l);
        supports.push(s);
        if next.is_empty() {
            return Ok(PeelSequence {
                layers,
                leaves,
                supports,
                terminal: PeelTerminal::Exhausted,
            });
        }
        layers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn g(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn star_terminates_immediately() {
        let star = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = forest_peel_sequence(&star).unwrap();
        assert_eq!(p.terminal, PeelTerminal::LargeStar { layer: 0, center: 0 });
        assert_eq!(p.layers.len(), 1);
    }

    #[test]
    fn path_seven_ends_in_a_three_path() {
        // F_0 - {0,1,5,6} = {2,3,4} = P_3 = K_{1,2}
        let p = forest_peel_sequence(&g("path:7")).unwrap();
        assert_eq!(p.layers[1], [2, 3, 4].into_iter().collect());
        assert_eq!(p.terminal, PeelTerminal::LargeStar { layer: 1, center: 3 });
    }

    #[test]
    fn path_six_is_exhausted() {
        let p = forest_peel_sequence(&g("path:6")).unwrap();
        assert_eq!(p.layers, vec![VertexSet::full(6), [2, 3].into_iter().collect()]);
        assert_eq!(p.terminal, PeelTerminal::Exhausted);
        assert_eq!(p.stripped_at(3), Some(1));
    }

    #[test]
    fn isolated_vertex_terminal() {
        let p = forest_peel_sequence(&g("path:5")).unwrap();
        assert_eq!(p.terminal, PeelTerminal::IsolatedVertex { layer: 1, vertex: 2 });
        let p = forest_peel_sequence(&g("path:1")).unwrap();
        assert_eq!(p.terminal, PeelTerminal::IsolatedVertex { layer: 0, vertex: 0 });
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(forest_peel_sequence(&g("cycle:4")), Err(Error::Input(_))));
    }
}
