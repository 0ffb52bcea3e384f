use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::FamilySpec;
use crate::game::{GameConfig, GameState, Move, Player};
use crate::graph::{Graph, Vertex, VertexSet};

use super::{encode_move, encode_opt, first_legal, immediate_win, not_applicable, require, require_palette, Strategy, StrategySpec};

/// Two cycles of `G` through `hub` sharing no other vertex (hence edge-disjoint).
/// Each cycle is listed without the hub: `hub, v_1, …, v_p, hub`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePair {
    pub hub: Vertex,
    pub cycles: [Vec<Vertex>; 2],
}

impl CyclePair {
    pub fn vertices(&self) -> VertexSet {
        let mut s = VertexSet::singleton(self.hub);
        for c in &self.cycles {
            s = s.union(c.iter().copied().collect());
        }
        s
    }
}

const CYCLE_ENUMERATION_CAP: usize = 4000;

/// Simple cycles through `hub` avoiding `avoid`, each once, shortest first.
fn cycles_through(g: &Graph, hub: Vertex, avoid: VertexSet) -> Vec<Vec<Vertex>> {
    fn extend(
        g: &Graph,
        hub: Vertex,
        allowed: VertexSet,
        path: &mut Vec<Vertex>,
        seen: VertexSet,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if out.len() >= CYCLE_ENUMERATION_CAP {
            return;
        }
        let last = *path.last().unwrap();
        // close the cycle; orient so the first vertex is below the last
        if path.len() >= 2 && g.has_edge(last, hub) && path[0] < last {
            out.push(path.clone());
        }
        for next in g.neighborhood(last).intersection(allowed).difference(seen) {
            path.push(next);
            let mut s = seen;
            s.insert(next);
            extend(g, hub, allowed, path, s, out);
            path.pop();
        }
    }
    let allowed = g.vertices().difference(avoid).difference(VertexSet::singleton(hub));
    let mut out = Vec::new();
    for first in g.neighborhood(hub).intersection(allowed) {
        let mut path = vec![first];
        extend(g, hub, allowed, &mut path, VertexSet::singleton(first), &mut out);
    }
    out.sort_by_key(Vec::len);
    out
}

/// A pair of cycles meeting only at one vertex, avoiding `avoid`; hubs are tried in
/// increasing order and, per hub, the pair with the fewest vertices wins.
pub fn touching_cycle_pair(g: &Graph, avoid: VertexSet) -> Option<CyclePair> {
    for hub in g.vertices().difference(avoid) {
        let cycles = cycles_through(g, hub, avoid);
        let sets: Vec<VertexSet> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if sets[i].intersection(sets[j]).is_empty() {
                    let size = cycles[i].len() + cycles[j].len();
                    if best.map_or(true, |b| size < b.0) {
                        best = Some((size, i, j));
                    }
                }
            }
        }
        if let Some((_, i, j)) = best {
            return Some(CyclePair {
                hub,
                cycles: [cycles[i].clone(), cycles[j].clone()],
            });
        }
    }
    None
}

/// One cycle of a pair in `S(G)` labels: the old vertices to walk and every
/// vertex of the subdivided cycle other than the hub.
#[derive(Clone, Debug)]
struct Walk {
    old: Vec<Vertex>,
    touched: VertexSet,
}

#[derive(Clone, Debug)]
struct SubdividedPair {
    hub: Vertex,
    walks: [Walk; 2],
}

impl SubdividedPair {
    fn touched(&self) -> VertexSet {
        self.walks[0]
            .touched
            .union(self.walks[1].touched)
            .union(VertexSet::singleton(self.hub))
    }
}

/// Bob on `S(G)` with palette `[2]`. B-game: open the hub with 1, pick the cycle
/// Alice did not touch and color its old vertices 1 in order. A-game: needs two
/// vertex-disjoint pairs; Bob answers Alice's opening at the hub of the pair she
/// avoided, then walks as in the B-game.
#[derive(Clone, Debug)]
pub struct BobSubdivision {
    base: FamilySpec,
    pairs: Vec<SubdividedPair>,
    pair: Option<usize>,
    walk: Option<usize>,
    last_alice: Option<Move>,
}

impl BobSubdivision {
    pub fn new(config: &GameConfig, base: &FamilySpec) -> Result<BobSubdivision> {
        const ID: &str = "bob_subdivision";
        require_palette(config, ID, 2)?;
        let g = base.generate()?;
        let s = g.subdivision()?;
        require(s == config.graph, || format!("the graph is not S({base})"))?;
        let needed = if config.first == Player::Bob { 1 } else { 2 };
        let mut pairs = Vec::new();
        let mut used = VertexSet::EMPTY;
        while pairs.len() < needed {
            let p = touching_cycle_pair(&g, used).ok_or_else(|| {
                not_applicable(format!(
                    "{base} lacks {needed} vertex-disjoint pairs of cycles meeting in one vertex"
                ))
            })?;
            used = used.union(p.vertices());
            pairs.push(p);
        }
        let index: HashMap<(Vertex, Vertex), Vertex> = g
            .edges()
            .into_iter()
            .enumerate()
            .map(|(i, e)| (e, g.order() + i))
            .collect();
        let mid = |a: Vertex, b: Vertex| index[&(a.min(b), a.max(b))];
        let pairs = pairs
            .iter()
            .map(|p| SubdividedPair {
                hub: p.hub,
                walks: [0, 1].map(|i| {
                    let old = p.cycles[i].clone();
                    let mut touched: VertexSet = old.iter().copied().collect();
                    let mut prev = p.hub;
                    for &v in old.iter().chain(std::iter::once(&p.hub)) {
                        touched.insert(mid(prev, v));
                        prev = v;
                    }
                    Walk { old, touched }
                }),
            })
            .collect();
        Ok(BobSubdivision {
            base: base.clone(),
            pairs,
            pair: None,
            walk: None,
            last_alice: None,
        })
    }

    fn scripted(&mut self, state: &GameState, last: Option<Move>) -> Option<Move> {
        let Some(p) = self.pair else {
            let p = match last {
                // A-game: the pair Alice's opening did not touch
                Some(m) => self.pairs.iter().position(|q| !q.touched().contains(m.vertex))?,
                None => 0,
            };
            self.pair = Some(p);
            return Some(Move::new(self.pairs[p].hub, 1));
        };
        let pair = &self.pairs[p];
        let w = *self.walk.get_or_insert_with(|| match last {
            Some(m) if pair.walks[0].touched.contains(m.vertex) => 1,
            _ => 0,
        });
        let walk = &pair.walks[w];
        walk.old
            .iter()
            .find(|&&v| state.color(v).is_none())
            .map(|&v| Move::new(v, 1))
    }
}

impl Strategy for BobSubdivision {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BobSubdivision {
            base: Some(self.base.clone()),
        }
    }

    fn side(&self) -> Player {
        Player::Bob
    }

    fn observe(&mut self, _after: &GameState, mv: Move, by: Player) {
        if by == Player::Alice {
            self.last_alice = Some(mv);
        }
    }

    fn choose(&mut self, state: &GameState) -> Move {
        let last = self.last_alice.take();
        if let Some(mv) = immediate_win(state, Player::Bob) {
            return mv;
        }
        self.scripted(state, last)
            .filter(|m| state.color(m.vertex).is_none())
            .unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        let last = encode_move(self.last_alice);
        Some(vec![encode_opt(self.pair), encode_opt(self.walk), last[0], last[1]])
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn bowtie_pair() {
        let p = touching_cycle_pair(&graph("bowtie"), VertexSet::EMPTY).unwrap();
        assert_eq!(p.hub, 2);
        assert_eq!(p.cycles, [vec![0, 1], vec![3, 4]]);
    }

    #[test]
    fn no_pair_in_a_single_cycle() {
        assert!(touching_cycle_pair(&graph("cycle:6"), VertexSet::EMPTY).is_none());
        // K_4 has no two cycles meeting in exactly one vertex
        assert!(touching_cycle_pair(&graph("complete:4"), VertexSet::EMPTY).is_none());
    }

    #[test]
    fn grid_pairs() {
        let g = graph("grid:3,3");
        let p = touching_cycle_pair(&g, VertexSet::EMPTY).unwrap();
        assert_eq!(p.hub, 4);
        assert_eq!(p.vertices().len(), 7);
        let g = graph("grid:3,6");
        let p = touching_cycle_pair(&g, VertexSet::EMPTY).unwrap();
        assert!(touching_cycle_pair(&g, p.vertices()).is_some());
    }

    #[test]
    fn opening_and_applicability() {
        let s = graph("subdivision(bowtie)");
        let c = GameConfig::new(s, 2, Player::Bob).unwrap();
        let mut bob = BobSubdivision::new(&c, &"bowtie".parse().unwrap()).unwrap();
        assert_eq!(bob.choose(&GameState::new(c.clone())), Move::new(2, 1));
        let a = GameConfig::new(c.graph.clone(), 2, Player::Alice).unwrap();
        assert!(BobSubdivision::new(&a, &"bowtie".parse().unwrap()).is_err());
        assert!(BobSubdivision::new(&c, &"cycle:5".parse().unwrap()).is_err());
    }
}
