use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{Color, GameConfig, GameState, Move, Player};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::matching::has_perfect_matching;
use crate::peel::{forest_peel_sequence, PeelSequence, PeelTerminal};

use super::{encode_opt, first_legal, immediate_win, require, require_palette, Strategy, StrategySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeelerMode {
    /// Attack a support vertex with two or more leaves.
    StrongSupport { support: Vertex },
    /// Color vertices outside `L(T) ∪ S(T)` until Alice must enter it.
    Parity,
    /// Color the supports of `F_0, F_1, …` in order, then finish at `F_q`.
    Peel,
}

/// Bob's tree strategy with palette `[2]`.
#[derive(Clone, Debug)]
pub struct BobTreePeeler {
    mode: PeelerMode,
    peel: Arc<PeelSequence>,
    safe: VertexSet,
    /// Flood color; fixed on Bob's first move.
    color: Option<Color>,
    /// Alice's opening vertex in the A-game.
    anchor: Option<Vertex>,
}

impl BobTreePeeler {
    pub fn new(config: &GameConfig) -> Result<BobTreePeeler> {
        const ID: &str = "bob_tree_peeler";
        let g = &config.graph;
        require(g.order() >= 2 && g.is_tree(), || format!("{ID} needs a tree of order at least 2"))?;
        require_palette(config, ID, 2)?;
        let b_game = config.first == Player::Bob;
        if b_game {
            require(!has_perfect_matching(g)?, || {
                "the tree has a perfect matching, so Alice wins the B-game".into()
            })?;
        }
        let profile = g.leaf_support_profile();
        let even = g.order() % 2 == 0;
        let mode = if let Some(support) = profile.strong_supports.first() {
            PeelerMode::StrongSupport { support }
        } else if b_game != even {
            PeelerMode::Parity
        } else {
            PeelerMode::Peel
        };
        Ok(BobTreePeeler {
            mode,
            peel: Arc::new(forest_peel_sequence(g)?),
            safe: g.vertices().difference(profile.leaves.union(profile.supports)),
            color: None,
            anchor: None,
        })
    }

    pub fn mode(&self) -> PeelerMode {
        self.mode
    }

    pub fn peel_sequence(&self) -> &PeelSequence {
        &self.peel
    }

    fn strong_support_move(g: &Graph, state: &GameState, a: Vertex) -> Option<Move> {
        match state.color(a) {
            None => Some(Move::new(a, 1)),
            Some(c) => g
                .neighborhood(a)
                .iter()
                .find(|&b| g.degree(b) == 1 && state.color(b).is_none())
                .map(|b| Move::new(b, c)),
        }
    }

    fn peel_move(&self, g: &Graph, state: &GameState, c: Color) -> Option<Move> {
        let p = &*self.peel;
        let q = p.last_layer();
        let uncolored = state.uncolored();
        let stop = match self.anchor.and_then(|x| p.stripped_at(x)) {
            Some(r) if r < q => r,
            _ => q,
        };
        for i in 0..stop.min(p.supports.len()) {
            for s in p.supports[i] {
                let open_leaf = g
                    .neighborhood(s)
                    .intersection(p.leaves[i])
                    .intersection(uncolored);
                if uncolored.contains(s) && !open_leaf.is_empty() {
                    return Some(Move::new(s, c));
                }
            }
        }
        let first_open = |set: VertexSet| set.intersection(uncolored).first();
        if stop < q {
            // Alice's opening vertex x was stripped at layer r = stop
            let x = self.anchor.expect("stop < q only with an anchor");
            let layer = p.layers[stop];
            let target = if p.leaves[stop].contains(x) {
                first_open(g.neighborhood(x).intersection(layer))
            } else {
                first_open(g.neighborhood(x).intersection(p.leaves[stop]))
            };
            return target.map(|v| Move::new(v, c));
        }
        match p.terminal {
            PeelTerminal::IsolatedVertex { vertex, .. } => {
                first_open(VertexSet::singleton(vertex)).map(|v| Move::new(v, c))
            }
            PeelTerminal::LargeStar { layer, center } => {
                if Some(center) != self.anchor && uncolored.contains(center) {
                    Some(Move::new(center, c))
                } else {
                    first_open(g.neighborhood(center).intersection(p.layers[layer]))
                        .map(|v| Move::new(v, c))
                }
            }
            PeelTerminal::Exhausted => None,
        }
    }
}

impl Strategy for BobTreePeeler {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BobTreePeeler
    }

    fn side(&self) -> Player {
        Player::Bob
    }

    fn observe(&mut self, _after: &GameState, mv: Move, by: Player) {
        if by == Player::Alice && self.color.is_none() && self.anchor.is_none() {
            self.anchor = Some(mv.vertex);
        }
    }

    fn choose(&mut self, state: &GameState) -> Move {
        let c = *self.color.get_or_insert_with(|| {
            self.anchor
                .and_then(|x| state.color(x))
                .unwrap_or(1)
        });
        if let Some(mv) = immediate_win(state, Player::Bob) {
            return mv;
        }
        let g = state.graph();
        let scripted = match self.mode {
            PeelerMode::StrongSupport { support } => Self::strong_support_move(g, state, support),
            PeelerMode::Parity => self
                .safe
                .intersection(state.uncolored())
                .first()
                .map(|v| Move::new(v, 1)),
            PeelerMode::Peel => self.peel_move(g, state, c),
        };
        scripted.unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        Some(vec![
            self.color.map_or(0, u32::from),
            encode_opt(self.anchor),
        ])
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::family::FamilySpec;

    fn config(spec: &str, first: Player) -> GameConfig {
        let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        GameConfig::new(g, 2, first).unwrap()
    }

    fn spider_331() -> Graph {
        Graph::from_edge_list(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7)]).unwrap()
    }

    #[test]
    fn modes() {
        let m = |s, p| BobTreePeeler::new(&config(s, p)).unwrap().mode();
        assert_eq!(m("path:7", Player::Bob), PeelerMode::Parity);
        assert_eq!(m("path:7", Player::Alice), PeelerMode::Peel);
        assert_eq!(m("path:6", Player::Alice), PeelerMode::Parity);
        assert_eq!(m("complete_bipartite:1,3", Player::Bob), PeelerMode::StrongSupport { support: 0 });
        // spider with legs 3, 3, 1: even order, no perfect matching, no strong support
        let spider = spider_331();
        let c = GameConfig::new(spider, 2, Player::Bob).unwrap();
        assert_eq!(BobTreePeeler::new(&c).unwrap().mode(), PeelerMode::Peel);
    }

    #[test]
    fn applicability() {
        assert!(matches!(
            BobTreePeeler::new(&config("path:6", Player::Bob)),
            Err(Error::Applicability(_))
        ));
        assert!(BobTreePeeler::new(&config("cycle:5", Player::Bob)).is_err());
        let k3 = GameConfig::new(config("path:5", Player::Bob).graph, 3, Player::Bob).unwrap();
        assert!(BobTreePeeler::new(&k3).is_err());
    }

    #[test]
    fn peel_mode_opens_on_the_first_support() {
        let c = GameConfig::new(spider_331(), 2, Player::Bob).unwrap();
        let mut s = BobTreePeeler::new(&c).unwrap();
        // supports of F_0 are 0, 2, 5; F_1 = {1, 4} has isolated vertices
        assert_eq!(s.choose(&GameState::new(c)), Move::new(0, 1));
    }
}
