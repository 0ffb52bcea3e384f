use crate::error::Result;
use crate::game::{GameConfig, GameState, Move, Player};
use crate::graph::Vertex;
use crate::matching::{maximum_matching, Matching};

use super::{encode_move, first_legal, not_applicable, require, require_palette, Strategy, StrategySpec};

/// Alice answers Bob's `(v, c)` with `(M(v), 3 - c)` on a perfect matching `M`.
#[derive(Clone, Debug)]
pub struct AliceMatchingFollower {
    partner: Vec<Vertex>,
    last_bob: Option<Move>,
}

impl AliceMatchingFollower {
    pub fn new(config: &GameConfig, matching: &Matching) -> Result<AliceMatchingFollower> {
        const ID: &str = "alice_matching_follower";
        require(config.first == Player::Bob, || format!("{ID} is for the B-game only"))?;
        require_palette(config, ID, 2)?;
        let g = &config.graph;
        let mut partner = vec![usize::MAX; g.order()];
        for &(u, v) in &matching.edges {
            require(g.has_edge(u, v), || format!("({u}, {v}) is not an edge"))?;
            require(partner[u] == usize::MAX && partner[v] == usize::MAX, || {
                format!("({u}, {v}) overlaps another matched edge")
            })?;
            partner[u] = v;
            partner[v] = u;
        }
        require(partner.iter().all(|&p| p != usize::MAX), || {
            format!("{ID} needs a perfect matching")
        })?;
        Ok(AliceMatchingFollower {
            partner,
            last_bob: None,
        })
    }

    pub fn for_config(config: &GameConfig) -> Result<AliceMatchingFollower> {
        let m = maximum_matching(&config.graph)?;
        if !m.is_perfect() {
            return Err(not_applicable("the graph has no perfect matching"));
        }
        AliceMatchingFollower::new(config, &m)
    }
}

impl Strategy for AliceMatchingFollower {
    fn spec(&self) -> StrategySpec {
        StrategySpec::AliceMatchingFollower
    }

    fn side(&self) -> Player {
        Player::Alice
    }

    fn observe(&mut self, _after: &GameState, mv: Move, by: Player) {
        if by == Player::Bob {
            self.last_bob = Some(mv);
        }
    }

    fn choose(&mut self, state: &GameState) -> Move {
        let reply = self.last_bob.take().and_then(|m| {
            let p = self.partner[m.vertex];
            state.color(p).is_none().then(|| Move::new(p, 3 - m.color))
        });
        reply.unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        Some(encode_move(self.last_bob).to_vec())
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
