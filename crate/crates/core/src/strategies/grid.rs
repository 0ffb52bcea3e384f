use crate::error::Result;
use crate::family::FamilySpec;
use crate::game::{GameConfig, GameState, Move, Player};
use crate::graph::Vertex;

use super::{encode_move, first_legal, immediate_win, require, require_palette, Strategy, StrategySpec};

/// Bob on `P_n □ P_2` (A-game, palette `[2]`). The grid is a ladder of rungs
/// `{x_k, y_k}`. When Alice colors a rung vertex with `c`, Bob colors its rung
/// partner: with `c` on an end rung (creating `⋆cc⋆`), with `3 - c` otherwise.
#[derive(Clone, Debug)]
pub struct BobGrid2 {
    /// `rung[v]` = index of v's rung.
    rung: Vec<usize>,
    partner: Vec<Vertex>,
    rungs: usize,
    last_alice: Option<Move>,
}

impl BobGrid2 {
    pub fn new(config: &GameConfig) -> Result<BobGrid2> {
        const ID: &str = "bob_grid2";
        require(config.first == Player::Alice, || format!("{ID} is for the A-game"))?;
        require_palette(config, ID, 2)?;
        let g = &config.graph;
        let n = g.order();
        let r = n / 2;
        let ladder = |spec: FamilySpec| spec.generate().ok().filter(|h| h == g).is_some();
        let (rung, partner): (Vec<usize>, Vec<Vertex>) = if n % 2 == 1 || r < 2 {
            return Err(super::not_applicable(format!("{ID} needs P_n □ P_2 with n >= 2")));
        } else if ladder(FamilySpec::Grid(r, 2)) {
            // row-major r × 2: rung i = {2i, 2i + 1}
            (0..n).map(|v| (v / 2, v ^ 1)).unzip()
        } else if ladder(FamilySpec::Grid(2, r)) {
            (0..n).map(|v| (v % r, (v + r) % n)).unzip()
        } else {
            return Err(super::not_applicable(format!("{ID} needs P_n □ P_2 with n >= 2")));
        };
        Ok(BobGrid2 {
            rung,
            partner,
            rungs: r,
            last_alice: None,
        })
    }
}

impl Strategy for BobGrid2 {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BobGrid2
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
        let reply = last.and_then(|m| {
            let p = self.partner[m.vertex];
            let i = self.rung[m.vertex];
            let end = i == 0 || i + 1 == self.rungs;
            let c = if end { m.color } else { 3 - m.color };
            state.color(p).is_none().then(|| Move::new(p, c))
        });
        reply.unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        Some(encode_move(self.last_alice).to_vec())
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(spec: &str) -> GameConfig {
        let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        GameConfig::new(g, 2, Player::Alice).unwrap()
    }

    fn reply(spec: &str, alice: Move) -> Move {
        let c = config(spec);
        let mut bob = BobGrid2::new(&c).unwrap();
        let s = GameState::new(c).apply_move(alice).unwrap();
        bob.observe(&s, alice, Player::Alice);
        bob.choose(&s)
    }

    #[test]
    fn replies_in_both_orientations() {
        // grid:4,2 rungs {0,1},{2,3},…; grid:2,4 rungs {0,4},{1,5},…
        assert_eq!(reply("grid:4,2", Move::new(0, 1)), Move::new(1, 1));
        assert_eq!(reply("grid:4,2", Move::new(3, 1)), Move::new(2, 2));
        assert_eq!(reply("grid:2,4", Move::new(5, 2)), Move::new(1, 1));
        assert_eq!(reply("grid:2,4", Move::new(7, 2)), Move::new(3, 2));
    }

    #[test]
    fn applicability() {
        assert!(BobGrid2::new(&config("grid:3,3")).is_err());
        assert!(BobGrid2::new(&config("path:4")).is_err());
        let b = GameConfig::new(config("grid:3,2").graph, 2, Player::Bob).unwrap();
        assert!(BobGrid2::new(&b).is_err());
    }
}
