use crate::error::Result;
use crate::game::{GameConfig, GameState, Move, Player};
use crate::graph::{Graph, Vertex};

use super::{encode_opt, first_legal, immediate_win, require, require_palette, Strategy, StrategySpec};

/// The cyclic order `v_1 … v_n` of a cycle graph, starting at vertex 0 and
/// heading to its smaller neighbor.
pub fn cycle_order(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.order();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = g.neighborhood(0).first()?;
    while cur != 0 {
        order.push(cur);
        let next = g.neighborhood(cur).iter().find(|&x| x != prev)?;
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Bob on `C_n` with palette `[2]`: in the A-game he copies Alice's opening onto the
/// next vertex (`⋆jj⋆`); in the B-game he opens `v_1` and either builds `⋆11⋆` or
/// sets up a `2⋆⋆1` trap and plays outside it.
#[derive(Clone, Debug)]
pub struct BobCycle {
    order: Vec<Vertex>,
    /// Position of each vertex in `order`.
    pos: Vec<usize>,
    /// The two interior vertices of the `2⋆⋆1` trap, once set.
    trap: Option<(Vertex, Vertex)>,
    last_alice: Option<Move>,
}

impl BobCycle {
    pub fn new(config: &GameConfig) -> Result<BobCycle> {
        const ID: &str = "bob_cycle";
        let order = cycle_order(&config.graph);
        require(order.is_some(), || format!("{ID} needs a cycle graph"))?;
        let order = order.unwrap();
        let n = order.len();
        require_palette(config, ID, 2)?;
        match config.first {
            Player::Alice => require(n >= 4, || format!("{ID}: A-game needs n >= 4, got {n}"))?,
            Player::Bob => require(n >= 5 && n % 2 == 1, || {
                format!("{ID}: B-game needs odd n >= 5, got {n}")
            })?,
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        Ok(BobCycle {
            order,
            pos,
            trap: None,
            last_alice: None,
        })
    }

    fn at(&self, i: usize) -> Vertex {
        self.order[i % self.order.len()]
    }

    fn b_game_second_move(&mut self, y: Vertex) -> Move {
        let n = self.order.len();
        match self.pos[y] {
            1 => {
                self.trap = Some((self.at(2), self.at(3)));
                Move::new(self.at(4), 1)
            }
            p if p == n - 1 => {
                self.trap = Some((self.at(n - 2), self.at(n - 3)));
                Move::new(self.at(n - 4), 1)
            }
            // ⋆11⋆ on v_1 v_2 or on v_n v_1, whichever has both ends open
            2 => Move::new(self.at(n - 1), 1),
            _ => Move::new(self.at(1), 1),
        }
    }
}

impl Strategy for BobCycle {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BobCycle
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
        let a_game = state.config().first == Player::Alice;
        let scripted = match (a_game, state.moves_made(), last) {
            (true, 1, Some(m)) => Some(Move::new(self.at(self.pos[m.vertex] + 1), m.color)),
            (false, 0, _) => Some(Move::new(self.at(0), 1)),
            (false, 2, Some(m)) => Some(self.b_game_second_move(m.vertex)),
            _ => self.trap.and_then(|(a, b)| {
                state
                    .uncolored()
                    .iter()
                    .find(|&v| v != a && v != b)
                    .map(|v| Move::new(v, 1))
            }),
        };
        scripted
            .filter(|m| state.color(m.vertex).is_none())
            .unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        let (a, b) = match self.trap {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        let last = super::encode_move(self.last_alice);
        Some(vec![encode_opt(a), encode_opt(b), last[0], last[1]])
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

    #[test]
    fn orders() {
        let g = "cycle:5".parse::<FamilySpec>().unwrap().generate().unwrap();
        assert_eq!(cycle_order(&g), Some(vec![0, 1, 2, 3, 4]));
        let g = "path:5".parse::<FamilySpec>().unwrap().generate().unwrap();
        assert_eq!(cycle_order(&g), None);
    }

    #[test]
    fn c7_trap_reply() {
        // Bob opens (v1, 1); Alice (v2, 2); Bob answers (v5, 1)
        let c = config("cycle:7", Player::Bob);
        let mut bob = BobCycle::new(&c).unwrap();
        let s0 = GameState::new(c);
        let open = bob.choose(&s0);
        assert_eq!(open, Move::new(0, 1));
        let s1 = s0.apply_move(open).unwrap();
        bob.observe(&s1, open, Player::Bob);
        let a = Move::new(1, 2);
        let s2 = s1.apply_move(a).unwrap();
        bob.observe(&s2, a, Player::Alice);
        assert_eq!(bob.choose(&s2), Move::new(4, 1));
    }

    #[test]
    fn applicability() {
        assert!(matches!(BobCycle::new(&config("cycle:6", Player::Bob)), Err(Error::Applicability(_))));
        assert!(BobCycle::new(&config("cycle:3", Player::Alice)).is_err());
        assert!(BobCycle::new(&config("path:5", Player::Alice)).is_err());
        assert!(BobCycle::new(&config("cycle:4", Player::Alice)).is_ok());
    }
}
