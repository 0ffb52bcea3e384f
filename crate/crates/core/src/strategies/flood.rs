use crate::error::Result;
use crate::game::{Color, GameConfig, GameState, Move, Player};
use crate::graph::Vertex;

use super::{encode_opt, first_legal, immediate_win, require, Strategy, StrategySpec};

/// Bob fixes a minimum-degree vertex `x` and a color `c`, then puts `c` on as much
/// of `N[x]` as he can.
#[derive(Clone, Debug)]
pub struct BobFlood {
    target: Option<(Vertex, Color)>,
}

impl BobFlood {
    pub fn new(config: &GameConfig) -> Result<BobFlood> {
        require(config.graph.order() > 0, || "bob_flood needs a nonempty graph".into())?;
        Ok(BobFlood { target: None })
    }

    pub fn target(&self) -> Option<(Vertex, Color)> {
        self.target
    }

    /// If Alice opened inside `N[x]` for a minimum-degree `x`, take her color;
    /// otherwise the first minimum-degree vertex and color 1.
    fn pick_target(state: &GameState) -> (Vertex, Color) {
        let g = state.graph();
        let delta = g.min_degree();
        let mins: Vec<Vertex> = g.vertices().iter().filter(|&v| g.degree(v) == delta).collect();
        let opening = g.vertices().iter().find_map(|v| state.color(v).map(|c| (v, c)));
        if let Some((y, j)) = opening {
            if let Some(&x) = mins.iter().find(|&&x| g.closed_nbhd(x).contains(y)) {
                return (x, j);
            }
        }
        (mins[0], 1)
    }
}

impl Strategy for BobFlood {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BobFlood
    }

    fn side(&self) -> Player {
        Player::Bob
    }

    fn choose(&mut self, state: &GameState) -> Move {
        let (x, c) = *self.target.get_or_insert_with(|| Self::pick_target(state));
        if let Some(mv) = immediate_win(state, Player::Bob) {
            return mv;
        }
        let open = state.graph().closed_nbhd(x).intersection(state.uncolored());
        match open.first() {
            Some(v) => Move::new(v, c),
            None => first_legal(state),
        }
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        let (x, c) = match self.target {
            Some((x, c)) => (Some(x), c as u32),
            None => (None, 0),
        };
        Some(vec![encode_opt(x), c])
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn config(spec: &str, k: usize, first: Player) -> GameConfig {
        let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        GameConfig::new(g, k, first).unwrap()
    }

    #[test]
    fn takes_alices_color_inside_the_neighborhood() {
        let c = config("cycle:4", 3, Player::Alice);
        let state = GameState::new(c).apply_move(Move::new(0, 2)).unwrap();
        let mut s = BobFlood::new(state.config()).unwrap();
        let mv = s.choose(&state);
        let (x, col) = s.target().unwrap();
        assert_eq!(col, 2);
        assert!(state.graph().closed_nbhd(x).contains(0));
        assert_eq!(mv.color, 2);
    }

    #[test]
    fn falls_back_to_color_one() {
        // the opening sits on a degree-3 vertex outside every N[x] with deg(x) = 1
        let g = crate::graph::Graph::from_edge_list(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 3), (4, 6), (6, 2)],
        )
        .unwrap();
        let c = GameConfig::new(g, 3, Player::Alice).unwrap();
        let state = GameState::new(c).apply_move(Move::new(4, 3)).unwrap();
        let mut s = BobFlood::new(state.config()).unwrap();
        s.choose(&state);
        assert_eq!(s.target(), Some((0, 1)));
    }
}
