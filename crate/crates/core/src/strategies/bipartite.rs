use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{Color, GameConfig, GameState, Move, Player};
use crate::graph::{Graph, VertexSet};

use super::{first_legal, immediate_win, not_applicable, Strategy, StrategySpec};

/// The sides of `K_{m,n}`: `v` is the smaller one (`m <= n`); on a tie, the side holding vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub v: VertexSet,
    pub w: VertexSet,
}

impl Bipartition {
    /// The bipartition if `g` is complete bipartite with both sides nonempty.
    pub fn of_complete_bipartite(g: &Graph) -> Option<Bipartition> {
        let n = g.order();
        if n < 2 {
            return None;
        }
        let a = g.vertices().difference(g.neighborhood(0));
        let b = g.neighborhood(0);
        if b.is_empty() {
            return None;
        }
        let complete = a.iter().all(|x| g.neighborhood(x) == b) && b.iter().all(|y| g.neighborhood(y) == a);
        if !complete {
            return None;
        }
        Some(if b.len() < a.len() {
            Bipartition { v: b, w: a }
        } else {
            Bipartition { v: a, w: b }
        })
    }

    pub fn m(&self) -> usize {
        self.v.len()
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn case(&self) -> BipartiteCase {
        match (self.m() % 2 == 0, self.n() % 2 == 0) {
            (true, true) => BipartiteCase::BothEven,
            (true, false) => BipartiteCase::EvenOdd,
            (false, _) => BipartiteCase::OddSmall,
        }
    }

    fn side_of(&self, v: usize) -> VertexSet {
        if self.v.contains(v) {
            self.v
        } else {
            self.w
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BipartiteCase {
    /// `m` and `n` even.
    BothEven,
    /// `m` even, `n` odd.
    EvenOdd,
    /// `m` odd.
    OddSmall,
}

impl BipartiteCase {
    /// `(dg, dg′)` of `K_{m,n}` under this case.
    pub fn game_numbers(self, m: usize) -> (usize, usize) {
        let up = (m + 2) / 2; // ⌈(m+1)/2⌉
        match self {
            BipartiteCase::BothEven => (m / 2, up),
            BipartiteCase::EvenOdd => (up, m / 2),
            BipartiteCase::OddSmall => (up, up),
        }
    }
}

/// The general strategies on `K_{m,n}`.
///
/// Bob colors a side with 1 if it is still uncolored, else with the smallest color
/// on it. Alice colors a side with `j + 1` where `j` is the largest color on it
/// (when `j = k` she takes the smallest color the side still lacks).
/// "Following" means playing the side the opponent just played, or the other side
/// once that one is full. Each case adds its scripted openings.
#[derive(Clone, Debug)]
pub struct BipartiteGeneral {
    side: Player,
    parts: Bipartition,
    literal: bool,
    last_opponent: Option<usize>,
}

impl BipartiteGeneral {
    pub fn new(config: &GameConfig, side: Player) -> Result<BipartiteGeneral> {
        let parts = Bipartition::of_complete_bipartite(&config.graph)
            .ok_or_else(|| not_applicable("bipartite_general needs a complete bipartite graph"))?;
        Ok(BipartiteGeneral {
            side,
            parts,
            literal: false,
            last_opponent: None,
        })
    }

    /// Without the immediate-win check: the case scripts only.
    pub fn literal(mut self, literal: bool) -> Self {
        self.literal = literal;
        self
    }

    pub fn bipartition(&self) -> Bipartition {
        self.parts
    }

    fn colors_on(state: &GameState, side: VertexSet) -> impl Iterator<Item = Color> + '_ {
        side.iter().filter_map(|v| state.color(v))
    }

    fn bob_color(state: &GameState, side: VertexSet) -> Color {
        Self::colors_on(state, side).min().unwrap_or(1)
    }

    fn alice_color(state: &GameState, side: VertexSet) -> Color {
        let j = Self::colors_on(state, side).max().unwrap_or(0);
        if (j as usize) < state.palette() {
            return j + 1;
        }
        // j + 1 is off the palette: take the smallest color missing from the side
        let k = state.palette() as Color;
        (1..=k)
            .find(|&c| !Self::colors_on(state, side).any(|x| x == c))
            .unwrap_or(1)
    }

    /// First uncolored vertex of `side`, or of the other side when it is full.
    fn play_on(&self, state: &GameState, side: VertexSet, color: fn(&GameState, VertexSet) -> Color) -> Option<Move> {
        let other = if side == self.parts.v { self.parts.w } else { self.parts.v };
        [side, other].into_iter().find_map(|s| {
            s.intersection(state.uncolored())
                .first()
                .map(|x| Move::new(x, color(state, s)))
        })
    }

    fn followed_side(&self) -> VertexSet {
        match self.last_opponent {
            Some(x) => self.parts.side_of(x),
            None => self.parts.w,
        }
    }

    fn alice_move(&self, state: &GameState) -> Option<Move> {
        let case = self.parts.case();
        let made = state.moves_made();
        let (v, w) = (self.parts.v, self.parts.w);
        if made == 0 {
            let side = if case == BipartiteCase::OddSmall { v } else { w };
            return side.first().map(|x| Move::new(x, 1));
        }
        if made == 1 && case == BipartiteCase::EvenOdd && state.config().first == Player::Bob {
            return self.play_on(state, v, Self::alice_color);
        }
        self.play_on(state, self.followed_side(), Self::alice_color)
    }

    fn bob_move(&self, state: &GameState) -> Option<Move> {
        let case = self.parts.case();
        let made = state.moves_made();
        let (v, w) = (self.parts.v, self.parts.w);
        if case == BipartiteCase::OddSmall {
            // color 1 on V until it is full, then color 1 on W
            return self.play_on(state, v, |_, _| 1);
        }
        if made == 0 {
            return w.first().map(|x| Move::new(x, 1));
        }
        if made == 1 && case == BipartiteCase::EvenOdd && state.config().first == Player::Alice {
            return self.play_on(state, v, Self::bob_color);
        }
        self.play_on(state, self.followed_side(), Self::bob_color)
    }
}

impl Strategy for BipartiteGeneral {
    fn spec(&self) -> StrategySpec {
        StrategySpec::BipartiteGeneral {
            side: self.side,
            literal: self.literal,
        }
    }

    fn side(&self) -> Player {
        self.side
    }

    fn observe(&mut self, _after: &GameState, mv: Move, by: Player) {
        if by != self.side {
            self.last_opponent = Some(mv.vertex);
        }
    }

    fn choose(&mut self, state: &GameState) -> Move {
        if !self.literal {
            if let Some(mv) = immediate_win(state, self.side) {
                return mv;
            }
        }
        let scripted = match self.side {
            Player::Alice => self.alice_move(state),
            Player::Bob => self.bob_move(state),
        };
        scripted.unwrap_or_else(|| first_legal(state))
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        // only the side of the last opponent move matters
        let side = match self.last_opponent {
            None => 0,
            Some(x) if self.parts.v.contains(x) => 1,
            Some(_) => 2,
        };
        Some(vec![side])
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
