//! Rules of the domatic number game.
//!
//! Players alternately color an uncolored vertex with a color from `1..=k`.
//! Alice wins when every color class is a dominating set, i.e. every closed
//! neighborhood sees all `k` colors. Colors are 1-based; `0` means uncolored.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub type Color = u8;

/// Largest supported palette.
pub const MAX_PALETTE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }

    /// The player whose win this status records, if decided.
    pub fn winner_of(status: Status) -> Option<Player> {
        match status {
            Status::AliceWins => Some(Player::Alice),
            Status::BobWins => Some(Player::Bob),
            Status::Ongoing => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "Alice",
            Player::Bob => "Bob",
        })
    }
}

impl std::str::FromStr for Player {
    type Err = Error;
    fn from_str(s: &str) -> Result<Player> {
        match s.to_ascii_lowercase().as_str() {
            "alice" | "a" => Ok(Player::Alice),
            "bob" | "b" => Ok(Player::Bob),
            _ => Err(Error::input(format!("unknown player {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Ongoing,
    AliceWins,
    BobWins,
}

impl Status {
    pub fn is_decided(self) -> bool {
        self != Status::Ongoing
    }
}

/// Graph, palette size and first player. Alice first is the A-game, Bob first the B-game.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub graph: Graph,
    pub palette: usize,
    pub first: Player,
}

impl GameConfig {
    pub fn new(graph: Graph, palette: usize, first: Player) -> Result<GameConfig> {
        if palette == 0 {
            return Err(Error::input("palette size must be at least 1"));
        }
        if palette > MAX_PALETTE {
            return Err(Error::capacity(format!(
                "palette size {palette} exceeds the supported maximum {MAX_PALETTE}"
            )));
        }
        Ok(GameConfig {
            graph,
            palette,
            first,
        })
    }

    pub fn is_a_game(&self) -> bool {
        self.first == Player::Alice
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub vertex: Vertex,
    pub color: Color,
}

impl Move {
    pub fn new(vertex: Vertex, color: Color) -> Move {
        Move { vertex, color }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.vertex, self.color)
    }
}

/// Mutable coloring with per-color bitmasks. The solver works on this directly;
/// [`GameState`] wraps it with value semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    colors: Vec<Color>,
    /// `classes[c]` = vertices colored `c`; index 0 is unused.
    classes: Vec<u64>,
    uncolored: u64,
}

impl Board {
    pub fn new(n: usize, k: usize) -> Board {
        Board {
            colors: vec![0; n],
            classes: vec![0; k + 1],
            uncolored: VertexSet::full(n).bits(),
        }
    }

    pub fn palette(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Option<Color> {
        match self.colors[v] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn uncolored(&self) -> VertexSet {
        VertexSet::from_bits(self.uncolored)
    }

    pub fn class(&self, c: Color) -> VertexSet {
        VertexSet::from_bits(self.classes[c as usize])
    }

    pub fn colored_count(&self) -> usize {
        self.colors.len() - self.uncolored.count_ones() as usize
    }

    #[inline]
    pub(crate) fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = c;
        self.classes[c as usize] |= 1 << v;
        self.uncolored &= !(1 << v);
    }

    #[inline]
    pub(crate) fn unset(&mut self, v: Vertex) {
        let c = self.colors[v];
        self.colors[v] = 0;
        self.classes[c as usize] &= !(1 << v);
        self.uncolored |= 1 << v;
    }

    pub fn check_move(&self, mv: Move) -> Result<()> {
        if mv.vertex >= self.colors.len() {
            return Err(Error::IllegalMove(format!(
                "vertex {} outside 0..{}",
                mv.vertex,
                self.colors.len()
            )));
        }
        if mv.color == 0 || mv.color as usize > self.palette() {
            return Err(Error::IllegalMove(format!(
                "color {} outside the palette 1..={}",
                mv.color,
                self.palette()
            )));
        }
        if let Some(c) = self.color(mv.vertex) {
            return Err(Error::IllegalMove(format!(
                "vertex {} is already colored {c}",
                mv.vertex
            )));
        }
        Ok(())
    }

    /// Number of colors present in `nb`.
    #[inline]
    pub(crate) fn colors_present(&self, nb: u64) -> usize {
        self.classes[1..].iter().filter(|&&m| m & nb != 0).count()
    }

    /// Adjudication by the two sound early rules; exact once everything is colored.
    pub fn status(&self, g: &Graph) -> Status {
        let k = self.palette();
        let mut all_complete = true;
        for (w, &adj) in g.adjacency_bits().iter().enumerate() {
            let nb = adj | 1 << w;
            if self.colors_present(nb) < k {
                if nb & self.uncolored == 0 {
                    return Status::BobWins;
                }
                all_complete = false;
            }
        }
        if all_complete {
            Status::AliceWins
        } else {
            Status::Ongoing
        }
    }

    /// Some closed neighborhood can no longer collect all `k` colors:
    /// its missing colors outnumber its uncolored vertices.
    pub fn is_hopeless_for_alice(&self, g: &Graph) -> bool {
        let k = self.palette();
        g.adjacency_bits().iter().enumerate().any(|(w, &adj)| {
            let nb = adj | 1 << w;
            self.colors_present(nb) + ((nb & self.uncolored).count_ones() as usize) < k
        })
    }

    /// The coloring itself, packed; no color renaming.
    pub fn raw_key(&self) -> CanonicalKey {
        let bits = usize::BITS - self.palette().leading_zeros();
        if self.colors.len() * bits as usize <= 128 {
            let mut out = 0u128;
            for (i, &c) in self.colors.iter().enumerate() {
                out |= (c as u128) << (i * bits as usize);
            }
            CanonicalKey::Packed(out)
        } else {
            CanonicalKey::Bytes(self.colors.clone().into_boxed_slice())
        }
    }

    /// Colors relabeled by order of first appearance over vertices `0..n`.
    pub fn canonical_key(&self) -> CanonicalKey {
        let k = self.palette();
        let mut relabel = [0u8; MAX_PALETTE + 1];
        let mut next = 0u8;
        let bits = usize::BITS - k.leading_zeros();
        let n = self.colors.len();
        if n * bits as usize <= 128 {
            let mut out = 0u128;
            for (i, &c) in self.colors.iter().enumerate() {
                let r = if c == 0 {
                    0
                } else {
                    if relabel[c as usize] == 0 {
                        next += 1;
                        relabel[c as usize] = next;
                    }
                    relabel[c as usize]
                };
                out |= (r as u128) << (i * bits as usize);
            }
            CanonicalKey::Packed(out)
        } else {
            let bytes = self
                .colors
                .iter()
                .map(|&c| {
                    if c == 0 {
                        0
                    } else {
                        if relabel[c as usize] == 0 {
                            next += 1;
                            relabel[c as usize] = next;
                        }
                        relabel[c as usize]
                    }
                })
                .collect();
            CanonicalKey::Bytes(bytes)
        }
    }
}

/// Opaque transposition key: equal iff two colorings agree up to renaming colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalKey {
    Packed(u128),
    Bytes(Box<[u8]>),
}

/// Immutable game position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    config: Arc<GameConfig>,
    board: Board,
}

impl GameState {
    pub fn new(config: GameConfig) -> GameState {
        GameState::from_shared(Arc::new(config))
    }

    pub fn from_shared(config: Arc<GameConfig>) -> GameState {
        let board = Board::new(config.graph.order(), config.palette);
        GameState { config, board }
    }

    /// A position with the given coloring (`0` = uncolored).
    pub fn from_colors(config: GameConfig, colors: &[Color]) -> Result<GameState> {
        if colors.len() != config.graph.order() {
            return Err(Error::input("coloring length differs from the graph order"));
        }
        let mut s = GameState::new(config);
        for (v, &c) in colors.iter().enumerate() {
            if c != 0 {
                s.board.check_move(Move::new(v, c))?;
                s.board.set(v, c);
            }
        }
        Ok(s)
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn shared_config(&self) -> &Arc<GameConfig> {
        &self.config
    }

    pub fn graph(&self) -> &Graph {
        &self.config.graph
    }

    pub fn palette(&self) -> usize {
        self.config.palette
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn color(&self, v: Vertex) -> Option<Color> {
        self.board.color(v)
    }

    pub fn colors(&self) -> &[Color] {
        self.board.colors()
    }

    /// `V_c`, the vertices colored `c` so far.
    pub fn class(&self, c: Color) -> VertexSet {
        self.board.class(c)
    }

    pub fn uncolored(&self) -> VertexSet {
        self.board.uncolored()
    }

    pub fn moves_made(&self) -> usize {
        self.board.colored_count()
    }

    pub fn to_move(&self) -> Player {
        if self.moves_made() % 2 == 0 {
            self.config.first
        } else {
            self.config.first.other()
        }
    }

    pub fn status(&self) -> Status {
        self.board.status(&self.config.graph)
    }

    /// All `(v, c)` with `v` uncolored, vertex-major then color ascending.
    pub fn legal_moves(&self) -> Result<Vec<Move>> {
        if self.status().is_decided() {
            return Err(Error::Usage("the game is already decided".into()));
        }
        Ok(self.all_moves())
    }

    pub(crate) fn all_moves(&self) -> Vec<Move> {
        let k = self.palette() as Color;
        self.uncolored()
            .iter()
            .flat_map(|v| (1..=k).map(move |c| Move::new(v, c)))
            .collect()
    }

    pub fn apply_move(&self, mv: Move) -> Result<GameState> {
        self.board.check_move(mv)?;
        let mut next = self.clone();
        next.board.set(mv.vertex, mv.color);
        Ok(next)
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        self.board.canonical_key()
    }

    /// Every vertex colored.
    pub fn is_full(&self) -> bool {
        self.uncolored().is_empty()
    }

    pub fn detect_configurations(&self) -> Vec<ConfigurationFinding> {
        detect_configurations(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfigurationKind {
    /// `⋆mm⋆`: both interior vertices colored `m`, both ends uncolored.
    StarMM { color: Color },
    /// `c⋆⋆c′`: ends colored differently, interior uncolored.
    CStarStarC { left: Color, right: Color },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFinding {
    pub kind: ConfigurationKind,
    /// `u1 u2 u3 u4`, interior `u2 < u3`.
    pub path: [Vertex; 4],
}

/// Paths `u1 u2 u3 u4` on distinct vertices with `deg(u2) = deg(u3) = 2`
/// matching either configuration. Each path is reported once.
pub fn detect_configurations(state: &GameState) -> Vec<ConfigurationFinding> {
    let g = state.graph();
    let mut out = Vec::new();
    for (u2, u3) in g.edges() {
        if g.degree(u2) != 2 || g.degree(u3) != 2 {
            continue;
        }
        let u1 = g.neighborhood(u2).iter().find(|&x| x != u3);
        let u4 = g.neighborhood(u3).iter().find(|&x| x != u2);
        let (Some(u1), Some(u4)) = (u1, u4) else {
            continue;
        };
        if u1 == u4 {
            continue;
        }
        let path = [u1, u2, u3, u4];
        let c = |v| state.color(v);
        let kind = match (c(u1), c(u2), c(u3), c(u4)) {
            (None, Some(a), Some(b), None) if a == b => Some(ConfigurationKind::StarMM { color: a }),
            (Some(a), None, None, Some(b)) if a != b => Some(ConfigurationKind::CStarStarC {
                left: a,
                right: b,
            }),
            _ => None,
        };
        if let Some(kind) = kind {
            out.push(ConfigurationFinding { kind, path });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::is_dominating;
    use crate::family::FamilySpec;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn config(s: &str, k: usize, first: Player) -> GameConfig {
        let g = s.parse::<FamilySpec>().unwrap().generate().unwrap();
        GameConfig::new(g, k, first).unwrap()
    }

    fn state(s: &str, k: usize, colors: &[Color]) -> GameState {
        GameState::from_colors(config(s, k, Player::Alice), colors).unwrap()
    }

    #[test]
    fn new_games() {
        let s = GameState::new(config("cycle:3", 2, Player::Alice));
        assert_eq!(s.moves_made(), 0);
        assert_eq!(s.to_move(), Player::Alice);
        assert_eq!(s.uncolored().len(), 3);
        let s = GameState::new(config("path:2", 1, Player::Bob));
        assert_eq!(s.to_move(), Player::Bob);
        let s = GameState::new(config("complete:1", 3, Player::Alice));
        assert_eq!(s.legal_moves().unwrap().len(), 3);
        assert!(GameConfig::new(Graph::empty(2).unwrap(), 0, Player::Alice).is_err());
    }

    #[test]
    fn legal_move_enumeration() {
        let s = GameState::new(config("path:2", 2, Player::Alice));
        let moves = s.legal_moves().unwrap();
        assert_eq!(moves, vec![Move::new(0, 1), Move::new(0, 2), Move::new(1, 1), Move::new(1, 2)]);
        let s = s.apply_move(Move::new(0, 1)).unwrap();
        assert_eq!(s.legal_moves().unwrap().len(), 2);
        assert_eq!(s.to_move(), Player::Bob);
        let s = GameState::new(config("complete:1", 5, Player::Alice));
        assert_eq!(s.legal_moves().unwrap().len(), 5);
    }

    #[test]
    fn legal_moves_on_decided_state_is_usage_error() {
        let s = state("path:2", 2, &[1, 1]);
        assert!(matches!(s.legal_moves(), Err(Error::Usage(_))));
    }

    #[test]
    fn apply_move_semantics() {
        let s = GameState::new(config("path:4", 2, Player::Alice));
        let t = s.apply_move(Move::new(1, 1)).unwrap();
        assert_eq!(t.class(1), VertexSet::singleton(1));
        assert_eq!(s.moves_made(), 0);
        assert!(matches!(t.apply_move(Move::new(1, 1)), Err(Error::IllegalMove(_))));
        assert!(matches!(t.apply_move(Move::new(2, 3)), Err(Error::IllegalMove(_))));
        assert!(matches!(t.apply_move(Move::new(2, 0)), Err(Error::IllegalMove(_))));
        assert!(matches!(t.apply_move(Move::new(9, 1)), Err(Error::IllegalMove(_))));
    }

    #[test]
    fn status_examples() {
        assert_eq!(state("path:2", 2, &[1, 1]).status(), Status::BobWins);
        // every N[w] on C_3 is the whole vertex set and holds colors 1 and 2
        assert_eq!(state("cycle:3", 2, &[1, 2, 0]).status(), Status::AliceWins);
        let s = state("path:3", 1, &[0, 0, 0]);
        assert_eq!(s.status(), Status::Ongoing);
        let s = state("path:3", 1, &[1, 0, 0]);
        assert_eq!(s.status(), Status::Ongoing);
        assert_eq!(state("path:3", 1, &[1, 1, 0]).status(), Status::AliceWins);
        assert_eq!(state("complete:4", 9, &[1, 2, 3, 4]).status(), Status::BobWins);
    }

    #[test]
    fn configurations() {
        let s = state("cycle:5", 2, &[1, 1, 0, 0, 0]);
        let f = s.detect_configurations();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, ConfigurationKind::StarMM { color: 1 });
        assert_eq!(f[0].path, [4, 0, 1, 2]);

        let s = state("path:4", 2, &[1, 0, 0, 2]);
        let f = s.detect_configurations();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].kind, ConfigurationKind::CStarStarC { left: 1, right: 2 });

        let s = state("complete:4", 2, &[1, 1, 0, 0]);
        assert!(s.detect_configurations().is_empty());
        // C_3 has no path on four distinct vertices
        assert!(state("cycle:3", 2, &[0, 1, 1]).detect_configurations().is_empty());
    }

    #[test]
    fn canonical_keys() {
        let k = |c: &[Color]| state("path:3", 2, c).canonical_key();
        assert_eq!(k(&[1, 2, 0]), k(&[2, 1, 0]));
        assert_ne!(k(&[1, 2, 0]), k(&[1, 0, 2]));
        assert_eq!(k(&[1, 1, 0]), k(&[2, 2, 0]));
        let big = state("path:50", 4, &[0; 50]).canonical_key();
        assert!(matches!(big, CanonicalKey::Bytes(_)));
    }

    fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn random_playout(rng: &mut StdRng, mut s: GameState) -> GameState {
        while !s.is_full() {
            let moves = s.all_moves();
            s = s.apply_move(*moves.choose(rng).unwrap()).unwrap();
        }
        s
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn early_verdicts_are_absorbing(seed in any::<u64>(), n in 1usize..8, k in 1usize..4) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n);
            let mut s = GameState::new(GameConfig::new(g.clone(), k, Player::Alice).unwrap());
            while !s.is_full() {
                let verdict = s.status();
                if verdict.is_decided() {
                    for _ in 0..4 {
                        let end = random_playout(&mut rng, s.clone());
                        prop_assert_eq!(end.status(), verdict);
                    }
                    break;
                }
                let moves = s.all_moves();
                s = s.apply_move(*moves.choose(&mut rng).unwrap()).unwrap();
            }
        }

        #[test]
        fn full_colorings_are_exact(seed in any::<u64>(), n in 1usize..9, k in 1usize..5) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n);
            let s = random_playout(&mut rng, GameState::new(GameConfig::new(g.clone(), k, Player::Bob).unwrap()));
            let domatic = (1..=k as Color).all(|c| is_dominating(&g, s.class(c)));
            prop_assert_eq!(s.status() == Status::AliceWins, domatic);
            prop_assert!(s.status().is_decided());
        }

        #[test]
        fn color_permutation_invariance(seed in any::<u64>(), n in 1usize..9, k in 1usize..5) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n);
            let cfg = GameConfig::new(g, k, Player::Alice).unwrap();
            let colors: Vec<Color> = (0..n).map(|_| rng.gen_range(0..=k as Color)).collect();
            let mut perm: Vec<Color> = (1..=k as Color).collect();
            perm.shuffle(&mut rng);
            let permuted: Vec<Color> = colors.iter().map(|&c| if c == 0 { 0 } else { perm[c as usize - 1] }).collect();
            let a = GameState::from_colors(cfg.clone(), &colors).unwrap();
            let b = GameState::from_colors(cfg, &permuted).unwrap();
            prop_assert_eq!(a.status(), b.status());
            prop_assert_eq!(a.canonical_key(), b.canonical_key());
            prop_assert_eq!(a.legal_moves().map(|m| m.len()).unwrap_or(0),
                            if a.status().is_decided() { 0 } else { a.uncolored().len() * k });
        }
    }
}
