//! Exact optimal-play adjudication by memoized win/loss search.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Board, CanonicalKey, Color, GameConfig, GameState, Move, Player, Status};
use crate::graph::Graph;

/// Resource limits for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverLimits {
    /// Guard on the raw state space: `(k + 1)^n` must not exceed this.
    pub max_states: u64,
    /// Transposition table entries before switching to depth-bounded caching.
    pub memo_capacity: usize,
    /// After overflow, only states with at least this many uncolored vertices are cached.
    pub depth_threshold: usize,
    /// Disables the transposition table and color-symmetry pruning (oracle runs).
    pub memoize: bool,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_states: 100_000_000,
            memo_capacity: 20_000_000,
            depth_threshold: 4,
            memoize: true,
        }
    }
}

impl SolverLimits {
    pub fn unmemoized() -> Self {
        SolverLimits {
            memoize: false,
            ..SolverLimits::default()
        }
    }

    pub fn check_capacity(&self, n: usize, k: usize) -> Result<()> {
        let states = (k as u64 + 1).checked_pow(n as u32);
        match states {
            Some(s) if s <= self.max_states => Ok(()),
            _ => Err(Error::capacity(format!(
                "(k+1)^n = {}^{} exceeds the state guard {}",
                k + 1,
                n,
                self.max_states
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub states_expanded: u64,
    pub memo_hits: u64,
    pub peak_table_size: usize,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
}

impl SolveStats {
    pub fn merge(&mut self, other: &SolveStats) {
        self.states_expanded += other.states_expanded;
        self.memo_hits += other.memo_hits;
        self.peak_table_size = self.peak_table_size.max(other.peak_table_size);
        self.elapsed += other.elapsed;
    }
}

pub(crate) mod duration_secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

/// Memoized search over one game configuration. Values are "Alice wins from here"
/// and depend only on the coloring, so the table is reusable across queries.
pub struct Search<'g> {
    graph: &'g Graph,
    first: Player,
    limits: SolverLimits,
    memo: HashMap<CanonicalKey, bool>,
    stats: SolveStats,
}

impl<'g> Search<'g> {
    pub fn new(config: &'g GameConfig, limits: SolverLimits) -> Result<Search<'g>> {
        limits.check_capacity(config.graph.order(), config.palette)?;
        Ok(Search {
            graph: &config.graph,
            first: config.first,
            limits,
            memo: HashMap::new(),
            stats: SolveStats::default(),
        })
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            peak_table_size: self.stats.peak_table_size.max(self.memo.len()),
            ..self.stats
        }
    }

    fn to_move(&self, board: &Board) -> Player {
        if board.colored_count() % 2 == 0 {
            self.first
        } else {
            self.first.other()
        }
    }

    /// Winner under optimal play from `board`.
    pub fn winner(&mut self, board: &Board) -> Player {
        let mut b = board.clone();
        if self.alice_wins(&mut b) {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    /// Candidate moves: every uncolored vertex with every color already used plus the
    /// smallest unused one. Renaming colors maps positions to equal-valued positions,
    /// so one fresh color stands for all of them.
    fn candidate_moves(board: &Board) -> Vec<Move> {
        let k = board.palette();
        let mut colors: Vec<Color> = Vec::with_capacity(k);
        let mut fresh_added = false;
        for c in 1..=k as Color {
            if !board.class(c).is_empty() {
                colors.push(c);
            } else if !fresh_added {
                colors.push(c);
                fresh_added = true;
            }
        }
        board
            .uncolored()
            .iter()
            .flat_map(|v| colors.iter().map(move |&c| Move::new(v, c)))
            .collect()
    }

    fn alice_wins(&mut self, board: &mut Board) -> bool {
        match board.status(self.graph) {
            Status::AliceWins => return true,
            Status::BobWins => return false,
            Status::Ongoing => {}
        }
        if board.is_hopeless_for_alice(self.graph) {
            return false;
        }
        let key = if self.limits.memoize {
            let key = board.canonical_key();
            if let Some(&v) = self.memo.get(&key) {
                self.stats.memo_hits += 1;
                return v;
            }
            Some(key)
        } else {
            None
        };
        self.stats.states_expanded += 1;

        let mover = self.to_move(board);
        let mover_wins_with = |alice: bool| alice == (mover == Player::Alice);
        // the memo-free oracle enumerates every legal move
        let moves = if self.limits.memoize {
            Self::candidate_moves(board)
        } else {
            let k = board.palette() as Color;
            board
                .uncolored()
                .iter()
                .flat_map(|v| (1..=k).map(move |c| Move::new(v, c)))
                .collect()
        };

        // moves that decide the game immediately are tried first
        let mut undecided = Vec::with_capacity(moves.len());
        let mut result = None;
        for &mv in &moves {
            board.set(mv.vertex, mv.color);
            let s = board.status(self.graph);
            board.unset(mv.vertex);
            match s {
                Status::AliceWins if mover == Player::Alice => {
                    result = Some(true);
                    break;
                }
                Status::BobWins if mover == Player::Bob => {
                    result = Some(false);
                    break;
                }
                Status::Ongoing => undecided.push(mv),
                _ => {}
            }
        }
        let value = match result {
            Some(v) => v,
            None => {
                let mut found = false;
                for mv in undecided {
                    board.set(mv.vertex, mv.color);
                    let child = self.alice_wins(board);
                    board.unset(mv.vertex);
                    if mover_wins_with(child) {
                        found = true;
                        break;
                    }
                }
                // mover has no winning continuation: the opponent wins
                if found {
                    mover == Player::Alice
                } else {
                    mover == Player::Bob
                }
            }
        };
        if let Some(key) = key {
            let uncolored = board.uncolored().len();
            if self.memo.len() < self.limits.memo_capacity
                || uncolored >= self.limits.depth_threshold
            {
                self.memo.insert(key, value);
            }
        }
        value
    }
}

pub fn solve(config: &GameConfig) -> Result<(Player, SolveStats)> {
    solve_with(config, SolverLimits::default())
}

pub fn solve_with(config: &GameConfig, limits: SolverLimits) -> Result<(Player, SolveStats)> {
    let start = Instant::now();
    let mut search = Search::new(config, limits)?;
    let board = Board::new(config.graph.order(), config.palette);
    let winner = search.winner(&board);
    let mut stats = search.stats();
    stats.elapsed = start.elapsed();
    Ok((winner, stats))
}

/// Winner under optimal play from an arbitrary position.
pub fn solve_position(state: &GameState, limits: SolverLimits) -> Result<Player> {
    let mut search = Search::new(state.config(), limits)?;
    Ok(search.winner(state.board()))
}

/// A move that wins for the player to move, else the first legal move.
/// Ties go to the earliest move in vertex-then-color order.
pub fn optimal_move(state: &GameState) -> Result<Move> {
    optimal_move_with(state, SolverLimits::default())
}

pub fn optimal_move_with(state: &GameState, limits: SolverLimits) -> Result<Move> {
    let moves = state.legal_moves()?;
    let mover = state.to_move();
    let mut search = Search::new(state.config(), limits)?;
    let mut board = state.board().clone();
    for &mv in &moves {
        board.set(mv.vertex, mv.color);
        let w = search.winner(&board);
        board.unset(mv.vertex);
        if w == mover {
            return Ok(mv);
        }
    }
    Ok(moves[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KMax {
    Auto,
    Fixed(usize),
}

impl KMax {
    pub fn resolve(self, g: &Graph) -> usize {
        match self {
            KMax::Auto => g.min_degree() + 1,
            KMax::Fixed(k) => k,
        }
    }
}

/// Optimal-play winner for each palette size `1..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinProfile {
    pub first_player: Player,
    pub k_max: usize,
    /// `winners[i]` is the winner with palette size `i + 1`.
    pub winners: Vec<Player>,
}

impl WinProfile {
    pub fn winner(&self, k: usize) -> Option<Player> {
        k.checked_sub(1).and_then(|i| self.winners.get(i).copied())
    }

    /// Largest `k` Alice wins, read off the whole profile.
    pub fn game_number(&self) -> usize {
        self.winners
            .iter()
            .rposition(|&p| p == Player::Alice)
            .map_or(0, |i| i + 1)
    }

    /// Palette sizes `k` where Bob wins with `k` colors but Alice wins with `k + 1`.
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        self.winners
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Player::Bob && w[1] == Player::Alice)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Compact form such as `AABB`.
    pub fn letters(&self) -> String {
        self.winners
            .iter()
            .map(|p| match p {
                Player::Alice => 'A',
                Player::Bob => 'B',
            })
            .collect()
    }
}

pub fn win_profile(g: &Graph, first: Player, k_max: KMax) -> Result<(WinProfile, SolveStats)> {
    win_profile_with(g, first, k_max, SolverLimits::default())
}

pub fn win_profile_with(
    g: &Graph,
    first: Player,
    k_max: KMax,
    limits: SolverLimits,
) -> Result<(WinProfile, SolveStats)> {
    let k_max = k_max.resolve(g).max(1);
    let results: Vec<Result<(Player, SolveStats)>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let config = GameConfig::new(g.clone(), k, first)?;
            solve_with(&config, limits).map_err(|e| match e {
                Error::Capacity(msg) => Error::Capacity(format!("palette size {k}: {msg}")),
                other => other,
            })
        })
        .collect();
    let mut winners = Vec::with_capacity(k_max);
    let mut stats = SolveStats::default();
    for r in results {
        let (w, s) = r?;
        winners.push(w);
        stats.merge(&s);
    }
    Ok((
        WinProfile {
            first_player: first,
            k_max,
            winners,
        },
        stats,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameDomaticNumbers {
    /// Alice moves first.
    pub dg: usize,
    /// Bob moves first.
    pub dg_delayed: usize,
    pub a_profile: WinProfile,
    pub b_profile: WinProfile,
}

pub fn game_domatic_numbers(g: &Graph) -> Result<(GameDomaticNumbers, SolveStats)> {
    game_domatic_numbers_with(g, KMax::Auto, SolverLimits::default())
}

pub fn game_domatic_numbers_with(
    g: &Graph,
    k_max: KMax,
    limits: SolverLimits,
) -> Result<(GameDomaticNumbers, SolveStats)> {
    let (a, b) = rayon::join(
        || win_profile_with(g, Player::Alice, k_max, limits),
        || win_profile_with(g, Player::Bob, k_max, limits),
    );
    let (a_profile, mut stats) = a?;
    let (b_profile, sb) = b?;
    stats.merge(&sb);
    Ok((
        GameDomaticNumbers {
            dg: a_profile.game_number(),
            dg_delayed: b_profile.game_number(),
            a_profile,
            b_profile,
        },
        stats,
    ))
}
