//! Executable game strategies, a match arena and an exhaustive validator.
//!
//! A strategy is a deterministic policy with private memory. The validator
//! fixes the strategy's moves and lets the adversary branch over every legal
//! move, so a `Holds` verdict is an unconditional proof for that instance.

mod arena;
mod baseline;
mod bipartite;
mod cycle;
mod flood;
mod grid;
mod matching_follower;
mod subdivision;
mod tree;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::game::{Color, GameConfig, GameState, Move, Player, Status};

pub use arena::{play_match, play_match_with, Transcript, TranscriptMove};
pub use baseline::{OptimalStrategy, RandomStrategy};
pub use bipartite::{Bipartition, BipartiteCase, BipartiteGeneral};
pub use cycle::{cycle_order, BobCycle};
pub use flood::BobFlood;
pub use grid::BobGrid2;
pub use matching_follower::AliceMatchingFollower;
pub use subdivision::{touching_cycle_pair, BobSubdivision, CyclePair};
pub use tree::{BobTreePeeler, PeelerMode};
pub use validate::{validate_strategy, validate_strategy_with, ValidationReport, Verdict};

pub trait Strategy: Send {
    /// Id and parameters; enough to rebuild the strategy for replay.
    fn spec(&self) -> StrategySpec;

    fn side(&self) -> Player;

    /// Called after every move, the strategy's own included.
    fn observe(&mut self, _after: &GameState, _mv: Move, _by: Player) {}

    /// Only called on an undecided position with `side()` to move.
    fn choose(&mut self, state: &GameState) -> Move;

    /// Everything in private memory that can influence later moves.
    /// `None` for strategies that cannot be validated (randomized ones).
    fn memory_key(&self) -> Option<Vec<u32>>;

    fn box_clone(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Serializable strategy identity. `build` checks applicability against a config.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum StrategySpec {
    AliceMatchingFollower,
    BobFlood,
    BobTreePeeler,
    BipartiteGeneral {
        side: Player,
        /// Skip the immediate-win check and play the case scripts only.
        #[serde(default)]
        literal: bool,
    },
    BobCycle,
    BobGrid2,
    BobSubdivision {
        /// The graph `G` of `S(G)`; inferred from the graph's family tag when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<FamilySpec>,
    },
    Random {
        side: Player,
        seed: u64,
    },
    Optimal {
        side: Player,
    },
}

impl StrategySpec {
    pub fn id(&self) -> &'static str {
        match self {
            StrategySpec::AliceMatchingFollower => "alice_matching_follower",
            StrategySpec::BobFlood => "bob_flood",
            StrategySpec::BobTreePeeler => "bob_tree_peeler",
            StrategySpec::BipartiteGeneral { .. } => "bipartite_general",
            StrategySpec::BobCycle => "bob_cycle",
            StrategySpec::BobGrid2 => "bob_grid2",
            StrategySpec::BobSubdivision { .. } => "bob_subdivision",
            StrategySpec::Random { .. } => "random",
            StrategySpec::Optimal { .. } => "optimal",
        }
    }

    pub fn side(&self) -> Player {
        match *self {
            StrategySpec::AliceMatchingFollower => Player::Alice,
            StrategySpec::BipartiteGeneral { side, .. }
            | StrategySpec::Random { side, .. }
            | StrategySpec::Optimal { side } => side,
            _ => Player::Bob,
        }
    }

    pub fn build(&self, config: &GameConfig) -> Result<Box<dyn Strategy>> {
        Ok(match self {
            StrategySpec::AliceMatchingFollower => {
                Box::new(AliceMatchingFollower::for_config(config)?)
            }
            StrategySpec::BobFlood => Box::new(BobFlood::new(config)?),
            StrategySpec::BobTreePeeler => Box::new(BobTreePeeler::new(config)?),
            &StrategySpec::BipartiteGeneral { side, literal } => {
                Box::new(BipartiteGeneral::new(config, side)?.literal(literal))
            }
            StrategySpec::BobCycle => Box::new(BobCycle::new(config)?),
            StrategySpec::BobGrid2 => Box::new(BobGrid2::new(config)?),
            StrategySpec::BobSubdivision { base } => {
                let base = match base {
                    Some(b) => b.clone(),
                    None => subdivision_base_from_tag(config)?,
                };
                Box::new(BobSubdivision::new(config, &base)?)
            }
            &StrategySpec::Random { side, seed } => Box::new(RandomStrategy::new(side, seed)),
            &StrategySpec::Optimal { side } => Box::new(OptimalStrategy::new(config, side)?),
        })
    }
}

fn subdivision_base_from_tag(config: &GameConfig) -> Result<FamilySpec> {
    let tagged = config.graph.tag().and_then(|t| t.parse::<FamilySpec>().ok());
    match tagged {
        Some(FamilySpec::Subdivision(inner)) => Ok(*inner),
        _ => Err(Error::Applicability(
            "bob_subdivision needs the base graph G of S(G); give it explicitly".into(),
        )),
    }
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: Player| if p == Player::Alice { "alice" } else { "bob" };
        match self {
            StrategySpec::BipartiteGeneral { side: s, literal } => {
                write!(f, "bipartite_general:{}", side(*s))?;
                if *literal {
                    f.write_str(":literal")?;
                }
                Ok(())
            }
            StrategySpec::BobSubdivision { base: Some(b) } => write!(f, "bob_subdivision:{b}"),
            StrategySpec::Random { side: s, seed } => write!(f, "random:{}:{seed}", side(*s)),
            StrategySpec::Optimal { side: s } => write!(f, "optimal:{}", side(*s)),
            other => f.write_str(other.id()),
        }
    }
}

/// `alice_matching_follower`, `bob_flood`, `bob_tree_peeler`, `bob_cycle`, `bob_grid2`,
/// `bob_subdivision[:BASE]`, `bipartite_general:SIDE[:literal]`, `random:SIDE[:SEED]`,
/// `optimal:SIDE`.
impl FromStr for StrategySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<StrategySpec> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let bad = || Error::input(format!("unknown strategy {s:?}"));
        fn side_of<'a>(head: &str, r: Option<&'a str>) -> Result<(Player, Option<&'a str>)> {
            let r = r.ok_or_else(|| Error::input(format!("strategy {head} needs a side")))?;
            let (p, more) = match r.split_once(':') {
                Some((p, m)) => (p, Some(m)),
                None => (r, None),
            };
            Ok((p.parse()?, more))
        }
        let spec = match head {
            "alice_matching_follower" => StrategySpec::AliceMatchingFollower,
            "bob_flood" => StrategySpec::BobFlood,
            "bob_tree_peeler" => StrategySpec::BobTreePeeler,
            "bob_cycle" => StrategySpec::BobCycle,
            "bob_grid2" => StrategySpec::BobGrid2,
            "bob_subdivision" => StrategySpec::BobSubdivision {
                base: rest.map(str::parse).transpose()?,
            },
            "bipartite_general" => {
                let (side, more) = side_of(head, rest)?;
                let literal = match more {
                    None => false,
                    Some("literal") => true,
                    Some(_) => return Err(bad()),
                };
                StrategySpec::BipartiteGeneral { side, literal }
            }
            "random" => {
                let (side, more) = side_of(head, rest)?;
                let seed = match more {
                    Some(x) => x.parse().map_err(|_| bad())?,
                    None => 0,
                };
                StrategySpec::Random { side, seed }
            }
            "optimal" => StrategySpec::Optimal {
                side: side_of(head, rest)?.0,
            },
            _ => return Err(bad()),
        };
        match (&spec, rest) {
            (
                StrategySpec::BipartiteGeneral { .. }
                | StrategySpec::Random { .. }
                | StrategySpec::Optimal { .. }
                | StrategySpec::BobSubdivision { .. },
                _,
            )
            | (_, None) => Ok(spec),
            _ => Err(bad()),
        }
    }
}

pub(crate) fn not_applicable(msg: impl Into<String>) -> Error {
    Error::Applicability(msg.into())
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Applicability(msg()))
    }
}

pub(crate) fn require_palette(config: &GameConfig, id: &str, k: usize) -> Result<()> {
    require(config.palette == k, || {
        format!("{id} is defined for palette size {k}, got {}", config.palette)
    })
}

/// A move that ends the game at once in `player`'s favor, first in vertex-then-color order.
/// Playing it can never turn a won line into a lost one, so every proof strategy
/// checks for one before following its script.
pub fn immediate_win(state: &GameState, player: Player) -> Option<Move> {
    let target = match player {
        Player::Alice => Status::AliceWins,
        Player::Bob => Status::BobWins,
    };
    let g = state.graph();
    let mut board = state.board().clone();
    let k = state.palette() as Color;
    for v in state.uncolored() {
        for c in 1..=k {
            board.set(v, c);
            let s = board.status(g);
            board.unset(v);
            if s == target {
                return Some(Move::new(v, c));
            }
        }
    }
    None
}

/// The first legal move in vertex-then-color order: the deterministic filler
/// for "arbitrary" moves.
pub fn first_legal(state: &GameState) -> Move {
    let v = state
        .uncolored()
        .first()
        .expect("choose is only called on undecided positions");
    Move::new(v, 1)
}

pub(crate) fn encode_opt(v: Option<usize>) -> u32 {
    v.map_or(0, |x| x as u32 + 1)
}

pub(crate) fn encode_move(m: Option<Move>) -> [u32; 2] {
    match m {
        Some(m) => [m.vertex as u32 + 1, m.color as u32],
        None => [0, 0],
    }
}
