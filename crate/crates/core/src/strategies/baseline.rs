use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::Result;
use crate::game::{GameConfig, GameState, Move, Player};
use crate::solver::{optimal_move_with, SolverLimits};

use super::{Strategy, StrategySpec};

/// Uniformly random legal moves from a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomStrategy {
    side: Player,
    seed: u64,
    rng: StdRng,
}

impl RandomStrategy {
    pub fn new(side: Player, seed: u64) -> RandomStrategy {
        RandomStrategy {
            side,
            seed,
            rng: StdRng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomStrategy {
    fn spec(&self) -> StrategySpec {
        StrategySpec::Random {
            side: self.side,
            seed: self.seed,
        }
    }

    fn side(&self) -> Player {
        self.side
    }

    fn choose(&mut self, state: &GameState) -> Move {
        let moves = state.legal_moves().expect("undecided position");
        *moves.choose(&mut self.rng).expect("an uncolored vertex exists")
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        None
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Solver-backed play: a winning move when one exists, else the first legal move.
#[derive(Clone, Debug)]
pub struct OptimalStrategy {
    side: Player,
}

impl OptimalStrategy {
    pub fn new(config: &GameConfig, side: Player) -> Result<OptimalStrategy> {
        SolverLimits::default().check_capacity(config.graph.order(), config.palette)?;
        Ok(OptimalStrategy { side })
    }
}

impl Strategy for OptimalStrategy {
    fn spec(&self) -> StrategySpec {
        StrategySpec::Optimal { side: self.side }
    }

    fn side(&self) -> Player {
        self.side
    }

    fn choose(&mut self, state: &GameState) -> Move {
        optimal_move_with(state, SolverLimits::default()).expect("capacity checked at build")
    }

    fn memory_key(&self) -> Option<Vec<u32>> {
        Some(Vec::new())
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
