use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{CanonicalKey, GameConfig, GameState, Player};
use crate::solver::SolverLimits;

use super::{Strategy, StrategySpec, Transcript};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "counter_line", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Refuted(Transcript),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub strategy: StrategySpec,
    pub side: Player,
    pub config: GameConfig,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub states_checked: u64,
}

impl ValidationReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

pub fn validate_strategy(
    spec: &StrategySpec,
    side: Player,
    config: &GameConfig,
) -> Result<ValidationReport> {
    if spec.side() != side {
        return Err(Error::Usage(format!("{spec} plays {}, not {side}", spec.side())));
    }
    validate_strategy_with(spec.build(config)?, config, SolverLimits::default())
}

/// Exhaustive check: the strategy's moves are fixed, the adversary tries every legal
/// move. Positions are memoized on the raw coloring plus the strategy's memory key;
/// strategies are not color-symmetric, so colors are never renamed here.
pub fn validate_strategy_with(
    strategy: Box<dyn Strategy>,
    config: &GameConfig,
    limits: SolverLimits,
) -> Result<ValidationReport> {
    limits.check_capacity(config.graph.order(), config.palette)?;
    if strategy.memory_key().is_none() {
        return Err(Error::Usage(format!(
            "{} is randomized and cannot be validated",
            strategy.spec()
        )));
    }
    let side = strategy.side();
    let spec = strategy.spec();
    let mut v = Validator {
        side,
        memo: HashMap::new(),
        states: 0,
    };
    let root = GameState::new(config.clone());
    let verdict = if v.wins(&root, strategy.box_clone())? {
        Verdict::Holds
    } else {
        Verdict::Refuted(v.losing_line(root, strategy, &spec)?)
    };
    Ok(ValidationReport {
        strategy: spec,
        side,
        config: config.clone(),
        verdict,
        states_checked: v.states,
    })
}

struct Validator {
    side: Player,
    memo: HashMap<(CanonicalKey, Vec<u32>), bool>,
    states: u64,
}

impl Validator {
    fn strategy_move(
        &self,
        state: &GameState,
        strategy: &mut Box<dyn Strategy>,
    ) -> Result<GameState> {
        let mv = strategy.choose(state);
        state.board().check_move(mv).map_err(|e| Error::StrategyFault {
            ply: state.moves_made() + 1,
            message: format!("{} played {mv}: {e}", strategy.spec()),
        })?;
        let next = state.apply_move(mv)?;
        strategy.observe(&next, mv, self.side);
        Ok(next)
    }

    fn wins(&mut self, state: &GameState, mut strategy: Box<dyn Strategy>) -> Result<bool> {
        if let Some(w) = Player::winner_of(state.status()) {
            return Ok(w == self.side);
        }
        let key = (
            state.board().raw_key(),
            strategy.memory_key().unwrap_or_default(),
        );
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.states += 1;
        let value = if state.to_move() == self.side {
            let next = self.strategy_move(state, &mut strategy)?;
            self.wins(&next, strategy)?
        } else {
            let mut all = true;
            for mv in state.legal_moves()? {
                let next = state.apply_move(mv)?;
                let mut s = strategy.box_clone();
                s.observe(&next, mv, self.side.other());
                if !self.wins(&next, s)? {
                    all = false;
                    break;
                }
            }
            all
        };
        self.memo.insert(key, value);
        Ok(value)
    }

    /// Walks one adversary line that beats the strategy, reusing the memo.
    fn losing_line(
        &mut self,
        mut state: GameState,
        mut strategy: Box<dyn Strategy>,
        spec: &StrategySpec,
    ) -> Result<Transcript> {
        let mut t = Transcript::new(state.config().clone());
        match self.side {
            Player::Alice => t.alice = Some(spec.clone()),
            Player::Bob => t.bob = Some(spec.clone()),
        }
        while !state.status().is_decided() {
            let mover = state.to_move();
            let (next, mv) = if mover == self.side {
                let next = self.strategy_move(&state, &mut strategy)?;
                let mv = last_move(&state, &next);
                (next, mv)
            } else {
                let mut found = None;
                for mv in state.legal_moves()? {
                    let next = state.apply_move(mv)?;
                    let mut s = strategy.box_clone();
                    s.observe(&next, mv, mover);
                    if !self.wins(&next, s.box_clone())? {
                        found = Some((next, mv, s));
                        break;
                    }
                }
                let (next, mv, s) = found.expect("a refuted position has a refuting reply");
                strategy = s;
                (next, mv)
            };
            t.push(mover, mv);
            state = next;
        }
        t.result = state.status();
        Ok(t)
    }
}

fn last_move(before: &GameState, after: &GameState) -> crate::game::Move {
    let v = before
        .uncolored()
        .difference(after.uncolored())
        .first()
        .expect("one vertex was colored");
    crate::game::Move::new(v, after.color(v).expect("colored"))
}
