use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Color, GameConfig, GameState, Move, Player, Status};
use crate::graph::Vertex;

use super::{Strategy, StrategySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    /// 1-based.
    pub ply: usize,
    pub player: Player,
    pub vertex: Vertex,
    pub color: Color,
}

impl TranscriptMove {
    pub fn as_move(&self) -> Move {
        Move::new(self.vertex, self.color)
    }
}

/// A played game. A missing strategy means that side was an exhaustive
/// adversary or a human.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub config: GameConfig,
    pub alice: Option<StrategySpec>,
    pub bob: Option<StrategySpec>,
    pub moves: Vec<TranscriptMove>,
    #[serde(rename = "final")]
    pub result: Status,
}

impl Transcript {
    pub fn new(config: GameConfig) -> Transcript {
        Transcript {
            config,
            alice: None,
            bob: None,
            moves: Vec::new(),
            result: Status::Ongoing,
        }
    }

    pub fn push(&mut self, player: Player, mv: Move) {
        self.moves.push(TranscriptMove {
            ply: self.moves.len() + 1,
            player,
            vertex: mv.vertex,
            color: mv.color,
        });
    }

    pub fn winner(&self) -> Option<Player> {
        Player::winner_of(self.result)
    }

    /// Replays the moves from the empty board, checking legality, turn order and that
    /// play stops exactly when the game is decided. Returns the reached status.
    pub fn replay(&self) -> Result<Status> {
        let mut state = GameState::new(self.config.clone());
        for m in &self.moves {
            if state.status().is_decided() {
                return Err(Error::input(format!("move at ply {} after the game ended", m.ply)));
            }
            if m.player != state.to_move() {
                return Err(Error::input(format!("ply {}: {} moved out of turn", m.ply, m.player)));
            }
            state = state.apply_move(m.as_move())?;
        }
        Ok(state.status())
    }

    /// `replay` reproduces the recorded final status.
    pub fn is_consistent(&self) -> bool {
        self.replay().ok() == Some(self.result)
    }
}

/// Builds both strategies for `config` and plays them against each other.
pub fn play_match(
    first: &StrategySpec,
    second: &StrategySpec,
    config: &GameConfig,
) -> Result<Transcript> {
    check_sides(first.side(), second.side(), config)?;
    play_match_with(first.build(config)?, second.build(config)?, config)
}

fn check_sides(first: Player, second: Player, config: &GameConfig) -> Result<()> {
    if first != config.first || second != config.first.other() {
        return Err(Error::Usage(format!(
            "the first strategy must play {} and the second {}; got {first} and {second}",
            config.first,
            config.first.other()
        )));
    }
    Ok(())
}

/// Plays two already-built strategies; they must have been built for `config`.
pub fn play_match_with(
    mut first: Box<dyn Strategy>,
    mut second: Box<dyn Strategy>,
    config: &GameConfig,
) -> Result<Transcript> {
    check_sides(first.side(), second.side(), config)?;
    let mut transcript = Transcript::new(config.clone());
    let (a, b) = if config.first == Player::Alice {
        (first.spec(), second.spec())
    } else {
        (second.spec(), first.spec())
    };
    transcript.alice = Some(a);
    transcript.bob = Some(b);

    let mut state = GameState::new(config.clone());
    while !state.status().is_decided() {
        let mover = state.to_move();
        let ply = state.moves_made() + 1;
        let (active, passive) = if mover == config.first {
            (&mut first, &mut second)
        } else {
            (&mut second, &mut first)
        };
        let mv = active.choose(&state);
        state.board().check_move(mv).map_err(|e| Error::StrategyFault {
            ply,
            message: format!("{} played {mv}: {e}", active.spec()),
        })?;
        state = state.apply_move(mv)?;
        active.observe(&state, mv, mover);
        passive.observe(&state, mv, mover);
        transcript.push(mover, mv);
    }
    transcript.result = state.status();
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn config(spec: &str, k: usize, first: Player) -> GameConfig {
        let g = spec.parse::<FamilySpec>().unwrap().generate().unwrap();
        GameConfig::new(g, k, first).unwrap()
    }

    #[derive(Clone)]
    struct Cheater;

    impl Strategy for Cheater {
        fn spec(&self) -> StrategySpec {
            StrategySpec::Optimal { side: Player::Bob }
        }
        fn side(&self) -> Player {
            Player::Bob
        }
        fn choose(&mut self, _: &GameState) -> Move {
            Move::new(0, 1)
        }
        fn memory_key(&self) -> Option<Vec<u32>> {
            Some(vec![])
        }
        fn box_clone(&self) -> Box<dyn Strategy> {
            Box::new(self.clone())
        }
    }

    #[test]
    fn flood_beats_random_alice_on_c4() {
        let c = config("cycle:4", 3, Player::Alice);
        for seed in 0..20 {
            let alice = StrategySpec::Random { side: Player::Alice, seed };
            let t = play_match(&alice, &StrategySpec::BobFlood, &c).unwrap();
            assert_eq!(t.result, Status::BobWins);
            assert!(t.is_consistent());
        }
    }

    #[test]
    fn matching_follower_beats_random_bob_on_c6() {
        let c = config("cycle:6", 2, Player::Bob);
        for seed in 0..20 {
            let bob = StrategySpec::Random { side: Player::Bob, seed };
            let t = play_match(&bob, &StrategySpec::AliceMatchingFollower, &c).unwrap();
            assert_eq!(t.result, Status::AliceWins);
            assert_eq!(t.bob, Some(bob));
            assert!(t.is_consistent());
        }
    }

    #[test]
    fn mismatched_sides_are_usage_errors() {
        let c = config("cycle:4", 3, Player::Alice);
        let r = play_match(&StrategySpec::BobFlood, &StrategySpec::BobFlood, &c);
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn illegal_moves_are_strategy_faults() {
        // the cheater recolors vertex 0 on its second turn; K_4 cannot be decided by then
        let c = config("complete:4", 2, Player::Bob);
        for seed in 0..5 {
            let alice = StrategySpec::Random { side: Player::Alice, seed }.build(&c).unwrap();
            let r = play_match_with(Box::new(Cheater), alice, &c);
            assert!(matches!(r, Err(Error::StrategyFault { ply: 3, .. })), "{r:?}");
        }
    }

    #[test]
    fn transcripts_serialize_and_replay() {
        let c = config("path:5", 2, Player::Bob);
        let alice = StrategySpec::Random { side: Player::Alice, seed: 7 };
        let t = play_match(&StrategySpec::BobTreePeeler, &alice, &c).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains(r#""seed":7"#));
        let back: Transcript = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.replay().unwrap(), t.result);

        let mut tampered = t.clone();
        tampered.moves.swap(0, 1);
        assert!(!tampered.is_consistent());
    }
}
