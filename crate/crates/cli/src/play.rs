use std::io::{BufRead, Write};

use domgame_core::solver::optimal_move_with;
use domgame_core::strategies::Transcript;
use domgame_core::{Error, GameConfig, GameState, Move, Player, Result, SolverLimits, Status};

fn io_err(e: std::io::Error) -> Error {
    Error::Input(format!("terminal: {e}"))
}

fn board_line(state: &GameState) -> String {
    (0..state.graph().order())
        .map(|v| match state.color(v) {
            Some(c) => format!("{v}={c}"),
            None => format!("{v}=."),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_move(line: &str) -> std::result::Result<Move, String> {
    let nums: Vec<&str> = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect();
    match nums.as_slice() {
        [v, c] => match (v.parse(), c.parse()) {
            (Ok(v), Ok(c)) => Ok(Move::new(v, c)),
            _ => Err(format!("expected `vertex color`, got {line:?}")),
        },
        _ => Err(format!("expected `vertex color`, got {line:?}")),
    }
}

/// Human versus the optimal engine. Illegal or malformed input is re-prompted.
pub fn play<R: BufRead, W: Write>(
    config: GameConfig,
    human: Player,
    limits: SolverLimits,
    mut input: R,
    mut out: W,
    interactive: bool,
) -> Result<Transcript> {
    let mut transcript = Transcript::new(config.clone());
    let mut state = GameState::new(config);
    writeln!(
        out,
        "You are {human}. Vertices 0..{}, colors 1..={}. Enter moves as `vertex color`.",
        state.graph().order() - 1,
        state.palette()
    )
    .map_err(io_err)?;
    while state.status() == Status::Ongoing {
        writeln!(out, "[{}]", board_line(&state)).map_err(io_err)?;
        let mover = state.to_move();
        let mv = if mover == human {
            loop {
                if interactive {
                    write!(out, "{human}> ").map_err(io_err)?;
                    out.flush().map_err(io_err)?;
                }
                let mut line = String::new();
                if input.read_line(&mut line).map_err(io_err)? == 0 {
                    return Err(Error::Usage("input ended before the game did".into()));
                }
                let checked = parse_move(&line)
                    .and_then(|mv| state.board().check_move(mv).map(|_| mv).map_err(|e| e.to_string()));
                match checked {
                    Ok(mv) => break mv,
                    Err(reason) => writeln!(out, "illegal: {reason}; try again").map_err(io_err)?,
                }
            }
        } else {
            let mv = optimal_move_with(&state, limits)?;
            writeln!(out, "{mover} colors {} with {}", mv.vertex, mv.color).map_err(io_err)?;
            mv
        };
        transcript.push(mover, mv);
        state = state.apply_move(mv)?;
    }
    transcript.result = state.status();
    let verdict = match state.status() {
        Status::AliceWins => "Alice wins: every color class dominates",
        _ => "Bob wins: some color class fails to dominate",
    };
    writeln!(out, "[{}]\n{verdict}", board_line(&state)).map_err(io_err)?;
    Ok(transcript)
}
