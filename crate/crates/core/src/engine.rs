//! The alternating point-picking game on `[0, 1]`.
//!
//! With `a_0 = 0` and `b_0 = 1`, round `n` has Alice pick `a_n` in
//! `(a_{n-1}, b_{n-1})` and then Bob pick `b_n` in `(a_n, b_{n-1})`. The limit
//! `α = lim a_n` is not finitely computable, so a game is played for a fixed
//! number of rounds and reported as a [`Trace`] with the enclosure
//! `a_N <= α < b_N`. The engine never declares a winner.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::Rational;
use crate::sets::SetDescription;
use crate::strategy::{Strategy, StrategyError};
use crate::trace::AnyTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
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
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "alice",
            Player::Bob => "bob",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub player: Player,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("{value} is illegal: must exceed {bound}")]
    TooLow { value: Rational, bound: Rational },
    #[error("{value} is illegal: must be below {bound}")]
    TooHigh { value: Rational, bound: Rational },
}

impl MoveError {
    pub fn bound(&self) -> &Rational {
        match self {
            MoveError::TooLow { bound, .. } | MoveError::TooHigh { bound, .. } => bound,
        }
    }

    /// Human-readable description of the violated bound, e.g. `must exceed 0`.
    pub fn violated_bound(&self) -> String {
        match self {
            MoveError::TooLow { bound, .. } => format!("must exceed {bound}"),
            MoveError::TooHigh { bound, .. } => format!("must be below {bound}"),
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            MoveError::TooLow { .. } => "too_low",
            MoveError::TooHigh { .. } => "too_high",
        }
    }
}

/// Position of a game: the open interval `(lower, upper)` the next move must
/// fall in, plus the full history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    lower: Rational,
    upper: Rational,
    history: Vec<Move>,
}

impl Default for GameState {
    fn default() -> Self {
        new_game()
    }
}

/// `a_0 = 0`, `b_0 = 1`, Alice to move.
pub fn new_game() -> GameState {
    GameState {
        lower: Rational::zero(),
        upper: Rational::one(),
        history: Vec::new(),
    }
}

impl GameState {
    pub fn lower(&self) -> &Rational {
        &self.lower
    }

    pub fn upper(&self) -> &Rational {
        &self.upper
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn to_move(&self) -> Player {
        if self.history.len() % 2 == 0 {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    /// Number of completed (Alice, Bob) rounds.
    pub fn rounds_completed(&self) -> usize {
        self.history.len() / 2
    }

    /// The round the next move belongs to, 1-based.
    pub fn current_round(&self) -> usize {
        self.rounds_completed() + 1
    }

    /// Checks `lower < value < upper` without applying the move.
    pub fn check_move(&self, value: &Rational) -> Result<(), MoveError> {
        if *value <= self.lower {
            return Err(MoveError::TooLow {
                value: value.clone(),
                bound: self.lower.clone(),
            });
        }
        if *value >= self.upper {
            return Err(MoveError::TooHigh {
                value: value.clone(),
                bound: self.upper.clone(),
            });
        }
        Ok(())
    }

    /// Returns the successor state. `self` is left untouched.
    pub fn apply_move(&self, value: Rational) -> Result<GameState, MoveError> {
        self.check_move(&value)?;
        let mut next = self.clone();
        let player = self.to_move();
        match player {
            Player::Alice => next.lower = value.clone(),
            Player::Bob => next.upper = value.clone(),
        }
        next.history.push(Move { player, value });
        Ok(next)
    }

    /// Replays a move list from a fresh game.
    pub fn replay(moves: &[Move]) -> Result<GameState, (usize, MoveError)> {
        moves.iter().enumerate().try_fold(new_game(), |state, (i, m)| {
            state.apply_move(m.value.clone()).map_err(|e| (i, e))
        })
    }
}

/// A finished truncated play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub set: SetDescription,
    pub rounds: usize,
    pub moves: Vec<Move>,
    pub enclosure: (Rational, Rational),
}

impl Trace {
    pub fn from_state(set: SetDescription, state: &GameState) -> Trace {
        Trace {
            set,
            rounds: state.rounds_completed(),
            moves: state.history.clone(),
            enclosure: (state.lower.clone(), state.upper.clone()),
        }
    }

    pub fn values_of(&self, player: Player) -> impl Iterator<Item = &Rational> {
        self.moves.iter().filter(move |m| m.player == player).map(|m| &m.value)
    }

    /// `a_n` for `n >= 1`.
    pub fn alice(&self, n: usize) -> Option<&Rational> {
        self.moves.get(2 * n.checked_sub(1)?).map(|m| &m.value)
    }

    /// `b_n` for `n >= 1`.
    pub fn bob(&self, n: usize) -> Option<&Rational> {
        self.moves.get(2 * n.checked_sub(1)? + 1).map(|m| &m.value)
    }

    pub fn to_json(&self) -> String {
        AnyTrace::Baker(self.clone()).to_json()
    }
}

#[derive(Debug, Error)]
pub enum PlayError {
    #[error("a game needs at least one round")]
    ZeroRounds,
    #[error("strategy fault: {player} ({strategy}) proposed an illegal move in round {round}: {error}")]
    StrategyFault {
        player: String,
        strategy: String,
        round: usize,
        error: String,
    },
    #[error("{player} ({strategy}) failed in round {round}: {error}")]
    Strategy {
        player: String,
        strategy: String,
        round: usize,
        #[source]
        error: StrategyError,
    },
    #[error("trace has no complete round")]
    EmptyTrace,
}

/// Plays `rounds` full rounds. An illegal proposal aborts the game with
/// [`PlayError::StrategyFault`]; it is never repaired.
pub fn play(
    alice: &dyn Strategy,
    bob: &dyn Strategy,
    rounds: usize,
    set: &SetDescription,
) -> Result<Trace, PlayError> {
    if rounds == 0 {
        return Err(PlayError::ZeroRounds);
    }
    let mut state = new_game();
    while state.rounds_completed() < rounds {
        let player = state.to_move();
        let strategy = match player {
            Player::Alice => alice,
            Player::Bob => bob,
        };
        let round = state.current_round();
        let value = strategy.propose(&state, set).map_err(|error| PlayError::Strategy {
            player: player.to_string(),
            strategy: strategy.name(),
            round,
            error,
        })?;
        state = state.apply_move(value).map_err(|e| PlayError::StrategyFault {
            player: player.to_string(),
            strategy: strategy.name(),
            round,
            error: e.to_string(),
        })?;
    }
    Ok(Trace::from_state(set.clone(), &state))
}

/// `(a_N, b_N)`: every legal continuation has its limit in `[a_N, b_N)`.
pub fn alpha_enclosure(trace: &Trace) -> Result<(Rational, Rational), PlayError> {
    if trace.rounds == 0 {
        return Err(PlayError::EmptyTrace);
    }
    Ok(trace.enclosure.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{MidpointStrategy, ScriptedStrategy};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn fresh_game() {
        let g = new_game();
        assert_eq!((g.lower(), g.upper()), (&r("0"), &r("1")));
        assert_eq!(g.to_move(), Player::Alice);
        assert!(g.history().is_empty());
        assert_eq!(new_game(), new_game());
    }

    #[test]
    fn apply_move_examples() {
        let g = new_game();
        let after_alice = g.apply_move(r("1/4")).unwrap();
        assert_eq!((after_alice.lower(), after_alice.upper()), (&r("1/4"), &r("1")));
        assert_eq!(after_alice.to_move(), Player::Bob);
        assert_eq!(g, new_game(), "input state must not change");

        let err = after_alice.apply_move(r("1/4")).unwrap_err();
        assert!(matches!(err, MoveError::TooLow { .. }));
        assert_eq!(err.violated_bound(), "must exceed 1/4");

        let after_bob = after_alice.apply_move(r("1/2")).unwrap();
        assert_eq!((after_bob.lower(), after_bob.upper()), (&r("1/4"), &r("1/2")));
        assert_eq!(after_bob.to_move(), Player::Alice);
        assert_eq!(after_bob.rounds_completed(), 1);

        assert!(matches!(after_bob.apply_move(r("1/2")), Err(MoveError::TooHigh { .. })));
        assert!(matches!(g.apply_move(r("0")), Err(MoveError::TooLow { .. })));
    }

    #[test]
    fn midpoint_play() {
        let trace = play(&MidpointStrategy, &MidpointStrategy, 2, &SetDescription::unit()).unwrap();
        let values: Vec<String> = trace.moves.iter().map(|m| m.value.to_string()).collect();
        assert_eq!(values, ["1/2", "3/4", "5/8", "11/16"]);
        assert_eq!(alpha_enclosure(&trace).unwrap(), (r("5/8"), r("11/16")));
        assert_eq!(trace.alice(2), Some(&r("5/8")));
        assert_eq!(trace.bob(1), Some(&r("3/4")));
        assert_eq!(trace.alice(0), None);
    }

    #[test]
    fn zero_rounds_rejected() {
        let err = play(&MidpointStrategy, &MidpointStrategy, 0, &SetDescription::unit()).unwrap_err();
        assert!(matches!(err, PlayError::ZeroRounds));
    }

    #[test]
    fn illegal_script_is_a_fault() {
        let alice = ScriptedStrategy::new(vec![r("1/4")]);
        let bob = ScriptedStrategy::new(vec![r("1/4")]);
        match play(&alice, &bob, 1, &SetDescription::unit()).unwrap_err() {
            PlayError::StrategyFault { player, round, .. } => {
                assert_eq!((player.as_str(), round), ("bob", 1));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn enclosure_of_single_round() {
        let alice = ScriptedStrategy::new(vec![r("1/4")]);
        let bob = ScriptedStrategy::new(vec![r("1/2")]);
        let trace = play(&alice, &bob, 1, &SetDescription::unit()).unwrap();
        assert_eq!(alpha_enclosure(&trace).unwrap(), (r("1/4"), r("1/2")));
        let empty = Trace::from_state(SetDescription::unit(), &new_game());
        assert!(matches!(alpha_enclosure(&empty), Err(PlayError::EmptyTrace)));
    }

    #[test]
    fn replay_reports_first_bad_move() {
        let moves = vec![
            Move { player: Player::Alice, value: r("1/2") },
            Move { player: Player::Bob, value: r("3/2") },
        ];
        let (index, err) = GameState::replay(&moves).unwrap_err();
        assert_eq!(index, 1);
        assert!(matches!(err, MoveError::TooHigh { .. }));
    }
}
