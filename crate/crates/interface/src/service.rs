//! HTTP sessions where a human plays one seat against an engine strategy.
//!
//! Every session sits behind its own mutex; the engine answers inside the
//! same request that carried the human move, so a client always sees the
//! human's turn or a terminal status.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use realgame::related::banach_mazur::{BmState, BmTrace, ClosedInterval, IntervalStrategy};
use realgame::related::choquet::{Ambient, ChoquetState, ChoquetTrace, OpenInterval, OpenStrategy};
use realgame::{AnyTrace, GameState, Rational, SetDescription, Strategy, StrategySpec, Trace};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::specs::IntervalSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Game {
    Baker,
    BanachMazur,
    Choquet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Alice,
    Bob,
    Anna,
    Bartek,
    Pierre,
    Paul,
}

impl Role {
    fn game(self) -> Game {
        match self {
            Role::Alice | Role::Bob => Game::Baker,
            Role::Anna | Role::Bartek => Game::BanachMazur,
            Role::Pierre | Role::Paul => Game::Choquet,
        }
    }

    /// True for the seat that moves first.
    fn moves_first(self) -> bool {
        matches!(self, Role::Alice | Role::Anna | Role::Pierre)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    AwaitingHuman,
    AwaitingEngine,
    Faulted,
    Closed,
}

enum Position {
    Baker {
        state: GameState,
        set: SetDescription,
        engine: Box<dyn Strategy>,
    },
    BanachMazur {
        state: BmState,
        set: SetDescription,
        engine: Box<dyn IntervalStrategy>,
    },
    Choquet {
        state: ChoquetState,
        engine: Box<dyn OpenStrategy>,
    },
}

impl Position {
    fn moves_made(&self) -> usize {
        match self {
            Position::Baker { state, .. } => state.history().len(),
            Position::BanachMazur { state, .. } => state.intervals().len(),
            Position::Choquet { state, .. } => state.sets().len(),
        }
    }

    /// The engine's move, applied. Errors are strategy faults.
    fn engine_move(&mut self) -> Result<(), String> {
        match self {
            Position::Baker { state, set, engine } => {
                let value = engine.propose(state, set).map_err(|e| e.to_string())?;
                *state = state.apply_move(value).map_err(|e| format!("engine proposed an illegal move: {e}"))?;
            }
            Position::BanachMazur { state, engine, .. } => {
                let interval = engine.propose(state).map_err(|e| e.to_string())?;
                *state = state.apply(interval).map_err(|e| format!("engine proposed an illegal move: {e}"))?;
            }
            Position::Choquet { state, engine } => {
                let interval = engine.propose(state).map_err(|e| e.to_string())?;
                *state = state.apply(interval).map_err(|e| format!("engine proposed an illegal move: {e}"))?;
            }
        }
        Ok(())
    }

    /// Whether `req` repeats move `index` exactly.
    fn is_replay(&self, index: usize, req: &MoveRequest) -> bool {
        let same = |lo: &Rational, hi: &Rational| {
            req.interval.as_ref().is_some_and(|(l, h)| {
                l.parse::<Rational>().is_ok_and(|l| &l == lo) && h.parse::<Rational>().is_ok_and(|h| &h == hi)
            })
        };
        match self {
            Position::Baker { state, .. } => req
                .value
                .as_ref()
                .is_some_and(|v| v.parse::<Rational>().is_ok_and(|v| v == state.history()[index].value)),
            Position::BanachMazur { state, .. } => {
                let i = &state.intervals()[index];
                same(i.lo(), i.hi())
            }
            Position::Choquet { state, .. } => {
                let i = &state.sets()[index];
                same(i.lo(), i.hi())
            }
        }
    }

    /// The full move list in trace format.
    fn moves_json(&self) -> Value {
        match self {
            Position::Baker { state, .. } => json!(state.history()),
            Position::BanachMazur { state, set, .. } => json!(BmTrace::from_state(set.clone(), state).moves),
            Position::Choquet { state, .. } => json!(ChoquetTrace::from_state(state).moves),
        }
    }

    /// Where the next move must go: `(lower, upper)` in the point game, the
    /// current interval otherwise.
    fn bounds(&self) -> (Rational, Rational) {
        match self {
            Position::Baker { state, .. } => (state.lower().clone(), state.upper().clone()),
            Position::BanachMazur { state, .. } => {
                let c = state.current();
                (c.lo().clone(), c.hi().clone())
            }
            Position::Choquet { state, .. } => {
                let c = state.current();
                (c.lo().clone(), c.hi().clone())
            }
        }
    }

    /// The trace of all complete rounds.
    fn trace(&self) -> AnyTrace {
        match self {
            Position::Baker { state, set, .. } => {
                let complete = 2 * state.rounds_completed();
                let prefix = GameState::replay(&state.history()[..complete]).expect("history is legal");
                AnyTrace::Baker(Trace::from_state(set.clone(), &prefix))
            }
            Position::BanachMazur { state, set, .. } => {
                let complete = 2 * state.rounds_completed();
                let prefix = state.intervals()[..complete]
                    .iter()
                    .try_fold(BmState::new(), |s, i| s.apply(i.clone()))
                    .expect("history is legal");
                AnyTrace::BanachMazur(BmTrace::from_state(set.clone(), &prefix))
            }
            Position::Choquet { state, .. } => {
                let complete = 2 * state.rounds_completed();
                let prefix = state.sets()[..complete]
                    .iter()
                    .try_fold(ChoquetState::new(state.ambient()), |s, i| s.apply(i.clone()))
                    .expect("history is legal");
                AnyTrace::Choquet(ChoquetTrace::from_state(&prefix))
            }
        }
    }
}

struct Session {
    id: String,
    game: Game,
    human_role: Role,
    engine_spec: String,
    certificate: &'static str,
    position: Position,
    status: Status,
    fault: Option<String>,
}

impl Session {
    fn human_to_move(&self) -> bool {
        (self.position.moves_made() % 2 == 0) == self.human_role.moves_first()
    }

    /// Lets the engine move until it is the human's turn.
    fn advance(&mut self) {
        while self.status != Status::Faulted && !self.human_to_move() {
            self.status = Status::AwaitingEngine;
            if let Err(e) = self.position.engine_move() {
                self.status = Status::Faulted;
                self.fault = Some(e);
                return;
            }
        }
        if self.status != Status::Faulted {
            self.status = Status::AwaitingHuman;
        }
    }

    fn to_move(&self) -> Role {
        let first = self.position.moves_made() % 2 == 0;
        match (self.game, first) {
            (Game::Baker, true) => Role::Alice,
            (Game::Baker, false) => Role::Bob,
            (Game::BanachMazur, true) => Role::Anna,
            (Game::BanachMazur, false) => Role::Bartek,
            (Game::Choquet, true) => Role::Pierre,
            (Game::Choquet, false) => Role::Paul,
        }
    }

    fn view(&self) -> Value {
        let (set, ambient) = match &self.position {
            Position::Baker { set, .. } | Position::BanachMazur { set, .. } => (Some(set), None),
            Position::Choquet { state, .. } => (None, Some(state.ambient())),
        };
        let (lo, hi) = self.position.bounds();
        json!({
            "id": self.id,
            "game": self.game,
            "set": set,
            "ambient": ambient,
            "human_role": self.human_role,
            "engine": self.engine_spec,
            "status": self.status,
            "to_move": self.to_move(),
            "round": self.position.moves_made() / 2 + 1,
            "turn": self.position.moves_made(),
            "moves": self.position.moves_json(),
            "enclosure": [lo, hi],
            "certificate": self.certificate,
            "fault": self.fault,
        })
    }
}

/// All live sessions.
#[derive(Default)]
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl SessionStore {
    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .lock()
            .expect("session map poisoned")
            .get(id)
            .cloned()
            .ok_or(ApiError::UnknownSession)
    }
}

#[derive(Debug)]
pub enum ApiError {
    UnknownSession,
    WrongTurn(Status),
    IllegalMove {
        reason: &'static str,
        violated_bound: String,
        message: String,
    },
    Invalid(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (code, body) = match self {
            ApiError::UnknownSession => (
                StatusCode::NOT_FOUND,
                json!({"error": "unknown_session", "message": "no session with that id"}),
            ),
            ApiError::WrongTurn(status) => (
                StatusCode::CONFLICT,
                json!({"error": "wrong_turn", "status": status, "message": "the session is not waiting for a human move"}),
            ),
            ApiError::IllegalMove {
                reason,
                violated_bound,
                message,
            } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": "illegal_move", "reason": reason, "violated_bound": violated_bound, "message": message}),
            ),
            ApiError::Invalid(message) => (
                StatusCode::BAD_REQUEST,
                json!({"error": "invalid_request", "message": message}),
            ),
        };
        (code, Json(body)).into_response()
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    #[serde(default)]
    pub game: Option<Game>,
    /// A set document or a shorthand such as `"cantor"`.
    #[serde(default)]
    pub set: Option<Value>,
    pub human_role: Role,
    #[serde(default)]
    pub engine: Option<String>,
    #[serde(default)]
    pub ambient: Option<Ambient>,
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    /// A point, for the point-picking game.
    #[serde(default)]
    pub value: Option<String>,
    /// `["lo", "hi"]`, for the interval games.
    #[serde(default)]
    pub interval: Option<(String, String)>,
    /// Index of the move being made, as reported by `turn` in the view.
    /// A retry of a move that already landed returns the current view.
    #[serde(default)]
    pub turn: Option<usize>,
}

fn parse_set(value: Option<Value>, default: &str) -> Result<SetDescription, ApiError> {
    let parsed = match value {
        None => SetDescription::parse_spec(default),
        Some(Value::String(s)) => SetDescription::parse_spec(&s),
        Some(doc) => SetDescription::parse_spec(&doc.to_string()),
    };
    parsed.map_err(|e| ApiError::Invalid(format!("bad set: {e}")))
}

fn parse_rational(text: &str) -> Result<Rational, ApiError> {
    text.trim()
        .parse()
        .map_err(|e| ApiError::Invalid(format!("{text:?} is not an exact rational: {e}")))
}

fn reject_scripts(spec: &str) -> Result<(), ApiError> {
    if spec.starts_with("script:") {
        return Err(ApiError::Invalid("scripted engines are only available from the command line".into()));
    }
    Ok(())
}

fn build_session(req: CreateRequest) -> Result<Session, ApiError> {
    let role = req.human_role;
    let game = req.game.unwrap_or(role.game());
    if role.game() != game {
        return Err(ApiError::Invalid(format!("{role:?} is not a seat in the {game:?} game")));
    }
    let engine_first = !role.moves_first();
    let (engine_spec, certificate, position) = match game {
        Game::Baker => {
            let spec_text = req
                .engine
                .unwrap_or_else(|| if engine_first { "perfect" } else { "enumeration:farey" }.into());
            reject_scripts(&spec_text)?;
            let spec: StrategySpec = spec_text.parse().map_err(|e: realgame::StrategyError| ApiError::Invalid(e.to_string()))?;
            let default_set = match &spec {
                StrategySpec::Enumeration(name) => format!(r#"{{"type":"enumeration","name":"{name}"}}"#),
                _ => "cantor".into(),
            };
            let certificate = match (&spec, engine_first) {
                (StrategySpec::Perfect, true) => "membership",
                (StrategySpec::Enumeration(_), false) => "exclusion",
                (StrategySpec::Perfect, false) => {
                    return Err(ApiError::Invalid("the perfect-set strategy plays Alice".into()))
                }
                (StrategySpec::Enumeration(_), true) => {
                    return Err(ApiError::Invalid("the enumeration strategy plays Bob".into()))
                }
                _ => "legality",
            };
            let set = parse_set(req.set, &default_set)?;
            let engine = spec
                .build(&set)
                .map_err(|e| match e {
                    realgame::StrategyError::NotPerfect => {
                        ApiError::Invalid(format!("set not perfect: engine {spec} needs a perfect set"))
                    }
                    other => ApiError::Invalid(format!("engine {spec} cannot play this set: {other}")),
                })?;
            (spec.to_string(), certificate, Position::Baker {
                state: GameState::default(),
                set,
                engine,
            })
        }
        Game::BanachMazur => {
            let spec_text = req
                .engine
                .unwrap_or_else(|| if engine_first { "midpoint" } else { "meagre" }.into());
            reject_scripts(&spec_text)?;
            let spec: IntervalSpec = spec_text.parse().map_err(|e: crate::specs::SpecError| ApiError::Invalid(e.to_string()))?;
            let certificate = match (&spec, engine_first) {
                (IntervalSpec::Meagre, false) => "bm",
                (IntervalSpec::Meagre, true) => return Err(ApiError::Invalid("the meagre strategy plays Bartek".into())),
                _ => "legality",
            };
            let set = parse_set(req.set, r#"{"type":"enumeration","name":"farey"}"#)?;
            let engine = spec.build_bm(&set).map_err(|e| ApiError::Invalid(e.to_string()))?;
            (spec.to_string(), certificate, Position::BanachMazur {
                state: BmState::new(),
                set,
                engine,
            })
        }
        Game::Choquet => {
            let spec_text = req
                .engine
                .unwrap_or_else(|| if engine_first { "countable:farey" } else { "complete" }.into());
            reject_scripts(&spec_text)?;
            let spec: IntervalSpec = spec_text.parse().map_err(|e: crate::specs::SpecError| ApiError::Invalid(e.to_string()))?;
            let ambient = req.ambient.unwrap_or(match spec {
                IntervalSpec::Countable(_) => Ambient::Rationals,
                _ => Ambient::UnitInterval,
            });
            let certificate = match (&spec, engine_first, ambient) {
                (IntervalSpec::Complete, false, Ambient::UnitInterval) => "paul",
                (IntervalSpec::Complete, false, Ambient::Rationals) => {
                    return Err(ApiError::Invalid("the complete-ambient strategy needs ambient unit".into()))
                }
                (IntervalSpec::Complete, true, _) => return Err(ApiError::Invalid("the complete-ambient strategy plays Paul".into())),
                (IntervalSpec::Countable(_), true, Ambient::Rationals) => "pierre",
                (IntervalSpec::Countable(_), false, _) => {
                    return Err(ApiError::Invalid("the countable strategy plays Pierre".into()))
                }
                _ => "legality",
            };
            let engine = spec.build_choquet().map_err(|e| ApiError::Invalid(e.to_string()))?;
            (spec.to_string(), certificate, Position::Choquet {
                state: ChoquetState::new(ambient),
                engine,
            })
        }
    };
    let mut session = Session {
        id: uuid::Uuid::new_v4().to_string(),
        game,
        human_role: role,
        engine_spec,
        certificate,
        position,
        status: Status::AwaitingHuman,
        fault: None,
    };
    session.advance();
    Ok(session)
}

/// Applies the human move through the same `apply` used by the engines.
fn apply_human(position: &mut Position, req: &MoveRequest) -> Result<(), ApiError> {
    let interval = |req: &MoveRequest| -> Result<(Rational, Rational), ApiError> {
        let (lo, hi) = req
            .interval
            .as_ref()
            .ok_or_else(|| ApiError::Invalid("expected {\"interval\": [\"lo\", \"hi\"]}".into()))?;
        Ok((parse_rational(lo)?, parse_rational(hi)?))
    };
    let illegal = |reason: &'static str, violated_bound: String, message: String| ApiError::IllegalMove {
        reason,
        violated_bound,
        message,
    };
    match position {
        Position::Baker { state, .. } => {
            let text = req
                .value
                .as_ref()
                .ok_or_else(|| ApiError::Invalid("expected {\"value\": \"p/q\"}".into()))?;
            let value = parse_rational(text)?;
            *state = state
                .apply_move(value)
                .map_err(|e| illegal(e.reason(), e.violated_bound(), e.to_string()))?;
        }
        Position::BanachMazur { state, .. } => {
            let (lo, hi) = interval(req)?;
            let outer = state.current();
            let bound = format!("must lie within {outer}");
            let candidate =
                ClosedInterval::new(lo, hi).map_err(|e| illegal("degenerate", "must satisfy lo < hi in [0, 1]".into(), e.to_string()))?;
            *state = state
                .apply(candidate)
                .map_err(|e| illegal("not_contained", bound.clone(), e.to_string()))?;
        }
        Position::Choquet { state, .. } => {
            let (lo, hi) = interval(req)?;
            let outer = state.current();
            let candidate =
                OpenInterval::new(lo, hi).map_err(|e| illegal("degenerate", "must satisfy lo < hi".into(), e.to_string()))?;
            *state = state.apply(candidate).map_err(|e| match e {
                realgame::related::choquet::ChoquetError::EmptyInAmbient { .. } => {
                    illegal("empty_in_ambient", "must meet [0, 1]".into(), e.to_string())
                }
                other => illegal("not_contained", format!("must lie within {outer}"), other.to_string()),
            })?;
        }
    }
    Ok(())
}

type Store = Arc<SessionStore>;

async fn create_session(State(store): State<Store>, Json(req): Json<CreateRequest>) -> Result<Response, ApiError> {
    let session = build_session(req)?;
    let view = session.view();
    store
        .sessions
        .lock()
        .expect("session map poisoned")
        .insert(session.id.clone(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn get_session(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = store.get(&id)?;
    let view = session.lock().expect("session poisoned").view();
    Ok(Json(view))
}

async fn post_move(
    State(store): State<Store>,
    Path(id): Path<String>,
    Json(req): Json<MoveRequest>,
) -> Result<Json<Value>, ApiError> {
    let session = store.get(&id)?;
    let mut session = session.lock().expect("session poisoned");
    if let Some(turn) = req.turn {
        let made = session.position.moves_made();
        if turn < made && session.position.is_replay(turn, &req) {
            return Ok(Json(session.view()));
        }
        if turn != made {
            return Err(ApiError::WrongTurn(session.status));
        }
    }
    if session.status != Status::AwaitingHuman {
        return Err(ApiError::WrongTurn(session.status));
    }
    let before = session.position.moves_made();
    apply_human(&mut session.position, &req)?;
    session.advance();
    let mut view = session.view();
    let moves = view["moves"].as_array().cloned().unwrap_or_default();
    view["human_move"] = moves.get(before).cloned().unwrap_or(Value::Null);
    view["engine_reply"] = moves.get(before + 1).cloned().unwrap_or(Value::Null);
    Ok(Json(view))
}

async fn get_trace(State(store): State<Store>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = store.get(&id)?;
    let trace = session.lock().expect("session poisoned").position.trace();
    Ok(([(header::CONTENT_TYPE, "application/json")], trace.to_json()).into_response())
}

async fn close_session(State(store): State<Store>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = store.get(&id)?;
    let mut session = session.lock().expect("session poisoned");
    session.status = Status::Closed;
    Ok(Json(session.view()))
}

pub fn router() -> Router {
    router_with(Arc::new(SessionStore::default()))
}

pub fn router_with(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/moves", post(post_move))
        .route("/api/sessions/{id}/trace", get(get_trace))
        .route("/api/sessions/{id}/close", post(close_session))
        .with_state(store)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
