//! JSON/HTTP facade over live games.
//!
//! | method | path                 | body                                  |
//! |--------|----------------------|---------------------------------------|
//! | POST   | `/games`             | `{n, mode?, secret?, lie_round?}`     |
//! | POST   | `/games/{id}/answer` | `{answer: "yes" \| "no"}`             |
//! | GET    | `/games/{id}`        |                                       |
//! | GET    | `/codes`             |                                       |
//! | POST   | `/codes/validate`    | generator file text                   |
//!
//! Every handler is a method on [`App`] returning a [`Reply`], so the facade can
//! be exercised without a socket. Bodies are canonical JSON (sorted keys, no
//! floats), which makes a replayed answer sequence reproduce identical bytes.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use serde_json::{json, Value};

use trivalent::stab::{load_code, BuiltinCode};
use trivalent::ulam::{check_secret, Answer, Game, Honest, Liar, Outcome, Prover};

/// Status code plus JSON body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub status: u16,
    pub body: Value,
}

impl Reply {
    fn ok(body: Value) -> Self {
        Reply { status: 200, body }
    }

    fn error(status: u16, msg: impl Into<String>) -> Self {
        Reply {
            status,
            body: json!({ "error": msg.into() }),
        }
    }

    /// Canonical serialization of the body.
    pub fn text(&self) -> String {
        self.body.to_string()
    }
}

impl IntoResponse for Reply {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, [(header::CONTENT_TYPE, "application/json")], self.text()).into_response()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// The client is the prover and answers each question.
    HumanProver,
    /// The server answers from a known secret, lying at most once.
    Simulated { secret: u32, lie_round: Option<usize> },
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::HumanProver => "human-prover",
            Mode::Simulated { .. } => "simulated",
        }
    }
}

struct Session {
    id: String,
    mode: Mode,
    game: Game,
}

impl Session {
    fn summary(&self) -> Value {
        let s = self.game.state();
        let mut body = json!({
            "id": self.id,
            "round": self.game.round(),
            "state": { "a": s.a().len(), "b": s.b().len(), "q": s.q(), "weight": s.weight() },
        });
        if let Some(q) = self.game.question() {
            body["question"] = json!(q.members());
        }
        if let Some(o) = self.game.outcome() {
            let t = self.game.transcript();
            body["outcome"] = json!(outcome_name(o));
            body["verdict"] = json!(t.verdict);
            body["lie_detected_round"] = json!(t.lie_detected_round);
        }
        body
    }

    fn full(&self) -> Value {
        let mut body = self.summary();
        body["n"] = json!(self.game.n());
        body["mode"] = json!(self.mode.name());
        body["questions"] = json!(self.game.budget());
        body["over"] = json!(self.game.is_over());
        body["transcript"] = serde_json::to_value(self.game.transcript()).expect("transcripts serialize");
        body
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Verdict(_) => "verdict",
        Outcome::Contradiction => "contradiction",
        Outcome::Unresolved => "unresolved",
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NewGame {
    n: u64,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    secret: Option<u32>,
    #[serde(default)]
    lie_round: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnswerBody {
    answer: String,
}

/// Session registry. Sessions are individually locked; the map lock is only
/// held to look them up.
#[derive(Default)]
pub struct App {
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
    log_dir: Option<PathBuf>,
}

impl App {
    pub fn new(log_dir: Option<PathBuf>) -> Self {
        App {
            log_dir,
            ..App::default()
        }
    }

    fn session(&self, id: &str) -> Option<Arc<Mutex<Session>>> {
        self.sessions.lock().expect("registry lock").get(id).cloned()
    }

    fn log_finished(&self, s: &Session) {
        let Some(dir) = &self.log_dir else { return };
        let line = json!({
            "id": s.id,
            "n": s.game.n(),
            "mode": s.mode.name(),
            "outcome": s.game.outcome().map(outcome_name),
            "transcript": s.game.transcript(),
        });
        let written = fs::create_dir_all(dir).and_then(|_| {
            let mut f = OpenOptions::new().create(true).append(true).open(dir.join("games.jsonl"))?;
            writeln!(f, "{line}")
        });
        if let Err(e) = written {
            eprintln!("warning: could not append to game log in {}: {e}", dir.display());
        }
    }

    /// POST /games
    pub fn create_game(&self, body: &[u8]) -> Reply {
        let req: NewGame = match serde_json::from_slice(body) {
            Ok(r) => r,
            Err(e) => return Reply::error(400, format!("malformed body: {e}")),
        };
        let mode = match (req.mode.as_deref().unwrap_or("human-prover"), req.secret) {
            ("human-prover", None) if req.lie_round.is_none() => Mode::HumanProver,
            ("human-prover", _) => {
                return Reply::error(400, "human-prover games take no secret or lie_round")
            }
            ("simulated", Some(secret)) => Mode::Simulated { secret, lie_round: req.lie_round },
            ("simulated", None) => return Reply::error(400, "simulated games need a secret"),
            (other, _) => return Reply::error(400, format!("unknown mode {other:?}")),
        };
        if let Mode::Simulated { secret, .. } = mode {
            if let Err(e) = check_secret(req.n, secret) {
                return Reply::error(400, e.to_string());
            }
        }
        let mut game = match Game::new(req.n) {
            Ok(g) => g,
            Err(e) => return Reply::error(400, e.to_string()),
        };
        if let Mode::Simulated { secret, lie_round } = mode {
            let mut prover: Box<dyn Prover> = match lie_round {
                Some(r) => Box::new(Liar { secret, lie_round: r }),
                None => Box::new(Honest { secret }),
            };
            while let Some(q) = game.question().cloned() {
                let played = prover
                    .answer(game.round() + 1, &q, game.state())
                    .and_then(|a| game.answer(a).map(|_| ()));
                if let Err(e) = played {
                    return Reply::error(400, e.to_string());
                }
            }
        }
        let id = format!("g{}", self.next_id.fetch_add(1, Ordering::SeqCst) + 1);
        let session = Session { id: id.clone(), mode, game };
        if session.game.is_over() {
            self.log_finished(&session);
        }
        let mut body = session.summary();
        body["n"] = json!(req.n);
        body["questions"] = json!(session.game.budget());
        self.sessions
            .lock()
            .expect("registry lock")
            .insert(id, Arc::new(Mutex::new(session)));
        Reply::ok(body)
    }

    /// POST /games/{id}/answer
    pub fn answer(&self, id: &str, body: &[u8]) -> Reply {
        let Some(session) = self.session(id) else {
            return Reply::error(404, format!("unknown game {id}"));
        };
        let req: AnswerBody = match serde_json::from_slice(body) {
            Ok(r) => r,
            Err(e) => return Reply::error(400, format!("malformed body: {e}")),
        };
        let answer = match req.answer.as_str() {
            "yes" => Answer::Yes,
            "no" => Answer::No,
            other => return Reply::error(400, format!("answer must be \"yes\" or \"no\", got {other:?}")),
        };
        let mut s = session.lock().expect("session lock");
        if s.game.is_over() {
            return Reply::error(409, format!("game {id} is over"));
        }
        if s.mode != Mode::HumanProver {
            return Reply::error(409, format!("game {id} is answered by the server"));
        }
        if let Err(e) = s.game.answer(answer) {
            return Reply::error(409, e.to_string());
        }
        if s.game.is_over() {
            self.log_finished(&s);
        }
        Reply::ok(s.summary())
    }

    /// GET /games/{id}
    pub fn show(&self, id: &str) -> Reply {
        match self.session(id) {
            Some(s) => Reply::ok(s.lock().expect("session lock").full()),
            None => Reply::error(404, format!("unknown game {id}")),
        }
    }

    /// GET /codes
    pub fn codes(&self) -> Reply {
        let codes: Vec<Value> = BuiltinCode::ALL
            .iter()
            .map(|b| {
                let c = b.code();
                json!({ "name": b.name(), "n": c.n(), "k": c.k(), "generators": b.generator_strings() })
            })
            .collect();
        Reply::ok(json!({ "codes": codes }))
    }

    /// POST /codes/validate
    pub fn validate(&self, body: &[u8]) -> Reply {
        let Ok(text) = std::str::from_utf8(body) else {
            return Reply::error(400, "body is not UTF-8 text");
        };
        Reply::ok(match load_code(text) {
            Ok(c) => json!({
                "valid": true,
                "n": c.n(),
                "k": c.k(),
                "generators": c.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            }),
            Err(e) => json!({ "valid": false, "error": e.to_string() }),
        })
    }
}

pub fn router(app: Arc<App>) -> Router {
    Router::new()
        .route("/games", post(|State(app): State<Arc<App>>, body: Bytes| async move { app.create_game(&body) }))
        .route("/games/{id}", get(|State(app): State<Arc<App>>, Path(id): Path<String>| async move { app.show(&id) }))
        .route(
            "/games/{id}/answer",
            post(|State(app): State<Arc<App>>, Path(id): Path<String>, body: Bytes| async move {
                app.answer(&id, &body)
            }),
        )
        .route("/codes", get(|State(app): State<Arc<App>>| async move { app.codes() }))
        .route(
            "/codes/validate",
            post(|State(app): State<Arc<App>>, body: Bytes| async move { app.validate(&body) }),
        )
        .with_state(app)
}

/// Serves on an already bound listener until the process stops.
pub async fn serve_on(listener: tokio::net::TcpListener, app: Arc<App>) -> std::io::Result<()> {
    axum::serve(listener, router(app)).await
}

pub async fn serve(bind: &str, port: u16, log_dir: Option<PathBuf>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind((bind, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    serve_on(listener, Arc::new(App::new(log_dir))).await?;
    Ok(())
}
