//! Rényi–Ulam search with at most one lie.
//!
//! The questioner tracks Berlekamp's state: candidates consistent with every
//! answer (A), candidates contradicted by exactly one answer (B) and the number
//! of questions left. With q questions left the state has weight
//! `|A|·(q+1) + |B|`, and a yes/no split conserves it.
//!
//! Questions are picked by balancing the two branch weights. Pure balancing
//! is not always enough (it loses at n = 15, for instance), so for small
//! states the questioner keeps only moves whose branches are both winnable
//! under exact minimax over the counts (|A|, |B|, q).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dense::{joint_projection_for, signs_from_index, DenseError, DenseOperator, Sign, MAX_QUBITS};
use crate::stab::Completion;
use crate::Execution;

/// Largest candidate count searched by exact minimax.
pub const EXACT_LIMIT: u64 = 64;
/// Largest candidate universe a game will materialize.
pub const MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UlamError {
    #[error("at least one candidate is required")]
    NoCandidates,
    #[error("{n} candidates exceeds the limit of {cap}")]
    TooManyCandidates { n: u64, cap: u64 },
    #[error("secret {secret} is not among the {n} candidates")]
    SecretOutOfRange { secret: u32, n: u64 },
    #[error("the game is already solved")]
    Solved,
    #[error("no questions remain")]
    NoQuestionsLeft,
    #[error("no question wins from |A|={a}, |B|={b} with {q} questions left")]
    NoWinningQuestion { a: usize, b: usize, q: u32 },
    #[error("answers at round {round} contradict every candidate (more than one lie)")]
    ProtocolViolation { round: usize },
    #[error("question budget exhausted with |A|={a}, |B|={b}")]
    BudgetExhausted { a: usize, b: usize },
    #[error("pattern {pattern} is outside the {count} sign patterns")]
    UnknownPattern { pattern: u32, count: usize },
    #[error("measurement of question at round {round} is not deterministic")]
    Indeterminate { round: usize },
    #[error(transparent)]
    Dense(#[from] DenseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }

    pub fn flipped(self) -> Self {
        Answer::from_bool(!self.is_yes())
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_yes() { "yes" } else { "no" })
    }
}

impl FromStr for Answer {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "yes" | "y" | "1" | "true" => Ok(Answer::Yes),
            "no" | "n" | "0" | "false" => Ok(Answer::No),
            other => Err(format!("expected yes or no, got {other:?}")),
        }
    }
}

/// "Is the secret in T?" for a set T of candidates (0-based, sorted).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Question(Vec<u32>);

impl Question {
    pub fn new(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Question(members)
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn contains(&self, c: u32) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// How many members fall in A and in B.
    pub fn counts(&self, s: &GameState) -> (usize, usize) {
        let inside = |set: &[u32]| set.iter().filter(|c| self.contains(**c)).count();
        (inside(&s.a), inside(&s.b))
    }
}

/// |A|·(q+1) + |B|.
pub fn weight(a: usize, b: usize, q: u32) -> u64 {
    a as u64 * (q as u64 + 1) + b as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameState {
    a: Vec<u32>,
    b: Vec<u32>,
    q: u32,
}

impl GameState {
    /// Candidates charged with no lie.
    pub fn a(&self) -> &[u32] {
        &self.a
    }

    /// Candidates charged with one lie.
    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn weight(&self) -> u64 {
        weight(self.a.len(), self.b.len(), self.q)
    }

    pub fn is_solved(&self) -> bool {
        self.a.len() + self.b.len() <= 1
    }

    /// The unique remaining candidate, if exactly one is left.
    pub fn survivor(&self) -> Option<u32> {
        match (self.a.as_slice(), self.b.as_slice()) {
            ([c], []) | ([], [c]) => Some(*c),
            _ => None,
        }
    }

    /// The lowest `x` members of A together with the lowest `y` of B.
    pub fn question(&self, x: usize, y: usize) -> Question {
        Question::new(self.a[..x].iter().chain(&self.b[..y]).copied().collect())
    }
}

pub fn initial_state(n: u64, q: u32) -> Result<GameState, UlamError> {
    if n == 0 {
        return Err(UlamError::NoCandidates);
    }
    if n > MAX_CANDIDATES {
        return Err(UlamError::TooManyCandidates { n, cap: MAX_CANDIDATES });
    }
    Ok(GameState {
        a: (0..n as u32).collect(),
        b: Vec::new(),
        q,
    })
}

/// Berlekamp update: a yes keeps A∩T clean and charges A∖T one lie; B keeps
/// only the members consistent with the answer.
pub fn apply_answer(s: &GameState, t: &Question, ans: Answer) -> Result<GameState, UlamError> {
    if s.q == 0 {
        return Err(UlamError::NoQuestionsLeft);
    }
    let agrees = |c: &u32| t.contains(*c) == ans.is_yes();
    let (a, a_out): (Vec<u32>, Vec<u32>) = s.a.iter().partition(|c| agrees(c));
    let mut b: Vec<u32> = s.b.iter().copied().filter(agrees).chain(a_out).collect();
    b.sort_unstable();
    Ok(GameState { a, b, q: s.q - 1 })
}

/// Counts (x from A, y from B) of a question, with both branch weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Split {
    pub x: usize,
    pub y: usize,
    pub yes_weight: u64,
    pub no_weight: u64,
}

impl Split {
    fn new(a: usize, b: usize, q: u32, x: usize, y: usize) -> Self {
        Split {
            x,
            y,
            yes_weight: weight(x, y + a - x, q - 1),
            no_weight: weight(a - x, b - y + x, q - 1),
        }
    }

    fn imbalance(&self) -> u64 {
        self.yes_weight.abs_diff(self.no_weight)
    }

    fn branches(&self, a: usize, b: usize) -> [(usize, usize); 2] {
        [(self.x, self.y + a - self.x), (a - self.x, b - self.y + self.x)]
    }
}

/// How [`min_questions`] obtained its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Minimax,
    CharacterBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuestionBound {
    pub n: u64,
    pub questions: u32,
    pub method: BoundMethod,
}

/// Least q with n·(q+1) ≤ 2^q; no strategy can do with fewer questions.
pub fn character_bound(n: u64) -> u32 {
    let mut q = 0u32;
    while (n as u128) * (q as u128 + 1) > 1u128 << q {
        q += 1;
    }
    q
}

/// Memoized minimax over (|A|, |B|, q).
#[derive(Debug, Default, Clone)]
pub struct Solver {
    memo: HashMap<(usize, usize, u32), bool>,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Whether the questioner can force a unique candidate within `q` questions.
    pub fn winnable(&mut self, a: usize, b: usize, q: u32) -> bool {
        if a + b <= 1 {
            return true;
        }
        if q == 0 || q < 64 && weight(a, b, q) > 1u64 << q {
            return false;
        }
        if let Some(&v) = self.memo.get(&(a, b, q)) {
            return v;
        }
        let win = balanced_order(a, b, q)
            .into_iter()
            .any(|s| s.branches(a, b).iter().all(|&(a2, b2)| self.winnable(a2, b2, q - 1)));
        self.memo.insert((a, b, q), win);
        win
    }

    pub fn min_questions(&mut self, n: u64) -> Result<QuestionBound, UlamError> {
        if n == 0 {
            return Err(UlamError::NoCandidates);
        }
        let mut q = character_bound(n);
        if n > EXACT_LIMIT {
            return Ok(QuestionBound { n, questions: q, method: BoundMethod::CharacterBound });
        }
        while !self.winnable(n as usize, 0, q) {
            q += 1;
        }
        Ok(QuestionBound { n, questions: q, method: BoundMethod::Minimax })
    }

    /// Counts for the next question from (|A|, |B|) with `q` questions left.
    ///
    /// Moves are ranked by branch-weight imbalance, then smaller x, then smaller
    /// y. Small states take the first move keeping both branches winnable;
    /// larger ones take the most balanced move if neither branch weight
    /// exceeds 2^(q-1).
    pub fn choose(&mut self, a: usize, b: usize, q: u32) -> Result<Split, UlamError> {
        if a + b <= 1 {
            return Err(UlamError::Solved);
        }
        if q == 0 {
            return Err(UlamError::NoQuestionsLeft);
        }
        if ((a + b) as u64) <= EXACT_LIMIT {
            if let Some(s) = balanced_order(a, b, q)
                .into_iter()
                .find(|s| s.branches(a, b).iter().all(|&(a2, b2)| self.winnable(a2, b2, q - 1)))
            {
                return Ok(s);
            }
        }
        let best = most_balanced(a, b, q);
        let cap = 1u128 << (q - 1);
        if (best.yes_weight.max(best.no_weight) as u128) <= cap {
            Ok(best)
        } else {
            Err(UlamError::NoWinningQuestion { a, b, q })
        }
    }

    pub fn optimal_question(&mut self, s: &GameState) -> Result<Question, UlamError> {
        let split = self.choose(s.a.len(), s.b.len(), s.q)?;
        Ok(s.question(split.x, split.y))
    }

    /// Rounds the built-in questioner needs against the worst one-lie prover,
    /// or `None` if some line of play is not resolved within `q`.
    pub fn strategy_worst_case(&mut self, a: usize, b: usize, q: u32) -> Option<u32> {
        if a + b <= 1 {
            return Some(0);
        }
        let split = self.choose(a, b, q).ok()?;
        let mut worst = 0;
        for (a2, b2) in split.branches(a, b) {
            worst = worst.max(self.strategy_worst_case(a2, b2, q - 1)?);
        }
        Some(worst + 1)
    }
}

/// Every split of (a, b), most balanced first, ties by smaller x then y.
fn balanced_order(a: usize, b: usize, q: u32) -> Vec<Split> {
    let mut all: Vec<Split> = (0..=a)
        .flat_map(|x| (0..=b).map(move |y| Split::new(a, b, q, x, y)))
        .collect();
    all.sort_by_key(|s| (s.imbalance(), s.x, s.y));
    all
}

/// The first entry of [`balanced_order`], found in O(|A|).
fn most_balanced(a: usize, b: usize, q: u32) -> Split {
    // yes - no = 2x(q-1) + 2y - (a(q-1) + b)
    let target = a as i128 * (q as i128 - 1) + b as i128;
    let mut best: Option<Split> = None;
    for x in 0..=a {
        let rest = target - 2 * x as i128 * (q as i128 - 1);
        // smallest y minimizing |2y - rest|
        let y = if rest <= 0 { 0 } else { ((rest / 2) as usize).min(b) };
        let s = Split::new(a, b, q, x, y);
        if best.as_ref().is_none_or(|cur| s.imbalance() < cur.imbalance()) {
            best = Some(s);
        }
    }
    best.expect("x = 0 is always a candidate")
}

/// Minimum number of questions that always finds the secret despite one lie:
/// exact for n ≤ 64, the character bound beyond.
pub fn min_questions(n: u64) -> Result<QuestionBound, UlamError> {
    Solver::new().min_questions(n)
}

pub fn optimal_question(s: &GameState) -> Result<Question, UlamError> {
    Solver::new().optimal_question(s)
}

/// Whoever answers the questions.
pub trait Prover {
    /// Answer at 1-based `round`, given the questioner's current state.
    fn answer(&mut self, round: usize, question: &Question, state: &GameState) -> Result<Answer, UlamError>;
}

/// Always truthful.
#[derive(Debug, Clone, Copy)]
pub struct Honest {
    pub secret: u32,
}

impl Prover for Honest {
    fn answer(&mut self, _: usize, q: &Question, _: &GameState) -> Result<Answer, UlamError> {
        Ok(Answer::from_bool(q.contains(self.secret)))
    }
}

/// Truthful except at one round.
#[derive(Debug, Clone, Copy)]
pub struct Liar {
    pub secret: u32,
    pub lie_round: usize,
}

impl Prover for Liar {
    fn answer(&mut self, round: usize, q: &Question, _: &GameState) -> Result<Answer, UlamError> {
        let truth = Answer::from_bool(q.contains(self.secret));
        Ok(if round == self.lie_round { truth.flipped() } else { truth })
    }
}

/// Picks the branch with the larger remaining weight (yes on ties).
#[derive(Debug, Clone, Copy, Default)]
pub struct Adversarial;

impl Prover for Adversarial {
    fn answer(&mut self, _: usize, q: &Question, s: &GameState) -> Result<Answer, UlamError> {
        let yes = apply_answer(s, q, Answer::Yes)?.weight();
        let no = apply_answer(s, q, Answer::No)?.weight();
        Ok(Answer::from_bool(yes >= no))
    }
}

/// One played round; `a`, `b` and `weight` describe the state after the answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Round {
    pub question: Question,
    pub answer: Answer,
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub verdict: Option<u32>,
    /// 1-based round whose answer disagrees with the verdict.
    pub lie_detected_round: Option<usize>,
}

impl Transcript {
    /// Rounds whose answer is wrong for candidate `c`.
    pub fn disagreements(&self, c: u32) -> Vec<usize> {
        self.rounds
            .iter()
            .enumerate()
            .filter(|(_, r)| r.question.contains(c) != r.answer.is_yes())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// How a finished game ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verdict(u32),
    /// No candidate survives: the prover lied more than once.
    Contradiction,
    /// Questions ran out before a single candidate remained.
    Unresolved,
}

/// A game in progress, driven one answer at a time.
#[derive(Debug, Clone)]
pub struct Game {
    n: u64,
    budget: u32,
    state: GameState,
    pending: Option<Question>,
    rounds: Vec<Round>,
    outcome: Option<Outcome>,
    solver: Solver,
}

impl Game {
    /// Starts a game over candidates `0..n` with the minimal question budget.
    pub fn new(n: u64) -> Result<Self, UlamError> {
        let mut solver = Solver::new();
        let budget = solver.min_questions(n)?.questions;
        let state = initial_state(n, budget)?;
        let mut game = Game {
            n,
            budget,
            state,
            pending: None,
            rounds: Vec::new(),
            outcome: None,
            solver,
        };
        game.advance()?;
        Ok(game)
    }

    fn advance(&mut self) -> Result<(), UlamError> {
        let s = &self.state;
        self.outcome = if s.a.is_empty() && s.b.is_empty() {
            Some(Outcome::Contradiction)
        } else if let Some(c) = s.survivor() {
            Some(Outcome::Verdict(c))
        } else if s.q == 0 {
            Some(Outcome::Unresolved)
        } else {
            None
        };
        self.pending = match self.outcome {
            Some(_) => None,
            None => Some(self.solver.optimal_question(&self.state)?),
        };
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    /// The question awaiting an answer, `None` once the game is over.
    pub fn question(&self) -> Option<&Question> {
        self.pending.as_ref()
    }

    pub fn outcome(&self) -> Option<Outcome> {
        self.outcome
    }

    pub fn is_over(&self) -> bool {
        self.outcome.is_some()
    }

    /// Rounds answered so far.
    pub fn round(&self) -> usize {
        self.rounds.len()
    }

    pub fn answer(&mut self, ans: Answer) -> Result<&Round, UlamError> {
        let question = self.pending.take().ok_or(UlamError::Solved)?;
        self.state = apply_answer(&self.state, &question, ans)?;
        self.rounds.push(Round {
            question,
            answer: ans,
            a: self.state.a.len(),
            b: self.state.b.len(),
            weight: self.state.weight(),
        });
        self.advance()?;
        Ok(self.rounds.last().expect("just pushed"))
    }

    pub fn transcript(&self) -> Transcript {
        let mut t = Transcript {
            rounds: self.rounds.clone(),
            verdict: None,
            lie_detected_round: None,
        };
        if let Some(Outcome::Verdict(v)) = self.outcome {
            t.verdict = Some(v);
            t.lie_detected_round = t.disagreements(v).first().copied();
        }
        t
    }
}

/// Rejects a secret outside the candidates `0..n`.
pub fn check_secret(n: u64, secret: u32) -> Result<(), UlamError> {
    if u64::from(secret) >= n {
        return Err(UlamError::SecretOutOfRange { secret, n });
    }
    Ok(())
}

/// Plays the built-in questioner against `prover` on candidates `0..n`.
pub fn run_game(n: u64, prover: &mut dyn Prover) -> Result<Transcript, UlamError> {
    let mut game = Game::new(n)?;
    while let Some(q) = game.question().cloned() {
        let ans = prover.answer(game.round() + 1, &q, game.state())?;
        game.answer(ans)?;
    }
    match game.outcome() {
        Some(Outcome::Contradiction) => Err(UlamError::ProtocolViolation { round: game.round() }),
        Some(Outcome::Unresolved) => Err(UlamError::BudgetExhausted {
            a: game.state().a.len(),
            b: game.state().b.len(),
        }),
        _ => Ok(game.transcript()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub n: u64,
    pub questions: u32,
    pub games: usize,
    /// (secret, lie round) pairs that were not recovered; lie round 0 means no lie.
    pub failures: Vec<(u32, usize)>,
}

impl SoundnessReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every secret against every lie round (and no lie) must be recovered
/// within the budget.
pub fn soundness_sweep(n: u64) -> Result<SoundnessReport, UlamError> {
    soundness_sweep_with(n, Execution::default())
}

pub fn soundness_sweep_with(n: u64, exec: Execution) -> Result<SoundnessReport, UlamError> {
    let q = min_questions(n)?.questions as usize;
    if n > EXACT_LIMIT {
        return Err(UlamError::TooManyCandidates { n, cap: EXACT_LIMIT });
    }
    let per = q + 1;
    let games = n as usize * per;
    let outcomes = exec.map(0..games, |k| {
        let secret = (k / per) as u32;
        let lie = k % per;
        let t = if lie == 0 {
            run_game(n, &mut Honest { secret })
        } else {
            run_game(n, &mut Liar { secret, lie_round: lie })
        };
        let ok = matches!(&t, Ok(t) if t.verdict == Some(secret) && t.rounds.len() <= q);
        (!ok).then_some((secret, lie))
    });
    Ok(SoundnessReport {
        n,
        questions: q as u32,
        games,
        failures: outcomes.into_iter().flatten().collect(),
    })
}

/// Number of candidates a completion offers: sign patterns of its added generators.
pub fn pattern_count(comp: &Completion) -> usize {
    1 << comp.added.len()
}

/// Signs of the added generators for candidate `pattern`.
pub fn pattern_signs(comp: &Completion, pattern: u32) -> Result<Vec<Sign>, UlamError> {
    let count = pattern_count(comp);
    if pattern as usize >= count {
        return Err(UlamError::UnknownPattern { pattern, count });
    }
    Ok(signs_from_index(comp.added.len(), pattern as usize))
}

fn pattern_projection(comp: &Completion, pattern: u32) -> Result<DenseOperator, UlamError> {
    let mut signs = vec![Sign::Plus; comp.original().len()];
    signs.extend(pattern_signs(comp, pattern)?);
    Ok(joint_projection_for(comp.combined.generators(), &signs)?)
}

/// Σ over patterns in T of the joint projection with the original generators
/// pinned to +1. It commutes with the code's stabilizers by construction.
pub fn build_question_projection(comp: &Completion, t: &Question) -> Result<DenseOperator, UlamError> {
    let n = comp.combined.n();
    if n > MAX_QUBITS {
        return Err(DenseError::DimensionCap { n, cap: MAX_QUBITS }.into());
    }
    let mut sum = DenseOperator::zero(n);
    for &p in t.members() {
        sum = sum.add(&pattern_projection(comp, p)?);
    }
    Ok(sum)
}

type Wide = Complex<i128>;

/// A prover holding a joint eigenvector of the completed code and answering
/// by measuring question projections on it.
#[derive(Debug, Clone)]
pub struct QuantumOracle {
    comp: Completion,
    secret: u32,
    lie_round: Option<usize>,
    /// Unnormalized state: numerators over 2^shift.
    state: Vec<Complex<i64>>,
    shift: u32,
}

impl QuantumOracle {
    /// Prepares P·e_s for the first basis vector e_s the secret's projection
    /// does not annihilate.
    pub fn new(comp: &Completion, secret: u32, lie_round: Option<usize>) -> Result<Self, UlamError> {
        let p = pattern_projection(comp, secret)?;
        let seed = (0..p.dim())
            .find(|&s| (0..p.dim()).any(|r| p.entry_exact(r, s).0 != Complex::new(0, 0)))
            .expect("a nonzero projection has a nonzero column");
        let state: Vec<Complex<i64>> = (0..p.dim()).map(|r| p.entry_exact(r, seed).0).collect();
        let shift = p.entry_exact(0, seed).1;
        Ok(QuantumOracle {
            comp: comp.clone(),
            secret,
            lie_round,
            state,
            shift,
        })
    }

    pub fn secret(&self) -> u32 {
        self.secret
    }

    pub fn candidates(&self) -> usize {
        pattern_count(&self.comp)
    }

    /// The prepared vector as exact `(numerators, shift)`.
    pub fn state_vector(&self) -> (&[Complex<i64>], u32) {
        (&self.state, self.shift)
    }

    /// ⟨ψ|P_T|ψ⟩ / ⟨ψ|ψ⟩ as `Some(true)` for 1, `Some(false)` for 0, `None` otherwise.
    pub fn measure(&self, t: &Question) -> Result<Option<bool>, UlamError> {
        let proj = build_question_projection(&self.comp, t)?;
        let d = proj.dim();
        let wide = |v: Complex<i64>| Wide::new(v.re as i128, v.im as i128);
        let mut expect = Wide::new(0, 0);
        let mut qshift = 0;
        for r in 0..d {
            for c in 0..d {
                let (m, s) = proj.entry_exact(r, c);
                qshift = s;
                expect += wide(self.state[r]).conj() * wide(m) * wide(self.state[c]);
            }
        }
        let norm: i128 = self.state.iter().map(|v| wide(*v).norm_sqr()).sum();
        Ok(if expect == Wide::new(0, 0) {
            Some(false)
        } else if expect == Wide::new(norm << qshift, 0) {
            Some(true)
        } else {
            None
        })
    }
}

impl Prover for QuantumOracle {
    fn answer(&mut self, round: usize, q: &Question, _: &GameState) -> Result<Answer, UlamError> {
        let outcome = self.measure(q)?.ok_or(UlamError::Indeterminate { round })?;
        let ans = Answer::from_bool(outcome);
        Ok(if self.lie_round == Some(round) { ans.flipped() } else { ans })
    }
}

/// Plays the search over a completion's sign patterns against a quantum oracle.
pub fn run_quantum_game(comp: &Completion, secret: u32, lie_round: Option<usize>) -> Result<Transcript, UlamError> {
    let mut oracle = QuantumOracle::new(comp, secret, lie_round)?;
    run_game(oracle.candidates() as u64, &mut oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOperator;
    use crate::stab::{complete, validate_code};
    use crate::dense::to_dense;

    fn zz_completion() -> Completion {
        let gens = ["ZZII", "IZZI"].iter().map(|s| s.parse::<PauliOperator>().unwrap()).collect();
        complete(&validate_code(gens).unwrap())
    }

    #[test]
    fn weights_and_updates() {
        assert_eq!(initial_state(10, 7).unwrap().weight(), 80);
        assert_eq!(initial_state(2, 3).unwrap().weight(), 8);
        assert!(initial_state(1, 0).unwrap().is_solved());
        assert_eq!(initial_state(0, 3), Err(UlamError::NoCandidates));
        let s = initial_state(10, 7).unwrap();
        let t = s.question(5, 0);
        let y = apply_answer(&s, &t, Answer::Yes).unwrap();
        assert_eq!((y.a().len(), y.b().len(), y.q()), (5, 5, 6));
        let n = apply_answer(&s, &t, Answer::No).unwrap();
        assert_eq!(y.weight() + n.weight(), s.weight());
        let empty = apply_answer(&s, &Question::new(vec![]), Answer::No).unwrap();
        assert_eq!((empty.a(), empty.q()), (s.a(), 6));
        let spent = initial_state(3, 0).unwrap();
        assert_eq!(apply_answer(&spent, &t, Answer::Yes), Err(UlamError::NoQuestionsLeft));
    }

    #[test]
    fn minimum_question_counts() {
        assert_eq!(min_questions(2).unwrap().questions, 3);
        assert_eq!(min_questions(4).unwrap().questions, 5);
        assert_eq!(min_questions(10).unwrap().questions, 7);
        assert_eq!(min_questions(1).unwrap().questions, 0);
        let big = min_questions(1_000_000).unwrap();
        assert_eq!((big.questions, big.method), (25, BoundMethod::CharacterBound));
        let mut solver = Solver::new();
        let mut last = 0;
        for n in 1..=64 {
            let b = solver.min_questions(n).unwrap();
            assert_eq!(b.method, BoundMethod::Minimax);
            assert!(b.questions >= last && b.questions >= character_bound(n));
            last = b.questions;
        }
    }

    #[test]
    fn balancing_choices() {
        let mut solver = Solver::new();
        let s = solver.choose(2, 0, 3).unwrap();
        assert_eq!((s.x, s.y, s.yes_weight, s.no_weight), (1, 0, 4, 4));
        let s = solver.choose(1, 1, 2).unwrap();
        assert_eq!((s.x, s.y), (0, 1));
        assert_eq!(solver.choose(1, 0, 3), Err(UlamError::Solved));
        assert!(matches!(solver.choose(10, 0, 5), Err(UlamError::NoWinningQuestion { .. })));
        for (a, b, q) in [(2, 0, 3), (1, 1, 2), (7, 3, 6), (100, 40, 12), (33, 0, 9)] {
            assert_eq!(most_balanced(a, b, q), balanced_order(a, b, q)[0]);
        }
    }

    #[test]
    fn strategy_is_optimal_for_small_n() {
        let mut solver = Solver::new();
        for n in 1..=10u64 {
            let q = solver.min_questions(n).unwrap().questions;
            assert_eq!(solver.strategy_worst_case(n as usize, 0, q), Some(q), "n = {n}");
        }
        // pure balancing alone would fail here
        let q = solver.min_questions(15).unwrap().questions;
        assert_eq!(solver.strategy_worst_case(15, 0, q), Some(q));
    }

    #[test]
    fn games() {
        let t = run_game(10, &mut Honest { secret: 7 }).unwrap();
        assert_eq!(t.verdict, Some(7));
        assert!(t.rounds.len() <= 7);
        assert_eq!(t.lie_detected_round, None);
        let t = run_game(10, &mut Liar { secret: 7, lie_round: 3 }).unwrap();
        assert_eq!((t.verdict, t.lie_detected_round), (Some(7), Some(3)));
        assert!(t.rounds.len() <= 7);
        let t = run_game(2, &mut Adversarial).unwrap();
        assert_eq!(t.rounds.len(), 3);
        assert!(t.verdict.is_some());
        let t = run_game(1, &mut Adversarial).unwrap();
        assert_eq!((t.rounds.len(), t.verdict), (0, Some(0)));
    }

    #[test]
    fn every_answer_sequence_ends_in_a_verdict() {
        struct Scripted(u32);
        impl Prover for Scripted {
            fn answer(&mut self, round: usize, _: &Question, _: &GameState) -> Result<Answer, UlamError> {
                Ok(Answer::from_bool(self.0 >> (round - 1) & 1 == 1))
            }
        }
        // the questioner never asks a question that could empty A ∪ B, so even
        // two lies end in some candidate consistent with all but one answer
        for n in [2, 4, 6] {
            let q = min_questions(n).unwrap().questions;
            for script in 0..1u32 << q {
                let t = run_game(n, &mut Scripted(script)).unwrap();
                assert!(t.disagreements(t.verdict.unwrap()).len() <= 1);
            }
        }
        let s = GameState { a: vec![], b: vec![0, 1], q: 2 };
        let empty = apply_answer(&s, &Question::new(vec![]), Answer::Yes).unwrap();
        assert!(empty.is_solved() && empty.survivor().is_none());
    }

    #[test]
    fn sweeps_agree_across_modes() {
        for n in [2, 5, 10] {
            let a = soundness_sweep_with(n, Execution::Sequential).unwrap();
            let b = soundness_sweep_with(n, Execution::Parallel).unwrap();
            assert!(a.holds(), "{a:?}");
            assert_eq!(a, b);
        }
    }

    #[test]
    fn question_projections_commute_with_code() {
        let comp = zz_completion();
        assert_eq!(pattern_count(&comp), 4);
        let stabilizers: Vec<_> = comp.original().iter().map(|g| to_dense(g).unwrap()).collect();
        for mask in 0u32..16 {
            let t = Question::new((0..4).filter(|p| mask >> p & 1 == 1).collect());
            let proj = build_question_projection(&comp, &t).unwrap();
            assert_eq!(proj.projection_rank(), Some(t.members().len()));
            for s in &stabilizers {
                assert!(proj.commutes_with(s));
            }
        }
        let all = build_question_projection(&comp, &Question::new(vec![0, 1, 2, 3])).unwrap();
        let sector = joint_projection_for(comp.original(), &[Sign::Plus; 2]).unwrap();
        assert_eq!(all, sector);
        assert_eq!(
            build_question_projection(&comp, &Question::new(vec![4])),
            Err(UlamError::UnknownPattern { pattern: 4, count: 4 })
        );
    }

    #[test]
    fn quantum_games() {
        let comp = zz_completion();
        // (+, -) on the two added generators
        let secret = 1;
        assert_eq!(pattern_signs(&comp, secret).unwrap(), vec![Sign::Plus, Sign::Minus]);
        let t = run_quantum_game(&comp, secret, None).unwrap();
        assert_eq!(t.verdict, Some(secret));
        assert!(t.rounds.len() <= 5);
        for lie in 1..=5 {
            for secret in 0..4 {
                let t = run_quantum_game(&comp, secret, Some(lie)).unwrap();
                assert_eq!(t.verdict, Some(secret), "secret {secret}, lie {lie}");
            }
        }
        let oracle = QuantumOracle::new(&comp, 2, None).unwrap();
        for mask in 0u32..16 {
            let t = Question::new((0..4).filter(|p| mask >> p & 1 == 1).collect());
            assert_eq!(oracle.measure(&t).unwrap(), Some(t.contains(2)));
        }
    }

    #[test]
    fn serialized_transcript_shape() {
        let t = run_game(3, &mut Honest { secret: 2 }).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert!(v["rounds"][0]["question"].is_array());
        assert!(v["rounds"][0]["answer"].is_string());
        assert_eq!(v["verdict"], 2);
    }
}
