use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use trivalent::cubic::{check_cubic_axioms, compare};
use trivalent::dense::embedding_report;
use trivalent::mv3::{check_mv_axioms, enumerate_homs_to_l3, AxiomReport, Connective, MV3Vector, TruthValue};
use trivalent::pauli::PauliOperator;
use trivalent::stab::{builtin_code, classify_error, complete, correctable_set_check, load_code, StabilizerCode};
use trivalent::ulam::{
    check_secret, min_questions, run_game, run_quantum_game, Adversarial, Answer, Game, Honest, Liar, Outcome, Prover, Transcript,
};

pub const EXIT_OK: i32 = 0;
/// A well-formed command whose computation failed or whose check did not hold.
pub const EXIT_DOMAIN: i32 = 1;
/// Unknown subcommand, flag or malformed argument.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "trivalent", version, about = "Three-valued logic, stabilizer codes and the one-lie search game")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// MV₃ connectives, axioms and homomorphisms.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Signed-set faces against the MV₃ formulas.
    #[command(subcommand)]
    Cubic(CubicCmd),
    /// Stabilizer codes: validation, completion, error classes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Dense-matrix checks of the projection embedding.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// The Rényi-Ulam search game with one lie.
    #[command(subcommand)]
    Ulam(UlamCmd),
    /// Run the JSON/HTTP facade.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        /// Append one JSON line per finished game to <dir>/games.jsonl.
        #[arg(long)]
        log_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Truth table of a connective (oplus, neg, odot, implies, iff, ...).
    Table { kind: String },
    /// Exhaustive MV and L₃ axiom check over L₃ⁿ.
    CheckAxioms {
        #[arg(short, long, default_value_t = 2)]
        n: usize,
    },
    /// Count homomorphisms L₃ⁿ → L₃.
    Homs {
        #[arg(short, long, default_value_t = 1)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CubicCmd {
    /// MV-derived join, meet and reflection against the face operations.
    Compare {
        #[arg(short, long, default_value_t = 2)]
        n: usize,
    },
    /// Cubic-lattice axioms on the faces of the n-cube.
    CheckAxioms {
        #[arg(short, long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
enum CodeCmd {
    /// Check generators for length, commutation and independence.
    Validate {
        /// Built-in name (shor, steane, five_qubit) or a file of generators.
        code: String,
    },
    /// Extend a code to n generators.
    Complete { code: String },
    /// Syndrome and class of each error.
    Classify {
        code: String,
        #[arg(required = true)]
        errors: Vec<String>,
    },
    /// Whether no product E_j†E_k of the given errors is a logical operator.
    CheckSet {
        code: String,
        errors: Vec<String>,
        /// Include the identity and every weight-one error.
        #[arg(long)]
        weight_one: bool,
    },
}

#[derive(Debug, Subcommand)]
enum EmbedCmd {
    /// Orthonormal decomposition, meet homomorphism, commutant and span.
    Verify {
        #[arg(long)]
        code: String,
    },
}

#[derive(Debug, Subcommand)]
enum UlamCmd {
    /// Play the questioner against a simulated prover.
    Simulate {
        #[arg(short, long)]
        n: u64,
        /// Defaults to a value drawn from --seed.
        #[arg(long)]
        secret: Option<u32>,
        /// 1-based round at which the prover lies.
        #[arg(long)]
        lie_round: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Answer to keep the heavier branch instead of following a secret.
        #[arg(long, conflicts_with_all = ["secret", "lie_round"])]
        adversarial: bool,
    },
    /// Minimum number of questions for n candidates.
    Minq {
        #[arg(short, long)]
        n: u64,
    },
    /// Play against a stabilizer-embedded quantum oracle.
    Quantum {
        #[arg(long)]
        code: String,
        /// Sign pattern of the added generators, as an index.
        #[arg(long, default_value_t = 0)]
        secret: u32,
        #[arg(long)]
        lie_round: Option<usize>,
    },
    /// Answer the questions yourself at the terminal.
    Play {
        #[arg(short, long)]
        n: u64,
    },
}

/// Result of one command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `args` (including the program name) with no terminal input.
pub fn run<S: AsRef<str>>(args: &[S]) -> Output {
    let args: Vec<String> = args.iter().map(|s| s.as_ref().to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_inner(&args, &mut std::io::empty(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

/// Runs `args` against real streams; errors go to stderr.
pub fn run_with_io(args: &[String], input: &mut dyn BufRead, out: &mut dyn Write) -> i32 {
    run_inner(args, input, out, &mut std::io::stderr())
}

fn run_inner(args: &[String], input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_DOMAIN
        }
    }
}

/// Renders `value` as canonical JSON: sorted keys, one line.
pub(crate) fn canonical<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("values serialize");
    v.to_string()
}

struct Printer<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Printer<'_> {
    fn emit(&mut self, value: Value, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            writeln!(self.out, "{}", canonical(&value))?;
        } else {
            write!(self.out, "{}", text())?;
        }
        Ok(())
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

fn execute(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32> {
    let mut p = Printer { json: cli.json, out };
    match cli.command {
        Command::Algebra(cmd) => algebra(cmd, &mut p),
        Command::Cubic(cmd) => cubic(cmd, &mut p),
        Command::Code(cmd) => code(cmd, &mut p),
        Command::Embed(EmbedCmd::Verify { code }) => {
            let c = resolve_code(&code)?;
            let r = embedding_report(&c)?;
            writeln!(p.out, "{}", canonical(&r))?;
            Ok(status(r.orthonormal != Some(false) && r.meet_homomorphism != Some(false)))
        }
        Command::Ulam(cmd) => ulam(cmd, input, &mut p),
        Command::Serve { port, bind, log_dir } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::server::serve(&bind, port, log_dir))?;
            Ok(EXIT_OK)
        }
    }
}

fn axiom_lines<W: std::fmt::Display>(report: &AxiomReport<W>) -> String {
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&format!("{:<24} {}", c.axiom, verdict(c.passed)));
        if let Some(w) = &c.witness {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("  witness {}", w.join(" ")));
        }
        s.push('\n');
    }
    s
}

fn algebra(cmd: AlgebraCmd, p: &mut Printer) -> Result<i32> {
    match cmd {
        AlgebraCmd::Table { kind } => {
            let c: Connective = kind.parse()?;
            let table = c.table();
            let value = json!({ "connective": c.name(), "arity": c.arity(), "values": TruthValue::ALL, "table": table });
            p.emit(value, || {
                let mut s = String::new();
                if c.arity() == 1 {
                    s.push_str(&format!("{:>5} | {}\n", "x", c.name()));
                    for (x, row) in TruthValue::ALL.iter().zip(&table) {
                        s.push_str(&format!("{:>5} | {}\n", x.to_string(), row[0]));
                    }
                } else {
                    s.push_str(&format!("{:>5} |", c.name()));
                    for y in TruthValue::ALL {
                        s.push_str(&format!("{:>5}", y.to_string()));
                    }
                    s.push('\n');
                    for (x, row) in TruthValue::ALL.iter().zip(&table) {
                        s.push_str(&format!("{:>5} |", x.to_string()));
                        for v in row {
                            s.push_str(&format!("{:>5}", v.to_string()));
                        }
                        s.push('\n');
                    }
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        AlgebraCmd::CheckAxioms { n } => {
            let report = check_mv_axioms(&MV3Vector::all(n))?;
            let ok = report.all_passed();
            p.emit(json!({ "n": n, "all_passed": ok, "checks": report.checks }), || axiom_lines(&report))?;
            Ok(status(ok))
        }
        AlgebraCmd::Homs { n } => {
            let r = enumerate_homs_to_l3(n)?;
            p.emit(serde_json::to_value(&r)?, || {
                let projections: Vec<String> = r
                    .homomorphisms
                    .iter()
                    .map(|h| h.projection.map_or("other".into(), |i| format!("v -> v{i}")))
                    .collect();
                format!("{} homomorphisms L3^{} -> L3: {}\n", r.count, r.n, projections.join(", "))
            })?;
            Ok(EXIT_OK)
        }
    }
}

fn cubic(cmd: CubicCmd, p: &mut Printer) -> Result<i32> {
    match cmd {
        CubicCmd::Compare { n } => {
            let r = compare(n)?;
            p.emit(serde_json::to_value(&r)?, || {
                format!(
                    "n = {}: {} face pairs\n  join  agree {}\n  meet  agree {}\n  delta agree {}\n",
                    r.n, r.pairs, r.join_agree, r.meet_agree, r.delta_agree
                )
            })?;
            Ok(EXIT_OK)
        }
        CubicCmd::CheckAxioms { n } => {
            let report = check_cubic_axioms(n)?;
            let ok = report.all_passed();
            p.emit(json!({ "n": n, "all_passed": ok, "checks": report.checks }), || axiom_lines(&report))?;
            Ok(status(ok))
        }
    }
}

/// A built-in name, or else a path to a generator file.
fn resolve_code(arg: &str) -> Result<StabilizerCode> {
    if let Ok(c) = builtin_code(arg) {
        return Ok(c);
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!("{arg:?} is neither a built-in code (shor, steane, five_qubit) nor a file");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let code = load_code(&text)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(code.with_name(name))
}

fn parse_errors(items: &[String]) -> Result<Vec<PauliOperator>> {
    items
        .iter()
        .map(|s| s.parse::<PauliOperator>().map_err(|e| anyhow!("{s:?}: {e}")))
        .collect()
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn code(cmd: CodeCmd, p: &mut Printer) -> Result<i32> {
    match cmd {
        CodeCmd::Validate { code } => match resolve_code(&code) {
            Ok(c) => {
                p.emit(json!({ "n": c.n(), "k": c.k(), "valid": true }), || {
                    format!("{}: valid [{}, {}] code\n", c.name().unwrap_or(&code), c.n(), c.k())
                })?;
                Ok(EXIT_OK)
            }
            Err(e) => {
                let msg = format!("{e:#}");
                p.emit(json!({ "valid": false, "error": msg }), || format!("{code}: invalid: {msg}\n"))?;
                Ok(EXIT_DOMAIN)
            }
        },
        CodeCmd::Complete { code } => {
            let c = resolve_code(&code)?;
            let comp = complete(&c);
            let added: Vec<String> = comp.added.iter().map(|g| g.to_string()).collect();
            let all: Vec<String> = comp.combined.generators().iter().map(|g| g.to_string()).collect();
            p.emit(json!({ "n": c.n(), "k": c.k(), "added": added, "generators": all }), || {
                let mut s = format!("{} original + {} added generators\n", c.generators().len(), added.len());
                for (i, g) in all.iter().enumerate() {
                    let tag = if i >= c.generators().len() { "  (added)" } else { "" };
                    s.push_str(&format!("  g{} = {g}{tag}\n", i + 1));
                }
                s
            })?;
            Ok(EXIT_OK)
        }
        CodeCmd::Classify { code, errors } => {
            let c = resolve_code(&code)?;
            let ops = parse_errors(&errors)?;
            let mut rows = Vec::new();
            for (s, e) in errors.iter().zip(&ops) {
                let class = classify_error(e, &c)?;
                rows.push((s.clone(), class));
            }
            let value = Value::Array(
                rows.iter()
                    .map(|(e, cl)| json!({ "error": e, "kind": cl.kind, "syndrome": bits(&cl.syndrome) }))
                    .collect(),
            );
            p.emit(value, || {
                rows.iter()
                    .map(|(e, cl)| format!("{e:<12} {:<11} syndrome {}\n", cl.kind.as_str(), bits(&cl.syndrome)))
                    .collect()
            })?;
            Ok(EXIT_OK)
        }
        CodeCmd::CheckSet { code, errors, weight_one } => {
            let c = resolve_code(&code)?;
            let mut ops = Vec::new();
            if weight_one {
                ops.push(PauliOperator::identity(c.n()));
                for q in 0..c.n() {
                    for f in ['X', 'Y', 'Z'] {
                        ops.push(PauliOperator::single(c.n(), q, f));
                    }
                }
            }
            ops.extend(parse_errors(&errors)?);
            if ops.is_empty() {
                bail!("no errors given; list Paulis or pass --weight-one");
            }
            let r = correctable_set_check(&ops, &c)?;
            p.emit(serde_json::to_value(&r)?, || match r.violation {
                None => format!("correctable: all {} pairs pass\n", r.pairs),
                Some((j, k)) => format!("not correctable: {}† · {} is logical\n", ops[j], ops[k]),
            })?;
            Ok(EXIT_OK)
        }
    }
}

fn transcript_text(t: &Transcript) -> String {
    let mut s = String::new();
    for (i, r) in t.rounds.iter().enumerate() {
        let members: Vec<String> = r.question.members().iter().map(|c| c.to_string()).collect();
        s.push_str(&format!(
            "round {}: in {{{}}}? {:<3}  |A|={} |B|={} weight={}\n",
            i + 1,
            members.join(","),
            r.answer.to_string(),
            r.a,
            r.b,
            r.weight
        ));
    }
    match t.verdict {
        Some(v) => s.push_str(&format!("verdict: {v}\n")),
        None => s.push_str("verdict: none\n"),
    }
    if let Some(r) = t.lie_detected_round {
        s.push_str(&format!("lie detected at round {r}\n"));
    }
    s
}

fn ulam(cmd: UlamCmd, input: &mut dyn BufRead, p: &mut Printer) -> Result<i32> {
    match cmd {
        UlamCmd::Simulate { n, secret, lie_round, seed, adversarial } => {
            let mut prover: Box<dyn Prover> = if adversarial {
                Box::new(Adversarial)
            } else {
                let secret = match secret {
                    Some(s) => s,
                    None => StdRng::seed_from_u64(seed).random_range(0..n.max(1)) as u32,
                };
                check_secret(n, secret)?;
                match lie_round {
                    Some(r) => Box::new(Liar { secret, lie_round: r }),
                    None => Box::new(Honest { secret }),
                }
            };
            let t = run_game(n, prover.as_mut())?;
            p.emit(serde_json::to_value(&t)?, || transcript_text(&t))?;
            Ok(EXIT_OK)
        }
        UlamCmd::Minq { n } => {
            let b = min_questions(n)?;
            p.emit(serde_json::to_value(b)?, || {
                let how = match b.method {
                    trivalent::ulam::BoundMethod::Minimax => "exact minimax",
                    trivalent::ulam::BoundMethod::CharacterBound => "character bound",
                };
                format!("min_questions({n}) = {} ({how})\n", b.questions)
            })?;
            Ok(EXIT_OK)
        }
        UlamCmd::Quantum { code, secret, lie_round } => {
            let c = resolve_code(&code)?;
            let comp = complete(&c);
            let t = run_quantum_game(&comp, secret, lie_round)?;
            let value = json!({
                "code": c.name(),
                "added": comp.added.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "secret": secret,
                "transcript": t,
            });
            p.emit(value, || {
                let added: Vec<String> = comp.added.iter().map(|g| g.to_string()).collect();
                format!("candidates: sign patterns of {}\n{}", added.join(", "), transcript_text(&t))
            })?;
            Ok(status(t.verdict == Some(secret)))
        }
        UlamCmd::Play { n } => play(n, input, p),
    }
}

fn play(n: u64, input: &mut dyn BufRead, p: &mut Printer) -> Result<i32> {
    let mut game = Game::new(n)?;
    writeln!(
        p.out,
        "Think of a number in 0..{n}. You may lie once; {} questions will do.",
        game.budget()
    )?;
    while let Some(q) = game.question().cloned() {
        let members: Vec<String> = q.members().iter().map(|c| c.to_string()).collect();
        let answer = loop {
            write!(p.out, "round {}: is it in {{{}}}? [yes/no] ", game.round() + 1, members.join(","))?;
            p.out.flush()?;
            let mut line = String::new();
            if input.read_line(&mut line)? == 0 {
                bail!("input ended before the game finished");
            }
            match line.parse::<Answer>() {
                Ok(a) => break a,
                Err(e) => writeln!(p.out, "{e}")?,
            }
        };
        let r = game.answer(answer)?;
        writeln!(p.out, "  |A|={} |B|={} weight={}", r.a, r.b, r.weight)?;
    }
    let t = game.transcript();
    match game.outcome() {
        Some(Outcome::Verdict(v)) => {
            writeln!(p.out, "Your number is {v}.")?;
            if let Some(r) = t.lie_detected_round {
                writeln!(p.out, "You lied at round {r}.")?;
            }
            Ok(EXIT_OK)
        }
        _ => {
            writeln!(p.out, "Those answers contain more than one lie.")?;
            Ok(EXIT_DOMAIN)
        }
    }
}
