//! Stabilizer codes over the symplectic representation.
//!
//! Generators are validated once ([`validate_code`]); everything afterwards is
//! GF(2) linear algebra on check rows plus phase bookkeeping for membership.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::pauli::{CheckRow, PauliError, PauliOperator};
use crate::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabError {
    #[error("a code needs at least one generator")]
    Empty,
    #[error("generator {index} has {found} qubits, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generators {0} and {1} anticommute")]
    AnticommutingPair(usize, usize),
    #[error("generator {0} is a product of earlier generators")]
    DependentGenerator(usize),
    #[error("generator {0} has an imaginary phase")]
    BadPhase(usize),
    #[error("unknown built-in code `{0}` (expected shor, steane or five_qubit)")]
    UnknownCode(String),
    #[error("line {line}: {source}")]
    Parse { line: usize, source: PauliError },
    #[error("stabilizer group too large to enumerate ({0} generators)")]
    TooLarge(usize),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

/// Incremental GF(2) echelon basis that remembers which inputs each row combines.
#[derive(Debug, Clone)]
struct Span {
    rows: Vec<(CheckRow, usize, Vec<bool>)>,
    inputs: usize,
}

fn pivot(row: &CheckRow) -> Option<usize> {
    (0..2 * row.n()).find(|&i| row.bit(i))
}

impl Span {
    fn new() -> Self {
        Span {
            rows: Vec::new(),
            inputs: 0,
        }
    }

    fn reduce(&self, row: &CheckRow) -> (CheckRow, Vec<bool>) {
        let mut residue = row.clone();
        let mut combo = vec![false; self.inputs];
        for (b, p, c) in &self.rows {
            if residue.bit(*p) {
                residue.xor_assign(b);
                for (acc, &bit) in combo.iter_mut().zip(c) {
                    *acc ^= bit;
                }
            }
        }
        (residue, combo)
    }

    fn contains(&self, row: &CheckRow) -> bool {
        self.reduce(row).0.is_zero()
    }

    /// Adds `row` as input number `self.inputs`; false if it was dependent.
    fn push(&mut self, row: &CheckRow) -> bool {
        let (residue, mut combo) = self.reduce(row);
        self.inputs += 1;
        for (_, _, c) in &mut self.rows {
            c.push(false);
        }
        combo.push(true);
        match pivot(&residue) {
            Some(p) => {
                self.rows.push((residue, p, combo));
                true
            }
            None => false,
        }
    }
}

/// Reduced row echelon form of `rows` (pivots ascending in x ‖ z order).
fn rref(rows: &[CheckRow]) -> Vec<(CheckRow, usize)> {
    let mut out: Vec<(CheckRow, usize)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, p) in &out {
            if r.bit(*p) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = pivot(&r) {
            for (b, _) in &mut out {
                if b.bit(p) {
                    b.xor_assign(&r);
                }
            }
            out.push((r, p));
        }
    }
    out.sort_by_key(|(_, p)| *p);
    out
}

/// Rows commuting with every row of `rows` (the symplectic complement), as an RREF basis.
fn symplectic_complement(n: usize, rows: &[CheckRow]) -> Vec<CheckRow> {
    // v commutes with w iff v · swap(w) = 0
    let swapped: Vec<CheckRow> = rows
        .iter()
        .map(|w| {
            let mut s = CheckRow::zeros(n);
            for j in 0..n {
                s.set_x(j, w.z(j));
                s.set_z(j, w.x(j));
            }
            s
        })
        .collect();
    let reduced = rref(&swapped);
    let pivots: Vec<usize> = reduced.iter().map(|(_, p)| *p).collect();
    let basis: Vec<CheckRow> = (0..2 * n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = CheckRow::zeros(n);
            v.set_bit(free, true);
            for (r, p) in &reduced {
                if r.bit(free) {
                    v.set_bit(*p, true);
                }
            }
            v
        })
        .collect();
    rref(&basis).into_iter().map(|(r, _)| r).collect()
}

/// A validated list of independent, commuting, real-phase generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOperator>,
    name: Option<String>,
}

impl StabilizerCode {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Logical qubits: n minus the number of generators.
    pub fn k(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    fn rows(&self) -> Vec<CheckRow> {
        self.generators.iter().map(|g| g.row().clone()).collect()
    }

    fn span(&self) -> Span {
        let mut span = Span::new();
        for g in &self.generators {
            span.push(g.row());
        }
        span
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name} ")?;
        }
        write!(f, "[{}, {}] <", self.n, self.k())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Checks uniform length, pairwise commutation, GF(2) independence and real
/// phases, in that order. Indices in errors are 0-based.
pub fn validate_code(generators: Vec<PauliOperator>) -> Result<StabilizerCode, StabError> {
    let n = generators.first().ok_or(StabError::Empty)?.n();
    for (index, g) in generators.iter().enumerate() {
        if g.n() != n {
            return Err(StabError::LengthMismatch {
                index,
                expected: n,
                found: g.n(),
            });
        }
    }
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            if !generators[i].commutes_with(&generators[j]) {
                return Err(StabError::AnticommutingPair(i, j));
            }
        }
    }
    let mut span = Span::new();
    for (i, g) in generators.iter().enumerate() {
        if !span.push(g.row()) {
            return Err(StabError::DependentGenerator(i));
        }
    }
    if let Some(i) = generators.iter().position(|g| !g.is_hermitian()) {
        return Err(StabError::BadPhase(i));
    }
    Ok(StabilizerCode {
        n,
        generators,
        name: None,
    })
}

/// `code` extended by `added` to n commuting independent generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Completion {
    pub added: Vec<PauliOperator>,
    pub combined: StabilizerCode,
}

impl Completion {
    /// Generators of the original code (a prefix of `combined`).
    pub fn original(&self) -> &[PauliOperator] {
        let g = self.combined.generators();
        &g[..g.len() - self.added.len()]
    }
}

/// Extends the generator rows to a maximal isotropic subspace, each time adding
/// the lexicographically smallest commuting row outside the current span.
pub fn complete(code: &StabilizerCode) -> Completion {
    let n = code.n;
    let mut rows = code.rows();
    let mut added = Vec::new();
    while rows.len() < n {
        let mut span = Span::new();
        for r in &rows {
            span.push(r);
        }
        // The complement basis is fully reduced with ascending pivots, so its
        // elements sort like their coefficient vectors; the smallest element
        // outside the span is the last basis row outside it.
        let next = symplectic_complement(n, &rows)
            .into_iter()
            .rev()
            .find(|r| !span.contains(r))
            .expect("a non-maximal isotropic subspace has a commuting extension");
        added.push(PauliOperator::from_row(next.clone(), 0));
        rows.push(next);
    }
    let mut generators = code.generators.clone();
    generators.extend(added.iter().cloned());
    Completion {
        added,
        combined: StabilizerCode {
            n,
            generators,
            name: code.name.as_ref().map(|s| format!("{s}+completion")),
        },
    }
}

/// GF(2) basis of the Paulis commuting with every generator (dimension n + k),
/// starting with the generator rows themselves.
pub fn centralizer_basis(code: &StabilizerCode) -> Vec<CheckRow> {
    let mut span = code.span();
    let mut basis = code.rows();
    for v in symplectic_complement(code.n, &code.rows()) {
        if span.push(&v) {
            basis.push(v);
        }
    }
    basis
}

fn check_len(e: &PauliOperator, code: &StabilizerCode) -> Result<(), StabError> {
    if e.n() != code.n {
        return Err(PauliError::LengthMismatch(e.n(), code.n).into());
    }
    Ok(())
}

/// Bit i is set when `e` anticommutes with generator i.
pub fn syndrome(e: &PauliOperator, code: &StabilizerCode) -> Result<Vec<bool>, StabError> {
    check_len(e, code)?;
    Ok(code
        .generators
        .iter()
        .map(|g| !g.commutes_with(e))
        .collect())
}

/// Whether `e`, phase included, is an element of the group generated by the code.
pub fn member_of_stabilizer(e: &PauliOperator, code: &StabilizerCode) -> Result<bool, StabError> {
    check_len(e, code)?;
    let (residue, combo) = code.span().reduce(e.row());
    if !residue.is_zero() {
        return Ok(false);
    }
    let product = code
        .generators
        .iter()
        .zip(combo)
        .filter(|(_, used)| *used)
        .fold(PauliOperator::identity(code.n), |acc, (g, _)| acc.mul(g));
    Ok(product.phase() == e.phase())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Anticommutes with some generator.
    Detectable,
    /// An element of the stabilizer group.
    Stabilizer,
    /// Commutes with every generator but lies outside the group.
    Logical,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Detectable => "detectable",
            ErrorKind::Stabilizer => "stabilizer",
            ErrorKind::Logical => "logical",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorClass {
    pub kind: ErrorKind,
    pub syndrome: Vec<bool>,
}

pub fn classify_error(e: &PauliOperator, code: &StabilizerCode) -> Result<ErrorClass, StabError> {
    let syndrome = syndrome(e, code)?;
    let kind = if syndrome.iter().any(|&b| b) {
        ErrorKind::Detectable
    } else if member_of_stabilizer(e, code)? {
        ErrorKind::Stabilizer
    } else {
        ErrorKind::Logical
    };
    Ok(ErrorClass { kind, syndrome })
}

pub fn classify_batch(
    errors: &[PauliOperator],
    code: &StabilizerCode,
    exec: Execution,
) -> Result<Vec<ErrorClass>, StabError> {
    exec.map(0..errors.len(), |i| classify_error(&errors[i], code))
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectableReport {
    pub correctable: bool,
    /// First (j, k) in row-major order with E_j† E_k logical.
    pub violation: Option<(usize, usize)>,
    pub pairs: usize,
}

/// True when no product E_j† E_k is a logical error.
pub fn correctable_set_check(
    errors: &[PauliOperator],
    code: &StabilizerCode,
) -> Result<CorrectableReport, StabError> {
    correctable_set_check_with(errors, code, Execution::default())
}

pub fn correctable_set_check_with(
    errors: &[PauliOperator],
    code: &StabilizerCode,
    exec: Execution,
) -> Result<CorrectableReport, StabError> {
    for e in errors {
        check_len(e, code)?;
    }
    let m = errors.len();
    let violation = exec.find_first(0..m * m, |t| {
        let (j, k) = (t / m, t % m);
        let product = errors[j].dagger().mul(&errors[k]);
        let class = classify_error(&product, code).expect("lengths checked");
        (class.kind == ErrorKind::Logical).then_some((j, k))
    });
    Ok(CorrectableReport {
        correctable: violation.is_none(),
        violation,
        pairs: m * m,
    })
}

/// Every element of the group generated by the code, with phases.
pub fn stabilizer_group(code: &StabilizerCode) -> Result<Vec<PauliOperator>, StabError> {
    let r = code.generators.len();
    if r > 20 {
        return Err(StabError::TooLarge(r));
    }
    Ok((0..1usize << r)
        .map(|mask| {
            code.generators
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(PauliOperator::identity(code.n), |acc, (_, g)| acc.mul(g))
        })
        .collect())
}

/// At least one generator, and every single-qubit bit flip and phase flip is detected.
pub fn is_standard(code: &StabilizerCode) -> bool {
    !code.generators.is_empty()
        && (0..code.n).all(|q| {
            ['X', 'Z'].iter().all(|&f| {
                syndrome(&PauliOperator::single(code.n, q, f), code)
                    .unwrap()
                    .contains(&true)
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinCode {
    Shor,
    Steane,
    FiveQubit,
}

impl BuiltinCode {
    pub const ALL: [BuiltinCode; 3] = [BuiltinCode::Shor, BuiltinCode::Steane, BuiltinCode::FiveQubit];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinCode::Shor => "shor",
            BuiltinCode::Steane => "steane",
            BuiltinCode::FiveQubit => "five_qubit",
        }
    }

    pub fn generator_strings(self) -> &'static [&'static str] {
        match self {
            BuiltinCode::Shor => &[
                "ZZIIIIIII",
                "ZIZIIIIII",
                "IIIZZIIII",
                "IIIZIZIII",
                "IIIIIIZZI",
                "IIIIIIZIZ",
                "XXXXXXIII",
                "XXXIIIXXX",
            ],
            BuiltinCode::Steane => &["IIIXXXX", "IIIZZZZ", "IXXIIXX", "IZZIIZZ", "XIXIXIX", "ZIZIZIZ"],
            BuiltinCode::FiveQubit => &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        }
    }

    pub fn code(self) -> StabilizerCode {
        let gens = self
            .generator_strings()
            .iter()
            .map(|s| s.parse().expect("built-in generators parse"))
            .collect();
        validate_code(gens)
            .expect("built-in generators are valid")
            .with_name(self.name())
    }
}

impl FromStr for BuiltinCode {
    type Err = StabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "shor" => Ok(BuiltinCode::Shor),
            "steane" | "stene" => Ok(BuiltinCode::Steane),
            "five_qubit" | "five" | "5" | "perfect" => Ok(BuiltinCode::FiveQubit),
            _ => Err(StabError::UnknownCode(s.to_string())),
        }
    }
}

pub fn builtin_code(name: &str) -> Result<StabilizerCode, StabError> {
    Ok(name.parse::<BuiltinCode>()?.code())
}

/// Parses a code file: one generator per line, optional sign prefix, `#` comments.
pub fn parse_code_file(text: &str) -> Result<Vec<PauliOperator>, StabError> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((i + 1, body))
        })
        .map(|(line, body)| {
            body.parse()
                .map_err(|source| StabError::Parse { line, source })
        })
        .collect()
}

/// Parses and validates a code file.
pub fn load_code(text: &str) -> Result<StabilizerCode, StabError> {
    validate_code(parse_code_file(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn code(gens: &[&str]) -> StabilizerCode {
        validate_code(gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn builtins_have_expected_parameters() {
        let five = builtin_code("five_qubit").unwrap();
        assert_eq!((five.n(), five.k()), (5, 1));
        let shor = builtin_code("shor").unwrap();
        assert_eq!((shor.n(), shor.k(), shor.generators().len()), (9, 1, 8));
        assert_eq!(shor.generators()[0].to_string(), "ZZIIIIIII");
        let steane = builtin_code("steane").unwrap();
        assert_eq!((steane.n(), steane.k()), (7, 1));
        assert_eq!(steane.generators()[0].to_string(), "IIIXXXX");
        assert!(matches!(builtin_code("toric"), Err(StabError::UnknownCode(_))));
        for b in BuiltinCode::ALL {
            assert!(is_standard(&b.code()), "{}", b.name());
        }
    }

    #[test]
    fn validation_errors() {
        assert_eq!(validate_code(vec![p("X"), p("Z")]), Err(StabError::AnticommutingPair(0, 1)));
        assert_eq!(
            validate_code(vec![p("ZZ"), p("ZZ")]),
            Err(StabError::DependentGenerator(1))
        );
        assert_eq!(
            validate_code(vec![p("ZZI"), p("IZZ"), p("ZIZ")]),
            Err(StabError::DependentGenerator(2))
        );
        assert_eq!(validate_code(vec![p("ZI"), p("iIZ")]), Err(StabError::BadPhase(1)));
        assert_eq!(validate_code(vec![]), Err(StabError::Empty));
        assert!(matches!(
            validate_code(vec![p("ZI"), p("Z")]),
            Err(StabError::LengthMismatch { index: 1, .. })
        ));
        // real negative signs are allowed
        assert_eq!(code(&["-ZZ", "XX"]).k(), 0);
    }

    #[test]
    fn syndrome_examples() {
        let five = BuiltinCode::FiveQubit.code();
        assert_eq!(syndrome(&p("ZIIII"), &five).unwrap(), vec![true, false, true, false]);
        assert_eq!(syndrome(&p("XXXXX"), &five).unwrap(), vec![false; 4]);
        for g in five.generators() {
            assert_eq!(syndrome(g, &five).unwrap(), vec![false; 4]);
        }
        assert!(syndrome(&p("ZZ"), &five).is_err());
    }

    #[test]
    fn membership_is_phase_sensitive() {
        let five = BuiltinCode::FiveQubit.code();
        let g = &five.generators()[..2];
        assert!(member_of_stabilizer(&g[0].mul(&g[1]), &five).unwrap());
        assert!(!member_of_stabilizer(&p("XXXXX"), &five).unwrap());
        assert!(!member_of_stabilizer(&g[0].clone().negated(), &five).unwrap());
        assert!(member_of_stabilizer(&PauliOperator::identity(5), &five).unwrap());
        assert!(!member_of_stabilizer(&PauliOperator::identity(5).negated(), &five).unwrap());
    }

    #[test]
    fn classification_examples() {
        let five = BuiltinCode::FiveQubit.code();
        let kind = |s: &str| classify_error(&p(s), &five).unwrap().kind;
        assert_eq!(kind("ZIIII"), ErrorKind::Detectable);
        assert_eq!(kind("XZZXI"), ErrorKind::Stabilizer);
        assert_eq!(kind("XXXXX"), ErrorKind::Logical);
        assert_eq!(kind("ZZZZZ"), ErrorKind::Logical);
        assert_eq!(kind("-XZZXI"), ErrorKind::Logical);
    }

    #[test]
    fn completion_examples() {
        let five = BuiltinCode::FiveQubit.code();
        let c = complete(&five);
        assert_eq!(c.added.len(), 1);
        assert_eq!(c.original(), five.generators());
        let again = validate_code(c.combined.generators().to_vec()).unwrap();
        assert_eq!(again.k(), 0);
        assert!(complete(&c.combined).added.is_empty());

        let chain = code(&["ZZII", "IZZI"]);
        let c = complete(&chain);
        assert_eq!(c.added.len(), 2);
        assert_eq!(validate_code(c.combined.generators().to_vec()).unwrap().k(), 0);
    }

    /// Smallest row in lexicographic order that commutes with `rows` and is
    /// independent of them, by walking all 4ⁿ rows.
    fn brute_next(n: usize, rows: &[CheckRow]) -> CheckRow {
        let mut span = Span::new();
        for r in rows {
            span.push(r);
        }
        (1..1u128 << (2 * n))
            .map(|v| CheckRow::from_lex_index(n, v))
            .find(|c| rows.iter().all(|r| !r.symplectic(c)) && !span.contains(c))
            .unwrap()
    }

    #[test]
    fn completion_matches_brute_force_lex_search() {
        let cases: &[&[&str]] = &[
            &["ZZII", "IZZI"],
            &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
            &["XX"],
            &["Z"],
            &["YYI"],
            &["XXXX", "ZZZZ"],
            &["IIX", "ZII"],
            &["XZZXI"],
        ];
        for gens in cases {
            let c = code(gens);
            let completion = complete(&c);
            let mut rows: Vec<CheckRow> = c.generators().iter().map(|g| g.row().clone()).collect();
            for added in &completion.added {
                assert_eq!(*added.row(), brute_next(c.n(), &rows), "{gens:?}");
                rows.push(added.row().clone());
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        let five = BuiltinCode::FiveQubit.code();
        let basis = centralizer_basis(&five);
        assert_eq!(basis.len(), 6);
        for (g, b) in five.generators().iter().zip(&basis) {
            assert_eq!(g.row(), b);
        }
        for b in &basis {
            assert!(five.generators().iter().all(|g| !g.row().symplectic(b)));
        }
        let zz = code(&["ZI", "IZ"]);
        let basis = centralizer_basis(&zz);
        assert_eq!(basis, vec![p("ZI").into_row(), p("IZ").into_row()]);
        assert_eq!(centralizer_basis(&code(&["Z"])).len(), 1);
    }

    #[test]
    fn correctable_sets() {
        let five = BuiltinCode::FiveQubit.code();
        let mut errors = vec![PauliOperator::identity(5)];
        for q in 0..5 {
            for f in ['X', 'Y', 'Z'] {
                errors.push(PauliOperator::single(5, q, f));
            }
        }
        let report = correctable_set_check(&errors, &five).unwrap();
        assert!(report.correctable);
        assert_eq!(report.pairs, 256);

        let report = correctable_set_check(&[PauliOperator::identity(5), p("XXXXX")], &five).unwrap();
        assert!(!report.correctable);
        assert_eq!(report.violation, Some((0, 1)));
        assert!(correctable_set_check(&[PauliOperator::identity(5)], &five).unwrap().correctable);
    }

    #[test]
    fn group_enumeration() {
        let five = BuiltinCode::FiveQubit.code();
        let group = stabilizer_group(&five).unwrap();
        assert_eq!(group.len(), 16);
        assert!(group.iter().all(|g| member_of_stabilizer(g, &five).unwrap()));
    }

    #[test]
    fn code_file_parsing() {
        let text = "# five qubit code\nXZZXI\n+IXZZX  # second\n\nXIXZZ\n-ZXIXZ\n";
        let c = load_code(text).unwrap();
        assert_eq!(c.generators().len(), 4);
        assert_eq!(c.generators()[3].phase(), 2);
        assert_eq!(
            parse_code_file("XX\nXQ\n"),
            Err(StabError::Parse {
                line: 2,
                source: PauliError::InvalidChar { pos: 2, ch: 'Q' }
            })
        );
    }
}
