//! Exact matrix oracle for small registers.
//!
//! Pauli matrices have entries in {0, ±1, ±i}; their projections add powers of
//! two in the denominator. [`DenseOperator`] stores Gaussian-integer numerators
//! over a shared `2^shift`, so every identity here is checked without
//! tolerance. Only the Hadamard helpers, where √2 enters, go through floats.

mod exact;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::cubic::{face_meet, SignedSet};
use crate::pauli::PauliOperator;
use crate::stab::{complete, stabilizer_group, Completion, StabilizerCode};
use crate::Execution;
use exact::{dyadic, Echelon, Qi, Row};

/// Largest register [`to_dense`] and the projection builders accept.
pub const MAX_QUBITS: usize = 10;
/// Largest register for [`verify_orthonormal_decomposition`] (2ⁿ projectors of 4ⁿ entries).
pub const MAX_DECOMPOSITION_QUBITS: usize = 7;
/// Largest register for [`verify_meet_homomorphism`].
pub const MAX_MEET_QUBITS: usize = 6;
/// Largest register for the commutant solve (1024 unknowns).
pub const MAX_COMMUTANT_QUBITS: usize = 5;
/// Tolerance for the floating-point (Hadamard) checks.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DenseError {
    #[error("{n} qubits exceeds the limit of {cap} for this computation")]
    DimensionCap { n: usize, cap: usize },
    #[error("operators act on {expected} and {found} qubits")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("projection of the scalar {0} is degenerate")]
    ScalarProjection(String),
    #[error("{0} is not hermitian")]
    NotHermitian(String),
    #[error("code still has {k} logical qubits; complete it first")]
    NotCompleted { k: usize },
    #[error("expected {expected} signs, got {found}")]
    SignLength { expected: usize, found: usize },
    #[error("operator list is empty")]
    Empty,
}

fn cap(n: usize, limit: usize) -> Result<(), DenseError> {
    if n > limit {
        Err(DenseError::DimensionCap { n, cap: limit })
    } else {
        Ok(())
    }
}

type Gi = Complex<i64>;

const I_POW: [Gi; 4] = [
    Complex::new(1, 0),
    Complex::new(0, 1),
    Complex::new(-1, 0),
    Complex::new(0, -1),
];

/// A 2ⁿ×2ⁿ complex matrix with entries `numerator / 2^shift`.
///
/// Values are kept with the smallest possible shift, so `==` is equality of
/// matrices. Row and column indices read qubit 1 as the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseOperator {
    n: usize,
    shift: u32,
    data: Vec<Gi>,
}

impl DenseOperator {
    fn from_parts(n: usize, shift: u32, data: Vec<Gi>) -> Self {
        let mut op = DenseOperator { n, shift, data };
        while op.shift > 0 && op.data.iter().all(|v| v.re % 2 == 0 && v.im % 2 == 0) {
            op.data.iter_mut().for_each(|v| *v = *v / 2);
            op.shift -= 1;
        }
        if op.data.iter().all(|v| v.is_zero()) {
            op.shift = 0;
        }
        op
    }

    pub fn identity(n: usize) -> Self {
        let d = 1 << n;
        let mut data = vec![Gi::zero(); d * d];
        for i in 0..d {
            data[i * d + i] = Gi::new(1, 0);
        }
        DenseOperator { n, shift: 0, data }
    }

    pub fn zero(n: usize) -> Self {
        let d = 1 << n;
        DenseOperator { n, shift: 0, data: vec![Gi::zero(); d * d] }
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry as `(numerator, shift)`, meaning `numerator / 2^shift`.
    pub fn entry_exact(&self, row: usize, col: usize) -> (Complex<i64>, u32) {
        (self.data[row * self.dim() + col], self.shift)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<f64> {
        let v = self.data[row * self.dim() + col];
        let s = (self.shift as f64).exp2();
        Complex::new(v.re as f64 / s, v.im as f64 / s)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n, other.n, "operators act on different registers");
    }

    fn lifted(&self, shift: u32) -> impl Iterator<Item = Gi> + '_ {
        let k = 1i64 << (shift - self.shift);
        self.data.iter().map(move |v| v * k)
    }

    fn combine(&self, other: &Self, f: impl Fn(Gi, Gi) -> Gi) -> Self {
        self.check_same(other);
        let s = self.shift.max(other.shift);
        let data = self.lifted(s).zip(other.lifted(s)).map(|(a, b)| f(a, b)).collect();
        Self::from_parts(self.n, s, data)
    }

    /// Panics if the registers differ; so do the other binary operations.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        DenseOperator {
            n: self.n,
            shift: self.shift,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }

    pub fn half(&self) -> Self {
        Self::from_parts(self.n, self.shift + 1, self.data.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d = self.dim();
        let mut data = vec![Gi::zero(); d * d];
        for i in 0..d {
            let out = &mut data[i * d..(i + 1) * d];
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(&other.data[k * d..(k + 1) * d]) {
                    *o += a * b;
                }
            }
        }
        Self::from_parts(self.n, self.shift + other.shift, data)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut data = vec![Gi::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        DenseOperator { n: self.n, shift: self.shift, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_projection(&self) -> bool {
        self.is_hermitian() && self.is_idempotent()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Trace as `(numerator, shift)`.
    pub fn trace_exact(&self) -> (Complex<i64>, u32) {
        let d = self.dim();
        ((0..d).map(|i| self.data[i * d + i]).sum(), self.shift)
    }

    /// tr(self · other) without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> (Complex<i64>, u32) {
        self.check_same(other);
        let d = self.dim();
        let mut t = Gi::zero();
        for i in 0..d {
            for j in 0..d {
                t += self.data[i * d + j] * other.data[j * d + i];
            }
        }
        (t, self.shift + other.shift)
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        let d = self.dim();
        exact::rank_of_rows((0..d).map(|i| self.exact_row(i)))
    }

    /// Rank of a projection, read off the trace; `None` if this is not one.
    pub fn projection_rank(&self) -> Option<usize> {
        if !self.is_projection() {
            return None;
        }
        let (t, s) = self.trace_exact();
        Some((t.re >> s) as usize)
    }

    fn exact_row(&self, i: usize) -> Row {
        let d = self.dim();
        (0..d)
            .filter(|&j| !self.data[i * d + j].is_zero())
            .map(|j| (j, dyadic(self.data[i * d + j], self.shift)))
            .collect()
    }

    fn exact_entry(&self, i: usize, j: usize) -> Qi {
        dyadic(self.data[i * self.dim() + j], self.shift)
    }

    /// ρ(g)·self in O(4ⁿ), using that ρ(g) has one nonzero per row.
    pub(crate) fn pauli_left(&self, g: &Monomial) -> Self {
        let d = self.dim();
        let mut data = vec![Gi::zero(); d * d];
        for r in 0..d {
            let v = I_POW[g.power[r] as usize];
            let src = r ^ g.flip;
            for (o, x) in data[r * d..(r + 1) * d].iter_mut().zip(&self.data[src * d..(src + 1) * d]) {
                *o = v * x;
            }
        }
        DenseOperator { n: self.n, shift: self.shift, data }
    }

    pub fn to_float(&self) -> FloatMatrix {
        let d = self.dim();
        FloatMatrix {
            dim: d,
            data: (0..d * d).map(|k| self.entry(k / d, k % d)).collect(),
        }
    }
}

impl fmt::Display for DenseOperator {
    /// Rows of `re+imi` entries scaled by the common denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        if self.shift > 0 {
            writeln!(f, "1/{} *", 1u64 << self.shift)?;
        }
        for i in 0..d {
            let row: Vec<String> = self.data[i * d..(i + 1) * d]
                .iter()
                .map(|v| match (v.re, v.im) {
                    (re, 0) => re.to_string(),
                    (0, im) => format!("{im}i"),
                    (re, im) => format!("{re}{im:+}i"),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// ρ(g) as a signed permutation: row r holds `i^power[r]` in column `r ^ flip`.
pub(crate) struct Monomial {
    flip: usize,
    power: Vec<u8>,
}

impl Monomial {
    pub(crate) fn new(g: &PauliOperator) -> Self {
        let n = g.n();
        let mut flip = 0;
        for j in 0..n {
            if g.row().x(j) {
                flip |= 1 << (n - 1 - j);
            }
        }
        let power = (0..1usize << n)
            .map(|r| {
                let mut p = g.phase() as usize;
                for j in 0..n {
                    let bit = (r >> (n - 1 - j)) & 1;
                    p += match g.factor(j) {
                        'Z' => 2 * bit,
                        // <0|Y|1> = -i, <1|Y|0> = i
                        'Y' => 3 - 2 * bit,
                        _ => 0,
                    };
                }
                (p % 4) as u8
            })
            .collect();
        Monomial { flip, power }
    }

    /// tr(self† · other).
    fn hs_inner(&self, other: &Monomial) -> Gi {
        if self.flip != other.flip {
            return Gi::zero();
        }
        self.power
            .iter()
            .zip(&other.power)
            .map(|(a, b)| I_POW[((4 - a) % 4 + b) as usize % 4])
            .sum()
    }
}

fn factor_matrix(c: char) -> [Gi; 4] {
    let (o, l, i) = (Gi::zero(), Gi::new(1, 0), Gi::new(0, 1));
    match c {
        'X' => [o, l, l, o],
        'Y' => [o, -i, i, o],
        'Z' => [l, o, o, -l],
        _ => [l, o, o, l],
    }
}

/// ρ(g): the Kronecker product of the single-qubit factors times `i^phase`.
pub fn to_dense(g: &PauliOperator) -> Result<DenseOperator, DenseError> {
    cap(g.n(), MAX_QUBITS)?;
    let mut data = vec![I_POW[g.phase() as usize]];
    let mut d = 1;
    for j in 0..g.n() {
        let f = factor_matrix(g.factor(j));
        let nd = 2 * d;
        let mut next = vec![Gi::zero(); nd * nd];
        for (k, a) in data.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (r, c) = (k / d, k % d);
            for (q, b) in f.iter().enumerate() {
                next[(2 * r + q / 2) * nd + 2 * c + q % 2] = a * b;
            }
        }
        data = next;
        d = nd;
    }
    Ok(DenseOperator { n: g.n(), shift: 0, data })
}

/// Which eigenspace of a hermitian Pauli a projection selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "plus" | "0" => Ok(Sign::Plus),
            "-" | "minus" | "1" => Ok(Sign::Minus),
            _ => Err(format!("not a sign: {s:?}")),
        }
    }
}

/// Sign vector number `index` over `m` generators: bit `m-1-i` set means
/// generator i takes the minus sign, so index 0 is all plus.
pub fn signs_from_index(m: usize, index: usize) -> Vec<Sign> {
    (0..m)
        .map(|i| if (index >> (m - 1 - i)) & 1 == 1 { Sign::Minus } else { Sign::Plus })
        .collect()
}

fn check_projectable(g: &PauliOperator) -> Result<(), DenseError> {
    if g.is_scalar() {
        return Err(DenseError::ScalarProjection(g.to_string()));
    }
    if !g.is_hermitian() {
        return Err(DenseError::NotHermitian(g.to_string()));
    }
    Ok(())
}

/// (I ± ρ(g))/2.
pub fn canonical_projection(g: &PauliOperator, sign: Sign) -> Result<DenseOperator, DenseError> {
    check_projectable(g)?;
    let rho = to_dense(g)?;
    let id = DenseOperator::identity(g.n());
    Ok(match sign {
        Sign::Plus => id.add(&rho),
        Sign::Minus => id.sub(&rho),
    }
    .half())
}

/// Product of (I + sᵢρ(gᵢ))/2 over commuting hermitian generators.
pub fn joint_projection_for(gens: &[PauliOperator], signs: &[Sign]) -> Result<DenseOperator, DenseError> {
    let n = gens.first().ok_or(DenseError::Empty)?.n();
    cap(n, MAX_QUBITS)?;
    if signs.len() != gens.len() {
        return Err(DenseError::SignLength { expected: gens.len(), found: signs.len() });
    }
    let mut p = DenseOperator::identity(n);
    for (g, s) in gens.iter().zip(signs) {
        if g.n() != n {
            return Err(DenseError::DimensionMismatch { expected: n, found: g.n() });
        }
        check_projectable(g)?;
        let moved = p.pauli_left(&Monomial::new(g));
        p = match s {
            Sign::Plus => p.add(&moved),
            Sign::Minus => p.sub(&moved),
        }
        .half();
    }
    Ok(p)
}

/// Joint eigenprojection of a completed code for one sign vector.
pub fn joint_projection(completion: &Completion, signs: &[Sign]) -> Result<DenseOperator, DenseError> {
    let code = &completion.combined;
    if code.k() != 0 {
        return Err(DenseError::NotCompleted { k: code.k() });
    }
    joint_projection_for(code.generators(), signs)
}

/// Outcome of [`verify_orthonormal_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub qubits: usize,
    pub generators: usize,
    /// Rank per sign vector, in [`signs_from_index`] order; 0 marks a non-projection.
    pub ranks: Vec<usize>,
    pub all_projections: bool,
    pub all_rank_one: bool,
    pub mutually_orthogonal: bool,
    pub sums_to_identity: bool,
}

impl DecompositionReport {
    /// Every joint projection is an atom (rank one).
    pub fn atomic(&self) -> bool {
        self.all_rank_one
    }

    pub fn holds(&self) -> bool {
        self.all_projections && self.all_rank_one && self.mutually_orthogonal && self.sums_to_identity
    }
}

/// Checks that the joint eigenprojections of `code` are rank one, pairwise
/// orthogonal and resolve the identity. Uncompleted codes give rank 2^k blocks.
pub fn verify_orthonormal_decomposition(code: &StabilizerCode) -> Result<DecompositionReport, DenseError> {
    verify_orthonormal_decomposition_with(code, Execution::default())
}

pub fn verify_orthonormal_decomposition_with(
    code: &StabilizerCode,
    exec: Execution,
) -> Result<DecompositionReport, DenseError> {
    let n = code.n();
    cap(n, MAX_DECOMPOSITION_QUBITS)?;
    let gens = code.generators();
    let m = gens.len();
    let projs = exec
        .map(0..1 << m, |u| joint_projection_for(gens, &signs_from_index(m, u)))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let ranks: Vec<usize> = exec
        .map(0..projs.len(), |u| projs[u].projection_rank())
        .into_iter()
        .map(|r| r.unwrap_or(0))
        .collect();
    let all_projections = ranks.iter().all(|&r| r > 0);
    let all_rank_one = ranks.iter().all(|&r| r == 1);
    // for projections tr(PQ) = ‖PQ‖², so a zero trace is a zero product
    let count = projs.len();
    let clash = exec.find_first(0..count * count, |k| {
        let (u, v) = (k / count, k % count);
        (u < v && !projs[u].trace_of_product(&projs[v]).0.is_zero()).then_some(())
    });
    let sum = projs.iter().fold(DenseOperator::zero(n), |acc, p| acc.add(p));
    Ok(DecompositionReport {
        qubits: n,
        generators: m,
        ranks,
        all_projections,
        all_rank_one,
        mutually_orthogonal: all_projections && clash.is_none(),
        sums_to_identity: sum == DenseOperator::identity(n),
    })
}

/// Outcome of [`verify_meet_homomorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetReport {
    pub generators: usize,
    pub faces_checked: usize,
    /// The product over each face has rank 2^(n - |J|).
    pub ranks_match: bool,
    /// The product equals the sum of the vertex projections below the face.
    pub matches_faces: bool,
    pub coatom_pairs_checked: usize,
    /// P(a)·P(b) is the projection of face_meet(a, b), or zero when it is absent.
    pub coatom_meets_match: bool,
    pub first_failure: Option<String>,
}

impl MeetReport {
    pub fn holds(&self) -> bool {
        self.ranks_match && self.matches_faces && self.coatom_meets_match
    }
}

fn coatom(m: usize, i: usize, s: Sign) -> SignedSet {
    let bit = 1u64 << i;
    match s {
        Sign::Plus => SignedSet::from_bits(m, bit, 0),
        Sign::Minus => SignedSet::from_bits(m, 0, bit),
    }
}

struct FaceOracle<'a> {
    n: usize,
    m: usize,
    vertices: &'a [DenseOperator],
}

impl FaceOracle<'_> {
    /// Sum of the vertex projections below `face`.
    fn projection(&self, face: &SignedSet) -> DenseOperator {
        (0..1usize << self.m)
            .filter(|&u| {
                let minus = (0..self.m).filter(|&i| (u >> (self.m - 1 - i)) & 1 == 1).fold(0u64, |a, i| a | 1 << i);
                let full = (1u64 << self.m) - 1;
                SignedSet::from_bits(self.m, full & !minus, minus).is_subface_of(face)
            })
            .fold(DenseOperator::zero(self.n), |acc, u| acc.add(&self.vertices[u]))
    }
}

/// Checks that sending generator coatoms to canonical projections extends to a
/// meet homomorphism from the face lattice into the projection lattice.
pub fn verify_meet_homomorphism(code: &StabilizerCode) -> Result<MeetReport, DenseError> {
    verify_meet_homomorphism_with(code, Execution::default())
}

pub fn verify_meet_homomorphism_with(code: &StabilizerCode, exec: Execution) -> Result<MeetReport, DenseError> {
    let n = code.n();
    cap(n, MAX_MEET_QUBITS)?;
    let gens = code.generators();
    let m = gens.len();
    let vertices = exec
        .map(0..1 << m, |u| joint_projection_for(gens, &signs_from_index(m, u)))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let oracle = FaceOracle { n, m, vertices: &vertices };
    let mut canon = Vec::with_capacity(m);
    for g in gens {
        canon.push([canonical_projection(g, Sign::Plus)?, canonical_projection(g, Sign::Minus)?]);
    }
    let pick = |i: usize, s: Sign| &canon[i][(s == Sign::Minus) as usize];

    // every face, as the ordered product of its coatoms
    let faces = SignedSet::all(m);
    let results = exec.map(0..faces.len(), |fi| {
        let face = &faces[fi];
        let mut product = DenseOperator::identity(n);
        let mut meet = SignedSet::whole(m);
        for (i, s) in face.plus().into_iter().map(|i| (i, Sign::Plus)).chain(face.minus().into_iter().map(|i| (i, Sign::Minus))) {
            product = product.mul(pick(i - 1, s));
            meet = face_meet(&meet, &coatom(m, i - 1, s)).ok().flatten().unwrap_or_else(|| SignedSet::whole(m));
        }
        let fixed = m - face.dim();
        let rank_ok = product.projection_rank() == Some(1 << (n - fixed));
        let face_ok = meet == *face && product == oracle.projection(face);
        (rank_ok, face_ok)
    });
    let mut first_failure = None;
    for (fi, (r, f)) in results.iter().enumerate() {
        if !(r & f) && first_failure.is_none() {
            first_failure = Some(format!("face {}", faces[fi]));
        }
    }

    let pairs: Vec<(usize, Sign, usize, Sign)> = (0..m)
        .flat_map(|i| {
            (0..m).flat_map(move |j| {
                [Sign::Plus, Sign::Minus]
                    .into_iter()
                    .flat_map(move |s| [Sign::Plus, Sign::Minus].into_iter().map(move |t| (i, s, j, t)))
            })
        })
        .collect();
    let pair_ok = exec.map(0..pairs.len(), |k| {
        let (i, s, j, t) = pairs[k];
        let product = pick(i, s).mul(pick(j, t));
        match face_meet(&coatom(m, i, s), &coatom(m, j, t)) {
            Ok(Some(face)) => product == oracle.projection(&face),
            Ok(None) => product.is_zero(),
            Err(_) => false,
        }
    });
    if let Some(k) = pair_ok.iter().position(|ok| !ok) {
        let (i, s, j, t) = pairs[k];
        first_failure.get_or_insert(format!("coatoms g{}{s} and g{}{t}", i + 1, j + 1));
    }
    Ok(MeetReport {
        generators: m,
        faces_checked: faces.len(),
        ranks_match: results.iter().all(|r| r.0),
        matches_faces: results.iter().all(|r| r.1),
        coatom_pairs_checked: pairs.len(),
        coatom_meets_match: pair_ok.iter().all(|&ok| ok),
        first_failure,
    })
}

fn common_register(ops: &[DenseOperator]) -> Result<usize, DenseError> {
    let n = ops.first().ok_or(DenseError::Empty)?.n();
    if let Some(op) = ops.iter().find(|op| op.n() != n) {
        return Err(DenseError::DimensionMismatch { expected: n, found: op.n() });
    }
    cap(n, MAX_COMMUTANT_QUBITS)?;
    Ok(n)
}

/// Rows of M·G − G·M = 0 in the unknowns M, indexed row-major.
fn commutator_rows(g: &DenseOperator) -> Vec<Row> {
    let d = g.dim();
    let nz = |i: usize, j: usize| !g.data[i * d + j].is_zero();
    let mut rows = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let mut row = Row::new();
            for c in (0..d).filter(|&c| nz(c, b)) {
                *row.entry(a * d + c).or_insert_with(Qi::zero) += g.exact_entry(c, b);
            }
            for c in (0..d).filter(|&c| nz(a, c)) {
                *row.entry(c * d + b).or_insert_with(Qi::zero) -= g.exact_entry(a, c);
            }
            row.retain(|_, v| !v.is_zero());
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

/// Dimension of {M : M·G = G·M for every G in `ops`}, solved as one linear system.
pub fn commutant_dimension(ops: &[DenseOperator]) -> Result<usize, DenseError> {
    let n = common_register(ops)?;
    let d = 1usize << n;
    let mut system = Echelon::new();
    for g in ops {
        for row in commutator_rows(g) {
            system.insert(row);
        }
    }
    Ok(d * d - system.rank())
}

/// The same dimension as [`commutant_dimension`], assembled as the
/// intersection of the single-operator commutants, one operator at a time.
pub fn commutant_dimension_by_intersection(ops: &[DenseOperator]) -> Result<usize, DenseError> {
    let n = common_register(ops)?;
    let width = 1usize << (2 * n);
    let mut basis: Vec<Row> = {
        let mut first = Echelon::new();
        for row in commutator_rows(&ops[0]) {
            first.insert(row);
        }
        first.nullspace(width)
    };
    for g in &ops[1..] {
        // coordinate -> (basis index, value)
        let mut by_coord: Vec<Vec<(usize, &Qi)>> = vec![Vec::new(); width];
        for (j, v) in basis.iter().enumerate() {
            for (&c, x) in v {
                by_coord[c].push((j, x));
            }
        }
        let mut reduced = Echelon::new();
        for row in commutator_rows(g) {
            let mut induced = Row::new();
            for (&c, a) in &row {
                for &(j, x) in &by_coord[c] {
                    *induced.entry(j).or_insert_with(Qi::zero) += a * x;
                }
            }
            reduced.insert(induced);
        }
        let coeffs = reduced.nullspace(basis.len());
        basis = coeffs
            .iter()
            .map(|cv| {
                let mut out = Row::new();
                for (&j, w) in cv {
                    for (&c, x) in &basis[j] {
                        *out.entry(c).or_insert_with(Qi::zero) += w * x;
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect();
    }
    Ok(basis.len())
}

/// Rank of the Hilbert–Schmidt Gram matrix of ρ over `elements`; phases drop
/// out, so this counts the distinct projective elements.
pub fn algebra_span_dimension(elements: &[PauliOperator]) -> Result<usize, DenseError> {
    let Some(first) = elements.first() else {
        return Ok(0);
    };
    let n = first.n();
    cap(n, MAX_QUBITS)?;
    if let Some(e) = elements.iter().find(|e| e.n() != n) {
        return Err(DenseError::DimensionMismatch { expected: n, found: e.n() });
    }
    let mono: Vec<Monomial> = elements.iter().map(Monomial::new).collect();
    let rows = mono.iter().map(|a| {
        mono.iter()
            .enumerate()
            .map(|(j, b)| (j, a.hs_inner(b)))
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, dyadic(v, 0)))
            .collect::<Row>()
    });
    Ok(exact::rank_of_rows(rows))
}

/// Summary of the dense checks for one code, as printed by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub k: usize,
    /// Completed code decomposes I into rank-one projections (null beyond the size limit).
    pub orthonormal: Option<bool>,
    pub meet_homomorphism: Option<bool>,
    /// Commutant of the original generators.
    pub commutant_dim: Option<usize>,
    /// Span of the stabilizer group.
    pub span_dim: Option<usize>,
    /// 2^(n-k), the stabilizer group order.
    pub group_order: usize,
    /// Whether the commutant dimension equals 2^(n-k); it does only for k = 0.
    pub commutant_equals_group_order: Option<bool>,
}

pub fn embedding_report(code: &StabilizerCode) -> Result<EmbeddingReport, DenseError> {
    let (n, k) = (code.n(), code.k());
    let completed = complete(code).combined;
    let orthonormal = match verify_orthonormal_decomposition(&completed) {
        Ok(r) => Some(r.holds()),
        Err(DenseError::DimensionCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let meet_homomorphism = match verify_meet_homomorphism(&completed) {
        Ok(r) => Some(r.holds()),
        Err(DenseError::DimensionCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let commutant_dim = if n <= MAX_COMMUTANT_QUBITS {
        let ops = code.generators().iter().map(to_dense).collect::<Result<Vec<_>, _>>()?;
        Some(commutant_dimension(&ops)?)
    } else {
        None
    };
    let span_dim = match stabilizer_group(code) {
        Ok(group) if n <= MAX_QUBITS => Some(algebra_span_dimension(&group)?),
        _ => None,
    };
    let group_order = 1usize << (n - k);
    Ok(EmbeddingReport {
        n,
        k,
        orthonormal,
        meet_homomorphism,
        commutant_dim,
        span_dim,
        group_order,
        commutant_equals_group_order: commutant_dim.map(|c| c == group_order),
    })
}

/// Row-major complex matrix for the checks that need √2.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    dim: usize,
    data: Vec<Complex<f64>>,
}

impl FloatMatrix {
    /// H^⊗n.
    pub fn hadamard(n: usize) -> Self {
        let d = 1usize << n;
        let s = (d as f64).sqrt().recip();
        let data = (0..d * d)
            .map(|k| {
                let sign = if ((k / d) & (k % d)).count_ones() % 2 == 0 { s } else { -s };
                Complex::new(sign, 0.0)
            })
            .collect();
        FloatMatrix { dim: d, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.dim;
        assert_eq!(d, other.dim);
        let mut data = vec![Complex::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        FloatMatrix { dim: d, data }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Gaussian elimination with partial pivoting; pivots below `tol` count as zero.
    pub fn rank(&self, tol: f64) -> usize {
        let d = self.dim;
        let mut m = self.data.clone();
        let mut rank = 0;
        for col in 0..d {
            let Some(p) = (rank..d).max_by(|&a, &b| m[a * d + col].norm().total_cmp(&m[b * d + col].norm())) else {
                break;
            };
            if m[p * d + col].norm() <= tol {
                continue;
            }
            for j in 0..d {
                m.swap(p * d + j, rank * d + j);
            }
            let pivot = m[rank * d + col];
            for r in rank + 1..d {
                let f = m[r * d + col] / pivot;
                for j in col..d {
                    let v = m[rank * d + j];
                    m[r * d + j] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// H^⊗n ρ(g) H^⊗n against ρ of the symbolic conjugate, within [`FLOAT_TOLERANCE`].
pub fn hadamard_conjugation_agrees(g: &PauliOperator) -> Result<bool, DenseError> {
    let h = FloatMatrix::hadamard(g.n());
    let lhs = h.mul(&to_dense(g)?.to_float()).mul(&h);
    let rhs = to_dense(&g.hadamard_conjugate())?.to_float();
    Ok(lhs.approx_eq(&rhs, FLOAT_TOLERANCE))
}
