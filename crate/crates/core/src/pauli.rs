//! Phase-tracked Pauli operators over a bit-packed symplectic representation.
//!
//! An operator is `i^phase · P₁ ⊗ … ⊗ Pₙ` with each `Pⱼ` one of the hermitian
//! matrices I, X, Y, Z. Factor `j` is stored as the bit pair `(xⱼ, zⱼ)`:
//! I = (0,0), X = (1,0), Z = (0,1), Y = (1,1). Internally products are formed in
//! the `X^x Z^z` basis, where Y = i·XZ, so the Y count converts between the two
//! phase conventions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("qubit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

/// The `2n`-bit symplectic vector of a Pauli operator, phase dropped.
///
/// Bit `i < n` is `xᵢ₊₁`, bit `n + i` is `zᵢ₊₁`. [`CheckRow::to_words`] lays the x
/// block out before the z block, each little-endian within 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CheckRow {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl CheckRow {
    pub fn zeros(n: usize) -> Self {
        CheckRow {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self, j: usize) -> bool {
        self.x[j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn z(&self, j: usize) -> bool {
        self.z[j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set_x(&mut self, j: usize, v: bool) {
        set(&mut self.x, j, v)
    }

    pub fn set_z(&mut self, j: usize, v: bool) {
        set(&mut self.z, j, v)
    }

    /// Bit `i` of the concatenation x ‖ z.
    pub fn bit(&self, i: usize) -> bool {
        if i < self.n {
            self.x(i)
        } else {
            self.z(i - self.n)
        }
    }

    pub fn set_bit(&mut self, i: usize, v: bool) {
        if i < self.n {
            self.set_x(i, v)
        } else {
            self.set_z(i - self.n, v)
        }
    }

    /// x_r·z_s + z_r·x_s mod 2; `true` means the operators anticommute.
    pub fn symplectic(&self, other: &CheckRow) -> bool {
        debug_assert_eq!(self.n, other.n);
        let ones: u32 = self
            .x
            .iter()
            .zip(&other.z)
            .chain(self.z.iter().zip(&other.x))
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn xor_assign(&mut self, other: &CheckRow) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Positions where both x and z are set.
    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(a, b)| (a & b).count_ones()).sum()
    }

    /// Popcount of z_self & x_other.
    fn z_dot_x(&self, other: &CheckRow) -> u32 {
        self.z.iter().zip(&other.x).map(|(a, b)| (a & b).count_ones()).sum()
    }

    /// x words followed by z words.
    pub fn to_words(&self) -> Vec<u64> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    pub fn from_words(n: usize, words: &[u64]) -> Option<Self> {
        let w = words_for(n);
        if words.len() != 2 * w {
            return None;
        }
        let mut row = CheckRow {
            n,
            x: words[..w].to_vec(),
            z: words[w..].to_vec(),
        };
        let tail = n % WORD;
        if tail != 0 || n == 0 {
            let keep = if n == 0 { 0 } else { (1u64 << tail) - 1 };
            row.x[w - 1] &= keep;
            row.z[w - 1] &= keep;
        }
        Some(row)
    }

    /// Row with bit `i` (in x ‖ z order) taken from bit `2n − 1 − i` of `value`,
    /// so that counting `value` upwards walks rows in lexicographic order.
    pub fn from_lex_index(n: usize, value: u128) -> Self {
        let mut row = CheckRow::zeros(n);
        for i in 0..2 * n {
            row.set_bit(i, value >> (2 * n - 1 - i) & 1 == 1);
        }
        row
    }
}

fn set(words: &mut [u64], j: usize, v: bool) {
    let bit = 1u64 << (j % WORD);
    if v {
        words[j / WORD] |= bit;
    } else {
        words[j / WORD] &= !bit;
    }
}

/// Lexicographic on the bit string x₁…xₙ z₁…zₙ, with 0 < 1.
impl Ord for CheckRow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let lhs = self.x.iter().chain(&self.z).map(|w| w.reverse_bits());
            let rhs = other.x.iter().chain(&other.z).map(|w| w.reverse_bits());
            lhs.cmp(rhs)
        })
    }
}

impl PartialOrd for CheckRow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the n-qubit Pauli group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    row: CheckRow,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            row: CheckRow::zeros(n),
            phase: 0,
        }
    }

    /// `i^phase` times the hermitian string with symplectic bits `row`.
    pub fn from_row(row: CheckRow, phase: u8) -> Self {
        PauliOperator {
            row,
            phase: phase % 4,
        }
    }

    /// Single-qubit `factor` ('X', 'Y' or 'Z') at 0-based `qubit`.
    pub fn single(n: usize, qubit: usize, factor: char) -> Self {
        let mut row = CheckRow::zeros(n);
        match factor {
            'X' => row.set_x(qubit, true),
            'Z' => row.set_z(qubit, true),
            'Y' => {
                row.set_x(qubit, true);
                row.set_z(qubit, true);
            }
            _ => {}
        }
        PauliOperator { row, phase: 0 }
    }

    /// Every phase-free element of Gₙ⁺, 4ⁿ of them.
    pub fn all_positive(n: usize) -> impl Iterator<Item = PauliOperator> {
        (0..1u128 << (2 * n)).map(move |v| PauliOperator::from_row(CheckRow::from_lex_index(n, v), 0))
    }

    pub fn n(&self) -> usize {
        self.row.n
    }

    /// Exponent λ of the prefactor i^λ in front of the hermitian string.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn row(&self) -> &CheckRow {
        &self.row
    }

    pub fn into_row(self) -> CheckRow {
        self.row
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    /// Hermitian exactly for real prefactors ±1.
    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    /// ±I (or ±iI): no non-identity factor.
    pub fn is_scalar(&self) -> bool {
        self.row.is_zero()
    }

    pub fn factor(&self, j: usize) -> char {
        match (self.row.x(j), self.row.z(j)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn weight(&self) -> usize {
        self.row.weight()
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n(), other.n(), "qubit count mismatch");
        // i^λ P = i^(λ + #Y) X^x Z^z ; Z^z X^x' = (-1)^(z·x') X^x' Z^z
        let raw = self.phase as u32
            + self.row.y_count()
            + other.phase as u32
            + other.row.y_count()
            + 2 * self.row.z_dot_x(&other.row);
        let mut row = self.row.clone();
        row.xor_assign(&other.row);
        let phase = ((raw + 4 - row.y_count() % 4) % 4) as u8;
        PauliOperator { row, phase }
    }

    pub fn commutes_with(&self, other: &PauliOperator) -> bool {
        !self.row.symplectic(&other.row)
    }

    /// The adjoint: conjugates the prefactor.
    pub fn dagger(&self) -> PauliOperator {
        PauliOperator {
            row: self.row.clone(),
            phase: (4 - self.phase) % 4,
        }
    }

    /// H^⊗n · self · H^⊗n: X ↔ Z on every factor, Y ↦ −Y.
    pub fn hadamard_conjugate(&self) -> PauliOperator {
        let ys = self.row.y_count();
        PauliOperator {
            row: CheckRow {
                n: self.row.n,
                x: self.row.z.clone(),
                z: self.row.x.clone(),
            },
            phase: ((self.phase as u32 + 2 * ys) % 4) as u8,
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for j in 0..self.n() {
            write!(f, "{}", self.factor(j))?;
        }
        Ok(())
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    /// `[+|-][i]` followed by one or more of `IXYZ`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut phase = 0u8;
        match chars.first() {
            Some('+') => pos = 1,
            Some('-') => {
                phase = 2;
                pos = 1;
            }
            _ => {}
        }
        if chars.get(pos) == Some(&'i') {
            phase += 1;
            pos += 1;
        }
        let body = &chars[pos..];
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        let mut row = CheckRow::zeros(body.len());
        for (j, &ch) in body.iter().enumerate() {
            match ch {
                'I' => {}
                'X' => row.set_x(j, true),
                'Z' => row.set_z(j, true),
                'Y' => {
                    row.set_x(j, true);
                    row.set_z(j, true);
                }
                _ => {
                    return Err(PauliError::InvalidChar {
                        pos: pos + j + 1,
                        ch,
                    })
                }
            }
        }
        Ok(PauliOperator { row, phase })
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn same_n(g: &PauliOperator, h: &PauliOperator) -> Result<(), PauliError> {
    if g.n() != h.n() {
        Err(PauliError::LengthMismatch(g.n(), h.n()))
    } else {
        Ok(())
    }
}

pub fn parse_pauli(text: &str) -> Result<PauliOperator, PauliError> {
    text.parse()
}

pub fn format_pauli(g: &PauliOperator) -> String {
    g.to_string()
}

pub fn multiply(g: &PauliOperator, h: &PauliOperator) -> Result<PauliOperator, PauliError> {
    same_n(g, h)?;
    Ok(g.mul(h))
}

pub fn commutes(g: &PauliOperator, h: &PauliOperator) -> Result<bool, PauliError> {
    same_n(g, h)?;
    Ok(g.commutes_with(h))
}

/// Number of tensor factors where `g` and `h` differ; phases are ignored.
pub fn hamming_distance(g: &PauliOperator, h: &PauliOperator) -> Result<usize, PauliError> {
    same_n(g, h)?;
    let mut diff = g.row.clone();
    diff.xor_assign(&h.row);
    Ok(diff.weight())
}

pub fn weight(g: &PauliOperator) -> usize {
    g.weight()
}

pub fn hadamard_conjugate(g: &PauliOperator) -> PauliOperator {
    g.hadamard_conjugate()
}
