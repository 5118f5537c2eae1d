//! Exact MV₃ algebra on {0, ½, 1} and its finite powers.
//!
//! Truth values are stored as a count of halves so every operation is integer
//! arithmetic. The derived connectives are computed through ⊕ and ¬ only; the
//! tests re-check them against the direct Łukasiewicz truth functions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("connective `{0}` expects {1} operand(s)")]
    Arity(Connective, usize),
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vectors must have at least one coordinate")]
    EmptyVector,
    #[error("`{0}` is not a truth value in {{0, 1/2, 1}}")]
    BadTruthValue(String),
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier has {0} elements; exhaustive checks are limited to 729")]
    CarrierTooLarge(usize),
    #[error("carrier does not contain the zero vector")]
    MissingZero,
    #[error("carrier is not closed: {0}")]
    NotClosed(String),
    #[error("homomorphism enumeration supports n in 1..=2, got {0}")]
    HomRange(usize),
}

/// A value of the three-element MV-algebra: 0, ½ or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue(u8);

impl TruthValue {
    pub const ZERO: TruthValue = TruthValue(0);
    /// ε, the unique self-negated value.
    pub const HALF: TruthValue = TruthValue(1);
    pub const ONE: TruthValue = TruthValue(2);
    pub const ALL: [TruthValue; 3] = [Self::ZERO, Self::HALF, Self::ONE];

    /// Builds a value from its numerator over 2.
    pub fn from_halves(halves: u8) -> Option<Self> {
        (halves <= 2).then_some(TruthValue(halves))
    }

    pub fn halves(self) -> u8 {
        self.0
    }

    pub fn oplus(self, other: Self) -> Self {
        TruthValue((self.0 + other.0).min(2))
    }

    pub fn neg(self) -> Self {
        TruthValue(2 - self.0)
    }

    /// x ⊙ y = ¬(¬x ⊕ ¬y)
    pub fn odot(self, other: Self) -> Self {
        self.neg().oplus(other.neg()).neg()
    }

    /// x ⊖ y = x ⊙ ¬y
    pub fn ominus(self, other: Self) -> Self {
        self.odot(other.neg())
    }

    /// x → y = ¬x ⊕ y
    pub fn implies(self, other: Self) -> Self {
        self.neg().oplus(other)
    }

    /// x ↔ y = (x → y) ⊙ (y → x)
    pub fn iff(self, other: Self) -> Self {
        self.implies(other).odot(other.implies(self))
    }

    /// |x − y| = (x ⊖ y) ⊕ (y ⊖ x)
    pub fn abs_diff(self, other: Self) -> Self {
        self.ominus(other).oplus(other.ominus(self))
    }

    /// 2x = x ⊕ x
    pub fn double(self) -> Self {
        self.oplus(self)
    }

    /// x² = x ⊙ x
    pub fn square(self) -> Self {
        self.odot(self)
    }

    /// Weak conjunction min(x, y), written as x ⊙ (x → y).
    pub fn weak_conj(self, other: Self) -> Self {
        self.odot(self.implies(other))
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1/2",
            _ => "1",
        })
    }
}

impl FromStr for TruthValue {
    type Err = MvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "0" => Ok(Self::ZERO),
            "1/2" | "½" | "0.5" | "e" | "eps" => Ok(Self::HALF),
            "1" => Ok(Self::ONE),
            other => Err(MvError::BadTruthValue(other.to_string())),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The MV-algebra connectives exposed to callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    Oplus,
    Neg,
    Odot,
    Ominus,
    Implies,
    Iff,
    AbsDiff,
    Double,
    Square,
    WeakConj,
    /// Łukasiewicz strong conjunction `&`; identical to ⊙.
    StrongConj,
}

impl Connective {
    pub const ALL: [Connective; 11] = [
        Connective::Oplus,
        Connective::Neg,
        Connective::Odot,
        Connective::Ominus,
        Connective::Implies,
        Connective::Iff,
        Connective::AbsDiff,
        Connective::Double,
        Connective::Square,
        Connective::WeakConj,
        Connective::StrongConj,
    ];

    pub fn arity(self) -> usize {
        match self {
            Connective::Neg | Connective::Double | Connective::Square => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Connective::Oplus => "oplus",
            Connective::Neg => "neg",
            Connective::Odot => "odot",
            Connective::Ominus => "ominus",
            Connective::Implies => "implies",
            Connective::Iff => "iff",
            Connective::AbsDiff => "abs_diff",
            Connective::Double => "double",
            Connective::Square => "square",
            Connective::WeakConj => "weak_conj",
            Connective::StrongConj => "strong_conj",
        }
    }

    /// Evaluates the connective; `y` must be present exactly for binary connectives.
    pub fn apply(self, x: TruthValue, y: Option<TruthValue>) -> Result<TruthValue, MvError> {
        match (self.arity(), y) {
            (1, None) => Ok(match self {
                Connective::Neg => x.neg(),
                Connective::Double => x.double(),
                _ => x.square(),
            }),
            (2, Some(y)) => Ok(match self {
                Connective::Oplus => x.oplus(y),
                Connective::Odot | Connective::StrongConj => x.odot(y),
                Connective::Ominus => x.ominus(y),
                Connective::Implies => x.implies(y),
                Connective::Iff => x.iff(y),
                Connective::AbsDiff => x.abs_diff(y),
                _ => x.weak_conj(y),
            }),
            (arity, _) => Err(MvError::Arity(self, arity)),
        }
    }

    /// The 3×3 table (rows x, columns y) of a binary connective, or the 3-entry
    /// column of a unary one.
    pub fn table(self) -> Vec<Vec<TruthValue>> {
        TruthValue::ALL
            .iter()
            .map(|&x| match self.arity() {
                1 => vec![self.apply(x, None).unwrap()],
                _ => TruthValue::ALL
                    .iter()
                    .map(|&y| self.apply(x, Some(y)).unwrap())
                    .collect(),
            })
            .collect()
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Connective {
    type Err = MvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Connective::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .or(match key.as_str() {
                "and" | "&" => Some(Connective::StrongConj),
                "min" | "wedge" => Some(Connective::WeakConj),
                "not" => Some(Connective::Neg),
                _ => None,
            })
            .ok_or(MvError::UnknownConnective(s.to_string()))
    }
}

/// Evaluates a derived connective on scalars.
pub fn derived(
    kind: Connective,
    x: TruthValue,
    y: Option<TruthValue>,
) -> Result<TruthValue, MvError> {
    kind.apply(x, y)
}

/// An element of L₃ⁿ; all operations act coordinatewise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MV3Vector(Vec<TruthValue>);

impl MV3Vector {
    pub fn new(coords: Vec<TruthValue>) -> Result<Self, MvError> {
        if coords.is_empty() {
            return Err(MvError::EmptyVector);
        }
        Ok(MV3Vector(coords))
    }

    pub fn constant(n: usize, value: TruthValue) -> Self {
        assert!(n > 0, "vectors must have at least one coordinate");
        MV3Vector(vec![value; n])
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, TruthValue::ZERO)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, TruthValue::ONE)
    }

    /// The all-½ vector.
    pub fn epsilon(n: usize) -> Self {
        Self::constant(n, TruthValue::HALF)
    }

    /// Every element of L₃ⁿ, in base-3 order with the first coordinate most significant.
    pub fn all(n: usize) -> Vec<MV3Vector> {
        let total = 3usize.pow(n as u32);
        (0..total).map(|idx| Self::from_index(n, idx)).collect()
    }

    pub(crate) fn from_index(n: usize, mut idx: usize) -> Self {
        let mut coords = vec![TruthValue::ZERO; n];
        for slot in coords.iter_mut().rev() {
            *slot = TruthValue((idx % 3) as u8);
            idx /= 3;
        }
        MV3Vector(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[TruthValue] {
        &self.0
    }

    pub fn is_constant(&self, value: TruthValue) -> bool {
        self.0.iter().all(|&c| c == value)
    }

    pub fn oplus(&self, other: &Self) -> Result<Self, MvError> {
        lift_pointwise(Connective::Oplus, self, Some(other))
    }

    pub fn neg(&self) -> Self {
        MV3Vector(self.0.iter().map(|c| c.neg()).collect())
    }

    pub(crate) fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(TruthValue, TruthValue) -> TruthValue,
    ) -> Result<Self, MvError> {
        if self.len() != other.len() {
            return Err(MvError::LengthMismatch(self.len(), other.len()));
        }
        Ok(MV3Vector(
            self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }
}

impl fmt::Display for MV3Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for MV3Vector {
    type Err = MvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        MV3Vector::new(coords)
    }
}

/// Applies a connective coordinatewise.
pub fn lift_pointwise(
    kind: Connective,
    a: &MV3Vector,
    b: Option<&MV3Vector>,
) -> Result<MV3Vector, MvError> {
    match (kind.arity(), b) {
        (1, None) => Ok(MV3Vector(
            a.0.iter()
                .map(|&x| kind.apply(x, None))
                .collect::<Result<_, _>>()?,
        )),
        (2, Some(b)) => {
            if a.len() != b.len() {
                return Err(MvError::LengthMismatch(a.len(), b.len()));
            }
            Ok(MV3Vector(
                a.0.iter()
                    .zip(&b.0)
                    .map(|(&x, &y)| kind.apply(x, Some(y)))
                    .collect::<Result<_, _>>()?,
            ))
        }
        (arity, _) => Err(MvError::Arity(kind, arity)),
    }
}

/// The ⟨⊕, ¬⟩ signature an axiom check runs against.
pub trait MvSignature: Sync {
    fn oplus(&self, x: &MV3Vector, y: &MV3Vector) -> MV3Vector;
    fn neg(&self, x: &MV3Vector) -> MV3Vector;
}

/// Coordinatewise min(x + y, 1) and 1 − x.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardMv3;

impl MvSignature for StandardMv3 {
    fn oplus(&self, x: &MV3Vector, y: &MV3Vector) -> MV3Vector {
        x.zip_with(y, TruthValue::oplus).expect("carrier vectors share a length")
    }

    fn neg(&self, x: &MV3Vector) -> MV3Vector {
        x.neg()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck<W> {
    pub axiom: String,
    pub passed: bool,
    /// Present exactly when `passed` is false.
    pub witness: Option<Vec<W>>,
}

impl<W> AxiomCheck<W> {
    pub fn from_witness(axiom: impl Into<String>, witness: Option<Vec<W>>) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport<W> {
    pub checks: Vec<AxiomCheck<W>>,
}

impl<W> AxiomReport<W> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck<W>> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck<W>> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const AXIOM_ASSOCIATIVITY: &str = "mv1_associativity";
pub const AXIOM_IDENTITY: &str = "mv2_zero_identity";
pub const AXIOM_COMMUTATIVITY: &str = "mv3_commutativity";
pub const AXIOM_INVOLUTION: &str = "mv4_double_negation";
pub const AXIOM_ABSORPTION: &str = "mv5_absorbing_top";
pub const AXIOM_LUKASIEWICZ: &str = "mv6_lukasiewicz";
pub const AXIOM_L3: &str = "l3_triple_sum";
pub const AXIOM_IMPLICATION: &str = "implication_identity";

const MAX_CARRIER: usize = 729;

/// Exhaustively checks the MV axioms, x⊕x⊕x = x⊕x and ¬x⊕y = x→y over the standard signature.
pub fn check_mv_axioms(carrier: &[MV3Vector]) -> Result<AxiomReport<MV3Vector>, MvError> {
    check_mv_axioms_with(carrier, &StandardMv3, Execution::default())
}

/// Same as [`check_mv_axioms`], with a caller-chosen signature and execution mode.
///
/// The implication identity compares `sig`'s ¬x ⊕ y with the Łukasiewicz truth
/// function min(1, 1 − x + y), which does not depend on `sig`.
pub fn check_mv_axioms_with<S: MvSignature>(
    carrier: &[MV3Vector],
    sig: &S,
    exec: Execution,
) -> Result<AxiomReport<MV3Vector>, MvError> {
    let mut elems: Vec<MV3Vector> = carrier.to_vec();
    elems.sort();
    elems.dedup();
    let Some(first) = elems.first() else {
        return Err(MvError::EmptyCarrier);
    };
    if elems.len() > MAX_CARRIER {
        return Err(MvError::CarrierTooLarge(elems.len()));
    }
    let n = first.len();
    if let Some(bad) = elems.iter().find(|v| v.len() != n) {
        return Err(MvError::LengthMismatch(n, bad.len()));
    }
    let index: HashMap<&MV3Vector, usize> = elems.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let zero = *index.get(&MV3Vector::zero(n)).ok_or(MvError::MissingZero)?;

    let m = elems.len();
    let neg: Vec<usize> = elems
        .iter()
        .map(|x| {
            let nx = sig.neg(x);
            index
                .get(&nx)
                .copied()
                .ok_or_else(|| MvError::NotClosed(format!("¬{x} = {nx} is outside the carrier")))
        })
        .collect::<Result<_, _>>()?;
    let mut sum = vec![0usize; m * m];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let s = sig.oplus(x, y);
            sum[i * m + j] = *index
                .get(&s)
                .ok_or_else(|| MvError::NotClosed(format!("{x} ⊕ {y} = {s} is outside the carrier")))?;
        }
    }
    let add = |i: usize, j: usize| sum[i * m + j];
    let top = neg[zero];
    let witness = |ids: &[usize]| Some(ids.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>());

    let pairs = |pred: &(dyn Fn(usize, usize) -> bool + Sync)| {
        exec.find_first(0..m * m, |t| {
            let (x, y) = (t / m, t % m);
            (!pred(x, y)).then_some([x, y])
        })
    };
    let singles = |pred: &dyn Fn(usize) -> bool| (0..m).find(|&x| !pred(x)).map(|x| [x]);

    let assoc = exec.find_first(0..m * m * m, |t| {
        let (x, y, z) = (t / (m * m), (t / m) % m, t % m);
        (add(add(x, y), z) != add(x, add(y, z))).then_some([x, y, z])
    });
    let identity = singles(&|x| add(x, zero) == x);
    let comm = pairs(&|x, y| add(x, y) == add(y, x));
    let invol = singles(&|x| neg[neg[x]] == x);
    let absorb = singles(&|x| add(x, top) == top);
    let luk = pairs(&|x, y| add(neg[add(neg[x], y)], y) == add(neg[add(neg[y], x)], x));
    let l3 = singles(&|x| add(add(x, x), x) == add(x, x));
    let implication = pairs(&|x, y| {
        let direct = elems[x]
            .zip_with(&elems[y], |u, v| TruthValue((2 + v.0 - u.0).min(2)))
            .expect("uniform length");
        elems[add(neg[x], y)] == direct
    });

    Ok(AxiomReport {
        checks: vec![
            AxiomCheck::from_witness(AXIOM_ASSOCIATIVITY, assoc.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_IDENTITY, identity.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_COMMUTATIVITY, comm.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_INVOLUTION, invol.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_ABSORPTION, absorb.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_LUKASIEWICZ, luk.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_L3, l3.and_then(|w| witness(&w))),
            AxiomCheck::from_witness(AXIOM_IMPLICATION, implication.and_then(|w| witness(&w))),
        ],
    })
}

/// A homomorphism L₃ⁿ → L₃, stored as its image table over [`MV3Vector::all`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homomorphism {
    pub images: Vec<TruthValue>,
    /// 1-based coordinate `i` when the map is v ↦ vᵢ.
    pub projection: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub n: usize,
    pub count: usize,
    pub homomorphisms: Vec<Homomorphism>,
}

/// Counts the maps L₃ⁿ → L₃ preserving ⊕, ¬ and 0 by trying every one of the 3^(3ⁿ) tables.
pub fn enumerate_homs_to_l3(n: usize) -> Result<HomReport, MvError> {
    enumerate_homs_to_l3_with(n, Execution::default())
}

pub fn enumerate_homs_to_l3_with(n: usize, exec: Execution) -> Result<HomReport, MvError> {
    if !(1..=2).contains(&n) {
        return Err(MvError::HomRange(n));
    }
    let elems = MV3Vector::all(n);
    let m = elems.len();
    let index: HashMap<&MV3Vector, usize> = elems.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let neg: Vec<usize> = elems.iter().map(|x| index[&x.neg()]).collect();
    let sum: Vec<usize> = (0..m * m)
        .map(|t| index[&elems[t / m].oplus(&elems[t % m]).unwrap()])
        .collect();
    let zero = index[&MV3Vector::zero(n)];

    let candidates = 3usize.pow(m as u32);
    let found = exec.map(0..candidates, |code| {
        let images: Vec<TruthValue> = MV3Vector::from_index(m, code).0;
        let preserves = images[zero] == TruthValue::ZERO
            && (0..m).all(|x| images[neg[x]] == images[x].neg())
            && (0..m * m).all(|t| images[sum[t]] == images[t / m].oplus(images[t % m]));
        preserves.then_some(images)
    });
    let homomorphisms: Vec<Homomorphism> = found
        .into_iter()
        .flatten()
        .map(|images| {
            let projection = (0..n)
                .find(|&i| elems.iter().zip(&images).all(|(v, &h)| v.coords()[i] == h))
                .map(|i| i + 1);
            Homomorphism { images, projection }
        })
        .collect();
    Ok(HomReport {
        n,
        count: homomorphisms.len(),
        homomorphisms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: TruthValue = TruthValue::ZERO;
    const H: TruthValue = TruthValue::HALF;
    const O: TruthValue = TruthValue::ONE;

    /// Direct Łukasiewicz truth functions on halves, used as an independent table.
    fn direct(kind: Connective, x: u8, y: u8) -> u8 {
        let (x, y) = (x as i32, y as i32);
        let r = match kind {
            Connective::Oplus => (x + y).min(2),
            Connective::Neg => 2 - x,
            Connective::Odot | Connective::StrongConj => (x + y - 2).max(0),
            Connective::Ominus => (x - y).max(0),
            Connective::Implies => (2 - x + y).min(2),
            Connective::Iff => 2 - (x - y).abs(),
            Connective::AbsDiff => (x - y).abs(),
            Connective::Double => (2 * x).min(2),
            Connective::Square => (2 * x - 2).max(0),
            Connective::WeakConj => x.min(y),
        };
        r as u8
    }

    #[test]
    fn reductions_match_direct_tables() {
        for kind in Connective::ALL {
            for x in TruthValue::ALL {
                for y in TruthValue::ALL {
                    let got = if kind.arity() == 1 {
                        kind.apply(x, None).unwrap()
                    } else {
                        kind.apply(x, Some(y)).unwrap()
                    };
                    assert_eq!(got.halves(), direct(kind, x.0, y.0), "{kind}({x}, {y})");
                }
            }
        }
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(H.oplus(H), O);
        assert_eq!(O.oplus(H), O);
        for x in TruthValue::ALL {
            assert_eq!(x.oplus(Z), x);
            assert_eq!(x.neg().neg(), x);
        }
        assert_eq!(H.neg(), H);
        assert_eq!(Z.neg(), O);
        assert_eq!(derived(Connective::Implies, O, Some(Z)).unwrap(), Z);
        assert_eq!(derived(Connective::Iff, O, Some(H)).unwrap(), H);
        assert_eq!(derived(Connective::AbsDiff, H, Some(O)).unwrap(), H);
        assert_eq!(derived(Connective::Square, H, None).unwrap(), Z);
        assert_eq!(derived(Connective::Double, H, None).unwrap(), O);
    }

    #[test]
    fn operand_count_is_enforced() {
        assert_eq!(
            derived(Connective::Iff, O, None),
            Err(MvError::Arity(Connective::Iff, 2))
        );
        assert_eq!(
            derived(Connective::Square, O, Some(O)),
            Err(MvError::Arity(Connective::Square, 1))
        );
    }

    #[test]
    fn strong_conjunction_is_odot() {
        assert_eq!(Connective::StrongConj.table(), Connective::Odot.table());
    }

    #[test]
    fn vector_lifting() {
        let a: MV3Vector = "(0, 1/2)".parse().unwrap();
        let b: MV3Vector = "(1/2, 1/2)".parse().unwrap();
        assert_eq!(a.oplus(&b).unwrap().to_string(), "(1/2, 1)");
        let v: MV3Vector = "(1, 0, 1/2)".parse().unwrap();
        assert_eq!(v.neg().to_string(), "(0, 1, 1/2)");
        assert!(lift_pointwise(Connective::Implies, &v, Some(&v))
            .unwrap()
            .is_constant(O));
        assert_eq!(
            lift_pointwise(Connective::Oplus, &a, Some(&v)),
            Err(MvError::LengthMismatch(2, 3))
        );
    }

    #[test]
    fn epsilon_is_the_only_fixed_point_of_negation() {
        for n in 1..=3 {
            let fixed: Vec<_> = MV3Vector::all(n).into_iter().filter(|v| v.neg() == *v).collect();
            assert_eq!(fixed, vec![MV3Vector::epsilon(n)]);
        }
    }

    #[test]
    fn carrier_must_be_closed() {
        let carrier = vec![MV3Vector::zero(1), MV3Vector::epsilon(1)];
        assert!(matches!(check_mv_axioms(&carrier), Err(MvError::NotClosed(_))));
        let carrier = vec![MV3Vector::one(1)];
        assert_eq!(check_mv_axioms(&carrier), Err(MvError::MissingZero));
        assert_eq!(check_mv_axioms(&[]), Err(MvError::EmptyCarrier));
    }

    #[test]
    fn hom_range_is_enforced() {
        assert_eq!(enumerate_homs_to_l3(0), Err(MvError::HomRange(0)));
        assert_eq!(enumerate_homs_to_l3(3), Err(MvError::HomRange(3)));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for kind in Connective::ALL {
            assert_eq!(kind.name().parse::<Connective>().unwrap(), kind);
        }
        assert_eq!("&".parse::<Connective>().unwrap(), Connective::StrongConj);
        assert!("xor".parse::<Connective>().is_err());
        assert!("3/4".parse::<TruthValue>().is_err());
    }
}
