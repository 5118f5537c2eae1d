//! Faces of the n-cube as signed sets, and the MV₃ view of them.
//!
//! Two families of operations live here. `mv_join`, `mv_meet` and `mv_delta`
//! evaluate the MV-algebra formulas for the cubic operations literally, with no
//! adjustment. `face_join`, `face_meet` and `face_delta` are the plain geometric
//! operations on faces. [`compare`] tabulates where the two disagree.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::mv3::{AxiomCheck, AxiomReport, MV3Vector, MvError, TruthValue};
use crate::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("index {0} is outside 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("index {0} appears with both signs")]
    Overlap(usize),
    #[error("dimension {0} is not supported (1..={1})")]
    Dimension(usize, usize),
    #[error("faces live in different cubes: n = {0} vs n = {1}")]
    DimensionMismatch(usize, usize),
    #[error("meet precondition |x - y| -> e = 1 fails at coordinate {0}")]
    MeetPrecondition(usize),
    #[error("delta precondition y v x = x fails at coordinate {0}")]
    DeltaPrecondition(usize),
    #[error("{0} is not a subface of {1}")]
    NotSubface(SignedSet, SignedSet),
    #[error(transparent)]
    Mv(#[from] MvError),
}

const MAX_DIM: usize = 64;

/// A nonempty face of the n-cube: coordinates fixed to + (`plus`), fixed to −
/// (`minus`), or free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSet {
    n: usize,
    plus: u64,
    minus: u64,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn indices(bits: u64) -> Vec<usize> {
    (0..64).filter(|i| bits >> i & 1 == 1).map(|i| i + 1).collect()
}

impl SignedSet {
    /// Builds a face from 1-based index lists.
    pub fn new(n: usize, plus: &[usize], minus: &[usize]) -> Result<Self, CubicError> {
        if n == 0 || n > MAX_DIM {
            return Err(CubicError::Dimension(n, MAX_DIM));
        }
        let to_bits = |idx: &[usize]| {
            idx.iter().try_fold(0u64, |acc, &i| {
                if i == 0 || i > n {
                    Err(CubicError::IndexOutOfRange(i, n))
                } else {
                    Ok(acc | 1 << (i - 1))
                }
            })
        };
        let (p, m) = (to_bits(plus)?, to_bits(minus)?);
        if p & m != 0 {
            return Err(CubicError::Overlap(indices(p & m)[0]));
        }
        Ok(SignedSet { n, plus: p, minus: m })
    }

    /// The face (∅, ∅): the cube itself.
    pub fn whole(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n));
        SignedSet { n, plus: 0, minus: 0 }
    }

    pub(crate) fn from_bits(n: usize, plus: u64, minus: u64) -> Self {
        debug_assert_eq!(plus & minus, 0);
        SignedSet { n, plus, minus }
    }

    /// All 3ⁿ faces.
    pub fn all(n: usize) -> Vec<SignedSet> {
        MV3Vector::all(n).iter().map(|v| Self::from_mv3(v).unwrap()).collect()
    }

    /// All 2ⁿ vertices, ordered by the bit pattern of `minus`.
    pub fn vertices(n: usize) -> Vec<SignedSet> {
        (0..1u64 << n)
            .map(|m| SignedSet::from_bits(n, !m & mask(n), m))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn plus(&self) -> Vec<usize> {
        indices(self.plus)
    }

    pub fn minus(&self) -> Vec<usize> {
        indices(self.minus)
    }

    fn free_bits(&self) -> u64 {
        !(self.plus | self.minus) & mask(self.n)
    }

    /// Number of free coordinates.
    pub fn dim(&self) -> usize {
        self.free_bits().count_ones() as usize
    }

    pub fn is_vertex(&self) -> bool {
        self.free_bits() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.plus | self.minus == 0
    }

    /// Whether `self` is contained in `other` as a face.
    pub fn is_subface_of(&self, other: &SignedSet) -> bool {
        self.n == other.n && other.plus & !self.plus == 0 && other.minus & !self.minus == 0
    }

    /// Inverse of [`phi`].
    pub fn from_mv3(v: &MV3Vector) -> Result<Self, CubicError> {
        let n = v.len();
        if n > MAX_DIM {
            return Err(CubicError::Dimension(n, MAX_DIM));
        }
        let (mut plus, mut minus) = (0u64, 0u64);
        for (i, &c) in v.coords().iter().enumerate() {
            if c == TruthValue::ONE {
                plus |= 1 << i;
            } else if c == TruthValue::ZERO {
                minus |= 1 << i;
            }
        }
        Ok(SignedSet { n, plus, minus })
    }

    fn same_cube(&self, other: &SignedSet) -> Result<(), CubicError> {
        if self.n != other.n {
            Err(CubicError::DimensionMismatch(self.n, other.n))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: Vec<usize>| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        write!(f, "({{{}}},{{{}}})", list(self.plus()), list(self.minus()))
    }
}

impl Serialize for SignedSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SignedSet", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("plus", &self.plus())?;
        s.serialize_field("minus", &self.minus())?;
        s.end()
    }
}

/// Coordinate i ↦ 1 on `plus`, 0 on `minus`, ½ when free.
pub fn phi(f: &SignedSet) -> MV3Vector {
    let coords = (0..f.n)
        .map(|i| {
            if f.plus >> i & 1 == 1 {
                TruthValue::ONE
            } else if f.minus >> i & 1 == 1 {
                TruthValue::ZERO
            } else {
                TruthValue::HALF
            }
        })
        .collect();
    MV3Vector::new(coords).expect("n >= 1")
}

const EPS: TruthValue = TruthValue::HALF;

/// (y ⊙ (x ↔ y)²) ⊕ (ε ⊙ (ε ↔ |x − y|)²)
pub fn join_scalar(x: TruthValue, y: TruthValue) -> TruthValue {
    y.odot(x.iff(y).square())
        .oplus(EPS.odot(EPS.iff(x.abs_diff(y)).square()))
}

/// (y ⊙ (x ↔ y)²) ⊕ (x ⊙ (x ↔ 2x)²), defined when |x − y| → ε = 1.
pub fn meet_scalar(x: TruthValue, y: TruthValue) -> Option<TruthValue> {
    (x.abs_diff(y).implies(EPS) == TruthValue::ONE)
        .then(|| y.odot(x.iff(y).square()).oplus(x.odot(x.iff(x.double()).square())))
}

/// (y ⊙ (x ↔ y)²) ⊕ (¬y ⊙ (x ↔ ε)²), defined when y ∨ x = x.
pub fn delta_scalar(x: TruthValue, y: TruthValue) -> Option<TruthValue> {
    (join_scalar(y, x) == x)
        .then(|| y.odot(x.iff(y).square()).oplus(y.neg().odot(x.iff(EPS).square())))
}

fn check_len(x: &MV3Vector, y: &MV3Vector) -> Result<(), CubicError> {
    if x.len() != y.len() {
        return Err(MvError::LengthMismatch(x.len(), y.len()).into());
    }
    Ok(())
}

fn partial_zip(
    x: &MV3Vector,
    y: &MV3Vector,
    f: fn(TruthValue, TruthValue) -> Option<TruthValue>,
    err: fn(usize) -> CubicError,
) -> Result<MV3Vector, CubicError> {
    check_len(x, y)?;
    let coords = x
        .coords()
        .iter()
        .zip(y.coords())
        .enumerate()
        .map(|(i, (&a, &b))| f(a, b).ok_or(err(i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MV3Vector::new(coords)?)
}

/// Coordinatewise MV join formula.
pub fn mv_join(x: &MV3Vector, y: &MV3Vector) -> Result<MV3Vector, CubicError> {
    check_len(x, y)?;
    Ok(x.zip_with(y, join_scalar)?)
}

/// Coordinatewise MV meet formula; the error names the first (1-based) coordinate
/// where |x − y| → ε ≠ 1.
pub fn mv_meet(x: &MV3Vector, y: &MV3Vector) -> Result<MV3Vector, CubicError> {
    partial_zip(x, y, meet_scalar, CubicError::MeetPrecondition)
}

/// Coordinatewise MV reflection formula Δ(x, y), requiring y ∨ x = x.
pub fn mv_delta(x: &MV3Vector, y: &MV3Vector) -> Result<MV3Vector, CubicError> {
    partial_zip(x, y, delta_scalar, CubicError::DeltaPrecondition)
}

/// Smallest face containing both.
pub fn face_join(a: &SignedSet, b: &SignedSet) -> Result<SignedSet, CubicError> {
    a.same_cube(b)?;
    Ok(SignedSet::from_bits(a.n, a.plus & b.plus, a.minus & b.minus))
}

/// Intersection of two faces; `None` is the lattice bottom (empty intersection).
pub fn face_meet(a: &SignedSet, b: &SignedSet) -> Result<Option<SignedSet>, CubicError> {
    a.same_cube(b)?;
    let (plus, minus) = (a.plus | b.plus, a.minus | b.minus);
    Ok((plus & minus == 0).then(|| SignedSet::from_bits(a.n, plus, minus)))
}

/// Reflects the subface `y` through the centre of `x`.
pub fn face_delta(x: &SignedSet, y: &SignedSet) -> Result<SignedSet, CubicError> {
    x.same_cube(y)?;
    if !y.is_subface_of(x) {
        return Err(CubicError::NotSubface(*y, *x));
    }
    let free = x.free_bits();
    Ok(SignedSet::from_bits(
        x.n,
        x.plus | (y.minus & free),
        x.minus | (y.plus & free),
    ))
}

/// A reflection operator Δ_x(y) on the face lattice.
pub trait Reflection: Sync {
    fn reflect(&self, x: &SignedSet, y: &SignedSet) -> SignedSet;
}

/// The geometric reflection [`face_delta`].
#[derive(Debug, Clone, Copy, Default)]
pub struct FaceReflection;

impl Reflection for FaceReflection {
    fn reflect(&self, x: &SignedSet, y: &SignedSet) -> SignedSet {
        face_delta(x, y).expect("callers pass subfaces")
    }
}

pub const CUBIC_REFLECTION_MONOTONE: &str = "cl1_reflection_order_preserving";
pub const CUBIC_DISJOINTNESS: &str = "cl2_join_reflection_iff_disjoint";
pub const CUBIC_COMPLETE: &str = "cl3_complete";
pub const CUBIC_ATOMISTIC: &str = "cl4_atomistic";
pub const CUBIC_COATOMISTIC: &str = "cl5_coatomistic";

const MAX_AXIOM_DIM: usize = 3;

/// Exhaustively checks the cubic lattice axioms on the face lattice of the n-cube.
pub fn check_cubic_axioms(n: usize) -> Result<AxiomReport<SignedSet>, CubicError> {
    check_cubic_axioms_with(n, &FaceReflection, Execution::default())
}

/// Same as [`check_cubic_axioms`] with a caller-supplied reflection.
pub fn check_cubic_axioms_with<R: Reflection>(
    n: usize,
    delta: &R,
    exec: Execution,
) -> Result<AxiomReport<SignedSet>, CubicError> {
    if n == 0 || n > MAX_AXIOM_DIM {
        return Err(CubicError::Dimension(n, MAX_AXIOM_DIM));
    }
    let faces = SignedSet::all(n);
    let m = faces.len();
    let join = |a: &SignedSet, b: &SignedSet| face_join(a, b).unwrap();
    let meet = |a: &SignedSet, b: &SignedSet| face_meet(a, b).unwrap();
    // order with bottom = None
    let le = |a: Option<SignedSet>, b: Option<SignedSet>| match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a.is_subface_of(&b),
    };

    let monotone = exec.find_first(0..m * m * m, |t| {
        let (x, y1, y2) = (&faces[t / (m * m)], &faces[(t / m) % m], &faces[t % m]);
        if !(y1.is_subface_of(y2) && y2.is_subface_of(x)) {
            return None;
        }
        let (r1, r2) = (delta.reflect(x, y1), delta.reflect(x, y2));
        let ok = r1.is_subface_of(&r2) && r2.is_subface_of(x) && r1.is_subface_of(x);
        (!ok).then(|| vec![*x, *y1, *y2])
    });

    let disjoint = exec.find_first(0..m * m * m, |t| {
        let (x, a, b) = (&faces[t / (m * m)], &faces[(t / m) % m], &faces[t % m]);
        let below = |f: &SignedSet| f.is_subface_of(x) && f != x;
        if !(below(a) && below(b)) {
            return None;
        }
        let lhs = below(&join(a, &delta.reflect(x, b)));
        let rhs = meet(a, b).is_none();
        (lhs != rhs).then(|| vec![*x, *a, *b])
    });

    // Every pair has a least upper bound and a greatest lower bound (bottom included).
    let complete = exec.find_first(0..m * m, |t| {
        let (a, b) = (faces[t / m], faces[t % m]);
        let (j, mt) = (join(&a, &b), meet(&a, &b));
        let is_join = a.is_subface_of(&j)
            && b.is_subface_of(&j)
            && faces
                .iter()
                .all(|u| !(a.is_subface_of(u) && b.is_subface_of(u)) || j.is_subface_of(u));
        let is_meet = le(mt, Some(a))
            && le(mt, Some(b))
            && faces
                .iter()
                .all(|l| !(l.is_subface_of(&a) && l.is_subface_of(&b)) || le(Some(*l), mt));
        (!(is_join && is_meet)).then(|| vec![a, b])
    });

    let atomistic = faces.iter().find_map(|f| {
        let join_of_vertices = faces
            .iter()
            .filter(|v| v.is_vertex() && v.is_subface_of(f))
            .copied()
            .reduce(|a, b| join(&a, &b));
        (join_of_vertices != Some(*f)).then(|| vec![*f])
    });

    let coatomistic = faces.iter().find_map(|f| {
        let meet_of_facets = faces
            .iter()
            .filter(|c| c.dim() + 1 == n && f.is_subface_of(c))
            .try_fold(SignedSet::whole(n), |acc, c| meet(&acc, c));
        (meet_of_facets != Some(*f)).then(|| vec![*f])
    });

    Ok(AxiomReport {
        checks: vec![
            AxiomCheck::from_witness(CUBIC_REFLECTION_MONOTONE, monotone),
            AxiomCheck::from_witness(CUBIC_DISJOINTNESS, disjoint),
            AxiomCheck::from_witness(CUBIC_COMPLETE, complete),
            AxiomCheck::from_witness(CUBIC_ATOMISTIC, atomistic),
            AxiomCheck::from_witness(CUBIC_COATOMISTIC, coatomistic),
        ],
    })
}

/// One operation evaluated both ways. `None` marks an unmet precondition on the
/// MV side, or the empty face / non-subface on the geometric side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub mv: Option<MV3Vector>,
    pub face: Option<MV3Vector>,
    pub agree: bool,
}

impl Comparison {
    fn new(mv: Option<MV3Vector>, face: Option<MV3Vector>) -> Self {
        let agree = mv == face;
        Comparison { mv, face, agree }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareEntry {
    pub a: String,
    pub b: String,
    pub join: Comparison,
    pub meet: Comparison,
    /// Δ_a(b): reflection of `b` inside `a`.
    pub delta: Comparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub n: usize,
    pub pairs: usize,
    pub join_agree: usize,
    pub meet_agree: usize,
    pub delta_agree: usize,
    pub entries: Vec<CompareEntry>,
}

/// Evaluates every face pair under both the MV formulas (through [`phi`]) and the
/// face operations.
pub fn compare(n: usize) -> Result<CompareReport, CubicError> {
    if n == 0 || n > MAX_AXIOM_DIM {
        return Err(CubicError::Dimension(n, MAX_AXIOM_DIM));
    }
    let faces = SignedSet::all(n);
    let mut entries = Vec::with_capacity(faces.len() * faces.len());
    for a in &faces {
        for b in &faces {
            let (pa, pb) = (phi(a), phi(b));
            let join = Comparison::new(
                Some(mv_join(&pa, &pb)?),
                Some(phi(&face_join(a, b)?)),
            );
            let meet = Comparison::new(
                mv_meet(&pa, &pb).ok(),
                face_meet(a, b)?.as_ref().map(phi),
            );
            let delta = Comparison::new(
                mv_delta(&pa, &pb).ok(),
                face_delta(a, b).ok().as_ref().map(phi),
            );
            entries.push(CompareEntry {
                a: a.to_string(),
                b: b.to_string(),
                join,
                meet,
                delta,
            });
        }
    }
    let tally = |f: fn(&CompareEntry) -> bool| entries.iter().filter(|e| f(e)).count();
    Ok(CompareReport {
        n,
        pairs: entries.len(),
        join_agree: tally(|e| e.join.agree),
        meet_agree: tally(|e| e.meet.agree),
        delta_agree: tally(|e| e.delta.agree),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv3::{lift_pointwise, Connective};

    const Z: TruthValue = TruthValue::ZERO;
    const H: TruthValue = TruthValue::HALF;
    const O: TruthValue = TruthValue::ONE;

    fn ss(n: usize, p: &[usize], m: &[usize]) -> SignedSet {
        SignedSet::new(n, p, m).unwrap()
    }

    fn v(s: &str) -> MV3Vector {
        s.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&ss(3, &[1], &[3])).to_string(), "(1, 1/2, 0)");
        assert_eq!(phi(&SignedSet::whole(2)), MV3Vector::epsilon(2));
    }

    #[test]
    fn phi_is_injective_and_inverted_by_from_mv3() {
        for n in 1..=3 {
            let faces = SignedSet::all(n);
            let mut images: Vec<_> = faces.iter().map(phi).collect();
            for (f, img) in faces.iter().zip(&images) {
                assert_eq!(SignedSet::from_mv3(img).unwrap(), *f);
                if f.is_vertex() {
                    assert!(!img.coords().contains(&H));
                }
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), 3usize.pow(n as u32));
        }
    }

    #[test]
    fn signed_set_validation() {
        assert_eq!(SignedSet::new(2, &[1], &[1]), Err(CubicError::Overlap(1)));
        assert_eq!(SignedSet::new(2, &[3], &[]), Err(CubicError::IndexOutOfRange(3, 2)));
        assert_eq!(SignedSet::new(2, &[0], &[]), Err(CubicError::IndexOutOfRange(0, 2)));
        assert!(SignedSet::new(0, &[], &[]).is_err());
        assert_eq!(ss(3, &[1], &[3]).to_string(), "({1},{3})");
    }

    #[test]
    fn join_formula_values() {
        assert_eq!(join_scalar(H, H), H);
        assert_eq!(join_scalar(O, H), H);
        // documented anomaly: opposite vertices join to 0, not ε
        assert_eq!(join_scalar(Z, O), Z);
        for x in TruthValue::ALL {
            assert_eq!(join_scalar(x, x), x);
            for y in TruthValue::ALL {
                assert_eq!(join_scalar(x, y), join_scalar(y, x));
            }
        }
    }

    #[test]
    fn meet_formula_values() {
        assert_eq!(meet_scalar(O, H), Some(O));
        assert_eq!(meet_scalar(H, O), Some(Z));
        assert_eq!(meet_scalar(Z, O), None);
        assert_eq!(mv_meet(&v("(1, 0)"), &v("(1, 1)")), Err(CubicError::MeetPrecondition(2)));
    }

    #[test]
    fn delta_formula_values() {
        assert_eq!(delta_scalar(H, O), Some(Z));
        assert_eq!(delta_scalar(H, Z), Some(O));
        assert_eq!(delta_scalar(O, O), Some(O));
        // documented anomaly: Δ(ε, ε) = 1
        assert_eq!(delta_scalar(H, H), Some(O));
        assert_eq!(delta_scalar(O, Z), None);
        assert_eq!(mv_delta(&v("(1, 1)"), &v("(1, 0)")), Err(CubicError::DeltaPrecondition(2)));
    }

    #[test]
    fn face_operation_examples() {
        assert_eq!(face_join(&ss(2, &[1], &[]), &ss(2, &[], &[1])).unwrap(), SignedSet::whole(2));
        assert_eq!(face_join(&ss(2, &[1], &[2]), &ss(2, &[1], &[])).unwrap(), ss(2, &[1], &[]));
        assert_eq!(face_meet(&ss(2, &[1], &[]), &ss(2, &[], &[2])).unwrap(), Some(ss(2, &[1], &[2])));
        assert_eq!(face_meet(&ss(2, &[1], &[]), &ss(2, &[], &[1])).unwrap(), None);
        assert_eq!(face_delta(&SignedSet::whole(2), &ss(2, &[1], &[])).unwrap(), ss(2, &[], &[1]));
        assert_eq!(face_delta(&ss(2, &[1], &[]), &ss(2, &[1], &[2])).unwrap(), ss(2, &[1, 2], &[]));
        assert!(matches!(
            face_delta(&ss(2, &[1], &[]), &ss(2, &[], &[1])),
            Err(CubicError::NotSubface(..))
        ));
        assert_eq!(
            face_join(&ss(2, &[1], &[]), &ss(3, &[1], &[])),
            Err(CubicError::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn face_operations_exhaustive() {
        for n in 1..=3 {
            let faces = SignedSet::all(n);
            let eps = MV3Vector::epsilon(n);
            for a in &faces {
                assert_eq!(face_join(a, a).unwrap(), *a);
                for b in &faces {
                    let side = lift_pointwise(
                        Connective::Implies,
                        &lift_pointwise(Connective::AbsDiff, &phi(a), Some(&phi(b))).unwrap(),
                        Some(&eps),
                    )
                    .unwrap();
                    assert_eq!(face_meet(a, b).unwrap().is_some(), side.is_constant(O), "{a} {b}");
                    if b.is_subface_of(a) {
                        let r = face_delta(a, b).unwrap();
                        assert!(r.is_subface_of(a));
                        assert_eq!(face_delta(a, &r).unwrap(), *b);
                    }
                }
            }
            for vertex in SignedSet::vertices(n) {
                let pv = phi(&vertex);
                assert_eq!(mv_delta(&eps, &pv).unwrap(), pv.neg());
                assert_eq!(phi(&face_delta(&SignedSet::whole(n), &vertex).unwrap()), pv.neg());
            }
        }
    }

    #[test]
    fn axioms_hold_for_the_face_model() {
        for n in 1..=3 {
            let report = check_cubic_axioms(n).unwrap();
            assert!(report.all_passed(), "n = {n}: {report:?}");
        }
        assert!(check_cubic_axioms(4).is_err());
    }

    struct Identity;
    impl Reflection for Identity {
        fn reflect(&self, _x: &SignedSet, y: &SignedSet) -> SignedSet {
            *y
        }
    }

    #[test]
    fn identity_reflection_breaks_disjointness_axiom() {
        let report = check_cubic_axioms_with(2, &Identity, Execution::Sequential).unwrap();
        let check = report.get(CUBIC_DISJOINTNESS).unwrap();
        assert!(!check.passed);
        let w = check.witness.as_ref().unwrap();
        let (x, a, b) = (w[0], w[1], w[2]);
        // re-derive the failure from the witness
        let lhs = {
            let j = face_join(&a, &b).unwrap();
            j.is_subface_of(&x) && j != x
        };
        assert_ne!(lhs, face_meet(&a, &b).unwrap().is_none());
        assert!(report.get(CUBIC_REFLECTION_MONOTONE).unwrap().passed);
    }

    #[test]
    fn comparison_surfaces_disagreements() {
        let report = compare(1).unwrap();
        assert_eq!(report.pairs, 9);
        let entry = |a: &str, b: &str| {
            report.entries.iter().find(|e| e.a == a && e.b == b).unwrap().clone()
        };
        let opposite = entry("({},{1})", "({1},{})");
        assert!(!opposite.join.agree);
        assert_eq!(opposite.join.mv, Some(v("(0)")));
        assert_eq!(opposite.join.face, Some(v("(1/2)")));
        let cube = entry("({},{})", "({},{})");
        assert_eq!(cube.delta.mv, Some(v("(1)")));
        assert_eq!(cube.delta.face, Some(v("(1/2)")));
        assert!(report.join_agree < report.pairs);
    }
}
