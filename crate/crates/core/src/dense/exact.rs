//! Sparse Gaussian elimination over Q(i).
//!
//! Rows are ordered maps from column to coefficient. Commutator constraints of
//! Pauli matrices have two nonzeros per row, and eliminating with such rows
//! keeps every row at most two-sparse, so the systems stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Qi = Complex<BigRational>;
pub(crate) type Row = BTreeMap<usize, Qi>;

pub(crate) fn qi(re: i64, im: i64) -> Qi {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// `num / 2^shift` as an element of Q(i).
pub(crate) fn dyadic(num: Complex<i64>, shift: u32) -> Qi {
    let den = BigRational::from_integer(BigInt::one() << shift);
    let v = qi(num.re, num.im);
    Complex::new(v.re / den.clone(), v.im / den)
}

/// Echelon basis of the row space, keyed by pivot column; pivots are scaled to 1.
#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

fn axpy(row: &mut Row, factor: &Qi, other: &Row) {
    for (&c, v) in other {
        let delta = factor * v;
        let entry = row.entry(c).or_insert_with(Qi::zero);
        *entry -= delta;
        if entry.is_zero() {
            row.remove(&c);
        }
    }
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `row` to the row space; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, coef)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = coef.clone();
                    axpy(&mut row, &factor, pivot);
                }
                None => {
                    let inv = Qi::one() / coef.clone();
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Basis of { x : r·x = 0 for every row r } in `width` unknowns.
    pub(crate) fn nullspace(&self, width: usize) -> Vec<Row> {
        // back-substitute into reduced form, highest pivot first
        let mut reduced: BTreeMap<usize, Row> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let hits: Vec<usize> = r
                .keys()
                .copied()
                .filter(|c| *c != p && reduced.contains_key(c))
                .collect();
            for c in hits {
                if let Some(coef) = r.get(&c).cloned() {
                    axpy(&mut r, &coef, &reduced[&c]);
                }
            }
            reduced.insert(p, r);
        }
        let mut by_free: BTreeMap<usize, Row> = BTreeMap::new();
        for f in (0..width).filter(|c| !reduced.contains_key(c)) {
            let mut v = Row::new();
            v.insert(f, Qi::one());
            by_free.insert(f, v);
        }
        for (&p, row) in &reduced {
            for (&c, coef) in row {
                if c != p {
                    if let Some(v) = by_free.get_mut(&c) {
                        v.insert(p, -coef.clone());
                    }
                }
            }
        }
        by_free.into_values().collect()
    }
}

/// Rank of a dense matrix given row by row.
pub(crate) fn rank_of_rows(rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
