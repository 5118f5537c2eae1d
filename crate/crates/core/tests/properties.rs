use proptest::prelude::*;

use trivalent::cubic::{face_join, face_meet, phi, SignedSet};
use trivalent::dense::to_dense;
use trivalent::mv3::{MV3Vector, TruthValue};
use trivalent::pauli::{commutes, hamming_distance, multiply, CheckRow, PauliOperator};
use trivalent::stab::{centralizer_basis, classify_error, complete, syndrome, validate_code, ErrorKind};
use trivalent::ulam::{apply_answer, initial_state, Answer, Question};

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (any::<u128>(), 0u8..4).prop_map(move |(bits, phase)| {
        let v = if n == 64 { bits } else { bits & ((1u128 << (2 * n)) - 1) };
        PauliOperator::from_row(CheckRow::from_lex_index(n, v), phase)
    })
}

fn pauli_triple(max_n: usize) -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
    (1..=max_n).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

fn truth() -> impl Strategy<Value = TruthValue> {
    (0u8..3).prop_map(|h| TruthValue::from_halves(h).unwrap())
}

fn mv_vector(n: usize) -> impl Strategy<Value = MV3Vector> {
    proptest::collection::vec(truth(), n).prop_map(|v| MV3Vector::new(v).unwrap())
}

fn face(n: usize) -> impl Strategy<Value = SignedSet> {
    proptest::collection::vec(0u8..3, n).prop_map(move |signs| {
        let plus: Vec<usize> = (0..n).filter(|&i| signs[i] == 1).map(|i| i + 1).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| signs[i] == 2).map(|i| i + 1).collect();
        SignedSet::new(n, &plus, &minus).unwrap()
    })
}

/// Up to `r` commuting independent generators drawn greedily from `pool`.
fn isotropic(n: usize, pool: &[PauliOperator], r: usize) -> Vec<PauliOperator> {
    let mut chosen: Vec<PauliOperator> = Vec::new();
    for g in pool {
        if chosen.len() == r {
            break;
        }
        let g = g.clone().with_phase(0);
        if g.is_scalar() || chosen.iter().any(|h| !h.commutes_with(&g)) {
            continue;
        }
        let mut next = chosen.clone();
        next.push(g);
        if validate_code(next.clone()).is_ok() {
            chosen = next;
        }
    }
    assert!(chosen.iter().all(|g| g.n() == n));
    chosen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn multiplication_is_associative((a, b, c) in pauli_triple(8)) {
        let left = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn multiplication_matches_dense((a, b, _) in pauli_triple(3)) {
        let dense = to_dense(&a).unwrap().mul(&to_dense(&b).unwrap());
        prop_assert_eq!(to_dense(&multiply(&a, &b).unwrap()).unwrap(), dense);
    }

    #[test]
    fn commutation_matches_dense((a, b, _) in (3usize..=3).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))) {
        let (da, db) = (to_dense(&a).unwrap(), to_dense(&b).unwrap());
        prop_assert_eq!(commutes(&a, &b).unwrap(), da.commutes_with(&db));
    }

    #[test]
    fn hamming_distance_is_a_metric((a, b, c) in pauli_triple(64)) {
        let d = |x: &PauliOperator, y: &PauliOperator| hamming_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &b) == 0, a.row() == b.row());
    }

    #[test]
    fn dagger_inverts((a, _, _) in pauli_triple(10)) {
        let id = multiply(&a, &a.dagger()).unwrap();
        prop_assert_eq!(id, PauliOperator::identity(a.n()));
        prop_assert_eq!(a.hadamard_conjugate().hadamard_conjugate(), a.clone());
    }

    #[test]
    fn mv_identities_pointwise(x in mv_vector(6), y in mv_vector(6), z in mv_vector(6)) {
        let plus = |a: &MV3Vector, b: &MV3Vector| a.oplus(b).unwrap();
        prop_assert_eq!(plus(&plus(&x, &y), &z), plus(&x, &plus(&y, &z)));
        prop_assert_eq!(plus(&x, &y), plus(&y, &x));
        prop_assert_eq!(x.neg().neg(), x.clone());
        prop_assert_eq!(plus(&x, &MV3Vector::one(6)), MV3Vector::one(6));
        // Łukasiewicz axiom ¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x
        prop_assert_eq!(plus(&plus(&x.neg(), &y).neg(), &y), plus(&plus(&y.neg(), &x).neg(), &x));
        prop_assert_eq!(plus(&plus(&x, &x), &x), plus(&x, &x));
    }

    #[test]
    fn phi_round_trips_and_orders(a in face(5), b in face(5)) {
        prop_assert_eq!(SignedSet::from_mv3(&phi(&a)).unwrap(), a);
        let j = face_join(&a, &b).unwrap();
        prop_assert!(a.is_subface_of(&j) && b.is_subface_of(&j));
        if let Some(m) = face_meet(&a, &b).unwrap() {
            prop_assert!(m.is_subface_of(&a) && m.is_subface_of(&b));
        }
    }

    #[test]
    fn completion_is_maximal_isotropic(
        (n, pool) in (1usize..=6).prop_flat_map(|n| (Just(n), proptest::collection::vec(pauli(n), 1..12))),
        r in 1usize..6,
    ) {
        let gens = isotropic(n, &pool, r.min(n));
        prop_assume!(!gens.is_empty());
        let code = validate_code(gens.clone()).unwrap();
        prop_assert_eq!(centralizer_basis(&code).len(), n + code.k());
        let comp = complete(&code);
        prop_assert_eq!(comp.combined.k(), 0);
        prop_assert_eq!(comp.original(), gens.as_slice());
        prop_assert!(validate_code(comp.combined.generators().to_vec()).is_ok());
        for e in &pool {
            let class = classify_error(e, &code).unwrap();
            let anticommutes = gens.iter().any(|g| !g.commutes_with(e));
            prop_assert_eq!(class.kind == ErrorKind::Detectable, anticommutes);
            prop_assert_eq!(syndrome(e, &code).unwrap().iter().any(|&b| b), anticommutes);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn berlekamp_weight_is_conserved(
        n in 1u64..=64,
        q in 1u32..12,
        plays in proptest::collection::vec((any::<u64>(), any::<bool>()), 1..12),
    ) {
        let mut s = initial_state(n, q).unwrap();
        for (mask, yes) in plays {
            if s.q() == 0 {
                break;
            }
            let t = Question::new((0..n as u32).filter(|c| mask >> (c % 64) & 1 == 1).collect());
            let y = apply_answer(&s, &t, Answer::Yes).unwrap();
            let no = apply_answer(&s, &t, Answer::No).unwrap();
            prop_assert_eq!(y.weight() + no.weight(), s.weight());
            prop_assert!(y.a().iter().all(|c| !y.b().contains(c)));
            s = if yes { y } else { no };
        }
    }
}
