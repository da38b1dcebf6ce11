mod support;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use qsym_core::aut::automorphism_group;
use qsym_core::graph::{build_named, complete, cycle, edgeless, path};
use qsym_core::groebner::{buchberger, commutator_reduces, quantum_relations, verify_identity, NcPoly, PartialGB};
use qsym_core::Graph;
use std::sync::OnceLock;
use support::classical_value;

fn basis_for(g: &Graph, cap: usize) -> PartialGB {
    buchberger(&quantum_relations(g), cap, 1_000_000).unwrap()
}

fn k3_basis() -> &'static PartialGB {
    static GB: OnceLock<PartialGB> = OnceLock::new();
    GB.get_or_init(|| basis_for(&complete(3), 4))
}

/// Every permutation matrix of a classical automorphism is a point of the
/// quantum automorphism algebra, so every basis element vanishes there.
#[test]
fn basis_vanishes_on_classical_points() {
    let graphs = [complete(3), path(3), edgeless(3), cycle(4).unwrap(), cycle(5).unwrap()];
    for g in graphs {
        let gb = basis_for(&g, 4);
        let elements = automorphism_group(&g).unwrap().elements().unwrap();
        for b in &gb.basis {
            for s in &elements {
                assert!(classical_value(b, s).is_zero(), "{b} at {s}");
            }
        }
    }
}

#[test]
fn distinct_diagonal_generators_stay_apart() {
    let g = complete(3);
    let (a, b) = (NcPoly::var(0, 0), NcPoly::var(1, 1));
    assert!(!verify_identity(&g, k3_basis(), &a, &b));
    let swap = qsym_core::Permutation::parse_cycles(3, "(1 3)").unwrap();
    assert!(!classical_value(&a.sub(&b), &swap).is_zero());
}

#[test]
fn exhausted_bases_are_confluent() {
    for g in [complete(3), path(3), edgeless(2)] {
        let gb = basis_for(&g, 4);
        assert!(gb.exhausted, "{g:?}");
        assert_eq!(gb.check_confluence(4), None);
    }
}

#[test]
fn c4_keeps_noncommuting_generators() {
    let g = build_named("C4").unwrap();
    let gb = basis_for(&g, 5);
    assert!(!commutator_reduces(&g, &gb, (0, 0), (1, 1)));
    assert_eq!(gb.check_confluence(gb.complete_up_to_degree.min(4)), None);
}

fn poly_strategy(n: usize, max_degree: usize) -> impl Strategy<Value = NcPoly> {
    let term = (-3i64..=3, prop::collection::vec((0..n, 0..n), 0..=max_degree));
    prop::collection::vec(term, 1..5).prop_map(|terms| {
        let mut p = NcPoly::zero();
        for (c, word) in terms {
            let mut m = NcPoly::constant(BigRational::from_integer(BigInt::from(c)));
            for (i, j) in word {
                m = m.mul(&NcPoly::var(i, j));
            }
            p = p.add(&m);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn multiples_of_relations_reduce(a in poly_strategy(3, 1), b in poly_strategy(3, 1), k in 0usize..24) {
        let rels = quantum_relations(&complete(3));
        let r = &rels[k % rels.len()];
        prop_assert!(k3_basis().reduce(&a.mul(r).mul(&b)).is_zero());
    }

    #[test]
    fn reduction_is_linear_and_idempotent(p in poly_strategy(3, 3), q in poly_strategy(3, 3)) {
        let gb = k3_basis();
        let (rp, rq) = (gb.reduce(&p), gb.reduce(&q));
        prop_assert_eq!(gb.reduce(&rp), rp.clone());
        prop_assert_eq!(gb.reduce(&p.add(&q)), rp.add(&rq));
    }

    #[test]
    fn parse_round_trip(p in poly_strategy(4, 3)) {
        prop_assert_eq!(NcPoly::parse(&p.to_string()).unwrap(), p);
    }
}
