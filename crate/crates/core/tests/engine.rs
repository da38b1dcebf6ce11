use proptest::prelude::*;
use qsym_core::aut::find_disjoint_automorphisms;
use qsym_core::engine::{decide, parse_certificate, serialize_certificate, verify_certificate, DecideOptions, Verdict};
use qsym_core::graph::{build_named, read_graph, write_graph};
use qsym_core::Graph;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, on)| *on).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    /// The lemma engine must never prove commutativity when a disjoint pair exists.
    #[test]
    fn lemma_proofs_are_consistent_with_disjoint_pairs(g in graph_strategy()) {
        let v = decide(&g, &DecideOptions::lemmas_only()).unwrap();
        if let Verdict::NoQuantumSymmetry { certificate } = v {
            prop_assert!(find_disjoint_automorphisms(&g).unwrap().is_none());
            prop_assert!(verify_certificate(&g, &certificate).is_ok());
            let text = serialize_certificate(&certificate);
            let back = parse_certificate(&text).unwrap();
            prop_assert_eq!(serialize_certificate(&back), text);
        }
    }

    #[test]
    fn graph_text_round_trip(g in graph_strategy()) {
        let h = read_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(h.edges(), g.edges());
    }
}

#[test]
fn petersen_stays_undecided_or_classical() {
    let g = build_named("Petersen").unwrap();
    let v = decide(&g, &DecideOptions::default()).unwrap();
    assert_ne!(v.has_quantum_symmetry(), Some(true));
}

#[test]
fn certificate_for_one_graph_fails_on_another() {
    let g = build_named("C12(2)").unwrap();
    let h = build_named("C12(4)").unwrap();
    let Verdict::NoQuantumSymmetry { certificate } = decide(&g, &DecideOptions::lemmas_only()).unwrap() else {
        panic!("C12(2) should be proved");
    };
    assert_eq!(verify_certificate(&h, &certificate).unwrap_err().step, 0);
}
