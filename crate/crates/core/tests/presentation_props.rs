use monadpreserve::finite::MonoidTable;
use monadpreserve::presentations::{
    encode_as_theory, t1_triviality, MonoidPresentation, TrivialityVerdict,
};
use proptest::prelude::*;

fn presentation() -> impl Strategy<Value = MonoidPresentation> {
    let gens = ["a".to_string(), "b".to_string(), "c".to_string()];
    (1usize..=3).prop_flat_map(move |k| {
        let gens: Vec<String> = gens[..k].to_vec();
        let word = proptest::collection::vec(prop::sample::select(gens.clone()), 0..4);
        proptest::collection::vec((word.clone(), word), 0..4)
            .prop_map(move |rels| MonoidPresentation::new(gens.clone(), rels).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encoding_keeps_every_letter(p in presentation()) {
        let (sig, eqs) = encode_as_theory(&p).unwrap();
        prop_assert_eq!(sig.len(), p.generators.len());
        prop_assert!(sig.ops().iter().all(|(_, a)| *a == 1));
        prop_assert_eq!(eqs.len(), p.relations.len());
        for (eq, (l, r)) in eqs.iter().zip(&p.relations) {
            prop_assert_eq!(eq.lhs.depth(), l.len());
            prop_assert_eq!(eq.rhs.depth(), r.len());
            prop_assert_eq!(eq.lhs.count("x"), 1);
            prop_assert_eq!(eq.rhs.count("x"), 1);
            prop_assert_eq!(eq.vars(), vec!["x".to_string()]);
        }
    }

    #[test]
    fn verdict_evidence_replays(p in presentation()) {
        let v = t1_triviality(&p, 2_000, 3);
        prop_assert!(v.replays(&p), "{} gave {:?}", p, v);
    }

    #[test]
    fn printed_presentations_parse_back(p in presentation()) {
        let text = format!(
            "generators: {}\nrelations: {}",
            p.generators.join(","),
            p.relations
                .iter()
                .map(|(l, r)| format!("{} = {}", l.concat(), r.concat()))
                .collect::<Vec<_>>()
                .join(" ; ")
        );
        prop_assert_eq!(MonoidPresentation::parse(&text).unwrap(), p);
    }
}

#[test]
fn multiplication_tables_present_their_monoid() {
    for m in [
        MonoidTable::z2(),
        MonoidTable::cyclic(3),
        MonoidTable::trivial(),
        MonoidTable::semilattice2(),
    ] {
        let p = MonoidPresentation::of_monoid(&m);
        let v = t1_triviality(&p, 10_000, 3);
        let trivial = m.size == 1;
        assert_eq!(
            matches!(v, TrivialityVerdict::Trivial { .. }),
            trivial,
            "{p}"
        );
        assert!(v.replays(&p));
    }
}
