use monadpreserve::terms::{
    classify, discerning_companion, parse_equation, parse_term, Equation, Signature, Term,
};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::new([("m", 2), ("f", 1), ("c", 0)]).unwrap()
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        1 => Just(Term::app("c", vec![])),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app("m", vec![a, b])),
            inner.prop_map(|a| Term::app("f", vec![a])),
        ]
    })
}

fn equation() -> impl Strategy<Value = Equation> {
    (term(3), term(3)).prop_filter_map("needs a variable", |(l, r)| Equation::new(l, r).ok())
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(t in term(3).prop_filter("depth ≤ 3", |t| t.depth() <= 3)) {
        prop_assert!(t.depth() <= 3);
        let printed = t.to_string();
        prop_assert_eq!(parse_term(&printed, &sig()).unwrap(), t);
    }

    #[test]
    fn equations_round_trip(eq in equation()) {
        prop_assert_eq!(parse_equation(&eq.to_string(), &sig()).unwrap(), eq);
    }

    #[test]
    fn classification_implications(eq in equation()) {
        let c = classify(&eq);
        prop_assert_eq!(c.linear, !c.drop && !c.dup);
        if c.one_drop { prop_assert!(c.drop); }
        if c.strict_drop { prop_assert!(c.drop && !c.dup); }
        if c.two_dup { prop_assert!(c.dup); }
        if c.strict_dup { prop_assert!(c.dup && !c.drop); }
        prop_assert_eq!(classify(&eq.flipped()), c);
    }

    #[test]
    fn companions_are_linear(eq in equation()) {
        if let Ok(cand) = discerning_companion(&eq) {
            prop_assert!(classify(&cand.companion).linear);
            prop_assert_eq!(cand.oriented.rhs.count(&cand.duplicated), 2);
            prop_assert_eq!(cand.companion.lhs.count(&cand.renamed), 1);
            prop_assert_eq!(cand.companion.lhs.size(), cand.companion.rhs.size());
        }
    }

    #[test]
    fn replacing_a_position_with_itself_is_identity(t in term(3), pick in any::<prop::sample::Index>()) {
        let positions = t.positions();
        let (path, sub) = &positions[pick.index(positions.len())];
        prop_assert_eq!(t.replace_at(path, (*sub).clone()), t.clone());
    }
}
