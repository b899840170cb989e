use monadpreserve::monads::Monad;
use monadpreserve::par;
use monadpreserve::preserve::{check_preservation, verify_witness, CheckOptions, Verdict};
use monadpreserve::terms::{classify, Equation, Signature, Term};
use proptest::prelude::*;

fn sig() -> Signature {
    Signature::new([("m", 2)]).unwrap()
}

fn term(depth: u32) -> impl Strategy<Value = Term> {
    prop::sample::select(vec!["x", "y", "z"])
        .prop_map(Term::var)
        .prop_recursive(depth, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("m", vec![a, b]))
        })
}

fn equation() -> impl Strategy<Value = Equation> {
    (term(2), term(2)).prop_filter_map("needs a variable", |(l, r)| Equation::new(l, r).ok())
}

fn pick(selectors: &[&str], i: usize) -> Monad {
    Monad::from_selector(selectors[i % selectors.len()]).unwrap()
}

const ENUMERABLE: [&str; 6] = [
    "powerset",
    "powerset+",
    "maybe",
    "writer:z2",
    "reader:2",
    "multiset:f2",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn witnesses_replay(eq in equation(), which in 0usize..6) {
        let t = pick(&ENUMERABLE, which);
        let report = check_preservation(&t, &sig(), &eq, &CheckOptions::exhaustive(2)).unwrap();
        if let Some(w) = &report.witness {
            prop_assert_eq!(report.verdict, Verdict::Violated);
            let replay = verify_witness(&t, &eq, &w.algebra, &w.assignment).unwrap();
            prop_assert!(replay.violated);
            prop_assert_eq!(&replay.lhs, &w.lhs);
            prop_assert_eq!(&replay.rhs, &w.rhs);
        } else {
            prop_assert_ne!(report.verdict, Verdict::Violated);
        }
    }

    #[test]
    fn violations_persist_under_larger_bounds(eq in equation(), which in 0usize..6) {
        let t = pick(&ENUMERABLE, which);
        let small = check_preservation(&t, &sig(), &eq, &CheckOptions::exhaustive(2)).unwrap();
        if small.verdict == Verdict::Violated {
            let large = check_preservation(&t, &sig(), &eq, &CheckOptions::exhaustive(3)).unwrap();
            prop_assert_eq!(large.verdict, Verdict::Violated);
            let (a, b) = (small.witness.unwrap(), large.witness.unwrap());
            prop_assert!(b.carrier <= a.carrier);
        }
    }

    #[test]
    fn affine_monads_keep_strict_drop_equations(eq in equation(), which in 0usize..4) {
        prop_assume!(classify(&eq).strict_drop);
        let t = pick(&["powerset+", "reader:2", "writer:trivial", "multiset:trivial"], which);
        let report = check_preservation(&t, &sig(), &eq, &CheckOptions::exhaustive(2)).unwrap();
        prop_assert_ne!(report.verdict, Verdict::Violated, "{} broke {}", t.name(), eq);
    }

    #[test]
    fn relevant_monads_keep_equations_without_drops(eq in equation(), which in 0usize..4) {
        prop_assume!(!classify(&eq).drop);
        let t = pick(&["maybe", "reader:2", "writer:semilattice", "multiset:trivial"], which);
        let report = check_preservation(&t, &sig(), &eq, &CheckOptions::exhaustive(2)).unwrap();
        prop_assert_ne!(report.verdict, Verdict::Violated, "{} broke {}", t.name(), eq);
    }

    #[test]
    fn dist_trials_replay(eq in equation(), seed in 0u64..1000) {
        let t = Monad::distribution();
        let opts = CheckOptions::randomized(2, 20, seed);
        let report = check_preservation(&t, &sig(), &eq, &opts).unwrap();
        prop_assert_ne!(report.verdict, Verdict::PreservedUpToBound);
        if let Some(w) = &report.witness {
            prop_assert!(verify_witness(&t, &eq, &w.algebra, &w.assignment).unwrap().violated);
        }
    }
}

#[test]
fn parallel_and_serial_reports_match() {
    let cases = [
        (
            "multiset:f2",
            "m(x,m(y,y)) = m(y,x)",
            CheckOptions::exhaustive(3),
        ),
        ("powerset", "m(x,y) = m(y,x)", CheckOptions::exhaustive(3)),
        ("dist", "m(x,x) = x", CheckOptions::randomized(3, 50, 9)),
        (
            "maybe",
            "m(m(x,y),z) = m(x,m(y,z))",
            CheckOptions::exhaustive(2),
        ),
    ];
    for (sel, src, opts) in cases {
        let t = Monad::from_selector(sel).unwrap();
        let eq = monadpreserve::terms::parse_equation(src, &sig()).unwrap();
        par::set_parallel(true);
        let a =
            serde_json::to_string(&check_preservation(&t, &sig(), &eq, &opts).unwrap()).unwrap();
        par::set_parallel(false);
        let b =
            serde_json::to_string(&check_preservation(&t, &sig(), &eq, &opts).unwrap()).unwrap();
        par::set_parallel(true);
        assert_eq!(a, b, "{sel} {src}");
    }
}
