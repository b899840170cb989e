use monadpreserve::finite::{compose, FinFun, Product};
use monadpreserve::monads::{builtins, Monad, Tier};
use proptest::prelude::*;

fn fun(dom: usize, cod: usize) -> impl Strategy<Value = FinFun> {
    proptest::collection::vec(0..cod, dom).prop_map(move |t| FinFun::from_fn(dom, cod, |i| t[i]))
}

fn enumerable() -> Vec<Monad> {
    builtins()
        .into_iter()
        .filter(|m| m.tier() == Tier::Enumerable)
        .collect()
}

proptest! {
    #[test]
    fn product_index_round_trips(sizes in proptest::collection::vec(1usize..5, 0..4), seed in any::<u64>()) {
        let p = Product::new(sizes.clone());
        let total = sizes.iter().product::<usize>();
        prop_assert_eq!(p.size(), total);
        let i = (seed as usize) % total;
        let t = p.tuple(i);
        prop_assert_eq!(t.len(), sizes.len());
        prop_assert!(t.iter().zip(&sizes).all(|(a, n)| a < n));
        prop_assert_eq!(p.index(&t), i);
    }

    #[test]
    fn compose_is_associative(
        (f, g, h) in (1usize..5, 1usize..5, 1usize..5, 1usize..5)
            .prop_flat_map(|(a, b, c, d)| (fun(a, b), fun(b, c), fun(c, d)))
    ) {
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose(&FinFun::identity(f.dom().size()), &f).unwrap(), f.clone());
        prop_assert_eq!(compose(&f, &FinFun::identity(f.cod().size())).unwrap(), f);
    }

    #[test]
    fn carrier_encoding_round_trips(which in 0usize..16, x in 1usize..4, pick in any::<u64>()) {
        let monads = enumerable();
        let t = &monads[which % monads.len()];
        let len = t.carrier_len(x).unwrap();
        let i = (pick as usize) % len;
        let obj = t.decode(x, i);
        t.validate(x, &obj).unwrap();
        prop_assert_eq!(t.encode(x, &obj).unwrap(), i);
        prop_assert_eq!(&t.carrier(x).unwrap()[i], &obj);
    }

    #[test]
    fn fmap_respects_composition(
        which in 0usize..16,
        (f, g) in (1usize..3, 1usize..3, 1usize..3).prop_flat_map(|(a, b, c)| (fun(a, b), fun(b, c))),
        pick in any::<u64>(),
    ) {
        let monads = enumerable();
        let t = &monads[which % monads.len()];
        let x = f.dom().size();
        let all = t.carrier(x).unwrap();
        let obj = &all[(pick as usize) % all.len()];
        let gf = compose(&f, &g).unwrap();
        let two_steps = t.fmap(&g, &t.fmap(&f, obj).unwrap()).unwrap();
        prop_assert_eq!(t.fmap(&gf, obj).unwrap(), two_steps);
    }

    #[test]
    fn sampled_distributions_are_valid(x in 1usize..4, seed in any::<u64>()) {
        use rand::SeedableRng;
        let t = Monad::distribution();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = t.sample(x, &mut rng).unwrap();
        t.validate(x, &d).unwrap();
        let back = t.fmap(&FinFun::terminal(x), &d).unwrap();
        prop_assert_eq!(back, t.unit(1, 0));
    }
}
