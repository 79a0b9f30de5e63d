use cdlab::element::oracle_blade_mul;
use cdlab::expr::{eval_str, format};
use cdlab::{element_mul, Algebra, Blade, Element, Mask, Rational, RationalElement, Signature};
use num_bigint::BigInt;
use proptest::prelude::*;

fn signature(q: usize, p: usize) -> Signature {
    Signature::split(q, p).unwrap()
}

fn sig_strategy(max: usize) -> impl Strategy<Value = Signature> {
    (1..=max).prop_flat_map(|n| (0..=n).prop_map(move |p| signature(n - p, p)))
}

fn element_strategy(sig: Signature, pure: bool) -> impl Strategy<Value = RationalElement> {
    let dim = sig.dim() as Mask;
    let lo = if pure { 1 } else { 0 };
    prop::collection::vec((lo..dim, -4i64..=4, 1i64..=3), 1..6).prop_map(|terms| {
        Element::from_terms(terms.into_iter().map(|(m, n, d)| (m, Rational::new(BigInt::from(n), BigInt::from(d)))))
    })
}

fn mul(sig: &Signature, a: &RationalElement, b: &RationalElement) -> RationalElement {
    element_mul(sig, a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn format_parses_back((sig, x) in sig_strategy(6).prop_flat_map(|s| (Just(s.clone()), element_strategy(s, false)))) {
        let text = format(&x, &sig);
        prop_assert_eq!(eval_str(&text, &sig).unwrap(), x, "{}", text);
    }

    #[test]
    fn sign_function_matches_oracle(n in 1usize..=12, p_frac in 0usize..=12, x in any::<u32>(), y in any::<u32>()) {
        let p = p_frac % (n + 1);
        let alg = Algebra::split(n - p, p).unwrap();
        let mask = (1u32 << n) - 1;
        let (x, y) = (x & mask, y & mask);
        let fast = alg.blade_mul(Blade::positive(x), Blade::positive(y)).unwrap();
        prop_assert_eq!(fast, oracle_blade_mul(alg.signature(), x, y).unwrap());
    }

    #[test]
    fn distinct_pure_blades_anticommute(n in 2usize..=8, p_frac in 0usize..=8, x in 1u32..256, y in 1u32..256) {
        let p = p_frac % (n + 1);
        let alg = Algebra::split(n - p, p).unwrap();
        let mask = (1u32 << n) - 1;
        let (x, y) = (x & mask, y & mask);
        prop_assume!(x != 0 && y != 0 && x != y);
        let xy = alg.blade_mul(Blade::positive(x), Blade::positive(y)).unwrap();
        let yx = alg.blade_mul(Blade::positive(y), Blade::positive(x)).unwrap();
        prop_assert_eq!(xy, -yx);
    }

    #[test]
    fn power_associative((sig, x) in (4usize..=5).prop_flat_map(|n| {
        let s = signature(n, 0);
        (Just(s.clone()), element_strategy(s, false))
    })) {
        let xx = mul(&sig, &x, &x);
        prop_assert_eq!(mul(&sig, &xx, &x), mul(&sig, &x, &xx));
    }

    #[test]
    fn flexible((sig, x, y) in (3usize..=5).prop_flat_map(|n| {
        let s = signature(n, 0);
        (Just(s.clone()), element_strategy(s.clone(), false), element_strategy(s, false))
    })) {
        let left = mul(&sig, &mul(&sig, &x, &y), &x);
        let right = mul(&sig, &x, &mul(&sig, &y, &x));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn octonions_are_alternative(
        x in element_strategy(signature(3, 0), false),
        y in element_strategy(signature(3, 0), false),
    ) {
        let sig = signature(3, 0);
        prop_assert_eq!(mul(&sig, &mul(&sig, &x, &x), &y), mul(&sig, &x, &mul(&sig, &x, &y)));
        prop_assert_eq!(mul(&sig, &mul(&sig, &y, &x), &x), mul(&sig, &y, &mul(&sig, &x, &x)));
    }

    #[test]
    fn pure_squares_are_scalar((sig, x) in sig_strategy(5).prop_flat_map(|s| (Just(s.clone()), element_strategy(s, true)))) {
        let sq = mul(&sig, &x, &x);
        prop_assert!(sq.terms().all(|(m, _)| m == 0), "{}", format(&sq, &sig));
    }

    #[test]
    fn fast_product_matches_oracle((sig, x, y) in sig_strategy(7).prop_flat_map(|s| {
        (Just(s.clone()), element_strategy(s.clone(), false), element_strategy(s, false))
    })) {
        let alg = Algebra::new(sig.clone());
        prop_assert_eq!(x.mul_fast(&alg, &y), mul(&sig, &x, &y));
    }
}

#[test]
fn random_blade_pairs_up_to_twelve_generators() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let algebras: Vec<Algebra> = (9..=12).flat_map(|n| [Algebra::split(n, 0).unwrap(), Algebra::split(n / 2, n - n / 2).unwrap()]).collect();
    for i in 0..100_000 {
        let alg = &algebras[i % algebras.len()];
        let dim = alg.signature().dim() as Mask;
        let (x, y) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        let fast = alg.blade_mul(Blade::positive(x), Blade::positive(y)).unwrap();
        assert_eq!(fast, oracle_blade_mul(alg.signature(), x, y).unwrap(), "{} {x} {y}", alg.signature());
    }
}

#[test]
fn pure_trace_by_oracle() {
    for n in 1..=8 {
        for p in 0..=n {
            let sig = signature(n - p, p);
            let trace: i64 = (1..sig.dim() as Mask).map(|m| oracle_blade_mul(&sig, m, m).unwrap().sign() as i64).sum();
            let want = if p == 0 { -(sig.pure_count() as i64) } else { 1 };
            assert_eq!(trace, want, "{sig}");
            assert_eq!(Algebra::new(sig).pure_trace(), want);
        }
    }
}
