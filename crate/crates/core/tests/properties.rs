use fermat_cycles::characters::{
    hodge_number, units, zero_free_characters, Character, FermatContext,
};
use fermat_cycles::cyclotomic::{
    galois_apply, is_rational, on_unit_circle, CycloNum, GaloisElement,
};
use fermat_cycles::fake_cycles::unit_coefficient;
use fermat_cycles::polyring::{
    jacobian_decompose, jacobian_dimension, jacobian_monomials, jacobian_recompose, monomials,
    reduce_mod_jacobian, DecomposeStrategy, Poly,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn eval(z: &CycloNum) -> (f64, f64) {
    let m = z.conductor() as f64;
    z.coeffs()
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(re, im), (k, q)| {
            let q = q.numer().to_string().parse::<f64>().unwrap()
                / q.denom().to_string().parse::<f64>().unwrap();
            let a = 2.0 * std::f64::consts::PI * k as f64 / m;
            (re + q * a.cos(), im + q * a.sin())
        })
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 4, 6, 8, 12])
}

fn cyclo(m: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-20i64..=20, 1i64..=6), m as usize).prop_map(move |v| {
        let raw: Vec<BigRational> = v
            .into_iter()
            .map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
            .collect();
        CycloNum::canonicalize(m, &raw).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    conductor().prop_flat_map(|m| (cyclo(m), cyclo(m), cyclo(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_equality_matches_complex_values((a, b, _) in triple()) {
        let (x, y) = eval(&a);
        let (u, v) = a.approx();
        prop_assert!((x - u).abs() < 1e-9 && (y - v).abs() < 1e-9);
        let again = CycloNum::canonicalize(a.conductor(), a.coeffs()).unwrap();
        prop_assert_eq!(&again, &a);
        let (p, q) = eval(&b);
        prop_assert_eq!(a == b, (x - p).abs() < 1e-9 && (y - q).abs() < 1e-9);
    }

    #[test]
    fn galois_composition((a, b, _) in triple(), s in 0usize..8, t in 0usize..8) {
        let m = a.conductor();
        let us = GaloisElement::all(m);
        let (gs, gt) = (&us[s % us.len()], &us[t % us.len()]);
        let st = gs.compose(gt).unwrap();
        prop_assert_eq!(st.t() as u64, (gs.t() as u64 * gt.t() as u64) % m as u64);
        let lhs = galois_apply(gs, &galois_apply(gt, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, galois_apply(&st, &a).unwrap());
        // σ is a ring homomorphism
        prop_assert_eq!(galois_apply(gs, &(&a * &b)).unwrap(),
            &galois_apply(gs, &a).unwrap() * &galois_apply(gs, &b).unwrap());
        prop_assert_eq!(galois_apply(&gs.inverse(), &galois_apply(gs, &a).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(galois_apply(&GaloisElement::identity(m), &a).unwrap(), a);
    }

    #[test]
    fn unit_circle_norm_is_one(d in prop::sample::select(vec![3u32, 4, 6]), a in 1i64..6, b in 1i64..6, k in 0i64..12) {
        let z = unit_coefficient(d, a, b, k).unwrap();
        prop_assert!(on_unit_circle(&z));
        prop_assert_eq!(is_rational(&(&z * &z.conj())), Some(BigRational::one()));
    }

    #[test]
    fn poly_serde_and_display_roundtrip(
        terms in prop::collection::vec((prop::collection::vec(0u32..4, 4), -9i64..=9, 1i64..=4), 0..6)
    ) {
        let p = Poly::from_terms(4, terms.into_iter().map(|(e, a, b)| {
            (e, CycloNum::from_rational(12, BigRational::new(a.into(), b.into())))
        }));
        // The empty term list carries no variable count.
        prop_assume!(!p.is_zero());
        let json = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(Poly::parse(&p.to_string(), 4, 12).unwrap(), p);
    }

    #[test]
    fn cyclo_serde_roundtrip((a, _, _) in triple()) {
        let back: CycloNum = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn jacobian_decomposition_reconstructs(
        coeffs in prop::collection::vec(-5i64..=5, 1..8), seed in 0usize..1000, pick in 0usize..2,
    ) {
        let ctx = FermatContext::new(4, 4).unwrap();
        let deg = ctx.d - 1 + 2;
        let mons = monomials(ctx.vars(), deg);
        // Keep only monomials inside J^F.
        let inside: Vec<_> = mons.into_iter().filter(|e| e.iter().any(|&x| x >= ctx.d - 1)).collect();
        let w = Poly::from_terms(ctx.vars(), coeffs.iter().enumerate().map(|(k, &c)| {
            (inside[(seed + 37 * k) % inside.len()].clone(), CycloNum::from_int(8, c))
        }));
        let strategy = [DecomposeStrategy::SmallestIndex, DecomposeStrategy::Paired { pair: 1 }][pick];
        let q = jacobian_decompose(&w, &ctx, strategy).unwrap();
        prop_assert_eq!(jacobian_recompose(&q, &ctx), w.clone());
        prop_assert!(reduce_mod_jacobian(&w, &ctx).is_zero());
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn hodge_numbers_sum_and_symmetry() {
    for (n, d) in [(2u32, 3u32), (2, 4), (2, 5), (4, 3), (4, 4), (2, 6), (6, 3)] {
        let ctx = FermatContext::new(n, d).unwrap();
        let total: u64 = (0..=n).map(|q| hodge_number(&ctx, n - q, q).unwrap()).sum();
        let (dm1, k) = (d as i64 - 1, n as i32 + 2);
        let closed = (dm1.pow(k as u32) + if k % 2 == 0 { dm1 } else { -dm1 }) / d as i64;
        assert_eq!(total as i64, closed, "({n},{d})");
        assert_eq!(zero_free_characters(&ctx).count() as u64, total);
        for p in 0..=n {
            assert_eq!(
                hodge_number(&ctx, p, n - p).unwrap(),
                hodge_number(&ctx, n - p, p).unwrap()
            );
        }
    }
}

#[test]
fn hodge_set_is_stable() {
    for (n, d) in [(2u32, 5u32), (4, 3), (2, 6), (2, 7)] {
        let ctx = FermatContext::new(n, d).unwrap();
        let hodge: Vec<Character> = zero_free_characters(&ctx)
            .filter(Character::is_hodge)
            .collect();
        for a in &hodge {
            for t in units(d) {
                assert!(a.scale(t).is_hodge());
            }
            let mut rev: Vec<i64> = a.entries().iter().map(|&x| x as i64).collect();
            rev.rotate_left(1);
            rev.swap(0, 1);
            assert!(Character::new(d, &rev).unwrap().is_hodge());
        }
    }
}

#[test]
fn jacobian_dimensions_match_generating_function() {
    for (n, d) in [(6u32, 3u32), (4, 4), (2, 6)] {
        let ctx = FermatContext::new(n, d).unwrap();
        let k = ctx.vars() as i64;
        for e in 0..=ctx.socle() + 1 {
            // coefficient of x^e in ((1 - x^{d-1}) / (1 - x))^k
            let gf: i64 = (0..=k)
                .map(|j| {
                    let rest = e as i64 - j * (d as i64 - 1);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    if rest < 0 {
                        0
                    } else {
                        sign * binomial(k, j) * binomial(rest + k - 1, k - 1)
                    }
                })
                .sum();
            assert_eq!(jacobian_dimension(&ctx, e) as i64, gf);
            assert_eq!(jacobian_monomials(&ctx, e).len() as i64, gf);
        }
    }
}
