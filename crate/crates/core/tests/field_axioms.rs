use proptest::prelude::*;
use skew_pentagram::field::{
    rational, reduce_triple, Field, FieldElem, Fp, GaussianRational, GfContext, QuadExt, Ring,
    UniPoly,
};

fn small_q() -> impl Strategy<Value = FieldElem> {
    (-50i64..50, 1i64..30).prop_map(|(n, d)| FieldElem::from(rational(n, d)))
}

fn small_qi() -> impl Strategy<Value = FieldElem> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
        FieldElem::from(GaussianRational::new(rational(a, b), rational(c, d)))
    })
}

fn prime_elem(p: u64) -> impl Strategy<Value = FieldElem> {
    (0..p).prop_map(move |x| FieldElem::from(Fp::from_u64(x, p)))
}

// 3 is a non-residue mod 7, so F_7[ω]/(ω² − 3) is F_49.
fn quad_elem() -> impl Strategy<Value = FieldElem> {
    (0u64..7, 0u64..7)
        .prop_map(|(a, b)| FieldElem::from(QuadExt::new(Fp::from_u64(a, 7), Fp::from_u64(b, 7), 3)))
}

fn check_axioms<F: Field>(a: F, b: F, c: F) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        (a.clone() + b.clone()) + c.clone(),
        a.clone() + (b.clone() + c.clone())
    );
    prop_assert_eq!(
        (a.clone() * b.clone()) * c.clone(),
        a.clone() * (b.clone() * c.clone())
    );
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    prop_assert_eq!(a.clone() - a.clone(), a.zero_like());
    prop_assert_eq!(a.clone() + (-a.clone()), a.zero_like());
    prop_assert_eq!(a.clone() * a.one_like(), a.clone());
    match a.inv() {
        Some(ai) => {
            prop_assert!(!a.is_zero());
            prop_assert!((a.clone() * ai).is_one());
        }
        None => prop_assert!(a.is_zero()),
    }
    Ok(())
}

proptest! {
    #[test]
    fn rationals(a in small_q(), b in small_q(), c in small_q()) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn gaussian_rationals(a in small_qi(), b in small_qi(), c in small_qi()) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn prime_field(a in prime_elem(10009), b in prime_elem(10009), c in prime_elem(10009)) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn small_prime_field(a in prime_elem(7), b in prime_elem(7), c in prime_elem(7)) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn quadratic_extension(a in quad_elem(), b in quad_elem(), c in quad_elem()) {
        check_axioms(a, b, c)?;
    }

    #[test]
    fn cubic_extension(i in 0u64..125, j in 0u64..125, k in 0u64..125) {
        let ctx = GfContext::new(5, 3).unwrap();
        check_axioms(ctx.element(i), ctx.element(j), ctx.element(k))?;
    }

    #[test]
    fn fermat_in_prime_field(x in 1u64..10009) {
        let a = Fp::from_u64(x, 10009);
        prop_assert!(a.pow(10008).is_one());
    }

    #[test]
    fn mixed_variants_are_rejected(a in small_q(), b in prime_elem(97)) {
        prop_assert!(a.checked_add(&b).is_err());
        prop_assert!(b.checked_mul(&a).is_err());
    }

    #[test]
    fn reduction_is_idempotent(
        g in prop::collection::vec(0u64..97, 1..4),
        polys in prop::collection::vec(prop::collection::vec(0u64..97, 1..6), 3),
    ) {
        let p = 97;
        let lift = |v: &[u64]| UniPoly::new(v.iter().map(|&x| Fp::from_u64(x, p)).collect());
        let g = lift(&g);
        prop_assume!(!g.is_zero());
        let [x, y, z]: [UniPoly<Fp>; 3] = std::array::from_fn(|k| lift(&polys[k]) * g.clone());
        prop_assume!(!(x.is_zero() && y.is_zero() && z.is_zero()));
        let once = reduce_triple(x, y, z).unwrap();
        prop_assert!(once.removed_degree >= g.degree().unwrap());
        let [x, y, z] = once.polys.clone();
        let twice = reduce_triple(x, y, z).unwrap();
        prop_assert_eq!(twice.removed_degree, 0);
        prop_assert_eq!(twice.polys, once.polys);
    }
}
