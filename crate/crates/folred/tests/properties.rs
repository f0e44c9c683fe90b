//! Randomized structural invariants of the exact arithmetic layers.

use folred::germ::{linear_classify, FoliationGerm};
use folred::jet1::Jet1;
use folred::jet2::Jet2;
use folred::scalar::ExactScalar;
use proptest::prelude::*;

const N: usize = 8;

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| {
        ExactScalar::from_ratio(n, d).add_ref(&ExactScalar::i().mul_ref(&ExactScalar::from_int(im)))
    })
}

fn jet1_tangent() -> impl Strategy<Value = Jet1> {
    // z + c2 z^2 + ... through order N
    proptest::collection::vec(scalar(), N - 1).prop_map(|cs| {
        let mut f = Jet1::var(N);
        for (k, c) in cs.into_iter().enumerate() {
            f.set_coeff(k + 2, c);
        }
        f
    })
}

fn jet2_poly() -> impl Strategy<Value = Jet2> {
    proptest::collection::vec(((0usize..4, 0usize..4), scalar()), 0..6).prop_map(|terms| {
        let mut f = Jet2::zero(N);
        for ((i, j), c) in terms {
            if !c.is_zero() {
                f = f.add(&Jet2::monomial(c, i, j, N));
            }
        }
        f
    })
}

fn jet2_positive_valuation() -> impl Strategy<Value = Jet2> {
    jet2_poly().prop_map(|f| f.mul(&Jet2::var_x(N)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        let lhs = a.add_ref(&b).mul_ref(&c);
        let rhs = a.mul_ref(&c).add_ref(&b.mul_ref(&c));
        prop_assert_eq!(lhs, rhs);
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv()).is_one());
        }
    }

    #[test]
    fn jet1_reversion_inverts_composition(f in jet1_tangent()) {
        let g = f.reversion().unwrap();
        let id = f.compose(&g).unwrap();
        prop_assert!(id.sub(&Jet1::var(N)).is_zero());
    }

    #[test]
    fn jet2_substitution_is_a_ring_map(
        f in jet2_poly(),
        g in jet2_poly(),
        sx in jet2_positive_valuation(),
        sy in jet2_positive_valuation(),
    ) {
        let sum = f.add(&g).substitute(&sx, &sy).unwrap().truncate(N);
        let parts = f.substitute(&sx, &sy).unwrap()
            .add(&g.substitute(&sx, &sy).unwrap())
            .truncate(N);
        prop_assert_eq!(sum.clone(), parts);
        let prod = f.mul(&g).substitute(&sx, &sy).unwrap().truncate(N);
        let factors = f.substitute(&sx, &sy).unwrap()
            .mul(&g.substitute(&sx, &sy).unwrap())
            .truncate(N);
        prop_assert_eq!(prod, factors);
    }

    #[test]
    fn wedge_is_antisymmetric(a1 in jet2_poly(), b1 in jet2_poly(),
                              a2 in jet2_poly(), b2 in jet2_poly()) {
        let mk = |a: Jet2, b: Jet2| {
            let a = a.mul(&Jet2::var_y(N));
            let b = b.mul(&Jet2::var_x(N)).add(&Jet2::one(N));
            FoliationGerm::new(a, b)
        };
        let (Ok(f), Ok(g)) = (mk(a1, b1), mk(a2, b2)) else {
            return Ok(());
        };
        let w = f.wedge(&g);
        prop_assert_eq!(w.clone(), g.wedge(&f).neg());
    }

    #[test]
    fn classification_is_a_linear_invariant(
        lam_n in -5i64..=-1, lam_d in 1i64..=4,
        a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3,
    ) {
        prop_assume!(a * d - b * c != 0);
        let lam = ExactScalar::from_ratio(lam_n, lam_d);
        let f = FoliationGerm::new(
            Jet2::var_y(N).scale(&lam.neg_ref()),
            Jet2::var_x(N),
        ).unwrap();
        let s = ExactScalar::from_int;
        let m = [[s(a), s(b)], [s(c), s(d)]];
        let g = f.linear_change(&m).unwrap();
        let cf = linear_classify(&f).unwrap();
        let cg = linear_classify(&g).unwrap();
        prop_assert_eq!(cf.tag, cg.tag);
        prop_assert_eq!(cf.lambda, cg.lambda);
    }
}
