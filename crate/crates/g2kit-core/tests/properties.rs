//! Property suite for the algebra axioms and the automorphism contracts.
//! Exact-backend properties hold with equality, not tolerance.

use g2kit_core::field::Field;
use g2kit_core::{AlgebraContext, Octonion, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn octonion() -> impl Strategy<Value = Octonion<Rational>> {
    proptest::array::uniform8(rational()).prop_map(Octonion::from_coords)
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        let ctx = AlgebraContext::compact();
        let xy = ctx.mul(&x, &y);
        prop_assert_eq!(ctx.norm(&xy), ctx.norm(&x) * ctx.norm(&y));
    }

    #[test]
    fn left_alternative(x in octonion(), y in octonion()) {
        let ctx = AlgebraContext::compact();
        let lhs = ctx.mul(&x, &ctx.mul(&x, &y));
        let rhs = ctx.mul(&ctx.mul(&x, &x), &y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_alternative(x in octonion(), y in octonion()) {
        let ctx = AlgebraContext::compact();
        let lhs = ctx.mul(&ctx.mul(&y, &x), &x);
        let rhs = ctx.mul(&y, &ctx.mul(&x, &x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn moufang_identity(x in octonion(), y in octonion(), z in octonion()) {
        let ctx = AlgebraContext::compact();
        let lhs = ctx.mul(&ctx.mul(&x, &y), &ctx.mul(&z, &x));
        let rhs = ctx.mul(&x, &ctx.mul(&ctx.mul(&y, &z), &x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_anti_automorphism(x in octonion(), y in octonion()) {
        let ctx = AlgebraContext::compact();
        let lhs = ctx.mul(&x, &y).conjugate();
        let rhs = ctx.mul(&y.conjugate(), &x.conjugate());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_really_inverts(x in octonion()) {
        let ctx = AlgebraContext::compact();
        prop_assume!(!ctx.norm(&x).is_zero());
        let inv = ctx.inverse(&x).unwrap();
        prop_assert_eq!(ctx.mul(&x, &inv), Octonion::one());
        prop_assert_eq!(ctx.mul(&inv, &x), Octonion::one());
    }

    #[test]
    fn rank_plus_nullity_is_cols(entries in proptest::collection::vec(rational(), 20)) {
        use g2kit_core::Matrix;
        let m = Matrix::from_fn(4, 5, |r, c| entries[r * 5 + c].clone());
        let rank = m.rank(1e-8);
        let nullity = m.nullspace(1e-8).len();
        prop_assert_eq!(rank + nullity, 5);
    }
}

mod automorphism_contracts {
    use g2kit_core::derivation::{sample_automorphism, DerivationAlgebra};
    use g2kit_core::rng::XorShift64Star;
    use g2kit_core::{AlgebraContext, Octonion};

    #[test]
    fn sampled_automorphisms_preserve_the_bilinear_form() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        let mut rng = XorShift64Star::new(99);
        for seed in 0..8 {
            let t = sample_automorphism(&ctx, &der, seed).unwrap();
            for _ in 0..5 {
                let x = Octonion::from_coords(core::array::from_fn(|_| rng.symmetric()));
                let y = Octonion::from_coords(core::array::from_fn(|_| rng.symmetric()));
                let lhs = ctx.bilinear(&t.apply(&x), &t.apply(&y));
                let rhs = ctx.bilinear(&x, &y);
                assert!((lhs - rhs).abs() < 1e-9, "form must be preserved");
            }
        }
    }

    #[test]
    fn sampled_automorphisms_fix_one_and_the_trace_zero_space() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        for seed in 0..8 {
            let t = sample_automorphism(&ctx, &der, seed).unwrap();
            assert!(t.apply(&Octonion::one()).approx_eq(&Octonion::one(), 1e-9));
            let x = Octonion::basis(3);
            assert!(t.apply(&x).coord(0).abs() < 1e-9);
        }
    }

    /// The restriction of any element to the trace-zero space lies in an
    /// odd special orthogonal group, so it has a fixed vector there and
    /// the fixed subalgebra has dimension at least 2.
    #[test]
    fn fixed_subalgebra_dimension_is_at_least_two() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        for seed in 0..12 {
            let t = sample_automorphism(&ctx, &der, seed).unwrap();
            assert!(t.fixed_subalgebra(&ctx).dim() >= 2);
        }
    }

    #[test]
    fn commutant_dimension_is_conjugation_invariant() {
        let ctx: AlgebraContext<f64> = AlgebraContext::compact();
        let der = DerivationAlgebra::new(&ctx);
        for seed in 0..4 {
            let t = sample_automorphism(&ctx, &der, seed).unwrap();
            let g = sample_automorphism(&ctx, &der, seed + 100).unwrap();
            let conj = g.compose(&t).compose(&g.inverse());
            assert_eq!(
                der.centralizer_dimension(&t),
                der.centralizer_dimension(&conj)
            );
        }
    }
}
