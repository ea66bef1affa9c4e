use proptest::prelude::*;

use reptile_forge::algebra::{factor, int, rat, AlgebraicReal, IntPolynomial, Rational};
use reptile_forge::fiedler::{realizability_check, CosMatrix};
use reptile_forge::hill::{subdivide, verify_reptile, HillSpec};
use reptile_forge::simplex::{similar, Simplex};
use reptile_forge::trig::{cosine_of, match_rational_angle, RationalAngle};

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    proptest::collection::vec(-5i64..=5, 1..=4).prop_map(|c| IntPolynomial::from_i64(&c))
}

fn surd() -> impl Strategy<Value = AlgebraicReal> {
    (-6i64..=6, 1i64..=4, 0i64..=4, 2i64..=7).prop_map(|(p, q, k, r)| {
        AlgebraicReal::sqrt_rational(&int(r)).unwrap().mul_rational(&int(k)).add_rational(&rat(p, q))
    })
}

fn tetrahedron() -> impl Strategy<Value = Simplex> {
    proptest::collection::vec(proptest::collection::vec(-5i64..=5, 3), 4)
        .prop_filter_map("degenerate", |v| Simplex::new(v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).ok())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn factors_multiply_back(a in small_poly(), b in small_poly()) {
        let p = &a * &b;
        prop_assume!(!p.is_zero());
        let mut prod = IntPolynomial::from_i64(&[1]);
        for (f, k) in factor(&p).unwrap() {
            for _ in 0..k {
                prod = &prod * &f;
            }
        }
        prop_assert_eq!(prod.primitive_part().deg(), p.deg());
        prop_assert!(p.primitive_part().div_exact(&prod.primitive_part()).is_some());
    }

    #[test]
    fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assume!(!c.is_zero() && !(&a * &c).is_zero() && !(&b * &c).is_zero());
        let g = (&a * &c).gcd(&(&b * &c));
        prop_assert!((&a * &c).div_exact(&g).is_some());
        prop_assert!((&b * &c).div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.primitive_part()).is_some());
    }

    #[test]
    fn surd_arithmetic_tracks_floats(a in surd(), b in surd()) {
        let tol = 1e-9 * (1.0 + a.to_f64().abs() + b.to_f64().abs()).powi(2);
        prop_assert!((a.add(&b).unwrap().to_f64() - (a.to_f64() + b.to_f64())).abs() < tol);
        prop_assert!((a.mul(&b).unwrap().to_f64() - a.to_f64() * b.to_f64()).abs() < tol);
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).unwrap().div(&b).unwrap(), a);
        }
    }

    #[test]
    fn rational_cosines_are_recognised(p in 1i64..=40, q in 1i64..=20) {
        let angle = RationalAngle::new(p, q).unwrap();
        let c = cosine_of(&angle);
        prop_assume!(c.degree() <= 4);
        let found = match_rational_angle(&c).unwrap().expect("catalogued cosine");
        prop_assert_eq!(cosine_of(&found), c);
        prop_assert!(found.is_canonical());
    }

    #[test]
    fn cos_matrix_round_trips(s in tetrahedron()) {
        let m = CosMatrix::from_dihedral(&s.dihedral_data().unwrap()).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: CosMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_f64(), m.to_f64());
        prop_assert!(realizability_check(&back).unwrap().valid);
    }

    #[test]
    fn hill_pieces_tile_their_parent(d in 2usize..=3, p in -2i64..=8, m in 2u32..=3) {
        let spec = HillSpec::with_cos(d, rat(p, 10)).unwrap();
        let sub = subdivide(&spec, m).unwrap();
        let total: Rational = sub.pieces.iter().map(|s| s.coordinate_volume().unwrap()).sum();
        prop_assert_eq!(total, sub.parent.coordinate_volume().unwrap());
        for piece in &sub.pieces {
            prop_assert!(similar(&sub.parent, piece).unwrap().is_some());
        }
        prop_assert!(verify_reptile(&sub).unwrap().all_ok());
    }
}
