use num_traits::{One, Zero};
use proptest::prelude::*;

use radpoly::functional::{inner_product_k, tensor_apply_radial};
use radpoly::interp::projector;
use radpoly::io::{from_json, to_json, PolynomialDoc};
use radpoly::rational::{self, int, ratio};
use radpoly::{
    build_graded_basis, Functional, FunctionalSpan, Matrix, Method, MultiIndex, PointFunctional, Polynomial, Rational,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn point(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5).prop_map(int), d)
}

fn poly(d: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, d), small_rational()), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
            .map(|(e, c)| (MultiIndex::new(e), c));
        Polynomial::from_terms(d, terms).unwrap()
    })
}

fn polys3(d: usize) -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (poly(d, 3), poly(d, 3), poly(d, 3))
}

fn point_functional(d: usize) -> impl Strategy<Value = PointFunctional> {
    prop::collection::vec((point(d), (-9i64..=9).prop_map(int)), 1..5).prop_map(move |pairs| {
        let mut points: Vec<Vec<Rational>> = Vec::new();
        let mut weights = Vec::new();
        for (x, w) in pairs {
            if !points.contains(&x) {
                points.push(x);
                weights.push(w);
            }
        }
        PointFunctional::new(d, points, weights).unwrap()
    })
}

fn distinct_points(d: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(point(d), 1..=max).prop_map(|pts| {
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for x in pts {
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((p, q, r) in polys3(2)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(2), p.clone());
        prop_assert!((&p * &Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn degree_is_additive(p in poly(3, 3), q in poly(3, 3)) {
        let pq = &p * &q;
        if p.is_zero() || q.is_zero() {
            prop_assert!(pq.is_zero());
            prop_assert_eq!(pq.degree(), -1);
        } else {
            prop_assert_eq!(pq.degree(), p.degree() + q.degree());
        }
        prop_assert!((&p + &q).degree() <= p.degree().max(q.degree()));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(2, 4), q in poly(2, 4), x in prop::collection::vec(small_rational(), 2)) {
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), p.eval(&x).unwrap() * q.eval(&x).unwrap());
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), p.eval(&x).unwrap() + q.eval(&x).unwrap());
    }

    #[test]
    fn affine_substitution_inverts(p in poly(2, 3), entries in prop::collection::vec(-3i64..=3, 4), b in prop::collection::vec(small_rational(), 2)) {
        let a = Matrix::from_rows(vec![vec![int(entries[0]), int(entries[1])], vec![int(entries[2]), int(entries[3])]]);
        prop_assume!(!a.determinant().unwrap().is_zero());
        let inv = a.inverse().unwrap();
        // q(x) = p(Ax + b), so p(x) = q(A⁻¹(x − b)).
        let q = p.substitute_affine(&a, &b).unwrap();
        let shift: Vec<Rational> = inv.mul_vec(&b).unwrap().into_iter().map(|v| -v).collect();
        prop_assert_eq!(q.substitute_affine(&inv, &shift).unwrap(), p.clone());
        prop_assert_eq!(q.degree(), p.degree());
    }

    #[test]
    fn translation_composes(p in poly(2, 3), y in point(2), z in point(2)) {
        let yz: Vec<Rational> = y.iter().zip(&z).map(|(a, b)| a + b).collect();
        prop_assert_eq!(p.translate(&y).unwrap().translate(&z).unwrap(), p.translate(&yz).unwrap());
    }

    #[test]
    fn apolar_pairing_is_symmetric(p in poly(2, 3), q in poly(2, 3)) {
        prop_assert_eq!(p.apolar_pairing(&q).unwrap(), q.apolar_pairing(&p).unwrap());
        // Monomials are orthogonal with ⟨x^α, x^α⟩ = α!.
        for (alpha, _) in p.terms() {
            let m = Polynomial::monomial(alpha.clone(), Rational::one());
            prop_assert_eq!(m.apolar_pairing(&m).unwrap(), Rational::from_integer(alpha.factorial()));
        }
    }

    #[test]
    fn rationals_round_trip(r in small_rational()) {
        prop_assert_eq!(rational::parse(&rational::format(&r)), Some(r));
    }

    #[test]
    fn polynomial_json_round_trips(p in poly(3, 4)) {
        let text = to_json(&PolynomialDoc::from(&p));
        let back: PolynomialDoc = from_json(&text).unwrap();
        prop_assert_eq!(back.to_polynomial().unwrap(), p);
    }

    #[test]
    fn inner_product_is_symmetric_and_bilinear(
        l in point_functional(2),
        m in point_functional(2),
        n in point_functional(2),
        s in -4i64..=4,
        k in 0u32..=3,
    ) {
        let (l, m, n): (Functional, Functional, Functional) = (l.into(), m.into(), n.into());
        prop_assert_eq!(inner_product_k(&l, &m, k).unwrap(), inner_product_k(&m, &l, k).unwrap());
        let combo = Functional::linear_combination(2, &[int(s), Rational::one()], &[l.clone(), n.clone()]).unwrap();
        let lhs = inner_product_k(&combo, &m, k).unwrap();
        let rhs = int(s) * inner_product_k(&l, &m, k).unwrap() + inner_product_k(&n, &m, k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn point_and_moment_forms_agree(l in point_functional(2), m in point_functional(2), p in poly(2, 3), k in 0u32..=2) {
        let (lf, mf): (Functional, Functional) = (l.into(), m.into());
        let lm: Functional = lf.to_moments(6).unwrap().into();
        let mm: Functional = mf.to_moments(6).unwrap().into();
        prop_assert_eq!(lf.apply(&p).unwrap(), lm.apply(&p).unwrap());
        prop_assert_eq!(tensor_apply_radial(&lf, &mf, k).unwrap(), tensor_apply_radial(&lm, &mm, k).unwrap());
        prop_assert_eq!(lf.radial_image(k).unwrap(), lm.radial_image(k).unwrap());
    }

    #[test]
    fn radial_image_matches_direct_kernel(l in point_functional(2), x in prop::collection::vec(small_rational(), 2), ell in 0u32..=3) {
        let f: Functional = l.into();
        let neg: Vec<Rational> = x.iter().map(|t| -t).collect();
        let kernel = Polynomial::norm_squared(2).translate(&neg).unwrap().pow(ell);
        prop_assert_eq!(f.radial_image(ell).unwrap().eval(&x).unwrap(), f.apply(&kernel).unwrap());
    }

    #[test]
    fn least_part_is_homogeneous_of_order(l in point_functional(2)) {
        let f: Functional = l.into();
        let cap = f.dim() as u32 + 4;
        let order = f.order(cap).unwrap();
        let least = f.least_part(cap).unwrap();
        match order.value() {
            Some(-1) => prop_assert!(least.is_zero()),
            Some(k) => {
                prop_assert!(least.is_homogeneous());
                prop_assert_eq!(least.degree(), k);
                // The least pairs with every monomial of degree κ exactly as λ does.
                for (alpha, c) in least.terms() {
                    let m = Polynomial::monomial(alpha.clone(), Rational::one());
                    prop_assert_eq!(f.apply(&m).unwrap(), c * Rational::from_integer(alpha.factorial()));
                }
            }
            None => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graded_basis_invariants(x in distinct_points(2, 8)) {
        let basis = build_graded_basis(&FunctionalSpan::from_points(x).unwrap(), None).unwrap();
        prop_assert_eq!(basis.invariant_violations(), Vec::<String>::new());
    }

    #[test]
    fn projectors_reproduce_their_range(x in distinct_points(2, 7), p in poly(2, 4)) {
        let basis = build_graded_basis(&FunctionalSpan::from_points(x.clone()).unwrap(), None).unwrap();
        for method in [Method::Schaback, Method::Least] {
            let proj = projector(method, &basis).unwrap();
            for w in proj.range_basis() {
                prop_assert_eq!(&proj.project(w).unwrap(), w);
            }
            let pp = proj.project(&p).unwrap();
            for xi in &x {
                prop_assert_eq!(pp.eval(xi).unwrap(), p.eval(xi).unwrap());
            }
        }
    }
}
