//! Property tests for the algebraic invariants of each layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nilrep::basis::{action_polys_all, PolyBasis};
use nilrep::collect::Collector;
use nilrep::matrep::{decompose, recombine};
use nilrep::multpoly::action_polys;
use nilrep::poly::{revlex_compare, Monomial, Polynomial};
use nilrep::{ExponentVector, Family};

type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, n).prop_map(Monomial::new)
}

fn polynomial(n: usize) -> impl Strategy<Value = Polynomial<Q>> {
    prop::collection::vec((monomial(n), -5i64..=5, 1i64..=3), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms.into_iter().map(|(m, a, b)| (m, Q::new(a.into(), b.into()))),
        )
        .unwrap()
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-4i64..=4, n).prop_map(|v| v.into_iter().map(q).collect())
}

fn exponents(n: usize) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(-5i64..=5, n).prop_map(|v| ExponentVector::from_i64s(&v))
}

proptest! {
    #[test]
    fn revlex_is_a_monomial_order(a in monomial(3), b in monomial(3), c in monomial(3)) {
        let ab = revlex_compare(&a, &b).unwrap();
        prop_assert_eq!(revlex_compare(&b, &a).unwrap(), ab.reverse());
        if ab.is_le() && revlex_compare(&b, &c).unwrap().is_le() {
            prop_assert!(revlex_compare(&a, &c).unwrap().is_le());
        }
        prop_assert_eq!(revlex_compare(&a.mul(&c), &b.mul(&c)).unwrap(), ab);
        prop_assert!(revlex_compare(&Monomial::one(3), &a).unwrap().is_le());
    }

    #[test]
    fn ring_operations_commute_with_evaluation(
        f in polynomial(3), g in polynomial(3), h in polynomial(3), p in point(3)
    ) {
        let (fv, gv) = (f.eval(&p).unwrap(), g.eval(&p).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().eval(&p).unwrap(), &fv + &gv);
        prop_assert_eq!(f.sub(&g).unwrap().eval(&p).unwrap(), &fv - &gv);
        prop_assert_eq!(f.mul(&g).unwrap().eval(&p).unwrap(), &fv * &gv);
        prop_assert_eq!(f.pow(3).eval(&p).unwrap(), &fv * &fv * &fv);
        let left = f.mul(&g.add(&h).unwrap()).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        f in polynomial(3), args in prop::collection::vec(polynomial(2), 3), p in point(2)
    ) {
        let inner: Vec<Q> = args.iter().map(|a| a.eval(&p).unwrap()).collect();
        prop_assert_eq!(f.substitute(&args).unwrap().eval(&p).unwrap(), f.eval(&inner).unwrap());
    }

    #[test]
    fn render_parse_round_trip(f in polynomial(3)) {
        prop_assert_eq!(nilrep::poly::parse_polynomial(&f.render(), 3).unwrap(), f);
    }

    #[test]
    fn leading_monomial_is_maximal(f in polynomial(3)) {
        if let Ok(lm) = f.leading_monomial() {
            for (m, _) in f.terms() {
                prop_assert!(m <= lm);
            }
        }
    }

    #[test]
    fn insert_preserves_span_and_echelon_form(
        fs in prop::collection::vec(polynomial(3), 1..6),
        coeffs in prop::collection::vec(-3i64..=3, 6)
    ) {
        let mut basis = PolyBasis::new(3);
        for f in &fs {
            let before = basis.len();
            let r = basis.insert(f).unwrap();
            prop_assert_eq!(basis.len(), before + usize::from(!r.is_zero()));
            basis.check_invariants().unwrap();
        }
        let mut combo = Polynomial::zero(3);
        for (f, c) in fs.iter().zip(&coeffs) {
            combo = combo.add(&f.scale(&q(*c))).unwrap();
        }
        prop_assert!(basis.contains(&combo).unwrap());
        for f in &fs {
            prop_assert!(basis.insert(f).unwrap().is_zero());
        }
        let c = decompose(&basis, &combo).unwrap();
        prop_assert_eq!(recombine(&basis, &c).unwrap(), combo);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collection_is_associative(u in exponents(6), v in exponents(6), w in exponents(6)) {
        let pres = Family::Unitriangular(4).presentation().unwrap();
        let col = Collector::<BigInt>::new(&pres);
        let left = col.multiply(&col.multiply(&u, &v).unwrap(), &w).unwrap();
        let right = col.multiply(&u, &col.multiply(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = col.invert(&u).unwrap();
        prop_assert!(col.multiply(&u, &inv).unwrap().is_identity());
    }

    #[test]
    fn machine_and_big_exponents_agree(u in exponents(10), v in exponents(10)) {
        let pres = Family::Unitriangular(5).presentation().unwrap();
        let big = Collector::<BigInt>::new(&pres);
        let small = Collector::<i64>::new(&pres);
        let su = ExponentVector(u.0.iter().map(|x| i64::try_from(x).unwrap()).collect());
        let sv = ExponentVector(v.0.iter().map(|x| i64::try_from(x).unwrap()).collect());
        let s = small.multiply(&su, &sv).unwrap();
        let b = big.multiply(&u, &v).unwrap();
        prop_assert_eq!(s.0.into_iter().map(BigInt::from).collect::<Vec<_>>(), b.0);
    }
}

#[test]
fn powers_compose() {
    for family in [Family::Heisenberg, Family::FreeNilpotentClass2(3), Family::Unitriangular(4)] {
        let pres = family.presentation().unwrap();
        let n = pres.len();
        for ap in action_polys_all(&pres).unwrap() {
            let mut prev = ap.clone();
            for k in 1..=3u64 {
                let direct = ap.pow(k).unwrap();
                assert_eq!(direct, prev, "{family} j={} k={k}", ap.j);
                direct.check_structure().unwrap();
                let shift = direct.polys[ap.j].sub(&Polynomial::var(n, ap.j)).unwrap();
                assert_eq!(shift, Polynomial::constant(n, q(-(k as i64))));
                prev = prev.compose(&ap).unwrap();
            }
        }
    }
    let h = Family::Heisenberg.presentation().unwrap();
    assert!(action_polys(&h, 3).is_err());
}
