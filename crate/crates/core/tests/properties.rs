//! Structural invariants over generated ideals.

use lojax::filtration::FiltrationMap;
use lojax::lojasiewicz::{loja_exponent, loja_oracle};
use lojax::multiplicity::{colength, covolume, samuel_multiplicity};
use lojax::{Integer, IntegerVector, MonomialIdeal, NewtonPolyhedron, Rational, RationalPoint};
use proptest::prelude::*;

/// Finite-colength ideals in `n` variables: a pure power per axis plus a few
/// mixed generators.
fn ideal(n: usize, max_exp: i64) -> impl Strategy<Value = MonomialIdeal> {
    (
        prop::collection::vec(1..=max_exp, n),
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..4),
    )
        .prop_map(move |(powers, extra)| {
            let mut gens: Vec<IntegerVector> = powers
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut e = vec![0; n];
                    e[i] = a;
                    IntegerVector::from_i64(&e)
                })
                .collect();
            gens.extend(
                extra
                    .iter()
                    .filter(|e| e.iter().any(|&c| c > 0))
                    .map(|e| IntegerVector::from_i64(e)),
            );
            MonomialIdeal::new(n, gens).unwrap()
        })
}

fn ideal_2_3() -> impl Strategy<Value = MonomialIdeal> {
    prop_oneof![ideal(2, 8), ideal(3, 6)]
}

fn pair() -> impl Strategy<Value = (MonomialIdeal, MonomialIdeal)> {
    prop_oneof![(ideal(2, 8), ideal(2, 8)), (ideal(3, 6), ideal(3, 6))]
}

fn poly(i: &MonomialIdeal) -> NewtonPolyhedron {
    i.newton_polyhedron().unwrap()
}

fn points(i: &MonomialIdeal) -> Vec<RationalPoint> {
    i.generators().iter().map(IntegerVector::to_point).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn hull_is_idempotent_and_contains_generators(i in ideal_2_3()) {
        let p = poly(&i);
        let again = NewtonPolyhedron::from_points(p.vertices().to_vec()).unwrap();
        prop_assert_eq!(&again, &p);
        for g in points(&i) {
            prop_assert!(p.contains(&g));
        }
        for h in p.facets() {
            prop_assert!(p.vertices().iter().any(|v| h.is_tight(v)));
        }
    }

    #[test]
    fn covolume_is_permutation_invariant_and_homogeneous(i in ideal_2_3(), s in 1i64..4) {
        let n = i.num_vars();
        let c = covolume(&poly(&i)).unwrap();
        let reversed: Vec<IntegerVector> = i
            .generators()
            .iter()
            .map(|g| IntegerVector(g.0.iter().rev().cloned().collect()))
            .collect();
        let r = MonomialIdeal::new(n, reversed).unwrap();
        prop_assert_eq!(covolume(&poly(&r)).unwrap(), c.clone());
        let dilated = poly(&i).dilate(&Rational::from_integer(Integer::from(s))).unwrap();
        let factor = Rational::from_integer(Integer::from(s).pow(n as u32));
        prop_assert_eq!(covolume(&dilated).unwrap(), c * factor);
    }

    #[test]
    fn newton_polyhedron_of_product_is_minkowski_sum((i, j) in pair()) {
        let prod = i.product(&j).unwrap();
        prop_assert_eq!(poly(&prod), poly(&i).minkowski_sum(&poly(&j)).unwrap());
    }

    #[test]
    fn filtration_is_homogeneous_monotone_and_normalized(
        j in ideal_2_3(),
        k in prop::collection::vec(0i64..12, 3),
        bump in 0usize..3,
        t in 1i64..5,
    ) {
        let f = FiltrationMap::new(&j).unwrap();
        let n = j.num_vars();
        let k = RationalPoint::from_i64(&k[..n]);
        let phi = f.phi(&k).unwrap();
        let scaled = k.scale(&Rational::from_integer(Integer::from(t)));
        prop_assert_eq!(f.phi(&scaled).unwrap(), &phi * Rational::from_integer(Integer::from(t)));
        let mut up = k.clone();
        up.0[bump % n] += Rational::from_integer(Integer::from(1));
        prop_assert!(f.phi(&up).unwrap() >= phi);
        let m = Rational::from_integer(f.m().clone());
        for face in f.source().compact_faces() {
            for v in &face.vertices {
                prop_assert_eq!(f.phi(v).unwrap(), m.clone());
            }
        }
    }

    #[test]
    fn inclusion_tests_agree((i, j) in pair()) {
        let f = FiltrationMap::new(&j).unwrap();
        let via_nu = f.closure_contains(&i).unwrap();
        let via_hull = points(&i).iter().all(|g| poly(&j).contains(g));
        let via_closure = i
            .generators()
            .iter()
            .all(|g| j.closure_generators().unwrap().contains_monomial(g));
        prop_assert_eq!(via_nu, via_hull);
        prop_assert_eq!(via_nu, via_closure);
    }

    #[test]
    fn multiplicity_scales_with_powers(i in ideal_2_3(), s in 1u32..4) {
        let n = i.num_vars() as u32;
        let e = samuel_multiplicity(&i).unwrap();
        let es = samuel_multiplicity(&i.power(s).unwrap()).unwrap();
        prop_assert_eq!(es, e * Integer::from(s).pow(n));
    }

    #[test]
    fn multiplicity_bounds_colength(i in ideal(2, 8)) {
        // For monomial ideals in two variables, colength(I) <= e(I) <= 2! colength(I).
        let e = samuel_multiplicity(&i).unwrap();
        let l = colength(&i).unwrap();
        prop_assert!(l <= e && e <= l * Integer::from(2));
    }

    #[test]
    fn exponent_matches_vertex_oracle((i, j) in pair()) {
        prop_assert_eq!(loja_exponent(&i, &j).unwrap(), loja_oracle(&i, &j).unwrap());
    }
}
