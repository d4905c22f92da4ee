use lsc_core::catalog;
use lsc_core::cochain::{self, cohomology};
use lsc_core::deform::{
    first_difference, infinitesimal_equivalence, obstruction_and_extend, star, transport,
    verify_deformation, EquivalenceMap,
};
use lsc_core::{Bimodule, Cochain, Cyc, CycMatrix, Deformation, GradedAlgebra};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Cyc> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Cyc::from_frac(n, d))
}

fn combination(basis: &[Cochain], coeffs: &[Cyc]) -> Cochain {
    let mut acc = basis[0].scale(&coeffs[0]);
    for (b, c) in basis.iter().zip(coeffs).skip(1) {
        acc = acc.combine(b, c).unwrap();
    }
    acc
}

fn degree0_basis(alg: &GradedAlgebra, n: usize) -> Vec<Cochain> {
    let v = Bimodule::standard(alg);
    let zero = alg.group().zero();
    let slots = cochain::cochain_basis(alg, &v, n, &zero);
    (0..slots.len())
        .map(|i| {
            let mut xs = vec![Cyc::zero(); slots.len()];
            xs[i] = Cyc::one();
            cochain::from_coordinates(alg, &v, n, &zero, &slots, &xs)
        })
        .collect()
}

/// Basis of the degree-0 2-cocycles of example37.
fn cocycle_basis(alg: &GradedAlgebra) -> Vec<Cochain> {
    let v = Bimodule::standard(alg);
    let zero = alg.group().zero();
    let d2 = cochain::coboundary_matrix(alg, &v, 2, &zero);
    d2.matrix
        .kernel_basis()
        .iter()
        .map(|k| cochain::from_coordinates(alg, &v, 2, &zero, &d2.domain, k))
        .collect()
}

fn random_map(alg: &GradedAlgebra, coeffs: &[Vec<Cyc>]) -> EquivalenceMap {
    let basis = degree0_basis(alg, 1);
    let terms: Vec<Cochain> = coeffs.iter().map(|c| combination(&basis, c)).collect();
    EquivalenceMap::from_cochains(alg, &terms).unwrap()
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_one_deformation_iff_cocycle_with_square_zero(
        coeffs in proptest::collection::vec(prop_oneof![2 => Just(Cyc::zero()), 3 => small_rational()], 13),
    ) {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let f = combination(&degree0_basis(&alg, 2), &coeffs);
        let cocycle = cochain::coboundary(&alg, &v, &f).is_zero();
        let square = star(&alg, &f, &f).unwrap().is_zero();
        let d = Deformation::new(alg.clone(), vec![f]).unwrap();
        prop_assert_eq!(verify_deformation(&d).pass, cocycle && square);
    }

    #[test]
    fn cocycles_always_extend_once(coeffs in proptest::collection::vec(small_rational(), 5)) {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let f = combination(&cocycle_basis(&alg), &coeffs);
        let report = obstruction_and_extend(&Deformation::new(alg.clone(), vec![f.clone()]).unwrap()).unwrap();
        prop_assert!(report.is_cocycle);
        prop_assert!(cochain::coboundary(&alg, &v, &report.obstruction).is_zero());
        let ext = report.extension.expect("example37 has no degree-0 third cohomology obstruction");
        let d2 = Deformation::new(alg, vec![f, ext.particular]).unwrap();
        prop_assert!(verify_deformation(&d2.truncated(2)).failure.is_none_or(|x| x.degree > 2));
    }

    #[test]
    fn transport_round_trip(
        t in small_rational(),
        c1 in proptest::collection::vec(small_rational(), 5),
        c2 in proptest::collection::vec(small_rational(), 5),
    ) {
        let d = catalog::a_lambda_t(&t);
        let alg = d.base().clone();
        let p = random_map(&alg, &[c1, c2]);
        let e = transport(&d, &p, 3);
        let back = transport(&e, &p.inverse(alg.dim(), 3), 3);
        prop_assert_eq!(first_difference(&back, &d, 3), None);
    }

    #[test]
    fn first_order_transport_is_the_coboundary(c in proptest::collection::vec(small_rational(), 5)) {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let q = combination(&degree0_basis(&alg, 1), &c);
        let p = EquivalenceMap::from_cochains(&alg, std::slice::from_ref(&q)).unwrap();
        let e = transport(&Deformation::trivial(alg.clone()), &p, 1);
        let dq = cochain::coboundary(&alg, &v, &q);
        prop_assert_eq!(e.term(1), dq.clone());
        let zero = Cochain::zero(2, alg.group().zero(), alg.dim());
        let p1 = infinitesimal_equivalence(&alg, &zero, &dq).unwrap().expect("d1 q is a coboundary");
        prop_assert_eq!(cochain::coboundary(&alg, &v, &p1), dq);
    }

    #[test]
    fn exponential_of_a_derivation_is_an_automorphism(c in proptest::collection::vec(small_rational(), 3)) {
        let alg = catalog::example37();
        let v = Bimodule::standard(&alg);
        let derivations = cohomology(&alg, &v, 1, &alg.group().zero()).representatives;
        let d = combination(&derivations, &c);
        let m = EquivalenceMap::from_cochains(&alg, &[d]).unwrap().terms()[0].clone();
        let terms: Vec<CycMatrix> = (1..=3)
            .map(|k| m.pow(k as u32).scale(&Cyc::from_frac(1, factorial(k))))
            .collect();
        let exp = EquivalenceMap::from_matrices(&alg, terms).unwrap();
        let e = transport(&Deformation::trivial(alg.clone()), &exp, 3);
        prop_assert_eq!(first_difference(&e, &Deformation::trivial(alg), 3), None);
    }
}

#[test]
fn catalog_deformations_verify() {
    for t in [
        Cyc::one(),
        Cyc::from_int(-1),
        Cyc::root_of_unity(4, 1),
        Cyc::root_of_unity(3, 1),
    ] {
        assert!(verify_deformation(&catalog::a_lambda_t(&t)).pass);
    }
    assert!(verify_deformation(&catalog::b_lambda()).pass);
}

#[test]
fn obstruction_of_catalog_families() {
    for d in [catalog::b_lambda(), catalog::a_lambda_t(&Cyc::from_int(3))] {
        let r = obstruction_and_extend(&d).unwrap();
        // square-zero f1 has zero obstruction, so f2 = 0 is the canonical extension
        assert!(r.obstruction.is_zero());
        let ext = r.extension.unwrap();
        assert!(ext.particular.is_zero());
        assert_eq!(ext.kernel.len(), 5);
        assert!(r.nontrivial);
    }
}

#[test]
fn derivations_fix_the_product_to_first_order() {
    let alg = catalog::example37();
    let v = Bimodule::standard(&alg);
    for d in cohomology(&alg, &v, 1, &alg.group().zero()).representatives {
        let p = EquivalenceMap::from_cochains(&alg, &[d]).unwrap();
        let e = transport(&Deformation::trivial(alg.clone()), &p, 2);
        assert!(e.term(1).is_zero());
    }
}
