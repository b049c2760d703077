//! Algebraic identities of the exterior calculus, checked on random
//! polynomial forms with exact rational arithmetic.

use maxcov_core::form::{DifferentialForm, MetricSignature, MultiIndex, VectorField};
use maxcov_core::sampling::Sampler;
use maxcov_core::{AffineMap, FrameFamily, Polynomial, ScalarField};
use maxcov_core::rational::int;
use proptest::prelude::*;

fn form(seed: u64, grade: usize) -> DifferentialForm {
    Sampler::new(seed).form(grade, 3, 2)
}

fn vector_field(seed: u64) -> VectorField {
    let mut s = Sampler::new(seed ^ 0x5eed);
    VectorField::new(std::array::from_fn(|_| ScalarField::from(s.polynomial(2, 1))))
}

fn same(a: &DifferentialForm, b: &DifferentialForm) -> bool {
    a.exact_eq(b) == Some(true)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), grade in 0usize..=3) {
        let a = form(seed, grade);
        prop_assert!(a.exterior_derivative().exterior_derivative().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), p in 0usize..=3, q in 0usize..=3) {
        prop_assume!(p + q <= 3);
        let a = form(seed, p);
        let b = form(seed.wrapping_add(1), q);
        let lhs = a.wedge(&b).unwrap().exterior_derivative();
        let rhs = &a.exterior_derivative().wedge(&b).unwrap()
            + &a.wedge(&b.exterior_derivative()).unwrap().scale(&int(sign(p)));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn graded_commutativity(seed in any::<u64>(), p in 0usize..=4, q in 0usize..=4) {
        prop_assume!(p + q <= 4);
        let a = form(seed, p);
        let b = form(seed.wrapping_add(7), q);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap().scale(&int(sign(p * q)));
        prop_assert!(same(&ab, &ba));
    }

    #[test]
    fn interior_product_is_antiderivation(seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2) {
        let a = form(seed, p);
        let b = form(seed.wrapping_add(3), q);
        let v = vector_field(seed);
        let lhs = a.wedge(&b).unwrap().interior_product(&v).unwrap();
        let rhs = &a.interior_product(&v).unwrap().wedge(&b).unwrap()
            + &a.wedge(&b.interior_product(&v).unwrap()).unwrap().scale(&int(sign(p)));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn interior_product_squares_to_zero(seed in any::<u64>(), p in 2usize..=4) {
        let v = vector_field(seed);
        let a = form(seed, p);
        prop_assert!(a.interior_product(&v).unwrap().interior_product(&v).unwrap().is_zero());
    }

    #[test]
    fn pullback_commutes_with_d_and_wedge(seed in any::<u64>(), p in 0usize..=2) {
        let mut s = Sampler::new(seed);
        let map = AffineMap::from_columns(&std::array::from_fn(|_| s.point()), s.point());
        let a = Sampler::new(seed).form(p, 3, 1);
        let b = Sampler::new(seed.wrapping_add(11)).form(1, 3, 1);
        prop_assert!(same(
            &a.exterior_derivative().pullback_affine(&map),
            &a.pullback_affine(&map).exterior_derivative()
        ));
        prop_assert!(same(
            &a.wedge(&b).unwrap().pullback_affine(&map),
            &a.pullback_affine(&map).wedge(&b.pullback_affine(&map)).unwrap()
        ));
    }

    #[test]
    fn cartan_formula_commutes_with_d(seed in any::<u64>(), p in 0usize..=2) {
        let a = form(seed, p);
        let v = vector_field(seed);
        prop_assert!(same(
            &a.lie_derivative(&v).exterior_derivative(),
            &a.exterior_derivative().lie_derivative(&v)
        ));
    }

    #[test]
    fn decomposition_recombines(seed in any::<u64>(), p in 1usize..=3, mu in 0usize..4) {
        let fam = FrameFamily::default();
        let frame = fam.frame(mu);
        let a = form(seed, p);
        let (perp, par) = frame.decompose(&a);
        prop_assert!(same(&(&perp + &par), &a));
        prop_assert!(frame.contract(&perp).is_zero());
    }

    #[test]
    fn leaf_pullback_intertwines_d_perp(seed in any::<u64>(), p in 0usize..=2, mu in 0usize..4) {
        let fam = FrameFamily::default();
        let frame = fam.frame(mu);
        let a = form(seed, p);
        let t = Sampler::new(seed).rational();
        let lhs = frame.leaf_pullback(&t, &a).exterior_derivative();
        let rhs = frame.leaf_pullback(&t, &frame.d_perp(&a));
        prop_assert!(same(&lhs, &rhs));
    }
}

/// `⟨e_I, e_J⟩` from the Gram determinant of the metric restricted to `I, J`.
fn gram(metric: &MetricSignature, i: MultiIndex, j: MultiIndex) -> i64 {
    if i != j {
        return 0;
    }
    i.indices().map(|k| metric.signs[k] as i64).product()
}

/// Solves `e_I ∧ ⋆e_J = ⟨e_I, e_J⟩ vol` for `⋆e_J` by elimination over all
/// grade-(4−k) basis forms, without using the library's Hodge star.
fn brute_force_star(metric: &MetricSignature, j: MultiIndex) -> DifferentialForm {
    use maxcov_core::linalg::solve;
    use maxcov_core::rational::{int, zero};
    let k = j.grade();
    let rows_idx: Vec<MultiIndex> = MultiIndex::all_of_grade(k).collect();
    let cols_idx: Vec<MultiIndex> = MultiIndex::all_of_grade(4 - k).collect();
    let matrix: Vec<Vec<_>> = rows_idx
        .iter()
        .map(|i| {
            cols_idx
                .iter()
                .map(|c| {
                    let w = DifferentialForm::basis(*i).wedge(&DifferentialForm::basis(*c)).unwrap();
                    w.coefficient(MultiIndex::VOLUME).as_constant().unwrap_or_else(zero)
                })
                .collect()
        })
        .collect();
    let rhs: Vec<_> = rows_idx.iter().map(|i| int(gram(metric, *i, j))).collect();
    let sol = solve(&matrix, &rhs).unwrap();
    let mut out = DifferentialForm::zero(4 - k);
    for (c, v) in cols_idx.iter().zip(sol) {
        out = &out + &DifferentialForm::basis(*c).scale(&v);
    }
    out
}

#[test]
fn hodge_star_matches_defining_relation() {
    let metric = MetricSignature::MINKOWSKI;
    let mut table = Vec::new();
    for k in 0..=4 {
        let mut grade_sign = None;
        for j in MultiIndex::all_of_grade(k) {
            let oracle = brute_force_star(&metric, j);
            assert!(same(&DifferentialForm::basis(j).hodge_star(), &oracle), "grade {k}, {j}");
            let twice = brute_force_star(&metric, oracle.terms().next().map(|(i, _)| *i).unwrap());
            let c = oracle.terms().next().unwrap().1.as_constant().unwrap();
            let back = twice.scale(&c);
            let s = back.coefficient(j).as_constant().unwrap();
            grade_sign.get_or_insert(s.clone());
            assert_eq!(grade_sign.as_ref(), Some(&s));
        }
        table.push(grade_sign.unwrap());
    }
    let frozen: Vec<_> = [-1, 1, -1, 1, -1].iter().map(|s| maxcov_core::rational::int(*s)).collect();
    assert_eq!(table, frozen);
}

#[test]
fn hodge_is_linear_over_functions() {
    let f = ScalarField::from(Polynomial::from_terms([(maxcov_core::rational::int(3), [1, 0, 2, 0])]));
    let a = form(99, 2);
    assert!(same(&a.mul_scalar(&f).hodge_star(), &a.hodge_star().mul_scalar(&f)));
}
