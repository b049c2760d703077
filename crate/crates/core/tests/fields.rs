use maxcov_core::form::{point_to_f64, DifferentialForm, MultiIndex, Point};
use maxcov_core::maxwell::{self, covariantize, EMFieldState, StateConstraints};
use maxcov_core::quadrature::{self, AxisBox, Rectangle};
use maxcov_core::rational::{int, ratio};
use maxcov_core::reconstruction::{
    direct_components, reconstruct_2form, reconstruct_3form_solve, transversal_values, transversal_values_2form,
};
use maxcov_core::sampling::{sample_points, Sampler};
use maxcov_core::{FrameFamily, Jet, Polynomial, ScalarField};

fn idx(s: &str) -> MultiIndex {
    MultiIndex::parse(s).unwrap()
}

fn jet_form(grade: usize, salt: f64) -> DifferentialForm {
    let mut out = DifferentialForm::zero(grade);
    for (k, index) in MultiIndex::all_of_grade(grade).enumerate() {
        let a = salt + k as f64;
        let f = ScalarField::from_fn(move |p: &[Jet; 4]| {
            let wave = (p[0].scale(a) - p[1] + p[2].scale(0.5)).sin();
            let blob = (p[3].scale(-0.25) * p[1]).exp();
            wave * blob + p[2].powi(3)
        });
        out = &out + &DifferentialForm::monomial(index, f);
    }
    out
}

#[test]
fn jet_forms_satisfy_d_squared_zero() {
    let points = sample_points(42, 50);
    for grade in 0..=2 {
        let dd = jet_form(grade, 0.3).exterior_derivative().exterior_derivative();
        for p in &points {
            let pf = point_to_f64(p);
            for (_, c) in dd.terms() {
                assert!(c.eval_f64(&pf).abs() <= 1e-12, "grade {grade}");
            }
        }
    }
}

#[test]
fn jet_covariantization_of_exact_faraday_vanishes() {
    let a = jet_form(1, 1.7);
    let state = EMFieldState::from_potential(&a).unwrap();
    let fam = FrameFamily::default();
    let eval = StateConstraints::new(&fam, &state);
    for r in covariantize(&fam, &eval, &sample_points(5, 20)).unwrap() {
        for v in r.df.components() {
            assert!(maxcov_core::rational::to_f64(&v).abs() <= 1e-9);
        }
    }
}

#[test]
fn reconstruction_is_independent_of_beta() {
    let slow = FrameFamily::new(ratio(5, 13)).unwrap();
    let fast = FrameFamily::default();
    let mut s = Sampler::new(9);
    for _ in 0..10 {
        let j = s.form(3, 3, 2);
        for p in s.points(3) {
            let a = reconstruct_3form_solve(&transversal_values(&j, &slow, &p).unwrap(), &slow).unwrap();
            let b = reconstruct_3form_solve(&transversal_values(&j, &fast, &p).unwrap(), &fast).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn reconstruction_is_linear_and_round_trips() {
    let fam = FrameFamily::default();
    let mut s = Sampler::new(21);
    for _ in 0..10 {
        let (j, k) = (s.form(3, 2, 2), s.form(3, 2, 2));
        let c = s.rational();
        let p = s.point();
        let rec = |f: &DifferentialForm| reconstruct_3form_solve(&transversal_values(f, &fam, &p).unwrap(), &fam).unwrap();
        let combo = &j + &k.scale(&c);
        assert_eq!(rec(&combo), rec(&j).add(&rec(&k).scale(&c)));
        let constant = rec(&j).assemble(fam.frame(0));
        let frozen = DifferentialForm::from_terms(
            3,
            j.terms().map(|(i, f)| (*i, ScalarField::constant(f.eval(&p).unwrap()))),
        )
        .unwrap();
        assert_eq!(constant.exact_eq(&frozen), Some(true));
    }
}

#[test]
fn two_form_temporal_part_from_three_frames() {
    let fam = FrameFamily::default();
    let mut s = Sampler::new(77);
    for _ in 0..10 {
        let f = s.form(2, 3, 2);
        let p = s.point();
        let got = reconstruct_2form(&transversal_values_2form(&f, &fam, &p).unwrap(), &fam).unwrap();
        let e = fam.frame(0).contract(&f);
        for (k, v) in got.iter().enumerate() {
            assert_eq!(*v, e.coefficient(MultiIndex::single(k + 1)).eval(&p).unwrap());
        }
    }
}

#[test]
fn printed_and_solved_agree_with_direct_evaluation() {
    let fam = FrameFamily::new(ratio(5, 13)).unwrap();
    let mut s = Sampler::new(3);
    let j = s.form(3, 4, 2);
    for p in s.points(10) {
        let samples = transversal_values(&j, &fam, &p).unwrap();
        let direct = direct_components(&j, fam.frame(0), &p).unwrap();
        let printed = maxcov_core::reconstruction::reconstruct_3form_printed(&samples, fam.beta(), fam.gamma()).unwrap();
        assert_eq!(printed, direct);
        assert_eq!(reconstruct_3form_solve(&samples, &fam).unwrap(), direct);
    }
}

#[test]
fn frame_fields_on_leaf() {
    let fam = FrameFamily::default();
    let state = EMFieldState::from_potential(&Sampler::new(1).form(1, 3, 2)).unwrap();
    for frame in fam.frames() {
        let fields = maxwell::frame_fields(frame, &state, &ratio(1, 2));
        assert!(fields.b.exterior_derivative().is_zero());
        assert_eq!(fields.d.exterior_derivative().exact_eq(&fields.rho), Some(true));
        for w in [&fields.e, &fields.b, &fields.d, &fields.h, &fields.rho] {
            assert!(w.terms().all(|(i, _)| !i.contains(0)));
        }
    }
}

#[test]
fn divergence_through_x_faces() {
    let omega = DifferentialForm::monomial(idx("23"), Polynomial::var(1));
    let faces = AxisBox::unit().faces();
    let net = quadrature::flux_integral(&omega, &faces[0], 8).unwrap()
        + quadrature::flux_integral(&omega, &faces[1], 8).unwrap();
    assert!((net - 1.0).abs() < 1e-10);
}

#[test]
fn stokes_for_random_leaf_forms() {
    let mut s = Sampler::new(8);
    let bx = AxisBox {
        lo: [-0.5, 0.0, -1.0],
        hi: [1.0, 0.75, 0.5],
    };
    for _ in 0..10 {
        let omega = s.form(2, 3, 3);
        let leaf = maxcov_core::make_fiducial_frame().leaf_pullback(&int(0), &omega);
        let exact = leaf.exterior_derivative().exterior_derivative();
        assert!(exact.is_zero());
        assert!(maxwell::stokes_delta(&leaf, &bx, 8).unwrap().abs() < 1e-10);
        let closed = Sampler::new(s.next_u64()).form(1, 3, 3);
        let db = maxcov_core::make_fiducial_frame()
            .leaf_pullback(&int(0), &closed)
            .exterior_derivative();
        assert!(quadrature::closed_surface_flux(&db, &bx, 8).unwrap().abs() < 1e-10);
    }
    let open = Rectangle {
        axes: (1, 2),
        level: 0.25,
        u_range: (0.0, 2.0),
        v_range: (-1.0, 1.0),
    };
    let w = DifferentialForm::monomial(idx("12"), Polynomial::from_terms([(int(3), [0, 2, 0, 0])]));
    assert!((quadrature::flux_integral(&w, &open, 8).unwrap() - 16.0).abs() < 1e-10);
}

#[test]
fn points_are_reproducible() {
    let a: Vec<Point> = sample_points(123, 5);
    assert_eq!(a, sample_points(123, 5));
}
