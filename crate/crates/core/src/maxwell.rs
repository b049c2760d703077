//! Electromagnetic fields as spacetime forms: Faraday `F`, Ampère `G` and the
//! four-current `J`, with `dF = 0` and `dG = J`.
//!
//! A frame `Γ⊗θ` splits `F` into `E = i_Γ F` and `B = F_⊥`, and `G` into
//! `H = i_Γ G` and `D = G_⊥`; the charge density is `ρ = J_⊥`. On each leaf the
//! constraint equations read `dB = 0` and `dD = ρ`. Their residuals in the
//! four frames of a boost family determine `dF` and `dG − J` completely.

use crate::error::{Error, Result};
use crate::form::{DifferentialForm, MultiIndex, Point};
use crate::frames::{make_boost_frame, make_fiducial_frame, FrameFamily, ReferenceFrame};
use crate::poly::Polynomial;
use crate::quadrature::{self, AxisBox};
use crate::rational::Rational;
use crate::reconstruction::{reconstruct_3form_solve, Reconstructed3Form, TransversalSample3};
use crate::scalar::ScalarField;

fn check_grade(form: &DifferentialForm, expected: usize) -> Result<()> {
    if form.grade() != expected {
        return Err(Error::GradeMismatch {
            expected,
            found: form.grade(),
        });
    }
    Ok(())
}

/// `F`, `G`, `J` of one field configuration.
#[derive(Clone, Debug)]
pub struct EMFieldState {
    pub f: DifferentialForm,
    pub g: DifferentialForm,
    pub j: DifferentialForm,
}

impl EMFieldState {
    pub fn new(f: DifferentialForm, g: DifferentialForm, j: DifferentialForm) -> Result<Self> {
        check_grade(&f, 2)?;
        check_grade(&g, 2)?;
        check_grade(&j, 3)?;
        Ok(Self { f, g, j })
    }

    pub fn empty() -> Self {
        Self {
            f: DifferentialForm::zero(2),
            g: DifferentialForm::zero(2),
            j: DifferentialForm::zero(3),
        }
    }

    /// `F = dA`, `G = ⋆F`, `J = dG`.
    pub fn from_potential(a: &DifferentialForm) -> Result<Self> {
        let f = faraday_from_potential(a)?;
        let g = constitutive_vacuum(&f)?;
        Self::ampere_derived(f, g)
    }

    /// Takes `F` and `G` as given and sets `J = dG`.
    pub fn ampere_derived(f: DifferentialForm, g: DifferentialForm) -> Result<Self> {
        check_grade(&g, 2)?;
        let j = g.exterior_derivative();
        Self::new(f, g, j)
    }

    /// Pulls every field back along an affine map.
    pub fn pullback_affine(&self, map: &crate::affine::AffineMap) -> Self {
        Self {
            f: self.f.pullback_affine(map),
            g: self.g.pullback_affine(map),
            j: self.j.pullback_affine(map),
        }
    }
}

/// `F = dA`.
pub fn faraday_from_potential(a: &DifferentialForm) -> Result<DifferentialForm> {
    check_grade(a, 1)?;
    Ok(a.exterior_derivative())
}

/// `(E, B) = (i_Γ F, F_⊥)` as spacetime forms.
pub fn split_faraday(frame: &ReferenceFrame, f: &DifferentialForm) -> Result<(DifferentialForm, DifferentialForm)> {
    check_grade(f, 2)?;
    Ok((frame.contract(f), frame.transversal(f)))
}

/// `G = ⋆F`.
pub fn constitutive_vacuum(f: &DifferentialForm) -> Result<DifferentialForm> {
    check_grade(f, 2)?;
    Ok(f.hodge_star())
}

/// Fields seen by one frame on its leaf at time `t`, in leaf coordinates.
#[derive(Clone, Debug)]
pub struct FrameFields {
    pub t: Rational,
    pub e: DifferentialForm,
    pub b: DifferentialForm,
    pub d: DifferentialForm,
    pub h: DifferentialForm,
    pub rho: DifferentialForm,
}

pub fn frame_fields(frame: &ReferenceFrame, state: &EMFieldState, t: &Rational) -> FrameFields {
    let leaf = |a: &DifferentialForm| frame.leaf_pullback(t, a);
    FrameFields {
        t: t.clone(),
        e: leaf(&frame.contract(&state.f)),
        b: leaf(&frame.transversal(&state.f)),
        d: leaf(&frame.transversal(&state.g)),
        h: leaf(&frame.contract(&state.g)),
        rho: leaf(&frame.transversal(&state.j)),
    }
}

/// Transversal 3-forms `d_⊥F_⊥` and `d_⊥G_⊥ − J_⊥` of one frame.
#[derive(Clone, Debug)]
pub struct ConstraintResiduals {
    pub magnetic: DifferentialForm,
    pub gauss: DifferentialForm,
}

pub fn constraint_residuals(frame: &ReferenceFrame, state: &EMFieldState) -> ConstraintResiduals {
    let magnetic = frame.d_perp(&frame.transversal(&state.f));
    let gauss = &frame.d_perp(&frame.transversal(&state.g)) - &frame.transversal(&state.j);
    ConstraintResiduals { magnetic, gauss }
}

/// Supplies the transversal residual values of each frame of a family.
pub trait ConstraintEvaluator {
    /// `(d_⊥F_⊥, d_⊥G_⊥ − J_⊥)` of frame `mu` evaluated on its spatial basis at `p`.
    fn transversal_residuals(&self, mu: usize, p: &Point) -> Result<(Rational, Rational)>;
}

/// Residuals of a field state, precomputed for every frame of a family.
/// Jet-backed coefficients are evaluated in floating point and converted to
/// the exactly equal dyadic rational.
#[derive(Clone, Debug)]
pub struct StateConstraints<'a> {
    family: &'a FrameFamily,
    residuals: Vec<ConstraintResiduals>,
}

impl<'a> StateConstraints<'a> {
    pub fn new(family: &'a FrameFamily, state: &EMFieldState) -> Self {
        let residuals = family
            .frames()
            .iter()
            .map(|frame| constraint_residuals(frame, state))
            .collect();
        Self { family, residuals }
    }

    pub fn residuals(&self, mu: usize) -> &ConstraintResiduals {
        &self.residuals[mu]
    }
}

impl ConstraintEvaluator for StateConstraints<'_> {
    fn transversal_residuals(&self, mu: usize, p: &Point) -> Result<(Rational, Rational)> {
        let frame = self.family.frame(mu);
        let r = &self.residuals[mu];
        let x = frame.spatial_components();
        Ok((r.magnetic.value_on(x, p)?, r.gauss.value_on(x, p)?))
    }
}

/// Covariant residuals at one point, as fiducial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantResidual {
    pub point: Point,
    pub df: Reconstructed3Form,
    pub dg_minus_j: Reconstructed3Form,
}

/// Reconstructs `dF` and `dG − J` at each point from the four frames'
/// constraint residuals.
pub fn covariantize<E: ConstraintEvaluator + ?Sized>(
    family: &FrameFamily,
    evaluator: &E,
    points: &[Point],
) -> Result<Vec<CovariantResidual>> {
    points
        .iter()
        .map(|p| {
            let mut magnetic = Vec::with_capacity(4);
            let mut gauss = Vec::with_capacity(4);
            for frame in family.frames() {
                let (m, g) = evaluator.transversal_residuals(frame.label(), p)?;
                magnetic.push(TransversalSample3 {
                    frame_label: frame.label(),
                    value: m,
                });
                gauss.push(TransversalSample3 {
                    frame_label: frame.label(),
                    value: g,
                });
            }
            let magnetic: [TransversalSample3; 4] = magnetic.try_into().expect("four frames");
            let gauss: [TransversalSample3; 4] = gauss.try_into().expect("four frames");
            Ok(CovariantResidual {
                point: p.clone(),
                df: reconstruct_3form_solve(&magnetic, family)?,
                dg_minus_j: reconstruct_3form_solve(&gauss, family)?,
            })
        })
        .collect()
}

/// The five quadratic invariants, each a 4-form.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub ff: DifferentialForm,
    pub f_star_f: DifferentialForm,
    pub fg: DifferentialForm,
    pub gg: DifferentialForm,
    pub g_star_g: DifferentialForm,
}

impl Invariants {
    pub const NAMES: [&'static str; 5] = ["F^F", "F^*F", "F^G", "G^G", "G^*G"];

    pub fn as_array(&self) -> [&DifferentialForm; 5] {
        [&self.ff, &self.f_star_f, &self.fg, &self.gg, &self.g_star_g]
    }

    /// Coefficients on `dt∧dx∧dy∧dz`.
    pub fn coefficients(&self) -> [ScalarField; 5] {
        self.as_array().map(|w| w.coefficient(MultiIndex::VOLUME))
    }
}

pub fn invariants(state: &EMFieldState) -> Invariants {
    let w = |a: &DifferentialForm, b: &DifferentialForm| a.wedge(b).expect("grade 4");
    Invariants {
        ff: w(&state.f, &state.f),
        f_star_f: w(&state.f, &state.f.hodge_star()),
        fg: w(&state.f, &state.g),
        gg: w(&state.g, &state.g),
        g_star_g: w(&state.g, &state.g.hodge_star()),
    }
}

/// A static charge blob: `D = ∇φ` encoded as
/// `G = ∂₁φ dy∧dz + ∂₂φ dz∧dx + ∂₃φ dx∧dy`, `H = 0`, `F = −⋆G` (so
/// `G = ⋆F`) and `J = dG`, with `φ` independent of `t`.
pub fn static_charge_state(phi: &Polynomial) -> Result<EMFieldState> {
    if !phi.partial(0).is_zero() {
        return Err(Error::Inconsistent);
    }
    let g = DifferentialForm::from_terms(
        2,
        [
            (MultiIndex::parse("23")?, ScalarField::from(phi.partial(1))),
            (MultiIndex::parse("13")?, ScalarField::from(phi.partial(2)).neg()),
            (MultiIndex::parse("12")?, ScalarField::from(phi.partial(3))),
        ],
    )?;
    let f = -&g.hodge_star();
    EMFieldState::ampere_derived(f, g)
}

/// The static blob seen from a frame boosted with velocity `beta` along
/// `axis`: every field is pulled back along the boost's adapted coordinates,
/// so the charge moves and carries a convection current.
pub fn convection_state(phi: &Polynomial, axis: usize, beta: &Rational) -> Result<EMFieldState> {
    let rest = static_charge_state(phi)?;
    let boost = make_boost_frame(&make_fiducial_frame(), axis, beta)?;
    Ok(rest.pullback_affine(&boost.coordinate_map()))
}

/// Fiducial-frame field components `(E_1, E_2, E_3)` and `(B_1, B_2, B_3)`
/// with `E = −Σ E_i dx^i` and `B = B_1 dy∧dz + B_2 dz∧dx + B_3 dx∧dy`.
pub fn fiducial_components(f: &DifferentialForm) -> Result<([ScalarField; 3], [ScalarField; 3])> {
    let frame = make_fiducial_frame();
    let (e, b) = split_faraday(&frame, f)?;
    let ec = std::array::from_fn(|i| e.coefficient(MultiIndex::single(i + 1)).neg());
    let bc = [
        b.coefficient(MultiIndex::parse("23")?),
        b.coefficient(MultiIndex::parse("13")?).neg(),
        b.coefficient(MultiIndex::parse("12")?),
    ];
    Ok((ec, bc))
}

/// Outward flux of `ω` through the boundary of `bx` minus `∫_bx dω`, for a
/// leaf 2-form.
pub fn stokes_delta(omega: &DifferentialForm, bx: &AxisBox, n: usize) -> Result<f64> {
    let boundary = quadrature::closed_surface_flux(omega, bx, n)?;
    let interior = quadrature::volume_integral(&omega.exterior_derivative(), bx, n)?;
    Ok(boundary - interior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn idx(s: &str) -> MultiIndex {
        MultiIndex::parse(s).unwrap()
    }

    fn t() -> Polynomial {
        Polynomial::var(0)
    }

    fn x() -> Polynomial {
        Polynomial::var(1)
    }

    #[test]
    fn faraday_examples() {
        assert!(faraday_from_potential(&DifferentialForm::zero(1)).unwrap().is_zero());
        let a = DifferentialForm::monomial(idx("0"), -&x());
        let f = faraday_from_potential(&a).unwrap();
        let expected = DifferentialForm::basis(idx("01"));
        assert_eq!(f.exact_eq(&expected), Some(true));
        assert!(faraday_from_potential(&f).is_err());
    }

    #[test]
    fn plane_wave_potential() {
        // f(u) = u^3 with u = t - x
        let u = &t() - &x();
        let fu = &(&u * &u) * &u;
        let a = DifferentialForm::monomial(idx("2"), fu);
        let f = faraday_from_potential(&a).unwrap();
        let fprime = (&u * &u).scale(&int(3));
        let dt_minus_dx = &DifferentialForm::dx(0) - &DifferentialForm::dx(1);
        let expected = dt_minus_dx.wedge(&DifferentialForm::dx(2)).unwrap().mul_scalar(&fprime.into());
        assert_eq!(f.exact_eq(&expected), Some(true));
        assert!(f.exterior_derivative().is_zero());
    }

    #[test]
    fn split_examples() {
        let fid = make_fiducial_frame();
        let (e, b) = split_faraday(&fid, &DifferentialForm::basis(idx("01")).scale(&int(-1))).unwrap();
        assert_eq!(e.exact_eq(&DifferentialForm::dx(1).scale(&int(-1))), Some(true));
        assert!(b.is_zero());
        let (e, b) = split_faraday(&fid, &DifferentialForm::basis(idx("12"))).unwrap();
        assert!(e.is_zero());
        assert_eq!(b.exact_eq(&DifferentialForm::basis(idx("12"))), Some(true));
        let (_, bc) = fiducial_components(&DifferentialForm::basis(idx("12"))).unwrap();
        assert_eq!(bc[2].as_constant(), Some(int(1)));
    }

    #[test]
    fn vacuum_relation() {
        let f = DifferentialForm::basis(idx("01"));
        let g = constitutive_vacuum(&f).unwrap();
        let c = g.coefficient(idx("23")).as_constant().unwrap();
        assert!(c == int(1) || c == int(-1));
        assert_eq!(g.terms().count(), 1);
        let back = constitutive_vacuum(&g).unwrap();
        assert_eq!(back.exact_eq(&f.scale(&int(-1))), Some(true));
    }

    #[test]
    fn detection_witness() {
        let f = DifferentialForm::monomial(idx("12"), t());
        let state = EMFieldState::ampere_derived(f, DifferentialForm::zero(2)).unwrap();
        let fam = FrameFamily::default();
        let fid = constraint_residuals(fam.frame(0), &state);
        assert!(fid.magnetic.is_zero());
        assert!(constraint_residuals(fam.frame(1), &state).magnetic.is_zero());
        assert!(!constraint_residuals(fam.frame(3), &state).magnetic.is_zero());
        let eval = StateConstraints::new(&fam, &state);
        let p = [ratio(1, 3), int(2), int(-1), ratio(5, 7)];
        let out = covariantize(&fam, &eval, &[p]).unwrap();
        assert_eq!(out[0].df.par_values, [int(0), int(0), int(1)]);
        assert_eq!(out[0].df.perp_value, int(0));
        assert_eq!(out[0].dg_minus_j, Reconstructed3Form::zero());
    }

    #[test]
    fn invariant_examples() {
        let state = EMFieldState::new(
            DifferentialForm::basis(idx("01")),
            &DifferentialForm::basis(idx("12")) + &DifferentialForm::basis(idx("03")).scale(&int(-1)),
            DifferentialForm::zero(3),
        )
        .unwrap();
        let inv = invariants(&state);
        assert!(inv.ff.is_zero());
        // (dx∧dy + dz∧dt)² = 2 dx∧dy∧dz∧dt = -2 dt∧dx∧dy∧dz
        assert_eq!(inv.gg.coefficient(MultiIndex::VOLUME).as_constant(), Some(int(-2)));
        let empty = invariants(&EMFieldState::empty());
        assert!(empty.as_array().iter().all(|w| w.is_zero()));
    }

    #[test]
    fn static_and_moving_charge() {
        let r2 = Polynomial::from_terms([
            (int(1), [0, 2, 0, 0]),
            (int(1), [0, 0, 2, 0]),
            (int(1), [0, 0, 0, 2]),
        ]);
        let rest = static_charge_state(&r2).unwrap();
        assert!(rest.f.exterior_derivative().is_zero());
        assert!(invariants(&rest).gg.is_zero());
        assert_eq!(constitutive_vacuum(&rest.f).unwrap().exact_eq(&rest.g), Some(true));
        let moving = convection_state(&r2, 1, &ratio(3, 5)).unwrap();
        assert!(moving.f.exterior_derivative().is_zero());
        assert!(moving.j.exterior_derivative().is_zero());
        assert!(invariants(&moving).gg.is_zero());
        assert!(static_charge_state(&t()).is_err());
    }

    #[test]
    fn stokes_on_unit_box() {
        let omega = DifferentialForm::monomial(idx("23"), x());
        let delta = stokes_delta(&omega, &AxisBox::unit(), 8).unwrap();
        assert!(delta.abs() < 1e-12);
    }
}
