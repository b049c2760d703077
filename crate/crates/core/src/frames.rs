//! Inertial reference frames `R = Γ ⊗ θ` and the splitting of forms they induce.
//!
//! Every frame here has constant data: a clock field `Γ`, a spatial basis
//! `X_1, X_2, X_3` spanning `Ker θ`, and the covector `θ` solved as the first
//! element of the dual basis of `(Γ, X_1, X_2, X_3)`. Constant `θ` gives
//! `dθ = 0`, so the leaves of the frame are the affine 3-planes `θ(p) = t`.

use num_traits::{One, Signed, Zero};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::form::{DifferentialForm, VectorField};
use crate::linalg;
use crate::rational::{self, Rational};

/// Digits used for `γ` when `1 - β²` has no rational square root.
const GAMMA_DIGITS: u32 = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceFrame {
    label: usize,
    gamma: [Rational; 4],
    spatial: [[Rational; 4]; 3],
    theta: [Rational; 4],
    dual: [[Rational; 4]; 4],
    gamma_field: VectorField,
    spatial_basis: [VectorField; 3],
    theta_form: DifferentialForm,
}

impl ReferenceFrame {
    /// Builds a frame from constant clock and spatial vectors; `θ` is solved
    /// from the dual-basis system.
    pub fn from_basis(label: usize, gamma: [Rational; 4], spatial: [[Rational; 4]; 3]) -> Result<Self> {
        let columns = [&gamma, &spatial[0], &spatial[1], &spatial[2]];
        let basis: Vec<Vec<Rational>> = (0..4)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let dual = linalg::inverse(&basis)?;
        let dual: [[Rational; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| dual[i][j].clone()));
        let theta = dual[0].clone();
        Ok(Self {
            dual,
            label,
            gamma_field: VectorField::constant(gamma.clone()),
            spatial_basis: spatial.clone().map(VectorField::constant),
            theta_form: DifferentialForm::constant_one_form(&theta),
            gamma,
            spatial,
            theta,
        })
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn gamma_field(&self) -> &VectorField {
        &self.gamma_field
    }

    pub fn theta(&self) -> &DifferentialForm {
        &self.theta_form
    }

    pub fn spatial_basis(&self) -> &[VectorField; 3] {
        &self.spatial_basis
    }

    pub fn gamma_components(&self) -> &[Rational; 4] {
        &self.gamma
    }

    pub fn theta_components(&self) -> &[Rational; 4] {
        &self.theta
    }

    pub fn spatial_components(&self) -> &[[Rational; 4]; 3] {
        &self.spatial
    }

    /// Components of `v` in the basis `(Γ, X_1, X_2, X_3)`.
    pub fn frame_coordinates(&self, v: &[Rational; 4]) -> [Rational; 4] {
        std::array::from_fn(|a| (0..4).fold(Rational::zero(), |acc, i| acc + &self.dual[a][i] * &v[i]))
    }

    /// Rows are the covectors dual to `(Γ, X_1, X_2, X_3)`; row 0 is `θ`.
    pub fn dual_basis(&self) -> &[[Rational; 4]; 4] {
        &self.dual
    }

    /// `θ(v)` for a constant vector.
    pub fn theta_of(&self, v: &[Rational; 4]) -> Rational {
        (0..4).fold(Rational::zero(), |acc, i| acc + &self.theta[i] * &v[i])
    }

    /// Checks `θ(Γ) = 1`, `θ(X_j) = 0`, `dθ = 0` and independence of the basis.
    pub fn is_valid(&self) -> bool {
        let columns = [&self.gamma, &self.spatial[0], &self.spatial[1], &self.spatial[2]];
        let basis: Vec<Vec<Rational>> = (0..4)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        self.theta_of(&self.gamma).is_one()
            && self.spatial.iter().all(|x| self.theta_of(x).is_zero())
            && self.theta_form.exterior_derivative().is_zero()
            && linalg::inverse(&basis).is_ok()
    }

    /// Splits `a` into `(a_⊥, a_∥)` with `a_⊥ = i_Γ(θ∧a)` and `a_∥ = θ∧i_Γ a`.
    pub fn decompose(&self, a: &DifferentialForm) -> (DifferentialForm, DifferentialForm) {
        if a.grade() == 0 {
            return (a.clone(), DifferentialForm::zero(0));
        }
        let perp = self.transversal(a);
        let par = self
            .theta_form
            .wedge(&self.contract(a))
            .expect("grade preserved");
        (perp, par)
    }

    /// `a_⊥ = i_Γ(θ∧a)`; a 4-form has no transversal part.
    pub fn transversal(&self, a: &DifferentialForm) -> DifferentialForm {
        match a.grade() {
            0 => a.clone(),
            4 => DifferentialForm::zero(4),
            _ => self
                .theta_form
                .wedge(a)
                .expect("grade below 4")
                .interior_product(&self.gamma_field)
                .expect("positive grade"),
        }
    }

    /// `i_Γ a`.
    pub fn contract(&self, a: &DifferentialForm) -> DifferentialForm {
        a.interior_product(&self.gamma_field).expect("positive grade")
    }

    /// Transversal differential `d_⊥ a = i_Γ(θ∧da)`.
    pub fn d_perp(&self, a: &DifferentialForm) -> DifferentialForm {
        if a.grade() >= 3 {
            return DifferentialForm::zero(4.min(a.grade() + 1));
        }
        self.transversal(&a.exterior_derivative())
    }

    /// Adapted coordinates: `(τ, ξ) -> τ Γ + Σ ξ_k X_k`.
    pub fn coordinate_map(&self) -> AffineMap {
        AffineMap::from_columns(
            &[
                self.gamma.clone(),
                self.spatial[0].clone(),
                self.spatial[1].clone(),
                self.spatial[2].clone(),
            ],
            std::array::from_fn(|_| rational::zero()),
        )
    }

    /// The leaf immersion at time `t`: `ξ -> t Γ + Σ ξ_k X_k`, as an affine
    /// map of R^4 that ignores its time argument.
    pub fn leaf_immersion(&self, t: &Rational) -> AffineMap {
        let zero: [Rational; 4] = std::array::from_fn(|_| rational::zero());
        AffineMap::from_columns(
            &[
                zero,
                self.spatial[0].clone(),
                self.spatial[1].clone(),
                self.spatial[2].clone(),
            ],
            std::array::from_fn(|i| t * &self.gamma[i]),
        )
    }

    /// Pullback of `a` to the leaf at time `t`. The result is a form in the
    /// spatial coordinates `(ξ_1, ξ_2, ξ_3)`, stored on indices `{1, 2, 3}`.
    pub fn leaf_pullback(&self, t: &Rational, a: &DifferentialForm) -> DifferentialForm {
        a.pullback_affine(&self.leaf_immersion(t))
    }
}

/// The fiducial frame `Γ = ∂t`, `θ = dt`, spatial basis `(∂x, ∂y, ∂z)`.
pub fn make_fiducial_frame() -> ReferenceFrame {
    let e = |i: usize| -> [Rational; 4] {
        std::array::from_fn(|j| if i == j { rational::one() } else { rational::zero() })
    };
    ReferenceFrame::from_basis(0, e(0), [e(1), e(2), e(3)]).expect("standard basis")
}

/// `γ = 1/sqrt(1 - β²)`, exact when `1 - β²` is a rational square.
pub fn lorentz_factor(beta: &Rational) -> Result<(Rational, bool)> {
    check_beta(beta)?;
    let one = Rational::one();
    let inv_sq = &one - beta * beta;
    match rational::sqrt_exact(&inv_sq) {
        Some(s) => Ok((&one / s, true)),
        None => Ok((&one / rational::sqrt_approx(&inv_sq, GAMMA_DIGITS), false)),
    }
}

fn check_beta(beta: &Rational) -> Result<()> {
    if !beta.is_positive() || *beta >= Rational::one() {
        return Err(Error::NonTimelikeBoost(rational::format(beta)));
    }
    Ok(())
}

/// Boosts `base` along its spatial axis `axis` (1, 2 or 3):
/// `Γ' = γΓ + βγX_j`, `X_j' = βγΓ + γX_j`, `X_k' = X_k`.
pub fn make_boost_frame(base: &ReferenceFrame, axis: usize, beta: &Rational) -> Result<ReferenceFrame> {
    let (gamma, _) = lorentz_factor(beta)?;
    boost_with_factor(base, axis, beta, &gamma)
}

fn boost_with_factor(
    base: &ReferenceFrame,
    axis: usize,
    beta: &Rational,
    gamma: &Rational,
) -> Result<ReferenceFrame> {
    if !(1..=3).contains(&axis) {
        return Err(Error::InvalidAxis(axis));
    }
    check_beta(beta)?;
    let bg = beta * gamma;
    let g0 = &base.gamma;
    let xj = &base.spatial[axis - 1];
    let new_gamma: [Rational; 4] = std::array::from_fn(|i| gamma * &g0[i] + &bg * &xj[i]);
    let mut spatial = base.spatial.clone();
    spatial[axis - 1] = std::array::from_fn(|i| &bg * &g0[i] + gamma * &xj[i]);
    ReferenceFrame::from_basis(axis, new_gamma, spatial)
}

/// The fiducial frame together with its boosts along the three spatial axes,
/// all with the same velocity parameter `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameFamily {
    beta: Rational,
    gamma: Rational,
    gamma_exact: bool,
    frames: [ReferenceFrame; 4],
}

impl FrameFamily {
    pub fn new(beta: Rational) -> Result<Self> {
        let (gamma, gamma_exact) = lorentz_factor(&beta)?;
        let fiducial = make_fiducial_frame();
        let frames = [
            fiducial.clone(),
            boost_with_factor(&fiducial, 1, &beta, &gamma)?,
            boost_with_factor(&fiducial, 2, &beta, &gamma)?,
            boost_with_factor(&fiducial, 3, &beta, &gamma)?,
        ];
        Ok(Self {
            beta,
            gamma,
            gamma_exact,
            frames,
        })
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// The Lorentz factor used to build the boosts.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// False when `γ` is a 40-digit rational approximation.
    pub fn gamma_is_exact(&self) -> bool {
        self.gamma_exact
    }

    pub fn frames(&self) -> &[ReferenceFrame; 4] {
        &self.frames
    }

    pub fn frame(&self, mu: usize) -> &ReferenceFrame {
        &self.frames[mu]
    }

    /// `θ_a(Γ_b) ≠ 0` for every ordered pair of frames.
    pub fn mutual_objective_existence(&self) -> bool {
        self.frames
            .iter()
            .all(|a| self.frames.iter().all(|b| !a.theta_of(&b.gamma).is_zero()))
    }
}

impl Default for FrameFamily {
    fn default() -> Self {
        FrameFamily::new(rational::ratio(3, 5)).expect("3/5 is a valid velocity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::MultiIndex;
    use crate::poly::Polynomial;
    use crate::rational::{int, ratio};

    fn idx(s: &str) -> MultiIndex {
        MultiIndex::parse(s).unwrap()
    }

    #[test]
    fn fiducial_frame() {
        let f = make_fiducial_frame();
        assert!(f.is_valid());
        assert_eq!(f.theta(), &DifferentialForm::dx(0));
        assert_eq!(f.theta_of(f.gamma_components()), int(1));
        for x in f.spatial_components() {
            assert_eq!(f.theta_of(x), int(0));
        }
        assert!(f.theta().exterior_derivative().is_zero());
    }

    #[test]
    fn boost_frame_components() {
        let f0 = make_fiducial_frame();
        let f1 = make_boost_frame(&f0, 1, &ratio(3, 5)).unwrap();
        assert_eq!(f1.gamma_components(), &[ratio(5, 4), ratio(3, 4), int(0), int(0)]);
        assert_eq!(f1.theta_of(f1.gamma_components()), int(1));
        assert_eq!(f1.theta_components(), &[ratio(5, 4), ratio(-3, 4), int(0), int(0)]);
        assert!(f1.is_valid());
        let f2 = make_boost_frame(&f0, 2, &ratio(3, 5)).unwrap();
        assert_eq!(f2.spatial_components()[0], f0.spatial_components()[0]);
        assert_eq!(f2.spatial_components()[1], [ratio(3, 4), int(0), ratio(5, 4), int(0)]);
    }

    #[test]
    fn boost_rejects_bad_parameters() {
        let f0 = make_fiducial_frame();
        assert!(matches!(make_boost_frame(&f0, 1, &int(1)), Err(Error::NonTimelikeBoost(_))));
        assert!(matches!(make_boost_frame(&f0, 1, &int(0)), Err(Error::NonTimelikeBoost(_))));
        assert!(matches!(make_boost_frame(&f0, 1, &ratio(-1, 2)), Err(Error::NonTimelikeBoost(_))));
        assert_eq!(make_boost_frame(&f0, 4, &ratio(1, 2)), Err(Error::InvalidAxis(4)));
    }

    #[test]
    fn irrational_gamma_still_gives_exact_dual_basis() {
        let fam = FrameFamily::new(ratio(1, 2)).unwrap();
        assert!(!fam.gamma_is_exact());
        let g = rational::to_f64(fam.gamma());
        assert!((g - 2.0 / 3f64.sqrt()).abs() < 1e-15);
        for f in fam.frames() {
            assert!(f.is_valid());
        }
        assert!(fam.mutual_objective_existence());
    }

    #[test]
    fn decomposition_examples() {
        let f = make_fiducial_frame();
        let dtdx = DifferentialForm::basis(idx("01"));
        let dxdy = DifferentialForm::basis(idx("12"));
        let dydz = DifferentialForm::basis(idx("23"));
        assert_eq!(f.decompose(&dtdx), (DifferentialForm::zero(2), dtdx.clone()));
        assert_eq!(f.decompose(&dxdy), (dxdy.clone(), DifferentialForm::zero(2)));
        assert_eq!(f.decompose(&(&dtdx + &dydz)), (dydz, dtdx));
        let s = DifferentialForm::scalar(Polynomial::var(1));
        assert_eq!(f.decompose(&s), (s.clone(), DifferentialForm::zero(0)));
        let vol = DifferentialForm::basis(MultiIndex::VOLUME);
        assert_eq!(f.decompose(&vol), (DifferentialForm::zero(4), vol));
    }

    #[test]
    fn d_perp_examples() {
        let f = make_fiducial_frame();
        let t_dxdy = DifferentialForm::monomial(idx("12"), Polynomial::var(0));
        assert!(f.d_perp(&t_dxdy).is_zero());
        let x_dydz = DifferentialForm::monomial(idx("23"), Polynomial::var(1));
        assert_eq!(f.d_perp(&x_dydz), DifferentialForm::basis(idx("123")));
        let fam = FrameFamily::default();
        for fr in fam.frames() {
            assert!(fr.d_perp(&DifferentialForm::basis(idx("013"))).is_zero());
        }
    }

    #[test]
    fn leaf_pullback_examples() {
        let f = make_fiducial_frame();
        let dtdx = DifferentialForm::basis(idx("01"));
        assert!(f.leaf_pullback(&int(3), &dtdx).is_zero());
        let t_dxdy = DifferentialForm::monomial(idx("12"), Polynomial::var(0));
        assert_eq!(
            f.leaf_pullback(&int(5), &t_dxdy),
            DifferentialForm::basis(idx("12")).scale(&int(5))
        );
        let dxdy = DifferentialForm::basis(idx("12"));
        assert_eq!(f.leaf_pullback(&ratio(-2, 7), &dxdy), dxdy);
        let fam = FrameFamily::default();
        for fr in fam.frames() {
            assert!(fr.leaf_pullback(&int(1), fr.theta()).is_zero());
        }
    }

    #[test]
    fn family_mutual_existence() {
        let fam = FrameFamily::default();
        assert!(fam.gamma_is_exact());
        assert_eq!(fam.gamma(), &ratio(5, 4));
        assert!(fam.mutual_objective_existence());
        assert_eq!(fam.frame(3).label(), 3);
    }
}
