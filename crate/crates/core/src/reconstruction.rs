//! Pointwise reconstruction of spacetime forms from the transversal
//! components seen in a boosted frame family.
//!
//! A 3-form `J` has a single transversal component in each frame,
//! `J(X_1, X_2, X_3)`, and three temporal components `i_Γ J(X_a, X_b)` in
//! the fiducial frame. The four transversal samples of the family determine
//! all four fiducial components. Two independent routes are provided: the
//! closed-form expressions obtained by expanding each boosted spatial basis
//! in the fiducial one, and a general exact linear solve.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::form::{minor, DifferentialForm, MultiIndex, Point};
use crate::frames::{FrameFamily, ReferenceFrame};
use crate::linalg;
use crate::rational::{self, Rational};

/// `J(X_1^(μ), X_2^(μ), X_3^(μ))` at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalSample3 {
    pub frame_label: usize,
    pub value: Rational,
}

/// Fiducial components of a 3-form at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstructed3Form {
    /// `J(X_1, X_2, X_3)`.
    pub perp_value: Rational,
    /// `i_Γ J` on the pairs `(X_2, X_3)`, `(X_1, X_3)`, `(X_1, X_2)`.
    pub par_values: [Rational; 3],
}

/// Frame-0 basis subsets matching the unknowns `(perp, par_23, par_13, par_12)`,
/// with `0` standing for `Γ` and `k` for `X_k`.
const UNKNOWN_SUBSETS: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

impl Reconstructed3Form {
    pub fn zero() -> Self {
        Self {
            perp_value: Rational::zero(),
            par_values: std::array::from_fn(|_| Rational::zero()),
        }
    }

    /// The values in unknown order `(perp, par_23, par_13, par_12)`.
    pub fn components(&self) -> [Rational; 4] {
        [
            self.perp_value.clone(),
            self.par_values[0].clone(),
            self.par_values[1].clone(),
            self.par_values[2].clone(),
        ]
    }

    fn from_components(c: &[Rational]) -> Self {
        Self {
            perp_value: c[0].clone(),
            par_values: [c[1].clone(), c[2].clone(), c[3].clone()],
        }
    }

    /// The constant 3-form `θ∧J_∥ + J_⊥` with these components in `frame`.
    pub fn assemble(&self, frame: &ReferenceFrame) -> DifferentialForm {
        let dual = frame.dual_basis();
        let mut out = DifferentialForm::zero(3);
        for (value, subset) in self.components().iter().zip(UNKNOWN_SUBSETS) {
            let mut term = DifferentialForm::scalar(value.clone());
            for a in subset {
                term = term
                    .wedge(&DifferentialForm::constant_one_form(&dual[a]))
                    .expect("grade at most 3");
            }
            out = &out + &term;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_components(&self.components().map(|v| v * c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.components(), other.components());
        Self::from_components(&std::array::from_fn::<_, 4, _>(|i| &a[i] + &b[i]))
    }
}

fn check_grade(form: &DifferentialForm, expected: usize) -> Result<()> {
    if form.grade() != expected {
        return Err(Error::GradeMismatch {
            expected,
            found: form.grade(),
        });
    }
    Ok(())
}

/// Evaluates `J` on each frame's spatial basis at `p`.
pub fn transversal_values(j: &DifferentialForm, family: &FrameFamily, p: &Point) -> Result<[TransversalSample3; 4]> {
    check_grade(j, 3)?;
    let mut out = Vec::with_capacity(4);
    for frame in family.frames() {
        out.push(TransversalSample3 {
            frame_label: frame.label(),
            value: j.evaluate_on(frame.spatial_components(), p)?,
        });
    }
    Ok(out.try_into().expect("four frames"))
}

/// Direct evaluation of the fiducial components of `J` at `p`. Jet-backed
/// forms are evaluated in floating point.
pub fn direct_components(j: &DifferentialForm, frame: &ReferenceFrame, p: &Point) -> Result<Reconstructed3Form> {
    check_grade(j, 3)?;
    let [x1, x2, x3] = frame.spatial_components().clone();
    let g = frame.gamma_components().clone();
    Ok(Reconstructed3Form {
        perp_value: j.value_on(&[x1.clone(), x2.clone(), x3.clone()], p)?,
        par_values: [
            j.value_on(&[g.clone(), x2.clone(), x3.clone()], p)?,
            j.value_on(&[g.clone(), x1.clone(), x3], p)?,
            j.value_on(&[g, x1, x2], p)?,
        ],
    })
}

fn ordered_samples(samples: &[TransversalSample3; 4]) -> Result<[&Rational; 4]> {
    let mut slots: [Option<&Rational>; 4] = [None; 4];
    for s in samples {
        match slots.get_mut(s.frame_label) {
            Some(slot @ None) => *slot = Some(&s.value),
            _ => return Err(Error::FrameLabels(4)),
        }
    }
    Ok(slots.map(|s| s.expect("all four labels present")))
}

/// Closed-form reconstruction:
///
/// - `i_Γ J(X_2, X_3) = (s_1/γ − s_0)/β`
/// - `i_Γ J(X_1, X_3) = (−s_2/γ + s_0)/β`
/// - `i_Γ J(X_1, X_2) = (s_3/γ − s_0)/β`
///
/// where `s_μ` is the transversal sample of frame `μ`.
pub fn reconstruct_3form_printed(
    samples: &[TransversalSample3; 4],
    beta: &Rational,
    gamma: &Rational,
) -> Result<Reconstructed3Form> {
    if beta.is_zero() {
        return Err(Error::DegenerateBoost);
    }
    if gamma.is_zero() {
        return Err(Error::Singular);
    }
    let [s0, s1, s2, s3] = ordered_samples(samples)?;
    let inv_beta = rational::one() / beta;
    let inv_gamma = rational::one() / gamma;
    Ok(Reconstructed3Form {
        perp_value: s0.clone(),
        par_values: [
            &inv_beta * (&inv_gamma * s1 - s0),
            &inv_beta * (-(&inv_gamma * s2) + s0),
            &inv_beta * (&inv_gamma * s3 - s0),
        ],
    })
}

/// Reconstruction by expanding every frame's spatial basis in the fiducial
/// basis `(Γ, X_1, X_2, X_3)` and solving the resulting 4×4 system exactly.
pub fn reconstruct_3form_solve(samples: &[TransversalSample3; 4], family: &FrameFamily) -> Result<Reconstructed3Form> {
    let ordered = ordered_samples(samples)?;
    let fiducial = family.frame(0);
    let mut rows = Vec::with_capacity(4);
    for frame in family.frames() {
        let coords: Vec<[Rational; 4]> = frame
            .spatial_components()
            .iter()
            .map(|v| fiducial.frame_coordinates(v))
            .collect();
        let row: Vec<Rational> = UNKNOWN_SUBSETS
            .iter()
            .map(|s| minor(&coords, MultiIndex::from_indices(s).expect("sorted")))
            .collect();
        rows.push(row);
    }
    let rhs: Vec<Rational> = ordered.iter().map(|v| (*v).clone()).collect();
    let sol = linalg::solve(&rows, &rhs)?;
    Ok(Reconstructed3Form::from_components(&sol))
}

/// `F(X_a^(μ), X_b^(μ))` for the pairs `(1,2)`, `(1,3)`, `(2,3)` at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalSample2 {
    pub frame_label: usize,
    pub values: [Rational; 3],
}

const SPATIAL_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Evaluates a 2-form on the spatial pairs of frames 0, 1 and 2 at `p`.
pub fn transversal_values_2form(f: &DifferentialForm, family: &FrameFamily, p: &Point) -> Result<[TransversalSample2; 3]> {
    check_grade(f, 2)?;
    let mut out = Vec::with_capacity(3);
    for frame in &family.frames()[..3] {
        let x = frame.spatial_components();
        let mut values: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        for (k, (a, b)) in SPATIAL_PAIRS.iter().enumerate() {
            values[k] = f.evaluate_on(&[x[*a].clone(), x[*b].clone()], p)?;
        }
        out.push(TransversalSample2 {
            frame_label: frame.label(),
            values,
        });
    }
    Ok(out.try_into().expect("three frames"))
}

/// Recovers the temporal components `i_Γ F(X_j)`, `j = 1, 2, 3`, of a 2-form
/// in the fiducial frame from its transversal values in frames 0, 1 and 2.
pub fn reconstruct_2form(samples: &[TransversalSample2; 3], family: &FrameFamily) -> Result<[Rational; 3]> {
    if family.beta().is_zero() {
        return Err(Error::DegenerateBoost);
    }
    let fiducial = family.frame(0);
    let unknowns: Vec<MultiIndex> = MultiIndex::all_of_grade(2).collect();
    let mut rows = Vec::with_capacity(9);
    let mut rhs = Vec::with_capacity(9);
    for sample in samples {
        if sample.frame_label > 2 {
            return Err(Error::FrameLabels(3));
        }
        let frame = family.frame(sample.frame_label);
        let coords: Vec<[Rational; 4]> = frame
            .spatial_components()
            .iter()
            .map(|v| fiducial.frame_coordinates(v))
            .collect();
        for (k, (a, b)) in SPATIAL_PAIRS.iter().enumerate() {
            let pair = [coords[*a].clone(), coords[*b].clone()];
            rows.push(unknowns.iter().map(|s| minor(&pair, *s)).collect());
            rhs.push(sample.values[k].clone());
        }
    }
    let sol = linalg::solve(&rows, &rhs)?;
    let component = |s: &str| {
        let idx = MultiIndex::parse(s).expect("valid");
        sol[unknowns.iter().position(|u| *u == idx).expect("listed")].clone()
    };
    Ok([component("01"), component("02"), component("03")])
}
