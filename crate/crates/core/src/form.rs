//! Graded exterior algebra of differential forms on R^4.
//!
//! Coordinates are ordered `(t, x, y, z)` with index 0 the time coordinate.
//! A form of grade `k` stores one [`ScalarField`] coefficient per strictly
//! increasing multi-index of size `k`; absent keys are zero coefficients.
//! All operations are pure and return new forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Num, Zero};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};
use crate::scalar::ScalarField;

/// An exact spacetime point `(t, x, y, z)`.
pub type Point = [Rational; 4];

pub fn point_to_f64(p: &Point) -> [f64; 4] {
    std::array::from_fn(|i| rational::to_f64(&p[i]))
}

/// A strictly increasing subset of `{0, 1, 2, 3}`, stored as a bit mask.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);
    pub const VOLUME: MultiIndex = MultiIndex(0b1111);

    pub fn single(i: usize) -> Self {
        assert!(i < 4, "coordinate index {i} out of range");
        MultiIndex(1 << i)
    }

    /// Accepts only strictly increasing indices below 4.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        let mut last = None;
        for &i in indices {
            if i >= 4 || last.is_some_and(|l| i <= l) {
                return Err(Error::MultiIndex(format!("{indices:?}")));
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Ok(MultiIndex(mask))
    }

    /// Parses digit strings such as `"01"` for `dt∧dx`; `""` is the scalar index.
    pub fn parse(s: &str) -> Result<Self> {
        let digits: Option<Vec<usize>> = s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        match digits {
            Some(d) => Self::from_indices(&d).map_err(|_| Error::MultiIndex(s.to_string())),
            None => Err(Error::MultiIndex(s.to_string())),
        }
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn complement(self) -> Self {
        MultiIndex(!self.0 & 0b1111)
    }

    pub fn without(self, i: usize) -> Self {
        MultiIndex(self.0 & !(1 << i))
    }

    /// All multi-indices of the given grade, in increasing order.
    pub fn all_of_grade(grade: usize) -> impl Iterator<Item = MultiIndex> {
        (0u8..16).map(MultiIndex).filter(move |m| m.grade() == grade)
    }

    /// Sign of sorting the concatenation `self ++ other`; `None` when they overlap.
    pub fn merge_sign(self, other: MultiIndex) -> Option<i8> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: usize = self
            .indices()
            .map(|i| other.indices().filter(|&j| j < i).count())
            .sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A vector field in the coordinate basis `(∂t, ∂x, ∂y, ∂z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub components: [ScalarField; 4],
}

impl VectorField {
    pub fn new(components: [ScalarField; 4]) -> Self {
        Self { components }
    }

    pub fn constant(c: [Rational; 4]) -> Self {
        Self {
            components: c.map(ScalarField::constant),
        }
    }

    /// The coordinate vector field `∂_i`.
    pub fn basis(i: usize) -> Self {
        Self::constant(std::array::from_fn(|j| if i == j { rational::one() } else { rational::zero() }))
    }

    pub fn as_constant(&self) -> Option<[Rational; 4]> {
        let c: Vec<Rational> = self.components.iter().map(ScalarField::as_constant).collect::<Option<_>>()?;
        c.try_into().ok()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        Self::new(std::array::from_fn(|i| self.components[i].add(&other.components[i])))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        Self::new(std::array::from_fn(|i| self.components[i].scale(c)))
    }

    pub fn eval(&self, p: &Point) -> Result<[Rational; 4]> {
        let v = [
            self.components[0].eval(p)?,
            self.components[1].eval(p)?,
            self.components[2].eval(p)?,
            self.components[3].eval(p)?,
        ];
        Ok(v)
    }

    pub fn eval_f64(&self, p: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| self.components[i].eval_f64(p))
    }
}

/// Diagonal metric signature with orientation `dt∧dx∧dy∧dz`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MetricSignature {
    pub signs: [i8; 4],
}

impl MetricSignature {
    pub const MINKOWSKI: MetricSignature = MetricSignature { signs: [1, -1, -1, -1] };

    /// `⟨e_I, e_I⟩` for the basis monomial `e_I`.
    pub fn basis_norm(&self, index: MultiIndex) -> i8 {
        index.indices().map(|i| self.signs[i]).product()
    }

    pub fn determinant_sign(&self) -> i8 {
        self.basis_norm(MultiIndex::VOLUME)
    }
}

impl Default for MetricSignature {
    fn default() -> Self {
        Self::MINKOWSKI
    }
}

#[derive(Clone, PartialEq)]
pub struct DifferentialForm {
    grade: usize,
    coeffs: BTreeMap<MultiIndex, ScalarField>,
}

impl DifferentialForm {
    pub fn zero(grade: usize) -> Self {
        assert!(grade <= 4, "grade {grade} exceeds dimension");
        Self {
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(f: impl Into<ScalarField>) -> Self {
        let mut out = Self::zero(0);
        out.add_term(MultiIndex::EMPTY, f.into());
        out
    }

    /// The constant basis monomial `e_I`.
    pub fn basis(index: MultiIndex) -> Self {
        Self::monomial(index, ScalarField::constant(rational::one()))
    }

    /// The coordinate one-form `dx^i`.
    pub fn dx(i: usize) -> Self {
        Self::basis(MultiIndex::single(i))
    }

    pub fn monomial(index: MultiIndex, f: impl Into<ScalarField>) -> Self {
        let mut out = Self::zero(index.grade());
        out.add_term(index, f.into());
        out
    }

    /// Builds a form from `(multi-index, coefficient)` pairs; repeated keys are summed.
    pub fn from_terms<I>(grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, ScalarField)>,
    {
        let mut out = Self::zero(grade);
        for (index, f) in terms {
            if index.grade() != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: index.grade(),
                });
            }
            out.add_term(index, f);
        }
        Ok(out)
    }

    /// A constant-coefficient one-form `Σ c_i dx^i`.
    pub fn constant_one_form(c: &[Rational; 4]) -> Self {
        let mut out = Self::zero(1);
        for (i, ci) in c.iter().enumerate() {
            out.add_term(MultiIndex::single(i), ScalarField::constant(ci.clone()));
        }
        out
    }

    fn add_term(&mut self, index: MultiIndex, f: ScalarField) {
        debug_assert_eq!(index.grade(), self.grade);
        if f.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&index) {
            Some(existing) => existing.add(&f),
            None => f,
        };
        if !merged.is_zero() {
            self.coeffs.insert(index, merged);
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn coefficient(&self, index: MultiIndex) -> ScalarField {
        self.coeffs.get(&index).cloned().unwrap_or_else(ScalarField::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarField)> {
        self.coeffs.iter()
    }

    /// True when no coefficient is stored. Jet coefficients are never pruned,
    /// so this is exact only for the polynomial backend.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(ScalarField::is_exact)
    }

    /// Multiplies every coefficient by a scalar field.
    pub fn mul_scalar(&self, f: &ScalarField) -> Self {
        let mut out = Self::zero(self.grade);
        for (i, c) in &self.coeffs {
            out.add_term(*i, c.mul(f));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.grade);
        for (i, f) in &self.coeffs {
            out.add_term(*i, f.scale(c));
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<Self> {
        let grade = self.grade + other.grade;
        if grade > 4 {
            return Err(Error::GradeOverflow(grade));
        }
        let mut out = Self::zero(grade);
        for (ia, fa) in &self.coeffs {
            for (ib, fb) in &other.coeffs {
                if let Some(sign) = ia.merge_sign(*ib) {
                    let prod = fa.mul(fb);
                    out.add_term(ia.union(*ib), if sign < 0 { prod.neg() } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. The derivative of a 4-form is the zero 4-form.
    pub fn exterior_derivative(&self) -> Self {
        if self.grade == 4 {
            return Self::zero(4);
        }
        let mut out = Self::zero(self.grade + 1);
        for (index, f) in &self.coeffs {
            for j in 0..4 {
                let dj = MultiIndex::single(j);
                if let Some(sign) = dj.merge_sign(*index) {
                    let df = f.partial(j);
                    out.add_term(dj.union(*index), if sign < 0 { df.neg() } else { df });
                }
            }
        }
        out
    }

    pub fn interior_product(&self, v: &VectorField) -> Result<Self> {
        if self.grade == 0 {
            return Err(Error::ContractScalar);
        }
        let mut out = Self::zero(self.grade - 1);
        for (index, f) in &self.coeffs {
            for (slot, i) in index.indices().enumerate() {
                let term = f.mul(&v.components[i]);
                out.add_term(index.without(i), if slot % 2 == 1 { term.neg() } else { term });
            }
        }
        Ok(out)
    }

    /// Cartan formula `L_v = i_v d + d i_v`.
    pub fn lie_derivative(&self, v: &VectorField) -> Self {
        let contract_d = if self.grade < 4 {
            self.exterior_derivative()
                .interior_product(v)
                .expect("derivative has positive grade")
        } else {
            Self::zero(4)
        };
        if self.grade == 0 {
            return contract_d;
        }
        let d_contract = self
            .interior_product(v)
            .expect("positive grade")
            .exterior_derivative();
        &contract_d + &d_contract
    }

    /// Pullback along an affine map `φ(p) = M p + b`.
    pub fn pullback_affine(&self, map: &AffineMap) -> Self {
        let pulled_basis: Vec<DifferentialForm> = (0..4)
            .map(|i| DifferentialForm::constant_one_form(&map.matrix[i]))
            .collect();
        let mut out = Self::zero(self.grade);
        for (index, f) in &self.coeffs {
            let coeff = f.compose_affine(&map.matrix, &map.offset);
            let mut term = DifferentialForm::scalar(coeff);
            for i in index.indices() {
                term = term.wedge(&pulled_basis[i]).expect("grade bounded by source");
            }
            out = &out + &term;
        }
        out
    }

    /// Hodge star of the given diagonal metric, defined by
    /// `e_I ∧ ⋆e_I = ⟨e_I, e_I⟩ vol`.
    pub fn hodge_star_with(&self, metric: &MetricSignature) -> Self {
        let mut out = Self::zero(4 - self.grade);
        for (index, f) in &self.coeffs {
            let comp = index.complement();
            let sign = metric.basis_norm(*index) * index.merge_sign(comp).expect("disjoint");
            out.add_term(comp, if sign < 0 { f.neg() } else { f.clone() });
        }
        out
    }

    /// Minkowski Hodge star, signature (+,−,−,−).
    pub fn hodge_star(&self) -> Self {
        self.hodge_star_with(&MetricSignature::MINKOWSKI)
    }

    /// Antisymmetric multilinear evaluation `a(v_1, ..., v_k)` at `p`.
    pub fn evaluate(&self, vs: &[VectorField], p: &Point) -> Result<Rational> {
        self.check_arity(vs.len())?;
        let vals: Vec<[Rational; 4]> = vs.iter().map(|v| v.eval(p)).collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        for (index, f) in &self.coeffs {
            acc += f.eval(p)? * minor(&vals, *index);
        }
        Ok(acc)
    }

    pub fn evaluate_f64(&self, vs: &[VectorField], p: &[f64; 4]) -> Result<f64> {
        self.check_arity(vs.len())?;
        let vals: Vec<[f64; 4]> = vs.iter().map(|v| v.eval_f64(p)).collect();
        Ok(self
            .coeffs
            .iter()
            .map(|(index, f)| f.eval_f64(p) * minor(&vals, *index))
            .sum())
    }

    /// Evaluation on constant vectors given by their components.
    pub fn evaluate_on(&self, vs: &[[Rational; 4]], p: &Point) -> Result<Rational> {
        self.check_arity(vs.len())?;
        let mut acc = Rational::zero();
        for (index, f) in &self.coeffs {
            acc += f.eval(p)? * minor(vs, *index);
        }
        Ok(acc)
    }

    /// Like [`DifferentialForm::evaluate_on`], but jet coefficients are
    /// evaluated in floating point and returned as the equal dyadic rational.
    pub fn value_on(&self, vs: &[[Rational; 4]], p: &Point) -> Result<Rational> {
        if self.is_exact() {
            return self.evaluate_on(vs, p);
        }
        let fields: Vec<VectorField> = vs.iter().map(|v| VectorField::constant(v.clone())).collect();
        let v = self.evaluate_f64(&fields, &point_to_f64(p))?;
        crate::rational::from_f64(v).ok_or_else(|| Error::Rational(format!("non-finite value {v}")))
    }

    fn check_arity(&self, given: usize) -> Result<()> {
        if given != self.grade {
            return Err(Error::Arity {
                grade: self.grade,
                given,
            });
        }
        Ok(())
    }

    /// Coefficient-level equality; `None` when either side has jet coefficients.
    pub fn exact_eq(&self, other: &DifferentialForm) -> Option<bool> {
        if !self.is_exact() || !other.is_exact() {
            return None;
        }
        Some(self == other)
    }

    /// Compares all coefficients at the sample points. With `tol == 0` on
    /// exact forms the comparison is done in rational arithmetic.
    pub fn equal_sampled(&self, other: &DifferentialForm, points: &[Point], tol: f64) -> Result<bool> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        let diff = self - other;
        if tol == 0.0 && diff.is_exact() {
            for p in points {
                for f in diff.coeffs.values() {
                    if !f.eval(p)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        for p in points {
            let pf = point_to_f64(p);
            for index in MultiIndex::all_of_grade(self.grade) {
                let a = self.coefficient(index).eval_f64(&pf);
                let b = other.coefficient(index).eval_f64(&pf);
                if !((a - b).abs() <= tol) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Restricts coefficients to polynomials, if every coefficient is one.
    pub fn polynomial_coeffs(&self) -> Option<BTreeMap<MultiIndex, Polynomial>> {
        self.coeffs
            .iter()
            .map(|(i, f)| f.as_poly().map(|p| (*i, p.clone())))
            .collect()
    }
}

/// Determinant of the rows `vs[r][I_s]`.
pub(crate) fn minor<T>(vs: &[[T; 4]], index: MultiIndex) -> T
where
    T: Num + Clone + Neg<Output = T>,
{
    let cols: Vec<usize> = index.indices().collect();
    let k = cols.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut acc = T::zero();
    permutations(&mut perm, 0, 1, &mut |p, sign| {
        let prod = (0..k).fold(T::one(), |a, r| a * vs[r][cols[p[r]]].clone());
        acc = acc.clone() + if sign > 0 { prod } else { -prod };
    });
    acc
}

fn permutations(p: &mut Vec<usize>, start: usize, sign: i8, visit: &mut dyn FnMut(&[usize], i8)) {
    if start >= p.len() {
        visit(p, sign);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permutations(p, start + 1, if i == start { sign } else { -sign }, visit);
        p.swap(start, i);
    }
}

impl Add for &DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.grade, rhs.grade, "adding forms of different grade");
        let mut out = self.clone();
        for (i, f) in &rhs.coeffs {
            out.add_term(*i, f.clone());
        }
        out
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        DifferentialForm {
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|(i, f)| (*i, f.neg())).collect(),
        }
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self + &(-rhs)
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 (grade {})", self.grade);
        }
        const NAMES: [&str; 4] = ["dt", "dx", "dy", "dz"];
        for (k, (index, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})")?;
            for i in index.indices() {
                write!(f, "·{}", NAMES[i])?;
            }
        }
        Ok(())
    }
}
