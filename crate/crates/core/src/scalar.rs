//! Scalar fields on R^4: exact polynomials or jet closures.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

type JetFn = dyn Fn(&[Jet; 4]) -> Jet + Send + Sync;

/// A smooth function evaluated through second-order jets.
#[derive(Clone)]
pub struct JetField(Arc<JetFn>);

impl JetField {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&[Jet; 4]) -> Jet + Send + Sync + 'static,
    {
        Self(Arc::new(f))
    }

    pub fn eval_jet(&self, p: &[Jet; 4]) -> Jet {
        (self.0)(p)
    }

    pub fn eval(&self, p: &[f64; 4]) -> Jet {
        (self.0)(&Jet::seed(p))
    }
}

#[derive(Clone)]
pub enum ScalarField {
    Poly(Polynomial),
    Jet(JetField),
}

impl ScalarField {
    pub fn zero() -> Self {
        ScalarField::Poly(Polynomial::zero())
    }

    pub fn constant(c: Rational) -> Self {
        ScalarField::Poly(Polynomial::constant(c))
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(&[Jet; 4]) -> Jet + Send + Sync + 'static,
    {
        ScalarField::Jet(JetField::new(f))
    }

    /// Only polynomial fields can be known to vanish identically.
    pub fn is_zero(&self) -> bool {
        matches!(self, ScalarField::Poly(p) if p.is_zero())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarField::Poly(_))
    }

    pub fn as_poly(&self) -> Option<&Polynomial> {
        match self {
            ScalarField::Poly(p) => Some(p),
            ScalarField::Jet(_) => None,
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(Polynomial::as_constant)
    }

    fn to_jet(&self) -> JetField {
        match self {
            ScalarField::Jet(j) => j.clone(),
            ScalarField::Poly(p) => {
                let p = p.clone();
                JetField::new(move |x| p.eval_jet(x))
            }
        }
    }

    pub fn add(&self, other: &ScalarField) -> ScalarField {
        match (self, other) {
            (ScalarField::Poly(a), ScalarField::Poly(b)) => ScalarField::Poly(a + b),
            _ if self.is_zero() => other.clone(),
            _ if other.is_zero() => self.clone(),
            _ => {
                let (a, b) = (self.to_jet(), other.to_jet());
                ScalarField::from_fn(move |x| a.eval_jet(x) + b.eval_jet(x))
            }
        }
    }

    pub fn neg(&self) -> ScalarField {
        match self {
            ScalarField::Poly(a) => ScalarField::Poly(-a),
            ScalarField::Jet(a) => {
                let a = a.clone();
                ScalarField::from_fn(move |x| -a.eval_jet(x))
            }
        }
    }

    pub fn sub(&self, other: &ScalarField) -> ScalarField {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ScalarField) -> ScalarField {
        match (self, other) {
            (ScalarField::Poly(a), ScalarField::Poly(b)) => ScalarField::Poly(a * b),
            _ if self.is_zero() || other.is_zero() => ScalarField::zero(),
            _ => {
                let (a, b) = (self.to_jet(), other.to_jet());
                ScalarField::from_fn(move |x| a.eval_jet(x) * b.eval_jet(x))
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ScalarField {
        if c.is_zero() {
            return ScalarField::zero();
        }
        match self {
            ScalarField::Poly(a) => ScalarField::Poly(a.scale(c)),
            ScalarField::Jet(a) => {
                let (a, c) = (a.clone(), rational::to_f64(c));
                ScalarField::from_fn(move |x| a.eval_jet(x).scale(c))
            }
        }
    }

    pub fn partial(&self, i: usize) -> ScalarField {
        match self {
            ScalarField::Poly(a) => ScalarField::Poly(a.partial(i)),
            ScalarField::Jet(a) => {
                let a = a.clone();
                ScalarField::from_fn(move |x| a.eval_jet(x).partial(i))
            }
        }
    }

    /// `p -> self(matrix * p + offset)`.
    pub fn compose_affine(&self, matrix: &[[Rational; 4]; 4], offset: &[Rational; 4]) -> ScalarField {
        match self {
            ScalarField::Poly(a) => ScalarField::Poly(a.compose_affine(matrix, offset)),
            ScalarField::Jet(a) => {
                let a = a.clone();
                let m = matrix.clone().map(|row| row.map(|v| rational::to_f64(&v)));
                let b = offset.clone().map(|v| rational::to_f64(&v));
                ScalarField::from_fn(move |x| {
                    let image: [Jet; 4] = std::array::from_fn(|i| {
                        (0..4).fold(Jet::constant(b[i]), |acc, j| acc + x[j].scale(m[i][j]))
                    });
                    a.eval_jet(&image)
                })
            }
        }
    }

    pub fn eval(&self, p: &[Rational; 4]) -> Result<Rational> {
        match self {
            ScalarField::Poly(a) => Ok(a.eval(p)),
            ScalarField::Jet(_) => Err(Error::NotExact),
        }
    }

    pub fn eval_f64(&self, p: &[f64; 4]) -> f64 {
        match self {
            ScalarField::Poly(a) => a.eval_f64(p),
            ScalarField::Jet(a) => a.eval(p).val,
        }
    }
}

impl From<Polynomial> for ScalarField {
    fn from(p: Polynomial) -> Self {
        ScalarField::Poly(p)
    }
}

impl From<Rational> for ScalarField {
    fn from(c: Rational) -> Self {
        ScalarField::constant(c)
    }
}

/// Polynomials compare structurally. Jet fields are equal only to the
/// very same closure.
impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarField::Poly(a), ScalarField::Poly(b)) => a == b,
            (ScalarField::Jet(a), ScalarField::Jet(b)) => Arc::ptr_eq(&a.0, &b.0),
            _ => false,
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Poly(p) => write!(f, "{p}"),
            ScalarField::Jet(_) => write!(f, "<jet>"),
        }
    }
}
