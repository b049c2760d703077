//! Sparse multivariate polynomials over exact rationals in `(t, x, y, z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::jet::Jet;
use crate::rational::{self, Rational};

pub type Exponents = [u32; 4];

/// Invariant: no stored coefficient is zero, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 4])
    }

    /// The coordinate function `x^i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exponents: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, Exponents)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = *e;
            de[i] -= 1;
            out.add_term(de, c * rational::int(i64::from(e[i])));
        }
        out
    }

    pub fn eval(&self, p: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..4 {
                if e[i] > 0 {
                    term *= num_traits::pow(p[i].clone(), e[i] as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, p: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = rational::to_f64(c);
                for i in 0..4 {
                    term *= p[i].powi(e[i] as i32);
                }
                term
            })
            .sum()
    }

    pub fn eval_jet(&self, p: &[Jet; 4]) -> Jet {
        let mut acc = Jet::constant(0.0);
        for (e, c) in &self.terms {
            let mut term = Jet::constant(rational::to_f64(c));
            for i in 0..4 {
                if e[i] > 0 {
                    term = term * p[i].powi(e[i] as i32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes `x^i -> sum_j matrix[i][j] y^j + offset[i]`.
    pub fn compose_affine(&self, matrix: &[[Rational; 4]; 4], offset: &[Rational; 4]) -> Self {
        let images: Vec<Polynomial> = (0..4)
            .map(|i| {
                let mut l = Polynomial::constant(offset[i].clone());
                for j in 0..4 {
                    l = &l + &Polynomial::var(j).scale(&matrix[i][j]);
                }
                l
            })
            .collect();
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::constant(Rational::one())]; 4];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for i in 0..4 {
                let k = e[i] as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            out = &out + &term;
        }
        out
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["t", "x", "y", "z"];
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", rational::format(c))?;
            for i in 0..4 {
                match e[i] {
                    0 => {}
                    1 => write!(f, "*{}", NAMES[i])?,
                    n => write!(f, "*{}^{}", NAMES[i], n)?,
                }
            }
        }
        Ok(())
    }
}
