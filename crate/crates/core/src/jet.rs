//! Second-order forward-mode jets in the four spacetime coordinates.
//!
//! A [`Jet`] carries a value, its gradient and its Hessian. Jet-backed
//! scalar fields are closures `&[Jet; 4] -> Jet`; seeding the inputs with
//! [`Jet::variable`] propagates exact derivatives through the chain rule.
//! Taking a partial derivative shifts the jet down one order, so the
//! Hessian of a differentiated jet is unknown and reported as NaN.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Jet {
    pub val: f64,
    pub grad: [f64; 4],
    pub hess: [[f64; 4]; 4],
}

impl Jet {
    pub fn constant(val: f64) -> Self {
        Self {
            val,
            grad: [0.0; 4],
            hess: [[0.0; 4]; 4],
        }
    }

    /// Coordinate `i` evaluated at `x`.
    pub fn variable(i: usize, x: f64) -> Self {
        let mut j = Self::constant(x);
        j.grad[i] = 1.0;
        j
    }

    /// Seeds all four coordinates at a point.
    pub fn seed(p: &[f64; 4]) -> [Jet; 4] {
        [
            Self::variable(0, p[0]),
            Self::variable(1, p[1]),
            Self::variable(2, p[2]),
            Self::variable(3, p[3]),
        ]
    }

    pub fn partial(&self, i: usize) -> Self {
        Self {
            val: self.grad[i],
            grad: self.hess[i],
            hess: [[f64::NAN; 4]; 4],
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = *self;
        out.val *= c;
        for a in 0..4 {
            out.grad[a] *= c;
            for b in 0..4 {
                out.hess[a][b] *= c;
            }
        }
        out
    }

    /// Applies a scalar function given its value and first two derivatives at `self.val`.
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut out = Self::constant(f0);
        for a in 0..4 {
            out.grad[a] = f1 * self.grad[a];
            for b in 0..4 {
                out.hess[a][b] = f2 * self.grad[a] * self.grad[b] + f1 * self.hess[a][b];
            }
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn exp(&self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    pub fn powi(&self, n: i32) -> Self {
        match n {
            0 => Self::constant(1.0),
            1 => *self,
            _ => {
                let x = self.val;
                let nf = f64::from(n);
                self.chain(x.powi(n), nf * x.powi(n - 1), nf * (nf - 1.0) * x.powi(n - 2))
            }
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self.val += rhs.val;
        for a in 0..4 {
            self.grad[a] += rhs.grad[a];
            for b in 0..4 {
                self.hess[a][b] += rhs.hess[a][b];
            }
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::constant(self.val * rhs.val);
        for a in 0..4 {
            out.grad[a] = self.grad[a] * rhs.val + self.val * rhs.grad[a];
            for b in 0..4 {
                out.hess[a][b] = self.hess[a][b] * rhs.val
                    + self.grad[a] * rhs.grad[b]
                    + self.grad[b] * rhs.grad[a]
                    + self.val * rhs.hess[a][b];
            }
        }
        out
    }
}
