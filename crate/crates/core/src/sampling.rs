//! Seeded generation of rational sample points and random polynomial forms.
//!
//! All randomness comes from SplitMix64 (Steele, Lea, Flood 2014) seeded with
//! a single `u64`. Each draw `u` is one `next_u64` output. Mappings:
//!
//! - rational: numerator `(u1 % 21) - 10`, denominator `(u2 % 10) + 1`,
//!   using two consecutive draws `u1`, `u2`;
//! - point: four rationals in coordinate order `t, x, y, z`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::form::{DifferentialForm, MultiIndex, Point};
use crate::poly::Polynomial;
use crate::rational::{ratio, Rational};

/// Deterministic sampler over SplitMix64.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..n`, by reduction modulo `n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn rational(&mut self) -> Rational {
        let num = self.below(21) as i64 - 10;
        let den = self.below(10) as i64 + 1;
        ratio(num, den)
    }

    pub fn point(&mut self) -> Point {
        std::array::from_fn(|_| self.rational())
    }

    pub fn points(&mut self, count: usize) -> Vec<Point> {
        (0..count).map(|_| self.point()).collect()
    }

    /// A polynomial with `1..=max_terms` terms and exponents at most `max_exp`
    /// in every variable. Coefficients are drawn with [`Sampler::rational`].
    pub fn polynomial(&mut self, max_terms: usize, max_exp: u32) -> Polynomial {
        let n = 1 + self.below(max_terms as u64) as usize;
        Polynomial::from_terms((0..n).map(|_| {
            let c = self.rational();
            let e = std::array::from_fn(|_| self.below(max_exp as u64 + 1) as u32);
            (c, e)
        }))
    }

    /// Like [`Sampler::polynomial`] but independent of the time coordinate.
    pub fn spatial_polynomial(&mut self, max_terms: usize, max_exp: u32) -> Polynomial {
        let n = 1 + self.below(max_terms as u64) as usize;
        Polynomial::from_terms((0..n).map(|_| {
            let c = self.rational();
            let mut e: [u32; 4] = std::array::from_fn(|_| self.below(max_exp as u64 + 1) as u32);
            e[0] = 0;
            (c, e)
        }))
    }

    /// A grade-`k` form whose coefficients are each zero with probability
    /// 1/4 and otherwise a random polynomial.
    pub fn form(&mut self, grade: usize, max_terms: usize, max_exp: u32) -> DifferentialForm {
        let mut out = DifferentialForm::zero(grade);
        for index in MultiIndex::all_of_grade(grade) {
            if self.below(4) == 0 {
                continue;
            }
            let p = self.polynomial(max_terms, max_exp);
            out = &out + &DifferentialForm::monomial(index, p);
        }
        out
    }
}

/// `count` points from a fresh sampler seeded with `seed`.
pub fn sample_points(seed: u64, count: usize) -> Vec<Point> {
    Sampler::new(seed).points(count)
}
