//! Gauss–Legendre rules and tensor-product integration over axis-aligned
//! rectangles and boxes in a leaf.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::form::{DifferentialForm, MultiIndex};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, refined by Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Rule mapped to `[a, b]`.
fn mapped_rule(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
    x.iter().zip(&w).map(|(xi, wi)| (mid + half * xi, half * wi)).collect()
}

/// An oriented axis-aligned rectangle in a leaf with spatial coordinates
/// `(ξ_1, ξ_2, ξ_3)`. It is parametrized by `(u, v) -> ξ` with `u` along
/// `axes.0` and `v` along `axes.1`; the orientation is `dξ_{axes.0}∧dξ_{axes.1}`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Rectangle {
    pub axes: (usize, usize),
    pub level: f64,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
}

impl Rectangle {
    fn fixed_axis(&self) -> usize {
        6 - self.axes.0 - self.axes.1
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.axes;
        if !(1..=3).contains(&a) || !(1..=3).contains(&b) || a == b {
            return Err(Error::DegenerateRectangle(format!("axes {:?}", self.axes)));
        }
        if !(self.u_range.0 < self.u_range.1) || !(self.v_range.0 < self.v_range.1) {
            return Err(Error::DegenerateRectangle(format!(
                "ranges {:?} x {:?}",
                self.u_range, self.v_range
            )));
        }
        Ok(())
    }
}

/// `∫_rect ω` for a leaf 2-form, tensor-product rule of order `n`.
pub fn flux_integral(omega: &DifferentialForm, rect: &Rectangle, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::QuadratureOrder(n));
    }
    if omega.grade() != 2 {
        return Err(Error::GradeMismatch {
            expected: 2,
            found: omega.grade(),
        });
    }
    rect.validate()?;
    let (a, b) = rect.axes;
    let index = MultiIndex::from_indices(&[a.min(b), a.max(b)]).expect("distinct axes");
    let sign = if a < b { 1.0 } else { -1.0 };
    let coeff = omega.coefficient(index);
    if coeff.is_zero() {
        return Ok(0.0);
    }
    let c = rect.fixed_axis();
    let mut total = 0.0;
    for (u, wu) in mapped_rule(n, rect.u_range.0, rect.u_range.1) {
        for (v, wv) in mapped_rule(n, rect.v_range.0, rect.v_range.1) {
            let mut p = [0.0; 4];
            p[a] = u;
            p[b] = v;
            p[c] = rect.level;
            total += wu * wv * coeff.eval_f64(&p);
        }
    }
    Ok(sign * total)
}

/// An axis-aligned box `[lo, hi]` in leaf coordinates `(ξ_1, ξ_2, ξ_3)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AxisBox {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl AxisBox {
    pub fn unit() -> Self {
        Self {
            lo: [0.0; 3],
            hi: [1.0; 3],
        }
    }

    /// The six faces, oriented by the outward normal.
    pub fn faces(&self) -> [Rectangle; 6] {
        let range = |k: usize| (self.lo[k - 1], self.hi[k - 1]);
        let face = |axes: (usize, usize), level: f64| Rectangle {
            axes,
            level,
            u_range: range(axes.0),
            v_range: range(axes.1),
        };
        [
            face((2, 3), self.hi[0]),
            face((3, 2), self.lo[0]),
            face((3, 1), self.hi[1]),
            face((1, 3), self.lo[1]),
            face((1, 2), self.hi[2]),
            face((2, 1), self.lo[2]),
        ]
    }
}

/// Outward flux of a leaf 2-form through the boundary of the box.
pub fn closed_surface_flux(omega: &DifferentialForm, bx: &AxisBox, n: usize) -> Result<f64> {
    bx.faces().iter().map(|f| flux_integral(omega, f, n)).sum()
}

/// `∫_box ω` for a leaf 3-form.
pub fn volume_integral(omega: &DifferentialForm, bx: &AxisBox, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::QuadratureOrder(n));
    }
    if omega.grade() != 3 {
        return Err(Error::GradeMismatch {
            expected: 3,
            found: omega.grade(),
        });
    }
    if (0..3).any(|k| !(bx.lo[k] < bx.hi[k])) {
        return Err(Error::DegenerateRectangle(format!("box {:?}", bx)));
    }
    let coeff = omega.coefficient(MultiIndex::parse("123").expect("valid"));
    if coeff.is_zero() {
        return Ok(0.0);
    }
    let rules: Vec<Vec<(f64, f64)>> = (0..3).map(|k| mapped_rule(n, bx.lo[k], bx.hi[k])).collect();
    let mut total = 0.0;
    for (x, wx) in &rules[0] {
        for (y, wy) in &rules[1] {
            for (z, wz) in &rules[2] {
                total += wx * wy * wz * coeff.eval_f64(&[0.0, *x, *y, *z]);
            }
        }
    }
    Ok(total)
}
