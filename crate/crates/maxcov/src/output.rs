//! CSV rows with a fixed header and locale-independent numbers.

use std::io::Write;

use maxcov_core::rational::{self, Rational};
use maxcov_core::Point;

use crate::error::Result;

pub const HEADER: [&str; 9] = ["frame", "point_index", "t", "x", "y", "z", "quantity", "component", "value"];

/// Exact values print as `p/q`; floating values as the shortest string that
/// parses back to the same `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn abs(&self) -> f64 {
        match self {
            Value::Exact(r) => rational::to_f64(r).abs(),
            Value::Float(v) => v.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r == &rational::zero(),
            Value::Float(v) => *v == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational::to_f64(r),
            Value::Float(v) => *v,
        }
    }

    /// `|value| <= tol`, exactly when `tol == 0`.
    pub fn within(&self, tol: f64) -> bool {
        if tol == 0.0 {
            self.is_zero()
        } else {
            self.abs() <= tol
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&rational::format(r)),
            Value::Float(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub frame: usize,
    pub point_index: usize,
    pub point: Point,
    pub quantity: String,
    pub component: String,
    pub value: Value,
}

pub fn write_rows<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        let coords = r.point.clone().map(|c| rational::format(&c));
        w.write_record([
            r.frame.to_string().as_str(),
            r.point_index.to_string().as_str(),
            &coords[0],
            &coords[1],
            &coords[2],
            &coords[3],
            &r.quantity,
            &r.component,
            &r.value.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
