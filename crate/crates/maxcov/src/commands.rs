//! The three batch commands. Each returns its rows and whether every checked
//! value lies within tolerance.

use maxcov_core::form::point_to_f64;
use maxcov_core::maxwell::{self, covariantize, ConstraintEvaluator, EMFieldState, StateConstraints};
use maxcov_core::quadrature::{self, AxisBox};
use maxcov_core::rational::{self, Rational};
use maxcov_core::reconstruction::{direct_components, Reconstructed3Form};
use maxcov_core::sampling::sample_points;
use maxcov_core::{FrameFamily, Point};

use crate::error::Result;
use crate::output::{Row, Value};
use crate::scenario::{Backend, Scenario};

/// Labels of the reconstructed 3-form components in unknown order.
pub const COMPONENTS_3FORM: [&str; 4] = ["X1X2X3", "GX2X3", "GX1X3", "GX1X2"];

/// Default tolerance on Stokes deltas in `report`.
pub const STOKES_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// `None` selects every frame of the family.
    pub frame: Option<usize>,
    pub points: Option<usize>,
    pub seed: Option<u64>,
    pub oracle: bool,
    pub tol: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub rows: Vec<Row>,
    pub pass: bool,
}

struct Context {
    scenario: Scenario,
    family: FrameFamily,
    state: EMFieldState,
    points: Vec<Point>,
    frames: Vec<usize>,
    tol: f64,
}

impl Context {
    fn new(scenario: Scenario, opts: &Options) -> Result<Self> {
        let family = scenario.family();
        let state = scenario.state()?;
        let points = sample_points(
            opts.seed.unwrap_or(scenario.seed),
            opts.points.unwrap_or(scenario.sample_count),
        );
        let frames = match opts.frame {
            Some(mu) if mu < 4 => vec![mu],
            Some(mu) => {
                return Err(crate::error::CliError::Config {
                    path: "--frame".into(),
                    message: format!("frame {mu} out of range 0..=3"),
                })
            }
            None => (0..4).collect(),
        };
        let tol = opts.tol.unwrap_or_else(|| scenario.tolerance());
        Ok(Self {
            scenario,
            family,
            state,
            points,
            frames,
            tol,
        })
    }

    fn value(&self, r: Rational) -> Value {
        match self.scenario.backend {
            Backend::Polynomial => Value::Exact(r),
            Backend::Jet => Value::Float(rational::to_f64(&r)),
        }
    }

    fn row(&self, frame: usize, i: usize, quantity: &str, component: &str, value: Value) -> Row {
        Row {
            frame,
            point_index: i,
            point: self.points[i].clone(),
            quantity: quantity.to_string(),
            component: component.to_string(),
            value,
        }
    }

    fn push_3form(&self, rows: &mut Vec<Row>, i: usize, quantity: &str, r: &Reconstructed3Form) {
        for (c, v) in COMPONENTS_3FORM.iter().zip(r.components()) {
            rows.push(self.row(0, i, quantity, c, self.value(v)));
        }
    }
}

/// Frame-wise constraint residuals `d_⊥F_⊥` and `d_⊥G_⊥ − J_⊥`.
pub fn check(scenario: Scenario, opts: &Options) -> Result<Outcome> {
    let ctx = Context::new(scenario, opts)?;
    let eval = StateConstraints::new(&ctx.family, &ctx.state);
    let mut rows = Vec::new();
    for &mu in &ctx.frames {
        for (i, p) in ctx.points.iter().enumerate() {
            let (m, g) = eval.transversal_residuals(mu, p)?;
            rows.push(ctx.row(mu, i, "magnetic", COMPONENTS_3FORM[0], ctx.value(m)));
            rows.push(ctx.row(mu, i, "gauss", COMPONENTS_3FORM[0], ctx.value(g)));
        }
    }
    let pass = rows.iter().all(|r| r.value.within(ctx.tol));
    Ok(Outcome { rows, pass })
}

/// Covariant residuals `dF` and `dG − J` reconstructed from the four frames.
pub fn covariantize_cmd(scenario: Scenario, opts: &Options) -> Result<Outcome> {
    let ctx = Context::new(scenario, opts)?;
    let eval = StateConstraints::new(&ctx.family, &ctx.state);
    let out = covariantize(&ctx.family, &eval, &ctx.points)?;
    let mut rows = Vec::new();
    let mut checked = Vec::new();
    let df = ctx.state.f.exterior_derivative();
    let dg_j = &ctx.state.g.exterior_derivative() - &ctx.state.j;
    for (i, r) in out.iter().enumerate() {
        ctx.push_3form(&mut rows, i, "dF", &r.df);
        ctx.push_3form(&mut rows, i, "dG-J", &r.dg_minus_j);
        checked.extend(r.df.components().into_iter().chain(r.dg_minus_j.components()));
        if opts.oracle {
            ctx.push_3form(&mut rows, i, "dF_direct", &direct_components(&df, ctx.family.frame(0), &r.point)?);
            ctx.push_3form(&mut rows, i, "dG-J_direct", &direct_components(&dg_j, ctx.family.frame(0), &r.point)?);
        }
    }
    let pass = checked.into_iter().all(|v| ctx.value(v).within(ctx.tol));
    Ok(Outcome { rows, pass })
}

/// Invariant coefficients at every sample point, and flux checks on a unit
/// box anchored at each point in the leaf of each selected frame.
///
/// `stokes_B`, `stokes_D`: outward flux minus the volume integral of the
/// leaf derivative. `flux_B`: outward magnetic flux. `flux_D_minus_rho`:
/// outward electric flux minus enclosed charge. The exit status depends on
/// the Stokes deltas and, for convection scenarios, on `G∧G = 0` and
/// `G∧⋆G ≥ 0`.
pub fn report(scenario: Scenario, opts: &Options) -> Result<Outcome> {
    let ctx = Context::new(scenario, opts)?;
    let inv = maxwell::invariants(&ctx.state);
    let coeffs = inv.coefficients();
    let stokes_tol = opts.tol.unwrap_or(STOKES_TOL);
    let mut rows = Vec::new();
    let mut pass = true;
    for (i, p) in ctx.points.iter().enumerate() {
        for (name, c) in maxwell::Invariants::NAMES.iter().zip(&coeffs) {
            let v = if c.is_exact() {
                Value::Exact(c.eval(p)?)
            } else {
                Value::Float(c.eval_f64(&point_to_f64(p)))
            };
            if ctx.scenario.convection.is_some() {
                match *name {
                    "G^G" => pass &= v.within(ctx.tol),
                    "G^*G" => pass &= v.to_f64() >= -ctx.tol,
                    _ => {}
                }
            }
            rows.push(ctx.row(0, i, name, "GX1X2X3", v));
        }
    }
    let n = ctx.scenario.quadrature_order;
    for &mu in &ctx.frames {
        let frame = ctx.family.frame(mu);
        for (i, p) in ctx.points.iter().enumerate() {
            let fields = maxwell::frame_fields(frame, &ctx.state, &p[0]);
            let lo = [1, 2, 3].map(|k| rational::to_f64(&p[k]));
            let bx = AxisBox {
                lo,
                hi: lo.map(|c| c + 1.0),
            };
            let stokes_b = maxwell::stokes_delta(&fields.b, &bx, n)?;
            let stokes_d = maxwell::stokes_delta(&fields.d, &bx, n)?;
            let flux_b = quadrature::closed_surface_flux(&fields.b, &bx, n)?;
            let gauss = quadrature::closed_surface_flux(&fields.d, &bx, n)? - quadrature::volume_integral(&fields.rho, &bx, n)?;
            pass &= stokes_b.abs() <= stokes_tol && stokes_d.abs() <= stokes_tol;
            for (q, v) in [
                ("stokes_B", stokes_b),
                ("stokes_D", stokes_d),
                ("flux_B", flux_b),
                ("flux_D_minus_rho", gauss),
            ] {
                rows.push(ctx.row(mu, i, q, "box", Value::Float(v)));
            }
        }
    }
    Ok(Outcome { rows, pass })
}
