//! Scenario documents: JSON text with rationals as strings.
//!
//! ```json
//! {
//!   "signature": "+---",
//!   "beta": "3/5",
//!   "backend": "polynomial",
//!   "source_mode": "potential",
//!   "fields": {
//!     "A": { "grade": 1, "coefficients": { "0": [{ "coeff": "-1", "exponents": [0, 1, 0, 0] }] } }
//!   },
//!   "sample_points": { "count": 8, "seed": 42 },
//!   "quadrature_order": 8
//! }
//! ```
//!
//! Field names by `source_mode`:
//!
//! - `potential`: `A` required, `G` optional (default `⋆F`); `F = dA`, `J = dG`.
//! - `ampere_derived`: `F` or `A`, and `G`; `J = dG`.
//! - `explicit`: any of `F`, `G`, `J`; missing fields are zero.
//!
//! An optional `convection` block replaces `fields` by a charge blob: the
//! static configuration `D = ∇φ` of the polynomial `φ(x, y, z)`, seen from a
//! frame boosted along `axis` with velocity `speed` (omit both for the blob
//! at rest). The speed must have a rational Lorentz factor, e.g. `3/5`.
//! It requires `source_mode` `ampere_derived`.

use std::collections::BTreeMap;

use maxcov_core::maxwell::{self, EMFieldState};
use maxcov_core::rational::{self, Rational};
use maxcov_core::{DifferentialForm, FrameFamily, MultiIndex, Polynomial, ScalarField};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermConfig {
    pub coeff: String,
    pub exponents: [u32; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormConfig {
    pub grade: usize,
    pub coefficients: BTreeMap<String, Vec<TermConfig>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleConfig {
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvectionConfig {
    pub blob: Vec<TermConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Polynomial,
    Jet,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceMode {
    Potential,
    AmpereDerived,
    Explicit,
}

/// The document as written on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub signature: String,
    pub beta: String,
    pub backend: Backend,
    pub source_mode: SourceMode,
    #[serde(default)]
    pub fields: BTreeMap<String, FormConfig>,
    pub sample_points: SampleConfig,
    pub quadrature_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convection: Option<ConvectionConfig>,
}

/// A validated scenario with exact polynomial fields.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub beta: Rational,
    pub backend: Backend,
    pub source_mode: SourceMode,
    pub fields: BTreeMap<String, DifferentialForm>,
    pub sample_count: usize,
    pub seed: u64,
    pub quadrature_order: usize,
    pub convection: Option<Convection>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Convection {
    pub blob: Polynomial,
    pub boost: Option<(usize, Rational)>,
}

fn config_err(path: impl Into<String>, msg: impl std::fmt::Display) -> CliError {
    CliError::Config {
        path: path.into(),
        message: msg.to_string(),
    }
}

fn parse_terms(path: &str, terms: &[TermConfig]) -> Result<Polynomial> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let c = rational::parse(&t.coeff).map_err(|e| config_err(format!("{path}[{k}].coeff"), e))?;
        parsed.push((c, t.exponents));
    }
    Ok(Polynomial::from_terms(parsed))
}

fn parse_form(name: &str, cfg: &FormConfig) -> Result<DifferentialForm> {
    let path = format!("fields.{name}");
    if cfg.grade > 4 {
        return Err(config_err(format!("{path}.grade"), format!("grade {} exceeds 4", cfg.grade)));
    }
    let mut out = DifferentialForm::zero(cfg.grade);
    for (key, terms) in &cfg.coefficients {
        let key_path = format!("{path}.coefficients.\"{key}\"");
        let index = MultiIndex::parse(key)
            .map_err(|_| config_err(&key_path, format!("invalid multi-index key \"{key}\": digits must be strictly increasing over 0123")))?;
        if index.grade() != cfg.grade {
            return Err(config_err(
                &key_path,
                format!("key \"{key}\" has grade {} but the form has grade {}", index.grade(), cfg.grade),
            ));
        }
        let p = parse_terms(&key_path, terms)?;
        out = &out + &DifferentialForm::monomial(index, p);
    }
    Ok(out)
}

fn terms_config(p: &Polynomial) -> Vec<TermConfig> {
    p.terms()
        .map(|(e, c)| TermConfig {
            coeff: rational::format(c),
            exponents: *e,
        })
        .collect()
}

fn form_config(form: &DifferentialForm) -> FormConfig {
    let coeffs = form.polynomial_coeffs().expect("scenario forms are polynomial");
    FormConfig {
        grade: form.grade(),
        coefficients: coeffs
            .iter()
            .map(|(i, p)| (i.to_string(), terms_config(p)))
            .collect(),
    }
}

fn expected_grade(name: &str) -> Option<usize> {
    match name {
        "A" => Some(1),
        "F" | "G" => Some(2),
        "J" => Some(3),
        _ => None,
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = match e.path().to_string() {
                p if p == "." => "scenario".to_string(),
                p => p,
            };
            config_err(path, e.into_inner())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn validate(&self) -> Result<Scenario> {
        if self.signature != "+---" {
            return Err(config_err("signature", format!("unsupported signature \"{}\", expected \"+---\"", self.signature)));
        }
        let beta = rational::parse(&self.beta).map_err(|e| config_err("beta", e))?;
        FrameFamily::new(beta.clone()).map_err(|e| config_err("beta", e))?;
        if self.quadrature_order < 2 {
            return Err(config_err("quadrature_order", "must be at least 2"));
        }
        let mut fields = BTreeMap::new();
        for (name, cfg) in &self.fields {
            let Some(grade) = expected_grade(name) else {
                return Err(config_err(format!("fields.{name}"), "unknown field, expected one of A, F, G, J"));
            };
            if cfg.grade != grade {
                return Err(config_err(format!("fields.{name}.grade"), format!("{name} must have grade {grade}")));
            }
            fields.insert(name.clone(), parse_form(name, cfg)?);
        }
        let has = |n: &str| fields.contains_key(n);
        match self.source_mode {
            SourceMode::Potential => {
                if !has("A") {
                    return Err(config_err("fields", "source_mode potential requires A"));
                }
                if has("F") || has("J") {
                    return Err(config_err("fields", "source_mode potential derives F and J"));
                }
            }
            SourceMode::AmpereDerived => {
                if has("J") {
                    return Err(config_err("fields.J", "source_mode ampere_derived derives J = dG"));
                }
                if has("A") && has("F") {
                    return Err(config_err("fields", "give either A or F, not both"));
                }
                if self.convection.is_none() && (!has("G") || !(has("A") || has("F"))) {
                    return Err(config_err("fields", "source_mode ampere_derived requires G and one of A, F"));
                }
            }
            SourceMode::Explicit => {
                if has("A") {
                    return Err(config_err("fields.A", "source_mode explicit takes F, G and J"));
                }
            }
        }
        let convection = match &self.convection {
            None => None,
            Some(c) => {
                if self.source_mode != SourceMode::AmpereDerived {
                    return Err(config_err("convection", "requires source_mode ampere_derived"));
                }
                if !fields.is_empty() {
                    return Err(config_err("fields", "must be empty when convection is given"));
                }
                let blob = parse_terms("convection.blob", &c.blob)?;
                if !blob.partial(0).is_zero() {
                    return Err(config_err("convection.blob", "charge blob must not depend on t"));
                }
                let boost = match (c.axis, &c.speed) {
                    (None, None) => None,
                    (Some(axis), Some(speed)) => {
                        if !(1..=3).contains(&axis) {
                            return Err(config_err("convection.axis", "expected 1, 2 or 3"));
                        }
                        let v = rational::parse(speed).map_err(|e| config_err("convection.speed", e))?;
                        let (_, exact) =
                            maxcov_core::frames::lorentz_factor(&v).map_err(|e| config_err("convection.speed", e))?;
                        if !exact {
                            return Err(config_err("convection.speed", "1 - speed^2 must be the square of a rational"));
                        }
                        Some((axis, v))
                    }
                    _ => return Err(config_err("convection", "axis and speed go together")),
                };
                Some(Convection { blob, boost })
            }
        };
        Ok(Scenario {
            beta,
            backend: self.backend,
            source_mode: self.source_mode,
            fields,
            sample_count: self.sample_points.count,
            seed: self.sample_points.seed,
            quadrature_order: self.quadrature_order,
            convection,
        })
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        ScenarioConfig::from_json(text)?.validate()
    }

    pub fn to_config(&self) -> ScenarioConfig {
        ScenarioConfig {
            signature: "+---".to_string(),
            beta: rational::format(&self.beta),
            backend: self.backend,
            source_mode: self.source_mode,
            fields: self.fields.iter().map(|(n, f)| (n.clone(), form_config(f))).collect(),
            sample_points: SampleConfig {
                count: self.sample_count,
                seed: self.seed,
            },
            quadrature_order: self.quadrature_order,
            convection: self.convection.as_ref().map(|c| ConvectionConfig {
                blob: terms_config(&c.blob),
                axis: c.boost.as_ref().map(|b| b.0),
                speed: c.boost.as_ref().map(|b| rational::format(&b.1)),
            }),
        }
    }

    pub fn family(&self) -> FrameFamily {
        FrameFamily::new(self.beta.clone()).expect("validated")
    }

    /// The exact field state described by the scenario.
    pub fn exact_state(&self) -> Result<EMFieldState> {
        let get = |n: &str, grade: usize| self.fields.get(n).cloned().unwrap_or_else(|| DifferentialForm::zero(grade));
        let state = if let Some(c) = &self.convection {
            match &c.boost {
                None => maxwell::static_charge_state(&c.blob)?,
                Some((axis, v)) => maxwell::convection_state(&c.blob, *axis, v)?,
            }
        } else {
            match self.source_mode {
                SourceMode::Potential => {
                    let f = maxwell::faraday_from_potential(&get("A", 1))?;
                    let g = match self.fields.get("G") {
                        Some(g) => g.clone(),
                        None => maxwell::constitutive_vacuum(&f)?,
                    };
                    EMFieldState::ampere_derived(f, g)?
                }
                SourceMode::AmpereDerived => {
                    let f = match self.fields.get("A") {
                        Some(a) => maxwell::faraday_from_potential(a)?,
                        None => get("F", 2),
                    };
                    EMFieldState::ampere_derived(f, get("G", 2))?
                }
                SourceMode::Explicit => EMFieldState::new(get("F", 2), get("G", 2), get("J", 3))?,
            }
        };
        Ok(state)
    }

    /// The field state on the configured backend. The jet backend wraps every
    /// polynomial coefficient as a jet field, so all later derivatives are
    /// taken by forward differentiation.
    pub fn state(&self) -> Result<EMFieldState> {
        let exact = self.exact_state()?;
        Ok(match self.backend {
            Backend::Polynomial => exact,
            Backend::Jet => EMFieldState {
                f: to_jet(&exact.f),
                g: to_jet(&exact.g),
                j: to_jet(&exact.j),
            },
        })
    }

    pub fn tolerance(&self) -> f64 {
        match self.backend {
            Backend::Polynomial => 0.0,
            Backend::Jet => 1e-9,
        }
    }
}

fn to_jet(form: &DifferentialForm) -> DifferentialForm {
    let mut out = DifferentialForm::zero(form.grade());
    for (index, c) in form.terms() {
        let p = c.as_poly().expect("scenario forms are polynomial").clone();
        let f = ScalarField::from_fn(move |x| p.eval_jet(x));
        out = &out + &DifferentialForm::monomial(*index, f);
    }
    out
}
