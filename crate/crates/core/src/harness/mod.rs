//! Randomized verification of theta identities.
//!
//! Every sample draws `tau` and the identity's additive variables from a
//! ChaCha8 stream seeded by `SampleConfig::seed` and selected by the sample
//! index (`set_stream(index)`), so a sweep gives the same report whether the
//! samples run serially or on a thread pool.

pub mod catalog;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Complex, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::{localized_class_resolution, orbifold_class, TorusPoint};
use crate::models::{DeltaSum, Model, Ratio};
use crate::numeric::{
    absolute_error, format_complex, relative_error, ModularParam, PrecisionConfig,
};
use crate::theta::ThetaContext;

pub use catalog::{catalog, find};

/// Attempts per sample after the first before giving up on the pole constraints.
pub const MAX_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Modular,
    Torus,
    Dynamical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub role: Role,
}

impl Variable {
    pub fn torus(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            role: Role::Torus,
        }
    }

    pub fn dynamical(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            role: Role::Dynamical,
        }
    }
}

pub type EvalFn = Arc<dyn Fn(&ThetaContext, &[Complex]) -> Result<Complex> + Send + Sync>;
pub type ExactFn = Arc<dyn Fn(&[Rational]) -> Result<Vec<Rational>> + Send + Sync>;

/// One side of an identity: a symbolic `delta` sum or an arbitrary evaluator.
#[derive(Clone)]
pub enum Side {
    Sum(DeltaSum),
    Function(EvalFn),
}

impl Side {
    pub fn function(
        f: impl Fn(&ThetaContext, &[Complex]) -> Result<Complex> + Send + Sync + 'static,
    ) -> Self {
        Side::Function(Arc::new(f))
    }

    pub fn eval(&self, ctx: &ThetaContext, vars: &[Complex]) -> Result<Complex> {
        match self {
            Side::Sum(sum) => sum.eval(ctx, vars),
            Side::Function(f) => f(ctx, vars),
        }
    }

    pub fn as_sum(&self) -> Option<&DeltaSum> {
        match self {
            Side::Sum(sum) => Some(sum),
            Side::Function(_) => None,
        }
    }
}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Sum(sum) => write!(f, "Sum({} terms)", sum.terms.len()),
            Side::Function(_) => f.write_str("Function"),
        }
    }
}

/// Rational-function identities checked exactly: `eval` returns values that
/// must all coincide at each of `points`.
#[derive(Clone)]
pub struct ExactMode {
    pub points: Vec<Vec<Rational>>,
    pub eval: ExactFn,
}

impl fmt::Debug for ExactMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMode({} points)", self.points.len())
    }
}

#[derive(Debug, Clone)]
pub struct IdentityDescriptor {
    pub id: String,
    pub description: String,
    /// Additive variables in the order the sides consume them.
    pub variables: Vec<Variable>,
    pub lhs: Side,
    pub rhs: Side,
    pub exact: Option<ExactMode>,
    /// Number of `delta` factors per term when both sides are homogeneous,
    /// i.e. the power of `2 pi i` separating the `delta` and `Delta` forms.
    pub delta_degree: Option<usize>,
}

impl IdentityDescriptor {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        variables: Vec<Variable>,
        lhs: Side,
        rhs: Side,
    ) -> Self {
        let delta_degree = match (&lhs, &rhs) {
            (Side::Sum(l), Side::Sum(r)) => uniform_degree(l, r),
            _ => None,
        };
        Self {
            id: id.into(),
            description: description.into(),
            variables,
            lhs,
            rhs,
            exact: None,
            delta_degree,
        }
    }

    pub fn with_exact(mut self, exact: ExactMode) -> Self {
        self.exact = Some(exact);
        self
    }

    /// Copy with one `delta` argument of a symbolic side shifted by `amount`
    /// (`side = 0` for the left side, `slot = 0` for the first argument).
    pub fn tampered(
        &self,
        side: usize,
        term: usize,
        factor: usize,
        slot: usize,
        amount: Ratio,
    ) -> Result<Self> {
        let target = if side == 0 { &self.lhs } else { &self.rhs };
        let sum = target.as_sum().ok_or_else(|| {
            Error::InvalidArgument(format!("`{}` has no symbolic side {side}", self.id))
        })?;
        let perturbed = Side::Sum(sum.perturb(term, factor, slot, amount)?);
        let mut out = self.clone();
        if side == 0 {
            out.lhs = perturbed;
        } else {
            out.rhs = perturbed;
        }
        out.exact = None;
        Ok(out)
    }
}

fn uniform_degree(l: &DeltaSum, r: &DeltaSum) -> Option<usize> {
    let mut degrees = l.terms.iter().chain(&r.terms).map(|t| t.factors.len());
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub precision: PrecisionConfig,
    pub tau_im_range: [f64; 2],
    /// Evaluate samples on the rayon pool.
    pub parallel: bool,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            samples: 32,
            seed: 20_240_601,
            tolerance: 1e-9,
            precision: PrecisionConfig::default(),
            tau_im_range: [0.8, 2.0],
            parallel: true,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        let [lo, hi] = self.tau_im_range;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bad tau_im_range [{lo}, {hi}]"
            )));
        }
        self.precision.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub sample: usize,
    pub point: Vec<NamedValue>,
    pub lhs: [String; 2],
    pub rhs: [String; 2],
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub digits: u32,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub failures: Vec<FailureRecord>,
    pub truncation_orders: Vec<usize>,
    /// Draws rejected for pole proximity, summed over samples.
    pub resamples: usize,
    pub exact_points: usize,
    pub exact_failures: Vec<String>,
    pub elapsed_ms: u64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report with timing zeroed, for run-to-run comparison.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

struct Sample {
    index: usize,
    point: Vec<NamedValue>,
    lhs: Complex,
    rhs: Complex,
    abs_err: f64,
    rel_err: f64,
    order: usize,
    resamples: usize,
}

/// The random stream of sample `index`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

struct Draw {
    tau: Complex,
    vars: Vec<Complex>,
}

fn draw(rng: &mut ChaCha8Rng, cfg: &SampleConfig, nvars: usize) -> Draw {
    let bits = cfg.precision.bits();
    let [lo, hi] = cfg.tau_im_range;
    let tau_re: f64 = rng.gen_range(-0.5..=0.5);
    let tau_im: f64 = if lo == hi { lo } else { rng.gen_range(lo..hi) };
    let vars = (0..nvars)
        .map(|_| {
            let re: f64 = rng.gen_range(-0.5..=0.5);
            let im: f64 = rng.gen_range(-tau_im / 4.0..=tau_im / 4.0);
            Complex::with_val(bits, (re, im))
        })
        .collect();
    Draw {
        tau: Complex::with_val(bits, (tau_re, tau_im)),
        vars,
    }
}

fn run_sample(identity: &IdentityDescriptor, cfg: &SampleConfig, index: usize) -> Result<Sample> {
    let mut rng = sample_rng(cfg.seed, index);
    let mut last = String::new();
    for attempt in 0..=MAX_RETRIES {
        let d = draw(&mut rng, cfg, identity.variables.len());
        let ctx = ThetaContext::new(&ModularParam::new(d.tau.clone())?, cfg.precision)?;
        let values = identity
            .lhs
            .eval(&ctx, &d.vars)
            .and_then(|l| identity.rhs.eval(&ctx, &d.vars).map(|r| (l, r)));
        match values {
            Ok((lhs, rhs)) => {
                let digits = cfg.precision.working_digits as usize;
                let mut point = vec![NamedValue {
                    name: "tau".into(),
                    value: format_complex(&d.tau, digits),
                }];
                point.extend(
                    identity
                        .variables
                        .iter()
                        .zip(&d.vars)
                        .map(|(v, x)| NamedValue {
                            name: v.name.clone(),
                            value: format_complex(x, digits),
                        }),
                );
                return Ok(Sample {
                    index,
                    point,
                    abs_err: absolute_error(&lhs, &rhs),
                    rel_err: relative_error(&lhs, &rhs),
                    lhs,
                    rhs,
                    order: ctx.order(),
                    resamples: attempt,
                });
            }
            Err(e) if e.is_resamplable() => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Domain {
        identity: identity.id.clone(),
        retries: MAX_RETRIES,
        constraint: last,
    })
}

fn check_exact(exact: &ExactMode) -> Vec<String> {
    let mut failures = Vec::new();
    for point in &exact.points {
        let shown = point
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        match (exact.eval)(point) {
            Ok(values) => {
                if values.windows(2).any(|w| w[0] != w[1]) {
                    let vals = values
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" vs ");
                    failures.push(format!("({shown}): {vals}"));
                }
            }
            Err(e) => failures.push(format!("({shown}): {e}")),
        }
    }
    failures
}

/// Samples both sides of `identity` at `cfg.samples` random points.
pub fn verify(identity: &IdentityDescriptor, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let samples: Vec<Sample> = if cfg.parallel {
        (0..cfg.samples)
            .into_par_iter()
            .map(|i| run_sample(identity, cfg, i))
            .collect::<Result<_>>()?
    } else {
        (0..cfg.samples)
            .map(|i| run_sample(identity, cfg, i))
            .collect::<Result<_>>()?
    };

    let digits = cfg.precision.working_digits as usize;
    let mut max_abs_err = 0f64;
    let mut max_rel_err = 0f64;
    let mut orders = Vec::new();
    let mut failures = Vec::new();
    let mut resamples = 0;
    for s in samples {
        max_abs_err = max_abs_err.max(s.abs_err);
        max_rel_err = max_rel_err.max(s.rel_err);
        orders.push(s.order);
        resamples += s.resamples;
        if !(s.rel_err < cfg.tolerance) {
            failures.push(FailureRecord {
                sample: s.index,
                point: s.point,
                lhs: format_complex(&s.lhs, digits),
                rhs: format_complex(&s.rhs, digits),
                rel_err: s.rel_err,
            });
        }
    }
    orders.sort_unstable();
    orders.dedup();

    let (exact_points, exact_failures) = match &identity.exact {
        Some(exact) => (exact.points.len(), check_exact(exact)),
        None => (0, Vec::new()),
    };
    let pass = max_rel_err < cfg.tolerance && failures.is_empty() && exact_failures.is_empty();
    Ok(VerificationReport {
        identity: identity.id.clone(),
        samples: cfg.samples,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
        digits: cfg.precision.working_digits,
        max_abs_err,
        max_rel_err,
        failures,
        truncation_orders: orders,
        resamples,
        exact_points,
        exact_failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        pass,
    })
}

fn model_side(model: &Model) -> Result<(usize, Side)> {
    model.validate()?;
    Ok(match model {
        Model::Resolution(m) => {
            let m = m.clone();
            (
                m.rank,
                Side::function(move |ctx, vars| localized_class_resolution(ctx, &m, &split(vars))),
            )
        }
        Model::Orbifold(m) => {
            let m = m.clone();
            (
                m.rank(),
                Side::function(move |ctx, vars| orbifold_class(ctx, &m, &split(vars))),
            )
        }
    })
}

fn split(vars: &[Complex]) -> TorusPoint {
    let (z, t) = vars
        .split_last()
        .expect("model identities have a z variable");
    TorusPoint::new(t.to_vec(), z.clone())
}

fn model_variables(rank: usize) -> Vec<Variable> {
    let mut vars: Vec<Variable> = (1..=rank)
        .map(|i| Variable::torus(format!("t{i}")))
        .collect();
    vars.push(Variable::dynamical("z"));
    vars
}

/// The equality of the classes of two models over the same torus.
pub fn model_identity(
    id: impl Into<String>,
    lhs: &Model,
    rhs: &Model,
) -> Result<IdentityDescriptor> {
    let (lrank, lside) = model_side(lhs)?;
    let (rrank, rside) = model_side(rhs)?;
    if lrank != rrank {
        return Err(Error::InvalidArgument(format!(
            "models have torus ranks {lrank} and {rrank}"
        )));
    }
    Ok(IdentityDescriptor::new(
        id,
        "class of the first model equals class of the second",
        model_variables(lrank),
        lside,
        rside,
    ))
}

/// McKay check for a user-supplied pair of models.
pub fn verify_custom(lhs: &Model, rhs: &Model, cfg: &SampleConfig) -> Result<VerificationReport> {
    verify(&model_identity("custom", lhs, rhs)?, cfg)
}
