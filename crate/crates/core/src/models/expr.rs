//! Symbolic sums of products of `delta` factors with linear arguments.
//!
//! A [`DeltaSum`] is written over a fixed list of additive variables
//! `v_0, ..., v_{n-1}`; every argument is an exact rational linear form in
//! them plus a rational multiple of `tau`. Keeping the data symbolic lets
//! identities be compared structurally, substituted, and tampered with.

use rug::Complex;
use serde::{Deserialize, Serialize};

use super::ratio::Ratio;
use crate::error::{Error, Result};
use crate::theta::ThetaContext;

/// `sum_i coeffs[i] v_i + constant + tau_coeff * tau`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<Ratio>,
    pub constant: Ratio,
    pub tau_coeff: Ratio,
}

impl LinearForm {
    pub fn zero(nvars: usize) -> Self {
        Self {
            coeffs: vec![Ratio::zero(); nvars],
            constant: Ratio::zero(),
            tau_coeff: Ratio::zero(),
        }
    }

    /// The single variable `v_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::zero(nvars).plus_var(index, Ratio::int(1))
    }

    /// Integer combination `sum_i coeffs[i] v_i`.
    pub fn ints(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| Ratio::int(c)).collect(),
            constant: Ratio::zero(),
            tau_coeff: Ratio::zero(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn plus_var(mut self, index: usize, coeff: Ratio) -> Self {
        self.coeffs[index] = &self.coeffs[index] + &coeff;
        self
    }

    pub fn plus_constant(mut self, value: Ratio) -> Self {
        self.constant = &self.constant + &value;
        self
    }

    pub fn plus_tau(mut self, value: Ratio) -> Self {
        self.tau_coeff = &self.tau_coeff + &value;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
            tau_coeff: &self.tau_coeff + &other.tau_coeff,
        }
    }

    pub fn scale(&self, factor: &Ratio) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            constant: &self.constant * factor,
            tau_coeff: &self.tau_coeff * factor,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Ratio::int(-1))
    }

    /// Replaces `v_i` by `images[i]` (forms over a new variable list).
    pub fn substitute(&self, images: &[LinearForm]) -> Self {
        let nvars = images.first().map_or(0, LinearForm::nvars);
        let mut out = Self::zero(nvars)
            .plus_constant(self.constant.clone())
            .plus_tau(self.tau_coeff.clone());
        for (c, image) in self.coeffs.iter().zip(images) {
            if !c.is_zero() {
                out = out.add(&image.scale(c));
            }
        }
        out
    }

    pub fn eval(&self, ctx: &ThetaContext, vars: &[Complex]) -> Complex {
        let bits = ctx.bits();
        let mut out = self.constant.to_complex(bits);
        for (c, v) in self.coeffs.iter().zip(vars) {
            if !c.is_zero() {
                out += Complex::with_val(bits, v * c.to_float(bits));
            }
        }
        if !self.tau_coeff.is_zero() {
            out += Complex::with_val(bits, ctx.tau() * self.tau_coeff.to_float(bits));
        }
        out
    }
}

/// `delta(e(a), e(b))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaFactor {
    pub a: LinearForm,
    pub b: LinearForm,
}

impl DeltaFactor {
    pub fn new(a: LinearForm, b: LinearForm) -> Self {
        Self { a, b }
    }
}

/// `coeff * e(phase) * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTerm {
    pub coeff: Ratio,
    pub phase: LinearForm,
    pub factors: Vec<DeltaFactor>,
}

impl DeltaTerm {
    pub fn new(nvars: usize, factors: Vec<DeltaFactor>) -> Self {
        Self {
            coeff: Ratio::int(1),
            phase: LinearForm::zero(nvars),
            factors,
        }
    }

    pub fn with_coeff(mut self, coeff: Ratio) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn with_phase(mut self, phase: LinearForm) -> Self {
        self.phase = phase;
        self
    }
}

/// A finite sum of [`DeltaTerm`]s over `nvars` additive variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSum {
    pub nvars: usize,
    pub terms: Vec<DeltaTerm>,
}

impl DeltaSum {
    pub fn new(nvars: usize, terms: Vec<DeltaTerm>) -> Self {
        Self { nvars, terms }
    }

    pub fn single(nvars: usize, factors: Vec<DeltaFactor>) -> Self {
        Self::new(nvars, vec![DeltaTerm::new(nvars, factors)])
    }

    pub fn factor_count(&self) -> usize {
        self.terms.iter().map(|t| t.factors.len()).sum()
    }

    pub fn plus(mut self, other: DeltaSum) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(mut self, factor: &Ratio) -> Self {
        for term in &mut self.terms {
            term.coeff = &term.coeff * factor;
        }
        self
    }

    /// Rewrites every argument through the substitution `v_i -> images[i]`.
    pub fn substitute(&self, images: &[LinearForm]) -> Self {
        let nvars = images.first().map_or(self.nvars, LinearForm::nvars);
        let terms = self
            .terms
            .iter()
            .map(|t| DeltaTerm {
                coeff: t.coeff.clone(),
                phase: t.phase.substitute(images),
                factors: t
                    .factors
                    .iter()
                    .map(|f| DeltaFactor::new(f.a.substitute(images), f.b.substitute(images)))
                    .collect(),
            })
            .collect();
        Self { nvars, terms }
    }

    /// Copy with the first (`slot = 0`) or second argument of one factor shifted by `amount`.
    pub fn perturb(&self, term: usize, factor: usize, slot: usize, amount: Ratio) -> Result<Self> {
        let mut out = self.clone();
        let f = out
            .terms
            .get_mut(term)
            .and_then(|t| t.factors.get_mut(factor))
            .ok_or_else(|| Error::InvalidArgument(format!("no factor {factor} in term {term}")))?;
        let arg = if slot == 0 { &mut f.a } else { &mut f.b };
        *arg = arg.clone().plus_constant(amount);
        Ok(out)
    }

    /// Every `delta` argument at the given point, for pole screening.
    pub fn arguments(&self, ctx: &ThetaContext, vars: &[Complex]) -> Vec<(String, Complex)> {
        let mut out = Vec::with_capacity(2 * self.factor_count());
        for (i, term) in self.terms.iter().enumerate() {
            for (j, f) in term.factors.iter().enumerate() {
                out.push((
                    format!("term {i}, factor {j}, first argument"),
                    f.a.eval(ctx, vars),
                ));
                out.push((
                    format!("term {i}, factor {j}, second argument"),
                    f.b.eval(ctx, vars),
                ));
            }
        }
        out
    }

    pub fn eval(&self, ctx: &ThetaContext, vars: &[Complex]) -> Result<Complex> {
        if vars.len() != self.nvars {
            return Err(Error::InvalidArgument(format!(
                "expression takes {} variables, got {}",
                self.nvars,
                vars.len()
            )));
        }
        let bits = ctx.bits();
        let mut total = Complex::with_val(bits, 0);
        for (i, term) in self.terms.iter().enumerate() {
            let mut value = term.coeff.to_complex(bits);
            for (j, f) in term.factors.iter().enumerate() {
                let a = f.a.eval(ctx, vars);
                let b = f.b.eval(ctx, vars);
                ctx.check_pole(&a, || format!("term {i}, factor {j}, first argument"))?;
                ctx.check_pole(&b, || format!("term {i}, factor {j}, second argument"))?;
                value *= ctx.delta_unchecked(&a, &b);
            }
            let phase = term.phase.eval(ctx, vars);
            if !(phase.real().is_zero() && phase.imag().is_zero()) {
                value *= ctx.e(&phase)?;
            }
            total += value;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{relative_error, ModularParam, PrecisionConfig};

    fn ctx() -> ThetaContext {
        ThetaContext::new(
            &ModularParam::from_f64(0.1, 1.1).unwrap(),
            PrecisionConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn single_factor_matches_delta() {
        let c = ctx();
        let vars = [c.complex(0.2, 0.1), c.complex(-0.3, 0.05)];
        let sum = DeltaSum::single(
            2,
            vec![DeltaFactor::new(
                LinearForm::var(2, 0),
                LinearForm::var(2, 1),
            )],
        );
        let direct = c.delta(&vars[0], &vars[1]).unwrap();
        assert!(relative_error(&sum.eval(&c, &vars).unwrap(), &direct) < 1e-30);
    }

    #[test]
    fn tau_shift_and_phase_cancel() {
        // delta(a + tau, b) e(b) = delta(a, b)
        let c = ctx();
        let vars = [c.complex(0.2, 0.1), c.complex(-0.3, 0.05)];
        let shifted = LinearForm::var(2, 0).plus_tau(Ratio::int(1));
        let term = DeltaTerm::new(2, vec![DeltaFactor::new(shifted, LinearForm::var(2, 1))])
            .with_phase(LinearForm::var(2, 1));
        let lhs = DeltaSum::new(2, vec![term]).eval(&c, &vars).unwrap();
        let rhs = c.delta(&vars[0], &vars[1]).unwrap();
        assert!(relative_error(&lhs, &rhs) < 1e-25);
    }

    #[test]
    fn substitution_composes() {
        let f = LinearForm::ints(&[2, -1]).plus_constant(Ratio::new(1, 3));
        // v0 -> w0 + w1, v1 -> w1
        let images = [LinearForm::ints(&[1, 1]), LinearForm::ints(&[0, 1])];
        let g = f.substitute(&images);
        assert_eq!(g.coeffs, vec![Ratio::int(2), Ratio::int(1)]);
        assert_eq!(g.constant, Ratio::new(1, 3));
    }

    #[test]
    fn perturb_changes_one_argument() {
        let sum = DeltaSum::single(
            1,
            vec![DeltaFactor::new(
                LinearForm::var(1, 0),
                LinearForm::var(1, 0),
            )],
        );
        let p = sum.perturb(0, 0, 1, Ratio::new(1, 1000)).unwrap();
        assert_ne!(p, sum);
        assert_eq!(p.terms[0].factors[0].a, sum.terms[0].factors[0].a);
        assert!(sum.perturb(1, 0, 0, Ratio::int(1)).is_err());
    }

    #[test]
    fn pole_is_reported_with_location() {
        let c = ctx();
        let sum = DeltaSum::single(
            1,
            vec![DeltaFactor::new(
                LinearForm::var(1, 0),
                LinearForm::zero(1).plus_constant(Ratio::new(1, 5)),
            )],
        );
        let err = sum.eval(&c, &[c.complex(0.0, 0.0)]).unwrap_err();
        match err {
            Error::PoleProximity { location, .. } => assert!(location.contains("term 0, factor 0")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
