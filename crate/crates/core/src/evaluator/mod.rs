//! Numerical values of localized resolution classes and orbifold classes,
//! and the small-`q` limits of the `delta` factors.

pub mod hirzebruch;

use rug::Complex;

use crate::error::{Error, Result};
use crate::models::{OrbifoldModel, Ratio, ResolutionModel, Weight};
use crate::theta::ThetaContext;

pub use hirzebruch::{
    hirzebruch_limit_forms, hirzebruch_limit_forms_exact, root_of_unity_average, trig_identity,
    trig_identity_exact,
};

/// A point of the torus `t_i = e(t_args[i])` together with `h = e(-z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    pub t_args: Vec<Complex>,
    pub z: Complex,
}

impl TorusPoint {
    pub fn new(t_args: Vec<Complex>, z: Complex) -> Self {
        Self { t_args, z }
    }

    /// `[t_1, ..., t_r, z]`, the variable layout used by model expressions.
    pub fn variables(&self) -> Vec<Complex> {
        let mut out = self.t_args.clone();
        out.push(self.z.clone());
        out
    }

    fn pairing(&self, ctx: &ThetaContext, w: &Weight) -> Complex {
        let mut out = ctx.complex(0.0, 0.0);
        for (c, t) in w.0.iter().zip(&self.t_args) {
            if *c != 0 {
                out += Complex::with_val(ctx.bits(), t * *c);
            }
        }
        out
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.t_args.len() != rank {
            return Err(Error::InvalidArgument(format!(
                "model has rank {rank} but the point has {} torus coordinates",
                self.t_args.len()
            )));
        }
        Ok(())
    }
}

/// `-(1 - a) z`, the additive form of `h^{1 - a}`.
fn twisted_h(ctx: &ThetaContext, a: &Ratio, z: &Complex) -> Complex {
    let bits = ctx.bits();
    let scale = (a - &Ratio::int(1)).to_float(bits);
    Complex::with_val(bits, z * scale)
}

fn checked_delta(
    ctx: &ThetaContext,
    a: &Complex,
    b: &Complex,
    location: impl Fn() -> String,
) -> Result<Complex> {
    ctx.check_pole(a, || format!("{}, first argument", location()))?;
    ctx.check_pole(b, || format!("{}, second argument", location()))?;
    Ok(ctx.delta_unchecked(a, b))
}

/// `prefactor * sum_p prod_k delta(<w_k, t>, -(1 - a_k) z)`.
pub fn localized_class_resolution(
    ctx: &ThetaContext,
    model: &ResolutionModel,
    p: &TorusPoint,
) -> Result<Complex> {
    p.check_rank(model.rank)?;
    let bits = ctx.bits();
    let mut total = ctx.complex(0.0, 0.0);
    for (i, fp) in model.fixed_points.iter().enumerate() {
        let name = match model.labels.as_ref().and_then(|l| l.get(i)) {
            Some(label) => format!("fixed point {i} ({label})"),
            None => format!("fixed point {i}"),
        };
        let mut term = ctx.complex(1.0, 0.0);
        for (k, (w, a)) in fp.weights.iter().zip(&fp.exponents).enumerate() {
            let arg = p.pairing(ctx, w);
            let h = twisted_h(ctx, a, &p.z);
            term *= checked_delta(ctx, &arg, &h, || format!("{name}, factor {k}"))?;
        }
        total += term;
    }
    Ok(Complex::with_val(
        bits,
        total * model.prefactor.to_float(bits),
    ))
}

fn require_rank(model: &OrbifoldModel, p: &TorusPoint) -> Result<()> {
    p.check_rank(model.rank())
}

/// `(1/|G|) sum mult * prod_k delta(lambda_k - nu_k tau + <w_k, t>, -(1 - a_k) z)
///  * h^{(a_k - 1) nu_k} * h^{h_shift}`.
pub fn orbifold_class(
    ctx: &ThetaContext,
    model: &OrbifoldModel,
    p: &TorusPoint,
) -> Result<Complex> {
    require_rank(model, p)?;
    let mut total = ctx.complex(0.0, 0.0);
    for (i, pair) in model.pairs.iter().enumerate() {
        let mut term = ctx.complex(pair.multiplicity as f64, 0.0);
        let mut h_power = pair.h_shift.clone();
        for k in 0..model.dim {
            let arg = shifted_argument(
                ctx,
                &pair.lambda[k],
                &pair.nu[k],
                &p.pairing(ctx, &pair.weights[k]),
            );
            let a = &pair.exponents[k];
            let h = twisted_h(ctx, a, &p.z);
            term *= checked_delta(ctx, &arg, &h, || format!("pair {i}, coordinate {k}"))?;
            h_power = &h_power + &(&(a - &Ratio::int(1)) * &pair.nu[k]);
        }
        term *= h_to(ctx, &h_power, &p.z)?;
        total += term;
    }
    Ok(total / model.group_order as u32)
}

/// `lambda - nu tau + base`.
fn shifted_argument(ctx: &ThetaContext, lambda: &Ratio, nu: &Ratio, base: &Complex) -> Complex {
    let bits = ctx.bits();
    let mut out = Complex::with_val(bits, base + lambda.to_float(bits));
    if !nu.is_zero() {
        out -= Complex::with_val(bits, ctx.tau() * nu.to_float(bits));
    }
    out
}

/// `h^c = e(-c z)`.
fn h_to(ctx: &ThetaContext, c: &Ratio, z: &Complex) -> Result<Complex> {
    if c.is_zero() {
        return Ok(ctx.complex(1.0, 0.0));
    }
    let bits = ctx.bits();
    ctx.e(&Complex::with_val(bits, z * (-c).to_float(bits)))
}

/// The orbifold class through paired factors: for each `k < dim/2`,
/// `delta(L + <w_k,t>, -(1-a_k) z) delta(-L + <w_{m+k},t>, -(1-a_{m+k}) z) h^{nu_k (a_k - a_{m+k})}`
/// with `L = lambda_k - nu_k tau`. With trivial exponents each pair is `Psi(L)`.
pub fn orbifold_class_symplectic(
    ctx: &ThetaContext,
    model: &OrbifoldModel,
    p: &TorusPoint,
) -> Result<Complex> {
    if !model.is_symplectic() {
        return Err(Error::InvalidArgument(
            "orbifold model is not symplectic-paired (coordinates k and dim/2 + k must carry inverse eigenvalues)".into(),
        ));
    }
    require_rank(model, p)?;
    let bits = ctx.bits();
    let m = model.dim / 2;
    let mut total = ctx.complex(0.0, 0.0);
    for (i, pair) in model.pairs.iter().enumerate() {
        let mut term = ctx.complex(pair.multiplicity as f64, 0.0);
        let mut h_power = pair.h_shift.clone();
        for k in 0..m {
            let lambda =
                shifted_argument(ctx, &pair.lambda[k], &pair.nu[k], &ctx.complex(0.0, 0.0));
            let first = Complex::with_val(bits, &lambda + p.pairing(ctx, &pair.weights[k]));
            let second = Complex::with_val(bits, p.pairing(ctx, &pair.weights[m + k]) - &lambda);
            let (a, b) = (&pair.exponents[k], &pair.exponents[m + k]);
            term *= checked_delta(ctx, &first, &twisted_h(ctx, a, &p.z), || {
                format!("pair {i}, coordinate {k}")
            })?;
            term *= checked_delta(ctx, &second, &twisted_h(ctx, b, &p.z), || {
                format!("pair {i}, coordinate {}", m + k)
            })?;
            h_power = &h_power + &(&pair.nu[k] * &(a - b));
        }
        term *= h_to(ctx, &h_power, &p.z)?;
        total += term;
    }
    Ok(total / model.group_order as u32)
}

/// `theta(v + nu tau - z) / theta(v + nu tau)` next to its `q -> 0` limit.
#[derive(Debug, Clone)]
pub struct QLimit {
    pub value: Complex,
    pub predicted: Complex,
}

/// Evaluates the ratio at the given context (meant for small `|q|`) and the
/// predicted limit: `y^{-1/2}` for `nu < 0`, `y^{-1/2} (1 - y e(-v)) / (1 - e(-v))`
/// for `nu = 0`, and `y^{1/2}` for `nu > 0`, where `y = e(z)`.
pub fn q_limit_delta(ctx: &ThetaContext, nu: &Ratio, v: &Complex, z: &Complex) -> Result<QLimit> {
    if !(*nu > Ratio::int(-1) && *nu < Ratio::int(1)) {
        return Err(Error::InvalidArgument(format!(
            "nu = {nu} is outside (-1, 1)"
        )));
    }
    let bits = ctx.bits();
    let base = shifted_argument(ctx, &Ratio::zero(), &-nu, v);
    ctx.check_pole(&base, || "q-limit denominator".into())?;
    let num = ctx.theta(&Complex::with_val(bits, &base - z));
    let value = num / ctx.theta(&base);
    let half = |sign: f64| ctx.e(&Complex::with_val(bits, z * (sign * 0.5)));
    let predicted = match nu.as_rational().cmp0() {
        std::cmp::Ordering::Less => half(-1.0)?,
        std::cmp::Ordering::Greater => half(1.0)?,
        std::cmp::Ordering::Equal => {
            let y = ctx.e(z)?;
            let ev = ctx.e(&Complex::with_val(bits, -v))?;
            let one = ctx.complex(1.0, 0.0);
            let den = Complex::with_val(bits, &one - &ev);
            if crate::numeric::abs_f64(&den) < 1e-300 {
                return Err(Error::DivisionByZero(
                    "q-limit at nu = 0 with e(v) = 1".into(),
                ));
            }
            half(-1.0)? * (one - y * ev) / den
        }
    };
    Ok(QLimit { value, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets;
    use crate::numeric::{relative_error, ModularParam, PrecisionConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(re: f64, im: f64) -> ThetaContext {
        ThetaContext::new(
            &ModularParam::from_f64(re, im).unwrap(),
            PrecisionConfig::default(),
        )
        .unwrap()
    }

    fn point(c: &ThetaContext, rng: &mut ChaCha8Rng, rank: usize) -> TorusPoint {
        let im = c.tau().imag().to_f64() / 4.0;
        let mut draw = || c.complex(rng.gen_range(-0.5..0.5), rng.gen_range(-im..im));
        let t = (0..rank).map(|_| draw()).collect();
        TorusPoint::new(t, draw())
    }

    #[test]
    fn trivial_group_is_the_plain_product() {
        let c = ctx(0.1, 1.0);
        let model = presets::a_n_orbifold(1).unwrap();
        let p = TorusPoint::new(
            vec![c.complex(0.2, 0.1), c.complex(-0.3, 0.05)],
            c.complex(0.17, -0.04),
        );
        let h = Complex::with_val(c.bits(), -&p.z);
        let expected = c.delta(&p.t_args[0], &h).unwrap() * c.delta(&p.t_args[1], &h).unwrap();
        assert!(relative_error(&orbifold_class(&c, &model, &p).unwrap(), &expected) < 1e-28);
    }

    #[test]
    fn a2_resolution_matches_the_worked_example() {
        // delta(t1^2, m1 m2) delta(t2/t1, m2^2) + delta(t1/t2, m1^2) delta(t2^2, m1 m2), m_i = h^{1/2}.
        let c = ctx(-0.2, 1.3);
        let p = TorusPoint::new(
            vec![c.complex(0.21, 0.1), c.complex(-0.33, 0.02)],
            c.complex(0.11, 0.07),
        );
        let (t1, t2) = (&p.t_args[0], &p.t_args[1]);
        let h = Complex::with_val(c.bits(), -&p.z);
        let b = c.bits();
        let d = |x: Complex| c.delta(&x, &h).unwrap();
        let expected = d(Complex::with_val(b, t1 * 2u32)) * d(Complex::with_val(b, t2 - t1))
            + d(Complex::with_val(b, t1 - t2)) * d(Complex::with_val(b, t2 * 2u32));
        let value =
            localized_class_resolution(&c, &presets::a_n_resolution(2).unwrap(), &p).unwrap();
        assert!(relative_error(&value, &expected) < 1e-28);
    }

    #[test]
    fn resolution_matches_its_delta_sum() {
        let c = ctx(0.3, 0.9);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let model =
            presets::a_n_resolution_with_divisor(3, &Ratio::new(1, 3), &Ratio::new(-1, 4)).unwrap();
        let p = point(&c, &mut rng, 2);
        let direct = localized_class_resolution(&c, &model, &p).unwrap();
        let symbolic = model.to_delta_sum().eval(&c, &p.variables()).unwrap();
        assert!(relative_error(&direct, &symbolic) < 1e-28);
    }

    #[test]
    fn blowup_of_the_plane_is_the_fay_product() {
        let c = ctx(0.05, 1.1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = [Ratio::new(1, 3), Ratio::new(-1, 2)];
        let model = presets::blowup(2, &a).unwrap();
        for _ in 0..5 {
            let p = point(&c, &mut rng, 2);
            let value = localized_class_resolution(&c, &model, &p).unwrap();
            let mut expected = c.complex(1.0, 0.0);
            for (t, ai) in p.t_args.iter().zip(&a) {
                expected *= c.delta(t, &twisted_h(&c, ai, &p.z)).unwrap();
            }
            assert!(relative_error(&value, &expected) < 1e-20);
        }
    }

    #[test]
    fn symplectic_path_agrees_with_general_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 1..=4 {
            let model =
                presets::a_n_orbifold_with_divisor(n, &Ratio::new(1, 5), &Ratio::new(-1, 3))
                    .unwrap();
            for _ in 0..10 {
                let c = ctx(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.0));
                let p = point(&c, &mut rng, 2);
                let general = orbifold_class(&c, &model, &p).unwrap();
                let paired = orbifold_class_symplectic(&c, &model, &p).unwrap();
                assert!(relative_error(&general, &paired) < 1e-20, "n = {n}");
            }
        }
    }

    #[test]
    fn symplectic_path_rejects_unpaired_models() {
        let c = ctx(0.0, 1.0);
        let (_, orb) = presets::diagonal_quotient(3, 2).unwrap();
        let p = TorusPoint::new(vec![c.complex(0.1, 0.0); 3], c.complex(0.2, 0.0));
        assert!(orbifold_class_symplectic(&c, &orb, &p).is_err());
    }

    #[test]
    fn symplectic_pair_factor_is_phi() {
        let c = ctx(0.1, 1.2);
        let model = presets::d4_orbifold();
        let p = TorusPoint::new(vec![c.complex(0.13, 0.05)], c.complex(-0.2, 0.1));
        let h = Complex::with_val(c.bits(), -&p.z);
        let mut expected = c.complex(0.0, 0.0);
        for pair in &model.pairs {
            let lam = shifted_argument(&c, &pair.lambda[0], &pair.nu[0], &c.complex(0.0, 0.0));
            expected += c.phi(&lam, &p.t_args[0], &h).unwrap() * pair.multiplicity as u32;
        }
        expected /= 8u32;
        assert!(
            relative_error(
                &orbifold_class_symplectic(&c, &model, &p).unwrap(),
                &expected
            ) < 1e-28
        );
        assert!(relative_error(&orbifold_class(&c, &model, &p).unwrap(), &expected) < 1e-20);
    }

    #[test]
    fn q_limit_cases() {
        let m = ModularParam::from_q_abs(1e-6, 128).unwrap();
        let small = ThetaContext::new(&m, PrecisionConfig::default()).unwrap();
        let v = small.complex(0.23, 0.05);
        let z = small.complex(-0.17, 0.03);
        let zero = q_limit_delta(&small, &Ratio::zero(), &v, &z).unwrap();
        assert!(crate::numeric::absolute_error(&zero.value, &zero.predicted) < 1e-4);

        let m = ModularParam::from_q_abs(1e-12, 128).unwrap();
        let tiny = ThetaContext::new(&m, PrecisionConfig::default()).unwrap();
        for nu in [Ratio::new(1, 2), Ratio::new(-1, 2)] {
            let r = q_limit_delta(&tiny, &nu, &v, &z).unwrap();
            assert!(
                crate::numeric::absolute_error(&r.value, &r.predicted) < 1e-4,
                "nu = {nu}"
            );
        }
        assert!(q_limit_delta(&tiny, &Ratio::int(1), &v, &z).is_err());
    }

    #[test]
    fn pole_error_names_the_fixed_point() {
        let c = ctx(0.0, 1.0);
        let model = presets::a_n_resolution(2).unwrap();
        let p = TorusPoint::new(
            vec![c.complex(0.0, 0.0), c.complex(0.3, 0.0)],
            c.complex(0.2, 0.0),
        );
        match localized_class_resolution(&c, &model, &p).unwrap_err() {
            Error::PoleProximity { location, .. } => {
                assert!(location.contains("fixed point 0 (vertex 1)"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
