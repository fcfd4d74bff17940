//! The odd Jacobi theta function and the elliptic factors built from it.
//!
//! `theta(v) = 2 sum_{n>=0} (-1)^n q0^{(n+1/2)^2} sin((2n+1) pi v)` with
//! `q0 = e(tau/2)`. All higher objects only use theta through the ratio
//!
//! ```text
//! delta(a, b) = theta'(0) theta(a + b) / (2 pi i theta(a) theta(b)),
//! ```
//!
//! the additive form of `delta(A, B)` with `A = e(a)`, `B = e(b)`. It is
//! normalised so that `x delta(e^x, B) -> 1` as `x -> 0`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::numeric::{
    e_of, lattice_distance, pi, reduce_to_cell, truncation_order, two_pi_i, ModularParam,
    PrecisionConfig,
};

/// Default pole-avoidance radius in the flat metric on `C / (Z + tau Z)`.
pub const DEFAULT_EPS_POLE: f64 = 1e-4;

/// Everything that depends on `tau` alone, evaluated once.
#[derive(Debug, Clone)]
pub struct ThetaContext {
    modular: ModularParam,
    precision: PrecisionConfig,
    bits: u32,
    order: usize,
    eps_pole: f64,
    tau: Complex,
    /// `(-1)^n q0^{(n+1/2)^2}` for `n = 0..`; grown on demand up to `coeff_cap`.
    coeffs: Vec<Complex>,
    theta_prime: Complex,
    two_pi_i: Complex,
    pi: Float,
}

impl ThetaContext {
    pub fn new(modular: &ModularParam, precision: PrecisionConfig) -> Result<Self> {
        precision.validate()?;
        let bits = precision.bits();
        let tau = Complex::with_val(bits, modular.tau());
        let order = truncation_order(modular.q_abs(), precision.tail_tolerance)?;
        let mut ctx = Self {
            modular: ModularParam::new(tau.clone())?,
            precision,
            bits,
            order,
            eps_pole: DEFAULT_EPS_POLE,
            tau,
            coeffs: Vec::new(),
            theta_prime: Complex::new(bits),
            two_pi_i: two_pi_i(bits),
            pi: pi(bits),
        };
        // Enough coefficients for Taylor expansions and unreduced arguments.
        ctx.coeffs = (0..order + 40).map(|n| ctx.series_coeff(n)).collect();
        let mut tp = Complex::with_val(bits, 0);
        for (n, c) in ctx.coeffs.iter().take(order + 1).enumerate() {
            tp += Complex::with_val(bits, c * (2 * n as u64 + 1));
        }
        ctx.theta_prime = tp * Float::with_val(bits, &ctx.pi * 2u32);
        Ok(ctx)
    }

    pub fn with_eps_pole(mut self, eps_pole: f64) -> Self {
        self.eps_pole = eps_pole;
        self
    }

    fn series_coeff(&self, n: usize) -> Complex {
        // (-1)^n q0^{(n+1/2)^2} = (-1)^n e(tau (n+1/2)^2 / 2)
        let h = n as f64 + 0.5;
        let expo = Complex::with_val(self.bits, &self.tau * (h * h / 2.0));
        let mut c = e_of(&expo, self.bits).expect("q0 powers are bounded by 1");
        if n % 2 == 1 {
            c = -c;
        }
        c
    }

    fn coeff(&self, n: usize) -> Complex {
        match self.coeffs.get(n) {
            Some(c) => c.clone(),
            None => self.series_coeff(n),
        }
    }

    pub fn modular(&self) -> &ModularParam {
        &self.modular
    }

    pub fn tau(&self) -> &Complex {
        &self.tau
    }

    pub fn precision(&self) -> PrecisionConfig {
        self.precision
    }

    /// Binary precision used for every value produced by this context.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Truncation order derived from `|q|` and the tail tolerance.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn eps_pole(&self) -> f64 {
        self.eps_pole
    }

    pub fn two_pi_i(&self) -> &Complex {
        &self.two_pi_i
    }

    pub fn pi(&self) -> &Float {
        &self.pi
    }

    pub fn e(&self, x: &Complex) -> Result<Complex> {
        e_of(x, self.bits)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.bits, (re, im))
    }

    pub fn lift(&self, x: &Complex) -> Complex {
        Complex::with_val(self.bits, x)
    }

    pub fn lattice_distance(&self, a: &Complex) -> f64 {
        lattice_distance(a, &self.tau)
    }

    /// Fails with [`Error::PoleProximity`] when `a` is within `eps_pole` of the lattice.
    pub fn check_pole(&self, a: &Complex, location: impl FnOnce() -> String) -> Result<()> {
        let distance = self.lattice_distance(a);
        if distance < self.eps_pole {
            return Err(Error::PoleProximity {
                location: location(),
                distance,
                eps: self.eps_pole,
            });
        }
        Ok(())
    }

    /// Partial sine series `(1/i) sum_{n<terms} c_n (w^{2n+1} - w^{-(2n+1)})`, `w = e(v/2)`.
    fn sine_series(&self, v: &Complex, terms: usize) -> Complex {
        let bits = self.bits;
        let w = Complex::with_val(bits, v * &self.pi).mul_i(false).exp();
        let w_inv = Complex::with_val(bits, w.recip_ref());
        let w2 = Complex::with_val(bits, w.square_ref());
        let w2_inv = Complex::with_val(bits, w_inv.square_ref());
        let mut up = w;
        let mut down = w_inv;
        let mut sum = Complex::with_val(bits, 0);
        for n in 0..terms {
            let diff = Complex::with_val(bits, &up - &down);
            sum += diff * self.coeff(n);
            up *= &w2;
            down *= &w2_inv;
        }
        sum.mul_i(true)
    }

    /// `theta(v)`: the argument is moved into the fundamental cell and the
    /// quasi-periodicity multiplier `(-1)^{m+n} e(-n^2 tau/2 - n v0)` is applied.
    pub fn theta(&self, v: &Complex) -> Complex {
        let red = reduce_to_cell(&self.lift(v), &self.tau);
        let base = self.sine_series(&red.reduced, self.order + 1);
        if red.n == 0 {
            return if red.m % 2 == 0 { base } else { -base };
        }
        let mult = self.cell_multiplier(&red.reduced, red.m, red.n);
        base * mult
    }

    /// `(-1)^{m+n} e(-n^2 tau / 2 - n v0)`.
    fn cell_multiplier(&self, v0: &Complex, m: i64, n: i64) -> Complex {
        let nf = n as f64;
        let expo = Complex::with_val(self.bits, &self.tau * (-nf * nf / 2.0))
            - Complex::with_val(self.bits, v0 * nf);
        let mut out = self.e(&expo).expect("multiplier within exponent range");
        if (m + n).rem_euclid(2) == 1 {
            out = -out;
        }
        out
    }

    fn extra_terms(&self, v: &Complex) -> usize {
        let ratio = (v.imag().to_f64() / self.tau.imag().to_f64()).abs();
        ratio.ceil() as usize
    }

    /// The sine series summed directly, without moving the argument.
    /// Independent of the cell reduction used by [`ThetaContext::theta`].
    pub fn theta_series_direct(&self, v: &Complex) -> Complex {
        let v = self.lift(v);
        let terms = self.order + 2 * self.extra_terms(&v) + 3;
        self.sine_series(&v, terms)
    }

    /// The Jacobi product `2 q^{1/8} sin(pi v) prod_l (1 - q^l)(1 - q^l e(v))(1 - q^l e(-v))`.
    pub fn theta_product(&self, v: &Complex) -> Complex {
        let bits = self.bits;
        let v = self.lift(v);
        let q = self.e(&self.tau).expect("|q| < 1");
        let q8 = self
            .e(&Complex::with_val(bits, &self.tau / 8u32))
            .expect("|q| < 1");
        let ev = self.e(&v).expect("finite argument");
        let ev_inv = Complex::with_val(bits, ev.recip_ref());
        let sin = Complex::with_val(bits, &v * &self.pi).sin();
        let mut out = Complex::with_val(bits, sin * q8) * 2u32;
        let factors = self.order + self.extra_terms(&v) + 2;
        let mut ql = q.clone();
        for _ in 0..factors {
            let a = Complex::with_val(bits, 1 - &ql);
            let b = Complex::with_val(bits, 1 - Complex::with_val(bits, &ql * &ev));
            let c = Complex::with_val(bits, 1 - Complex::with_val(bits, &ql * &ev_inv));
            out *= a;
            out *= b;
            out *= c;
            ql *= &q;
        }
        out
    }

    /// `theta'(0) = 2 pi sum_n (-1)^n (2n+1) q0^{(n+1/2)^2}`, termwise derivative.
    pub fn theta_prime_zero(&self) -> &Complex {
        &self.theta_prime
    }

    /// Taylor coefficients `theta^{(k)}(a0) / k!` for `k = 0..=max_order`.
    pub fn theta_taylor(&self, a0: &Complex, max_order: usize) -> Vec<Complex> {
        let bits = self.bits;
        let red = reduce_to_cell(&self.lift(a0), &self.tau);
        let v0 = &red.reduced;
        let terms = self.order + max_order + 3;
        let w = Complex::with_val(bits, v0 * &self.pi).mul_i(false).exp();
        let w_inv = Complex::with_val(bits, w.recip_ref());
        let w2 = Complex::with_val(bits, w.square_ref());
        let w2_inv = Complex::with_val(bits, w_inv.square_ref());
        let mut up = w;
        let mut down = w_inv;
        let mut coeffs = vec![Complex::with_val(bits, 0); max_order + 1];
        for n in 0..terms {
            let c = self.coeff(n);
            // d^k/dv^k of c (w^{2n+1} - w^{-(2n+1)}) / i with w = e(v/2).
            let freq = Complex::with_val(
                bits,
                (0, Float::with_val(bits, &self.pi * (2 * n as u64 + 1))),
            );
            let neg_freq = Complex::with_val(bits, -&freq);
            let mut fu = Complex::with_val(bits, &c * &up);
            let mut fd = Complex::with_val(bits, &c * &down);
            for (k, slot) in coeffs.iter_mut().enumerate() {
                if k > 0 {
                    fu *= &freq;
                    fd *= &neg_freq;
                    let kf = k as u32;
                    fu /= kf;
                    fd /= kf;
                }
                *slot += Complex::with_val(bits, &fu - &fd);
            }
            up *= &w2;
            down *= &w2_inv;
        }
        for slot in coeffs.iter_mut() {
            *slot = Complex::with_val(bits, slot.mul_i_ref(true));
        }
        if red.n == 0 {
            if red.m % 2 != 0 {
                for slot in coeffs.iter_mut() {
                    *slot = Complex::with_val(bits, -&*slot);
                }
            }
            return coeffs;
        }
        // Multiply by the cell multiplier as a series in s: const * exp(-2 pi i n s).
        let mult = self.cell_multiplier(v0, red.m, red.n);
        let rate = Complex::with_val(bits, &self.two_pi_i * (-(red.n as f64)));
        let mut exp_series = Vec::with_capacity(max_order + 1);
        let mut term = mult;
        for k in 0..=max_order {
            if k > 0 {
                term *= &rate;
                term /= k as u32;
            }
            exp_series.push(term.clone());
        }
        let mut out = vec![Complex::with_val(bits, 0); max_order + 1];
        for i in 0..=max_order {
            for j in 0..=(max_order - i) {
                out[i + j] += Complex::with_val(bits, &coeffs[i] * &exp_series[j]);
            }
        }
        out
    }

    /// `delta(a, b)` without the pole check.
    pub fn delta_unchecked(&self, a: &Complex, b: &Complex) -> Complex {
        let bits = self.bits;
        let a = self.lift(a);
        let b = self.lift(b);
        let sum = Complex::with_val(bits, &a + &b);
        let num = Complex::with_val(bits, &self.theta_prime * self.theta(&sum));
        let den = Complex::with_val(bits, self.theta(&a) * self.theta(&b)) * &self.two_pi_i;
        num / den
    }

    /// `delta(A, B) = theta'(0) theta(a+b) / (2 pi i theta(a) theta(b))`.
    pub fn delta(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.check_pole(a, || "delta first argument".into())?;
        self.check_pole(b, || "delta second argument".into())?;
        Ok(self.delta_unchecked(a, b))
    }

    /// `delta` evaluated through the unreduced sine series.
    pub fn delta_direct(&self, a: &Complex, b: &Complex) -> Result<Complex> {
        self.check_pole(a, || "delta first argument".into())?;
        self.check_pole(b, || "delta second argument".into())?;
        let bits = self.bits;
        let sum = Complex::with_val(bits, a + b);
        let num = Complex::with_val(bits, &self.theta_prime * self.theta_series_direct(&sum));
        let den = Complex::with_val(
            bits,
            self.theta_series_direct(a) * self.theta_series_direct(b),
        ) * &self.two_pi_i;
        Ok(num / den)
    }

    /// `Phi(lambda) = delta(e(lambda) t, h) delta(e(-lambda) t, h)`.
    pub fn phi(&self, lambda: &Complex, t: &Complex, h: &Complex) -> Result<Complex> {
        self.psi(lambda, t, t, h)
    }

    /// `Psi(lambda) = delta(e(lambda) t1, h) delta(e(-lambda) t2, h)`.
    pub fn psi(
        &self,
        lambda: &Complex,
        t1: &Complex,
        t2: &Complex,
        h: &Complex,
    ) -> Result<Complex> {
        let bits = self.bits;
        let first = self.delta(&Complex::with_val(bits, lambda + t1), h)?;
        let second = self.delta(&Complex::with_val(bits, t2 - lambda), h)?;
        Ok(first * second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{absolute_error, relative_error};

    fn ctx(re: f64, im: f64) -> ThetaContext {
        ThetaContext::new(
            &ModularParam::from_f64(re, im).unwrap(),
            PrecisionConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn theta_vanishes_at_origin() {
        let c = ctx(0.1, 1.0);
        let z = c.theta(&c.complex(0.0, 0.0));
        assert!(z.real().is_zero() && z.imag().is_zero());
    }

    #[test]
    fn theta_is_odd() {
        let c = ctx(-0.2, 0.9);
        let v = c.complex(0.37, 0.11);
        let mv = c.complex(-0.37, -0.11);
        let lhs = c.theta(&v);
        let rhs = -c.theta(&mv);
        assert!(relative_error(&lhs, &rhs) < 1e-25);
    }

    #[test]
    fn theta_matches_brute_force_partial_sum() {
        // 40-digit mpmath evaluation of the sine series at v = 0.37 and tau = i times the double nearest 1.1.
        let c = ctx(0.0, 1.1);
        let v = Complex::with_val(c.bits(), Float::parse("0.37").unwrap());
        let value = c.theta(&v);
        let expected = Float::with_val(
            c.bits(),
            Float::parse("0.77394971871773583587129693695547428226").unwrap(),
        );
        let diff = Float::with_val(c.bits(), value.real() - &expected);
        assert!(diff.abs().to_f64() < 1e-28, "{}", value.real());
        assert!(value.imag().to_f64().abs() < 1e-25);
    }

    #[test]
    fn delta_limit_normalisation() {
        let c = ctx(0.05, 1.2);
        let h = c.complex(0.21, -0.07);
        for x in [1e-4, 1e-6, 1e-8] {
            // x delta(e^x, h): additive argument x / (2 pi i).
            let a = Complex::with_val(c.bits(), c.complex(x, 0.0) / c.two_pi_i());
            let v = c.delta_unchecked(&a, &h) * x;
            let err = absolute_error(&v, &c.complex(1.0, 0.0));
            assert!(err < 10.0 * x, "x = {x}: err = {err}");
        }
    }

    #[test]
    fn delta_rejects_lattice_points() {
        let c = ctx(0.0, 1.0);
        let near = Complex::with_val(c.bits(), c.tau() + c.complex(1.0 + 1e-6, 0.0));
        let err = c.delta(&near, &c.complex(0.3, 0.1)).unwrap_err();
        assert!(matches!(err, Error::PoleProximity { .. }));
    }

    #[test]
    fn theta_prime_matches_finite_difference() {
        let c = ctx(0.3, 0.85);
        let eps = 1e-8;
        let plus = c.theta(&c.complex(eps, 0.0));
        let minus = c.theta(&c.complex(-eps, 0.0));
        let fd = Complex::with_val(c.bits(), &plus - &minus) / (2.0 * eps);
        assert!(relative_error(&fd, c.theta_prime_zero()) < 1e-14);
    }

    #[test]
    fn theta_prime_leading_term_for_small_q() {
        let m = ModularParam::from_q_abs(1e-12, 128).unwrap();
        let c = ThetaContext::new(&m, PrecisionConfig::default()).unwrap();
        // 2 pi q0^{1/4} with q0 = |q|^{1/2}; next term is O(q0^2) relative.
        let lead = 2.0 * std::f64::consts::PI * (1e-12f64).powf(0.125);
        let rel = (c.theta_prime_zero().real().to_f64() - lead).abs() / lead;
        assert!(rel < 1e-11, "rel = {rel}");
    }

    #[test]
    fn theta_taylor_matches_values() {
        let c = ctx(0.2, 1.0);
        let a0 = c.complex(0.3, 1.4);
        let coeffs = c.theta_taylor(&a0, 8);
        assert!(relative_error(&coeffs[0], &c.theta(&a0)) < 1e-25);
        let s: f64 = 1e-3;
        let mut approx = Complex::with_val(c.bits(), 0);
        for (k, ck) in coeffs.iter().enumerate() {
            approx += Complex::with_val(c.bits(), ck * s.powi(k as i32));
        }
        let shifted = Complex::with_val(c.bits(), &a0 + s);
        let err = relative_error(&approx, &c.theta(&shifted));
        assert!(err < 1e-20, "{err}");
    }

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    struct Sample {
        ctx: ThetaContext,
        v: Complex,
        w: Complex,
    }

    fn samples(seed: u64, count: usize) -> Vec<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let tau_im = rng.gen_range(0.8..2.0);
                let ctx = ctx(rng.gen_range(-0.5..0.5), tau_im);
                let draw = |rng: &mut ChaCha8Rng| {
                    ctx.complex(
                        rng.gen_range(-0.5..0.5),
                        rng.gen_range(-tau_im / 4.0..tau_im / 4.0),
                    )
                };
                let v = draw(&mut rng);
                let w = draw(&mut rng);
                Sample { ctx, v, w }
            })
            .collect()
    }

    #[test]
    fn quasi_periodicity_at_random_points() {
        for s in samples(11, 100) {
            let c = &s.ctx;
            let bits = c.bits();
            let base = c.theta_series_direct(&s.v);
            let odd = -c.theta(&Complex::with_val(bits, -&s.v));
            assert!(relative_error(&c.theta(&s.v), &odd) < 1e-12);

            let v1 = Complex::with_val(bits, &s.v + 1u32);
            let shifted = -c.theta_series_direct(&v1);
            assert!(relative_error(&base, &shifted) < 1e-12);

            let vt = Complex::with_val(bits, &s.v + c.tau());
            let expo = -Complex::with_val(bits, c.tau() / 2u32) - &s.v;
            let predicted = -c.e(&expo).unwrap() * &base;
            assert!(relative_error(&c.theta_series_direct(&vt), &predicted) < 1e-12);
        }
    }

    #[test]
    fn reduced_route_matches_direct_series_far_from_the_cell() {
        for s in samples(12, 50) {
            let c = &s.ctx;
            let far =
                Complex::with_val(c.bits(), &s.v + Complex::with_val(c.bits(), c.tau() * 3u32))
                    + 2u32;
            let err = relative_error(&c.theta(&far), &c.theta_series_direct(&far));
            assert!(err < 1e-20, "{err}");
        }
    }

    #[test]
    fn series_and_product_agree() {
        for s in samples(13, 100) {
            let c = &s.ctx;
            let err = relative_error(&c.theta(&s.v), &c.theta_product(&s.v));
            assert!(err < 1e-22, "{err}");
        }
    }

    #[test]
    fn delta_symmetries() {
        for s in samples(14, 50) {
            let c = &s.ctx;
            let bits = c.bits();
            let d = c.delta(&s.v, &s.w).unwrap();
            assert!(relative_error(&d, &c.delta(&s.w, &s.v).unwrap()) < 1e-25);

            let neg = c
                .delta(
                    &Complex::with_val(bits, -&s.v),
                    &Complex::with_val(bits, -&s.w),
                )
                .unwrap();
            assert!(relative_error(&d, &-neg) < 1e-25);

            let v1 = Complex::with_val(bits, &s.v + 1u32);
            assert!(relative_error(&d, &c.delta_direct(&v1, &s.w).unwrap()) < 1e-20);

            let vt = Complex::with_val(bits, &s.v + c.tau());
            let predicted = c.e(&Complex::with_val(bits, -&s.w)).unwrap() * &d;
            assert!(relative_error(&c.delta_direct(&vt, &s.w).unwrap(), &predicted) < 1e-20);
        }
    }

    #[test]
    fn phi_properties() {
        for s in samples(15, 30) {
            let c = &s.ctx;
            let bits = c.bits();
            let lambda = c.complex(0.23, 0.05);
            let h = c.complex(0.17, -0.08);
            let zero = c.complex(0.0, 0.0);
            let d = c.delta(&s.v, &h).unwrap();
            let phi0 = c.phi(&zero, &s.v, &h).unwrap();
            assert!(relative_error(&phi0, &Complex::with_val(bits, d.square_ref())) < 1e-25);

            let phi = c.phi(&lambda, &s.v, &h).unwrap();
            let mirrored = c.phi(&Complex::with_val(bits, -&lambda), &s.v, &h).unwrap();
            assert!(relative_error(&phi, &mirrored) < 1e-25);

            let moved = Complex::with_val(bits, c.tau() + 1u32) - &lambda;
            let far = c.phi(&moved, &s.v, &h).unwrap();
            assert!(relative_error(&phi, &far) < 1e-20);
        }
    }

    #[test]
    fn psi_properties() {
        for s in samples(16, 30) {
            let c = &s.ctx;
            let bits = c.bits();
            let lambda = c.complex(0.25, 0.0);
            let h = c.complex(-0.21, 0.06);
            let psi = c.psi(&lambda, &s.v, &s.w, &h).unwrap();
            let flipped = c
                .psi(
                    &lambda,
                    &Complex::with_val(bits, -&s.w),
                    &Complex::with_val(bits, -&s.v),
                    &Complex::with_val(bits, -&h),
                )
                .unwrap();
            assert!(relative_error(&psi, &flipped) < 1e-25);

            let diag = c.psi(&lambda, &s.v, &s.v, &h).unwrap();
            assert!(relative_error(&diag, &c.phi(&lambda, &s.v, &h).unwrap()) < 1e-30);

            let first = c
                .delta(&Complex::with_val(bits, &lambda + &s.v), &h)
                .unwrap();
            let second = c
                .delta(&Complex::with_val(bits, &s.w - &lambda), &h)
                .unwrap();
            assert!(relative_error(&psi, &(first * second)) < 1e-30);
        }
    }

    #[test]
    fn modular_relations() {
        for s in samples(17, 20) {
            let c = &s.ctx;
            let bits = c.bits();
            let t = ModularParam::new(Complex::with_val(bits, c.tau() + 1u32)).unwrap();
            let shifted = ThetaContext::new(&t, c.precision()).unwrap();
            let eighth = c.e(&c.complex(0.125, 0.0)).unwrap();
            let predicted = eighth * c.theta(&s.v);
            assert!(relative_error(&shifted.theta(&s.v), &predicted) < 1e-20);

            // theta_{-1/tau}(v/tau) = -i sqrt(tau/i) e(v^2/(2 tau)) theta_tau(v),
            // principal branch of the square root.
            let inv_tau = -Complex::with_val(bits, c.tau().recip_ref());
            if inv_tau.imag().to_f64() < 0.3 {
                continue;
            }
            let s_ctx =
                ThetaContext::new(&ModularParam::new(inv_tau).unwrap(), c.precision()).unwrap();
            let arg = Complex::with_val(bits, &s.v / c.tau());
            let lhs = s_ctx.theta(&arg);
            let root = Complex::with_val(bits, c.tau() / c.complex(0.0, 1.0)).sqrt();
            let gauss = c
                .e(&(Complex::with_val(bits, s.v.square_ref())
                    / Complex::with_val(bits, c.tau() * 2u32)))
                .unwrap();
            let rhs = (root * gauss * c.theta(&s.v)).mul_i(true);
            assert!(relative_error(&lhs, &rhs) < 1e-18);
        }
    }

    #[test]
    fn more_digits_barely_move_theta() {
        let m = ModularParam::from_f64(0.17, 0.9).unwrap();
        let low = ThetaContext::new(&m, PrecisionConfig::default()).unwrap();
        let high = ThetaContext::new(&m, PrecisionConfig::with_digits(40).unwrap()).unwrap();
        for s in samples(18, 20) {
            let a = low.theta(&s.v);
            let b = high.theta(&high.lift(&s.v));
            let tol = 10.0 * low.precision().tail_tolerance;
            assert!(absolute_error(&a, &b) < tol);
        }
    }
}
