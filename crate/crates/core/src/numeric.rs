//! Precision-parametrized complex arithmetic.
//!
//! Every multiplicative variable of the theory (`t`, `mu`, `hbar`, `q`) is
//! handled through its additive coordinate `a`, with `A = e(a) = exp(2 pi i a)`.
//! Fractional powers such as `hbar^{m/n}` or `q^{-nu}` are then exact scalings
//! of the coordinate and never require a choice of branch.

use std::ops::Deref;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard bits added on top of the requested decimal precision.
const GUARD_BITS: u32 = 24;

/// Working precision and the tolerance used to truncate every q-series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_digits: u32,
    pub tail_tolerance: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            working_digits: 30,
            tail_tolerance: 1e-25,
        }
    }
}

impl PrecisionConfig {
    pub fn new(working_digits: u32, tail_tolerance: f64) -> Result<Self> {
        let cfg = Self {
            working_digits,
            tail_tolerance,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// A config with `digits` working digits and a tail tolerance five
    /// orders of magnitude above the unit roundoff.
    pub fn with_digits(digits: u32) -> Result<Self> {
        let tol = 10f64.powi(-(digits as i32 - 5).clamp(10, 300));
        Self::new(digits, tol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.working_digits < 15 {
            return Err(Error::InvalidPrecision(format!(
                "working_digits must be >= 15, got {}",
                self.working_digits
            )));
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance < 1.0) {
            return Err(Error::InvalidPrecision(format!(
                "tail_tolerance must lie in (0, 1), got {}",
                self.tail_tolerance
            )));
        }
        Ok(())
    }

    /// Binary precision of the underlying floats.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }
}

/// The modular parameter `tau`, with `Im tau > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularParam {
    tau: Complex,
}

impl ModularParam {
    pub fn new(tau: Complex) -> Result<Self> {
        if !tau.real().is_finite() || !tau.imag().is_finite() {
            return Err(Error::InvalidModular("tau must be finite".into()));
        }
        if *tau.imag() <= 0 {
            return Err(Error::InvalidModular(format!(
                "Im(tau) must be positive, got {}",
                tau.imag().to_f64()
            )));
        }
        Ok(Self { tau })
    }

    pub fn from_f64(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex::with_val(128, (re, im)))
    }

    /// The modular parameter with `q = e(tau)` real, positive and of modulus `q_abs`.
    pub fn from_q_abs(q_abs: f64, bits: u32) -> Result<Self> {
        if !(q_abs > 0.0 && q_abs < 1.0) {
            return Err(Error::InvalidModular(format!(
                "|q| must lie in (0, 1), got {q_abs}"
            )));
        }
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let im = -Float::with_val(bits, q_abs).ln() / two_pi;
        Self::new(Complex::with_val(bits, (0, im)))
    }

    pub fn tau(&self) -> &Complex {
        &self.tau
    }

    /// `|q| = exp(-2 pi Im tau)`.
    pub fn q_abs(&self) -> f64 {
        (-2.0 * std::f64::consts::PI * self.tau.imag().to_f64()).exp()
    }
}

/// An additive coordinate `a`; the multiplicative variable it stands for is `e(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveArg(pub Complex);

impl AdditiveArg {
    pub fn new(value: Complex) -> Self {
        Self(value)
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self(Complex::with_val(128, (re, im)))
    }

    pub fn value(&self) -> &Complex {
        &self.0
    }
}

impl Deref for AdditiveArg {
    type Target = Complex;
    fn deref(&self) -> &Complex {
        &self.0
    }
}

impl From<Complex> for AdditiveArg {
    fn from(value: Complex) -> Self {
        Self(value)
    }
}

/// `pi` at `bits` of precision.
pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// `2 pi i` at `bits` of precision.
pub fn two_pi_i(bits: u32) -> Complex {
    Complex::with_val(bits, (0, pi(bits) * 2u32))
}

/// `e(x) = exp(2 pi i x)`.
pub fn e_of(x: &Complex, bits: u32) -> Result<Complex> {
    let arg = Complex::with_val(bits, x * two_pi_i(bits));
    let out = arg.exp();
    let finite = out.real().is_finite() && out.imag().is_finite();
    let vanished = out.real().is_zero() && out.imag().is_zero();
    if !finite || vanished {
        let (re, im) = to_f64_pair(x);
        return Err(Error::Overflow(format!("{re}{im:+}i")));
    }
    Ok(out)
}

/// Smallest `N >= 1` such that both the product tail `prod_{l > N}` and the
/// sine-series tail `sum_{n > N} q0^{(n+1/2)^2}` of the theta function fall
/// below `tail_tolerance`, for arguments reduced to the fundamental cell.
///
/// Each product factor `1 - q^l e(+-v)` deviates from 1 by at most
/// `|q|^{l - 1/2}` when `|Im v| <= Im(tau)/2`, so three families of factors
/// give a relative tail of `3 |q|^{N + 1/2} / (1 - |q|)`.
pub fn truncation_order(q_abs: f64, tail_tolerance: f64) -> Result<usize> {
    if !(q_abs > 0.0 && q_abs < 1.0) {
        return Err(Error::InvalidModular(format!(
            "|q| must lie in (0, 1), got {q_abs}"
        )));
    }
    if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
        return Err(Error::InvalidPrecision(format!(
            "tail_tolerance must lie in (0, 1), got {tail_tolerance}"
        )));
    }
    let ln_q = q_abs.ln();
    let ln_tol = tail_tolerance.ln();
    let ln_prod_scale = (3.0 / (1.0 - q_abs)).ln();
    let ln_series_scale = (2.0 / (1.0 - q_abs.sqrt())).ln();
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let prod_tail = ln_prod_scale + (nf + 0.5) * ln_q;
        let series_tail = ln_series_scale + 0.5 * ((nf + 1.0).powi(2) - 0.25) * ln_q;
        if prod_tail < ln_tol && series_tail < ln_tol {
            return Ok(n);
        }
        n += 1;
    }
}

pub fn complex_f64(bits: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(bits, (re, im))
}

pub fn to_f64_pair(c: &Complex) -> (f64, f64) {
    (c.real().to_f64(), c.imag().to_f64())
}

/// `|c|` as an `f64` (saturating to infinity for huge values).
pub fn abs_f64(c: &Complex) -> f64 {
    Float::with_val(c.prec().0, c.abs_ref()).to_f64()
}

/// Relative error `|l - r| / max(|l|, |r|, 1e-300)`.
pub fn relative_error(l: &Complex, r: &Complex) -> f64 {
    let bits = l.prec().0.max(r.prec().0);
    let diff = Complex::with_val(bits, l - r);
    let num = abs_f64(&diff);
    let den = abs_f64(l).max(abs_f64(r)).max(1e-300);
    num / den
}

pub fn absolute_error(l: &Complex, r: &Complex) -> f64 {
    let bits = l.prec().0.max(r.prec().0);
    abs_f64(&Complex::with_val(bits, l - r))
}

/// Decomposition `a = v0 + m + n tau` with `v0` in the cell
/// `|Im v0| <= Im(tau)/2`, `|Re v0 - (Im v0 / Im tau) Re tau| <= 1/2`.
#[derive(Debug, Clone)]
pub struct CellReduction {
    pub reduced: Complex,
    pub m: i64,
    pub n: i64,
}

pub fn reduce_to_cell(a: &Complex, tau: &Complex) -> CellReduction {
    let bits = a.prec().0.max(tau.prec().0);
    let n_f = (a.imag().to_f64() / tau.imag().to_f64()).round();
    let n = n_f as i64;
    let mut shifted = Complex::with_val(bits, a - Complex::with_val(bits, tau * n));
    let m = shifted.real().to_f64().round() as i64;
    shifted -= m;
    CellReduction {
        reduced: shifted,
        m,
        n,
    }
}

/// Flat distance from `a` to the lattice `Z + tau Z`.
pub fn lattice_distance(a: &Complex, tau: &Complex) -> f64 {
    let red = reduce_to_cell(a, tau);
    let (vr, vi) = to_f64_pair(&red.reduced);
    let (tr, ti) = to_f64_pair(tau);
    let mut best = f64::INFINITY;
    for j in -1i32..=1 {
        for i in -1i32..=1 {
            let dr = vr - i as f64 - j as f64 * tr;
            let di = vi - j as f64 * ti;
            best = best.min(dr.hypot(di));
        }
    }
    best
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i` (decimal strings, optional exponents).
pub fn parse_complex(text: &str, bits: u32) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidArgument(format!("cannot parse complex number `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let parse_real = |part: &str| -> Result<Float> {
        let parsed = Float::parse(part).map_err(|_| bad())?;
        Ok(Float::with_val(bits, parsed))
    };
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex::with_val(bits, (parse_real(&s)?, 0)));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => Float::with_val(bits, 1),
        "-" => Float::with_val(bits, -1),
        other => parse_real(other)?,
    };
    let re = if re_part.is_empty() {
        Float::with_val(bits, 0)
    } else {
        parse_real(re_part)?
    };
    Ok(Complex::with_val(bits, (re, im)))
}

/// Decimal strings for the real and imaginary part, `digits` significant digits.
pub fn format_complex(c: &Complex, digits: usize) -> [String; 2] {
    [
        c.real().to_string_radix(10, Some(digits)),
        c.imag().to_string_radix(10, Some(digits)),
    ]
}

/// `z^k` for a machine integer exponent.
pub fn powi(z: &Complex, k: i64) -> Complex {
    let bits = z.prec().0;
    if k >= 0 {
        Complex::with_val(bits, z.pow(k as u64))
    } else {
        let inv = Complex::with_val(bits, z.recip_ref());
        Complex::with_val(bits, inv.pow((-k) as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BITS: u32 = 128;

    #[test]
    fn e_of_identity_and_half_period() {
        let one = e_of(&Complex::with_val(BITS, 0), BITS).unwrap();
        assert_eq!(one, Complex::with_val(BITS, 1));
        let half = e_of(&Complex::with_val(BITS, (0.5, 0)), BITS).unwrap();
        assert!(absolute_error(&half, &Complex::with_val(BITS, -1)) < 1e-35);
    }

    #[test]
    fn e_of_tau_gives_q() {
        // q = exp(-2.6 pi) for tau = 1.3 i.
        let q = e_of(&Complex::with_val(BITS, (0, 1.3)), BITS).unwrap();
        let expected = (-2.6 * std::f64::consts::PI).exp();
        assert!((q.real().to_f64() - expected).abs() < 1e-18);
        assert!((q.real().to_f64() - 2.8354e-4).abs() < 1e-8);
        assert!(q.imag().to_f64().abs() < 1e-30);
    }

    #[test]
    fn e_of_overflow_is_reported() {
        let huge = Complex::with_val(64, (0, Float::with_val(64, Float::parse("-1e30").unwrap())));
        assert!(matches!(e_of(&huge, 64), Err(Error::Overflow(_))));
    }

    #[test]
    fn truncation_order_examples() {
        let n = truncation_order(0.5, 1e-30).unwrap();
        assert!(0.5f64.powi(n as i32) < 1e-30);
        assert!((100..=105).contains(&n), "n = {n}");

        assert_eq!(truncation_order(1e-300, 1e-25).unwrap(), 1);
        assert!(truncation_order(6.6e-3, 1e-20).unwrap() <= 10);
    }

    #[test]
    fn truncation_order_rejects_bad_q() {
        assert!(matches!(
            truncation_order(1.0, 1e-10),
            Err(Error::InvalidModular(_))
        ));
        assert!(truncation_order(0.0, 1e-10).is_err());
    }

    #[test]
    fn truncation_order_grows_with_q() {
        let mut prev = 0;
        for k in 1..200 {
            let q = k as f64 / 200.0;
            let n = truncation_order(q, 1e-25).unwrap();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn precision_config_validation() {
        assert!(PrecisionConfig::new(14, 1e-10).is_err());
        assert!(PrecisionConfig::new(30, 0.0).is_err());
        assert!(PrecisionConfig::new(30, 1.0).is_err());
        let cfg = PrecisionConfig::default();
        assert_eq!(cfg.working_digits, 30);
        assert_eq!(cfg.tail_tolerance, 1e-25);
        assert!(cfg.bits() >= 100);
    }

    #[test]
    fn modular_param_requires_upper_half_plane() {
        assert!(ModularParam::from_f64(0.1, 0.0).is_err());
        assert!(ModularParam::from_f64(0.1, -1.0).is_err());
        let m = ModularParam::from_q_abs(1e-6, BITS).unwrap();
        assert!((m.q_abs() - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn parse_complex_forms() {
        let cases = [
            ("1.5", (1.5, 0.0)),
            ("0.25+1.5i", (0.25, 1.5)),
            ("-0.1-2e-3i", (-0.1, -2e-3)),
            ("1.3i", (0.0, 1.3)),
            ("-i", (0.0, -1.0)),
            ("1e-2+1E+1i", (0.01, 10.0)),
        ];
        for (text, (re, im)) in cases {
            let c = parse_complex(text, BITS).unwrap();
            assert_eq!(to_f64_pair(&c), (re, im), "{text}");
        }
        assert!(parse_complex("abc", BITS).is_err());
        assert!(parse_complex("", BITS).is_err());
    }

    #[test]
    fn lattice_distance_and_reduction() {
        let tau = Complex::with_val(BITS, (0.3, 1.1));
        let a = Complex::with_val(BITS, (2.0 + 0.6 + 1e-3, 2.2));
        let red = reduce_to_cell(&a, &tau);
        assert_eq!((red.m, red.n), (2, 2));
        assert!((lattice_distance(&a, &tau) - 1e-3).abs() < 1e-12);
        assert!(lattice_distance(&tau, &tau) < 1e-30);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn e_of_is_one_periodic(re in -3.0f64..3.0, im in -1.0f64..1.0) {
            let x = Complex::with_val(BITS, (re, im));
            let x1 = Complex::with_val(BITS, &x + 1u32);
            let l = e_of(&x, BITS).unwrap();
            let r = e_of(&x1, BITS).unwrap();
            prop_assert!(relative_error(&l, &r) < 1e-30);
        }

        #[test]
        fn e_of_is_a_homomorphism(
            a in -2.0f64..2.0, b in -0.5f64..0.5, c in -2.0f64..2.0, d in -0.5f64..0.5,
        ) {
            let x = Complex::with_val(BITS, (a, b));
            let y = Complex::with_val(BITS, (c, d));
            let sum = Complex::with_val(BITS, &x + &y);
            let l = e_of(&x, BITS).unwrap() * e_of(&y, BITS).unwrap();
            let r = e_of(&sum, BITS).unwrap();
            prop_assert!(relative_error(&l, &r) < 1e-30);
        }
    }
}
