//! The `q -> 0` limits of the `A_{n-1}` identity: three rational closed
//! forms in `t1, t2, y`, and the trigonometric identity at `t1 = t2 = 1/T`.
//! Each form is available in complex floating point and in exact rational
//! arithmetic; root-of-unity averages are done exactly by reduction modulo
//! `x^n - 1`.

use rug::{Complex, Rational};

use crate::error::{Error, Result};
use crate::numeric::abs_f64;

const ZERO_TOL: f64 = 1e-300;

fn nonzero(value: &Complex, form: &str) -> Result<()> {
    if abs_f64(value) < ZERO_TOL {
        return Err(Error::DivisionByZero(form.to_string()));
    }
    Ok(())
}

fn ratio(num: Complex, den: Complex, form: &str) -> Result<Complex> {
    nonzero(&den, form)?;
    Ok(num / den)
}

fn powi(z: &Complex, k: i64) -> Complex {
    crate::numeric::powi(z, k)
}

/// `(1 - y r) / (1 - r)`.
fn hirz_factor(r: &Complex, y: &Complex, form: &str) -> Result<Complex> {
    let bits = r.prec().0;
    let one = Complex::with_val(bits, 1);
    let num = Complex::with_val(bits, &one - Complex::with_val(bits, y * r));
    ratio(num, one - r, form)
}

/// `[(*)_inf, (**)_inf, (***)_inf]` at multiplicative `t1, t2, y`.
pub fn hirzebruch_limit_forms(
    n: usize,
    t1: &Complex,
    t2: &Complex,
    y: &Complex,
) -> Result<[Complex; 3]> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let bits = t1.prec().0;
    let ni = n as i64;
    nonzero(y, "y")?;
    let y_inv = Complex::with_val(bits, y.recip_ref());

    let mut star = Complex::with_val(bits, 0);
    for k in 1..=ni {
        let r1 = powi(t2, k - 1) / powi(t1, ni - k + 1);
        let r2 = powi(t1, ni - k) / powi(t2, k);
        star += hirz_factor(&r1, y, "(*) limit")? * hirz_factor(&r2, y, "(*) limit")?;
    }
    star *= &y_inv;

    let t1_inv = Complex::with_val(bits, t1.recip_ref());
    let t2_inv = Complex::with_val(bits, t2.recip_ref());
    let mut avg = Complex::with_val(bits, 0);
    for k in 0..ni {
        let w = exact_root(bits, k, ni);
        let w_inv = Complex::with_val(bits, w.recip_ref());
        let a = Complex::with_val(bits, &w * &t1_inv);
        let b = Complex::with_val(bits, &w_inv * &t2_inv);
        avg += hirz_factor(&a, y, "(**) limit")? * hirz_factor(&b, y, "(**) limit")?;
    }
    let double = avg * &y_inv / n as u32 + (n as u32 - 1);

    let one = Complex::with_val(bits, 1);
    let p_inv = Complex::with_val(bits, &t1_inv * &t2_inv);
    let num = Complex::with_val(bits, &one - y)
        * Complex::with_val(bits, &one - Complex::with_val(bits, y * &p_inv))
        * Complex::with_val(bits, &one - powi(&p_inv, ni));
    let den = Complex::with_val(bits, &one - &p_inv)
        * Complex::with_val(bits, &one - powi(&t1_inv, ni))
        * Complex::with_val(bits, &one - powi(&t2_inv, ni));
    let triple = ratio(num, den, "(***) limit")? * y_inv + n as u32;
    Ok([star, double, triple])
}

/// `e(k/n)` with the argument formed at full precision.
fn exact_root(bits: u32, k: i64, n: i64) -> Complex {
    let pi = crate::numeric::pi(bits);
    let angle = rug::Float::with_val(bits, pi * 2u32) * k / n;
    Complex::with_val(bits, (angle.clone().cos(), angle.sin()))
}

/// Both sides of `(1/n) sum_k (1 - 2 cos(2 pi k/n) y T + y^2 T^2) / (1 - 2 cos(2 pi k/n) T + T^2)
/// = (1 - y)(1 - y T^2)(1 - T^{2n}) / ((1 - T^2)(1 - T^n)^2) + y`.
pub fn trig_identity(n: usize, t: &Complex, y: &Complex) -> Result<(Complex, Complex)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let bits = t.prec().0;
    let ni = n as i64;
    let one = Complex::with_val(bits, 1);
    let yt = Complex::with_val(bits, y * t);
    let t2 = Complex::with_val(bits, t.square_ref());
    let y2t2 = Complex::with_val(bits, yt.square_ref());
    let pi = crate::numeric::pi(bits);
    let mut lhs = Complex::with_val(bits, 0);
    for k in 0..ni {
        let angle = rug::Float::with_val(bits, &pi * 2u32) * k / ni;
        let two_cos = angle.cos() * 2u32;
        let num = Complex::with_val(bits, &one - Complex::with_val(bits, &yt * &two_cos)) + &y2t2;
        let den = Complex::with_val(bits, &one - Complex::with_val(bits, t * &two_cos)) + &t2;
        lhs += ratio(num, den, "trigonometric sum")?;
    }
    lhs /= n as u32;
    let tn = powi(t, ni);
    let num = Complex::with_val(bits, &one - y)
        * Complex::with_val(bits, &one - Complex::with_val(bits, y * &t2))
        * Complex::with_val(bits, &one - Complex::with_val(bits, tn.square_ref()));
    let den =
        Complex::with_val(bits, &one - &t2) * Complex::with_val(bits, (&one - tn).square_ref());
    let rhs = ratio(num, den, "trigonometric closed form")? + y;
    Ok((lhs, rhs))
}

/// Dense polynomial over `Q`, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<Rational>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.cmp0().is_eq()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.cmp0().is_eq())
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Rational::new(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Poly(out).trim()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let out = (0..len)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_default();
                let b = other.0.get(i).cloned().unwrap_or_default();
                a - b
            })
            .collect();
        Poly(out).trim()
    }

    fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let mut rem = self.clone().trim();
        let d = divisor.degree();
        let lead = divisor.0[d].clone();
        if rem.degree() < d || rem.is_zero() {
            return (Poly(vec![Rational::new()]), rem);
        }
        let mut quot = vec![Rational::new(); rem.degree() - d + 1];
        while !rem.is_zero() && rem.degree() >= d {
            let shift = rem.degree() - d;
            let c = Rational::from(&rem.0[rem.degree()] / &lead);
            for (i, dc) in divisor.0.iter().enumerate() {
                rem.0[i + shift] -= Rational::from(&c * dc);
            }
            quot[shift] = c;
            rem = rem.trim();
        }
        (Poly(quot).trim(), rem)
    }

    /// Inverse modulo `modulus`, if the two are coprime.
    fn inverse_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (mut r0, mut r1) = (modulus.clone(), self.divrem(modulus).1);
        let (mut s0, mut s1) = (Poly(vec![Rational::new()]), Poly(vec![Rational::from(1)]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != 0 {
            return None;
        }
        let c = r0.0[0].clone();
        Some(
            Poly(s0.0.into_iter().map(|x| x / &c).collect())
                .divrem(modulus)
                .1,
        )
    }
}

/// `(1/n) sum_{w^n = 1} N(w) / D(w)` in exact arithmetic, for polynomials
/// given lowest degree first. Fails if `D` vanishes at an `n`-th root of unity.
pub fn root_of_unity_average(n: usize, num: &[Rational], den: &[Rational]) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut modulus = vec![Rational::new(); n + 1];
    modulus[0] = Rational::from(-1);
    modulus[n] = Rational::from(1);
    let modulus = Poly(modulus);
    let d = Poly(den.to_vec()).trim();
    let inv = d
        .inverse_mod(&modulus)
        .ok_or_else(|| Error::DivisionByZero("denominator vanishes at a root of unity".into()))?;
    let product = Poly(num.to_vec()).trim().mul(&inv).divrem(&modulus).1;
    Ok(product.0[0].clone())
}

fn qpow(x: &Rational, k: i64) -> Rational {
    let mut out = Rational::from(1);
    for _ in 0..k.unsigned_abs() {
        out *= x;
    }
    if k < 0 {
        out.recip_mut();
    }
    out
}

fn qratio(num: Rational, den: Rational, form: &str) -> Result<Rational> {
    if den.cmp0().is_eq() {
        return Err(Error::DivisionByZero(form.to_string()));
    }
    Ok(num / den)
}

fn qfactor(r: &Rational, y: &Rational, form: &str) -> Result<Rational> {
    qratio(
        Rational::from(1) - Rational::from(y * r),
        Rational::from(1) - r,
        form,
    )
}

/// Exact `[(*)_inf, (**)_inf, (***)_inf]` at rational `t1, t2, y`.
pub fn hirzebruch_limit_forms_exact(
    n: usize,
    t1: &Rational,
    t2: &Rational,
    y: &Rational,
) -> Result<[Rational; 3]> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if y.cmp0().is_eq() || t1.cmp0().is_eq() || t2.cmp0().is_eq() {
        return Err(Error::DivisionByZero("t1, t2 and y must be nonzero".into()));
    }
    let ni = n as i64;
    let y_inv = Rational::from(y.recip_ref());

    let mut star = Rational::new();
    for k in 1..=ni {
        let r1 = qpow(t2, k - 1) / qpow(t1, ni - k + 1);
        let r2 = qpow(t1, ni - k) / qpow(t2, k);
        star += qfactor(&r1, y, "(*) limit")? * qfactor(&r2, y, "(*) limit")?;
    }
    star *= &y_inv;

    // (1 - y x / t1)(x - y / t2) / ((1 - x / t1)(x - 1 / t2)) at x = w.
    let a = Rational::from(y / t1);
    let b = Rational::from(y / t2);
    let c = Rational::from(t1.recip_ref());
    let d = Rational::from(t2.recip_ref());
    let num = [
        Rational::from(-&b),
        Rational::from(1) + Rational::from(&a * &b),
        Rational::from(-&a),
    ];
    let den = [
        Rational::from(-&d),
        Rational::from(1) + Rational::from(&c * &d),
        Rational::from(-&c),
    ];
    let avg = root_of_unity_average(n, &num, &den)
        .map_err(|_| Error::DivisionByZero("(**) limit".into()))?;
    let double = avg * &y_inv + Rational::from(ni - 1);

    let p_inv = Rational::from(&c * &d);
    let one = Rational::from(1);
    let numer = Rational::from(&one - y)
        * (Rational::from(1) - Rational::from(y * &p_inv))
        * (Rational::from(1) - qpow(&p_inv, ni));
    let denom = Rational::from(&one - &p_inv)
        * (Rational::from(1) - qpow(&c, ni))
        * (Rational::from(1) - qpow(&d, ni));
    let triple = qratio(numer, denom, "(***) limit")? * y_inv + Rational::from(ni);
    Ok([star, double, triple])
}

/// Exact sides of the trigonometric identity at rational `T, y`.
pub fn trig_identity_exact(n: usize, t: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let ni = n as i64;
    let yt = Rational::from(y * t);
    // (1 - yT x)(x - yT) / ((1 - T x)(x - T)) at x = w.
    let num = [
        Rational::from(-&yt),
        Rational::from(1) + Rational::from(yt.square_ref()),
        Rational::from(-&yt),
    ];
    let den = [
        Rational::from(-t),
        Rational::from(1) + Rational::from(t.square_ref()),
        Rational::from(-t),
    ];
    let lhs = root_of_unity_average(n, &num, &den)
        .map_err(|_| Error::DivisionByZero("trigonometric sum".into()))?;
    let t2 = Rational::from(t.square_ref());
    let tn = qpow(t, ni);
    let one = Rational::from(1);
    let numer = Rational::from(&one - y)
        * (Rational::from(1) - Rational::from(y * &t2))
        * (Rational::from(1) - Rational::from(tn.square_ref()));
    let denom = Rational::from(&one - &t2) * Rational::from((Rational::from(1) - tn).square_ref());
    let rhs = qratio(numer, denom, "trigonometric closed form")? + y;
    Ok((lhs, rhs))
}
