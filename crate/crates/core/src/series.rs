//! Truncated Laurent series in one variable with multiprecision complex
//! coefficients, and the residue computations built on them.

use rug::Complex;

use crate::error::{Error, Result};
use crate::numeric::{abs_f64, reduce_to_cell};
use crate::theta::ThetaContext;

/// `sum_{k} coeffs[k] x^{lead_order + k}`, known exactly through `x^order()`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex>,
    lead_order: i64,
    bits: u32,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the last one is the highest known term.
    pub fn new(coeffs: Vec<Complex>, lead_order: i64, bits: u32) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Series(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(Self {
            coeffs,
            lead_order,
            bits,
        })
    }

    pub fn constant(value: Complex, order: i64, bits: u32) -> Result<Self> {
        if order < 0 {
            return Err(Error::Series(format!(
                "truncation order {order} is negative"
            )));
        }
        let mut coeffs = vec![Complex::with_val(bits, 0); order as usize + 1];
        coeffs[0] = Complex::with_val(bits, value);
        Self::new(coeffs, 0, bits)
    }

    /// `log(1 + w) = w - w^2/2 + ...` through `w^order`.
    pub fn log1p(order: i64, bits: u32) -> Result<Self> {
        if order < 1 {
            return Err(Error::Series("log(1+w) needs order >= 1".into()));
        }
        let coeffs = (1..=order)
            .map(|k| {
                let c = Complex::with_val(bits, 1) / k as u32;
                if k % 2 == 0 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Self::new(coeffs, 1, bits)
    }

    pub fn coefficients(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn lead_order(&self) -> i64 {
        self.lead_order
    }

    /// Highest exponent whose coefficient is exact.
    pub fn order(&self) -> i64 {
        self.lead_order + self.coeffs.len() as i64 - 1
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Coefficient of `x^exponent`; zero below the lead order.
    pub fn coeff(&self, exponent: i64) -> Result<Complex> {
        if exponent > self.order() {
            return Err(Error::Series(format!(
                "coefficient of x^{exponent} requested but the series is known only through x^{}",
                self.order()
            )));
        }
        if exponent < self.lead_order {
            return Ok(Complex::with_val(self.bits, 0));
        }
        Ok(self.coeffs[(exponent - self.lead_order) as usize].clone())
    }

    /// Drops every term above `x^order`.
    pub fn truncate(&self, order: i64) -> Result<Self> {
        if order < self.lead_order {
            return Err(Error::Series(format!(
                "cannot truncate below the lead order {}",
                self.lead_order
            )));
        }
        let keep = ((order - self.lead_order + 1) as usize).min(self.coeffs.len());
        Self::new(self.coeffs[..keep].to_vec(), self.lead_order, self.bits)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.clone(),
            lead_order: self.lead_order + k,
            bits: self.bits,
        }
    }

    pub fn scale(&self, factor: &Complex) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Complex::with_val(self.bits, c * factor))
            .collect();
        Self {
            coeffs,
            lead_order: self.lead_order,
            bits: self.bits,
        }
    }

    /// Substitutes `x -> factor * x`.
    pub fn rescale_variable(&self, factor: &Complex) -> Self {
        let bits = self.bits;
        let mut power = pow_complex(factor, self.lead_order, bits);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(Complex::with_val(bits, c * &power));
            power *= factor;
        }
        Self {
            coeffs,
            lead_order: self.lead_order,
            bits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        let lead = self.lead_order.min(other.lead_order);
        let order = self.order().min(other.order());
        let coeffs = (lead..=order)
            .map(|k| {
                let a = self.coeff(k).unwrap_or_else(|_| Complex::with_val(bits, 0));
                let b = other
                    .coeff(k)
                    .unwrap_or_else(|_| Complex::with_val(bits, 0));
                Complex::with_val(bits, &a + &b)
            })
            .collect::<Vec<_>>();
        if coeffs.is_empty() {
            // Both operands are known only below each other's lead order.
            return Self {
                coeffs: vec![Complex::with_val(bits, 0)],
                lead_order: order,
                bits,
            };
        }
        Self {
            coeffs,
            lead_order: lead,
            bits,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Complex::with_val(self.bits, -1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product, exact through `min(l1 + K2, l2 + K1)`.
    pub fn mul(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        let lead = self.lead_order + other.lead_order;
        let order = (self.lead_order + other.order()).min(other.lead_order + self.order());
        let len = (order - lead + 1) as usize;
        let mut coeffs = vec![Complex::with_val(bits, 0); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += Complex::with_val(bits, a * b);
            }
        }
        Self {
            coeffs,
            lead_order: lead,
            bits,
        }
    }

    /// Multiplicative inverse; the lead coefficient must not vanish.
    pub fn inv(&self) -> Result<Self> {
        let bits = self.bits;
        let c0 = &self.coeffs[0];
        if c0.real().is_zero() && c0.imag().is_zero() {
            return Err(Error::Series(
                "cannot invert: leading coefficient vanishes".into(),
            ));
        }
        let inv0 = Complex::with_val(bits, c0.recip_ref());
        let n = self.coeffs.len();
        let mut out: Vec<Complex> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Complex::with_val(bits, 0);
            for j in 1..=k {
                acc += Complex::with_val(bits, &self.coeffs[j] * &out[k - j]);
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self {
            coeffs: out,
            lead_order: -self.lead_order,
            bits,
        })
    }

    /// Integer power; negative exponents go through [`TruncatedSeries::inv`].
    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::constant(
            Complex::with_val(self.bits, 1),
            base.relative_len() - 1,
            self.bits,
        )?;
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn relative_len(&self) -> i64 {
        self.coeffs.len() as i64
    }

    /// `exp` of a series with no negative powers.
    pub fn exp(&self) -> Result<Self> {
        if self.lead_order < 0 {
            return Err(Error::Series("exp of a series with a pole".into()));
        }
        let bits = self.bits;
        let order = self.order();
        let f: Vec<Complex> = (0..=order).map(|k| self.coeff(k).unwrap()).collect();
        let mut g: Vec<Complex> = Vec::with_capacity(f.len());
        g.push(Complex::with_val(bits, 1));
        for k in 1..f.len() {
            let mut acc = Complex::with_val(bits, 0);
            for j in 1..=k {
                acc += Complex::with_val(bits, &f[j] * &g[k - j]) * j as u32;
            }
            g.push(acc / k as u32);
        }
        let head = Complex::with_val(bits, f[0].exp_ref());
        Ok(Self {
            coeffs: g,
            lead_order: 0,
            bits,
        }
        .scale(&head))
    }

    /// `self(inner(x))` for `inner` with lead order exactly 1.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let bits = self.bits.max(inner.bits);
        if inner.lead_order != 1 {
            return Err(Error::Series(format!(
                "composition needs an inner series starting at x^1, got x^{}",
                inner.lead_order
            )));
        }
        // inner = x r(x); self = x^L P(x)  =>  self(inner) = x^L r^L P(inner).
        let r = inner.shift(-1);
        let len = self.coeffs.len().min(inner.coeffs.len()) as i64;
        let mut acc = Self::constant(self.coeffs[len as usize - 1].clone(), len - 1, bits)?;
        for k in (0..len as usize - 1).rev() {
            let ck = Self::constant(self.coeffs[k].clone(), len - 1, bits)?;
            acc = acc.mul(inner).add(&ck);
        }
        let acc = acc.truncate(len - 1)?;
        let out = acc.mul(&r.truncate(len - 1)?.powi(self.lead_order)?);
        Ok(out.shift(self.lead_order))
    }
}

fn pow_complex(z: &Complex, k: i64, bits: u32) -> Complex {
    let mut out = Complex::with_val(bits, 1);
    for _ in 0..k.unsigned_abs() {
        out *= z;
    }
    if k < 0 {
        out = Complex::with_val(bits, out.recip_ref());
    }
    out
}

/// Taylor series of `v -> theta(a0 + direction * x)` through `x^order`.
fn theta_series(
    ctx: &ThetaContext,
    a0: &Complex,
    direction: &Complex,
    order: usize,
) -> Result<TruncatedSeries> {
    let coeffs = ctx.theta_taylor(a0, order);
    TruncatedSeries::new(coeffs, 0, ctx.bits()).map(|s| s.rescale_variable(direction))
}

/// Threshold below which a point is treated as lying exactly on the lattice.
fn lattice_threshold(ctx: &ThetaContext) -> f64 {
    10f64.powi(-(ctx.precision().working_digits as i32) / 2)
}

/// Expansion of `x -> delta(e(a0 + direction * x), B)` through `x^k`.
///
/// When `a0` is a lattice point the result is a Laurent series starting at
/// `x^{-1}`; otherwise it starts at `x^0` with constant term `delta(a0, b)`.
pub fn delta_series(
    ctx: &ThetaContext,
    a0: &Complex,
    direction: &Complex,
    b: &Complex,
    k: i64,
) -> Result<TruncatedSeries> {
    if k < 0 {
        return Err(Error::Series(format!("expansion order {k} is negative")));
    }
    ctx.check_pole(b, || "delta_series second argument".into())?;
    let bits = ctx.bits();
    let a0 = ctx.lift(a0);
    let distance = ctx.lattice_distance(&a0);
    let on_lattice = distance < lattice_threshold(ctx);
    if !on_lattice {
        ctx.check_pole(&a0, || "delta_series expansion point".into())?;
    }
    let order = k as usize + 2;
    let shifted = Complex::with_val(bits, &a0 + b);
    let num = theta_series(ctx, &shifted, direction, order)?;
    let mut den = theta_series(ctx, &a0, direction, order)?;
    if on_lattice {
        let mut coeffs = den.coefficients().to_vec();
        coeffs.remove(0);
        den = TruncatedSeries::new(coeffs, 1, bits)?;
    }
    let theta_b = ctx.theta(b);
    let prefactor = Complex::with_val(bits, ctx.theta_prime_zero() / theta_b) / ctx.two_pi_i();
    let out = num.mul(&den.inv()?).scale(&prefactor);
    out.truncate(k)
}

/// `lim_{t -> 1} (delta(t, h) + delta(1/t, h))`, the constant term of the
/// pole-cancelling sum, for `h` the additive argument of the second slot.
pub fn ell_genus_p1(ctx: &ThetaContext, h: &Complex) -> Result<Complex> {
    let bits = ctx.bits();
    let zero = ctx.complex(0.0, 0.0);
    let dir = Complex::with_val(bits, ctx.two_pi_i().recip_ref());
    let plus = delta_series(ctx, &zero, &dir, h, 1)?;
    let minus = delta_series(ctx, &zero, &(-dir), h, 1)?;
    let sum = plus.add(&minus);
    let pole = abs_f64(&sum.coeff(-1)?);
    if pole > 1e-20 {
        return Err(Error::Series(format!(
            "poles failed to cancel (residue {pole:e})"
        )));
    }
    sum.coeff(0)
}

/// `2 X theta'(X) / theta(X)` from the logarithmic derivative of the product
/// `theta(x) = (x^{1/2} - x^{-1/2}) prod_l (1 - q^l x)(1 - q^l / x)`, `X = e(h)`.
pub fn ell_genus_p1_closed_form(ctx: &ThetaContext, h: &Complex) -> Result<Complex> {
    ctx.check_pole(h, || "Ell(P^1) argument".into())?;
    let bits = ctx.bits();
    // The log-derivative drops by one for each tau-period removed from h.
    let red = reduce_to_cell(&ctx.lift(h), ctx.tau());
    let x = ctx.e(&red.reduced)?;
    let x_inv = Complex::with_val(bits, x.recip_ref());
    let q = ctx.e(ctx.tau())?;
    let one = Complex::with_val(bits, 1);
    let mut sum = Complex::with_val(bits, 0.5) + Complex::with_val(bits, &x - &one).recip();
    let mut ql = q.clone();
    for _ in 0..ctx.order() + 2 {
        let up = Complex::with_val(bits, &ql * &x);
        let down = Complex::with_val(bits, &ql * &x_inv);
        sum -= Complex::with_val(bits, &up / Complex::with_val(bits, &one - &up));
        sum += Complex::with_val(bits, &down / Complex::with_val(bits, &one - &down));
        ql *= &q;
    }
    sum -= red.n;
    Ok(sum * 2u32)
}

/// Coefficient of `x^{n-1}` in `x^n delta(t e^{-x}, h) delta(e^x, h)^n`, and
/// the residue at `u = 1` of `delta(t/u, h) delta(u, h)^n / u` taken in the
/// local coordinate `w = u - 1`.
pub fn cy_residue_check(
    ctx: &ThetaContext,
    n: usize,
    t: &Complex,
    h: &Complex,
) -> Result<(Complex, Complex)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "residue check needs n >= 2, got {n}"
        )));
    }
    let bits = ctx.bits();
    let k = n as i64 + 1;
    let zero = ctx.complex(0.0, 0.0);
    let dir = Complex::with_val(bits, ctx.two_pi_i().recip_ref());
    let tangent = delta_series(ctx, t, &Complex::with_val(bits, -&dir), h, k)?;
    let normal = delta_series(ctx, &zero, &dir, h, k)?;

    let by_x = tangent.mul(&normal.powi(n as i64)?).coeff(-1)?;

    let log = TruncatedSeries::log1p(k + 1, bits)?;
    let tangent_w = tangent.compose(&log)?;
    let normal_w = normal.compose(&log)?;
    let mut coeffs = vec![ctx.complex(0.0, 0.0); k as usize + 2];
    coeffs[0] = ctx.complex(1.0, 0.0);
    coeffs[1] = ctx.complex(1.0, 0.0);
    let one_plus_w = TruncatedSeries::new(coeffs, 0, bits)?;
    let integrand = tangent_w
        .mul(&normal_w.powi(n as i64)?)
        .mul(&one_plus_w.inv()?);
    let by_u = integrand.coeff(-1)?;
    Ok((by_x, by_u))
}

/// Both ends of the specialization chain at `t = e(-h/n)`, on the
/// `(t/u)^n` form of the integrand: the coefficient of `x^{n-1}` in `x^n delta((t/u)^n, h) delta(u, h)^n`, and
/// `(theta'(0) / (2 pi i theta(h)))^2` times that of `x^n delta(u^n, h)^{-1} delta(u, h)^n`.
pub fn cy_specialization_chain(
    ctx: &ThetaContext,
    n: usize,
    h: &Complex,
) -> Result<(Complex, Complex)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "specialization needs n >= 2, got {n}"
        )));
    }
    let bits = ctx.bits();
    let k = n as i64 + 1;
    let nn = n as u32;
    let zero = ctx.complex(0.0, 0.0);
    let dir = Complex::with_val(bits, ctx.two_pi_i().recip_ref());
    let normal = delta_series(ctx, &zero, &dir, h, k)?;
    let normal_n = normal.powi(n as i64)?;

    // (t/u)^n with t-argument -h/n has additive argument -h - n x / (2 pi i).
    let twisted = delta_series(
        ctx,
        &Complex::with_val(bits, -h),
        &-Complex::with_val(bits, &dir * nn),
        h,
        k,
    )?;
    let before = twisted.mul(&normal_n).coeff(-1)?;

    let power = delta_series(ctx, &zero, &Complex::with_val(bits, &dir * nn), h, k + 1)?;
    let ratio = Complex::with_val(bits, ctx.theta_prime_zero() / ctx.theta(h)) / ctx.two_pi_i();
    let after =
        power.inv()?.mul(&normal_n).coeff(-1)? * Complex::with_val(bits, ratio.square_ref());
    Ok((before, after))
}
