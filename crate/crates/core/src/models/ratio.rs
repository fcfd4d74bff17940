use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::{Complex, Float, Integer, Rational};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, serialized as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ratio(Rational);

impl Ratio {
    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio(Rational::from((num, den)))
    }

    pub fn int(value: i64) -> Self {
        Ratio(Rational::from(value))
    }

    pub fn zero() -> Self {
        Ratio(Rational::new())
    }

    pub fn from_rational(value: Rational) -> Self {
        Ratio(value)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    /// True for values in `[0, 1)`.
    pub fn in_unit_interval(&self) -> bool {
        self.0.cmp0() != Ordering::Less && self.0 < 1
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn fract_unit(&self) -> Ratio {
        let floor = Rational::from(self.0.clone().floor_ref());
        Ratio(Rational::from(&self.0 - &floor))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.0)
    }

    pub fn to_complex(&self, bits: u32) -> Complex {
        Complex::with_val(bits, (self.to_float(bits), 0))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::InvalidArgument(format!("`{text}` is not a rational of the form p/q"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: Integer = num.parse().map_err(|_| bad())?;
        let den: Integer = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(Error::InvalidArgument(format!(
                "`{text}` has a zero denominator"
            )));
        }
        Ok(Ratio(Rational::from((num, den))))
    }
}

impl From<i64> for Ratio {
    fn from(value: i64) -> Self {
        Ratio::int(value)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RatioVisitor;

        impl Visitor<'_> for RatioVisitor {
            type Value = Ratio;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational written as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Ratio, E> {
                v.parse().map_err(|e: Error| E::custom(e))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Ratio, E> {
                Ok(Ratio::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Ratio, E> {
                Ok(Ratio(Rational::from(v)))
            }
        }

        deserializer.deserialize_any(RatioVisitor)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Ratio> for &Ratio {
            type Output = Ratio;
            fn $method(self, rhs: &Ratio) -> Ratio {
                Ratio(Rational::from($trait::$method(&self.0, &rhs.0)))
            }
        }

        impl $trait for Ratio {
            type Output = Ratio;
            fn $method(self, rhs: Ratio) -> Ratio {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(Rational::from(-&self.0))
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        -&self
    }
}
