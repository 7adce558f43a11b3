//! Arbitrary-precision floats carrying a rigorous absolute error bound.

use std::fmt;
use std::ops::AddAssign;

use rug::float::Round;
use rug::{Float, Rational};
use serde::{Serialize, Serializer};

/// Working precision in bits for `digits` decimal digits plus guard bits.
pub fn bits_for(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 64
}

/// Upward-biased f64 sum used for error bookkeeping.
fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * f64::EPSILON)
}

/// A value with |true − value| ≤ error.
#[derive(Clone, Debug, PartialEq)]
pub struct BigFloat {
    value: Float,
    error: f64,
}

impl BigFloat {
    pub fn new(value: Float, error: f64) -> Self {
        BigFloat { value, error }
    }

    pub fn zero(bits: u32) -> Self {
        BigFloat::new(Float::new(bits), 0.0)
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        let v = Float::with_val(bits, r);
        let e = ulp(&v);
        BigFloat::new(v, e)
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        BigFloat::new(Float::with_val(bits, n), 0.0)
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn error_bound(&self) -> f64 {
        self.error
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.value.to_f64_round(Round::Up).abs()
    }

    pub fn with_extra_error(mut self, e: f64) -> Self {
        self.error = up(self.error + e);
        self
    }

    pub fn add(&self, o: &BigFloat) -> BigFloat {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value + &o.value);
        let e = up(self.error + o.error + ulp(&v));
        BigFloat::new(v, e)
    }

    pub fn sub(&self, o: &BigFloat) -> BigFloat {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value - &o.value);
        let e = up(self.error + o.error + ulp(&v));
        BigFloat::new(v, e)
    }

    pub fn mul(&self, o: &BigFloat) -> BigFloat {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value * &o.value);
        let e = up(self.abs_f64() * o.error + o.abs_f64() * self.error + self.error * o.error + ulp(&v));
        BigFloat::new(v, e)
    }

    pub fn div(&self, o: &BigFloat) -> BigFloat {
        let v = Float::with_val(self.prec().max(o.prec()), &self.value / &o.value);
        let den = o.abs_f64() - o.error;
        let e = if den > 0.0 {
            up((self.error + v.to_f64().abs() * o.error) / den + ulp(&v))
        } else {
            f64::INFINITY
        };
        BigFloat::new(v, e)
    }

    pub fn mul_rational(&self, r: &Rational) -> BigFloat {
        self.mul(&BigFloat::from_rational(r, self.prec()))
    }

    pub fn neg(&self) -> BigFloat {
        BigFloat::new(Float::with_val(self.prec(), -&self.value), self.error)
    }

    pub fn powi(&self, n: u32) -> BigFloat {
        let mut acc = BigFloat::from_i64(1, self.prec());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Upper bound on |true(self) − true(other)|.
    pub fn diff_bound(&self, other: &BigFloat) -> f64 {
        let d = Float::with_val(self.prec().max(other.prec()), &self.value - &other.value);
        up(d.to_f64_round(Round::Up).abs() + self.error + other.error)
    }

    /// |value − other| without the error bounds (the observed discrepancy).
    pub fn abs_diff(&self, other: &BigFloat) -> f64 {
        let d = Float::with_val(self.prec().max(other.prec()), &self.value - &other.value);
        d.to_f64().abs()
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        self.value.to_string_radix(10, Some(digits))
    }
}

/// One unit in the last place of `v`, as an f64 upper bound.
pub fn ulp(v: &Float) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let a = v.to_f64_round(Round::Up).abs();
    a * 2f64.powi(1 - v.prec() as i32)
}

impl AddAssign<&BigFloat> for BigFloat {
    fn add_assign(&mut self, rhs: &BigFloat) {
        *self = self.add(rhs);
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.to_decimal(30), self.error)
    }
}

impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BigFloat", 2)?;
        let digits = ((self.prec().saturating_sub(64)) as f64 / std::f64::consts::LOG2_10) as usize;
        st.serialize_field("value", &self.to_decimal(digits.max(17)))?;
        st.serialize_field("error", &format!("{:.3e}", self.error))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn error_propagation() {
        let bits = bits_for(30);
        let a = BigFloat::from_rational(&rat(1, 3), bits);
        let b = BigFloat::from_rational(&rat(2, 3), bits);
        let s = a.add(&b);
        assert!(s.diff_bound(&BigFloat::from_i64(1, bits)) < 1e-35);
        let q = b.div(&a);
        assert!(q.diff_bound(&BigFloat::from_i64(2, bits)) < 1e-35);
        let wide = BigFloat::new(Float::with_val(bits, 1), 1e-3);
        assert!(wide.mul(&wide).error_bound() >= 2e-3);
    }
}
