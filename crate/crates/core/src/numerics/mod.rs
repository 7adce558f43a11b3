//! Certified high-precision numerics: zeta values, Euler's constant and the
//! nested sums Z(k, r).

pub mod bigfloat;
pub mod zeta;
pub mod zsum;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Rational;

pub use bigfloat::{bits_for, BigFloat};
pub use zsum::{certified_tail_bound, ZTable};

use crate::error::{Error, Result};
use crate::exact::ZetaPoly;

/// Default summation limit for the Z(k, r) direct sums.
pub const DEFAULT_Z_LIMIT: u64 = 10_000;
/// Default number of Bernoulli correction terms.
pub const DEFAULT_EM_DEPTH: u32 = 8;

/// Precision settings plus write-once caches for zeta values and the Z table.
#[derive(Debug)]
pub struct NumericContext {
    digits: u32,
    z_limit: u64,
    em_depth: u32,
    zetas: Mutex<BTreeMap<u32, BigFloat>>,
    gamma: OnceLock<BigFloat>,
    ztable: Mutex<Option<Arc<ZTable>>>,
}

impl NumericContext {
    pub fn new(digits: u32) -> Self {
        NumericContext {
            digits,
            z_limit: DEFAULT_Z_LIMIT,
            em_depth: DEFAULT_EM_DEPTH,
            zetas: Mutex::new(BTreeMap::new()),
            gamma: OnceLock::new(),
            ztable: Mutex::new(None),
        }
    }

    pub fn with_z_limit(mut self, n: u64) -> Self {
        self.z_limit = n;
        self
    }

    pub fn with_em_depth(mut self, d: u32) -> Self {
        self.em_depth = d;
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        bits_for(self.digits)
    }

    pub fn z_limit(&self) -> u64 {
        self.z_limit
    }

    pub fn em_depth(&self) -> u32 {
        self.em_depth
    }

    /// Tolerance implied by the requested digits.
    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    pub fn zeta(&self, k: u32) -> Result<BigFloat> {
        if let Some(v) = self.zetas.lock().expect("zeta cache").get(&k) {
            return Ok(v.clone());
        }
        let v = zeta::zeta_em(k, self.digits + 5, self.em_depth, 1 << 22)?;
        let v = BigFloat::new(
            rug::Float::with_val(self.bits(), v.value()),
            v.error_bound() + bigfloat::ulp(v.value()),
        );
        self.zetas.lock().expect("zeta cache").insert(k, v.clone());
        Ok(v)
    }

    pub fn euler_gamma(&self) -> Result<BigFloat> {
        if let Some(g) = self.gamma.get() {
            return Ok(g.clone());
        }
        let g = zeta::euler_gamma(self.digits + 5, self.em_depth)?;
        Ok(self.gamma.get_or_init(|| g).clone())
    }

    pub fn rational(&self, r: &Rational) -> BigFloat {
        BigFloat::from_rational(r, self.bits())
    }

    /// Table of Z(k, r) for k + r ≤ max_weight, reusing a larger cached table.
    pub fn z_table(&self, max_weight: u32) -> Result<Arc<ZTable>> {
        let mut guard = self.ztable.lock().expect("z table cache");
        if let Some(t) = guard.as_ref() {
            if t.max_weight() >= max_weight {
                return Ok(t.clone());
            }
        }
        let t = Arc::new(ZTable::compute(self, max_weight.max(12))?);
        *guard = Some(t.clone());
        Ok(t)
    }

    pub fn z(&self, k: u32, r: u32) -> Result<BigFloat> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("Z({k},{r}) diverges")));
        }
        let t = self.z_table(k + r)?;
        Ok(t.get(k, r).expect("within table").clone())
    }

    /// Numerical value of an element of ℚ[ζ].
    pub fn eval(&self, p: &ZetaPoly) -> Result<BigFloat> {
        let mut acc = BigFloat::zero(self.bits());
        for (m, c) in p.terms() {
            let mut term = self.rational(c);
            for &(i, e) in m.exponents() {
                term = term.mul(&self.zeta(i)?.powi(e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Fails when a value's error bound exceeds the requested precision.
    pub fn certify(&self, v: BigFloat) -> Result<BigFloat> {
        if v.error_bound() <= self.tolerance() {
            Ok(v)
        } else {
            Err(Error::PrecisionUnreachable {
                requested: self.digits,
                achieved: -v.error_bound().log10(),
            })
        }
    }
}

/// ζ(k) with absolute error below 10^(−digits).
pub fn zeta_numeric(k: u32, digits: u32) -> Result<BigFloat> {
    zeta::zeta_em(k, digits, DEFAULT_EM_DEPTH, 1 << 22)
}

/// Z(k, r) with absolute error below 10^(−digits), using the default summation limit.
/// A zeta polynomial evaluated at the given precision.
pub fn eval_zeta_poly(p: &ZetaPoly, digits: u32) -> Result<BigFloat> {
    NumericContext::new(digits).eval(p)
}

pub fn z_numeric(k: u32, r: u32, digits: u32) -> Result<BigFloat> {
    let ctx = NumericContext::new(digits);
    let t = ZTable::compute(&ctx, k + r)?;
    ctx.certify(t.get(k, r).expect("within table").clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_of_two_one_is_twice_zeta_three() {
        let ctx = NumericContext::new(30);
        let z21 = ctx.z(2, 1).unwrap();
        let target = ctx.zeta(3).unwrap().mul_rational(&Rational::from(2));
        assert!(z21.diff_bound(&target) < 1e-30, "{}", z21.diff_bound(&target));
    }

    #[test]
    fn z_of_three_one_is_half_zeta_four() {
        let ctx = NumericContext::new(30);
        let z = ctx.z(3, 1).unwrap();
        let target = ctx.eval(&ZetaPoly::zeta(4)).unwrap().mul_rational(&Rational::from((1, 2)));
        assert!(z.diff_bound(&target) < 1e-30);
    }
}
