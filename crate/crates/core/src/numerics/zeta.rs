//! Riemann zeta values and Euler's constant by Euler–Maclaurin summation.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::bigfloat::{bits_for, BigFloat};
use crate::error::{Error, Result};
use crate::exact::rational::bernoulli;

/// log10 of |B_{2j}| / (2j)!.
fn log10_bernoulli_ratio(j: u32) -> f64 {
    let b = bernoulli(2 * j as usize);
    let f = Integer::from(Integer::factorial(2 * j));
    let r = rug::Rational::from((b.numer().clone(), f * b.denom()));
    Float::with_val(64, r.abs()).log10().to_f64()
}

fn rising(k: u32, m: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..m {
        acc *= k + i;
    }
    acc
}

/// ζ(k) for k ≥ 2 with absolute error below 10^(−digits), summing directly
/// to N and correcting with `depth` Bernoulli terms. N starts at 32 and
/// doubles until the truncation bound is met or `n_cap` is exceeded.
pub fn zeta_em(k: u32, digits: u32, depth: u32, n_cap: u64) -> Result<BigFloat> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("ζ({k}) diverges")));
    }
    let bits = bits_for(digits);
    let target = -(digits as f64) - 2.0;
    let mut n: u64 = 32;
    loop {
        // First omitted Bernoulli term bounds the remainder for n^(−k).
        let j = depth + 1;
        let log_rem = log10_bernoulli_ratio(j)
            + Float::with_val(64, rising(k, 2 * j - 1)).log10().to_f64()
            - (k + 2 * j - 1) as f64 * (n as f64).log10();
        if log_rem < target {
            let v = zeta_em_at(k, n, depth, bits);
            let rounding = (n as f64 + 64.0) * 2f64.powi(3 - bits as i32) * 2.0;
            return Ok(BigFloat::new(v, 10f64.powf(log_rem) + rounding));
        }
        n *= 2;
        if n > n_cap {
            return Err(Error::PrecisionUnreachable {
                requested: digits,
                achieved: -log_rem,
            });
        }
    }
}

fn zeta_em_at(k: u32, n: u64, depth: u32, bits: u32) -> Float {
    let mut s = Float::new(bits);
    for m in 1..n {
        let p = Float::with_val(bits, Float::u_pow_u(m as u32, k));
        s += p.recip();
    }
    let nf = Float::with_val(bits, n);
    let nk = Float::with_val(bits, (&nf).pow(k)).recip();
    // ∫_N^∞ x^(−k) dx + N^(−k)/2
    s += Float::with_val(bits, &nk * &nf) / (k - 1);
    s += Float::with_val(bits, &nk / 2u32);
    let mut npow = nk.clone() / &nf; // N^(−k−1)
    let n2 = Float::with_val(bits, &nf * &nf);
    for j in 1..=depth {
        let b = bernoulli(2 * j as usize);
        let coef = b * rising(k, 2 * j - 1) / Integer::from(Integer::factorial(2 * j));
        s += Float::with_val(bits, &npow * &coef);
        npow /= &n2;
    }
    s
}

/// Euler's constant γ to `digits` digits.
pub fn euler_gamma(digits: u32, depth: u32) -> Result<BigFloat> {
    let bits = bits_for(digits);
    let mut n: u64 = 256;
    let target = -(digits as f64) - 2.0;
    loop {
        let j = depth + 1;
        // |B_{2j}| / (2j N^{2j})
        let b = bernoulli(2 * j as usize);
        let log_rem = Float::with_val(64, b.abs()).log10().to_f64()
            - ((2 * j) as f64).log10()
            - (2 * j) as f64 * (n as f64).log10();
        if log_rem < target {
            let mut h = Float::new(bits);
            for m in 1..=n {
                h += Float::with_val(bits, m).recip();
            }
            let nf = Float::with_val(bits, n);
            h -= Float::with_val(bits, nf.ln_ref());
            h -= Float::with_val(bits, n).recip() / 2u32;
            let n2 = Float::with_val(bits, n * n);
            let mut npow = n2.clone().recip();
            for i in 1..=depth {
                let c = bernoulli(2 * i as usize) / (2 * i);
                h += Float::with_val(bits, &npow * &c);
                npow /= &n2;
            }
            let rounding = (n as f64 + 64.0) * 2f64.powi(4 - bits as i32) * 10.0;
            return Ok(BigFloat::new(h, 10f64.powf(log_rem) + rounding));
        }
        n *= 2;
        if n > 1 << 24 {
            return Err(Error::PrecisionUnreachable {
                requested: digits,
                achieved: -log_rem,
            });
        }
    }
}
