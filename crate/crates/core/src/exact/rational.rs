//! Exact rational helpers: parsing, generalized binomials, Bernoulli numbers
//! and the even-zeta normal form ζ(2k) = r_k ζ(2)^k.

use std::sync::Mutex;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Exact arbitrary-size rational, always in lowest terms with positive denominator.
pub type BigRational = Rational;

/// Formats a rational as `num/den` (integers print without a denominator).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = if t.contains('/') {
        Rational::parse(t)
            .map(Rational::from)
            .map_err(|e| e.to_string())
    } else {
        Integer::parse(t)
            .map(|i| Rational::from(Integer::from(i)))
            .map_err(|e| e.to_string())
    };
    let r = parsed.map_err(|e| Error::Parse(format!("{t:?}: {e}")))?;
    Ok(r)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Generalized binomial coefficient `binom(n, k)` for any integer `n` and
/// `k >= 0`; zero for negative `k`.
pub fn binom_i(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::new();
    }
    if n >= 0 {
        if k > n {
            return Integer::new();
        }
        return Integer::from(Integer::binomial_u(n as u32, k as u32));
    }
    // binom(-m, k) = (-1)^k binom(m + k - 1, k)
    let m = -n;
    let b = Integer::from(Integer::binomial_u((m + k - 1) as u32, k as u32));
    if k % 2 == 0 {
        b
    } else {
        -b
    }
}

/// Binomial with a rational upper argument: x(x-1)...(x-k+1)/k!.
pub fn binom_q(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::new();
    }
    let mut acc = Rational::from(1);
    for i in 0..k {
        acc *= x - Rational::from(i);
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// (2n+1)!! = 1·3·5⋯(2n+1); by convention (−1)!! = 1 and (−3)!! = −1.
pub fn double_factorial_odd(m: i64) -> Rational {
    // m is the odd argument itself.
    debug_assert!(m % 2 != 0);
    if m >= -1 {
        let mut acc = Integer::from(1);
        let mut i = 1;
        while i <= m {
            acc *= i;
            i += 2;
        }
        Rational::from(acc)
    } else {
        // (m)!! = (m+2)!! / (m+2)
        double_factorial_odd(m + 2) / Rational::from(m + 2)
    }
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The n-th Bernoulli number with B₁ = −1/2, from Σ_{k<n+1} C(n+1,k) B_k = 0.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|p| p.into_inner());
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n {
        let m = cache.len();
        let mut s = Rational::new();
        for (k, bk) in cache.iter().enumerate() {
            s += Rational::from(Integer::binomial_u((m + 1) as u32, k as u32)) * bk;
        }
        s /= (m + 1) as i64;
        cache.push(-s);
    }
    cache[n].clone()
}

/// r_k with ζ(2k) = r_k ζ(2)^k, using ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!)
/// and π² = 6 ζ(2).
pub fn even_zeta_ratio(k: u32) -> Rational {
    assert!(k >= 1, "even_zeta_ratio needs k >= 1");
    let b = bernoulli(2 * k as usize);
    let mut r = b * Rational::from(Integer::from(24u32).pow(k));
    r /= Rational::from(factorial(2 * k) * 2u32);
    if k.is_multiple_of(2) {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for k in 1..=20 {
            assert_eq!(bernoulli(2 * k + 1), 0, "B_{}", 2 * k + 1);
        }
    }

    #[test]
    fn even_zeta_ratios() {
        assert_eq!(even_zeta_ratio(1), 1);
        assert_eq!(even_zeta_ratio(2), rat(2, 5));
        assert_eq!(even_zeta_ratio(3), rat(8, 35));
        // ζ(8) = π^8/9450, ζ(2)^4 = π^8/1296.
        assert_eq!(even_zeta_ratio(4), rat(1296, 9450));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom_i(5, 2), 10);
        assert_eq!(binom_i(-1, 3), -1);
        assert_eq!(binom_i(-3, 2), 6);
        assert_eq!(binom_i(3, 5), 0);
        assert_eq!(binom_i(4, -1), 0);
        assert_eq!(binom_q(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(-1), 1);
        assert_eq!(double_factorial_odd(1), 1);
        assert_eq!(double_factorial_odd(7), 105);
        assert_eq!(double_factorial_odd(-3), -1);
    }

    #[test]
    fn rational_text_roundtrip() {
        let r = rat(-691, 2730);
        assert_eq!(format_rational(&r), "-691/2730");
        assert_eq!(parse_rational("-691/2730").unwrap(), r);
        assert_eq!(parse_rational("2").unwrap(), 2);
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("x/2").is_err());
    }
}
