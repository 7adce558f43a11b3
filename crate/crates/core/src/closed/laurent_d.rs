//! The Laurent polynomials d_ℓ(Y) of the two-vertex modular graph functions.

use std::collections::BTreeMap;

use rug::Rational;

use crate::closed::gamma::{gamma_coeff, GammaRoute};
use crate::error::Result;
use crate::exact::rational::{double_factorial_odd, factorial};
use crate::exact::{LaurentPoly, ZetaPoly};
use crate::numerics::{BigFloat, NumericContext};

/// Laurent polynomial with numeric coefficients, keyed by exponent.
pub type NumLaurent = BTreeMap<i64, BigFloat>;

fn fact(n: i64) -> Rational {
    Rational::from(factorial(n as u32))
}

fn pow_q(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// The rational part ℓ! (Y/6)^ℓ Σ_{k+n=ℓ} (−3)^n / (k! (2n+1)!!), as the coefficient of Y^ℓ.
fn leading_rational(l: i64) -> Rational {
    let mut acc = Rational::new();
    for n in 0..=l {
        acc += pow_q(&Rational::from(-3), n) / (fact(l - n) * double_factorial_odd(2 * n + 1));
    }
    acc * fact(l) / pow_q(&Rational::from(6), l)
}

/// d_ℓ(Y) exactly, from the generating function
/// Σ d_ℓ s^ℓ/ℓ! = e^{sY/6} Σ_n (Y^n/(2n+1)!! + Σ_{k<n} (−1)^{k−1}(2k−3)!! γ_{n,k} Y^{−k}) (−s/2)^n.
pub fn d_laurent(l: u32) -> Result<LaurentPoly<ZetaPoly>> {
    let l = l as i64;
    let mut out = LaurentPoly::zero("Y");
    for n in 0..=l {
        let m = l - n;
        let pre = fact(l) / (pow_q(&Rational::from(6), m) * fact(m)) * pow_q(&Rational::from((-1, 2)), n);
        let c0 = &pre / double_factorial_odd(2 * n + 1);
        out.add_term(m + n, &ZetaPoly::constant(c0));
        for k in 1..n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = Rational::from(&pre * &double_factorial_odd(2 * k - 3)) * sign;
            out.add_term(m - k, &gamma_coeff(n, k, GammaRoute::ViaE)?.scale(&c));
        }
    }
    Ok(out)
}

/// d_ℓ(Y) from the explicit formula in Z(k, r), with numeric coefficients:
/// the rational Y^ℓ term plus
/// Σ_{a+b+c+m=ℓ, m≥2} ℓ!(2a+b)!/(a!b!c!) (−1)^b/(2^{2a+b} 6^c) Z(2a+b+3, m−2) Y^{c−a−1}.
pub fn d_direct_numeric(ctx: &NumericContext, l: u32) -> Result<NumLaurent> {
    let l = l as i64;
    let bits = ctx.bits();
    let mut out = NumLaurent::new();
    let mut add = |e: i64, v: BigFloat| {
        let cur = out.remove(&e).unwrap_or_else(|| BigFloat::zero(bits));
        out.insert(e, cur.add(&v));
    };
    add(l, BigFloat::from_rational(&leading_rational(l), bits));
    for m in 2..=l {
        for a in 0..=(l - m) {
            for b in 0..=(l - m - a) {
                let c = l - m - a - b;
                let mut coef = fact(l) * fact(2 * a + b) / (fact(a) * fact(b) * fact(c));
                coef /= pow_q(&Rational::from(2), 2 * a + b) * pow_q(&Rational::from(6), c);
                if b % 2 == 1 {
                    coef = -coef;
                }
                let z = ctx.z((2 * a + b + 3) as u32, (m - 2) as u32)?;
                add(c - a - 1, z.mul_rational(&coef));
            }
        }
    }
    Ok(out)
}

/// Largest coefficient difference between an exact d_ℓ and a numeric one.
pub fn d_route_diff(ctx: &NumericContext, exact: &LaurentPoly<ZetaPoly>, num: &NumLaurent) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut exps: Vec<i64> = exact.terms().map(|(e, _)| e).collect();
    exps.extend(num.keys());
    exps.sort();
    exps.dedup();
    for e in exps {
        let a = ctx.eval(&exact.coeff(e))?;
        let b = num.get(&e).cloned().unwrap_or_else(|| BigFloat::zero(ctx.bits()));
        worst = worst.max(a.abs_diff(&b));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ZetaPoly {
        ZetaPoly::constant(Rational::from((n, d)))
    }

    #[test]
    fn displayed_d2_d3() {
        let mut d2 = LaurentPoly::zero("Y");
        d2.add_term(2, &q(1, 180));
        d2.add_term(-1, &ZetaPoly::zeta(3).scale(&Rational::from(2)));
        assert_eq!(d_laurent(2).unwrap(), d2);

        let mut d3 = LaurentPoly::zero("Y");
        d3.add_term(3, &q(1, 3780));
        d3.add_term(0, &ZetaPoly::zeta(3));
        d3.add_term(-2, &ZetaPoly::zeta(5).scale(&Rational::from(3)));
        assert_eq!(d_laurent(3).unwrap(), d3);
    }

    #[test]
    fn low_orders() {
        assert_eq!(d_laurent(0).unwrap(), LaurentPoly::monomial("Y", 0, ZetaPoly::one()));
        assert!(d_laurent(1).unwrap().is_zero());
    }

    #[test]
    fn coefficients_are_odd_zeta_and_weight_graded() {
        for l in 0..=8 {
            for (e, c) in d_laurent(l).unwrap().terms() {
                assert!(!c.involves_zeta2());
                assert!(c.is_homogeneous_of((l as i64 - e) as u32), "ℓ={l} Y^{e}");
            }
        }
    }

    #[test]
    fn routes_agree() {
        let ctx = NumericContext::new(30);
        for l in 0..=6 {
            let ex = d_laurent(l).unwrap();
            let num = d_direct_numeric(&ctx, l).unwrap();
            assert!(d_route_diff(&ctx, &ex, &num).unwrap() < 1e-25, "ℓ={l}");
        }
    }
}
