//! The coefficients γ_{n,k} of the closed-string generating function, and
//! the polynomial families P_s and Q_s relating them to e_{p,q}.

use rug::Rational;

use crate::closed::coeff_c::coeff_c;
use crate::closed::virasoro::{e_exact, e_mzv_numeric, e_or_zero};
use crate::error::{Error, Result};
use crate::exact::rational::binom_i;
use crate::exact::{TruncSeries, ZetaPoly};
use crate::numerics::{BigFloat, NumericContext};
use crate::report::Report;

/// The two exact constructions of γ from the e_{p,q}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaRoute {
    /// Sum over (a, b, c, d) with powers of 2 and 3.
    ViaE,
    /// Sum over s with the polynomials P_s.
    ViaP,
}

fn pow_q(base: i64, e: i64) -> Rational {
    let b = Rational::from(base);
    let mut acc = Rational::from(1);
    for _ in 0..e.abs() {
        acc *= &b;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn check_nk(n: i64, k: i64) -> Result<()> {
    if k < 1 || k >= n {
        return Err(Error::InvalidArgument(format!("γ_{{{n},{k}}} needs 0 < k < n")));
    }
    Ok(())
}

/// γ_{n,k} exactly, as an element of ℚ[ζ3, ζ5, …] of weight n + k.
pub fn gamma_coeff(n: i64, k: i64, route: GammaRoute) -> Result<ZetaPoly> {
    check_nk(n, k)?;
    let h = n - k;
    let mut acc = ZetaPoly::zero();
    match route {
        GammaRoute::ViaE => {
            for d in 0..=((h - 1) / 3) {
                for a in 0..=((h - 1 - 3 * d) / 2) {
                    let c = h - 1 - 3 * d - 2 * a;
                    let b = k - 1 - c;
                    if b < 0 {
                        continue;
                    }
                    let mut coef = pow_q(3, a)
                        * pow_q(2, c + d + 1)
                        * Rational::from(binom_i(a + b, a) * binom_i(c + d, c));
                    if d % 2 == 1 {
                        coef = -coef;
                    }
                    acc += &e_exact(a + b, c + d + 1)?.scale(&coef);
                }
            }
        }
        GammaRoute::ViaP => {
            let mut s = 0;
            while 2 * s < h {
                let coef = pow_q(2, h - 2 * s) * poly_p(s, h, k);
                acc += &e_or_zero(k - h + 3 * s, h - 2 * s).scale(&coef);
                s += 1;
            }
        }
    }
    Ok(acc)
}

/// γ_{n,k} = Σ_{r<n−k} (−2)^{r+2} binom(n−r+k−3, 2k−2) Z(k+n−r, r), numerically.
pub fn gamma_coeff_numeric(ctx: &NumericContext, n: i64, k: i64) -> Result<BigFloat> {
    check_nk(n, k)?;
    let mut acc = BigFloat::zero(ctx.bits());
    for r in 0..(n - k) {
        let c = pow_q(-2, r + 2) * Rational::from(binom_i(n - r + k - 3, 2 * k - 2));
        acc = acc.add(&ctx.z((k + n - r) as u32, r as u32)?.mul_rational(&c));
    }
    Ok(acc)
}

/// base^e for a unit-constant series and any integer e.
fn spow(base: &TruncSeries<Rational>, e: i64) -> TruncSeries<Rational> {
    if e >= 0 {
        base.pow(e as u32)
    } else {
        base.inverse().expect("unit constant").pow((-e) as u32)
    }
}

fn one_plus(c: i64, x: &TruncSeries<Rational>) -> TruncSeries<Rational> {
    TruncSeries::one(1, x.order()).add(&x.scale(&Rational::from(c)))
}

/// P_s(h,k) from Σ_s P_s z^s = 1/((1−8x)(1+x)^k(1+4x)^{h−k−1}) with z = x/(1+4x)³.
pub fn poly_p(s: i64, h: i64, k: i64) -> Rational {
    let order = s.max(0) as u32;
    let z = TruncSeries::<Rational>::var(1, 0, order);
    // Reversion x = z (1+4x)³ by fixed-point iteration; each pass fixes one more order.
    let mut x = z.clone();
    for _ in 0..=order {
        x = z.mul(&one_plus(4, &x).pow(3));
    }
    let f = spow(&one_plus(-8, &x), -1)
        .mul(&spow(&one_plus(1, &x), -k))
        .mul(&spow(&one_plus(4, &x), -(h - k - 1)));
    f.coeff(s as usize, 0)
}

/// c_n(a,b) = [x^n] (1+4x)^a / (1+x)^b.
pub fn c_ab(n: i64, a: i64, b: i64) -> Rational {
    let mut acc = Rational::new();
    for i in 0..=n {
        acc += Rational::from(binom_i(a, i) * binom_i(-b, n - i)) * pow_q(4, i);
    }
    acc
}

/// The two closed forms c_s(k+3s−h, k) and (−1)^{h+k} 3^{3s+1−h} c_{k−1}(h−2s−1, s+1).
/// The second agrees with P_s only for k + 3s ≥ h, which is where P_s multiplies
/// an e_{p,q} with p ≥ 0.
pub fn poly_p_closed(s: i64, h: i64, k: i64) -> (Rational, Rational) {
    let first = c_ab(s, k + 3 * s - h, k);
    let mut second = pow_q(3, 3 * s + 1 - h) * c_ab(k - 1, h - 2 * s - 1, s + 1);
    if (h + k) % 2 == 1 {
        second = -second;
    }
    (first, second)
}

/// Q_s(p,q) = [t^s] (1−9t) / ((1+3t)^{p+1} (1−t)^q).
pub fn poly_q(s: i64, p: i64, q: i64) -> Rational {
    let t = TruncSeries::<Rational>::var(1, 0, s.max(0) as u32);
    one_plus(-9, &t)
        .mul(&spow(&one_plus(3, &t), -(p + 1)))
        .mul(&spow(&one_plus(-1, &t), -q))
        .coeff(s as usize, 0)
}

/// 2^{q−r−2} C(p,q,r) = Σ_{0≤2s<q−r} Q_s(p,q) binom(2p+3q−r−3, q−r−1−2s) for 0 < r < q.
pub fn check_bs(p: i64, q: i64) -> Report {
    let mut bad = Vec::new();
    for r in 1..q {
        let lhs = pow_q(2, q - r - 2) * coeff_c(p, q, r).expect("valid");
        let mut rhs = Rational::new();
        let mut s = 0;
        while 2 * s < q - r {
            rhs += poly_q(s, p, q) * Rational::from(binom_i(2 * p + 3 * q - r - 3, q - r - 1 - 2 * s));
            s += 1;
        }
        if lhs != rhs {
            bad.push(format!("r={r}"));
        }
    }
    Report::exact("C_from_Q", serde_json::json!({"p": p, "q": q}), "C", "Q-weighted binomials", bad)
}

/// 2^q e_{p,q} = Σ_{0≤2s<q} Q_s(p,q) γ_{p+2q−s, p+q+s}, numerically, for q ≥ 1 and p > −q.
/// At q = 1 this is γ_{p+2,p+1} = 2 e_{p,1}, which fixes the power of 2.
pub fn check_bn(ctx: &NumericContext, p: i64, q: i64) -> Result<Report> {
    let lhs = e_mzv_numeric(ctx, p, q)?.mul_rational(&pow_q(2, q));
    let mut rhs = BigFloat::zero(ctx.bits());
    let mut s = 0;
    while 2 * s < q {
        let g = gamma_coeff_numeric(ctx, p + 2 * q - s, p + q + s)?;
        rhs = rhs.add(&g.mul_rational(&poly_q(s, p, q)));
        s += 1;
    }
    Ok(Report::numeric(
        "e_from_gamma",
        serde_json::json!({"p": p, "q": q}),
        "e numeric",
        "Q-weighted gamma numeric",
        lhs.abs_diff(&rhs),
        ctx.tolerance(),
    ))
}

/// The explicit low-h formulas for γ_{k+h,k}, 1 ≤ h ≤ 5.
pub fn gamma_low_h(h: i64, k: i64) -> Option<ZetaPoly> {
    let e = e_or_zero;
    let q = |n: i64| Rational::from(n);
    Some(match h {
        1 => e(k - 1, 1).scale(&q(2)),
        2 => e(k - 2, 2).scale(&q(4)),
        3 => &e(k - 3, 3).scale(&q(8)) + &e(k, 1).scale(&q(6 * k)),
        4 => &e(k - 4, 4).scale(&q(16)) + &e(k - 1, 2).scale(&q(4 * (3 * k - 4))),
        5 => {
            &(&e(k - 5, 5).scale(&q(32)) + &e(k - 2, 3).scale(&q(8 * (3 * k - 8))))
                + &e(k + 1, 1).scale(&q(9 * k * (k + 1)))
        }
        _ => return None,
    })
}

pub fn check_low_h(k: i64) -> Report {
    let mut bad = Vec::new();
    for h in 1..=5 {
        let g = gamma_coeff(k + h, k, GammaRoute::ViaE).expect("valid");
        if Some(g) != gamma_low_h(h, k) {
            bad.push(format!("h={h}"));
        }
    }
    Report::exact("gamma_low_h", serde_json::json!({"k": k}), "gamma via e", "explicit formulas", bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_gammas() {
        assert_eq!(gamma_coeff(2, 1, GammaRoute::ViaE).unwrap(), ZetaPoly::zeta(3).scale(&Rational::from(4)));
        assert!(gamma_coeff(2, 2, GammaRoute::ViaE).is_err());
    }

    #[test]
    fn both_exact_routes_agree() {
        for n in 2..=10 {
            for k in 1..n {
                assert_eq!(
                    gamma_coeff(n, k, GammaRoute::ViaE).unwrap(),
                    gamma_coeff(n, k, GammaRoute::ViaP).unwrap(),
                    "({n},{k})"
                );
            }
        }
    }

    #[test]
    fn low_h_formulas() {
        for k in 1..=6 {
            let r = check_low_h(k);
            assert!(r.pass, "k={k}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn gamma_exact_matches_numeric() {
        let ctx = NumericContext::new(30);
        for n in 2..=8 {
            for k in 1..n {
                let ex = ctx.eval(&gamma_coeff(n, k, GammaRoute::ViaE).unwrap()).unwrap();
                let nu = gamma_coeff_numeric(&ctx, n, k).unwrap();
                assert!(ex.diff_bound(&nu) < 1e-25, "({n},{k})");
            }
        }
    }

    #[test]
    fn p_and_q_low_orders() {
        for (h, k) in [(3, 1), (5, 4), (7, 2), (2, 9)] {
            assert_eq!(poly_p(0, h, k), 1);
            assert_eq!(poly_p(1, h, k), 3 * k - 4 * h + 12);
            let t = 3 * k - 4 * h + 22;
            assert_eq!(poly_p(2, h, k), Rational::from(t * t - 3 * k - 4) / 2);
        }
        for (p, q) in [(0, 1), (2, 3), (-3, 5), (4, 0)] {
            assert_eq!(poly_q(1, p, q), q - 3 * p - 12);
            let a = q - 3 * p;
            assert_eq!(poly_q(2, p, q), Rational::from((a - 3) * (a - 24)) / 2 + 2 * q);
        }
    }

    #[test]
    fn p_first_closed_form() {
        for s in 0..6 {
            for h in 1..8 {
                for k in 1..8 {
                    assert_eq!(poly_p(s, h, k), poly_p_closed(s, h, k).0, "s={s} h={h} k={k}");
                }
            }
        }
    }

    #[test]
    fn p_second_closed_form_where_p_nonnegative() {
        for s in 0..5 {
            for h in (2 * s + 1)..12 {
                for k in 1..14 {
                    let (_, second) = poly_p_closed(s, h, k);
                    if k + 3 * s >= h {
                        assert_eq!(poly_p(s, h, k), second, "s={s} h={h} k={k}");
                    }
                }
            }
        }
        // Outside that range it fails, e.g. P_0(2,1) = 1 but the form gives −1/3.
        assert_eq!(poly_p_closed(0, 2, 1).1, Rational::from((-1, 3)));
    }

    #[test]
    fn bs_identity() {
        for q in 2..=12 {
            for p in -5..=6 {
                let r = check_bs(p, q);
                assert!(r.pass, "p={p} q={q}: {:?}", r.mismatches);
            }
        }
    }

    #[test]
    fn bn_identity_low_weight() {
        let ctx = NumericContext::new(30);
        for q in 1..=4 {
            for p in (1 - q)..=2 {
                let r = check_bn(&ctx, p, q).unwrap();
                assert!(r.pass, "p={p} q={q}: {}", r.max_abs_diff);
            }
        }
    }
}
