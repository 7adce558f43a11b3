//! The Virasoro–Shapiro series and its coefficients e_{p,q}.

use rug::{Float, Rational};

use crate::closed::coeff_c::coeff_c;
use crate::error::{Error, Result};
use crate::exact::rational::binom_i;
use crate::exact::{TruncSeries, ZetaPoly};
use crate::memo::SeriesCache;
use crate::numerics::{BigFloat, NumericContext};
use crate::report::Report;
use crate::open::{exp_power_sums, linear};

/// Ṽ(S, T) = exp(2 Σ_{q odd} binom(p+q−1, p) ζ(2p+3q) S^p T^q / q), truncated at
/// weight 2p + 3q ≤ order (S has weight 2, T weight 3).
pub fn virasoro_series(order: u32) -> TruncSeries<ZetaPoly> {
    let mut arg = TruncSeries::<ZetaPoly>::zero_weighted(2, [2, 3], order);
    for q in (1..=order / 3).step_by(2) {
        for p in 0..=(order - 3 * q) / 2 {
            let c = Rational::from(binom_i((p + q) as i64 - 1, p as i64)) * Rational::from((2, q));
            arg.set(p as usize, q as usize, ZetaPoly::zeta(2 * p + 3 * q).scale(&c));
        }
    }
    arg.exp().expect("no constant term")
}

static VIRASORO: SeriesCache = SeriesCache::new();

/// e_{p,q}, the coefficient of S^p T^q in Ṽ. Defined here for p, q ≥ 0 only.
pub fn e_exact(p: i64, q: i64) -> Result<ZetaPoly> {
    if p < 0 || q < 0 {
        return Err(Error::InvalidArgument(format!("e_{{{p},{q}}} is stored only for p, q ≥ 0")));
    }
    let w = (2 * p + 3 * q) as u32;
    Ok(VIRASORO.get(w.max(24), virasoro_series).coeff(p as usize, q as usize))
}

/// e_{p,q} with the vanishing −q < p < 0 built in; used only where a formula
/// reaches into that range.
pub(crate) fn e_or_zero(p: i64, q: i64) -> ZetaPoly {
    if p < 0 {
        ZetaPoly::zero()
    } else {
        e_exact(p, q).expect("p, q ≥ 0")
    }
}

/// V^cl(s, t) = exp(−2 Σ ζ(2n+1)/(2n+1) (s^{2n+1} + t^{2n+1} + u^{2n+1})), u = −s−t.
pub fn vcl_series(order: u32) -> TruncSeries<ZetaPoly> {
    exp_power_sums(
        order,
        vcl_coeff,
        &[
            (linear(1, 0, order), 1),
            (linear(0, 1, order), 1),
            (linear(-1, -1, order), 1),
        ],
    )
}

fn vcl_coeff(n: u32) -> Option<ZetaPoly> {
    (n >= 3 && n % 2 == 1).then(|| ZetaPoly::zeta(n).scale(&Rational::from((-2, n))))
}

/// V^cl at s = 2X, t = −X−Y, u = Y−X.
pub fn vcl_at_linear_forms(order: u32) -> TruncSeries<ZetaPoly> {
    exp_power_sums(
        order,
        vcl_coeff,
        &[
            (linear(2, 0, order), 1),
            (linear(-1, -1, order), 1),
            (linear(-1, 1, order), 1),
        ],
    )
}

/// e_{p,q} = Σ_{r<q} (−1)^r C(p,q,r) Z(2p+3q−r, r), for q ≥ 1 and p > −q.
pub fn e_mzv_numeric(ctx: &NumericContext, p: i64, q: i64) -> Result<BigFloat> {
    if q < 1 || p + q < 1 {
        return Err(Error::InvalidArgument(format!("e_{{{p},{q}}} needs q ≥ 1, p + q ≥ 1")));
    }
    let w = 2 * p + 3 * q;
    let mut acc = BigFloat::zero(ctx.bits());
    for r in 0..q {
        let c = coeff_c(p, q, r)?;
        let c = if r % 2 == 0 { c } else { -c };
        let z = ctx.z((w - r) as u32, r as u32)?;
        acc = acc.add(&z.mul_rational(&c));
    }
    Ok(acc)
}

/// f_{μ,ν} = Σ_{p+r=μ} (−1)^r (binom(ν+p, ν) + (−1)^ν δ_{p,0}) Z(ν+p+3, r).
pub fn f_coeff_numeric(ctx: &NumericContext, mu: u32, nu: u32) -> Result<BigFloat> {
    let mut acc = BigFloat::zero(ctx.bits());
    for p in 0..=mu {
        let r = mu - p;
        let mut c = Rational::from(binom_i((nu + p) as i64, nu as i64));
        if p == 0 {
            c += if nu.is_multiple_of(2) { 1 } else { -1 };
        }
        if r % 2 == 1 {
            c = -c;
        }
        if c != 0 {
            acc = acc.add(&ctx.z(nu + p + 3, r)?.mul_rational(&c));
        }
    }
    Ok(acc)
}

/// Partial sum Σ_{n ≤ N} binom(u,n)² (1/(n+s) + 1/(n+t)) of β_ℂ(s,t), u = −s−t.
pub fn beta_complex_partial(s: f64, t: f64, n: u64) -> f64 {
    let u = -s - t;
    let mut b = 1.0;
    let mut acc = 0.0;
    for m in 0..=n {
        if m > 0 {
            b *= (u - (m - 1) as f64) / m as f64;
        }
        acc += b * b * (1.0 / (m as f64 + s) + 1.0 / (m as f64 + t));
    }
    acc
}

/// Leading-order estimate of Σ_{n>N} of the β_ℂ series, from
/// binom(u,n) ~ n^{−u−1}/Γ(−u).
pub fn beta_complex_tail_estimate(s: f64, t: f64, n: u64) -> f64 {
    let u = -s - t;
    let g = libm::tgamma(-u);
    let e = 2.0 * u + 2.0;
    2.0 * (n as f64).powf(-e) / (e * g * g)
}

/// V^cl by its product expansion,
/// 1 − stu Σ_{n≤N} (2 − stu/n³)/((n+s)(n+t)(n+u)) ∏_{j<n} (1 + stu/(n j (n−j))).
pub fn vcl_product_partial(s: f64, t: f64, u: f64, n: u64) -> f64 {
    let p = s * t * u;
    let mut acc = 0.0;
    for m in 1..=n {
        let mf = m as f64;
        let mut prod = 1.0;
        for j in 1..m {
            let jf = j as f64;
            prod *= 1.0 + p / (mf * jf * (mf - jf));
        }
        acc += (2.0 - p / (mf * mf * mf)) / ((mf + s) * (mf + t) * (mf + u)) * prod;
    }
    1.0 - p * acc
}

/// V^cl through Γ(1+s)Γ(1+t)Γ(1+u) / (Γ(1−s)Γ(1−t)Γ(1−u)).
pub fn vcl_gamma(ctx: &NumericContext, s: &Rational, t: &Rational, u: &Rational) -> BigFloat {
    let bits = ctx.bits();
    let g = |x: &Rational| Float::with_val(bits, Rational::from(x + 1u32)).gamma();
    let num = Float::with_val(bits, g(s) * g(t)) * g(u);
    let den = Float::with_val(bits, g(&-s.clone()) * g(&-t.clone())) * g(&-u.clone());
    let v = num / den;
    let e = crate::numerics::bigfloat::ulp(&v) * 64.0;
    BigFloat::new(v, e)
}

/// V^cl through exp(−2 Σ ζ(2n+1)/(2n+1) (s^{2n+1}+t^{2n+1}+u^{2n+1})), |s|,|t|,|u| < 1.
pub fn vcl_exp_numeric(ctx: &NumericContext, s: &Rational, t: &Rational, u: &Rational) -> Result<BigFloat> {
    let bits = ctx.bits();
    let m = [s, t, u].iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    if m >= 1.0 {
        return Err(Error::InvalidArgument("power series needs |s|,|t|,|u| < 1".into()));
    }
    let mut acc = BigFloat::zero(bits);
    let mut n = 1u32;
    loop {
        let k = 2 * n + 1;
        let mut p = Rational::new();
        for x in [s, t, u] {
            p += x.pow_ref_u(k);
        }
        let c = p * Rational::from((-2, k));
        let term = ctx.zeta(k)?.mul_rational(&c);
        let size = term.abs_f64();
        acc = acc.add(&term);
        // Remaining terms are bounded by a geometric series with ratio m².
        let rest = 2.0 * 1.01 * 3.0 * m.powi(k as i32 + 2) / ((k + 2) as f64 * (1.0 - m * m));
        if rest < ctx.tolerance() * 1e-5 && size < ctx.tolerance() {
            acc = acc.with_extra_error(rest);
            break;
        }
        n += 1;
    }
    let v = Float::with_val(bits, acc.value().exp_ref());
    let e = v.to_f64().abs() * (acc.error_bound().exp() - 1.0) * 1.01 + crate::numerics::bigfloat::ulp(&v);
    Ok(BigFloat::new(v, e))
}

fn pole_guard(xs: &[f64]) -> Result<()> {
    for &x in xs {
        if x <= -1.0 + 1e-9 && (x - x.round()).abs() < 1e-9 {
            return Err(Error::PoleProximity(format!("{x} is a negative integer")));
        }
    }
    Ok(())
}

/// The product series for V^cl against the exp-formula, the reflection
/// V^cl(s,t,u)·V^cl(−s,−t,−u) = 1 across the Γ and exp routes, and the β_ℂ
/// sum through β_ℂ = −(u/st)·V^cl. Requires |s|, |t|, |s+t| < 1 and st ≠ 0.
pub fn vcl_an_check(ctx: &NumericContext, s: &Rational, t: &Rational, n: u64, tol_f64: f64) -> Result<Vec<Report>> {
    let u = -Rational::from(s + t);
    let (sf, tf, uf) = (s.to_f64(), t.to_f64(), u.to_f64());
    pole_guard(&[sf, tf, uf])?;
    if sf * tf == 0.0 {
        return Err(Error::PoleProximity("β_ℂ needs st ≠ 0".into()));
    }
    let params = serde_json::json!({"s": s.to_string(), "t": t.to_string(), "N": n});
    let exp_route = vcl_exp_numeric(ctx, s, t, &u)?;
    let prod = vcl_product_partial(sf, tf, uf, n);
    // The omitted terms behave like |stu|·Σ_{m>N} 2/m³ ≈ |stu|/N².
    let prod_tail = (sf * tf * uf).abs() * 1.01 / (n as f64 * n as f64);
    let an = Report::numeric(
        "vcl_product_series",
        params.clone(),
        "product series",
        "exp formula",
        (prod - exp_route.to_f64()).abs(),
        tol_f64,
    )
    .with_note(format!("omitted terms ≈ {prod_tail:.1e}"));

    let (ns, nt, nu) = (Rational::from(-s), Rational::from(-t), Rational::from(-&u));
    let refl = vcl_gamma(ctx, s, t, &u).mul(&vcl_exp_numeric(ctx, &ns, &nt, &nu)?);
    let reflection = Report::numeric(
        "vcl_reflection",
        params.clone(),
        "Γ route at (s,t,u) × exp route at (−s,−t,−u)",
        "1",
        refl.diff_bound(&BigFloat::from_i64(1, ctx.bits())),
        ctx.tolerance(),
    );

    let gamma_vs_exp = Report::numeric(
        "vcl_gamma_vs_exp",
        params.clone(),
        "Γ ratio",
        "exp formula",
        vcl_gamma(ctx, s, t, &u).diff_bound(&exp_route),
        ctx.tolerance(),
    );

    let beta = beta_complex_partial(sf, tf, n) + beta_complex_tail_estimate(sf, tf, n);
    let beta_v = -(sf * tf / uf) * beta;
    let beta_report = Report::numeric(
        "beta_complex_sum",
        params,
        "−(st/u)·β_ℂ partial sum + tail estimate",
        "exp formula",
        (beta_v - exp_route.to_f64()).abs(),
        tol_f64,
    );
    Ok(vec![an, reflection, gamma_vs_exp, beta_report])
}

trait PowU {
    fn pow_ref_u(&self, k: u32) -> Rational;
}

impl PowU for Rational {
    fn pow_ref_u(&self, k: u32) -> Rational {
        let mut acc = Rational::from(1);
        for _ in 0..k {
            acc *= self;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn z(k: u32) -> ZetaPoly {
        ZetaPoly::zeta(k)
    }

    #[test]
    fn low_e_values() {
        assert_eq!(e_exact(0, 0).unwrap(), ZetaPoly::one());
        for p in 0..6 {
            assert_eq!(e_exact(p, 1).unwrap(), z(2 * p as u32 + 3).scale(&rat(2, 1)));
        }
        // e_{p,2} = 2 Σ_{p1+p2=p} ζ(2p1+3) ζ(2p2+3)
        for p in 0..4i64 {
            let mut expect = ZetaPoly::zero();
            for p1 in 0..=p {
                expect += &(&z(2 * p1 as u32 + 3) * &z(2 * (p - p1) as u32 + 3)).scale(&rat(2, 1));
            }
            assert_eq!(e_exact(p, 2).unwrap(), expect);
        }
        assert!(e_exact(-1, 2).is_err());
    }

    #[test]
    fn e_p3_display() {
        // e_{p,3} = (4/3) Σ ζζζ + (p+1)(p+2)/3 ζ(2p+9)
        for p in 0..3i64 {
            let mut expect = z(2 * p as u32 + 9).scale(&rat((p + 1) * (p + 2), 3));
            for a in 0..=p {
                for b in 0..=(p - a) {
                    let c = p - a - b;
                    let t = &(&z(2 * a as u32 + 3) * &z(2 * b as u32 + 3)) * &z(2 * c as u32 + 3);
                    expect += &t.scale(&rat(4, 3));
                }
            }
            assert_eq!(e_exact(p, 3).unwrap(), expect);
        }
    }

    #[test]
    fn virasoro_agrees_with_power_sum_form() {
        // Substituting S = s² + st + t², T = st(s+t) into Ṽ must give V^cl(s, t).
        let order = 12;
        let vt = virasoro_series(order);
        let s_poly = {
            let mut s = TruncSeries::<ZetaPoly>::zero(2, order);
            s.set(2, 0, ZetaPoly::one());
            s.set(1, 1, ZetaPoly::one());
            s.set(0, 2, ZetaPoly::one());
            s
        };
        let t_poly = {
            let mut s = TruncSeries::<ZetaPoly>::zero(2, order);
            s.set(2, 1, ZetaPoly::one());
            s.set(1, 2, ZetaPoly::one());
            s
        };
        let mut total = TruncSeries::<ZetaPoly>::zero(2, order);
        for (p, q, c) in vt.terms() {
            total = total.add(&s_poly.pow(p as u32).mul(&t_poly.pow(q as u32)).mul_coeff(c));
        }
        assert!(total.mismatches(&vcl_series(order)).is_empty());
    }

    #[test]
    fn exp_log_roundtrip_order_twelve() {
        let v = vcl_series(12);
        assert_eq!(v.log().unwrap().exp().unwrap(), v);
        let vt = virasoro_series(12);
        assert_eq!(vt.log().unwrap().exp().unwrap(), vt);
    }

    #[test]
    fn product_series_and_reflection() {
        let ctx = NumericContext::new(30);
        for r in vcl_an_check(&ctx, &rat(1, 10), &rat(2, 10), 10_000, 1e-6).unwrap() {
            assert!(r.pass, "{}", r.to_text());
        }
        // stu = 0 gives 1 on every route.
        assert_eq!(vcl_product_partial(0.3, 0.0, -0.3, 100), 1.0);
        let v = vcl_exp_numeric(&ctx, &rat(3, 10), &rat(0, 1), &rat(-3, 10)).unwrap();
        assert!(v.diff_bound(&BigFloat::from_i64(1, ctx.bits())) < 1e-28);
        assert!(vcl_an_check(&ctx, &rat(-1, 1), &rat(1, 2), 10, 1e-6).is_err());
    }

    #[test]
    fn beta_first_term() {
        assert_eq!(beta_complex_partial(0.1, 0.2, 0), 1.0 / 0.1 + 1.0 / 0.2);
    }

    #[test]
    fn f_symmetry() {
        let ctx = NumericContext::new(30);
        for m in 0..=5u32 {
            for n in 0..m {
                let a = f_coeff_numeric(&ctx, m, n).unwrap();
                let b = f_coeff_numeric(&ctx, n, m).unwrap();
                assert!(a.diff_bound(&b) < 1e-25, "({m},{n})");
            }
        }
    }

    #[test]
    fn f_zero_zero_is_twice_zeta_three() {
        let ctx = NumericContext::new(30);
        let f = f_coeff_numeric(&ctx, 0, 0).unwrap();
        let t = ctx.zeta(3).unwrap().mul_rational(&rat(2, 1));
        assert!(f.diff_bound(&t) < 1e-30);
    }
}
