//! Open-string side: the Veneziano series, the numbers η_{n,k}, the Laurent
//! polynomials b_ℓ(T) and the generating function W^op.

use rug::Rational;

use crate::error::{Error, Result};
use crate::exact::rational::{binom_i, double_factorial_odd, factorial};
use crate::exact::series::sinc_pi;
use crate::exact::{LaurentPoly, TruncSeries, ZetaPoly};
use crate::memo::SeriesCache;
use crate::mzv::h_exact;
use crate::report::Report;
use crate::Route;

/// exp(Σ_n c_n Σ_f sign_f · f^n) for linear forms f in two variables.
pub(crate) fn exp_power_sums(
    order: u32,
    coeff: impl Fn(u32) -> Option<ZetaPoly>,
    forms: &[(TruncSeries<Rational>, i64)],
) -> TruncSeries<ZetaPoly> {
    let mut arg = TruncSeries::<ZetaPoly>::zero(2, order);
    let mut powers: Vec<TruncSeries<Rational>> = forms.iter().map(|(f, _)| f.clone()).collect();
    for n in 1..=order {
        if n > 1 {
            for (p, (f, _)) in powers.iter_mut().zip(forms) {
                *p = p.mul(f);
            }
        }
        let Some(c) = coeff(n) else { continue };
        let mut sum = TruncSeries::<Rational>::zero(2, order);
        for (p, (_, sign)) in powers.iter().zip(forms) {
            sum = sum.add(&p.scale(&Rational::from(*sign)));
        }
        arg = arg.add(&sum.map(|r| c.scale(r)));
    }
    arg.exp().expect("argument has no constant term")
}

pub(crate) fn linear(a: i64, b: i64, order: u32) -> TruncSeries<Rational> {
    TruncSeries::linear(Rational::from(a), Rational::from(b), order)
}

/// (−1)^n ζ(n)/n, the coefficients in log V^op.
fn vop_coeff(n: u32) -> Option<ZetaPoly> {
    (n >= 2).then(|| {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        ZetaPoly::zeta(n).scale(&Rational::from((sign, n)))
    })
}

/// V^op(s, t) = Γ(1+s)Γ(1+t)/Γ(1+s+t) as a series in s, t over ℚ[ζ],
/// built as exp(Σ_{n≥2} (−1)^n ζ(n)/n (s^n + t^n − (s+t)^n)).
pub fn veneziano_series(order: u32) -> TruncSeries<ZetaPoly> {
    exp_power_sums(
        order,
        vop_coeff,
        &[
            (linear(1, 0, order), 1),
            (linear(0, 1, order), 1),
            (linear(1, 1, order), -1),
        ],
    )
}

static VENEZIANO: SeriesCache = SeriesCache::new();

/// Shared Veneziano series of at least the given order.
pub(crate) fn veneziano_cached(order: u32) -> std::sync::Arc<TruncSeries<ZetaPoly>> {
    VENEZIANO.get(order, veneziano_series)
}

/// η_{n,k} = Σ_{r=−1}^{n−k−1} (−2)^{r+2} binom(k+n−r−3, 2k−2) H(k+n−r−2, r+2).
pub fn eta_coeff(n: u32, k: u32) -> Result<ZetaPoly> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("η needs 0 < k ≤ n, got ({n},{k})")));
    }
    let (n, k) = (n as i64, k as i64);
    let mut acc = ZetaPoly::zero();
    for r in -1..=(n - k - 1) {
        let c = Rational::from(binom_i(k + n - r - 3, 2 * k - 2)) * Rational::from(-2).pow_i(r + 2);
        acc += &h_exact((k + n - r - 2) as u32, (r + 2) as u32)?.scale(&c);
    }
    Ok(acc)
}

trait PowI {
    fn pow_i(self, e: i64) -> Rational;
}

impl PowI for Rational {
    fn pow_i(self, e: i64) -> Rational {
        let mut acc = Rational::from(1);
        for _ in 0..e {
            acc *= &self;
        }
        acc
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn fact(n: i64) -> Rational {
    Rational::from(factorial(n as u32))
}

/// b_ℓ(T) ∈ ℚ[ζ][T, T⁻¹].
pub fn b_laurent(l: u32, route: Route) -> Result<LaurentPoly<ZetaPoly>> {
    match route {
        Route::Generating => b_generating(l),
        Route::Direct => b_direct(l),
    }
}

/// From Σ b_ℓ s^ℓ/ℓ! = e^{sT/6} e^{−ζ₂s/T} Σ_n (T^n/(2n+1)!! + Σ_k (−1)^{k−1}(2k−3)!! η_{n,k} T^{−k}) (−s/2)^n.
fn b_generating(l: u32) -> Result<LaurentPoly<ZetaPoly>> {
    let l = l as i64;
    let z2 = ZetaPoly::zeta(2);
    let mut out = LaurentPoly::zero("T");
    for n in 0..=l {
        let mut inner = LaurentPoly::monomial("T", n, ZetaPoly::constant(double_factorial_odd(2 * n + 1).recip()));
        for k in 1..=n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = double_factorial_odd(2 * k - 3) * sign;
            inner.add_term(-k, &eta_coeff(n as u32, k as u32)?.scale(&c));
        }
        let half = q(-1, 2).pow_i(n);
        for m in 0..=(l - n) {
            let i = l - n - m;
            let c = fact(l) / (Rational::from(6).pow_i(m) * fact(m) * fact(i)) * &half;
            let zpow = z2.pow(i as u32).scale(&Rational::from(-1).pow_i(i));
            let factor = LaurentPoly::monomial("T", m - i, zpow.scale(&c));
            out = out.add(&factor.mul(&inner));
        }
    }
    Ok(out)
}

/// Term-by-term expansion of 2∫₀^{1/2} (R + S)^ℓ dz with R = T(z²−z+1/6) − ζ₂/T.
fn b_direct(l: u32) -> Result<LaurentPoly<ZetaPoly>> {
    let l = l as i64;
    let z2 = ZetaPoly::zeta(2);
    let mut out = LaurentPoly::zero("T");
    for a in 0..=l {
        for b in 0..=(l - a) {
            for c in 0..=(l - a - b) {
                for d in 0..=(l - a - b - c) {
                    let e = l - a - b - c - d;
                    let multinom = fact(l) / (fact(a) * fact(b) * fact(c) * fact(d));
                    let sign = if (b + d) % 2 == 0 { 1 } else { -1 };
                    let zd = z2.pow(d as u32);
                    let six_c = Rational::from(6).pow_i(c);
                    if e == 0 {
                        let coef = Rational::from(&multinom * sign) / (six_c * (2 * a + b + 1));
                        out.add_term(l - 2 * d, &zd.scale(&coef));
                    } else {
                        let coef = Rational::from(&multinom * sign) * fact(2 * a + b)
                            / (Rational::from(2).pow_i(2 * a + b) * six_c);
                        let h = h_exact((2 * a + b + 1) as u32, e as u32)?;
                        out.add_term(c - a - d - 1, &(&zd * &h).scale(&coef));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Pole-cleared W^op from the η_{n,k}:
/// 1 + (Y² − X²) Σ_{n≥k>0} η_{n,k} X^{n−k} Y^{2k−2}.
pub fn wop_hat_from_eta(order: u32) -> Result<TruncSeries<ZetaPoly>> {
    let mut sum = TruncSeries::<ZetaPoly>::zero(2, order.saturating_sub(2));
    for n in 1..=order {
        for k in 1..=n {
            if n + k > order {
                continue;
            }
            sum.set((n - k) as usize, (2 * k - 2) as usize, eta_coeff(n, k)?);
        }
    }
    Ok(pole_clear(&sum, order))
}

/// 1 + (Y² − X²)·sum, at the given order.
pub(crate) fn pole_clear(sum: &TruncSeries<ZetaPoly>, order: u32) -> TruncSeries<ZetaPoly> {
    let mut out = TruncSeries::<ZetaPoly>::one(2, order);
    for (i, j, c) in sum.terms() {
        if i + j + 2 <= order as usize {
            out.add_to(i, j + 2, c);
            out.add_to(i + 2, j, &-c);
        }
    }
    out
}

/// sin(πℓ)/π = ℓ·sinc(πℓ) for a linear form ℓ.
pub(crate) fn sin_over_pi(form: &TruncSeries<Rational>, order: u32) -> TruncSeries<ZetaPoly> {
    let f = form.map(|r| ZetaPoly::constant(r.clone()));
    sinc_pi(order).compose(&f).expect("linear form").mul(&f)
}

pub(crate) fn sinc_of(form: &TruncSeries<Rational>, order: u32) -> TruncSeries<ZetaPoly> {
    let f = form.map(|r| ZetaPoly::constant(r.clone()));
    sinc_pi(order).compose(&f).expect("linear form")
}

/// (sin π(X+Y) − sin π(Y−X)) / (π·X): the numerator of the sine ratio, divided by X.
pub(crate) fn sine_numerator_over_x(order: u32) -> TruncSeries<ZetaPoly> {
    let a = sin_over_pi(&linear(1, 1, order + 1), order + 1);
    let b = sin_over_pi(&linear(-1, 1, order + 1), order + 1);
    a.sub(&b).div_by_x().expect("divisible by X")
}

/// V^op at s = 2X, t = −X−Y, u = Y−X.
pub fn vop_at_linear_forms(order: u32) -> TruncSeries<ZetaPoly> {
    exp_power_sums(
        order,
        vop_coeff,
        &[
            (linear(2, 0, order), 1),
            (linear(-1, -1, order), 1),
            (linear(1, -1, order), -1),
        ],
    )
}

/// Pole-cleared W^op from V^op: (Y−X)/(2X)·(sin π(X+Y)/sin π(Y−X) − 1)·V^op(2X, −X−Y, Y−X).
pub fn wop_hat_from_vop(order: u32) -> TruncSeries<ZetaPoly> {
    let ratio = sine_numerator_over_x(order)
        .scale(&q(1, 2))
        .div(&sinc_of(&linear(-1, 1, order), order))
        .expect("sinc is a unit");
    ratio.mul(&vop_at_linear_forms(order))
}

/// Both pole-cleared constructions of W^op, compared exactly up to total degree `order`.
pub fn wop_identity_check(order: u32) -> Result<Report> {
    let a = wop_hat_from_eta(order)?;
    let b = wop_hat_from_vop(order);
    let mism = a.mismatches(&b).into_iter().map(|(i, j)| format!("X^{i}Y^{j}")).collect();
    Ok(Report::exact(
        "wop_identity",
        serde_json::json!({"order": order}),
        "eta series",
        "sine ratio times V^op",
        mism,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn z(k: u32) -> ZetaPoly {
        ZetaPoly::zeta(k)
    }

    #[test]
    fn veneziano_low_orders() {
        let v = veneziano_series(4);
        assert_eq!(v.coeff(0, 0), ZetaPoly::one());
        assert_eq!(v.coeff(1, 0), ZetaPoly::zero());
        assert_eq!(v.coeff(1, 1), -z(2));
        assert_eq!(v.coeff(2, 1), z(3));
    }

    #[test]
    fn eta_diagonal_is_minus_two_even_zeta() {
        for k in 1..=6 {
            assert_eq!(eta_coeff(k, k).unwrap(), z(2 * k).scale(&rat(-2, 1)));
        }
        assert_eq!(eta_coeff(2, 1).unwrap(), z(3).scale(&rat(2, 1)));
    }

    #[test]
    fn b2_and_b3_match_closed_forms() {
        let b2 = b_laurent(2, Route::Generating).unwrap();
        let mut expect = LaurentPoly::zero("T");
        expect.add_term(2, &ZetaPoly::constant(rat(1, 180)));
        expect.add_term(0, &z(2).scale(&rat(1, 3)));
        expect.add_term(-1, &z(3));
        expect.add_term(-2, &z(4).scale(&rat(-3, 2)));
        assert_eq!(b2, expect);

        let b3 = b_laurent(3, Route::Generating).unwrap();
        let mut e3 = LaurentPoly::zero("T");
        e3.add_term(3, &ZetaPoly::constant(rat(1, 3780)));
        e3.add_term(1, &z(2).scale(&rat(1, 15)));
        e3.add_term(0, &z(3).scale(&rat(1, 2)));
        e3.add_term(-1, &z(4).scale(&rat(19, 4)));
        // The ζ2ζ3 coefficient is −6; the quadrature of 2∫P_B³ at τ = 6i confirms it.
        e3.add_term(-2, &(&z(5).scale(&rat(3, 2)) - &(&z(3) * &z(2)).scale(&rat(6, 1))));
        e3.add_term(-3, &z(6).scale(&rat(8, 1)));
        assert_eq!(b3, e3);
    }

    #[test]
    fn b_routes_agree_low_order() {
        for l in 0..=4 {
            assert_eq!(
                b_laurent(l, Route::Generating).unwrap(),
                b_laurent(l, Route::Direct).unwrap(),
                "b_{l}"
            );
        }
    }

    #[test]
    fn wop_routes_agree_low_order() {
        let a = wop_hat_from_eta(6).unwrap();
        let b = wop_hat_from_vop(6);
        assert!(a.mismatches(&b).is_empty());
    }
}
