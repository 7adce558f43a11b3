//! The single-valued projection on ℚ[ζ₂, ζ₃, ζ₅, …] and the identities it
//! connects: open-string data maps to closed-string data, and the KLT-type
//! relations between the two.
//!
//! sv acts on formal symbols: ζ₂ ↦ 0 and ζ_{2k+1} ↦ 2ζ_{2k+1}, extended as a
//! ring homomorphism. Every coefficient reaching it is already reduced to
//! single zetas, so no motivic structure is needed.

use rug::Rational;

use crate::closed::{d_laurent, gamma_coeff, vcl_series, wcl_hat_from_gamma, GammaRoute};
use crate::error::Result;
use crate::exact::{LaurentPoly, TruncSeries, ZetaPoly};
use crate::open::{b_laurent, eta_coeff, linear, sine_numerator_over_x, sinc_of, veneziano_series, wop_hat_from_eta};
use crate::report::SvReport;
use crate::Route;

/// sv on a zeta polynomial.
pub fn sv_zeta_poly(p: &ZetaPoly) -> ZetaPoly {
    let mut out = ZetaPoly::zero();
    for (m, c) in p.terms() {
        if m.exponent(2) > 0 {
            continue;
        }
        let scale = Rational::from(rug::Integer::from(1) << m.odd_degree());
        out.add_term(m, &Rational::from(c * &scale));
    }
    out
}

pub fn sv_series(s: &TruncSeries<ZetaPoly>) -> TruncSeries<ZetaPoly> {
    s.map(sv_zeta_poly)
}

pub fn sv_laurent(l: &LaurentPoly<ZetaPoly>) -> LaurentPoly<ZetaPoly> {
    l.map(sv_zeta_poly)
}

fn series_report(label: &str, lhs: &TruncSeries<ZetaPoly>, rhs: &TruncSeries<ZetaPoly>) -> SvReport {
    let mismatches: Vec<String> = lhs.mismatches(rhs).into_iter().map(|(i, j)| format!("{i},{j}")).collect();
    SvReport {
        label: label.into(),
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// sv(b_ℓ) = d_ℓ, exponent by exponent.
pub fn verify_theorem_b(l: u32) -> Result<SvReport> {
    let lhs = sv_laurent(&b_laurent(l, Route::Generating)?);
    let rhs = d_laurent(l)?;
    let mismatches: Vec<String> = lhs.mismatches(&rhs).into_iter().map(|e| e.to_string()).collect();
    Ok(SvReport {
        label: format!("sv_b{l}"),
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        pass: mismatches.is_empty(),
        mismatches,
    })
}

/// (Y−X)·(sin π(X+Y)/sin π(Y−X) − 1), as a series over ℚ[ζ₂].
pub fn sine_ratio_cleared(order: u32) -> TruncSeries<ZetaPoly> {
    let m = sine_numerator_over_x(order)
        .div(&sinc_of(&linear(-1, 1, order), order))
        .expect("sinc is a unit");
    m.mul(&TruncSeries::var(2, 0, order))
}

/// sv(V^op) = V^cl, sv(Ŵ^op) = Ŵ^cl and sv of the cleared sine ratio = 2X.
pub fn verify_sv_on_series(order: u32) -> Result<Vec<SvReport>> {
    let a = series_report("sv_vop", &sv_series(&veneziano_series(order)), &vcl_series(order));
    let b = series_report("sv_wop", &sv_series(&wop_hat_from_eta(order)?), &wcl_hat_from_gamma(order)?);
    let two_x = TruncSeries::<ZetaPoly>::var(2, 0, order).scale(&Rational::from(2));
    let c = series_report("sv_sine_ratio", &sv_series(&sine_ratio_cleared(order)), &two_x);
    Ok(vec![a, b, c])
}

/// sv(η_{n,k}) = γ_{n,k} for n ≥ k > 0, n + k ≤ max_sum, with γ_{k,k} = 0.
pub fn verify_sv_eta(max_sum: u32) -> Result<SvReport> {
    let mut mismatches = Vec::new();
    for n in 1..max_sum {
        for k in 1..=n {
            if n + k > max_sum {
                continue;
            }
            let lhs = sv_zeta_poly(&eta_coeff(n, k)?);
            let rhs = if n == k {
                ZetaPoly::zero()
            } else {
                gamma_coeff(n as i64, k as i64, GammaRoute::ViaE)?
            };
            if lhs != rhs {
                mismatches.push(format!("{n},{k}"));
            }
        }
    }
    Ok(SvReport {
        label: "sv_eta".into(),
        lhs: serde_json::json!({"max_sum": max_sum}),
        rhs: serde_json::json!({"max_sum": max_sum}),
        pass: mismatches.is_empty(),
        mismatches,
    })
}

/// The KLT-type identities as exact series over ℚ[ζ₂, ζ₃, …]:
/// V^cl(s,t) = V^op(s,t)/V^op(−s,−t);
/// Ŵ^cl(X,Y) = Ŵ^op(X,Y)/Ŵ^op(−X,Y);
/// Ŵ^cl = 4 σ(2X) σ(X+Y) σ(Y−X) / m² · (Ŵ^op)², with σ(a) = sin(πa)/(πa) and
/// m = (sin π(X+Y) − sin π(Y−X))/(πX).
pub fn klt_checks(order: u32) -> Result<Vec<SvReport>> {
    let minus = Rational::from(-1);
    let one = Rational::from(1);

    let vop = veneziano_series(order);
    let klt1 = vop.div(&vop.scale_vars(&minus, &minus))?;
    let r1 = series_report("klt1", &vcl_series(order), &klt1);

    let wop = wop_hat_from_eta(order)?;
    let wcl = wcl_hat_from_gamma(order)?;
    let klt3 = wop.div(&wop.scale_vars(&minus, &one))?;
    let r3 = series_report("klt3", &wcl, &klt3);

    let sig = sinc_of(&linear(2, 0, order), order)
        .mul(&sinc_of(&linear(1, 1, order), order))
        .mul(&sinc_of(&linear(-1, 1, order), order));
    let m = sine_numerator_over_x(order);
    let klt4 = sig
        .scale(&Rational::from(4))
        .div(&m.mul(&m))?
        .mul(&wop.mul(&wop));
    let r4 = series_report("klt4", &wcl, &klt4);
    Ok(vec![r1, r3, r4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::zeta_poly::tests::arb_poly;
    use proptest::prelude::*;

    fn z(k: u32) -> ZetaPoly {
        ZetaPoly::zeta(k)
    }

    #[test]
    fn base_rules() {
        assert!(sv_zeta_poly(&z(2)).is_zero());
        assert_eq!(sv_zeta_poly(&z(3)), z(3).scale(&Rational::from(2)));
        let p = &(&z(3) * &z(2)) + &z(5).scale(&Rational::from(5));
        assert_eq!(sv_zeta_poly(&p), z(5).scale(&Rational::from(10)));
        assert!(sv_zeta_poly(&z(4)).is_zero());
    }

    #[test]
    fn theorem_b_low() {
        for l in 0..=5 {
            let r = verify_theorem_b(l).unwrap();
            assert!(r.pass, "ℓ={l}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn series_identities() {
        for r in verify_sv_on_series(8).unwrap() {
            assert!(r.pass, "{}: {:?}", r.label, r.mismatches);
        }
    }

    #[test]
    fn eta_to_gamma() {
        let r = verify_sv_eta(10).unwrap();
        assert!(r.pass, "{:?}", r.mismatches);
    }

    #[test]
    fn klt_low_order() {
        for r in klt_checks(6).unwrap() {
            assert!(r.pass, "{}: {:?}", r.label, r.mismatches);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn sv_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(sv_zeta_poly(&(&a * &b)), &sv_zeta_poly(&a) * &sv_zeta_poly(&b));
            prop_assert_eq!(sv_zeta_poly(&(&a + &b)), &sv_zeta_poly(&a) + &sv_zeta_poly(&b));
        }

        #[test]
        fn sv_scales_odd_monomials(exps in proptest::collection::vec(0u32..3, 4)) {
            let m = crate::exact::ZetaMonomial::from_exponents(
                [3u32, 5, 7, 9].into_iter().zip(exps.iter().copied()).filter(|(_, e)| *e > 0),
            ).unwrap();
            let d: u32 = exps.iter().sum();
            let p = ZetaPoly::monomial(m, Rational::from(1));
            prop_assert_eq!(sv_zeta_poly(&p), p.scale(&Rational::from(1u64 << d)));
        }
    }
}
