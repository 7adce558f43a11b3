//! Cross-module invariants that need more than one module or a long run.

use proptest::prelude::*;
use rug::Rational;
use zeta_amp::closed::gamma::check_bs;
use zeta_amp::closed::lambda::etofnew_check;
use zeta_amp::closed::{e_exact, e_mzv_numeric};
use zeta_amp::config::SuiteConfig;
use zeta_amp::exact::{TruncSeries, ZetaPoly};
use zeta_amp::mzv::{h_exact, h_tornheim, tornheim_tail_bound, z_bruteforce_float};
use zeta_amp::numerics::{certified_tail_bound, BigFloat, NumericContext};
use zeta_amp::open::{b_laurent, veneziano_series};
use zeta_amp::suite::Suite;
use zeta_amp::sv::verify_sv_eta;
use zeta_amp::Route;

#[test]
fn z_values_stable_under_doubling_n() {
    let a = NumericContext::new(30).with_z_limit(10_000);
    let b = NumericContext::new(30).with_z_limit(20_000);
    for k in 2..=12 {
        for r in 0..=8 {
            let (za, zb) = (a.z(k, r).unwrap(), b.z(k, r).unwrap());
            let gap = za.abs_diff(&zb);
            assert!(gap <= za.error_bound() + zb.error_bound(), "Z({k},{r}): gap {gap:e}");
        }
    }
}

#[test]
fn z_against_float_nested_sums() {
    let ctx = NumericContext::new(20);
    let n = 100_000;
    for k in 3..=6 {
        for r in 0..=3 {
            let exact = ctx.z(k, r).unwrap();
            let partial = BigFloat::new(z_bruteforce_float(k, r, n, 128), 0.0);
            // The truncated sum misses only positive terms.
            let gap = exact.sub(&partial).to_f64();
            let slack = exact.error_bound() + 1e-25;
            assert!(gap >= -slack, "Z({k},{r}) below partial sum by {gap:e}");
            assert!(gap <= certified_tail_bound(k, r, n) + slack, "Z({k},{r}): gap {gap:e}");
        }
    }
}

#[test]
fn h_values_bracketed_by_tornheim_sums() {
    let ctx = NumericContext::new(20);
    for r in 1..=3u32 {
        for k in 1..=(6 - r) {
            let exact = ctx.eval(&h_exact(k, r).unwrap()).unwrap().to_f64();
            let n = if r == 3 { 60 } else { 200 };
            let part = h_tornheim(k, r, n).unwrap().to_f64();
            assert!(part <= exact + 1e-15, "H({k},{r}) partial exceeds limit");
            assert!(exact - part <= tornheim_tail_bound(k, r, n), "H({k},{r}) tail too large");
        }
    }
}

#[test]
fn veneziano_series_from_h_values() {
    let order = 12;
    let v = veneziano_series(order);
    let mut rebuilt = TruncSeries::<ZetaPoly>::one(2, order);
    for k in 1..order {
        for r in 1..=(order - k) {
            let h = h_exact(k, r).unwrap();
            let c = if (k + r) % 2 == 1 { h } else { -h };
            rebuilt.set(k as usize, r as usize, c);
        }
    }
    assert!(v.mismatches(&rebuilt).is_empty());
}

#[test]
fn b_routes_agree_to_eight() {
    for l in 0..=8 {
        assert_eq!(b_laurent(l, Route::Generating).unwrap(), b_laurent(l, Route::Direct).unwrap(), "b_{l}");
    }
}

#[test]
fn sv_eta_is_gamma_to_weight_fourteen() {
    let r = verify_sv_eta(14).unwrap();
    assert!(r.pass, "{:?}", r.mismatches);
}

#[test]
fn q_weighted_identities() {
    for q in 2..=12 {
        for p in -6..=6 {
            let r = check_bs(p, q);
            assert!(r.pass, "{}", r.to_text());
        }
    }
    let suite = Suite::new(SuiteConfig::default());
    for r in suite.bn(20) {
        assert!(r.pass, "{}", r.to_text());
    }
}

#[test]
fn f_from_e_to_weight_fifteen() {
    let ctx = NumericContext::new(30);
    for w in 3..=15 {
        let r = etofnew_check(&ctx, w).unwrap();
        assert!(r.pass, "{}", r.to_text());
    }
}

#[test]
fn theorems_hold_at_working_precision() {
    let ctx = NumericContext::new(30);
    let tol = 1e-25;
    for q in 1..=8i64 {
        for p in (1 - q)..=((24 - 3 * q) / 2) {
            let num = e_mzv_numeric(&ctx, p, q).unwrap();
            let target = if p >= 0 {
                ctx.eval(&e_exact(p, q).unwrap()).unwrap()
            } else {
                BigFloat::zero(ctx.bits())
            };
            assert!(num.diff_bound(&target) < tol, "e_{{{p},{q}}}");
        }
    }
}

#[test]
fn d_routes_and_grading() {
    let suite = Suite::new(SuiteConfig::default());
    for r in suite.d_routes(8) {
        assert!(r.pass, "{}", r.to_text());
    }
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::from((n, d)))
}

fn arb_nilpotent() -> impl Strategy<Value = (u8, u32, Vec<Rational>)> {
    (1u8..=2, 1u32..=12).prop_flat_map(|(nvars, order)| {
        (Just(nvars), Just(order), proptest::collection::vec(arb_rational(), 91))
    })
}

fn build(nvars: u8, order: u32, coeffs: &[Rational]) -> TruncSeries<Rational> {
    let mut s = TruncSeries::<Rational>::zero(nvars, order);
    let mut it = coeffs.iter().cycle();
    for (i, j) in s.clone().positions() {
        if i + j > 0 {
            s.set(i, j, it.next().unwrap().clone());
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_log_roundtrip_every_order((nvars, order, coeffs) in arb_nilpotent()) {
        let f = build(nvars, order, &coeffs);
        let one_plus_f = f.add(&TruncSeries::one(nvars, order));
        prop_assert_eq!(one_plus_f.log().unwrap().exp().unwrap(), one_plus_f);
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn error_bounds_only_grow(a in -1e3f64..1e3, b in -1e3f64..1e3, ea in 0f64..1e-20, eb in 0f64..1e-20) {
        let x = BigFloat::new(rug::Float::with_val(128, a), ea);
        let y = BigFloat::new(rug::Float::with_val(128, b), eb);
        for z in [x.add(&y), x.sub(&y), x.mul(&y), x.neg(), x.powi(3)] {
            prop_assert!(z.error_bound() >= 0.0);
        }
        prop_assert!(x.add(&y).error_bound() >= ea.max(eb));
        prop_assert!(x.with_extra_error(1e-30).error_bound() >= ea);
    }
}
