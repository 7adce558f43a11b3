//! Closed-string side: the Virasoro–Shapiro series, the e_{p,q} and their
//! multiple-zeta representation, the γ_{n,k}, d_ℓ(Y) and W^cl.

pub mod coeff_c;
pub mod gamma;
pub mod lambda;
pub mod laurent_d;
pub mod virasoro;

use crate::error::Result;
use crate::exact::{TruncSeries, ZetaPoly};
use crate::numerics::NumericContext;
use crate::open::pole_clear;
use crate::report::Report;

pub use coeff_c::{coeff_c, coeff_c_general};
pub use gamma::{gamma_coeff, gamma_coeff_numeric, poly_p, poly_q, GammaRoute};
pub use lambda::{lambda_poly, lambda_rank_check, symmetry_lemma_check};
pub use laurent_d::{d_direct_numeric, d_laurent};
pub use virasoro::{e_exact, e_mzv_numeric, f_coeff_numeric, vcl_at_linear_forms, vcl_series, virasoro_series};

/// Pole-cleared W^cl from the γ_{n,k}: 1 + (Y² − X²) Σ_{n>k>0} γ_{n,k} X^{n−k} Y^{2k−2}.
pub fn wcl_hat_from_gamma(order: u32) -> Result<TruncSeries<ZetaPoly>> {
    let mut sum = TruncSeries::<ZetaPoly>::zero(2, order.saturating_sub(2));
    for n in 2..=order as i64 {
        for k in 1..n {
            if n + k > order as i64 {
                continue;
            }
            sum.set((n - k) as usize, (2 * k - 2) as usize, gamma_coeff(n, k, GammaRoute::ViaE)?);
        }
    }
    Ok(pole_clear(&sum, order))
}

/// Pole-cleared W^cl as V^cl(2X, −X−Y, Y−X).
pub fn wcl_hat_from_vcl(order: u32) -> TruncSeries<ZetaPoly> {
    vcl_at_linear_forms(order)
}

/// Exact comparison of both constructions of W^cl, followed by a numeric
/// comparison of the exact γ_{n,k} against their multiple-zeta sums.
pub fn wcl_identity_check(ctx: &NumericContext, order: u32) -> Result<Vec<Report>> {
    let a = wcl_hat_from_gamma(order)?;
    let b = wcl_hat_from_vcl(order);
    let mism = a.mismatches(&b).into_iter().map(|(i, j)| format!("X^{i}Y^{j}")).collect();
    let exact = Report::exact(
        "wcl_identity",
        serde_json::json!({"order": order}),
        "gamma series",
        "V^cl at linear forms",
        mism,
    );
    let mut worst: f64 = 0.0;
    for n in 2..=order as i64 {
        for k in 1..n {
            if n + k > order as i64 {
                continue;
            }
            let ex = ctx.eval(&gamma_coeff(n, k, GammaRoute::ViaE)?)?;
            worst = worst.max(ex.abs_diff(&gamma_coeff_numeric(ctx, n, k)?));
        }
    }
    let num = Report::numeric(
        "gamma_numeric",
        serde_json::json!({"order": order}),
        "gamma via e",
        "gamma via Z",
        worst,
        ctx.tolerance(),
    );
    Ok(vec![exact, num])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wcl_identity_order_ten() {
        let ctx = NumericContext::new(30);
        for r in wcl_identity_check(&ctx, 10).unwrap() {
            assert!(r.pass, "{}", r.to_text());
        }
    }

    #[test]
    fn wcl_on_diagonal_is_one() {
        // Y = X gives V^cl(2X, −2X, 0) = 1.
        let w = wcl_hat_from_vcl(10);
        for d in 1..=10usize {
            let mut s = ZetaPoly::zero();
            for i in 0..=d {
                s += &w.coeff(i, d - i);
            }
            assert!(s.is_zero(), "degree {d}");
        }
    }
}
