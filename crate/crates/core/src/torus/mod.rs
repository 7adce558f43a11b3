//! Numerical oracle on the torus: D_ℓ(τ) as the average of G(z,τ)^ℓ over the
//! torus and B_ℓ(τ) as the average of P_B^ℓ over the B-cycle, for τ = iy,
//! compared with the Laurent polynomials d_ℓ(2πy) and b_ℓ(πy).
//!
//! Everything here runs in f64. The error estimates come from comparing two
//! resolutions and are heuristic, not certified.
//!
//! For D_ℓ the logarithmic singularity at z = 0 is split off with a smooth
//! radial cutoff χ(r) = erfc((r − r₀)/w)/2: the remainder (1−χ)G^ℓ is smooth
//! and periodic, so the product trapezoid rule converges spectrally, while
//! χG^ℓ is integrated in polar coordinates with Gauss–Legendre panels graded
//! towards r = 0 and the trapezoid rule in θ.

pub mod quad;
pub mod theta;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::closed::d_laurent;
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, ZetaPoly};
use crate::numerics::NumericContext;
use crate::open::b_laurent;
use crate::report::Report;
use crate::Route;

pub use theta::{green_function, propagator_b};

const R0: f64 = 0.25;
const WIDTH: f64 = 0.045;
const R_CUT: f64 = 0.5;
const R_INNER: f64 = 0.05;

fn chi(r: f64) -> f64 {
    if r >= R_CUT {
        0.0
    } else {
        0.5 * libm::erfc((r - R0) / WIDTH)
    }
}

fn one_minus_chi(r: f64) -> f64 {
    if r >= R_CUT {
        1.0
    } else {
        0.5 * libm::erfc((R0 - r) / WIDTH)
    }
}

/// A quadrature value with its heuristic error estimate.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct OracleValue {
    pub value: f64,
    pub estimate: f64,
}

fn check_tau(y: f64) -> Result<()> {
    if !(y >= 2.0) {
        return Err(Error::InvalidArgument(format!("the oracle needs Im τ ≥ 2, got {y}")));
    }
    Ok(())
}

fn powers_into(acc: &mut [f64], g: f64, weight: f64) {
    let mut p = weight;
    for a in acc.iter_mut() {
        *a += p;
        p *= g;
    }
}

/// ∫∫ (1−χ) G^ℓ dα dβ on an n×n grid, ℓ = 0..=lmax. Rows are summed in
/// parallel and combined in index order, so the result does not depend on
/// the number of workers.
fn smooth_part(lmax: usize, y: f64, n: usize) -> Vec<f64> {
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut acc = vec![0.0; lmax + 1];
            let b = {
                let b = j as f64 / n as f64 * y;
                if b > y / 2.0 { b - y } else { b }
            };
            for i in 0..n {
                let a = {
                    let a = i as f64 / n as f64;
                    if a > 0.5 { a - 1.0 } else { a }
                };
                let r = a.hypot(b);
                if r < R_INNER {
                    continue;
                }
                let g = theta::green_reduced(y, a, b);
                powers_into(&mut acc, g, one_minus_chi(r));
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; lmax + 1];
    for row in rows {
        for (t, v) in total.iter_mut().zip(row) {
            *t += v;
        }
    }
    let h2 = 1.0 / (n * n) as f64;
    total.iter().map(|t| t * h2).collect()
}

/// (1/y) ∫_0^{R_CUT} r χ(r) ∫_0^{2π} G(re^{iθ})^ℓ dθ dr, ℓ = 0..=lmax.
fn singular_part(lmax: usize, y: f64, nodes: usize, ntheta: usize) -> Vec<f64> {
    let mut radial = quad::graded_nodes(R_INNER, 50, nodes);
    radial.extend(quad::uniform_nodes(R_INNER, R_CUT, 18, nodes));
    let parts: Vec<Vec<f64>> = radial
        .par_iter()
        .map(|&(r, wr)| {
            let mut acc = vec![0.0; lmax + 1];
            let wt = 2.0 * PI / ntheta as f64;
            for k in 0..ntheta {
                let th = k as f64 * wt;
                let g = theta::green_reduced(y, r * th.cos(), r * th.sin());
                powers_into(&mut acc, g, wr * r * chi(r) * wt);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; lmax + 1];
    for p in parts {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total.iter().map(|t| t / y).collect()
}

/// D_ℓ(iy) for ℓ = 0..=lmax on an n×n grid.
pub fn d_quadrature_all(lmax: usize, y: f64, grid: usize) -> Result<Vec<OracleValue>> {
    check_tau(y)?;
    if grid < 64 {
        return Err(Error::InvalidArgument(format!("grid must be ≥ 64, got {grid}")));
    }
    let s_fine = smooth_part(lmax, y, grid);
    let s_coarse = smooth_part(lmax, y, grid / 2);
    let p_fine = singular_part(lmax, y, 20, 128);
    let p_coarse = singular_part(lmax, y, 14, 96);
    Ok((0..=lmax)
        .map(|l| {
            let value = s_fine[l] + p_fine[l];
            let estimate = (s_fine[l] - s_coarse[l]).abs()
                + (p_fine[l] - p_coarse[l]).abs()
                + 1e-13 * (1.0 + value.abs());
            OracleValue { value, estimate }
        })
        .collect())
}

pub fn d_quadrature(l: usize, y: f64, grid: usize) -> Result<OracleValue> {
    Ok(d_quadrature_all(l, y, grid)?[l])
}

fn b_rule(l: u32, y: f64, nodes: usize) -> f64 {
    2.0 * quad::graded_integral(0.5, 60, nodes, |xi| {
        theta::propagator_b_reduced(y, xi).powi(l as i32)
    })
}

/// B_ℓ(iy) = 2∫_0^{1/2} P_B(ξτ, τ)^ℓ dξ. ℓ = 1 needs a regularization and is rejected.
pub fn b_quadrature(l: u32, y: f64) -> Result<OracleValue> {
    check_tau(y)?;
    if l == 1 {
        return Err(Error::InvalidArgument(
            "B_1 diverges and is fixed to 0 by a tangential base point regularization".into(),
        ));
    }
    let value = b_rule(l, y, 24);
    let estimate = (value - b_rule(l, y, 16)).abs() + 1e-13 * (1.0 + value.abs());
    Ok(OracleValue { value, estimate })
}

/// A Laurent polynomial over ℚ[ζ] evaluated at x in f64.
pub fn laurent_eval(ctx: &NumericContext, p: &LaurentPoly<ZetaPoly>, x: f64) -> Result<f64> {
    let mut s = 0.0;
    for (e, c) in p.terms() {
        s += ctx.eval(c)?.to_f64() * x.powi(e as i32);
    }
    Ok(s)
}

/// Which torus average to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    D,
    B,
}

/// Compares the quadrature with the Laurent prediction at τ = iy.
pub fn oracle_check(
    ctx: &NumericContext,
    kind: OracleKind,
    l: u32,
    y: f64,
    grid: usize,
    tol: f64,
) -> Result<Report> {
    let (q, pred, name) = match kind {
        OracleKind::D => (
            d_quadrature(l as usize, y, grid)?,
            laurent_eval(ctx, &d_laurent(l)?, 2.0 * PI * y)?,
            "D_torus",
        ),
        OracleKind::B => (
            b_quadrature(l, y)?,
            laurent_eval(ctx, &b_laurent(l, Route::Generating)?, PI * y)?,
            "B_torus",
        ),
    };
    let params = serde_json::json!({"l": l, "tau_im": y, "grid": grid});
    Ok(Report::numeric(name, params, "quadrature", "Laurent polynomial", (q.value - pred).abs(), tol)
        .with_note(format!(
            "heuristic, not certified; value={:.12e} estimate={:.1e} prediction={:.12e}",
            q.value, q.estimate, pred
        )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_low_orders_at_six_i() {
        let ctx = NumericContext::new(30);
        let y = 6.0;
        let vals = d_quadrature_all(3, y, 256).unwrap();
        assert!((vals[0].value - 1.0).abs() < 1e-10);
        assert!(vals[1].value.abs() < 1e-8, "{}", vals[1].value);
        for l in [2usize, 3] {
            let pred = laurent_eval(&ctx, &d_laurent(l as u32).unwrap(), 2.0 * PI * y).unwrap();
            assert!((vals[l].value - pred).abs() < 1e-7, "ℓ={l}: {} vs {pred}", vals[l].value);
        }
    }

    #[test]
    fn b_at_six_i() {
        let ctx = NumericContext::new(30);
        let y = 6.0;
        assert!((b_quadrature(0, y).unwrap().value - 1.0).abs() < 1e-12);
        assert!(b_quadrature(1, y).is_err());
        for l in [2u32, 3, 4] {
            let pred = laurent_eval(&ctx, &b_laurent(l, Route::Generating).unwrap(), PI * y).unwrap();
            let v = b_quadrature(l, y).unwrap().value;
            assert!((v - pred).abs() < 1e-9, "ℓ={l}: {v} vs {pred}");
        }
    }

    #[test]
    fn remainder_shrinks_with_im_tau() {
        let ctx = NumericContext::new(30);
        for l in [2u32, 3] {
            let d = d_laurent(l).unwrap();
            let mut last = f64::INFINITY;
            for y in [2.0, 3.0, 4.0] {
                let q = d_quadrature(l as usize, y, 256).unwrap().value;
                let diff = (q - laurent_eval(&ctx, &d, 2.0 * PI * y).unwrap()).abs();
                assert!(diff < last, "ℓ={l} y={y}: {diff} ≥ {last}");
                last = diff;
            }
        }
    }

    #[test]
    fn refinement_within_estimate() {
        let y = 6.0;
        let a = d_quadrature_all(4, y, 128).unwrap();
        let b = d_quadrature_all(4, y, 256).unwrap();
        for l in 0..=4 {
            assert!((a[l].value - b[l].value).abs() <= a[l].estimate, "ℓ={l}");
        }
    }
}
