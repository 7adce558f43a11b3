//! Green's function and B-cycle propagator on the torus C/(Z + τZ), τ = iy,
//! from the product expansions of θ₁ and η.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const TERM_FLOOR: f64 = 1e-19;
const LATTICE_GUARD: f64 = 1e-6;

/// Reduces z = a + ib to |a| ≤ 1/2, |b| ≤ y/2.
fn reduce(y: f64, z: Complex64) -> (f64, f64) {
    let a = z.re - z.re.round();
    let b = z.im - y * (z.im / y).round();
    (a, b)
}

/// G(z, τ) = −log|θ₁(z,τ)/η(τ)|² + 2π Im(z)²/Im(τ) for τ = iy, any y > 0.
pub fn green_function(y: f64, z: Complex64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("need Im τ > 0, got {y}")));
    }
    let (a, b) = reduce(y, z);
    if a.hypot(b) < LATTICE_GUARD {
        return Err(Error::LatticeProximity(format!("z = {z}")));
    }
    Ok(green_reduced(y, a, b))
}

/// G at a reduced point, without the lattice guard; quadrature nodes get much
/// closer to 0 than the public guard allows.
pub(crate) fn green_reduced(y: f64, a: f64, b: f64) -> f64 {
    let sa = (PI * a).sin();
    let sb = (PI * b).sinh();
    let mut g = -(4.0 * (sb * sb + sa * sa)).ln() + PI * y / 3.0 + 2.0 * PI * b * b / y;
    let w = Complex64::from_polar((-2.0 * PI * b).exp(), 2.0 * PI * a);
    let winv = w.inv();
    let q = (-2.0 * PI * y).exp();
    let mut qn = q;
    loop {
        let t1 = w * qn;
        let t2 = winv * qn;
        g -= 2.0 * ((Complex64::new(1.0, 0.0) - t1).norm().ln() + (Complex64::new(1.0, 0.0) - t2).norm().ln());
        if t1.norm().max(t2.norm()) < TERM_FLOOR {
            break;
        }
        qn *= q;
    }
    g
}

/// P_B(ξτ, τ) through the Green's function: on the B-cycle P_B = G/2 − π/(6y).
pub fn propagator_b_theta(y: f64, xi: f64) -> Result<f64> {
    Ok(green_function(y, Complex64::new(0.0, xi * y))? / 2.0 - PI / (6.0 * y))
}

/// R(ξ) = T(ξ² − ξ + 1/6) − ζ(2)/T with T = πy.
pub fn r_part(y: f64, xi: f64) -> f64 {
    let t = PI * y;
    t * (xi * xi - xi + 1.0 / 6.0) - PI * PI / 6.0 / t
}

/// S(ξ) = −log(1−ũ) − Σ_n [log(1 − qⁿũ) + log(1 − qⁿ/ũ)], ũ = e^{−2πyξ}, 0 < ξ < 1.
pub fn s_part(y: f64, xi: f64) -> f64 {
    let x = 2.0 * PI * y * xi;
    let mut s = -(-(-x).exp_m1()).ln();
    let q = (-2.0 * PI * y).exp();
    let u = (-x).exp();
    let mut qn = q;
    loop {
        let t1 = qn * u;
        let t2 = qn / u;
        s -= (-t1).ln_1p() + (-t2).ln_1p();
        if t2 < TERM_FLOOR {
            break;
        }
        qn *= q;
    }
    s
}

/// P_B(ξτ, τ) = R + S, for real ξ (reduced mod 1 and by parity).
pub fn propagator_b(y: f64, xi: f64) -> Result<f64> {
    let mut x = xi - xi.floor();
    if x > 0.5 {
        x = 1.0 - x;
    }
    if x < LATTICE_GUARD / y.max(1.0) {
        return Err(Error::LatticeProximity(format!("ξ = {xi}")));
    }
    Ok(propagator_b_reduced(y, x))
}

/// P_B for 0 < ξ ≤ 1/2 without the guard.
pub(crate) fn propagator_b_reduced(y: f64, xi: f64) -> f64 {
    r_part(y, xi) + s_part(y, xi)
}

/// S as the truncated triple series
/// Σ_m ũ^m/m + Σ_{n,m} ũ^m q^{nm}/m + Σ_{n,m} ũ^{−m} q^{nm}/m.
pub fn s_triple_series(y: f64, xi: f64, mmax: u32, nmax: u32) -> f64 {
    let u = (-2.0 * PI * y * xi).exp();
    let q = (-2.0 * PI * y).exp();
    let mut s = 0.0;
    for m in 1..=mmax {
        let mf = m as f64;
        s += u.powi(m as i32) / mf;
        let mut qn = 1.0;
        for _ in 1..=nmax {
            qn *= q;
            s += ((u * qn).powi(m as i32) + (qn / u).powi(m as i32)) / mf;
        }
    }
    s
}
