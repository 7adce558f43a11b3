//! Gauss–Legendre rules and geometrically graded panels for integrands with
//! an integrable logarithmic endpoint singularity.

use std::sync::{Mutex, OnceLock};

/// Nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    static CACHE: OnceLock<Mutex<Vec<(usize, Vec<f64>, Vec<f64>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some((_, x, w)) = cache.lock().unwrap().iter().find(|(m, _, _)| *m == n) {
        return (x.clone(), w.clone());
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    cache.lock().unwrap().push((n, x.clone(), w.clone()));
    (x, w)
}

/// Nodes and weights for [lo, hi] split into `panels` equal panels of `n` points each.
pub fn uniform_nodes(lo: f64, hi: f64, panels: usize, n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((mid + 0.5 * h * xi, 0.5 * h * wi));
        }
    }
    out
}

/// Nodes and weights for [0, b] with panels [b·2^{−k−1}, b·2^{−k}], k < depth,
/// smallest panels first. The piece [0, b·2^{−depth}] is dropped.
pub fn graded_nodes(b: f64, depth: u32, n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let mut out = Vec::with_capacity(depth as usize * n);
    for k in (0..depth).rev() {
        let hi = b * 0.5f64.powi(k as i32);
        let half = 0.25 * hi;
        let mid = 0.75 * hi;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((mid + half * xi, half * wi));
        }
    }
    out
}

pub fn graded_integral(b: f64, depth: u32, n: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    graded_nodes(b, depth, n).into_iter().map(|(x, w)| w * f(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn log_endpoint() {
        // ∫_0^1 log(x)^2 dx = 2
        let v = graded_integral(1.0, 60, 20, |x| x.ln().powi(2));
        assert!((v - 2.0).abs() < 1e-13, "{v}");
    }
}
