//! The nested sums Z(k, r) = Σ_n c_r(n) n^(−k), where c_r(n) is the t^r
//! coefficient of ∏_{0<m<n} (1 + t/m)².
//!
//! The table sums every (k, r) with k + r ≤ W directly up to N and adds an
//! asymptotic tail. For n > N the harmonic sums H^{(j)}_{n−1} are replaced by
//! their Euler–Maclaurin expansions in x = 1/n, truncated at x^M, so that
//! c_r(n) becomes a polynomial in L = ln n and x whose tail sums
//! Σ_{n>N} L^a n^(−s) are again evaluated by Euler–Maclaurin. Every dropped
//! piece is bounded by a coefficientwise majorant.

use rug::{Float, Integer, Rational};

use super::bigfloat::{ulp, BigFloat};
use super::NumericContext;
use crate::error::{Error, Result};
use crate::exact::rational::bernoulli;

/// Radius at which the x-expansion is majorized.
const RHO: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct ZTable {
    n_limit: u64,
    max_weight: u32,
    /// values[r][k]
    values: Vec<Vec<BigFloat>>,
}

impl ZTable {
    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn n_limit(&self) -> u64 {
        self.n_limit
    }

    pub fn get(&self, k: u32, r: u32) -> Option<&BigFloat> {
        if k < 2 || k + r > self.max_weight {
            return None;
        }
        self.values.get(r as usize).and_then(|row| row.get(k as usize))
    }

    pub fn compute(ctx: &NumericContext, max_weight: u32) -> Result<ZTable> {
        let w = max_weight.max(2) as usize;
        let rmax = w - 2;
        let bits = ctx.bits();
        let n_lim = ctx.z_limit();
        if n_lim < 100 {
            return Err(Error::InvalidArgument("summation limit must be at least 100".into()));
        }

        let (mut acc, cmax) = direct_sums(w, rmax, n_lim, bits);
        let tail = Tail::new(ctx, w, rmax)?;
        let two_pow = (w as f64 + rmax as f64 + 8.0).log2();
        let rounding =
            16.0 * n_lim as f64 * 2f64.powf(two_pow) * 2f64.powi(-(bits as i32)) * (1.0 + cmax);

        let mut values = Vec::with_capacity(rmax + 1);
        for (r, row) in acc.iter_mut().enumerate() {
            let mut out = Vec::with_capacity(w + 1);
            for k in 0..=w {
                if k < 2 || k + r > w {
                    out.push(BigFloat::zero(bits));
                    continue;
                }
                let (t, terr) = tail.value(k, r);
                let v = Float::with_val(bits, &row[k] + &t);
                let err = terr + rounding + ulp(&v);
                out.push(BigFloat::new(v, err));
            }
            values.push(out);
        }
        Ok(ZTable {
            n_limit: n_lim,
            max_weight: w as u32,
            values,
        })
    }
}

/// Σ_{n ≤ N} c_r(n) n^(−k) for all 2 ≤ k, k + r ≤ w. Also returns max_r c_r(N).
fn direct_sums(w: usize, rmax: usize, n_lim: u64, bits: u32) -> (Vec<Vec<Float>>, f64) {
    let mut h = vec![Float::new(bits); rmax + 1];
    let mut acc = vec![vec![Float::new(bits); w + 1]; rmax + 1];
    let mut c = vec![Float::new(bits); rmax + 1];
    let mut pw = vec![Float::new(bits); w + 1];
    let mut s = Float::new(bits);
    let mut inv = Float::new(bits);
    for n in 1..=n_lim {
        // c_m = (2/m) Σ_j (−1)^(j−1) H^{(j)} c_{m−j}
        c[0].assign_u(1);
        for m in 1..=rmax {
            s.assign_u(0);
            for j in 1..=m {
                if j % 2 == 1 {
                    s += &h[j] * &c[m - j];
                } else {
                    s -= &h[j] * &c[m - j];
                }
            }
            c[m].assign_float(&s);
            c[m] *= 2u32;
            c[m] /= m as u32;
        }
        inv.assign_u(1);
        inv /= n as f64;
        let mut p = Float::with_val(bits, &inv * &inv);
        for slot in pw.iter_mut().take(w + 1).skip(2) {
            slot.assign_float(&p);
            p *= &inv;
        }
        for r in 0..=rmax {
            for k in 2..=(w - r) {
                acc[r][k] += &c[r] * &pw[k];
            }
        }
        p.assign_float(&inv);
        for hj in h.iter_mut().skip(1) {
            *hj += &p;
            p *= &inv;
        }
    }
    let cmax = c.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    (acc, cmax)
}

trait AssignExt {
    fn assign_u(&mut self, v: u32);
    fn assign_float(&mut self, v: &Float);
}

impl AssignExt for Float {
    fn assign_u(&mut self, v: u32) {
        rug::Assign::assign(self, v);
    }
    fn assign_float(&mut self, v: &Float) {
        rug::Assign::assign(self, v);
    }
}

/// Rising factorial (j)_m.
fn rising(j: u32, m: u32) -> Integer {
    let mut acc = Integer::from(1);
    for i in 0..m {
        acc *= j + i;
    }
    acc
}

/// Bound on Σ_{n>N} (ln n + c)^a n^(−s): the integral from N plus the
/// largest term, valid for any unimodal summand.
pub(crate) fn log_power_sum_bound(a: u32, s: f64, n: f64, c: f64) -> f64 {
    debug_assert!(s > 1.0);
    let u0 = n.ln() + c;
    let mut integral = 0.0;
    let mut falling = 1.0;
    for i in 0..=a {
        integral += falling * u0.powi((a - i) as i32) / (s - 1.0).powi(i as i32 + 1);
        falling *= (a - i) as f64;
    }
    integral *= n.powf(1.0 - s);
    let ustar = a as f64 / s;
    let peak = if ustar <= u0 {
        u0.powi(a as i32) * n.powf(-s)
    } else {
        (a as f64 * ustar.ln() - s * (ustar - c)).exp()
    };
    (integral + peak) * (1.0 + 1e-12)
}

/// Asymptotic tail data shared by all (k, r).
struct Tail {
    m: usize,
    bits: u32,
    n_lim: f64,
    /// e[m][i]: coefficient of t^m x^i in E(t, x)
    e: Vec<Vec<Float>>,
    /// majorant of E at x = RHO
    g: Vec<f64>,
    /// error terms (j, coefficient, power of x) bounding |Δℓ_j|
    eps: Vec<(usize, f64, u32)>,
    /// s_sum[a][s] = Σ_{n>N} (ln n)^a n^(−s), with its remainder bound
    s_sum: Vec<Vec<(Float, f64)>>,
    two_pow_over_fact: Vec<f64>,
}

impl Tail {
    fn new(ctx: &NumericContext, w: usize, rmax: usize) -> Result<Tail> {
        let bits = ctx.bits();
        let n_lim = ctx.z_limit();
        let nf = n_lim as f64;
        let depth = ctx.em_depth() as usize;
        let target = ctx.digits() as f64 + 10.0;
        let m = ((target / nf.log10()).ceil() as usize).max(12).min(2 * depth);

        let gamma = ctx.euler_gamma()?;
        let mut zetas = vec![BigFloat::zero(bits); rmax + 1];
        for (j, z) in zetas.iter_mut().enumerate().skip(2) {
            *z = ctx.zeta(j as u32)?;
        }

        // A_j(x) with ℓ_1 = 2L + A_1(x) and ℓ_j = A_j(x) for j ≥ 2.
        let mut a_poly = vec![vec![Float::new(bits); m + 1]; rmax + 1];
        let mut eps = Vec::new();
        if rmax >= 1 {
            let a1 = &mut a_poly[1];
            a1[0] = Float::with_val(bits, gamma.value() * 2u32);
            eps.push((1, 2.0 * gamma.error_bound(), 0));
            if m >= 1 {
                a1[1] = Float::with_val(bits, -1);
            }
            let mut k = 1;
            loop {
                let b = bernoulli(2 * k);
                let c = &b * Rational::from((-2, 2 * k as i64));
                if 2 * k <= m {
                    a1[2 * k] = Float::with_val(bits, &c);
                } else {
                    eps.push((1, 2.0 * c.to_f64().abs(), 2 * k as u32));
                    break;
                }
                k += 1;
            }
        }
        for j in 2..=rmax {
            let f = Rational::from((if j % 2 == 1 { 2 } else { -2 }, j as i64));
            let fj = f.to_f64().abs();
            let aj = &mut a_poly[j];
            aj[0] = Float::with_val(bits, zetas[j].value() * &f);
            eps.push((j, 2.0 * fj * zetas[j].error_bound(), 0));
            // h_j(x) = −[x^{j−1}/(j−1) + x^j/2 + Σ_k B_2k/(2k)! (j)_{2k−1} x^{j+2k−1}]
            let mut terms: Vec<(usize, Rational, f64)> = vec![
                (j - 1, Rational::from((1, j as i64 - 1)), 1.0 / (j as f64 - 1.0) + 1.0),
                (j, Rational::from((1, 2)), 1.0),
            ];
            for k in 1..=depth {
                let b = bernoulli(2 * k);
                let c = b * rising(j as u32, 2 * k as u32 - 1)
                    / Integer::from(Integer::factorial(2 * k as u32));
                let cf = c.to_f64().abs();
                terms.push((j + 2 * k - 1, c, cf));
            }
            let mut omitted = false;
            for (pow, c, cbound) in terms {
                if pow <= m {
                    let v = Rational::from(&c * &f);
                    aj[pow] -= Float::with_val(bits, &v);
                } else {
                    eps.push((j, 2.0 * fj * cbound, pow as u32));
                    omitted = true;
                    break;
                }
            }
            if !omitted {
                return Err(Error::PrecisionUnreachable {
                    requested: ctx.digits(),
                    achieved: 0.0,
                });
            }
        }

        // E = exp(Σ_j A_j t^j), truncated at x^m.
        let mut e = vec![vec![Float::new(bits); m + 1]; rmax + 1];
        e[0][0] = Float::with_val(bits, 1);
        for mm in 1..=rmax {
            let mut out = vec![Float::new(bits); m + 1];
            for j in 1..=mm {
                for (i1, aji) in a_poly[j].iter().enumerate() {
                    if aji.is_zero() {
                        continue;
                    }
                    for i2 in 0..=(m - i1) {
                        let t = Float::with_val(bits, aji * &e[mm - j][i2]) * j as u32;
                        out[i1 + i2] += t;
                    }
                }
            }
            for v in &mut out {
                *v /= mm as u32;
            }
            e[mm] = out;
        }

        // Majorant G = exp(Σ_j Ã_j(ρ) t^j).
        let a_maj: Vec<f64> = a_poly
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(i, c)| c.to_f64().abs() * RHO.powi(i as i32))
                    .sum::<f64>()
                    * 1.000001
            })
            .collect();
        let mut g = vec![0.0; rmax + 1];
        g[0] = 1.0;
        for mm in 1..=rmax {
            g[mm] = (1..=mm).map(|j| j as f64 * a_maj[j] * g[mm - j]).sum::<f64>() / mm as f64;
        }

        let s_max = w + m;
        let ln_n = Float::with_val(bits, Float::with_val(bits, n_lim).ln_ref());
        let mut s_sum = Vec::with_capacity(rmax + 1);
        for a in 0..=rmax {
            let mut row = vec![(Float::new(bits), 0.0); s_max + 1];
            for (s, slot) in row.iter_mut().enumerate().skip(2) {
                *slot = log_power_tail(a as u32, s as u32, n_lim, &ln_n, depth as u32, bits);
            }
            s_sum.push(row);
        }

        let mut two_pow_over_fact = vec![1.0; rmax + 1];
        for a in 1..=rmax {
            two_pow_over_fact[a] = two_pow_over_fact[a - 1] * 2.0 / a as f64;
        }

        Ok(Tail {
            m,
            bits,
            n_lim: nf,
            e,
            g,
            eps,
            s_sum,
            two_pow_over_fact,
        })
    }

    /// Σ_{n>N} c_r(n) n^(−k) and its error bound.
    fn value(&self, k: usize, r: usize) -> (Float, f64) {
        let bits = self.bits;
        let mut total = Float::new(bits);
        let mut err = 0.0;
        let mut mag = 0.0;
        for a in 0..=r {
            let f = Float::with_val(bits, Integer::from(1) << a as u32)
                / Float::with_val(bits, Integer::from(Integer::factorial(a as u32)));
            for i in 0..=self.m {
                let c = &self.e[r - a][i];
                if c.is_zero() {
                    continue;
                }
                let (s, s_err) = &self.s_sum[a][k + i];
                let coef = Float::with_val(bits, c * &f);
                let term = Float::with_val(bits, &coef * s);
                err += coef.to_f64().abs() * s_err;
                mag += term.to_f64().abs();
                total += term;
            }
        }
        err += mag * 2f64.powi(8 - bits as i32);

        // Dropped x-powers of exp(A): majorized at radius ρ.
        let mp1 = (self.m + 1) as i32;
        for a in 0..=r {
            err += self.two_pow_over_fact[a]
                * self.g[r - a]
                * RHO.powi(-mp1)
                * log_power_sum_bound(a as u32, (k as i32 + mp1) as f64, self.n_lim, 0.0);
        }

        // Truncated harmonic expansions: |Δℓ_j| ≤ c x^p, propagated through the
        // majorant exp(2(L+1)t)(1−t)^(−4).
        for &(j, c, p) in &self.eps {
            if j > r || c == 0.0 {
                continue;
            }
            let rest = r - j;
            for a in 0..=rest {
                let binom = binom3(rest - a);
                err += 2.0
                    * c
                    * self.two_pow_over_fact[a]
                    * binom
                    * log_power_sum_bound(a as u32, k as f64 + p as f64, self.n_lim, 1.0);
            }
        }
        (total, err)
    }
}

fn binom3(m: usize) -> f64 {
    let m = m as f64;
    (m + 3.0) * (m + 2.0) * (m + 1.0) / 6.0
}

/// Σ_{n>N} (ln n)^a n^(−s) by Euler–Maclaurin, with a bound on the remainder.
fn log_power_tail(a: u32, s: u32, n: u64, ln_n: &Float, depth: u32, bits: u32) -> (Float, f64) {
    let nf = Float::with_val(bits, n);
    let a_us = a as usize;
    let lpow: Vec<Float> = (0..=a_us)
        .scan(Float::with_val(bits, 1), |acc, i| {
            let cur = acc.clone();
            if i < a_us {
                *acc *= ln_n;
            }
            Some(cur)
        })
        .collect();
    let n_pow = |e: i64| -> Float {
        let mut v = Float::with_val(bits, &nf);
        v.pow_assign_i(e);
        v
    };

    // ∫_N^∞ = N^{1−s} Σ_i a!/(a−i)! (ln N)^{a−i} / (s−1)^{i+1}
    let mut integral = Float::new(bits);
    let mut falling = Integer::from(1);
    let mut spow = Integer::from(s - 1);
    for i in 0..=a_us {
        integral += Float::with_val(bits, &lpow[a_us - i] * &falling) / &spow;
        falling *= a - i as u32;
        spow *= s - 1;
    }
    integral *= n_pow(1 - s as i64);

    // Derivative polynomials: f^{(m)}(x) = x^{−s−m} Σ_i q[i] (ln x)^i.
    let mut q: Vec<Integer> = vec![Integer::new(); a_us + 1];
    q[a_us] = Integer::from(1);
    let mut sigma = s as i64;
    let mut sum = integral;
    let f_at = |q: &[Integer], sigma: i64| -> Float {
        let mut v = Float::new(bits);
        for (i, qi) in q.iter().enumerate() {
            if *qi != 0 {
                v += Float::with_val(bits, &lpow[i] * qi);
            }
        }
        v * n_pow(-sigma)
    };
    sum -= f_at(&q, sigma) / 2u32;
    let deriv = |q: &mut Vec<Integer>, sigma: &mut i64| {
        let mut nq = vec![Integer::new(); q.len()];
        for i in 0..q.len() {
            nq[i] = Integer::from(&q[i] * -*sigma);
            if i + 1 < q.len() {
                nq[i] += Integer::from(&q[i + 1] * (i as u32 + 1));
            }
        }
        *q = nq;
        *sigma += 1;
    };
    for j in 1..=depth {
        deriv(&mut q, &mut sigma);
        let b = bernoulli(2 * j as usize) / Integer::from(Integer::factorial(2 * j));
        sum -= f_at(&q, sigma) * Float::with_val(bits, &b);
        deriv(&mut q, &mut sigma);
    }
    // |R| ≤ |B_2D|/(2D)! ∫_N^∞ |f^{(2D)}|, with σ = s + 2D now.
    let bd = bernoulli(2 * depth as usize) / Integer::from(Integer::factorial(2 * depth));
    let ln0 = ln_n.to_f64();
    let mut rem = 0.0;
    for (i, qi) in q.iter().enumerate() {
        if *qi == 0 {
            continue;
        }
        let mut integ = 0.0;
        let mut falling = 1.0;
        for l in 0..=i {
            integ += falling * ln0.powi((i - l) as i32) / (sigma as f64 - 1.0).powi(l as i32 + 1);
            falling *= (i - l) as f64;
        }
        integ *= (n as f64).powf(1.0 - sigma as f64);
        rem += qi.to_f64().abs() * integ;
    }
    rem *= bd.to_f64().abs() * 1.01;
    rem += sum.to_f64().abs() * 2f64.powi(6 - bits as i32);
    (sum, rem)
}

trait PowAssignI {
    fn pow_assign_i(&mut self, e: i64);
}

impl PowAssignI for Float {
    fn pow_assign_i(&mut self, e: i64) {
        use rug::ops::PowAssign;
        self.pow_assign(e as i32);
    }
}

/// Upper bound on Σ_{n>N} c_r(n) n^(−k), from c_r(n) ≤ (2 H_{n−1})^r / r!
/// and H_{n−1} ≤ ln n + 1.
pub fn certified_tail_bound(k: u32, r: u32, n: u64) -> f64 {
    assert!(k >= 2);
    let mut f = 1.0;
    for i in 1..=r {
        f *= 2.0 / i as f64;
    }
    f * log_power_sum_bound(r, k as f64, n as f64, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_power_tail_matches_direct_sum() {
        // Σ_{n>100} (ln n)^2 n^(−3) against a long direct sum plus its own tail.
        let bits = 128;
        let ln = Float::with_val(bits, Float::with_val(bits, 100).ln_ref());
        let (v, e) = log_power_tail(2, 3, 100, &ln, 8, bits);
        let ln2 = Float::with_val(bits, Float::with_val(bits, 200_000).ln_ref());
        let (v2, _) = log_power_tail(2, 3, 200_000, &ln2, 8, bits);
        let mut direct = Float::new(bits);
        for n in 101..=200_000u64 {
            let l = Float::with_val(bits, Float::with_val(bits, n).ln_ref());
            let t = Float::with_val(bits, &l * &l) / Float::with_val(bits, n).pow_u(3);
            direct += t;
        }
        direct += v2;
        let d = Float::with_val(bits, &v - &direct).to_f64().abs();
        assert!(d < 1e-25 && e < 1e-20, "d = {d}, e = {e}");
    }

    trait PowU {
        fn pow_u(self, e: u32) -> Float;
    }
    impl PowU for Float {
        fn pow_u(self, e: u32) -> Float {
            use rug::ops::Pow;
            self.pow(e)
        }
    }

    #[test]
    fn crude_bound_dominates_integral() {
        let b = certified_tail_bound(3, 2, 1000);
        assert!(b > 0.0 && b < 1e-3);
    }
}
