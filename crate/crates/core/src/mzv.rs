//! The special multiple zeta values that appear in the coefficients:
//! Z(k, r) by finite product expansion and by brute-force nested sums, and
//! H(k, r) = ζ(1^{r−1}, k+1) from the Veneziano series and as a Tornheim sum.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::ZetaPoly;
use crate::numerics::zsum::log_power_sum_bound;
use crate::open::veneziano_cached;

/// Prefix values Σ_{n ≤ N'} c_r(n)/n^k for every N' ≤ N, k ≤ kmax, r ≤ rmax,
/// with c_r(n) = [t^r] ∏_{0<m<n}(1 + 2t/m + t²/m²) from harmonic sums.
/// Index as `out[N'][r][k]`; entries with k < 1 are zero.
pub fn z_partial_product_table(kmax: u32, rmax: u32, n: u64) -> Vec<Vec<Vec<Rational>>> {
    let (kmax, rmax) = (kmax as usize, rmax as usize);
    let mut h = vec![Rational::new(); rmax + 1];
    let mut acc = vec![vec![Rational::new(); kmax + 1]; rmax + 1];
    let mut out = vec![acc.clone()];
    let mut c = vec![Rational::new(); rmax + 1];
    for m in 1..=n {
        c[0] = Rational::from(1);
        for r in 1..=rmax {
            let mut s = Rational::new();
            for j in 1..=r {
                let t = Rational::from(&h[j] * &c[r - j]);
                if j % 2 == 1 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            c[r] = s * Rational::from((2, r as u64));
        }
        let inv = Rational::from((1, m));
        for (r, row) in acc.iter_mut().enumerate() {
            let mut p = inv.clone();
            for slot in row.iter_mut().skip(1) {
                *slot += Rational::from(&c[r] * &p);
                p *= &inv;
            }
        }
        let mut p = inv.clone();
        for hj in h.iter_mut().skip(1) {
            *hj += &p;
            p *= &inv;
        }
        out.push(acc.clone());
    }
    out
}

/// Σ_{n ≤ N} c_r(n)/n^k exactly.
pub fn z_partial_product(k: u32, r: u32, n: u64) -> Rational {
    z_partial_product_table(k, r, n)[n as usize][r as usize][k as usize].clone()
}

/// Compositions of r into parts 1 and 2.
pub fn compositions_12(r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in [1, 2] {
        if first <= r {
            for mut rest in compositions_12(r - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// Generic nested-sum evaluator over a number type.
trait Num: Clone {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv_pow(&self, n: u64, e: u32) -> Self;
    fn scale_u(&self, m: u32) -> Self;
}

impl Num for Rational {
    fn zero(&self) -> Self {
        Rational::new()
    }
    fn one(&self) -> Self {
        Rational::from(1)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn inv_pow(&self, n: u64, e: u32) -> Self {
        Rational::from((1, rug::Integer::from(n).pow(e)))
    }
    fn scale_u(&self, m: u32) -> Self {
        Rational::from(self * m)
    }
}

impl Num for Float {
    fn zero(&self) -> Self {
        Float::new(self.prec())
    }
    fn one(&self) -> Self {
        Float::with_val(self.prec(), 1)
    }
    fn add(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self + o)
    }
    fn mul(&self, o: &Self) -> Self {
        Float::with_val(self.prec(), self * o)
    }
    fn inv_pow(&self, n: u64, e: u32) -> Self {
        let mut v = Float::with_val(self.prec(), n);
        rug::ops::PowAssign::pow_assign(&mut v, e);
        v.recip()
    }
    fn scale_u(&self, m: u32) -> Self {
        Float::with_val(self.prec(), self * m)
    }
}

use rug::ops::Pow;

/// Σ over compositions (e_1…e_j) of r into {1,2} of 2^{#1} Σ_{m_1<…<m_j<n≤N} ∏ m_i^{−e_i} n^{−k}.
/// With `prefixes`, also records the value at every N' ≤ N.
fn bruteforce<T: Num>(proto: &T, k: u32, r: u32, n: u64, mut prefixes: Option<&mut Vec<T>>) -> T {
    if let Some(p) = prefixes.as_deref_mut() {
        *p = vec![proto.zero(); n as usize + 1];
    }
    let mut total = proto.zero();
    for comp in compositions_12(r) {
        let j = comp.len();
        let ones = comp.iter().filter(|&&e| e == 1).count() as u32;
        // f[i] = Σ over m_1 < … < m_i < (current n) of ∏ m^{−e}
        let mut f = vec![proto.zero(); j + 1];
        f[0] = proto.one();
        let mut sum = proto.zero();
        for m in 1..=n {
            sum = sum.add(&f[j].mul(&proto.inv_pow(m, k)));
            for i in (1..=j).rev() {
                let step = f[i - 1].mul(&proto.inv_pow(m, comp[i - 1]));
                f[i] = f[i].add(&step);
            }
            if let Some(p) = prefixes.as_deref_mut() {
                p[m as usize] = p[m as usize].add(&sum.scale_u(1 << ones));
            }
        }
        total = total.add(&sum.scale_u(1 << ones));
    }
    total
}

/// Z(k, r) truncated at N by direct nested summation over compositions.
pub fn z_bruteforce(k: u32, r: u32, n: u64) -> Rational {
    bruteforce(&Rational::new(), k, r, n, None)
}

/// [`z_bruteforce`] at every N' ≤ N, indexed by N'.
pub fn z_bruteforce_prefixes(k: u32, r: u32, n: u64) -> Vec<Rational> {
    let mut out = Vec::new();
    bruteforce(&Rational::new(), k, r, n, Some(&mut out));
    out
}

/// Floating-point version of [`z_bruteforce`] for large N.
pub fn z_bruteforce_float(k: u32, r: u32, n: u64, bits: u32) -> Float {
    bruteforce(&Float::new(bits), k, r, n, None)
}

/// H(k, r) = ζ(1^{r−1}, k+1) = (−1)^{k+r−1} [s^k t^r] V^op(s, t), of weight k + r.
pub fn h_exact(k: u32, r: u32) -> Result<ZetaPoly> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!("H({k},{r}) needs k, r ≥ 1")));
    }
    let v = veneziano_cached(k + r);
    let c = v.coeff(k as usize, r as usize);
    Ok(if (k + r).is_multiple_of(2) { -c } else { c })
}

/// (1/r!) Σ_{n_i ≤ N} 1/(n_1⋯n_r (n_1+⋯+n_r)^k), exactly.
pub fn h_tornheim(k: u32, r: u32, n: u64) -> Result<Rational> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidArgument("Tornheim sum needs k, r ≥ 1".into()));
    }
    if r > 4 {
        return Err(Error::CostGuard(format!("Tornheim sum with r = {r} > 4")));
    }
    let n = n as usize;
    let base: Vec<Rational> = (0..=n)
        .map(|m| if m == 0 { Rational::new() } else { Rational::from((1, m as u64)) })
        .collect();
    let mut poly = base.clone();
    for _ in 1..r {
        let mut next = vec![Rational::new(); poly.len() + n];
        for (i, a) in poly.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in base.iter().enumerate().skip(1) {
                next[i + j] += Rational::from(a * b);
            }
        }
        poly = next;
    }
    let mut acc = Rational::new();
    for (m, a) in poly.iter().enumerate().skip(1) {
        if *a != 0 {
            acc += Rational::from(a / rug::Integer::from(m).pow(k));
        }
    }
    let mut rf = rug::Integer::from(1);
    for i in 2..=r {
        rf *= i;
    }
    Ok(acc / rf)
}

/// Upper bound on H(k, r) − h_tornheim(k, r, N): when the largest index
/// exceeds N the others sum to at most H_n^{r−1} ≤ (ln n + 1)^{r−1}.
pub fn tornheim_tail_bound(k: u32, r: u32, n: u64) -> f64 {
    let mut rf = 1.0;
    for i in 2..r {
        rf *= i as f64;
    }
    // r / r! = 1/(r−1)!
    log_power_sum_bound(r - 1, (k + 1) as f64, n as f64, 1.0) / rf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::numerics::NumericContext;

    #[test]
    fn compositions_count_is_fibonacci() {
        let counts: Vec<usize> = (0..8).map(|r| compositions_12(r).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn partial_product_matches_bruteforce_small() {
        let table = z_partial_product_table(5, 4, 12);
        for n in 1..=12u64 {
            for k in 2..=5u32 {
                for r in 0..=4u32 {
                    assert_eq!(table[n as usize][r as usize][k as usize], z_bruteforce(k, r, n));
                }
            }
        }
        assert_eq!(z_partial_product(2, 0, 2), rat(5, 4));
    }

    #[test]
    fn h_low_weight_values() {
        assert_eq!(h_exact(1, 1).unwrap(), ZetaPoly::zeta(2));
        assert_eq!(h_exact(4, 1).unwrap(), ZetaPoly::zeta(5));
        // ζ(1,2) = ζ(3)
        assert_eq!(h_exact(1, 2).unwrap(), ZetaPoly::zeta(3));
        for k in 1..=6 {
            for r in 1..=6 {
                assert!(h_exact(k, r).unwrap().is_homogeneous_of(k + r));
            }
        }
    }

    #[test]
    fn tornheim_brackets_exact_value() {
        let ctx = NumericContext::new(20);
        for (k, r) in [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3)] {
            let exact = ctx.eval(&h_exact(k, r).unwrap()).unwrap().to_f64();
            let mut prev = 0.0;
            for n in [20u64, 40, 80] {
                let part = h_tornheim(k, r, n).unwrap().to_f64();
                assert!(part > prev);
                prev = part;
                let tail = tornheim_tail_bound(k, r, n);
                assert!(part <= exact + 1e-15 && exact <= part + tail, "H({k},{r}) N={n}");
            }
        }
        assert!(matches!(h_tornheim(1, 5, 10), Err(Error::CostGuard(_))));
    }
}
