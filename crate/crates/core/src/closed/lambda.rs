//! The polynomials λ_{j,ν}(w) relating f_{μ,ν} to e_{p,q}, and the exact
//! linear algebra behind the vanishing of e_{p,q} for −q < p < 0.

use rug::{Integer, Rational};

use crate::closed::coeff_c::coeff_c_general;
use crate::closed::virasoro::{e_mzv_numeric, f_coeff_numeric};
use crate::error::{Error, Result};
use crate::exact::rational::binom_q;
use crate::exact::TruncSeries;
use crate::numerics::{BigFloat, NumericContext};
use crate::report::Report;

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    out
}

fn poly_pow(base: &[Rational], n: u32) -> Vec<Rational> {
    let mut acc = vec![Rational::from(1)];
    for _ in 0..n {
        acc = poly_mul(&acc, base);
    }
    acc
}

fn poly_add_scaled(acc: &mut Vec<Rational>, p: &[Rational], c: &Rational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rational::new());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += Rational::from(x * c);
    }
}

fn trinomial() -> Vec<Rational> {
    vec![Rational::from(1), Rational::from(1), Rational::from(1)]
}

/// Λ_j(w, Y) = Σ_{r<j} (−1)^r binom(w−2j−1, r) (1+Y+Y²)^{j−1−r}, coefficients of Y^0..Y^{2j−2}.
pub fn big_lambda(j: i64, w: &Rational) -> Vec<Rational> {
    assert!(j >= 1);
    let top = w - Rational::from(2 * j + 1);
    let mut acc = vec![Rational::new(); (2 * j - 1) as usize];
    for r in 0..j {
        let mut c = binom_q(&top, r);
        if r % 2 == 1 {
            c = -c;
        }
        poly_add_scaled(&mut acc, &poly_pow(&trinomial(), (j - 1 - r) as u32), &c);
    }
    acc
}

/// λ_{j,ν}(w) for rational w.
pub fn lambda_poly_q(j: i64, nu: i64, w: &Rational) -> Rational {
    if nu < 0 || nu > 2 * j - 2 {
        return Rational::new();
    }
    big_lambda(j, w).swap_remove(nu as usize)
}

/// λ_{j,ν}(w) for integer w.
pub fn lambda_poly(j: i64, nu: i64, w: i64) -> Rational {
    lambda_poly_q(j, nu, &Rational::from(w))
}

/// table[j−1][ν] for 1 ≤ j ≤ jmax from the generating series
/// (1−t)^{w−2} / ((1−3t)(1−t(1+Y+Y²))) with X = t(1−t)².
pub fn lambda_genser_table(w: i64, jmax: usize) -> Vec<Vec<Rational>> {
    let order = (3 * jmax.saturating_sub(1)) as u32;
    let one = TruncSeries::<Rational>::one(2, order);
    let x = TruncSeries::<Rational>::var(2, 0, order);
    let y = TruncSeries::<Rational>::var(2, 1, order);
    // t = X / (1−t)², solved by fixed-point iteration.
    let mut t = x.clone();
    for _ in 0..=jmax {
        let den = one.sub(&t).pow(2);
        t = x.div(&den).expect("unit");
    }
    let one_minus_t = one.sub(&t);
    let pre = if w >= 2 {
        one_minus_t.pow((w - 2) as u32)
    } else {
        one_minus_t.inverse().expect("unit").pow((2 - w) as u32)
    };
    let tri = one.add(&y).add(&y.mul(&y));
    let den = one
        .sub(&t.scale(&Rational::from(3)))
        .mul(&one.sub(&t.mul(&tri)));
    let g = pre.div(&den).expect("unit");
    (1..=jmax)
        .map(|j| (0..=(2 * j - 2)).map(|nu| g.coeff(j - 1, nu)).collect())
        .collect()
}

/// Rows 0 < j < w/2, columns 0 ≤ ν ≤ w−3.
pub fn lambda_matrix(w: i64) -> Vec<Vec<Rational>> {
    let jmax = (w - 1) / 2;
    (1..=jmax)
        .map(|j| (0..=(w - 3)).map(|nu| lambda_poly(j, nu, w)).collect())
        .collect()
}

/// Exact rank by fraction-free (Bareiss) elimination with row and column skipping.
pub fn rank_exact(m: &[Vec<Rational>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    // Clear denominators row by row; rank is unchanged.
    let mut a: Vec<Vec<Integer>> = m
        .iter()
        .map(|row| {
            let mut l = Integer::from(1);
            for x in row {
                l.lcm_mut(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * Integer::from(&l / x.denom()))
                .collect()
        })
        .collect();
    let mut prev = Integer::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = Integer::from(&a[rank][c] * &a[i][j]) - Integer::from(&a[i][c] * &a[rank][j]);
                let (q, rem) = v.div_rem(prev.clone());
                debug_assert_eq!(rem, 0);
                a[i][j] = q;
            }
            a[i][c] = Integer::new();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RankCheck {
    pub w: i64,
    pub rank_full: usize,
    pub rank_antisym: usize,
    pub expected_full: usize,
    pub expected_antisym: usize,
}

impl RankCheck {
    pub fn pass(&self) -> bool {
        self.rank_full == self.expected_full && self.rank_antisym == self.expected_antisym
    }
}

/// Ranks of (λ_{j,ν}(w)) and of λ⁻_{j,ν} = λ_{j,ν} − λ_{j,w−3−ν} for 0 < j < w/3.
pub fn lambda_rank_check(w: i64) -> Result<RankCheck> {
    if w < 3 {
        return Err(Error::InvalidArgument(format!("rank check needs w ≥ 3, got {w}")));
    }
    let full = lambda_matrix(w);
    let anti: Vec<Vec<Rational>> = full
        .iter()
        .enumerate()
        .filter(|(i, _)| 3 * (*i as i64 + 1) < w)
        .map(|(_, row)| {
            let n = row.len();
            (0..n).map(|nu| Rational::from(&row[nu] - &row[n - 1 - nu])).collect()
        })
        .collect();
    Ok(RankCheck {
        w,
        rank_full: rank_exact(&full),
        rank_antisym: rank_exact(&anti),
        expected_full: ((w - 1) / 2) as usize,
        expected_antisym: ((w - 1) / 3) as usize,
    })
}

/// Palindromy λ_{j,ν}(w) = λ_{j,w−3−ν}(w) and the product form
/// Λ_j = (Y+Y²)^{w−2j−1} (1+Y+Y²)^{3j−w}, for 2j+1 ≤ w ≤ 3j.
pub fn symmetry_lemma_check(w: i64, j: i64) -> Result<bool> {
    if !(2 * j < w && w <= 3 * j) {
        return Err(Error::InvalidArgument(format!("need 2j+1 ≤ w ≤ 3j, got w={w}, j={j}")));
    }
    let lam: Vec<Rational> = (0..=(w - 3)).map(|nu| lambda_poly(j, nu, w)).collect();
    let n = lam.len();
    let palin = (0..n).all(|nu| lam[nu] == lam[n - 1 - nu]);
    let y_y2 = vec![Rational::new(), Rational::from(1), Rational::from(1)];
    let mut prod = poly_mul(
        &poly_pow(&y_y2, (w - 2 * j - 1) as u32),
        &poly_pow(&trinomial(), (3 * j - w) as u32),
    );
    let mut lj = big_lambda(j, &Rational::from(w));
    let len = prod.len().max(lj.len());
    prod.resize(len, Rational::new());
    lj.resize(len, Rational::new());
    Ok(palin && prod == lj)
}

/// Σ_{1≤j≤(n+2)/2} Λ_j(w,Y) C(3j−w, w−2j, w−3−n) = (1+Y)^n + (−Y)^n for rational w.
pub fn identity_b_check(n: i64, w: &Rational) -> bool {
    let mut lhs = Vec::new();
    for j in 1..=((n + 2) / 2) {
        let p = Rational::from(3 * j) - w;
        let r = w - Rational::from(3 + n);
        // q − r = (w − 2j) − (w − 3 − n) = n + 3 − 2j ≥ 1.
        let c = coeff_c_general(&p, n + 3 - 2 * j, &r);
        poly_add_scaled(&mut lhs, &big_lambda(j, w), &c);
    }
    let mut rhs = poly_pow(&[Rational::from(1), Rational::from(1)], n as u32);
    if rhs.len() <= n as usize {
        rhs.resize(n as usize + 1, Rational::new());
    }
    rhs[n as usize] += if n % 2 == 0 { 1 } else { -1 };
    let len = lhs.len().max(rhs.len());
    lhs.resize(len, Rational::new());
    rhs.resize(len, Rational::new());
    lhs == rhs
}

/// f_{w−3−ν,ν} against Σ_{0<j<w/2} λ_{j,ν}(w) e_{3j−w,w−2j}, numerically.
pub fn etofnew_check(ctx: &NumericContext, w: i64) -> Result<Report> {
    let mut worst: f64 = 0.0;
    for nu in 0..=(w - 3) {
        let f = f_coeff_numeric(ctx, (w - 3 - nu) as u32, nu as u32)?;
        let mut acc = BigFloat::zero(ctx.bits());
        for j in 1..=((w - 1) / 2) {
            let l = lambda_poly(j, nu, w);
            if l != 0 {
                acc = acc.add(&e_mzv_numeric(ctx, 3 * j - w, w - 2 * j)?.mul_rational(&l));
            }
        }
        worst = worst.max(f.abs_diff(&acc));
    }
    Ok(Report::numeric(
        "f_from_e",
        serde_json::json!({"w": w}),
        "f numeric",
        "lambda-weighted e numeric",
        worst,
        ctx.tolerance(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn weight_twelve_matrix() {
        let expect = vec![
            row(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            row(&[-6, 1, 1, 0, 0, 0, 0, 0, 0, 0]),
            row(&[6, -3, -2, 2, 1, 0, 0, 0, 0, 0]),
            row(&[0, 0, 0, 1, 3, 3, 1, 0, 0, 0]),
            row(&[0, 1, 4, 9, 13, 13, 9, 4, 1, 0]),
        ];
        assert_eq!(lambda_matrix(12), expect);
    }

    #[test]
    fn closed_form_matches_generating_series() {
        for w in [-4, 0, 5, 12, 17] {
            let g = lambda_genser_table(w, 6);
            for j in 1..=6 {
                for nu in 0..=(2 * j - 2) {
                    assert_eq!(g[j as usize - 1][nu as usize], lambda_poly(j, nu, w), "w={w} j={j} ν={nu}");
                }
            }
        }
    }

    #[test]
    fn top_coefficients() {
        for w in [7, 12, 20] {
            for j in 2..6i64 {
                assert_eq!(lambda_poly(j, 2 * j - 2, w), 1);
                assert_eq!(lambda_poly(j, 2 * j - 3, w), j - 1);
                assert_eq!(lambda_poly(j, 2 * j - 4, w), (j + 2) * (j + 1) / 2 - w);
            }
        }
    }

    #[test]
    fn ranks() {
        let r = lambda_rank_check(12).unwrap();
        assert_eq!((r.rank_full, r.rank_antisym), (5, 3));
        assert_eq!(lambda_rank_check(3).unwrap().rank_antisym, 0);
        assert!(lambda_rank_check(2).is_err());
    }

    #[test]
    fn symmetry_lemma() {
        assert!(symmetry_lemma_check(9, 4).unwrap());
        assert!(symmetry_lemma_check(12, 5).unwrap());
        assert!(symmetry_lemma_check(12, 4).unwrap());
        assert!(symmetry_lemma_check(11, 5).unwrap());
        assert!(symmetry_lemma_check(12, 7).is_err());
    }

    #[test]
    fn identity_b_rational_w() {
        for n in 0..=10 {
            for w in [Rational::from(n + 5), Rational::from((7, 3)), Rational::from((-5, 2))] {
                assert!(identity_b_check(n, &w), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn f_from_e_low_weights() {
        let ctx = NumericContext::new(30);
        for w in 3..=9 {
            let r = etofnew_check(&ctx, w).unwrap();
            assert!(r.pass, "w={w}: {}", r.max_abs_diff);
        }
    }
}
