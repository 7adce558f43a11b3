//! The integers C(p,q,r) = [y^{q−1}] (2+y)(1−y)^{−(p+1)} c(y)^r, where
//! c(y) = (1 − √(1−4y))/2 satisfies c = y + c².

use std::sync::OnceLock;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::exact::rational::binom_i;
use crate::exact::TruncSeries;
use crate::report::Report;

const CAT_MAX: usize = 80;

/// pow[r][i] = [y^i] c(y)^r for r, i < CAT_MAX.
fn catalan_powers() -> &'static Vec<Vec<Integer>> {
    static POWERS: OnceLock<Vec<Vec<Integer>>> = OnceLock::new();
    POWERS.get_or_init(|| {
        let mut c = vec![Integer::new(); CAT_MAX];
        c[1] = Integer::from(1);
        for m in 2..CAT_MAX {
            let mut s = Integer::new();
            for i in 1..m {
                s += Integer::from(&c[i] * &c[m - i]);
            }
            c[m] = s;
        }
        let mut pows = vec![vec![Integer::new(); CAT_MAX]];
        pows[0][0] = Integer::from(1);
        for r in 1..CAT_MAX {
            let prev = &pows[r - 1];
            let mut next = vec![Integer::new(); CAT_MAX];
            for (i, a) in prev.iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                for (j, b) in c.iter().enumerate().take(CAT_MAX - i) {
                    if *b != 0 {
                        next[i + j] += Integer::from(a * b);
                    }
                }
            }
            pows.push(next);
        }
        pows
    })
}

/// [y^k] (2+y)(1−y)^{−(p+1)}.
fn prefactor(p: i64, k: i64) -> Integer {
    let mut v = binom_i(p + k, k) * 2u32;
    if k >= 1 {
        v += binom_i(p + k - 1, k - 1);
    }
    v
}

/// C(p,q,r) for integers with r ≥ 0 and q − r ≥ 1.
pub fn coeff_c(p: i64, q: i64, r: i64) -> Result<Rational> {
    if r < 0 || q - r < 1 {
        return Err(Error::InvalidArgument(format!(
            "C({p},{q},{r}) needs r ≥ 0 and q − r ≥ 1"
        )));
    }
    let d = (q - 1) as usize;
    if d >= CAT_MAX {
        return Err(Error::CostGuard(format!("C with q = {q} beyond table")));
    }
    let pows = &catalan_powers()[r as usize];
    let mut acc = Integer::new();
    for i in (r as usize)..=d {
        acc += prefactor(p, (d - i) as i64) * &pows[i];
    }
    Ok(Rational::from(acc))
}

/// C extended by zero to q − r ≤ 0, as the recursions require.
pub fn coeff_c_ext(p: i64, q: i64, r: i64) -> Rational {
    if r >= 0 && q - r <= 0 {
        Rational::new()
    } else {
        coeff_c(p, q, r).expect("valid indices")
    }
}

/// C with rational p and r and integer d = q − r ≥ 1:
/// [y^{d−1}] (2+y)(1−y)^{−(p+1)} (c(y)/y)^r.
pub fn coeff_c_general(p: &Rational, d: i64, r: &Rational) -> Rational {
    assert!(d >= 1);
    let order = (d - 1) as u32;
    let y = TruncSeries::<Rational>::var(1, 0, order);
    let one = TruncSeries::<Rational>::one(1, order);
    let mut cy = TruncSeries::<Rational>::zero(1, order);
    let pows = catalan_powers();
    for i in 0..=order as usize {
        cy.set(i, 0, Rational::from(&pows[1][i + 1]));
    }
    let cr = cy.log().expect("unit").scale(r).exp().expect("no constant");
    let pre = one
        .sub(&y)
        .log()
        .expect("unit")
        .scale(&(-(p + Rational::from(1))))
        .exp()
        .expect("no constant")
        .mul(&one.scale(&Rational::from(2)).add(&y));
    pre.mul(&cr).coeff(order as usize, 0)
}

/// [y^n] c(y)^r = binom(2n−r−1, n−1) − binom(2n−r−1, n) for r ≥ 1.
pub fn ballot(n: i64, r: i64) -> Integer {
    binom_i(2 * n - r - 1, n - 1) - binom_i(2 * n - r - 1, n)
}

/// C(p,q,r) = Σ_{n=r}^{q−1} [y^n]c^r · C(p, q−n, 0).
pub fn coeff_c_via_sum(p: i64, q: i64, r: i64) -> Result<Rational> {
    if r == 0 {
        return coeff_c(p, q, 0);
    }
    let mut acc = Rational::new();
    for n in r..q {
        acc += Rational::from(ballot(n, r)) * coeff_c(p, q - n, 0)?;
    }
    Ok(acc)
}

/// C(p,q,0) = 2 binom(p+q−1, q−1) + binom(p+q−2, q−2).
pub fn c_r0_closed(p: i64, q: i64) -> Rational {
    Rational::from(binom_i(p + q - 1, q - 1) * 2u32 + binom_i(p + q - 2, q - 2))
}

/// Closed forms for the top three values of r.
pub fn c_top_closed(p: i64, q: i64, r: i64) -> Option<Rational> {
    let s = p + q;
    match q - r {
        1 => Some(Rational::from(2)),
        2 => Some(Rational::from(2 * s - 1)),
        3 => Some(Rational::from(s * s - 2 * p - 6)),
        _ => None,
    }
}

/// C(p,q,q−6) as a polynomial in x = p+q+3/2.
pub fn c_q_minus_6(p: i64, q: i64) -> Rational {
    let x = Rational::from((2 * (p + q) + 3, 2));
    let pr = Rational::from(p);
    let x2 = Rational::from(&x * &x);
    let x3 = Rational::from(&x2 * &x);
    let x5 = Rational::from(&x3 * &x2);
    let a = x5 / 60;
    let b = (Rational::from(&pr / 3) + Rational::from((25, 24))) * x3;
    let c = (Rational::from(&pr * &pr) + (&pr * Rational::from((85, 12))) + Rational::from((2003, 320))) * x;
    a - b + c
}

/// All consistency checks on C at fixed (p, q): series vs. the ballot-number
/// sum, both recursions, and the closed forms.
pub fn check_c_triple(p: i64, q: i64) -> Report {
    let mut bad = Vec::new();
    for r in 0..q {
        let c = coeff_c(p, q, r).expect("valid");
        if coeff_c_via_sum(p, q, r).expect("valid") != c {
            bad.push(format!("sum:r={r}"));
        }
        if coeff_c_ext(p - 1, q, r) + coeff_c_ext(p, q - 1, r) != c {
            bad.push(format!("rec_p:r={r}"));
        }
        if r >= 1 && coeff_c_ext(p, q, r + 1) + coeff_c_ext(p, q - 1, r - 1) != c {
            bad.push(format!("rec_r:r={r}"));
        }
        if r == 0 && c_r0_closed(p, q) != c {
            bad.push("r0".into());
        }
        if let Some(t) = c_top_closed(p, q, r) {
            if t != c {
                bad.push(format!("top:r={r}"));
            }
        }
        if q - r == 6 && c_q_minus_6(p, q) != c {
            bad.push("q-6".into());
        }
    }
    Report::exact(
        "C_triple",
        serde_json::json!({"p": p, "q": q}),
        "generating series",
        "sum/recursions/closed forms",
        bad,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn small_values() {
        // C(0,1,0) = 2, C(0,2,0) = 2·1 + 1 = 3
        assert_eq!(coeff_c(0, 1, 0).unwrap(), 2);
        assert_eq!(coeff_c(0, 2, 0).unwrap(), 3);
        assert_eq!(coeff_c(0, 3, 2).unwrap(), 2);
        assert!(coeff_c(0, 2, 2).is_err());
    }

    #[test]
    fn triple_consistency_includes_negative_p() {
        for p in -6..=6 {
            for q in 1..=9 {
                let r = check_c_triple(p, q);
                assert!(r.pass, "{p},{q}: {:?}", r.mismatches);
            }
        }
    }

    #[test]
    fn literal_readings_of_the_sum_fail() {
        // Product and difference of binom(2n−r, n−2) and binom(2n−r−1, n).
        let lit = |p: i64, q: i64, r: i64, diff: bool| -> Rational {
            let mut acc = Rational::new();
            for n in r..q {
                let a = binom_i(2 * n - r, n - 2);
                let b = binom_i(2 * n - r - 1, n);
                let f = if diff { a - b } else { a * b };
                acc += Rational::from(f) * coeff_c(p, q - n, 0).unwrap();
            }
            acc
        };
        for diff in [true, false] {
            let mut any = false;
            for q in 2..=8 {
                for r in 1..q {
                    any |= lit(1, q, r, diff) != coeff_c(1, q, r).unwrap();
                }
            }
            assert!(any);
        }
    }

    #[test]
    fn general_form_agrees_on_integers() {
        for (p, q, r) in [(2, 5, 1), (-3, 6, 2), (0, 4, 0)] {
            assert_eq!(
                coeff_c_general(&Rational::from(p), q - r, &Rational::from(r)),
                coeff_c(p, q, r).unwrap()
            );
        }
        let _ = rat(1, 2);
    }
}
