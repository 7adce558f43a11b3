//! The acceptance suite: twelve named criteria, each a list of reports.
//!
//! The runner and the command line share these functions, so `zamp all` and
//! the `acceptance` test execute the same checks with the same tolerances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use serde_json::json;

use crate::closed::coeff_c::check_c_triple;
use crate::closed::gamma::check_bn;
use crate::closed::lambda::{lambda_matrix, RankCheck};
use crate::closed::laurent_d::d_route_diff;
use crate::closed::{
    d_direct_numeric, d_laurent, e_exact, e_mzv_numeric, f_coeff_numeric, gamma_coeff, lambda_rank_check,
    symmetry_lemma_check, wcl_identity_check, GammaRoute,
};
use crate::config::SuiteConfig;
use crate::error::Result;
use crate::exact::{LaurentPoly, ZetaMonomial, ZetaPoly};
use crate::mzv::{h_exact, z_bruteforce_prefixes, z_partial_product_table};
use crate::numerics::NumericContext;
use crate::open::{b_laurent, eta_coeff, wop_identity_check};
use crate::report::Report;
use crate::sv::{klt_checks, sv_zeta_poly, verify_sv_on_series, verify_theorem_b};
use crate::torus::{d_quadrature, oracle_check, OracleKind};
use crate::Route;

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub reports: Vec<Report>,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        !self.reports.is_empty() && self.reports.iter().all(|r| r.pass)
    }

    /// One line: `PASS [3] negative_p_vanishing (28 reports)`.
    pub fn summary_line(&self) -> String {
        let failed = self.reports.iter().filter(|r| !r.pass).count();
        let mut s = format!(
            "{} [{}] {} ({} reports",
            if self.pass() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.reports.len()
        );
        if failed > 0 {
            s.push_str(&format!(", {failed} failed"));
        }
        s.push(')');
        s
    }
}

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "displayed_laurent_polynomials"),
    (2, "e_equals_mzv_sum"),
    (3, "negative_p_vanishing"),
    (4, "pole_cleared_series"),
    (5, "sv_b_equals_d"),
    (6, "klt"),
    (7, "c_triple_consistency"),
    (8, "lambda_matrix_and_ranks"),
    (9, "finite_product_expansion"),
    (10, "vcl_product_and_reflection"),
    (11, "torus_oracle"),
    (12, "property_suites"),
];

/// Configuration plus the shared numeric caches.
pub struct Suite {
    pub cfg: SuiteConfig,
    pub ctx: NumericContext,
}

fn collect(check: &str, params: serde_json::Value, r: Result<Vec<Report>>) -> Vec<Report> {
    r.unwrap_or_else(|e| vec![Report::error(check, params, &e)])
}

fn laurent_mismatch(label: &str, got: &LaurentPoly<ZetaPoly>, want: &LaurentPoly<ZetaPoly>) -> Report {
    let bad = got.mismatches(want).into_iter().map(|e| format!("exp {e}")).collect();
    Report::exact(label, json!({}), "generating route", "displayed polynomial", bad)
}

fn z(k: u32) -> ZetaPoly {
    ZetaPoly::zeta(k)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// The four displayed Laurent polynomials, with ζ₄ and ζ₆ written through ζ₂.
pub fn displayed_polynomials() -> [(&'static str, LaurentPoly<ZetaPoly>); 4] {
    let mut d2 = LaurentPoly::zero("Y");
    d2.add_term(2, &ZetaPoly::constant(q(1, 180)));
    d2.add_term(-1, &z(3).scale(&q(2, 1)));

    let mut d3 = LaurentPoly::zero("Y");
    d3.add_term(3, &ZetaPoly::constant(q(1, 3780)));
    d3.add_term(0, &z(3));
    d3.add_term(-2, &z(5).scale(&q(3, 1)));

    let mut b2 = LaurentPoly::zero("T");
    b2.add_term(2, &ZetaPoly::constant(q(1, 180)));
    b2.add_term(0, &z(2).scale(&q(1, 3)));
    b2.add_term(-1, &z(3));
    b2.add_term(-2, &z(4).scale(&q(-3, 2)));

    let mut b3 = LaurentPoly::zero("T");
    b3.add_term(3, &ZetaPoly::constant(q(1, 3780)));
    b3.add_term(1, &z(2).scale(&q(1, 15)));
    b3.add_term(0, &z(3).scale(&q(1, 2)));
    b3.add_term(-1, &z(4).scale(&q(19, 4)));
    b3.add_term(-2, &(&z(5).scale(&q(3, 2)) - &(&z(3) * &z(2)).scale(&q(6, 1))));
    b3.add_term(-3, &z(6).scale(&q(8, 1)));
    [("d2", d2), ("d3", d3), ("b2", b2), ("b3", b3)]
}

/// The displayed 5×10 matrix λ_{j,ν}(12).
pub fn displayed_lambda_12() -> Vec<Vec<Rational>> {
    [
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [-6, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        [6, -3, -2, 2, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 3, 3, 1, 0, 0, 0],
        [0, 1, 4, 9, 13, 13, 9, 4, 1, 0],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
    .collect()
}

impl Suite {
    pub fn new(cfg: SuiteConfig) -> Self {
        let ctx = NumericContext::new(cfg.precision_digits).with_z_limit(cfg.z_sum_limit);
        Suite { cfg, ctx }
    }

    pub fn run(&self, id: u32) -> Criterion {
        let name = CRITERIA
            .iter()
            .find(|(i, _)| *i == id)
            .map(|(_, n)| *n)
            .unwrap_or("unknown");
        let reports = match id {
            1 => self.displayed(),
            2 => self.e_vs_mzv(),
            3 => self.e_negative_p(),
            4 => self.pole_cleared(),
            5 => self.sv_b(self.cfg.max_l),
            6 => self.klt(),
            7 => self.c_triple(15, 15),
            8 => self.lambda(),
            9 => self.aj(50, 8, 6),
            10 => self.an(),
            11 => self.torus(),
            12 => self.properties(),
            _ => Vec::new(),
        };
        Criterion { id, name, reports }
    }

    pub fn run_all(&self) -> Vec<Criterion> {
        CRITERIA.iter().map(|(id, _)| self.run(*id)).collect()
    }

    pub fn displayed(&self) -> Vec<Report> {
        displayed_polynomials()
            .into_iter()
            .map(|(label, want)| {
                let l = label[1..].parse().expect("label");
                let got = if label.starts_with('d') {
                    d_laurent(l)
                } else {
                    b_laurent(l, Route::Generating)
                };
                match got {
                    Ok(g) => laurent_mismatch(label, &g, &want),
                    Err(e) => Report::error(label, json!({}), &e),
                }
            })
            .collect()
    }

    /// |eval(e_exact) − e_mzv_numeric| for p ≥ 0, q ≥ 1, 2p + 3q ≤ max_weight, certified.
    pub fn e_vs_mzv(&self) -> Vec<Report> {
        let w = self.cfg.max_weight as i64;
        let mut out = Vec::new();
        for q in 1..=(w / 3) {
            for p in 0..=((w - 3 * q) / 2) {
                let params = json!({"p": p, "q": q});
                let r = (|| -> Result<Report> {
                    let a = self.ctx.eval(&e_exact(p, q)?)?;
                    let b = e_mzv_numeric(&self.ctx, p, q)?;
                    Ok(Report::numeric(
                        "e_vs_mzv_sum",
                        params.clone(),
                        "e from generating series",
                        "C-weighted Z sum",
                        a.diff_bound(&b),
                        self.cfg.tolerance,
                    ))
                })();
                out.push(r.unwrap_or_else(|e| Report::error("e_vs_mzv_sum", params, &e)));
            }
        }
        out
    }

    /// |e_mzv_numeric| for −q < p < 0, certified.
    pub fn e_negative_p(&self) -> Vec<Report> {
        let w = self.cfg.max_weight as i64;
        let mut out = Vec::new();
        for q in 2..=(w / 3) {
            for p in (1 - q)..0 {
                if 2 * p + 3 * q > w {
                    continue;
                }
                let params = json!({"p": p, "q": q});
                let r = e_mzv_numeric(&self.ctx, p, q).map(|v| {
                    let zero = crate::numerics::BigFloat::zero(self.ctx.bits());
                    Report::numeric("e_negative_p", params.clone(), "C-weighted Z sum", "0", v.diff_bound(&zero), self.cfg.tolerance)
                });
                out.push(r.unwrap_or_else(|e| Report::error("e_negative_p", params, &e)));
            }
        }
        out
    }

    pub fn pole_cleared(&self) -> Vec<Report> {
        let order = self.cfg.series_order;
        let p = json!({"order": order});
        let mut out = collect("wcl_identity", p.clone(), wcl_identity_check(&self.ctx, order));
        out.extend(collect("wop_identity", p.clone(), wop_identity_check(order).map(|r| vec![r])));
        out.extend(collect(
            "sv_series",
            p.clone(),
            verify_sv_on_series(order).map(|v| {
                v.into_iter()
                    .map(|s| {
                        let mut r = Report::from(s);
                        r.params = p.clone();
                        r
                    })
                    .collect()
            }),
        ));
        out
    }

    pub fn sv_b(&self, max_l: u32) -> Vec<Report> {
        (0..=max_l)
            .map(|l| match verify_theorem_b(l) {
                Ok(s) => {
                    let mut r = Report::from(s);
                    r.params = json!({"l": l});
                    r
                }
                Err(e) => Report::error("sv_b", json!({"l": l}), &e),
            })
            .collect()
    }

    pub fn klt(&self) -> Vec<Report> {
        let order = self.cfg.klt_order;
        let p = json!({"order": order});
        collect(
            "klt",
            p.clone(),
            klt_checks(order).map(|v| {
                v.into_iter()
                    .map(|s| {
                        let mut r = Report::from(s);
                        r.params = p.clone();
                        r
                    })
                    .collect()
            }),
        )
    }

    pub fn c_triple(&self, pmax: i64, qmax: i64) -> Vec<Report> {
        let mut out = Vec::new();
        for q in 1..=qmax {
            for p in -pmax..=pmax {
                out.push(check_c_triple(p, q));
            }
        }
        out
    }

    pub fn lambda(&self) -> Vec<Report> {
        let got = lambda_matrix(12);
        let want = displayed_lambda_12();
        let mut bad = Vec::new();
        if got.len() != want.len() {
            bad.push(format!("rows {} vs {}", got.len(), want.len()));
        }
        for (j, (a, b)) in got.iter().zip(&want).enumerate() {
            for nu in 0..a.len().max(b.len()) {
                if a.get(nu) != b.get(nu) {
                    bad.push(format!("j={},nu={nu}", j + 1));
                }
            }
        }
        let mut out = vec![Report::exact("lambda_matrix", json!({"w": 12}), "closed form", "displayed matrix", bad)];
        out.extend(self.ranks(3, 40));
        out
    }

    pub fn ranks(&self, wmin: i64, wmax: i64) -> Vec<Report> {
        (wmin..=wmax)
            .map(|w| match lambda_rank_check(w) {
                Ok(rc) => rank_report(&rc),
                Err(e) => Report::error("lambda_rank", json!({"w": w}), &e),
            })
            .collect()
    }

    /// Palindromy and product form of Λ_j for every admissible (w, j) with w ≤ wmax.
    pub fn lemma_sym(&self, wmax: i64) -> Vec<Report> {
        let mut out = Vec::new();
        for w in 3..=wmax {
            let mut bad = Vec::new();
            for j in 1..w {
                if 2 * j < w && w <= 3 * j {
                    match symmetry_lemma_check(w, j) {
                        Ok(true) => {}
                        Ok(false) => bad.push(format!("j={j}")),
                        Err(e) => bad.push(format!("j={j}: {e}")),
                    }
                }
            }
            out.push(Report::exact("lemma_sym", json!({"w": w}), "λ_{j,ν}", "palindromic product form", bad));
        }
        out
    }

    /// z_partial_product = z_bruteforce for every N ≤ nmax, 1 ≤ k ≤ kmax, r ≤ rmax.
    pub fn aj(&self, nmax: u64, kmax: u32, rmax: u32) -> Vec<Report> {
        let table = z_partial_product_table(kmax, rmax, nmax);
        let mut out = Vec::new();
        for k in 1..=kmax {
            for r in 0..=rmax {
                let brute = z_bruteforce_prefixes(k, r, nmax);
                let bad: Vec<String> = (1..=nmax as usize)
                    .filter(|&n| table[n][r as usize][k as usize] != brute[n])
                    .map(|n| format!("N={n}"))
                    .collect();
                out.push(Report::exact(
                    "finite_product_expansion",
                    json!({"k": k, "r": r, "N_max": nmax}),
                    "harmonic-sum product expansion",
                    "nested sums",
                    bad,
                ));
            }
        }
        out
    }

    /// At (s, t, u) = (0.1, 0.2, −0.3).
    pub fn an(&self) -> Vec<Report> {
        let (s, t) = (q(1, 10), q(2, 10));
        collect(
            "vcl_an",
            json!({"s": "1/10", "t": "1/5"}),
            crate::closed::virasoro::vcl_an_check(&self.ctx, &s, &t, self.cfg.an_terms, self.cfg.oracle_tolerance),
        )
    }

    pub fn torus(&self) -> Vec<Report> {
        let (y, grid, tol) = (self.cfg.tau_im, self.cfg.grid_n, self.cfg.oracle_tolerance);
        let mut out = Vec::new();
        for kind in [OracleKind::D, OracleKind::B] {
            for l in [0u32, 2, 3] {
                let p = json!({"l": l, "tau_im": y, "grid": grid});
                out.push(
                    oracle_check(&self.ctx, kind, l, y, grid, tol)
                        .unwrap_or_else(|e| Report::error("torus", p, &e)),
                );
            }
        }
        let p = json!({"l": 1, "tau_im": y, "grid": grid});
        out.push(match d_quadrature(1, y, grid) {
            Ok(v) => Report::numeric("D_torus", p, "quadrature", "0", v.value.abs(), tol)
                .with_note(format!("heuristic, not certified; estimate={:.1e}", v.estimate)),
            Err(e) => Report::error("D_torus", p, &e),
        });
        out
    }

    /// Exact d_ℓ against the numeric direct route, plus weight grading and the absence of ζ₂.
    pub fn d_routes(&self, max_l: u32) -> Vec<Report> {
        (0..=max_l)
            .map(|l| {
                let params = json!({"l": l});
                let r = (|| -> Result<Report> {
                    let exact = d_laurent(l)?;
                    let num = d_direct_numeric(&self.ctx, l)?;
                    let diff = d_route_diff(&self.ctx, &exact, &num)?;
                    let bad = grading_defects(&exact, l);
                    Ok(Report::numeric("d_routes", params.clone(), "generating", "direct", diff, self.cfg.tolerance)
                        .with_mismatches(bad))
                })();
                r.unwrap_or_else(|e| Report::error("d_routes", params, &e))
            })
            .collect()
    }

    /// 2^q e_{p,q} against Q-weighted γ for q ≥ 1, −q < p, 2p + 3q ≤ wmax.
    pub fn bn(&self, wmax: i64) -> Vec<Report> {
        let mut out = Vec::new();
        for q in 1..=(wmax / 3) {
            for p in (1 - q)..=((wmax - 3 * q) / 2) {
                let params = json!({"p": p, "q": q});
                out.push(check_bn(&self.ctx, p, q).unwrap_or_else(|e| Report::error("e_from_gamma", params, &e)));
            }
        }
        out
    }

    pub fn properties(&self) -> Vec<Report> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let mut out = vec![ring_axioms(&mut rng, 64), sv_homomorphism(&mut rng, 64), weight_grading(&mut rng)];
        let mut worst: f64 = 0.0;
        let mut err = None;
        for total in 0..=12u32 {
            for mu in 0..=total {
                match (f_coeff_numeric(&self.ctx, mu, total - mu), f_coeff_numeric(&self.ctx, total - mu, mu)) {
                    (Ok(a), Ok(b)) => worst = worst.max(a.diff_bound(&b)),
                    (Err(e), _) | (_, Err(e)) => err = Some(e),
                }
            }
        }
        let p = json!({"max_sum": 12});
        out.push(match err {
            Some(e) => Report::error("f_symmetry", p, &e),
            None => Report::numeric("f_symmetry", p, "f_{μ,ν}", "f_{ν,μ}", worst, self.cfg.tolerance),
        });
        let mut bad = Vec::new();
        for n in 2..14i64 {
            for k in 1..n {
                if n + k > 14 {
                    continue;
                }
                match (gamma_coeff(n, k, GammaRoute::ViaE), gamma_coeff(n, k, GammaRoute::ViaP)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => bad.push(format!("{n},{k}")),
                }
            }
        }
        out.push(Report::exact("gamma_routes", json!({"max_weight": 14}), "e-weighted", "P-weighted", bad));
        out
    }
}

fn rank_report(rc: &RankCheck) -> Report {
    let mut bad = Vec::new();
    if rc.rank_full != rc.expected_full {
        bad.push(format!("full {} vs {}", rc.rank_full, rc.expected_full));
    }
    if rc.rank_antisym != rc.expected_antisym {
        bad.push(format!("antisym {} vs {}", rc.rank_antisym, rc.expected_antisym));
    }
    Report::exact("lambda_rank", json!({"w": rc.w}), "exact rank", "floor formulas", bad)
        .with_note(format!("rank_full={} rank_antisym={}", rc.rank_full, rc.rank_antisym))
}

/// Exponents whose coefficient is not of weight ℓ − e or involves ζ₂.
fn grading_defects(p: &LaurentPoly<ZetaPoly>, l: u32) -> Vec<String> {
    p.terms()
        .filter(|(e, c)| c.involves_zeta2() || !c.is_homogeneous_of((l as i64 - e) as u32))
        .map(|(e, _)| format!("exp {e}"))
        .collect()
}

const SYMBOLS: [u32; 5] = [2, 3, 5, 7, 9];

/// A random element of ℚ[ζ₂, ζ₃, ζ₅, ζ₇, ζ₉] with up to four terms.
fn random_poly(rng: &mut ChaCha8Rng) -> ZetaPoly {
    let mut p = ZetaPoly::zero();
    for _ in 0..rng.gen_range(0..=4) {
        let exps: Vec<(u32, u32)> = SYMBOLS
            .iter()
            .filter_map(|&s| {
                let e = rng.gen_range(0..=2u32);
                (e > 0).then_some((s, e))
            })
            .collect();
        let m = ZetaMonomial::from_exponents(exps).expect("valid symbols");
        let c = Rational::from((rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6)));
        p.add_term(&m, &c);
    }
    p
}

fn ring_axioms(rng: &mut ChaCha8Rng, cases: usize) -> Report {
    let mut bad = Vec::new();
    for i in 0..cases {
        let (a, b, c) = (random_poly(rng), random_poly(rng), random_poly(rng));
        let ok = &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a + &b == &b + &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &ZetaPoly::one() == a
            && (&a + &(-&a)).is_zero();
        if !ok {
            bad.push(format!("case {i}"));
        }
    }
    Report::exact("ring_axioms", json!({"cases": cases}), "lhs", "rhs", bad)
}

fn sv_homomorphism(rng: &mut ChaCha8Rng, cases: usize) -> Report {
    let mut bad = Vec::new();
    if sv_zeta_poly(&ZetaPoly::one()) != ZetaPoly::one() {
        bad.push("unit".into());
    }
    for i in 0..cases {
        let (a, b) = (random_poly(rng), random_poly(rng));
        let (sa, sb) = (sv_zeta_poly(&a), sv_zeta_poly(&b));
        if sv_zeta_poly(&(&a * &b)) != &sa * &sb || sv_zeta_poly(&(&a + &b)) != &sa + &sb {
            bad.push(format!("case {i}"));
        }
    }
    Report::exact("sv_homomorphism", json!({"cases": cases}), "sv(a∘b)", "sv(a)∘sv(b)", bad)
}

/// Weight grading on sampled coefficients of every family.
fn weight_grading(rng: &mut ChaCha8Rng) -> Report {
    let mut bad = Vec::new();
    let mut check = |label: String, p: Result<ZetaPoly>, w: u32| match p {
        Ok(p) if p.is_zero() || p.is_homogeneous_of(w) => {}
        Ok(_) => bad.push(label),
        Err(e) => bad.push(format!("{label}: {e}")),
    };
    for _ in 0..16 {
        let (p, qq) = (rng.gen_range(0..=6i64), rng.gen_range(1..=5i64));
        check(format!("e_{p},{qq}"), e_exact(p, qq), (2 * p + 3 * qq) as u32);
        let n = rng.gen_range(2..=10i64);
        let k = rng.gen_range(1..n);
        check(format!("gamma_{n},{k}"), gamma_coeff(n, k, GammaRoute::ViaE), (n + k) as u32);
        let (n, k) = (rng.gen_range(1..=8u32), rng.gen_range(1..=8u32));
        if k <= n {
            check(format!("eta_{n},{k}"), eta_coeff(n, k), n + k);
        }
        let (k, r) = (rng.gen_range(1..=6u32), rng.gen_range(1..=6u32));
        check(format!("H_{k},{r}"), h_exact(k, r), k + r);
    }
    for l in 0..=6u32 {
        match d_laurent(l) {
            Ok(d) => bad.extend(grading_defects(&d, l).into_iter().map(|s| format!("d_{l} {s}"))),
            Err(e) => bad.push(format!("d_{l}: {e}")),
        }
        match b_laurent(l, Route::Generating) {
            Ok(b) => {
                for (e, c) in b.terms() {
                    if !c.is_homogeneous_of((l as i64 - e) as u32) {
                        bad.push(format!("b_{l} exp {e}"));
                    }
                }
            }
            Err(e) => bad.push(format!("b_{l}: {e}")),
        }
    }
    Report::exact("weight_grading", json!({}), "coefficients", "declared weights", bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria_pass() {
        let s = Suite::new(SuiteConfig::default());
        for id in [1, 7, 8, 9] {
            let c = s.run(id);
            assert!(c.pass(), "{}", c.summary_line());
        }
    }

    #[test]
    fn property_suite_is_seed_deterministic() {
        let a = Suite::new(SuiteConfig::default()).properties();
        let b = Suite::new(SuiteConfig::default()).properties();
        let la: Vec<String> = a.iter().map(Report::to_json_line).collect();
        let lb: Vec<String> = b.iter().map(Report::to_json_line).collect();
        assert_eq!(la, lb);
        assert!(a.iter().all(|r| r.pass), "{la:?}");
    }
}
