//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Runs the shared criteria under the default configuration and, for the two
//! criteria that compare against printed tables, re-checks the tables held here.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rug::Rational;
use zeta_amp::closed::lambda::lambda_matrix;
use zeta_amp::closed::d_laurent;
use zeta_amp::config::SuiteConfig;
use zeta_amp::exact::ZetaPoly;
use zeta_amp::open::b_laurent;
use zeta_amp::suite::{Suite, CRITERIA};
use zeta_amp::Route;

fn zp(terms: &[(&[(u32, u32)], i64, i64)]) -> ZetaPoly {
    let mut p = ZetaPoly::zero();
    for (mono, n, d) in terms {
        let m = zeta_amp::exact::ZetaMonomial::from_exponents(mono.iter().copied()).unwrap();
        p.add_term(&m, &Rational::from((*n, *d)));
    }
    p
}

/// Coefficients keyed by exponent, with ζ₄ = (2/5)ζ₂² and ζ₆ = (8/35)ζ₂³ already applied.
fn local_tables_match() -> bool {
    let d2 = [(2, zp(&[(&[], 1, 180)])), (-1, zp(&[(&[(3, 1)], 2, 1)]))];
    let d3 = [(3, zp(&[(&[], 1, 3780)])), (0, zp(&[(&[(3, 1)], 1, 1)])), (-2, zp(&[(&[(5, 1)], 3, 1)]))];
    let b2 = [
        (2, zp(&[(&[], 1, 180)])),
        (0, zp(&[(&[(2, 1)], 1, 3)])),
        (-1, zp(&[(&[(3, 1)], 1, 1)])),
        (-2, zp(&[(&[(2, 2)], -3, 5)])),
    ];
    let b3 = [
        (3, zp(&[(&[], 1, 3780)])),
        (1, zp(&[(&[(2, 1)], 1, 15)])),
        (0, zp(&[(&[(3, 1)], 1, 2)])),
        (-1, zp(&[(&[(2, 2)], 19, 10)])),
        (-2, zp(&[(&[(5, 1)], 3, 2), (&[(2, 1), (3, 1)], -6, 1)])),
        (-3, zp(&[(&[(2, 3)], 64, 35)])),
    ];
    let same = |got: zeta_amp::exact::LaurentPoly<ZetaPoly>, want: &[(i64, ZetaPoly)]| {
        got.terms().count() == want.len() && want.iter().all(|(e, c)| got.coeff(*e) == *c)
    };
    let lam: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        vec![-6, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        vec![6, -3, -2, 2, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 3, 3, 1, 0, 0, 0],
        vec![0, 1, 4, 9, 13, 13, 9, 4, 1, 0],
    ];
    let lam: Vec<Vec<Rational>> = lam.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect();
    same(d_laurent(2).unwrap(), &d2)
        && same(d_laurent(3).unwrap(), &d3)
        && same(b_laurent(2, Route::Generating).unwrap(), &b2)
        && same(b_laurent(3, Route::Generating).unwrap(), &b3)
        && lambda_matrix(12) == lam
}

fn main() -> ExitCode {
    let suite = Suite::new(SuiteConfig::default());
    let mut all_pass = true;
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let c = suite.run(id);
        let elapsed = start.elapsed();
        let mut pass = c.pass();
        let mut extra = String::new();
        if id == 1 || id == 8 {
            let ok = local_tables_match();
            pass &= ok;
            extra.push_str(if ok { " tables=ok" } else { " tables=MISMATCH" });
        }
        let budget = match id {
            1 => Some(Duration::from_secs(1)),
            11 => Some(Duration::from_secs(600)),
            _ => None,
        };
        if let Some(b) = budget {
            pass &= elapsed < b;
            extra.push_str(&format!(" budget={b:?}"));
        }
        all_pass &= pass;
        let failed = c.reports.iter().filter(|r| !r.pass).count();
        println!(
            "{} criterion {:>2} {:<32} reports={:<4} failed={failed} time={elapsed:.2?}{extra}",
            if pass { "PASS" } else { "FAIL" },
            id,
            c.name,
            c.reports.len(),
        );
        for r in c.reports.iter().filter(|r| !r.pass).take(10) {
            println!("     {}", r.to_text());
        }
    }
    if all_pass {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
