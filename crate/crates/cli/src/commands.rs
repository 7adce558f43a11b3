//! Dispatch from parsed arguments to the engine, and record output.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use zeta_amp::closed::virasoro::vcl_series;
use zeta_amp::closed::{
    coeff_c, d_direct_numeric, d_laurent, e_exact, f_coeff_numeric, gamma_coeff, lambda_poly, poly_p, poly_q,
    wcl_hat_from_gamma, wcl_hat_from_vcl, wcl_identity_check, GammaRoute,
};
use zeta_amp::config::SuiteConfig;
use zeta_amp::exact::format_rational;
use zeta_amp::mzv::h_exact;
use zeta_amp::open::{b_laurent, eta_coeff, veneziano_series, wop_hat_from_eta, wop_hat_from_vop, wop_identity_check};
use zeta_amp::report::{summarize, Report, SCHEMA_VERSION};
use zeta_amp::suite::Suite as AcceptanceSuite;
use zeta_amp::sv::verify_sv_on_series;
use zeta_amp::torus::{green_function, oracle_check, OracleKind as TorusKind};
use zeta_amp::{Error, Route};

use crate::{Cli, CoeffArgs, CoeffKind, Command, GlobalOpts, LaurentKind, OracleArgs, OracleKind, RouteArg, SeriesKind, Suite};

/// A failure that maps to an exit code.
enum Fail {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::CostGuard(_)
            | Error::PoleProximity(_)
            | Error::LatticeProximity(_) => Fail::Usage(e.to_string()),
            other => Fail::Engine(other),
        }
    }
}

/// Writes records as JSON lines, or as text rendered from the same JSON.
struct Sink {
    text: bool,
    failed: bool,
}

impl Sink {
    fn line(&self, s: &str) {
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{s}");
    }

    fn report(&mut self, r: &Report) {
        self.failed |= !r.pass;
        self.line(&if self.text { r.to_text() } else { r.to_json_line() });
    }

    fn reports(&mut self, check: &str, params: Value, rs: &[Report]) {
        for r in rs {
            self.report(r);
        }
        self.report(&summarize(check, params, rs));
    }

    fn value(&self, object: &str, params: Value, value: Value) {
        self.record(ValueRecord { schema: SCHEMA_VERSION, object, params, value, display: None });
    }

    fn value_with_display(&self, object: &str, params: Value, value: Value, display: String) {
        self.record(ValueRecord { schema: SCHEMA_VERSION, object, params, value, display: Some(display) });
    }

    fn record(&self, rec: ValueRecord<'_>) {
        let line = if self.text {
            render_text(&serde_json::to_value(&rec).expect("record serializes"))
        } else {
            serde_json::to_string(&rec).expect("record serializes")
        };
        self.line(&line);
    }
}

/// A computed object rather than a check.
#[derive(Serialize)]
struct ValueRecord<'a> {
    schema: u32,
    object: &'a str,
    params: Value,
    value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    display: Option<String>,
}

/// Text form of a value record: its display string, a bare string value, or pretty JSON.
fn render_text(rec: &Value) -> String {
    match (&rec["display"], &rec["value"]) {
        (Value::String(d), _) => d.clone(),
        (_, Value::String(s)) => s.clone(),
        (_, other) => serde_json::to_string_pretty(other).expect("json renders"),
    }
}

fn config(g: &GlobalOpts) -> Result<SuiteConfig, Fail> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &g.config {
        let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
        cfg.apply_text(&text)?;
    }
    if let Some(v) = g.order {
        cfg.series_order = v;
    }
    if let Some(v) = g.precision {
        cfg.precision_digits = v;
    }
    if let Some(v) = g.z_limit {
        cfg.z_sum_limit = v;
    }
    if let Some(v) = g.grid {
        cfg.grid_n = v;
    }
    if let Some(v) = g.max_weight {
        cfg.max_weight = v;
    }
    if let Some(v) = g.max_l {
        cfg.max_l = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: Cli) -> u8 {
    let mut sink = Sink { text: cli.global.text, failed: false };
    let result = config(&cli.global).and_then(|cfg| dispatch(cli.command, cfg, &mut sink));
    match result {
        Ok(()) if sink.failed => 1,
        Ok(()) => 0,
        Err(Fail::Usage(msg)) => {
            eprintln!("zamp: {msg}");
            2
        }
        Err(Fail::Engine(e)) => {
            eprintln!("zamp: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, cfg: SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    match cmd {
        Command::Expand { which, route } => expand(which, route, &cfg, sink),
        Command::Coeff(args) => coeff(&args, cfg, sink),
        Command::Laurent { which, l, route } => laurent(which, l, route, cfg, sink),
        Command::Verify { which } => verify(which, cfg, sink),
        Command::Oracle(args) => oracle(&args, cfg, sink),
        Command::All => {
            let suite = AcceptanceSuite::new(cfg);
            for (id, _) in zeta_amp::suite::CRITERIA {
                let c = suite.run(id);
                sink.reports(&format!("criterion_{}_{}", c.id, c.name), json!({"id": c.id}), &c.reports);
            }
            Ok(())
        }
    }
}

fn expand(which: SeriesKind, route: RouteArg, cfg: &SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    let order = cfg.series_order;
    let series = match (which, route) {
        (SeriesKind::Vcl, _) => vcl_series(order),
        (SeriesKind::Vop, _) => veneziano_series(order),
        (SeriesKind::Wcl, RouteArg::Generating) => wcl_hat_from_gamma(order)?,
        (SeriesKind::Wcl, RouteArg::Direct) => wcl_hat_from_vcl(order),
        (SeriesKind::Wop, RouteArg::Generating) => wop_hat_from_eta(order)?,
        (SeriesKind::Wop, RouteArg::Direct) => wop_hat_from_vop(order),
    };
    let name = format!("{which:?}").to_lowercase();
    sink.value(&name, json!({"order": order}), series.to_json());
    Ok(())
}

fn need(name: &str, v: Option<i64>) -> Result<i64, Fail> {
    v.ok_or_else(|| Fail::Usage(format!("missing --{name}")))
}

fn nonneg(name: &str, v: Option<i64>) -> Result<u32, Fail> {
    let x = need(name, v)?;
    u32::try_from(x).map_err(|_| Fail::Usage(format!("--{name} must be non-negative")))
}

fn coeff(a: &CoeffArgs, cfg: SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    let ctx = AcceptanceSuite::new(cfg.clone()).ctx;
    let digits = cfg.precision_digits as usize;
    let (object, params, value) = match a.which {
        CoeffKind::E => {
            let (p, q) = (need("p", a.p)?, need("q", a.q)?);
            ("e", json!({"p": p, "q": q}), e_exact(p, q)?.to_string())
        }
        CoeffKind::C => {
            let (p, q, r) = (need("p", a.p)?, need("q", a.q)?, need("r", a.r)?);
            ("C", json!({"p": p, "q": q, "r": r}), format_rational(&coeff_c(p, q, r)?))
        }
        CoeffKind::Gamma => {
            let (n, k) = (need("n", a.n)?, need("k", a.k)?);
            let route = match a.route {
                RouteArg::Generating => GammaRoute::ViaE,
                RouteArg::Direct => GammaRoute::ViaP,
            };
            ("gamma", json!({"n": n, "k": k}), gamma_coeff(n, k, route)?.to_string())
        }
        CoeffKind::Eta => {
            let (n, k) = (nonneg("n", a.n)?, nonneg("k", a.k)?);
            ("eta", json!({"n": n, "k": k}), eta_coeff(n, k)?.to_string())
        }
        CoeffKind::Lambda => {
            let (j, nu, w) = (need("j", a.j)?, need("nu", a.nu)?, need("w", a.w)?);
            ("lambda", json!({"j": j, "nu": nu, "w": w}), format_rational(&lambda_poly(j, nu, w)))
        }
        CoeffKind::P => {
            let (s, h, k) = (need("s", a.s)?, need("h", a.h)?, need("k", a.k)?);
            ("P", json!({"s": s, "h": h, "k": k}), format_rational(&poly_p(s, h, k)))
        }
        CoeffKind::Q => {
            let (s, p, q) = (need("s", a.s)?, need("p", a.p)?, need("q", a.q)?);
            ("Q", json!({"s": s, "p": p, "q": q}), format_rational(&poly_q(s, p, q)))
        }
        CoeffKind::F => {
            let (mu, nu) = (nonneg("mu", a.mu)?, nonneg("nu", a.nu)?);
            ("f", json!({"mu": mu, "nu": nu}), f_coeff_numeric(&ctx, mu, nu)?.to_decimal(digits))
        }
        CoeffKind::Z => {
            let (k, r) = (nonneg("k", a.k)?, nonneg("r", a.r)?);
            if k < 2 {
                return Err(Fail::Usage("Z(k, r) needs k ≥ 2".into()));
            }
            ("Z", json!({"k": k, "r": r}), ctx.z(k, r)?.to_decimal(digits))
        }
        CoeffKind::H => {
            let (k, r) = (nonneg("k", a.k)?, nonneg("r", a.r)?);
            ("H", json!({"k": k, "r": r}), h_exact(k, r)?.to_string())
        }
    };
    sink.value(object, params, Value::String(value));
    Ok(())
}

fn laurent(which: LaurentKind, l: u32, route: RouteArg, cfg: SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    let params = json!({"l": l, "route": format!("{route:?}").to_lowercase()});
    match (which, route) {
        (LaurentKind::D, RouteArg::Generating) => {
            let d = d_laurent(l)?;
            sink.value_with_display("d", params, d.to_json(), d.to_string());
        }
        (LaurentKind::D, RouteArg::Direct) => {
            let ctx = AcceptanceSuite::new(cfg.clone()).ctx;
            let terms: Vec<Value> = d_direct_numeric(&ctx, l)?
                .iter()
                .rev()
                .map(|(e, c)| json!({"exp": e, "coeff": c.to_decimal(cfg.precision_digits as usize)}))
                .collect();
            sink.value("d", params, json!({"var": "Y", "terms": terms}));
        }
        (LaurentKind::B, r) => {
            let route = if r == RouteArg::Generating { Route::Generating } else { Route::Direct };
            let b = b_laurent(l, route)?;
            sink.value_with_display("b", params, b.to_json(), b.to_string());
        }
    }
    Ok(())
}

fn verify(which: Suite, cfg: SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    let (order, max_l, max_w) = (cfg.series_order, cfg.max_l, cfg.max_weight as i64);
    let suite = AcceptanceSuite::new(cfg);
    let (name, reports) = match which {
        Suite::Thm1 => ("thm1", suite.e_vs_mzv()),
        Suite::Thm2 => ("thm2", suite.d_routes(max_l)),
        Suite::Thm3 => ("thm3", suite.e_negative_p()),
        Suite::Wcl => ("wcl", wcl_identity_check(&suite.ctx, order)?),
        Suite::Wop => {
            let mut rs = vec![wop_identity_check(order)?];
            let sv = verify_sv_on_series(order)?.into_iter().find(|s| s.label == "sv_wop");
            rs.extend(sv.map(Report::from));
            ("wop", rs)
        }
        Suite::SvB => ("svB", suite.sv_b(max_l)),
        Suite::Klt => ("klt", suite.klt()),
        Suite::LemmaSym => ("lemma-sym", suite.lemma_sym(max_w)),
        Suite::Rank => ("rank", suite.ranks(3, max_w.max(3))),
        Suite::Aj => ("AJ", suite.aj(50, 8, 6)),
        Suite::An => ("AN", suite.an()),
    };
    sink.reports(name, json!({"order": order, "max_l": max_l, "max_weight": max_w}), &reports);
    Ok(())
}

fn oracle(a: &OracleArgs, cfg: SuiteConfig, sink: &mut Sink) -> Result<(), Fail> {
    let y = a.tau.unwrap_or(cfg.tau_im);
    let kind = match a.which {
        OracleKind::D => TorusKind::D,
        OracleKind::B => TorusKind::B,
        OracleKind::Green => {
            let g = green_function(y, Complex64::new(a.re, a.im))?;
            sink.value(
                "green",
                json!({"tau_im": y, "re": a.re, "im": a.im}),
                Value::String(format!("{g:.15e}")),
            );
            return Ok(());
        }
    };
    let ctx = AcceptanceSuite::new(cfg.clone()).ctx;
    let r = oracle_check(&ctx, kind, a.l, y, cfg.grid_n, cfg.oracle_tolerance)?;
    sink.report(&r);
    Ok(())
}
