use serde_json::{json, Map, Value};

use cauchy_gabor::oracle::{verify as run_checks, Tolerances, VerifyConfig};
use cauchy_gabor::{corollary_bounds, zak_cauchy, DualWindow, GaborLattice, MultiplierProfile};

use crate::output::{real, write_csv, write_json};
use crate::{seed, CliError, CommonArgs, Format, VerifyArgs, ZakArgs};

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn params(command: &str, lat: &GaborLattice, extra: Value) -> Value {
    let mut p = Map::new();
    p.insert("command".into(), json!(command));
    p.insert("alpha".into(), json!(lat.alpha()));
    p.insert("beta".into(), json!(lat.beta()));
    p.insert("w".into(), json!(lat.w()));
    if let Value::Object(extra) = extra {
        p.extend(extra);
    }
    Value::Object(p)
}

pub fn dual(a: &CommonArgs) -> Result<bool, CliError> {
    let lat = a.lattice()?;
    let (lo, hi, n) = a.range((-10.0, 10.0, 2048))?;
    let dual = DualWindow::new(&lat);
    let ts = linspace(lo, hi, n);
    let values: Vec<_> = ts.iter().map(|&t| dual.eval(t)).collect();
    match a.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                ts.iter().zip(&values).map(|(&t, g)| vec![real(t), real(g.re), real(g.im)]).collect();
            write_csv(a.out.as_deref(), &["t", "gamma_re", "gamma_im"], &rows)?;
        }
        Format::Json => {
            let p = params("dual", &lat, json!({"tmin": lo, "tmax": hi, "samples": n}));
            let results = json!({
                "branch": to_json(dual.params()),
                "t": ts,
                "gamma_re": values.iter().map(|g| g.re).collect::<Vec<_>>(),
                "gamma_im": values.iter().map(|g| g.im).collect::<Vec<_>>(),
            });
            write_json(a.out.as_deref(), p, json!([]), results)?;
        }
    }
    Ok(true)
}

pub fn bounds(a: &CommonArgs) -> Result<bool, CliError> {
    let lat = a.lattice()?;
    let r = corollary_bounds(&lat)?;
    let (inf, sup) = MultiplierProfile::new(&lat).extrema();
    let mut named = vec![
        ("A_lower", r.a_lower_thm1),
        ("B_upper", r.b_upper_thm1),
        ("A_bracket_lower", r.a_bracket_cor.0),
        ("A_bracket_upper", r.a_bracket_cor.1),
        ("B_bracket_lower", r.b_bracket_cor.0),
        ("B_bracket_upper", r.b_bracket_cor.1),
        ("h_hat_inf", inf),
        ("h_hat_sup", sup),
    ];
    if let Some((ca, cb)) = r.critical_exact {
        named.push(("A_critical", ca));
        named.push(("B_critical", cb));
    }
    match a.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = named.iter().map(|(k, v)| vec![k.to_string(), real(*v)]).collect();
            write_csv(a.out.as_deref(), &["quantity", "value"], &rows)?;
        }
        Format::Json => {
            let p = params("bounds", &lat, json!({"density": lat.density()}));
            let mut results = Map::new();
            for (k, v) in named {
                results.insert(k.into(), json!(v));
            }
            write_json(a.out.as_deref(), p, json!([]), Value::Object(results))?;
        }
    }
    Ok(true)
}

pub fn zak(z: &ZakArgs) -> Result<bool, CliError> {
    let a = &z.common;
    let lat = a.lattice()?;
    let (lo, hi, n) = a.range((0.0, lat.alpha(), 64))?;
    if z.omega_samples == 0 {
        return Err(CliError::Param("omega-samples must be positive".into()));
    }
    let omegas: Vec<f64> = (0..z.omega_samples).map(|j| j as f64 / (lat.alpha() * z.omega_samples as f64)).collect();
    let mut rows = Vec::with_capacity(n * omegas.len());
    for &t in &linspace(lo, hi, n) {
        for &om in &omegas {
            let v = zak_cauchy(t, om, &lat);
            rows.push((t, om, v, lat.alpha() * v.norm_sqr()));
        }
    }
    match a.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(t, om, v, s)| vec![real(*t), real(*om), real(v.re), real(v.im), real(*s)])
                .collect();
            write_csv(a.out.as_deref(), &["t", "omega", "zak_re", "zak_im", "alpha_abs2"], &rows)?;
        }
        Format::Json => {
            let p = params(
                "zak",
                &lat,
                json!({"tmin": lo, "tmax": hi, "samples": n, "omega_samples": z.omega_samples}),
            );
            let (min, max) = rows.iter().fold((f64::INFINITY, 0.0f64), |(l, h), r| (l.min(r.3), h.max(r.3)));
            let results = json!({
                "alpha_abs2_min": min,
                "alpha_abs2_max": max,
                "t": rows.iter().map(|r| r.0).collect::<Vec<_>>(),
                "omega": rows.iter().map(|r| r.1).collect::<Vec<_>>(),
                "zak_re": rows.iter().map(|r| r.2.re).collect::<Vec<_>>(),
                "zak_im": rows.iter().map(|r| r.2.im).collect::<Vec<_>>(),
            });
            write_json(a.out.as_deref(), p, json!([]), results)?;
        }
    }
    Ok(true)
}

pub fn hhat(a: &CommonArgs) -> Result<bool, CliError> {
    let lat = a.lattice()?;
    let (lo, hi, n) = a.range((-lat.beta(), lat.beta(), 1024))?;
    let profile = MultiplierProfile::new(&lat);
    let xs = linspace(lo, hi, n);
    let h: Vec<f64> = xs.iter().map(|&x| profile.h_hat(x)).collect();
    let d: Vec<f64> = xs.iter().map(|&x| cauchy_gabor::dual_fourier_profile(x, &lat)).collect();
    match a.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                (0..n).map(|i| vec![real(xs[i]), real(h[i]), real(d[i])]).collect();
            write_csv(a.out.as_deref(), &["xi", "h_hat", "dual_profile"], &rows)?;
        }
        Format::Json => {
            let (inf, sup) = profile.extrema();
            let p = params("hhat", &lat, json!({"ximin": lo, "ximax": hi, "samples": n}));
            let results = json!({
                "h_hat_inf": inf,
                "h_hat_sup": sup,
                "pieces": to_json(&profile.pieces()),
                "xi": xs,
                "h_hat": h,
                "dual_profile": d,
            });
            write_json(a.out.as_deref(), p, json!([]), results)?;
        }
    }
    Ok(true)
}

pub fn verify(v: &VerifyArgs) -> Result<bool, CliError> {
    let a = &v.common;
    let lat = a.lattice()?;
    let (lo, hi, n) = a.range((-10.0, 10.0, 512))?;
    if v.signals == 0 || v.trials == 0 || a.m_radius == Some(0) || a.n_radius == Some(0) {
        return Err(CliError::Param("signals, trials, M and N must be positive".into()));
    }
    let mut tolerances = Tolerances::default();
    for (name, value) in v.overrides() {
        if let Some(t) = value {
            tolerances.set(name, t)?;
        }
    }
    let cfg = VerifyConfig {
        m_radius: a.m_radius,
        n_radius: a.n_radius,
        seed: seed()?,
        signals: v.signals,
        t_min: lo,
        t_max: hi,
        samples: n,
        trials: v.trials,
        tolerances,
        ..VerifyConfig::default()
    };
    let report = run_checks(&lat, &cfg)?;
    for c in &report.checks {
        eprintln!("{}", c.summary());
    }
    match a.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), real(c.error), real(c.tolerance), c.passed.to_string()])
                .collect();
            write_csv(a.out.as_deref(), &["check", "error", "tolerance", "passed"], &rows)?;
        }
        Format::Json => {
            let mut cfg_json = to_json(&cfg);
            if let Value::Object(m) = &mut cfg_json {
                m.insert("seed".into(), json!(cfg.seed));
            }
            let p = params("verify", &lat, cfg_json);
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            let results = json!({"passed": report.passed(), "failed": failed});
            write_json(a.out.as_deref(), p, to_json(&report.checks), results)?;
        }
    }
    Ok(report.passed())
}
