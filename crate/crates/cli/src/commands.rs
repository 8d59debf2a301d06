use std::fmt::Write as _;

use serde_json::json;
use xkraw_core::algebra::{int, rat, Rational};
use xkraw_core::krawtchouk::{krawtchouk, Family, KrawtchoukParams};
use xkraw_core::report::Report;
use xkraw_core::structure::family22::{closed_form, diagonal_from_neighbours, q3};
use xkraw_core::structure::recurrence::RecurrenceData;
use xkraw_core::structure::{resultant_lemma_check, xkraw22_family};
use xkraw_core::suites::{self, Suite, SweepConfig};
use xkraw_core::xkrawtchouk::{xk_member, IndexSet, XKrawtchouk};
use xkraw_core::{Error, Result};

use crate::args::{check_d, Cli, Command, Common, Format};
use crate::output::{csv_field, emit, name_failures, report_csv, report_text};

/// `Ok(true)` when everything passed, `Ok(false)` on an identity failure.
pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Kraw(c) => kraw(&c),
        Command::Xkraw(c) => xkraw(&c),
        Command::Verify(c) => verify(&c),
        Command::Recurrence(c) => recurrence(&c),
        Command::Resultant(c) => resultant(&c),
        Command::Family22(c) => family22(&c),
    }
}

fn params(c: &Common) -> Result<KrawtchoukParams> {
    KrawtchoukParams::new(c.require_p()?, c.require_n_big()?)
}

fn kraw(c: &Common) -> Result<bool> {
    let pr = params(c)?;
    let ns = c.n_range()?.ok_or_else(|| Error::InvalidParams("--n is required".into()))?;
    if let Some(&n) = ns.iter().find(|&&n| n < 0) {
        return Err(Error::InvalidParams(format!("n must be nonnegative, got {n}")));
    }
    let polys: Vec<_> = ns.iter().map(|&n| (n, krawtchouk(n as usize, pr.p(), &pr.a()))).collect();
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => {
            let rows: Vec<_> = polys
                .iter()
                .map(|(n, k)| {
                    let values: Vec<String> = (0..=pr.big_n()).map(|x| k.eval_int(x).to_string()).collect();
                    json!({ "n": n, "coefficients": k, "values": values })
                })
                .collect();
            let doc = json!({ "p": pr.p().to_string(), "N": pr.big_n(), "polynomials": rows });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("n,power,coefficient\n");
            for (n, k) in &polys {
                for (i, a) in k.coeffs().iter().enumerate() {
                    let _ = writeln!(out, "{n},{i},{a}");
                }
            }
            out
        }
        Format::Text => polys.iter().map(|(n, k)| format!("K_{n}(x) = {k}\n")).collect(),
    };
    emit(&text, c.out.as_deref())?;
    Ok(true)
}

fn xkraw(c: &Common) -> Result<bool> {
    let pr = params(c)?;
    let family = Family::new(c.require_j()?)?;
    let d = c.require_d()?;
    let ns = match c.n_range()? {
        Some(ns) => ns,
        None => IndexSet::new(family, d, pr.big_n()).indices,
    };
    let polys = ns.iter().map(|&n| xk_member(family, d, n, &pr)).collect::<Result<Vec<XKrawtchouk>>>()?;
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&polys).expect("json") + "\n",
        Format::Csv => {
            let mut out = String::from("j,d,n,degree,power,coefficient\n");
            for k in &polys {
                for (i, a) in k.poly.coeffs().iter().enumerate() {
                    let _ = writeln!(out, "{},{},{},{},{i},{a}", k.j, k.d, k.n, k.degree);
                }
            }
            out
        }
        Format::Text => polys.iter().map(|k| format!("K^({},{})_{}(x) = {}\n", k.j, k.d, k.n, k.poly)).collect(),
    };
    emit(&text, c.out.as_deref())?;
    Ok(true)
}

fn sweep_config(c: &Common) -> Result<SweepConfig> {
    let mut cfg = SweepConfig::default();
    if !c.suite.is_empty() {
        cfg.suites = c.suite.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?;
    }
    if let Some(p) = c.p_value()? {
        cfg.ps = vec![p];
    }
    if let Some(n) = c.big_n {
        cfg.big_ns = vec![n];
    }
    if let Some(j) = c.j {
        cfg.families = vec![Family::new(j)?];
    }
    let d_max = check_d(c.d_max)?;
    cfg.ds = match c.d {
        Some(d) => vec![check_d(d)?],
        None => (0..=d_max).collect(),
    };
    cfg.inject_fault = c.inject_fault;
    cfg.jobs = c.jobs;
    Ok(cfg)
}

fn emit_report(report: &Report, c: &Common) -> Result<bool> {
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report_csv(report),
        Format::Text => report_text(report),
    };
    emit(&text, c.out.as_deref())?;
    name_failures(report);
    Ok(report.passed())
}

fn verify(c: &Common) -> Result<bool> {
    let cfg = sweep_config(c)?;
    let report = suites::run(&cfg)?;
    emit_report(&report, c)
}

fn resultant(c: &Common) -> Result<bool> {
    let p = c.require_p()?;
    KrawtchoukParams::new(p.clone(), 1)?;
    let a_range: Vec<Rational> = if c.a.is_empty() {
        (-3..=6).map(int).chain([rat(7, 2)]).collect()
    } else {
        c.a.iter().map(|s| xkraw_core::algebra::parse_rational(s)).collect::<Result<_>>()?
    };
    if !(1..=12).contains(&c.n_max) {
        return Err(Error::InvalidParams(format!("--n-max must lie in 1..=12, got {}", c.n_max)));
    }
    let report = resultant_lemma_check(&p, &a_range, c.n_max as usize);
    emit_report(&report, c)
}

fn family22(c: &Common) -> Result<bool> {
    let pr = params(c)?;
    if pr.big_n() < 3 {
        return Err(Error::InvalidParams("the (2,2) family needs N >= 3".into()));
    }
    emit_report(&xkraw22_family(&pr), c)
}

/// CSV of `c_{n,l}`; for `(j,d) = (2,2)` the multiplier is `q_3` and two more
/// columns compare with the closed forms.
fn recurrence(c: &Common) -> Result<bool> {
    let pr = params(c)?;
    let family = Family::new(c.require_j()?)?;
    let d = c.require_d()?;
    if matches!(family, Family::One | Family::Three) && d as i64 > pr.big_n() {
        return Err(Error::InvalidParams(format!("type {family} needs d <= N")));
    }
    let ns = match c.n_range()? {
        Some(ns) => ns,
        None => IndexSet::new(family, d, pr.big_n()).indices,
    };
    let is22 = family == Family::Two && d == 2;
    let q = is22.then(|| q3(&pr));
    let data = RecurrenceData::build(family, d, &pr, ns, q.as_ref())?;
    if !matches!(c.format, None | Some(Format::Csv)) {
        let text = serde_json::to_string_pretty(&data).expect("json") + "\n";
        emit(&text, c.out.as_deref())?;
        return Ok(true);
    }
    if !is22 {
        emit(&data.to_csv(), c.out.as_deref())?;
        return Ok(true);
    }

    let mut all_match = true;
    let mut out = String::from("j,d,n,ell,value,closed_form,comparison\n");
    let mut by_n = std::collections::BTreeMap::new();
    for r in &data.rows {
        by_n.entry(r.n).or_insert_with(std::collections::BTreeMap::new).insert(r.ell, r.value.clone());
    }
    for r in &data.rows {
        let offset = r.ell - r.n;
        let expected = if offset == 0 {
            diagonal_from_neighbours(r.n, &by_n[&r.n], &pr)
        } else {
            closed_form(r.n, offset, &pr)
        };
        let (shown, verdict) = match &expected {
            Some(e) if *e == r.value => (e.to_string(), "match"),
            Some(e) => {
                all_match = false;
                (e.to_string(), "mismatch")
            }
            None => (String::new(), "n/a"),
        };
        let _ = writeln!(out, "2,2,{},{},{},{},{}", r.n, r.ell, r.value, csv_field(&shown), verdict);
    }
    // closed forms that predict a nonzero entry the extraction did not produce
    for (&n, row) in &by_n {
        for offset in [-3i64, -2, -1, 1, 2, 3] {
            let ell = n + offset;
            if ell < 0 || row.contains_key(&ell) {
                continue;
            }
            if let Some(e) = closed_form(n, offset, &pr).filter(|e| *e != Rational::from_integer(0.into())) {
                all_match = false;
                let _ = writeln!(out, "2,2,{n},{ell},0,{e},mismatch");
            }
        }
    }
    emit(&out, c.out.as_deref())?;
    Ok(all_match)
}
