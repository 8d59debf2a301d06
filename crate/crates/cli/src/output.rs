use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use xkraw_core::report::Report;
use xkraw_core::{Error, Result};

pub fn emit(content: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidParams(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(content.as_bytes());
            Ok(())
        }
    }
}

/// Quotes a CSV field only when it needs it. Rationals never do.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn params_inline(p: &xkraw_core::report::Params) -> String {
    serde_json::to_value(p)
        .ok()
        .and_then(|v| v.as_object().cloned())
        .map(|m| {
            m.iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

pub fn report_csv(report: &Report) -> String {
    let mut out = String::from("id,params,pass,skipped,lhs,rhs\n");
    for c in &report.cases {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            csv_field(&c.id),
            csv_field(&params_inline(&c.params)),
            c.pass,
            c.skipped,
            csv_field(c.lhs.as_deref().unwrap_or("")),
            csv_field(c.rhs.as_deref().unwrap_or("")),
        );
    }
    out
}

/// Failures in full, then one summary line.
pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    for c in report.failures() {
        let _ = write!(out, "FAIL {} [{}]", c.id, params_inline(&c.params));
        if let Some(l) = &c.lhs {
            let _ = write!(out, " lhs = {l}");
        }
        if let Some(r) = &c.rhs {
            let _ = write!(out, " rhs = {r}");
        }
        out.push('\n');
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "{}: {} checked, {} failed, {} skipped",
        report.suite, s.total, s.failed, s.skipped
    );
    out
}

/// First few failures on stderr so a red run names its identity.
pub fn name_failures(report: &Report) {
    for c in report.failures().take(5) {
        eprintln!("FAIL {} [{}]", c.id, params_inline(&c.params));
    }
    if report.summary.failed > 5 {
        eprintln!("... {} failures in total", report.summary.failed);
    }
}
