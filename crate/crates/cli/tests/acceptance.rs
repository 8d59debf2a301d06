//! Acceptance criteria. Each prints one PASS/FAIL line with its runtime; the
//! test fails if any criterion is red. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use xkraw_core::algebra::{int, rat, Rational};
use xkraw_core::darboux::{monomial_test_set, verify_factorization, DarbouxSeed};
use xkraw_core::krawtchouk::{classical_gram, norm_h, Family, KrawtchoukParams};
use xkraw_core::report::Report;
use xkraw_core::structure::{orthogonality_data, verify_orthogonality};
use xkraw_core::suites::{self, SweepConfig};
use xkraw_core::xkrawtchouk::IndexSet;

type Criterion = (&'static str, u64, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(report: &Report, extra: &[(bool, String)]) -> Outcome {
    let mut pass = report.passed();
    let mut detail = format!("{} checked, {} failed, {} skipped", report.summary.total, report.summary.failed, report.summary.skipped);
    if let Some(c) = report.failures().next() {
        detail.push_str(&format!("; first failure {} {:?}", c.id, c.params));
    }
    for (ok, note) in extra {
        pass &= ok;
        detail.push_str("; ");
        detail.push_str(note);
    }
    Outcome { pass, detail }
}

fn ps() -> Vec<Rational> {
    vec![rat(1, 3), rat(1, 2), rat(3, 5)]
}

fn sweep() -> Vec<KrawtchoukParams> {
    ps().into_iter().flat_map(|p| (1..=5).map(move |n| KrawtchoukParams::new(p.clone(), n).unwrap())).collect()
}

fn config() -> SweepConfig {
    SweepConfig { jobs: 1, ..SweepConfig::default() }
}

fn seeds(pr: &KrawtchoukParams) -> Vec<DarbouxSeed> {
    Family::ALL
        .iter()
        .flat_map(|&f| (0..=3).filter_map(move |d| DarbouxSeed::new(f, d, pr).ok()))
        .collect()
}

fn merged(name: &str, reports: impl IntoIterator<Item = Report>) -> Report {
    let mut out = Report::new(name);
    for r in reports {
        out.merge(r);
    }
    out
}

fn classical_orthogonality() -> Outcome {
    let mut report = Report::new("classical");
    for p in ps() {
        for big_n in 2..=6 {
            let pr = KrawtchoukParams::new(p.clone(), big_n).unwrap();
            for n in 0..=big_n {
                for m in 0..=big_n {
                    let sum = classical_gram(n as usize, m as usize, &pr);
                    let want = if n == m { norm_h(n, &pr).unwrap() } else { int(0) };
                    report.push(xkraw_core::report::Case::identity("gram", pr.to_params(), &sum, &want));
                }
            }
        }
    }
    outcome(&report, &[])
}

fn factorization() -> Outcome {
    let params = sweep();
    let reports = params.iter().flat_map(|pr| {
        let set = monomial_test_set(2 * pr.big_n() as usize);
        seeds(pr).into_iter().map(move |s| verify_factorization(&s, &set)).collect::<Vec<_>>()
    });
    outcome(&merged("factorization", reports), &[])
}

fn x_eigen() -> Outcome {
    let reports: Vec<Report> = sweep().iter().map(|pr| suites::eigen_suite(pr, &config())).collect();
    let report = merged("eigen", reports);
    let special = |j: &str, n: &dyn Fn(i64, i64) -> i64| {
        report.cases.iter().filter(|c| c.id == "x-eigen" && c.params.get("j") == Some(j)).any(|c| {
            let big_n: i64 = c.params.get("N").unwrap().parse().unwrap();
            let d: i64 = c.params.get("d").unwrap().parse().unwrap();
            c.params.get("n") == Some(n(big_n, d).to_string().as_str()) && c.pass && !c.skipped
        })
    };
    let four = special("4", &|_, d| -d - 1);
    let two = special("2", &|big_n, d| big_n + d + 1);
    outcome(&report, &[(four, "K^(4,d)_{-d-1} = 1 covered".into()), (two, "K^(2,d)_{N+d+1} covered".into())])
}

fn x_orthogonality() -> Outcome {
    let reports: Vec<Report> = sweep().iter().map(|pr| suites::orthogonality_suite(pr, &config())).collect();
    let report = merged("orthogonality", reports);
    let pr = KrawtchoukParams::new(rat(1, 2), 2).unwrap();
    let data = orthogonality_data(Family::Two, 2, &pr).unwrap();
    let r = verify_orthogonality(&data, None);
    let h = r
        .cases
        .iter()
        .find(|c| c.params.get("n") == Some("5") && c.params.get("m") == Some("5"))
        .and_then(|c| c.lhs.clone());
    let hit = h.as_deref() == Some("45/32");
    outcome(&report, &[(hit, format!("sum at (2,2), N=2, p=1/2, n=5: {}", h.unwrap_or_default()))])
}

fn diophantine() -> Outcome {
    let reports: Vec<Report> = sweep().iter().map(|pr| suites::diophantine_suite(pr, &config())).collect();
    let report = merged("diophantine", reports);
    let ids: BTreeSet<&str> = report.cases.iter().map(|c| c.id.as_str()).collect();
    let wanted = ["dioph-1-2", "dioph-2-1", "dioph-3-4", "dioph-4-3", "dioph-3-top", "dioph-d-1", "dioph-d-3", "dioph-nd-1", "dioph-nd-3", "dioph-last-2", "dioph-last-4"];
    let missing: Vec<&str> = wanted.iter().copied().filter(|w| !ids.contains(w)).collect();
    // type 1 with n = d has no member; no identity may reference it
    let excluded = report.cases.iter().any(|c| {
        c.id == "dioph-1-2" && c.params.get("n").is_some() && c.params.get("n") == c.params.get("d")
    });
    outcome(
        &report,
        &[(missing.is_empty(), format!("{} identity kinds", wanted.len() - missing.len())), (!excluded, "n = d excluded".into())],
    )
}

fn resultants() -> Outcome {
    let report = merged("resultant", [rat(1, 3), rat(1, 2)].iter().map(suites::resultant_suite));
    let mut shared = 0;
    let mut coprime = 0;
    for c in report.cases.iter().filter(|c| c.id == "common-zero" && c.pass) {
        let a = xkraw_core::algebra::parse_rational(c.params.get("a").unwrap()).unwrap();
        let n: i64 = c.params.get("n").unwrap().parse().unwrap();
        if a.is_integer() && (1..n).any(|k| a == int(k)) {
            shared += 1;
        } else {
            coprime += 1;
        }
    }
    outcome(&report, &[(shared > 0 && coprime > 0, format!("common zero {shared}, none {coprime}"))])
}

fn family22() -> Outcome {
    let params: Vec<KrawtchoukParams> =
        ps().into_iter().flat_map(|p| (3..=5).map(move |n| KrawtchoukParams::new(p.clone(), n).unwrap())).collect();
    let report = merged("family22", params.iter().map(suites::family22_suite));
    let mut missing = Vec::new();
    for pr in &params {
        for n in IndexSet::new(Family::Two, 2, pr.big_n()).iter() {
            for l in [-3i64, -2, -1, 0, 1, 2, 3] {
                if n + l < 0 {
                    continue;
                }
                let id = format!("c[{l}]");
                let found = report.cases.iter().any(|c| {
                    c.id == id
                        && c.params.get("n") == Some(n.to_string().as_str())
                        && c.params.get("N") == Some(pr.big_n().to_string().as_str())
                        && c.params.get("p") == Some(pr.p().to_string().as_str())
                        && c.pass
                });
                if !found {
                    missing.push(format!("{id} n={n} N={} p={}", pr.big_n(), pr.p()));
                }
            }
        }
    }
    let half = report.cases.iter().filter(|c| c.id == "half-symmetric").count();
    outcome(
        &report,
        &[
            (missing.is_empty(), format!("coefficient checks missing: {}", missing.len())),
            (half > 0, format!("{half} half-symmetric checks")),
        ],
    )
}

fn span() -> Outcome {
    let reports: Vec<Report> = sweep().iter().map(|pr| suites::span_suite(pr, &config())).collect();
    let report = merged("span", reports);
    let count = |id: &str| report.cases.iter().filter(|c| c.id == id).count();
    let dirty = count("span-contaminated");
    let flags = count("polynomiality");
    let non_poly = report.cases.iter().any(|c| c.params.get("B_polynomial") == Some("false"));
    outcome(&report, &[(dirty > 0 && flags > 0 && non_poly, format!("{dirty} contaminated, {flags} flag pairs"))])
}

fn positivity() -> Outcome {
    let reports: Vec<Report> = sweep().iter().map(|pr| suites::positivity_suite(pr, &config())).collect();
    let report = merged("positivity", reports);
    let even = report
        .cases
        .iter()
        .filter(|c| c.id == "weight-positive" && !c.skipped && c.params.get("j") == Some("2"))
        .count();
    let d4 = report.cases.iter().any(|c| c.id == "weight-positive" && c.params.get("d") == Some("4") && !c.skipped);
    outcome(&report, &[(even > 0 && d4, format!("{even} even-d type-2 weights"))])
}

fn end_to_end() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_xkraw"))
        .args(["verify", "--jobs", "1", "--format", "text"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    Outcome {
        pass: out.status.code() == Some(0),
        detail: format!("exit {:?}: {}", out.status.code(), text.lines().last().unwrap_or_default()),
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("classical orthogonality", 1, classical_orthogonality),
        ("operator factorization", 5, factorization),
        ("X eigen-equations", 10, x_eigen),
        ("X orthogonality and norms", 30, x_orthogonality),
        ("Diophantine identities", 30, diophantine),
        ("resultant lemma", 5, resultants),
        ("(2,2) recurrence closed forms", 30, family22),
        ("span and polynomiality", 30, span),
        ("positivity bookkeeping", 30, positivity),
        ("verify end to end", 60, end_to_end),
    ];
    let mut red = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = o.pass && in_time;
        println!(
            "criterion {:>2} {} {name} ({:.2}s, limit {limit}s): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
        if !pass {
            red.push(i + 1);
        }
    }
    assert!(red.is_empty(), "failed criteria: {red:?}");
}
