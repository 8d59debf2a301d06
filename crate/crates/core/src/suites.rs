//! The verification sweep behind `xkraw verify`: every identity family run
//! over a grid of `(p, N, j, d)`, in parallel, with deterministic output.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{int, rat, Polynomial, QuasiRational, Rational};
use crate::darboux::{
    nu_tilde,
    apply_x_operator_rational, backward, backward_quasi, forward, monomial_test_set, verify_factorization,
    DarbouxSeed,
};
use crate::error::{Error, Result};
use crate::krawtchouk::{
    apply_l, check_shift_variants, check_symmetries, classical_gram, eigen_pair, factorization_q, krawtchouk,
    krawtchouk_by_recurrence, norm_h, Family, KrawtchoukParams,
};
use crate::report::{Case, Report};
use crate::structure::recurrence::Coefficients;
use crate::structure::{
    orthogonality_data, polynomiality_equivalence_check, recurrence_coefficients,
    recurrence_coefficients_operator_method, resultant_lemma_check, span_membership, verify_orthogonality,
    xkraw22_family,
};
use crate::xkrawtchouk::{diophantine_check, kernel_psi, type_relations_check, xk, xk_by_forward, xk_member, IndexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Factorization,
    Eigen,
    Orthogonality,
    Diophantine,
    Symmetries,
    Recurrence,
    Resultant,
    Span,
    Positivity,
    Family22,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Factorization,
        Suite::Eigen,
        Suite::Orthogonality,
        Suite::Diophantine,
        Suite::Symmetries,
        Suite::Recurrence,
        Suite::Resultant,
        Suite::Span,
        Suite::Positivity,
        Suite::Family22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Factorization => "factorization",
            Suite::Eigen => "eigen",
            Suite::Orthogonality => "orthogonality",
            Suite::Diophantine => "diophantine",
            Suite::Symmetries => "symmetries",
            Suite::Recurrence => "recurrence",
            Suite::Resultant => "resultant",
            Suite::Span => "span",
            Suite::Positivity => "positivity",
            Suite::Family22 => "family22",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite {s:?}")))
    }
}

/// What to sweep. `families` and `ds` restrict the per-seed suites; the
/// per-`(p, N)` suites ignore them.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub suites: Vec<Suite>,
    pub ps: Vec<Rational>,
    pub big_ns: Vec<i64>,
    pub families: Vec<Family>,
    pub ds: Vec<usize>,
    /// Flip the sign of `eta` in every Darboux seed.
    pub inject_fault: bool,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            ps: vec![rat(1, 3), rat(1, 2), rat(3, 5)],
            big_ns: (1..=5).collect(),
            families: Family::ALL.to_vec(),
            ds: (0..=3).collect(),
            inject_fault: false,
            jobs: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        for p in &self.ps {
            KrawtchoukParams::new(p.clone(), 1)?;
        }
        if let Some(n) = self.big_ns.iter().find(|&&n| n < 1) {
            return Err(Error::InvalidParams(format!("N must be positive, got {n}")));
        }
        if self.suites.is_empty() {
            return Err(Error::InvalidParams("no suite selected".into()));
        }
        Ok(())
    }

    fn seeds(&self, params: &KrawtchoukParams) -> Vec<DarbouxSeed> {
        let mut out = Vec::new();
        for &family in &self.families {
            for &d in &self.ds {
                if let Ok(seed) = DarbouxSeed::new(family, d, params) {
                    out.push(if self.inject_fault { seed.with_flipped_eta() } else { seed });
                }
            }
        }
        out
    }
}

/// Runs the sweep. Cases come back in task order (suite, p, N, then the
/// suite's own order), whatever the number of threads.
pub fn run(config: &SweepConfig) -> Result<Report> {
    config.validate()?;
    let mut tasks: Vec<(Suite, Option<KrawtchoukParams>)> = Vec::new();
    for &suite in &config.suites {
        if suite == Suite::Resultant {
            tasks.extend(config.ps.iter().map(|p| (suite, KrawtchoukParams::new(p.clone(), 1).ok())));
            continue;
        }
        for p in &config.ps {
            for &big_n in &config.big_ns {
                tasks.push((suite, Some(KrawtchoukParams::new(p.clone(), big_n)?)));
            }
        }
    }
    let work = || -> Vec<Report> {
        tasks.par_iter().map(|(suite, params)| run_one(*suite, params.as_ref().expect("set"), config)).collect()
    };
    let reports = if config.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?
            .install(work)
    };
    let name = config.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
    let mut report = Report::new(&name);
    for r in reports {
        report.merge(r);
    }
    Ok(report)
}

pub fn run_one(suite: Suite, params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    match suite {
        Suite::Factorization => factorization_suite(params, config),
        Suite::Eigen => eigen_suite(params, config),
        Suite::Orthogonality => orthogonality_suite(params, config),
        Suite::Diophantine => diophantine_suite(params, config),
        Suite::Symmetries => symmetries_suite(params),
        Suite::Recurrence => recurrence_suite(params, config),
        Suite::Resultant => resultant_suite(params.p()),
        Suite::Span => span_suite(params, config),
        Suite::Positivity => positivity_suite(params, config),
        Suite::Family22 => family22_suite(params),
    }
}

fn same(a: &QuasiRational, b: &QuasiRational) -> bool {
    (a.is_zero() && b.is_zero()) || a.sub(b).is_ok_and(|diff| diff.is_zero())
}

fn push_same(report: &mut Report, id: &str, params: crate::report::Params, lhs: &QuasiRational, rhs: &QuasiRational) {
    let pass = same(lhs, rhs);
    let detail = (!pass).then(|| lhs.to_string());
    let mut case = Case::check(id, params, pass, detail);
    if !pass {
        case.rhs = Some(rhs.to_string());
    }
    report.push(case);
}

/// `B∘F + lambda_d = L` on `x^k`, `k <= 2N`, and on one eigenfunction of each type.
pub fn factorization_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("factorization");
    let mut set = monomial_test_set(2 * params.big_n() as usize);
    set.extend(Family::ALL.iter().map(|&f| eigen_pair(f, 1, params).phi));
    for seed in config.seeds(params) {
        report.merge(verify_factorization(&seed, &set));
    }
    report
}

/// Classical eigen-equations, the X eigen-equations `F∘B[K^_n] = (-n-lambda_d) K^_n`
/// including both special members, `B[K^_n] = nu~_n K_n`, the Casorati form
/// against `F[K_n]/nu_n`, the kernels of `F` and `B`, and `L^{(j,d)}` on the
/// images of the other eigenfunctions.
pub fn eigen_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("eigen");
    let big_n = params.big_n();
    let p = params.p();
    for family in Family::ALL {
        for n in 0..=(big_n + 2) as usize {
            let pair = eigen_pair(family, n, params);
            let lhs = apply_l(&pair.phi, params);
            let rhs = pair.phi.scale(&int(pair.lambda));
            report.push(Case::identity(
                "classical-eigen",
                params.to_params().with("j", family).with("n", n),
                &lhs,
                &rhs,
            ));
        }
    }

    for seed in config.seeds(params) {
        let family = seed.family();
        let d = seed.d() as i64;
        let base = || seed.to_params();

        for n in -d - 1..=big_n + d + 1 {
            let k = match xk_member(family, seed.d(), n, params) {
                Ok(k) => k,
                Err(Error::DegenerateNu { .. }) => {
                    report.push(Case::skip("x-eigen", base().with("n", n), "nu vanishes"));
                    continue;
                }
                Err(Error::InvalidIndex { .. }) => continue,
                Err(e) => {
                    report.push(Case::error("x-eigen", base().with("n", n), e));
                    continue;
                }
            };
            if k.n != n {
                // the special constructor returned the other special index
                continue;
            }
            let kq: QuasiRational = k.poly.clone().into();
            let b = backward(&seed, &k.poly);
            let fb = seed.forward_rational(&b);
            let ev = int(-n - family.eigenvalue(d, big_n));
            push_same(&mut report, "x-eigen", base().with("n", n), &fb, &kq.scale(&ev));

            let kn: QuasiRational = if n >= 0 {
                krawtchouk(n as usize, p, &params.a()).scale(&int(seed.nu_tilde(n))).into()
            } else {
                QuasiRational::zero()
            };
            push_same(&mut report, "back-mapping", base().with("n", n), &b, &kn);

            if n >= 0 && seed.nu(n) != 0 {
                let generic = xk_by_forward(&seed, n);
                match (generic, xk(family, seed.d(), n, params)) {
                    (Ok(g), Ok(c)) => {
                        report.push(Case::identity("forward-casorati", base().with("n", n), &g, &c.poly))
                    }
                    (Err(e), _) | (_, Err(e)) => report.push(Case::error("forward-casorati", base().with("n", n), e)),
                }
            }
        }

        report.push(Case::check("kernel-F", base(), forward(&seed, seed.chi()).is_zero(), None));
        let psi = kernel_psi(family, params);
        report.push(Case::check("kernel-B", base(), backward_quasi(&seed, &psi).is_zero(), None));

        // F maps eigenfunctions of L to eigenfunctions of L^{(j,d)}
        for other in Family::ALL {
            for n in 0..=2usize {
                let pair = eigen_pair(other, n, params);
                let image = forward(&seed, &pair.phi);
                if image.is_zero() {
                    continue;
                }
                let lhs = apply_x_operator_rational(&seed, &image);
                push_same(
                    &mut report,
                    "intertwining",
                    base().with("from", other).with("n", n),
                    &lhs,
                    &image.scale(&int(pair.lambda)),
                );
            }
        }
    }
    report
}

/// Classical orthogonality on `{0..N}` and the exceptional weights and norms.
pub fn orthogonality_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("orthogonality");
    let big_n = params.big_n();
    for n in 0..=big_n {
        for m in n..=big_n {
            let sum = classical_gram(n as usize, m as usize, params);
            let expected = if n == m { norm_h(n, params).expect("in range") } else { Rational::zero() };
            report.push(Case::identity("classical-orthogonality", params.to_params().with("n", n).with("m", m), &sum, &expected));
        }
    }
    for &family in &config.families {
        for &d in &config.ds {
            if matches!(family, Family::One | Family::Three) && d as i64 > big_n {
                continue;
            }
            let pr = params.to_params().with("j", family).with("d", d);
            match orthogonality_data(family, d, params) {
                Ok(data) => report.merge(verify_orthogonality(&data, None)),
                Err(Error::WeightPole { x }) => {
                    report.push(Case::skip("orthogonality", pr, format!("weight pole at x = {x}")))
                }
                Err(e) => report.push(Case::error("orthogonality", pr, e)),
            }
        }
    }
    report
}

pub fn diophantine_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("diophantine");
    let d_max = config.ds.iter().copied().max().unwrap_or(0);
    report.merge(diophantine_check(params, d_max, 2));
    for &d in &config.ds {
        report.merge(type_relations_check(d, params, params.big_n() + d as i64 + 1));
    }
    report
}

/// Symmetries, shift variants, the recurrence oracle and `K_n = K_{N+1} Q`.
pub fn symmetries_suite(params: &KrawtchoukParams) -> Report {
    let mut report = Report::new("symmetries");
    let big_n = params.big_n() as usize;
    report.merge(check_symmetries(params, big_n));
    report.merge(check_shift_variants(params, big_n + 2));
    for n in 0..=big_n + 3 {
        let sum = krawtchouk(n, params.p(), &params.a());
        let trr = krawtchouk_by_recurrence(n, params.p(), &params.a());
        report.push(Case::identity("three-term", params.to_params().with("n", n), &sum, &trr));
    }
    for n in big_n + 1..=big_n + 3 {
        let pr = params.to_params().with("n", n);
        match factorization_q(n, params) {
            Ok(_) => report.push(Case::check("factor-q", pr, true, None)),
            Err(e) => report.push(Case::error("factor-q", pr, e)),
        }
    }
    report
}

/// `q_pi K^_n = sum c_{n,l} K^_l` for every member, with the band limited to
/// `|l - n| <= deg q_pi`, and agreement with the operator method.
pub fn recurrence_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("recurrence");
    for &family in &config.families {
        for &d in &config.ds {
            if matches!(family, Family::One | Family::Three) && d as i64 > params.big_n() {
                continue;
            }
            let base = || params.to_params().with("j", family).with("d", d);
            let width = d as i64 + 1;
            for n in IndexSet::new(family, d, params.big_n()).iter() {
                let pr = || base().with("n", n);
                let direct = match recurrence_coefficients(family, d, n, params, None) {
                    Ok(c) => c,
                    Err(e) => {
                        report.push(Case::error("recurrence", pr(), e));
                        continue;
                    }
                };
                let outside = direct.keys().find(|&&l| (l - n).abs() > width);
                report.push(Case::check("recurrence", pr(), outside.is_none(), outside.map(|l| format!("c[{l}] nonzero"))));
                match recurrence_coefficients_operator_method(family, d, n, params, None) {
                    Ok(op) => {
                        // the operator method cannot see the index that B annihilates
                        let blind = |l: i64| {
                            nu_tilde(family, d as i64, l, params.big_n()) == 0 || (family == Family::One && l == d as i64)
                        };
                        let direct: Coefficients = direct.into_iter().filter(|(l, _)| !blind(*l)).collect();
                        let detail = (op != direct).then(|| format!("operator {op:?}, direct {direct:?}"));
                        report.push(Case::check("operator-method", pr(), op == direct, detail));
                    }
                    Err(Error::ExcludedIndex { .. }) => {
                        report.push(Case::skip("operator-method", pr(), "excluded index"))
                    }
                    Err(e) => report.push(Case::error("operator-method", pr(), e)),
                }
            }
        }
    }
    report
}

/// The resultant lemma for `n <= 5`, `a in {-3..6} + {7/2}`.
pub fn resultant_suite(p: &Rational) -> Report {
    let a_range: Vec<Rational> = (-3..=6).map(int).chain([rat(7, 2)]).collect();
    resultant_lemma_check(p, &a_range, 5)
}

/// Members lie in the span, `K_d`-contaminated inputs (type 1, `d > 0`) do not, and
/// the polynomiality of `B[f]` and `L^{(j,d)}[f]` agree on monomials.
pub fn span_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("span");
    for seed in config.seeds(params) {
        let family = seed.family();
        let d = seed.d();
        let base = || seed.to_params();
        let kd = krawtchouk(d, params.p(), &params.a());
        for n in IndexSet::new(family, d, params.big_n()).iter() {
            let member = match xk_member(family, d, n, params) {
                Ok(k) => k.poly,
                Err(e) => {
                    report.push(Case::error("span-member", base().with("n", n), e));
                    continue;
                }
            };
            report.push(Case::check("span-member", base().with("n", n), span_membership(&seed, &member), None));
            if family == Family::One && d > 0 {
                let dirty = &member + &kd;
                report.push(Case::check(
                    "span-contaminated",
                    base().with("n", n),
                    !span_membership(&seed, &dirty),
                    None,
                ));
            }
        }
        let sample: Vec<Polynomial> = (0..=2 * d + 3).map(|k| Polynomial::monomial(Rational::one(), k)).collect();
        report.merge(polynomiality_equivalence_check(&seed, &sample));
    }
    report
}

/// Sign bookkeeping of the weights. Type 1 has constant sign exactly for
/// `d in {0, N}`; type 2 is positive for even `d`. Types 3 and 4 follow from
/// the grid relations.
pub fn positivity_suite(params: &KrawtchoukParams, config: &SweepConfig) -> Report {
    let mut report = Report::new("positivity");
    let big_n = params.big_n();
    let default_ds = config.ds == SweepConfig::default().ds;
    let ds: Vec<usize> = if default_ds { (0..=4).collect() } else { config.ds.clone() };
    for &family in &config.families {
        for &d in &ds {
            let di = d as i64;
            if matches!(family, Family::One | Family::Three) && di > big_n {
                continue;
            }
            let pr = params.to_params().with("j", family).with("d", d);
            let data = match orthogonality_data(family, d, params) {
                Ok(data) => data,
                Err(Error::WeightPole { x }) => {
                    let pass = matches!(family, Family::One | Family::Three) || d % 2 == 1;
                    report.push(if pass {
                        Case::skip("weight-sign", pr, format!("weight pole at x = {x}"))
                    } else {
                        Case::check("weight-positive", pr, false, Some(format!("pole at x = {x}")))
                    });
                    continue;
                }
                Err(e) => {
                    report.push(Case::error("weight-sign", pr, e));
                    continue;
                }
            };
            match family {
                Family::One | Family::Three => {
                    let expected = di == 0 || di == big_n;
                    report.push(Case::identity(
                        "weight-sign",
                        pr.with("constant_sign", data.positive_definite),
                        &data.positive_definite,
                        &expected,
                    ));
                }
                Family::Two | Family::Four if d % 2 == 0 => {
                    let witness = data.weight.iter().find(|w| !w.value.is_positive());
                    report.push(Case::check(
                        "weight-positive",
                        pr,
                        witness.is_none(),
                        witness.map(|w| format!("x = {}: {}", w.x, w.value)),
                    ));
                }
                Family::Two | Family::Four => {
                    report.push(Case::skip("weight-positive", pr.with("constant_sign", data.positive_definite), "odd d"));
                }
            }
        }
    }
    report
}

/// The `(2,2)` family needs `N >= 3` for its seven-term band to fit.
pub fn family22_suite(params: &KrawtchoukParams) -> Report {
    if params.big_n() < 3 {
        return Report::from_cases("family22", [Case::skip("family22", params.to_params(), "N < 3")]);
    }
    xkraw22_family(params)
}
