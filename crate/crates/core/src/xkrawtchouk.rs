//! Exceptional Krawtchouk polynomials `K^{(j,d)}_n`: Casorati construction,
//! the two special members, kernel functions of `B`, the grid relations
//! between types and the Diophantine factorizations.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{pochhammer, pow, serde_string};
use crate::algebra::{int, Polynomial, QuasiPolynomial, Rational};
use crate::darboux::{forward, nu, DarbouxSeed};
use crate::error::{Error, Result};
use crate::krawtchouk::{kraw_shifted, krawtchouk, rho, Family, KrawtchoukParams};
use crate::report::{Case, Params, Report};

/// One constructed exceptional polynomial with its labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XKrawtchouk {
    pub j: Family,
    pub d: usize,
    pub n: i64,
    #[serde(with = "serde_string")]
    pub p: Rational,
    #[serde(rename = "N")]
    pub big_n: i64,
    pub degree: usize,
    pub poly: Polynomial,
}

/// Degree of `K^{(j,d)}_n`: `n+d-1`, `n+d`, `n+d`, `n+d+1`.
pub fn expected_degree(family: Family, d: usize, n: i64) -> i64 {
    let base = n + d as i64;
    match family {
        Family::One => base - 1,
        Family::Two | Family::Three => base,
        Family::Four => base + 1,
    }
}

/// The index set `X_{(j,d)}` on which the finite orthogonality holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSet {
    pub indices: Vec<i64>,
}

impl IndexSet {
    pub fn new(family: Family, d: usize, big_n: i64) -> Self {
        let d = d as i64;
        let mut indices: Vec<i64> = (0..=big_n).collect();
        match family {
            Family::One => indices.retain(|&n| n != d),
            Family::Three => indices.retain(|&n| n != big_n - d),
            Family::Two => indices.push(big_n + d + 1),
            Family::Four => indices.insert(0, -d - 1),
        }
        Self { indices }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.indices.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.indices.iter().copied()
    }
}

/// The coefficients `(A, B)` with `F^{(j,d)}[f] = A(x) f(x+1) + B(x) f(x)`
/// after the geometric factors of `chi` and `eta` cancel. Valid for any
/// integer parameter `a` in place of `N`.
pub fn casorati_pair(family: Family, d: usize, p: &Rational, a: i64) -> (Polynomial, Polynomial) {
    let q = Rational::one() - p;
    let x_plus_1 = Polynomial::linear(int(1));
    let x_minus_a = Polynomial::linear(int(-a));
    match family {
        Family::One => {
            let k = kraw_shifted(d, p, a, 0);
            (k.scale(&int(-1)), k.shift(1))
        }
        Family::Two => {
            let r = kraw_shifted(d, p, -a - 2, -a - 1);
            (&x_minus_a * &r.scale(&int(-1)), &x_plus_1 * &r.shift(1))
        }
        Family::Three => {
            let s = kraw_shifted(d, &q, a, 0);
            (s.scale(p), s.shift(1).scale(&q))
        }
        Family::Four => {
            let u = kraw_shifted(d, &q, -a - 2, -a - 1);
            (&x_minus_a * &u.scale(p), &x_plus_1 * &u.shift(1).scale(&q))
        }
    }
}

/// `F^{(j,d)}[K_n] / nu_n` from the reduced Casorati form, at general integer
/// parameter `a`. The two special members are not reachable this way.
pub fn xk_general(family: Family, d: usize, n: i64, p: &Rational, a: i64) -> Result<Polynomial> {
    let j = family.index();
    if family == Family::Four && n == -(d as i64) - 1 {
        return Err(Error::SpecialMemberRequired { j, d: d as u32, n });
    }
    if n < 0 {
        return Err(Error::InvalidIndex { j, d: d as u32, n });
    }
    let v = nu(family, d as i64, n, a);
    if v == 0 {
        return match family {
            Family::Two => Err(Error::SpecialMemberRequired { j, d: d as u32, n }),
            _ => Err(Error::DegenerateNu { j, d: d as u32, n }),
        };
    }
    let (big_a, big_b) = casorati_pair(family, d, p, a);
    let k = krawtchouk(n as usize, p, &int(a));
    let cas = &(&big_a * &k.shift(1)) + &(&big_b * &k);
    Ok(cas.scale(&int(v).recip()))
}

/// `K^{(2,d)}_{a+d+1}` as the finite double sum
/// `sum_{j,k<=d} (-d)_j (-d)_k (p-1)^(d-k) p^(d-j) / (j! k!)
///   (-a-d-1)_(d-j) (-a-d-1)_(d-k) K_{a+k+j+1}(x+k+1; p, a+k+j+1)`.
pub fn xk_special_general(d: usize, p: &Rational, a: i64) -> Polynomial {
    let minus_d = int(-(d as i64));
    let low = int(-a - d as i64 - 1);
    let pm1 = p - Rational::one();
    let mut acc = Polynomial::zero();
    for k in 0..=d {
        for j in 0..=d {
            let c = pochhammer(&minus_d, j) * pochhammer(&minus_d, k) * pow(&pm1, (d - k) as i64)
                * pow(p, (d - j) as i64)
                * pochhammer(&low, d - j)
                * pochhammer(&low, d - k)
                / (crate::algebra::rational::factorial(j as u64)
                    * crate::algebra::rational::factorial(k as u64));
            let deg = a + (k + j) as i64 + 1;
            let term = kraw_shifted(deg as usize, p, deg, k as i64 + 1);
            acc = &acc + &term.scale(&c);
        }
    }
    acc
}

fn finish(family: Family, d: usize, n: i64, params: &KrawtchoukParams, poly: Polynomial) -> Result<XKrawtchouk> {
    let expected = expected_degree(family, d, n);
    let degree = poly.degree().map(|g| g as i64).unwrap_or(-1);
    if degree != expected || !poly.is_monic() {
        return Err(Error::Invariant(format!(
            "K^({family},{d})_{n} has degree {degree} (expected {expected}) and leading coefficient {}",
            poly.leading_coefficient()
        )));
    }
    Ok(XKrawtchouk {
        j: family,
        d,
        n,
        p: params.p().clone(),
        big_n: params.big_n(),
        degree: degree as usize,
        poly,
    })
}

fn check_seed_range(family: Family, d: usize, params: &KrawtchoukParams) -> Result<()> {
    if matches!(family, Family::One | Family::Three) && d as i64 > params.big_n() {
        return Err(Error::InvalidParams(format!(
            "type {family} needs 0 <= d <= N, got d = {d}, N = {}",
            params.big_n()
        )));
    }
    Ok(())
}

/// `K^{(j,d)}_n` by the Casorati construction; monic of the expected degree.
pub fn xk(family: Family, d: usize, n: i64, params: &KrawtchoukParams) -> Result<XKrawtchouk> {
    check_seed_range(family, d, params)?;
    let poly = xk_general(family, d, n, params.p(), params.big_n())?;
    finish(family, d, n, params, poly)
}

/// The two members outside the Casorati construction:
/// `K^{(4,d)}_{-d-1} = 1` and `K^{(2,d)}_{N+d+1}` (double sum).
pub fn xk_special(family: Family, d: usize, params: &KrawtchoukParams) -> Result<XKrawtchouk> {
    match family {
        Family::Four => finish(family, d, -(d as i64) - 1, params, Polynomial::one()),
        Family::Two => {
            let n = params.big_n() + d as i64 + 1;
            finish(family, d, n, params, xk_special_general(d, params.p(), params.big_n()))
        }
        _ => Err(Error::InvalidFamily(family.index() as i64)),
    }
}

/// Any member of the family, dispatching to the special constructor when
/// `n` is one of the special indices.
pub fn xk_member(family: Family, d: usize, n: i64, params: &KrawtchoukParams) -> Result<XKrawtchouk> {
    match xk(family, d, n, params) {
        Err(Error::SpecialMemberRequired { .. }) => xk_special(family, d, params),
        other => other,
    }
}

/// `F^{(j,d)}[K_n] / nu_n` through the generic seed (quasi-polynomial
/// arithmetic). Independent of [`casorati_pair`]; used to cross-check it.
pub fn xk_by_forward(seed: &DarbouxSeed, n: i64) -> Result<Polynomial> {
    let v = seed.nu(n);
    if v == 0 || n < 0 {
        return Err(Error::DegenerateNu { j: seed.family().index(), d: seed.d() as u32, n });
    }
    let k = krawtchouk(n as usize, seed.params().p(), &seed.params().a());
    let out = forward(seed, &k.into());
    out.to_polynomial()
        .map(|poly| poly.scale(&int(v).recip()))
        .ok_or_else(|| Error::Invariant(format!("F[K_{n}] is not a polynomial: {out}")))
}

/// Basis of `Ker B^{(j,d)}`.
pub fn kernel_psi(family: Family, params: &KrawtchoukParams) -> QuasiPolynomial {
    let big_n = params.big_n();
    let falling = Polynomial::rising_reflected(0, big_n as usize).scale(&pow(&int(-1), big_n));
    let (base, poly) = match family {
        Family::One => (params.rho(), falling),
        Family::Two => (params.rho(), Polynomial::one()),
        Family::Three => (Rational::one(), falling),
        Family::Four => (Rational::one(), Polynomial::one()),
    };
    QuasiPolynomial::new(base, poly).expect("nonzero base")
}

/// `gamma_{n,d,N} = p^(d-N) (p-1)^d (-N)_d / ((-1)^d (-N)_(N-d)) (n+d-N)`.
pub fn gamma(n: i64, d: usize, p: &Rational, big_n: i64) -> Rational {
    let di = d as i64;
    pow(p, di - big_n) * pow(&(p - Rational::one()), di) * pochhammer(&int(-big_n), d)
        / (pow(&int(-1), di) * pochhammer(&int(-big_n), (big_n - di) as usize))
        * int(n + di - big_n)
}

/// `gamma*_{n,d,N} = p^n (p-1)^(n-N+1) (-N)_n / ((-1)^(d+1) (-N)_(N-n)) (n+d+1)`.
pub fn gamma_star(n: i64, d: usize, p: &Rational, big_n: i64) -> Rational {
    let di = d as i64;
    pow(p, n) * pow(&(p - Rational::one()), n - big_n + 1) * pochhammer(&int(-big_n), n as usize)
        / (pow(&int(-1), di + 1) * pochhammer(&int(-big_n), (big_n - n) as usize))
        * int(n + di + 1)
}

fn push_identity(report: &mut Report, id: &str, params: Params, lhs: Result<Polynomial>, rhs: Result<Polynomial>) {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => report.push(Case::identity(id, params, &l, &r)),
        (Err(e), _) | (_, Err(e)) => report.push(Case::error(id, params, e)),
    }
}

/// Relations between types: `K^{(1,d+N+1)}_n = K^{(2,d)}_n` and
/// `K^{(3,d+N+1)}_n = K^{(4,d)}_n` once the common factor `(x-N+1)_N` that the
/// type 1/3 `eta` leaves in place is divided out, and the grid relations
/// between types 3/1 and 4/2.
pub fn type_relations_check(d: usize, params: &KrawtchoukParams, n_max: i64) -> Report {
    let p = params.p();
    let big_n = params.big_n();
    let r = rho(p);
    let di = d as i64;
    let mut report = Report::new("type-relations");
    let base = || params.to_params().with("d", d);
    let common = Polynomial::rising(1 - big_n, big_n as usize);
    let strip = |r: Result<Polynomial>| r.and_then(|q| q.divide_exact(&common));

    for n in 0..=n_max {
        if n != big_n + di + 1 {
            push_identity(
                &mut report,
                "type-1-2",
                base().with("n", n),
                strip(xk_general(Family::One, d + big_n as usize + 1, n, p, big_n)),
                xk_member(Family::Two, d, n, params).map(|x| x.poly),
            );
        }
        push_identity(
            &mut report,
            "type-3-4",
            base().with("n", n),
            strip(xk_general(Family::Three, d + big_n as usize + 1, n, p, big_n)),
            xk_member(Family::Four, d, n, params).map(|x| x.poly),
        );
    }

    if di <= big_n {
        // K^{(3,d)}_n(x) = p gamma rho^(-x) K^{(1,N-d)}_n(x) on {0..N-1}
        for n in 0..=big_n {
            let lhs = xk(Family::Three, d, n, params);
            let g = p * gamma(n, d, p, big_n);
            let rhs = if n == big_n - di {
                Ok(None)
            } else {
                xk(Family::One, big_n as usize - d, n, params).map(Some)
            };
            match (lhs, rhs) {
                (Ok(l), Ok(rv)) => {
                    for x in 0..big_n {
                        let right = match &rv {
                            Some(k1) => &g * pow(&r, -x) * k1.poly.eval_int(x),
                            None => Rational::zero(),
                        };
                        report.push(Case::identity(
                            "grid-1-3",
                            base().with("n", n).with("x", x),
                            &l.poly.eval_int(x),
                            &right,
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => report.push(Case::error("grid-1-3", base().with("n", n), e)),
            }
        }
    }

    // K^{(4,d)}_n(x) = gamma* rho^x K^{(2,d)}_{N-n}(N-x-1) on {-1..N}
    for n in 0..=big_n {
        let lhs = xk_member(Family::Four, d, n, params);
        let rhs = xk_member(Family::Two, d, big_n - n, params);
        let g = gamma_star(n, d, p, big_n);
        match (lhs, rhs) {
            (Ok(l), Ok(k2)) => {
                for x in -1..=big_n {
                    let right = &g * pow(&r, x) * k2.poly.eval_int(big_n - x - 1);
                    report.push(Case::identity(
                        "grid-2-4",
                        base().with("n", n).with("x", x),
                        &l.poly.eval_int(x),
                        &right,
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => report.push(Case::error("grid-2-4", base().with("n", n), e)),
        }
    }
    // n = -d-1: the constant is fixed at x = -1 and checked on the rest.
    match xk_special(Family::Two, d, params) {
        Ok(k2) => {
            let at = |x: i64| pow(&r, x) * k2.poly.eval_int(big_n - x - 1);
            let c = at(-1).recip();
            for x in 0..=big_n {
                report.push(Case::identity(
                    "grid-2-4",
                    base().with("n", -di - 1).with("x", x),
                    &Rational::one(),
                    &(&c * at(x)),
                ));
            }
        }
        Err(e) => report.push(Case::error("grid-2-4", base().with("n", -di - 1), e)),
    }
    report
}

/// The Diophantine factorizations. `n` runs over `N+1..=N+n_extra` for the
/// `n > N` identities, `d` over `0..=d_max` and, for the `d > N` identities,
/// over `N+1..=N+d_max`.
pub fn diophantine_check(params: &KrawtchoukParams, d_max: usize, n_extra: i64) -> Report {
    let p = params.p();
    let big_n = params.big_n();
    let bn = big_n as usize;
    let m_par = -big_n - 2;
    let head = Polynomial::rising(1 - big_n, bn); // (x-N+1)_N
    let head2 = Polynomial::rising(-big_n, bn + 2); // (x-N)_{N+2}
    let head3 = &Polynomial::rising_reflected(0, bn) * &Polynomial::rising_reflected(-1, bn + 2);
    let head4 = Polynomial::rising(1, bn + 2); // (x+1)_{N+2}
    let at_neg = |family: Family, d: usize, m: i64| -> Result<Polynomial> {
        xk_general(family, d, m, p, m_par).map(|q| q.shift(-big_n - 1))
    };
    let member = |family: Family, d: usize, n: i64| xk_member(family, d, n, params).map(|x| x.poly);
    let times = |h: &Polynomial, r: Result<Polynomial>| r.map(|q| h * &q);
    let mut report = Report::new("diophantine");
    let pr = |d: usize, n: i64| params.to_params().with("d", d).with("n", n);

    for d in 0..=d_max {
        let di = d as i64;
        for n in big_n + 1..=big_n + n_extra {
            let m = n - big_n - 1;
            if n != di {
                let lhs = xk_general(Family::One, d, n, p, big_n);
                push_identity(&mut report, "dioph-1-2", pr(d, n), lhs, times(&head, at_neg(Family::Two, d, m)));
            }
            if n != big_n + di + 1 {
                let lhs = member(Family::Two, d, n);
                push_identity(&mut report, "dioph-2-1", pr(d, n), lhs, times(&head2, at_neg(Family::One, d, m)));
            }
            let lhs = xk_general(Family::Three, d, n, p, big_n);
            push_identity(&mut report, "dioph-3-4", pr(d, n), lhs, times(&head, at_neg(Family::Four, d, m)));
            let lhs = member(Family::Four, d, n);
            push_identity(&mut report, "dioph-4-3", pr(d, n), lhs, times(&head2, at_neg(Family::Three, d, m)));
        }
        if di <= big_n {
            let lhs = member(Family::Three, d, big_n - di);
            push_identity(&mut report, "dioph-3-top", pr(d, big_n - di), lhs, Ok(head.clone()));
        }
    }

    for d in bn + 1..=bn + d_max {
        let di = d as i64;
        let low = d - bn - 1;
        for n in 0..=big_n + n_extra {
            if n != di {
                let lhs = xk_general(Family::One, d, n, p, big_n);
                push_identity(&mut report, "dioph-d-1", pr(d, n), lhs, times(&head, member(Family::Two, low, n)));
            }
            let lhs = xk_general(Family::Three, d, n, p, big_n);
            push_identity(&mut report, "dioph-d-3", pr(d, n), lhs, times(&head, member(Family::Four, low, n)));
        }
        for n in big_n + 1..=big_n + n_extra {
            let m = n - big_n - 1;
            if n != di {
                let lhs = xk_general(Family::One, d, n, p, big_n);
                push_identity(&mut report, "dioph-nd-1", pr(d, n), lhs, times(&head3, at_neg(Family::One, low, m)));
            }
            let lhs = xk_general(Family::Three, d, n, p, big_n);
            push_identity(&mut report, "dioph-nd-3", pr(d, n), lhs, times(&head3, at_neg(Family::Three, low, m)));
        }
        // auxiliary pair at parameter -N-2; m = d-N-1 is the degenerate index
        for m in 0..n_extra.max(1) {
            if m != low as i64 {
                let lhs = xk_general(Family::Two, d, m, p, m_par);
                let rhs = xk_general(Family::One, low, m, p, m_par);
                push_identity(&mut report, "dioph-last-2", pr(d, m), lhs, times(&head4, rhs));
            }
            let lhs = xk_general(Family::Four, d, m, p, m_par);
            let rhs = xk_general(Family::Three, low, m, p, m_par);
            push_identity(&mut report, "dioph-last-4", pr(d, m), lhs, times(&head4, rhs));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn params(p: Rational, n: i64) -> KrawtchoukParams {
        KrawtchoukParams::new(p, n).unwrap()
    }

    #[test]
    fn construction_examples() {
        let pr = params(rat(1, 2), 2);
        assert_eq!(xk(Family::One, 0, 2, &pr).unwrap().poly, Polynomial::new(vec![rat(-1, 2), int(1)]));
        assert_eq!(xk(Family::One, 1, 0, &params(rat(2, 7), 4)).unwrap().poly, Polynomial::one());
        let k = xk(Family::Four, 0, 0, &pr).unwrap();
        assert_eq!(k.degree, 1);
        assert!(k.poly.is_monic());
    }

    #[test]
    fn construction_errors() {
        let pr = params(rat(1, 3), 3);
        assert!(matches!(xk(Family::One, 1, 1, &pr), Err(Error::DegenerateNu { .. })));
        assert!(matches!(xk(Family::Two, 1, 5, &pr), Err(Error::SpecialMemberRequired { .. })));
        assert!(matches!(xk(Family::Four, 1, -2, &pr), Err(Error::SpecialMemberRequired { .. })));
        assert!(matches!(xk(Family::One, 4, 0, &pr), Err(Error::InvalidParams(_))));
        assert_eq!(xk_special(Family::One, 1, &pr), Err(Error::InvalidFamily(1)));
    }

    #[test]
    fn special_members() {
        let pr = params(rat(1, 2), 2);
        assert_eq!(xk_special(Family::Four, 3, &pr).unwrap().poly, Polynomial::one());
        let k = xk_special(Family::Two, 0, &pr).unwrap();
        assert_eq!(k.n, 3);
        assert_eq!(k.poly, krawtchouk(3, &rat(1, 2), &int(3)).shift(1));
        let k = xk_special(Family::Two, 2, &params(rat(1, 3), 3)).unwrap();
        assert_eq!(k.degree, 3 + 4 + 1);
    }

    #[test]
    fn index_sets() {
        assert_eq!(IndexSet::new(Family::One, 1, 3).indices, vec![0, 2, 3]);
        assert_eq!(IndexSet::new(Family::Three, 1, 3).indices, vec![0, 1, 3]);
        assert_eq!(IndexSet::new(Family::Two, 1, 3).indices, vec![0, 1, 2, 3, 5]);
        assert_eq!(IndexSet::new(Family::Four, 1, 3).indices, vec![-2, 0, 1, 2, 3]);
        assert!(IndexSet::new(Family::Four, 1, 3).contains(-2));
    }

    #[test]
    fn kernel_functions() {
        let pr = params(rat(1, 2), 3);
        assert_eq!(kernel_psi(Family::Four, &pr), QuasiPolynomial::from(Polynomial::one()));
        let psi = kernel_psi(Family::Two, &pr);
        assert_eq!(psi.base(), &int(-1));
        assert_eq!(psi.poly(), &Polynomial::one());
        // psi^{(3)} is K^{(3,d)}_{N-d} = (x-N+1)_N
        assert_eq!(kernel_psi(Family::Three, &pr).poly(), &xk(Family::Three, 1, 2, &pr).unwrap().poly);
    }

    #[test]
    fn reduced_form_matches_generic_forward() {
        let pr = params(rat(3, 5), 3);
        for family in Family::ALL {
            for d in 0..=3 {
                let seed = DarbouxSeed::new(family, d, &pr).unwrap();
                for n in 0..=5 {
                    if seed.nu(n) == 0 {
                        continue;
                    }
                    assert_eq!(xk_by_forward(&seed, n).unwrap(), xk(family, d, n, &pr).unwrap().poly);
                }
            }
        }
    }

    #[test]
    fn relations_and_factorizations() {
        for (p, big_n) in [(rat(1, 3), 2), (rat(1, 2), 3)] {
            let pr = params(p, big_n);
            for d in 0..=2 {
                let r = type_relations_check(d, &pr, big_n + 2);
                assert!(r.passed(), "{:?}", r.failures().next());
            }
            let r = diophantine_check(&pr, 2, 3);
            assert!(r.passed(), "{:?}", r.failures().next());
        }
    }
}
