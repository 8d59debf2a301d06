//! The `(j, d) = (2, 2)` family in full: determinant form, weight and norm,
//! and the seven-term recurrence with its closed-form coefficients.

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{pochhammer, pow};
use crate::algebra::{int, pochhammer_signed, Polynomial, Rational};
use crate::error::Result;
use crate::krawtchouk::{kraw_shifted, Family, KrawtchoukParams};
use crate::report::{Case, Report};
use crate::xkrawtchouk::{xk, xk_member, IndexSet};

use super::orthogonality::{orthogonality_data, type2_added_norm, verify_orthogonality};
use super::recurrence::{recurrence_coefficients, recurrence_coefficients_operator_method, Coefficients};

/// `q_3(x) = K_3(x-N; p, -N-1) - K_3(-1-N; p, -N-1)`, vanishing at `x = -1`.
pub fn q3(params: &KrawtchoukParams) -> Polynomial {
    let big_n = params.big_n();
    let k3 = kraw_shifted(3, params.p(), -big_n - 1, -big_n);
    let at = k3.eval_int(-1);
    &k3 - &Polynomial::constant(at)
}

/// Closed form of `c_{n,n+l}` for `l` in `{-3,-2,-1,1,2,3}`.
pub fn closed_form(n: i64, l: i64, params: &KrawtchoukParams) -> Option<Rational> {
    let p = params.p();
    let big_n = params.big_n();
    let m = big_n - n;
    let pq = p * (Rational::one() - p);
    let pm1 = p - Rational::one();
    let two_p_1 = int(2) * p - Rational::one();
    let v = match l {
        3 => int(1),
        2 => int(3 * (m + 1)) * two_p_1,
        1 => int(3 * (m + 2)) * (int(m + 1) - int(4 * big_n - 5 * n + 2) * &pq),
        -1 => {
            int(3 * (m + 1) * -n) * &pm1 * p * int(m + 4) * (int(m + 2) - int(4 * big_n - 5 * n + 7) * &pq)
        }
        -2 => {
            int(3) * pochhammer(&int(m + 1), 2) * pochhammer(&int(-n), 2) * pow(&pm1, 2) * pow(p, 2)
                * int(m + 5)
                * two_p_1
        }
        -3 => {
            pochhammer(&int(m + 1), 2) * pochhammer(&int(-n), 3) * pow(&pm1, 3) * pow(p, 3) * int(m + 6)
        }
        _ => return None,
    };
    Some(v)
}

/// `c_{n,n} = -sum_{l != 0} (n-N)_l (n-N-3)_l / (n-N-2)_l p^l c_{n,n+l}`,
/// from evaluating the recurrence at the zero `x = -1` of `q_3`. With
/// `s = n - N` the weight is used in the cancelled form
/// `(s+l-2)(s+l-1) / ((s-2)(s-1)) (s-3)_l p^l` (signed Pochhammer), which is
/// finite on the whole index set; `None` at a pole.
pub fn diagonal_from_neighbours(n: i64, coeffs: &Coefficients, params: &KrawtchoukParams) -> Option<Rational> {
    let s = n - params.big_n();
    let front = int((s - 2) * (s - 1));
    if front.is_zero() {
        return None;
    }
    weighted_diagonal(n, coeffs, params, |l| {
        Some(int((s + l - 2) * (s + l - 1)) / &front * pochhammer_signed(&int(s - 3), l)?)
    })
}

/// The same sum with the weights `(3-N)_l (-N)_l / (1-N)_l p^l` taken
/// literally, i.e. the `n = 3` instance of [`diagonal_from_neighbours`].
pub fn diagonal_printed(n: i64, coeffs: &Coefficients, params: &KrawtchoukParams) -> Option<Rational> {
    let s = 3 - params.big_n();
    weighted_diagonal(n, coeffs, params, |l| {
        let bottom = pochhammer_signed(&int(s - 2), l)?;
        if bottom.is_zero() {
            return None;
        }
        Some(pochhammer_signed(&int(s), l)? * pochhammer_signed(&int(s - 3), l)? / bottom)
    })
}

fn weighted_diagonal(
    n: i64,
    coeffs: &Coefficients,
    params: &KrawtchoukParams,
    weight: impl Fn(i64) -> Option<Rational>,
) -> Option<Rational> {
    let p = params.p();
    let mut acc = Rational::zero();
    for l in [-3i64, -2, -1, 1, 2, 3] {
        let c = coeffs.get(&(n + l)).cloned().unwrap_or_else(Rational::zero);
        if c.is_zero() {
            continue;
        }
        acc += weight(l)? * pow(p, l) * c;
    }
    Some(-acc)
}

/// `[(N-x) K_2(x-N-1; p,-N-2) K_n(x+1) + (1+x) K_2(x-N; p,-N-2) K_n(x)] / (N+3-n)`.
pub fn determinant_form(n: i64, params: &KrawtchoukParams) -> Polynomial {
    let p = params.p();
    let big_n = params.big_n();
    let k2 = kraw_shifted(2, p, -big_n - 2, -big_n - 1);
    let kn = kraw_shifted(n as usize, p, big_n, 0);
    let left = &(&Polynomial::new(vec![int(big_n), int(-1)]) * &k2) * &kn.shift(1);
    let right = &(&Polynomial::linear(int(1)) * &k2.shift(1)) * &kn;
    (&left + &right).scale(&int(big_n + 3 - n).recip())
}

/// Everything about the `(2,2)` family at one `(p, N)`.
pub fn xkraw22_family(params: &KrawtchoukParams) -> Report {
    let mut report = Report::new("family22");
    let big_n = params.big_n();
    let base = || params.to_params().with("j", 2).with("d", 2);

    for n in 0..=big_n {
        match xk(Family::Two, 2, n, params) {
            Ok(k) => report.push(Case::identity("determinant-form", base().with("n", n), &determinant_form(n, params), &k.poly)),
            Err(e) => report.push(Case::error("determinant-form", base().with("n", n), e)),
        }
    }

    let k2 = kraw_shifted(2, params.p(), -big_n - 2, 0);
    for y in -big_n - 2..=0 {
        let v = k2.eval_int(y);
        report.push(Case::check("k2-positive", base().with("y", y), v.is_positive(), Some(v.to_string())));
    }

    match orthogonality_data(Family::Two, 2, params) {
        Ok(data) => {
            let witness = data.weight.iter().find(|w| !w.value.is_positive());
            report.push(Case::check(
                "weight-positive",
                base(),
                witness.is_none(),
                witness.map(|w| format!("x = {}: {}", w.x, w.value)),
            ));
            let added = big_n + 3;
            report.push(Case::values(
                "added-norm",
                base().with("n", added),
                data.norm(added).unwrap_or(&Rational::zero()),
                &type2_added_norm(2, params.p(), big_n),
            ));
            report.merge(verify_orthogonality(&data, None));
        }
        Err(e) => report.push(Case::error("weight-positive", base(), e)),
    }

    for n in [big_n + 1, big_n + 2] {
        match xk(Family::Two, 2, n, params) {
            Ok(k) => {
                let zero = (-1..=big_n).all(|x| k.poly.eval_int(x).is_zero());
                report.push(Case::check("vanishes-on-grid", base().with("n", n), zero, None));
            }
            Err(e) => report.push(Case::error("vanishes-on-grid", base().with("n", n), e)),
        }
    }

    let q = q3(params);
    for n in IndexSet::new(Family::Two, 2, big_n).iter() {
        if let Err(e) = recurrence_checks(n, &q, params, &mut report) {
            report.push(Case::error("recurrence", base().with("n", n), e));
        }
    }
    report
}

fn recurrence_checks(n: i64, q: &Polynomial, params: &KrawtchoukParams, report: &mut Report) -> Result<()> {
    let big_n = params.big_n();
    let base = || params.to_params().with("j", 2).with("d", 2).with("n", n);
    let coeffs = recurrence_coefficients(Family::Two, 2, n, params, Some(q))?;
    let get = |l: i64| coeffs.get(&(n + l)).cloned().unwrap_or_else(Rational::zero);

    for l in [3i64, 2, 1, -1, -2, -3] {
        if n + l < 0 {
            continue;
        }
        let expected = closed_form(n, l, params).expect("offset in range");
        report.push(Case::values(&format!("c[{l}]"), base(), &get(l), &expected));
    }
    match diagonal_from_neighbours(n, &coeffs, params) {
        Some(c0) => report.push(Case::values("c[0]", base(), &get(0), &c0)),
        None => report.push(Case::error("c[0]", base(), "weight pole inside the index set")),
    }
    if *params.p() == Rational::new(1.into(), 2.into()) {
        let zero = get(2).is_zero() && (n < 2 || get(-2).is_zero());
        report.push(Case::check("half-symmetric", base(), zero, None));
    }

    // the member reached only by the double sum has no Casorati form
    if n != big_n + 3 {
        let op = recurrence_coefficients_operator_method(Family::Two, 2, n, params, Some(q))?;
        let detail = (op != coeffs).then(|| format!("operator method {op:?}, direct {coeffs:?}"));
        report.push(Case::check("operator-method", base(), op == coeffs, detail));
    }
    let rebuilt = coeffs.iter().try_fold(Polynomial::zero(), |acc, (&l, c)| {
        xk_member(Family::Two, 2, l, params).map(|k| &acc + &k.poly.scale(c))
    })?;
    let lhs = q * &xk_member(Family::Two, 2, n, params)?.poly;
    report.push(Case::identity("recurrence", base(), &lhs, &rebuilt));
    Ok(())
}
