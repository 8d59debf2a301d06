//! Finite orthogonality of the exceptional families: weights, norms and
//! exact Gram sums.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{factorial, pow, serde_string};
use crate::algebra::{int, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::krawtchouk::{binomial_weight, classical_norm, kraw_shifted, rho, Family, KrawtchoukParams};
use crate::report::{Case, Report};
use crate::xkrawtchouk::{gamma, gamma_star, xk_member, xk_special, IndexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridValue {
    pub x: i64,
    #[serde(with = "serde_string")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormValue {
    pub n: i64,
    #[serde(with = "serde_string")]
    pub value: Rational,
}

/// Weight on the grid and norms on the index set of one `(j, d)` family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityData {
    pub j: Family,
    pub d: usize,
    #[serde(with = "serde_string")]
    pub p: Rational,
    #[serde(rename = "N")]
    pub big_n: i64,
    pub grid: Vec<i64>,
    pub weight: Vec<GridValue>,
    pub norms: Vec<NormValue>,
    pub index_set: IndexSet,
    pub positive_definite: bool,
}

impl OrthogonalityData {
    pub fn weight_at(&self, x: i64) -> Option<&Rational> {
        self.weight.iter().find(|w| w.x == x).map(|w| &w.value)
    }

    pub fn norm(&self, n: i64) -> Option<&Rational> {
        self.norms.iter().find(|h| h.n == n).map(|h| &h.value)
    }
}

/// `P^{(j)}_d`, the polynomial part of the seed.
pub fn seed_poly(family: Family, d: usize, p: &Rational, big_n: i64) -> Polynomial {
    let q = Rational::one() - p;
    match family {
        Family::One => kraw_shifted(d, p, big_n, 0),
        Family::Two => kraw_shifted(d, p, -big_n - 2, -big_n - 1),
        Family::Three => kraw_shifted(d, &q, big_n, 0),
        Family::Four => kraw_shifted(d, &q, -big_n - 2, -big_n - 1),
    }
}

fn type1_weight(x: i64, d: usize, p: &Rational, big_n: i64) -> Result<Rational> {
    let pd = seed_poly(Family::One, d, p, big_n);
    let den = pd.eval_int(x) * pd.eval_int(x + 1);
    if den.is_zero() {
        return Err(Error::WeightPole { x });
    }
    Ok(binomial_weight(x, p, big_n - 1)? / den)
}

fn type2_weight(x: i64, d: usize, p: &Rational, big_n: i64) -> Result<Rational> {
    let pd = seed_poly(Family::Two, d, p, big_n);
    let den = pd.eval_int(x) * pd.eval_int(x + 1);
    if den.is_zero() {
        return Err(Error::WeightPole { x });
    }
    Ok(binomial_weight(x + 1, p, big_n + 1)? / den)
}

/// `h_n / ((lambda_d - lambda_n) N p (1-p))` with `lambda_n = -n`.
fn type1_norm(n: i64, d: usize, p: &Rational, big_n: i64) -> Rational {
    classical_norm(n as usize, p, big_n) / (int(n - d as i64) * int(big_n) * p * (Rational::one() - p))
}

/// `(N+1) h_n / (lambda_n - lambda^{(2)}_d)` on `{0..N}`, and
/// `(-1)^d d! (N+1)! (N+d+1)! ((1-p)p)^(N+d+1)` at the added index.
fn type2_norm(n: i64, d: usize, p: &Rational, big_n: i64) -> Rational {
    let di = d as i64;
    if n == big_n + di + 1 {
        return type2_added_norm(d, p, big_n);
    }
    int(big_n + 1) * classical_norm(n as usize, p, big_n) / int(big_n + di + 1 - n)
}

pub fn type2_added_norm(d: usize, p: &Rational, big_n: i64) -> Rational {
    let di = d as i64;
    let pq = p * (Rational::one() - p);
    pow(&int(-1), di)
        * factorial(d as u64)
        * factorial((big_n + 1) as u64)
        * factorial((big_n + di + 1) as u64)
        * pow(&pq, big_n + di + 1)
}

/// Weight, norms, grid and positivity for type `j`, seed degree `d`.
///
/// Types 3 and 4 are obtained from types 1 and 2 through the grid relations:
/// `w^{(3,d)}(x) = rho^(2x) w^{(1,N-d)}(x)` and
/// `w^{(4,d)}(x) = rho^(-2x) w^{(2,d)}(N-1-x)`, `rho = (p-1)/p`.
pub fn orthogonality_data(family: Family, d: usize, params: &KrawtchoukParams) -> Result<OrthogonalityData> {
    let p = params.p();
    let big_n = params.big_n();
    if matches!(family, Family::One | Family::Three) && d as i64 > big_n {
        return Err(Error::InvalidParams(format!("type {family} needs 0 <= d <= N, got d = {d}")));
    }
    let r = rho(p);
    let index_set = IndexSet::new(family, d, big_n);
    let grid: Vec<i64> = match family {
        Family::One | Family::Three => (0..big_n).collect(),
        Family::Two | Family::Four => (-1..=big_n).collect(),
    };
    let dual = big_n as usize - d.min(big_n as usize);
    let weight_fn = |x: i64| -> Result<Rational> {
        match family {
            Family::One => type1_weight(x, d, p, big_n),
            Family::Two => type2_weight(x, d, p, big_n),
            Family::Three => Ok(pow(&r, 2 * x) * type1_weight(x, dual, p, big_n)?),
            Family::Four => Ok(pow(&r, -2 * x) * type2_weight(big_n - 1 - x, d, p, big_n)?),
        }
    };
    let weight = grid
        .iter()
        .map(|&x| weight_fn(x).map(|value| GridValue { x, value }))
        .collect::<Result<Vec<_>>>()?;

    // K^{(4,d)}_{-d-1} = c rho^x K^{(2,d)}_{N+d+1}(N-1-x) with c read off at x = -1.
    let special_ratio = || -> Result<Rational> {
        let k2 = xk_special(Family::Two, d, params)?.poly;
        Ok((r.recip() * k2.eval_int(big_n)).recip())
    };
    let norms = index_set
        .iter()
        .map(|n| {
            let value = match family {
                Family::One => type1_norm(n, d, p, big_n),
                Family::Two => type2_norm(n, d, p, big_n),
                Family::Three => {
                    let g = p * gamma(n, d, p, big_n);
                    &g * &g * type1_norm(n, dual, p, big_n)
                }
                Family::Four => {
                    let g = if n < 0 { special_ratio()? } else { gamma_star(n, d, p, big_n) };
                    &g * &g * type2_norm(big_n - n, d, p, big_n)
                }
            };
            Ok(NormValue { n, value })
        })
        .collect::<Result<Vec<_>>>()?;

    let first_sign = weight[0].value.signum();
    let positive_definite =
        weight.iter().all(|w| !w.value.is_zero() && w.value.signum() == first_sign);

    Ok(OrthogonalityData {
        j: family,
        d,
        p: p.clone(),
        big_n,
        grid,
        weight,
        norms,
        index_set,
        positive_definite,
    })
}

/// Exact Gram sums over the grid for every pair in the index set with
/// `n, m <= n_max`. Diagonal entries are compared with the norm formula and
/// keep both sides in the record.
pub fn verify_orthogonality(data: &OrthogonalityData, n_max: Option<i64>) -> Report {
    let params = KrawtchoukParams::new(data.p.clone(), data.big_n).expect("validated when built");
    let mut report = Report::new("orthogonality");
    let base = || params.to_params().with("j", data.j).with("d", data.d);
    let mut values: BTreeMap<i64, Vec<Rational>> = BTreeMap::new();
    for n in data.index_set.iter().filter(|&n| n_max.is_none_or(|m| n <= m)) {
        match xk_member(data.j, data.d, n, &params) {
            Ok(k) => {
                values.insert(n, data.grid.iter().map(|&x| k.poly.eval_int(x)).collect());
            }
            Err(e) => report.push(Case::error("orthogonality", base().with("n", n), e)),
        }
    }
    let gram = |a: &[Rational], b: &[Rational]| -> Rational {
        data.weight
            .iter()
            .zip(a.iter().zip(b))
            .fold(Rational::zero(), |acc, (w, (u, v))| acc + &w.value * u * v)
    };
    for (&n, vn) in &values {
        for (&m, vm) in values.range(n..) {
            let sum = gram(vn, vm);
            let pr = base().with("n", n).with("m", m);
            if n == m {
                let norm = data.norm(n).cloned().unwrap_or_else(Rational::zero);
                report.push(Case::values("orthogonality", pr, &sum, &norm));
            } else {
                report.push(Case::identity("orthogonality", pr, &sum, &Rational::zero()));
            }
        }
    }
    report
}
