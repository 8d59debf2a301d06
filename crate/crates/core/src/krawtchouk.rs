//! Classical Krawtchouk polynomials, the Krawtchouk difference operator and
//! its four families of quasi-polynomial eigenfunctions.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{binomial, factorial, pochhammer, pow};
use crate::algebra::{int, Polynomial, QuasiPolynomial, QuasiRational, Rational};
use crate::error::{Error, Result};
use crate::report::{Case, Params, Report};

/// Which of the four eigen-pair families (and, later, which Darboux seed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    One,
    Two,
    Three,
    Four,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::One, Family::Two, Family::Three, Family::Four];

    pub fn new(j: i64) -> Result<Self> {
        match j {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            3 => Ok(Family::Three),
            4 => Ok(Family::Four),
            _ => Err(Error::InvalidFamily(j)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
            Family::Four => 4,
        }
    }

    /// Families 3 and 4 carry the geometric factor `((p-1)/p)^x`.
    pub fn is_geometric(self) -> bool {
        matches!(self, Family::Three | Family::Four)
    }

    /// Families 2 and 4 carry the factor `(x-N)_{N+1}`.
    pub fn has_pochhammer_factor(self) -> bool {
        matches!(self, Family::Two | Family::Four)
    }

    /// Eigenvalue `lambda^{(j)}_n`.
    pub fn eigenvalue(self, n: i64, big_n: i64) -> i64 {
        match self {
            Family::One => -n,
            Family::Two => -big_n - n - 1,
            Family::Three => -big_n + n,
            Family::Four => n + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `(p, N)` with `0 < p < 1` and `N >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KrawtchoukParams {
    p: Rational,
    big_n: i64,
}

impl KrawtchoukParams {
    pub fn new(p: Rational, big_n: i64) -> Result<Self> {
        if !(p.is_positive() && p < Rational::one()) {
            return Err(Error::InvalidParams(format!("p = {p} must lie strictly between 0 and 1")));
        }
        if big_n < 1 {
            return Err(Error::InvalidParams(format!("N = {big_n} must be a positive integer")));
        }
        Ok(Self { p, big_n })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `N`.
    pub fn big_n(&self) -> i64 {
        self.big_n
    }

    /// `N` as a rational, for the general-parameter constructors.
    pub fn a(&self) -> Rational {
        int(self.big_n)
    }

    /// `(p - 1)/p`, the ratio of the geometric eigenfunctions.
    pub fn rho(&self) -> Rational {
        rho(&self.p)
    }

    pub fn to_params(&self) -> Params {
        Params::new().with("p", &self.p).with("N", self.big_n)
    }
}

pub fn rho(p: &Rational) -> Rational {
    (p - Rational::one()) / p
}

/// Monic `K_n(x; p, a)` from the terminating hypergeometric sum
/// `sum_j (-n)_j (-a+j)_{n-j} / j! * p^{n-j} * (-x)_j`.
///
/// `a` is any rational; `a = N` gives the classical polynomials.
pub fn krawtchouk(n: usize, p: &Rational, a: &Rational) -> Polynomial {
    let minus_n = int(-(n as i64));
    let mut acc = Polynomial::zero();
    let mut falling_x = Polynomial::one(); // (-x)_j
    for j in 0..=n {
        let c = pochhammer(&minus_n, j) * pochhammer(&(int(j as i64) - a), n - j) / factorial(j as u64)
            * pow(p, (n - j) as i64);
        acc = &acc + &falling_x.scale(&c);
        falling_x = &falling_x * &Polynomial::new(vec![int(j as i64), int(-1)]);
    }
    acc
}

/// `K_n(x; p, a)` by iterating the three-term recurrence from `K_0 = 1`,
/// `K_1 = x - a p`.
pub fn krawtchouk_by_recurrence(n: usize, p: &Rational, a: &Rational) -> Polynomial {
    let q = Rational::one() - p;
    let mut prev = Polynomial::zero();
    let mut cur = Polynomial::one();
    for k in 0..n {
        let kq = int(k as i64);
        let b = p * (a - &kq) + &kq * &q;
        let u = (a + Rational::one() - &kq) * &kq * p * &q;
        let next = &(&cur * &Polynomial::linear(-b)) - &prev.scale(&u);
        prev = cur;
        cur = next;
    }
    cur
}

/// `K_n(x + shift; p, a)` for integer `a`.
pub(crate) fn kraw_shifted(n: usize, p: &Rational, a: i64, shift: i64) -> Polynomial {
    krawtchouk(n, p, &int(a)).shift(shift)
}

/// Binomial weight `C(N,x) p^x (1-p)^(N-x)` on `x in {0..N}`.
pub fn weight(x: i64, params: &KrawtchoukParams) -> Result<Rational> {
    binomial_weight(x, params.p(), params.big_n())
}

pub(crate) fn binomial_weight(x: i64, p: &Rational, big_n: i64) -> Result<Rational> {
    if !(0..=big_n).contains(&x) {
        return Err(Error::OutOfGrid { x, n: big_n });
    }
    Ok(binomial(big_n as u64, x as u64) * pow(p, x) * pow(&(Rational::one() - p), big_n - x))
}

/// `h_n = (-1)^n (-N)_n n! p^n (1-p)^n`.
pub fn norm_h(n: i64, params: &KrawtchoukParams) -> Result<Rational> {
    let big_n = params.big_n();
    if !(0..=big_n).contains(&n) {
        return Err(Error::OutOfRange { index: n, n: big_n });
    }
    Ok(classical_norm(n as usize, params.p(), big_n))
}

pub(crate) fn classical_norm(n: usize, p: &Rational, big_n: i64) -> Rational {
    let pq = p * (Rational::one() - p);
    pow(&int(-1), n as i64) * pochhammer(&int(-big_n), n) * factorial(n as u64) * pow(&pq, n as i64)
}

/// `L f = p(N-x)(T - I) f + x(1-p)(T^{-1} - I) f`. The base of `f` is kept.
pub fn apply_l(f: &QuasiPolynomial, params: &KrawtchoukParams) -> QuasiPolynomial {
    let p = params.p();
    let q = Rational::one() - p;
    let big_n = int(params.big_n());
    let up = Polynomial::new(vec![p * &big_n, -p.clone()]); // p(N - x)
    let down = Polynomial::new(vec![Rational::zero(), q]); // x(1 - p)
    let fwd = &f.shift(1).poly().clone() - f.poly();
    let back = &f.shift(-1).poly().clone() - f.poly();
    let poly = &(&up * &fwd) + &(&down * &back);
    QuasiPolynomial::new(f.base().clone(), poly).expect("base is nonzero")
}

/// `L` on quasi-rational functions (used to compare against `B∘F + mu`).
pub fn apply_l_rational(f: &QuasiRational, params: &KrawtchoukParams) -> QuasiRational {
    let p = params.p();
    let q = Rational::one() - p;
    let up = Polynomial::new(vec![p * int(params.big_n()), -p.clone()]);
    let down = Polynomial::new(vec![Rational::zero(), q]);
    let fwd = f.shift(1).sub(f).expect("same base");
    let back = f.shift(-1).sub(f).expect("same base");
    fwd.mul_poly(&up).add(&back.mul_poly(&down)).expect("same base")
}

/// One eigen-pair `(lambda^{(j)}_n, phi^{(j)}_n = xi^{(j)} P^{(j)}_n)` of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenPair {
    pub family: Family,
    pub n: usize,
    pub lambda: i64,
    #[serde(with = "crate::algebra::rational::serde_string")]
    pub xi_base: Rational,
    pub xi_poly: Polynomial,
    /// `P^{(j)}_n`.
    pub poly: Polynomial,
    pub phi: QuasiPolynomial,
}

pub fn eigen_pair(family: Family, n: usize, params: &KrawtchoukParams) -> EigenPair {
    let p = params.p();
    let q = Rational::one() - p;
    let big_n = params.big_n();
    let nn = n as i64;
    let dioph = Polynomial::rising(-big_n, (big_n + 1) as usize); // (x-N)_{N+1}
    let (xi_base, xi_poly, poly, phi) = match family {
        Family::One => {
            let k = kraw_shifted(n, p, big_n, 0);
            (Rational::one(), Polynomial::one(), k.clone(), QuasiPolynomial::from(k))
        }
        Family::Two => (
            Rational::one(),
            dioph,
            kraw_shifted(n, p, -big_n - 2, -big_n - 1),
            QuasiPolynomial::from(kraw_shifted(n + big_n as usize + 1, p, big_n, 0)),
        ),
        Family::Three => {
            let k = kraw_shifted(n, &q, big_n, 0);
            let phi = QuasiPolynomial::new(params.rho(), k.clone()).expect("rho != 0");
            (params.rho(), Polynomial::one(), k, phi)
        }
        Family::Four => (
            params.rho(),
            dioph,
            kraw_shifted(n, &q, -big_n - 2, -big_n - 1),
            QuasiPolynomial::new(params.rho(), kraw_shifted(n + big_n as usize + 1, &q, big_n, 0))
                .expect("rho != 0"),
        ),
    };
    EigenPair { family, n, lambda: family.eigenvalue(nn, big_n), xi_base, xi_poly, poly, phi }
}

/// The symmetry relations of the classical family. The reflection identity
/// is checked as a polynomial identity; the three that only hold on the grid
/// are checked pointwise for `x in {0..N}`.
pub fn check_symmetries(params: &KrawtchoukParams, n_max: usize) -> Report {
    let p = params.p();
    let q = Rational::one() - p;
    let big_n = params.big_n();
    let n_max = n_max.min(big_n as usize);
    let mut report = Report::new("symmetries");
    let base = params.to_params();

    for n in 0..=n_max {
        let nn = n as i64;
        let pr = || base.clone().with("n", n);

        // K_n(x;1-p,N) = (-1)^n K_n(N-x;p,N)
        let lhs = kraw_shifted(n, &q, big_n, 0);
        let rhs = kraw_shifted(n, p, big_n, 0)
            .compose_affine(&int(-1), &int(big_n))
            .scale(&pow(&int(-1), nn));
        report.push(Case::identity("dual-1", pr(), &lhs, &rhs));

        for x in 0..=big_n {
            let kx = |deg: i64, at: i64| kraw_shifted(deg as usize, p, big_n, 0).eval_int(at);
            let pr = || pr().with("x", x);

            // (-N)_x p^x K_n(x) = (-N)_n p^n K_x(n)
            let lhs = pochhammer(&int(-big_n), x as usize) * pow(p, x) * kx(nn, x);
            let rhs = pochhammer(&int(-big_n), n) * pow(p, nn) * kx(x, nn);
            report.push(Case::identity("dual-2", pr(), &lhs, &rhs));

            // K_{N-n}(x) = K_n(N-x) (N-n)!/n! (p-1)^(x-n) (-1)^N p^(N-x-n), cross-multiplied
            let lhs = kx(big_n - nn, x);
            let rhs = kx(nn, big_n - x) * factorial((big_n - nn) as u64) / factorial(n as u64)
                * pow(&(p - Rational::one()), x - nn)
                * pow(&int(-1), big_n)
                * pow(p, big_n - x - nn);
            report.push(Case::identity("dual-3", pr(), &lhs, &rhs));

            // ((p-1)/p)^x K_n(x;1-p,N) = (p(1-p))^n (-N)_n / (p^N (-N)_{N-n}) K_{N-n}(x;p,N)
            let lhs = pow(&params.rho(), x) * kraw_shifted(n, &q, big_n, 0).eval_int(x);
            let rhs = pow(&(p * &q), nn) * pochhammer(&int(-big_n), n)
                / (pow(p, big_n) * pochhammer(&int(-big_n), (big_n - nn) as usize))
                * kx(big_n - nn, x);
            report.push(Case::identity("dual-4", pr(), &lhs, &rhs));
        }
    }
    report
}

/// The four shift/parameter variants of the recurrence, as polynomial
/// identities in `x`.
pub fn check_shift_variants(params: &KrawtchoukParams, n_max: usize) -> Report {
    let p = params.p();
    let q = Rational::one() - p;
    let big_n = params.big_n();
    let k = |n: i64, a: i64, shift: i64| -> Polynomial {
        if n < 0 {
            Polynomial::zero()
        } else {
            kraw_shifted(n as usize, p, a, shift)
        }
    };
    let mut report = Report::new("shift-variants");
    for n in 0..=n_max as i64 {
        let pr = || params.to_params().with("n", n);
        let nq = int(n);

        // (x-N) K_n(x+1) = K_{n+1} + (2n-N)(1-p) K_n + n(n-N-1)(1-p)^2 K_{n-1}
        let lhs = &Polynomial::linear(int(-big_n)) * &k(n, big_n, 1);
        let rhs = &(&k(n + 1, big_n, 0) + &k(n, big_n, 0).scale(&(int(2 * n - big_n) * &q)))
            + &k(n - 1, big_n, 0).scale(&(int(n * (n - big_n - 1)) * &q * &q));
        report.push(Case::identity("shift-1", pr(), &lhs, &rhs));

        // K_n(x+1;p,N) = K_n(x;p,N) + n K_{n-1}(x;p,N-1)
        let lhs = k(n, big_n, 1);
        let rhs = &k(n, big_n, 0) + &k(n - 1, big_n - 1, 0).scale(&nq);
        report.push(Case::identity("shift-2", pr(), &lhs, &rhs));

        // K_n(x+1;p,N+1) = K_n(x;p,N) + n(1-p) K_{n-1}(x;p,N)
        let lhs = k(n, big_n + 1, 1);
        let rhs = &k(n, big_n, 0) + &k(n - 1, big_n, 0).scale(&(&nq * &q));
        report.push(Case::identity("shift-3", pr(), &lhs, &rhs));

        // K_n(x;p,N+1) = K_n(x;p,N) - n p K_{n-1}(x;p,N)
        let lhs = k(n, big_n + 1, 0);
        let rhs = &k(n, big_n, 0) - &k(n - 1, big_n, 0).scale(&(&nq * p));
        report.push(Case::identity("shift-4", pr(), &lhs, &rhs));
    }
    report
}

/// Splits `K_n = K_{N+1} * Q_{n-N-1}` for `n > N`, where
/// `Q_m(x) = K_m(x-N-1; p, -N-2)` and `K_{N+1}(x) = x(x-1)...(x-N)`.
pub fn factorization_q(n: usize, params: &KrawtchoukParams) -> Result<(Polynomial, Polynomial)> {
    let big_n = params.big_n();
    if (n as i64) <= big_n {
        return Err(Error::NotInRange { n: n as i64, big_n });
    }
    let p = params.p();
    let head = kraw_shifted((big_n + 1) as usize, p, big_n, 0);
    let tail = kraw_shifted(n - big_n as usize - 1, p, -big_n - 2, -big_n - 1);
    if head != Polynomial::rising(-big_n, (big_n + 1) as usize) {
        return Err(Error::Invariant(format!("K_(N+1) is not x(x-1)...(x-N): {head}")));
    }
    if &head * &tail != kraw_shifted(n, p, big_n, 0) {
        return Err(Error::Invariant(format!("K_{n} != K_(N+1) Q_(n-N-1)")));
    }
    Ok((head, tail))
}

/// Sum of `w(x) K_n(x) K_m(x)` over the grid, by direct summation.
pub fn classical_gram(n: usize, m: usize, params: &KrawtchoukParams) -> Rational {
    let p = params.p();
    let big_n = params.big_n();
    let kn = kraw_shifted(n, p, big_n, 0);
    let km = kraw_shifted(m, p, big_n, 0);
    (0..=big_n).fold(Rational::zero(), |acc, x| {
        acc + weight(x, params).expect("on grid") * kn.eval_int(x) * km.eval_int(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn params(p: Rational, n: i64) -> KrawtchoukParams {
        KrawtchoukParams::new(p, n).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        let half = rat(1, 2);
        assert_eq!(krawtchouk(0, &half, &int(2)), Polynomial::one());
        assert_eq!(krawtchouk(1, &half, &int(2)), Polynomial::from_ints(&[-1, 1]));
        assert_eq!(krawtchouk(3, &half, &int(2)), Polynomial::from_ints(&[0, 2, -3, 1]));
        assert_eq!(
            krawtchouk_by_recurrence(2, &half, &int(2)),
            Polynomial::new(vec![rat(1, 2), int(-2), int(1)])
        );
        assert_eq!(krawtchouk_by_recurrence(3, &half, &int(2)), krawtchouk(3, &half, &int(2)));
    }

    #[test]
    fn params_are_validated() {
        assert!(KrawtchoukParams::new(rat(1, 2), 0).is_err());
        assert!(KrawtchoukParams::new(int(1), 3).is_err());
        assert!(KrawtchoukParams::new(int(0), 3).is_err());
        assert!(KrawtchoukParams::new(rat(-1, 3), 3).is_err());
    }

    #[test]
    fn weight_and_norm_examples() {
        let pr = params(rat(1, 2), 2);
        assert_eq!(weight(0, &pr).unwrap(), rat(1, 4));
        assert_eq!(weight(1, &pr).unwrap(), rat(1, 2));
        assert_eq!(weight(3, &pr), Err(Error::OutOfGrid { x: 3, n: 2 }));
        assert_eq!(norm_h(0, &pr).unwrap(), int(1));
        assert_eq!(norm_h(1, &pr).unwrap(), rat(1, 2));
        assert!(matches!(norm_h(3, &pr), Err(Error::OutOfRange { .. })));

        let pr = params(rat(1, 3), 4);
        let total = (0..=4).fold(Rational::zero(), |acc, x| acc + weight(x, &pr).unwrap());
        assert_eq!(total, int(1));
    }

    #[test]
    fn norms_match_summation() {
        let pr = params(rat(1, 3), 5);
        for n in 0..=5 {
            assert_eq!(classical_gram(n, n, &pr), norm_h(n as i64, &pr).unwrap());
        }
    }

    #[test]
    fn operator_examples() {
        let pr = params(rat(2, 5), 3);
        assert!(apply_l(&QuasiPolynomial::from(Polynomial::one()), &pr).is_zero());
        let k1 = QuasiPolynomial::from(krawtchouk(1, pr.p(), &pr.a()));
        assert_eq!(apply_l(&k1, &pr), k1.scale(&int(-1)));
        let phi = eigen_pair(Family::Two, 0, &pr).phi;
        assert_eq!(phi.poly(), &Polynomial::rising(-3, 4));
        assert_eq!(apply_l(&phi, &pr), phi.scale(&int(-4)));
    }

    #[test]
    fn eigen_pair_examples() {
        let pr = params(rat(1, 2), 2);
        let e = eigen_pair(Family::One, 2, &pr);
        assert_eq!(e.lambda, -2);
        assert_eq!(e.phi.poly(), &krawtchouk(2, &rat(1, 2), &int(2)));

        let e = eigen_pair(Family::Two, 0, &pr);
        assert_eq!(e.lambda, -3);
        assert_eq!(e.phi.poly(), &Polynomial::from_ints(&[0, 2, -3, 1]));

        let e = eigen_pair(Family::Three, 0, &pr);
        assert_eq!(e.lambda, -2);
        assert_eq!(e.phi.base(), &int(-1));
        assert_eq!(e.phi.poly(), &Polynomial::one());
    }

    #[test]
    fn simplified_eigenfunctions_match_xi_times_p() {
        let pr = params(rat(1, 3), 3);
        for family in Family::ALL {
            for n in 0..4 {
                let e = eigen_pair(family, n, &pr);
                assert_eq!(e.phi.base(), &e.xi_base);
                assert_eq!(e.phi.poly(), &(&e.xi_poly * &e.poly), "family {family} n {n}");
            }
        }
    }

    #[test]
    fn invalid_family_index() {
        assert_eq!(Family::new(5), Err(Error::InvalidFamily(5)));
        assert_eq!(Family::new(3).unwrap(), Family::Three);
    }

    #[test]
    fn factorization_examples() {
        let pr = params(rat(1, 2), 2);
        let (head, tail) = factorization_q(3, &pr).unwrap();
        assert_eq!(head, Polynomial::from_ints(&[0, 2, -3, 1]));
        assert_eq!(tail, Polynomial::one());
        let (head, tail) = factorization_q(4, &pr).unwrap();
        assert_eq!(tail, krawtchouk(1, &rat(1, 2), &int(-4)).shift(-3));
        assert_eq!(&head * &tail, krawtchouk(4, &rat(1, 2), &int(2)));
        assert!(factorization_q(5, &params(rat(1, 3), 3)).is_ok());
        assert_eq!(factorization_q(2, &pr), Err(Error::NotInRange { n: 2, big_n: 2 }));
    }

    #[test]
    fn symmetry_and_shift_reports_pass() {
        let pr = params(rat(1, 3), 4);
        let r = check_symmetries(&pr, 4);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = check_shift_variants(&params(rat(1, 2), 3), 5);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn printed_reflection_constant_fails_on_grid() {
        // ((1-p)/p)^n in place of (p(1-p))^n breaks the relation for n >= 1.
        let pr = params(rat(1, 3), 4);
        let (p, q) = (pr.p().clone(), Rational::one() - pr.p());
        let n = 1usize;
        let x = 2i64;
        let lhs = pow(&pr.rho(), x) * krawtchouk(n, &q, &int(4)).eval_int(x);
        let printed = pow(&(&q / &p), 1) * pochhammer(&int(-4), n)
            / (pow(&p, 4) * pochhammer(&int(-4), 3))
            * krawtchouk(3, &p, &int(4)).eval_int(x);
        assert_ne!(lhs, printed);
    }
}
