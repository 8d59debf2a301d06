//! Resultants of `K_n(x)` and `K_n(x+1)`: the two reduction relations, the
//! closed form, and the common-zero criterion.

use num_traits::{One, ToPrimitive};

use crate::algebra::rational::pow;
use crate::algebra::{int, resultant, Polynomial, Rational};
use crate::krawtchouk::krawtchouk;
use crate::report::{Case, Params, Report};

fn k(n: usize, p: &Rational, a: &Rational, shift: i64) -> Polynomial {
    krawtchouk(n, p, a).shift(shift)
}

/// `n^n prod_{k=1}^{n-1} k^k (k-a)^k (p(1-p))^(n(n-1)/2)`.
pub fn resultant_closed_form(n: usize, p: &Rational, a: &Rational) -> Rational {
    let ni = n as i64;
    let mut acc = pow(&int(ni), ni);
    for kk in 1..ni {
        acc *= pow(&int(kk), kk) * pow(&(int(kk) - a), kk);
    }
    acc * pow(&(p * (Rational::one() - p)), ni * (ni - 1) / 2)
}

/// `Res(K_n(x; p, a), K_n(x+1; p, a))` from the Sylvester determinant.
pub fn resultant_k_k(n: usize, p: &Rational, a: &Rational) -> Rational {
    resultant(&k(n, p, a, 0), &k(n, p, a, 1)).expect("nonzero polynomials")
}

/// Checks, for `1 <= n <= n_max` and every `a`:
/// `Res(K_n(x;a), K_n(x+1;a)) = n^n Res(K_{n-1}(x;a-1), K_n(x+1;a))`,
/// `Res(K_n(x;a-1), K_{n+1}(x+1;a)) = ((n-a) n p(1-p))^n Res(K_{n-1}(x;a-1), K_n(x+1;a))`,
/// the closed form, and that `K_n(x)`, `K_n(x+1)` share a zero exactly when
/// `a` is one of `1..n-1`.
pub fn resultant_lemma_check(p: &Rational, a_range: &[Rational], n_max: usize) -> Report {
    let mut report = Report::new("resultant");
    let pq = p * (Rational::one() - p);
    for a in a_range {
        let a1 = a - Rational::one();
        for n in 1..=n_max {
            let ni = n as i64;
            let pr = || Params::new().with("p", p).with("a", a).with("n", n);
            let base = resultant(&k(n - 1, p, &a1, 0), &k(n, p, a, 1)).expect("nonzero");
            let rkk = resultant_k_k(n, p, a);

            report.push(Case::identity("resultant-relation-1", pr(), &rkk, &(pow(&int(ni), ni) * &base)));

            let lhs = resultant(&k(n, p, &a1, 0), &k(n + 1, p, a, 1)).expect("nonzero");
            let factor = (int(ni) - a) * int(ni) * &pq;
            report.push(Case::identity("resultant-relation-2", pr(), &lhs, &(pow(&factor, ni) * &base)));

            report.push(Case::identity("resultant-closed-form", pr(), &rkk, &resultant_closed_form(n, p, a)));

            let shares_zero = !Polynomial::gcd(&k(n, p, a, 0), &k(n, p, a, 1)).is_constant();
            let predicted = a.is_integer() && a.to_integer().to_i64().is_some_and(|v| (1..ni).contains(&v));
            report.push(Case::identity("common-zero", pr(), &shares_zero, &predicted));
        }
    }
    report
}
