//! Forward and backward Darboux operators built from a seed eigenfunction,
//! and the X-Krawtchouk operator `F∘B + mu`.

use num_traits::One;

use crate::algebra::{int, Polynomial, QuasiPolynomial, QuasiRational, Rational};
use crate::error::{Error, Result};
use crate::krawtchouk::{apply_l_rational, eigen_pair, Family, KrawtchoukParams};
use crate::report::{Case, Params, Report};

/// Seed `chi = phi^{(j)}_d` together with the decoupling factor `eta^{(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxSeed {
    family: Family,
    d: usize,
    params: KrawtchoukParams,
    mu: i64,
    chi: QuasiPolynomial,
    eta: QuasiPolynomial,
}

/// `eta^{(j)}(x)`: `-1`, `-(x-N+1)_N`, `p^{-x-1}(p-1)^x`, `p^{-x-1}(p-1)^x (x-N+1)_N`.
pub fn eta(family: Family, params: &KrawtchoukParams) -> QuasiPolynomial {
    let big_n = params.big_n();
    let tail = Polynomial::rising(1 - big_n, big_n as usize);
    let inv_p = params.p().recip();
    let (base, poly) = match family {
        Family::One => (Rational::one(), Polynomial::constant(int(-1))),
        Family::Two => (Rational::one(), tail.scale(&int(-1))),
        Family::Three => (params.rho(), Polynomial::constant(inv_p)),
        Family::Four => (params.rho(), tail.scale(&inv_p)),
    };
    QuasiPolynomial::new(base, poly).expect("nonzero base")
}

/// `nu^{(j,d)}_n`, the normalization that makes `F[K_n]` monic.
pub fn nu(family: Family, d: i64, n: i64, big_n: i64) -> i64 {
    match family {
        Family::One => d - n,
        Family::Two => d - n + big_n + 1,
        Family::Three | Family::Four => 1,
    }
}

/// `nu~^{(j,d)}_n` in `B[K^_n] = nu~ K_n`: 1 for types 1, 2 and
/// `lambda_n - lambda^{(j)}_d` for types 3, 4.
pub fn nu_tilde(family: Family, d: i64, n: i64, big_n: i64) -> i64 {
    match family {
        Family::One | Family::Two => 1,
        Family::Three | Family::Four => -n - family.eigenvalue(d, big_n),
    }
}

impl DarbouxSeed {
    pub fn new(family: Family, d: usize, params: &KrawtchoukParams) -> Result<Self> {
        if matches!(family, Family::One | Family::Three) && d as i64 > params.big_n() {
            return Err(Error::InvalidParams(format!(
                "type {family} seeds need 0 <= d <= N, got d = {d}, N = {}",
                params.big_n()
            )));
        }
        let pair = eigen_pair(family, d, params);
        Ok(Self {
            family,
            d,
            params: params.clone(),
            mu: pair.lambda,
            chi: pair.phi,
            eta: eta(family, params),
        })
    }

    /// The same seed with the sign of `eta` flipped. `B∘F` does not see the
    /// flip; `F` alone does. Used to check that the verifier catches faults.
    pub fn with_flipped_eta(mut self) -> Self {
        self.eta = self.eta.scale(&int(-1));
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn params(&self) -> &KrawtchoukParams {
        &self.params
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn chi(&self) -> &QuasiPolynomial {
        &self.chi
    }

    pub fn eta(&self) -> &QuasiPolynomial {
        &self.eta
    }

    pub fn nu(&self, n: i64) -> i64 {
        nu(self.family, self.d as i64, n, self.params.big_n())
    }

    pub fn nu_tilde(&self, n: i64) -> i64 {
        nu_tilde(self.family, self.d as i64, n, self.params.big_n())
    }

    pub fn to_params(&self) -> Params {
        self.params.to_params().with("j", self.family).with("d", self.d)
    }

    /// `F = eta^{-1} (chi(x) T - chi(x+1))` on a quasi-rational function.
    pub fn forward_rational(&self, g: &QuasiRational) -> QuasiRational {
        let rc = self.chi.base();
        let up = g.shift(1).mul_poly(self.chi.poly()).mul_geometric(rc).expect("nonzero base");
        let here = g.mul_poly(self.chi.shift(1).poly()).mul_geometric(rc).expect("nonzero base");
        up.sub(&here)
            .expect("same base")
            .div_poly(self.eta.poly())
            .and_then(|v| v.mul_geometric(&self.eta.base().recip()))
            .expect("eta is nonzero")
    }

    /// `B = chi^{-1} (p(N-x) - x(1-p) T^{-1}) eta` on a quasi-rational function.
    pub fn backward_rational(&self, g: &QuasiRational) -> QuasiRational {
        let p = self.params.p();
        let up = Polynomial::new(vec![p * int(self.params.big_n()), -p.clone()]);
        let down = Polynomial::new(vec![int(0), Rational::one() - p]);
        let h = g.mul_poly(self.eta.poly()).mul_geometric(self.eta.base()).expect("nonzero base");
        h.mul_poly(&up)
            .sub(&h.shift(-1).mul_poly(&down))
            .expect("same base")
            .div_poly(self.chi.poly())
            .and_then(|v| v.mul_geometric(&self.chi.base().recip()))
            .expect("chi is nonzero")
    }
}

/// `F^{(j,d)}[f]`; the result base is `f.base * chi.base / eta.base`.
pub fn forward(seed: &DarbouxSeed, f: &QuasiPolynomial) -> QuasiRational {
    seed.forward_rational(&f.clone().into())
}

/// `B^{(j,d)}[f]` for a polynomial `f`. The geometric parts of `chi` and `eta`
/// cancel, so the result has base 1.
pub fn backward(seed: &DarbouxSeed, f: &Polynomial) -> QuasiRational {
    seed.backward_rational(&f.clone().into())
}

pub fn backward_quasi(seed: &DarbouxSeed, f: &QuasiPolynomial) -> QuasiRational {
    seed.backward_rational(&f.clone().into())
}

/// `L^{(j,d)}[f] = F[B[f]] + lambda_d f`.
pub fn apply_x_operator(seed: &DarbouxSeed, f: &Polynomial) -> QuasiRational {
    let fb = seed.forward_rational(&backward(seed, f));
    fb.add(&QuasiRational::from(f.scale(&int(seed.mu())))).expect("base 1")
}

/// `L^{(j,d)}` on a quasi-rational function.
pub fn apply_x_operator_rational(seed: &DarbouxSeed, g: &QuasiRational) -> QuasiRational {
    let fb = seed.forward_rational(&seed.backward_rational(g));
    fb.add(&g.scale(&int(seed.mu()))).expect("same base")
}

/// Checks `B[F[f]] + mu f = L[f]` for each `f`.
pub fn verify_factorization(seed: &DarbouxSeed, test_set: &[QuasiPolynomial]) -> Report {
    let mut report = Report::new("factorization");
    for (i, f) in test_set.iter().enumerate() {
        let g: QuasiRational = f.clone().into();
        let lhs = seed
            .backward_rational(&seed.forward_rational(&g))
            .add(&g.scale(&int(seed.mu())))
            .expect("same base");
        let rhs = apply_l_rational(&g, seed.params());
        report.push(Case::identity("factorization", seed.to_params().with("f", i), &lhs, &rhs));
    }
    report
}

/// Monomials `x^k`, `k <= k_max`.
pub fn monomial_test_set(k_max: usize) -> Vec<QuasiPolynomial> {
    (0..=k_max).map(|k| Polynomial::monomial(Rational::one(), k).into()).collect()
}
