//! Span membership through `B` and the polynomiality equivalence between
//! `B` and the X-operator.

use crate::algebra::Polynomial;
use crate::darboux::{apply_x_operator, backward, DarbouxSeed};
use crate::report::{Case, Report};

/// `q` lies in the span of the exceptional family iff `B[q]` is a polynomial.
pub fn span_membership(seed: &DarbouxSeed, q: &Polynomial) -> bool {
    backward(seed, q).is_polynomial()
}

/// For each sample, the polynomiality of `L^{(j,d)}[pi]` and of `B[pi]` agree.
pub fn polynomiality_equivalence_check(seed: &DarbouxSeed, sample: &[Polynomial]) -> Report {
    let mut report = Report::new("polynomiality");
    for (i, pi) in sample.iter().enumerate() {
        let via_b = backward(seed, pi).is_polynomial();
        let via_l = apply_x_operator(seed, pi).is_polynomial();
        let params = seed.to_params().with("sample", i).with("B_polynomial", via_b);
        report.push(Case::identity("polynomiality", params, &via_l, &via_b));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Rational};
    use crate::krawtchouk::{krawtchouk, Family, KrawtchoukParams};
    use crate::xkrawtchouk::xk_member;

    #[test]
    fn members_and_contaminated_inputs() {
        let pr = KrawtchoukParams::new(rat(1, 3), 3).unwrap();
        let seed = DarbouxSeed::new(Family::One, 1, &pr).unwrap();
        for n in [0, 2, 3, 4] {
            assert!(span_membership(&seed, &xk_member(Family::One, 1, n, &pr).unwrap().poly));
        }
        let kd = krawtchouk(1, pr.p(), &int(3));
        assert!(!span_membership(&seed, &kd));
        let four = DarbouxSeed::new(Family::Four, 2, &pr).unwrap();
        assert!(span_membership(&four, &Polynomial::one()));
    }

    #[test]
    fn flags_agree_on_monomials() {
        let pr = KrawtchoukParams::new(rat(2, 5), 3).unwrap();
        let sample: Vec<Polynomial> = (0..6).map(|k| Polynomial::monomial(Rational::from_integer(1.into()), k)).collect();
        let seed = DarbouxSeed::new(Family::One, 2, &pr).unwrap();
        let r = polynomiality_equivalence_check(&seed, &sample);
        assert!(r.passed());
        assert!(r.cases.iter().any(|c| c.params.get("B_polynomial") == Some("false")));
    }
}
