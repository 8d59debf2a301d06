//! Orthogonality, span criteria, recurrence relations and resultants of the
//! exceptional families.

pub mod family22;
pub mod orthogonality;
pub mod recurrence;
pub mod resultant_lemma;
pub mod span;

pub use family22::xkraw22_family;
pub use orthogonality::{orthogonality_data, verify_orthogonality, OrthogonalityData};
pub use recurrence::{
    minimal_q_pi, pi_polynomial, recurrence_coefficients, recurrence_coefficients_operator_method,
    RecurrenceData,
};
pub use resultant_lemma::resultant_lemma_check;
pub use span::{polynomiality_equivalence_check, span_membership};
