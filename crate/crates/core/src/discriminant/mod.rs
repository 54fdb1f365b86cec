//! Exact univariate polynomials, resultants and discriminants over `ℚ` and
//! `ℚ[t]`, and the caustic computations built on them.

mod audit;
mod caustic;
mod poly;
mod resultant;

pub use audit::{
    default_generic, expected_ledger, sigma_discriminant, sigma_discriminant_audit,
    sigma_discriminant_audit_default, Ledger, MultiplicityPoint, MultiplicityProfile,
};
pub use caustic::{
    caustic_cubic_n3, caustic_fiber_degree, expected_caustic_cubic, CausticCubic, FiberDegree,
    LineContact, TernaryForm, TernaryTerm,
};
pub use poly::{qpoly, Poly, Ring};
pub use resultant::{discriminant_z, resultant, sylvester_resultant};
