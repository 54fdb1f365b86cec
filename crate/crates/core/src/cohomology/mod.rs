//! Degree-two cohomology of the projectivized Hurwitz space `ℙℋ_n`.
//!
//! `H²(ℙℋ_n)` is spanned by `Ψ` and the boundary divisors `[D]` of the moduli
//! space of stable `n`-pointed genus-zero curves, subject to the four-point
//! relations ([`RelationLattice`]). A split with a singleton block `{i}` is
//! also a divisor on `ℙℋ_n`; its class is `Ψ − ψ_i`.

mod classes;
mod identities;
mod lattice;
mod psi;
mod sigma;
mod split;
mod vector;

pub use classes::{
    boundary_class, caustic_class, delta_pq, delta_total, maxwell_class, psi_big, psi_small,
    SymmetricClass,
};
pub use identities::{
    identities, verify_identities, verify_identity, Identity, IdentityCheck, IdentityReport, Term,
    WeightedTerm,
    VERIFY_BOUND,
};
pub use lattice::{classes_equal, pair_sum, relation_lattice, LatticeSummary, RelationLattice};
pub use psi::{
    compositions, psi_integral, psi_integral_closed, psi_integral_string, top_psi_power,
    top_psi_power_segre,
};
pub use sigma::{
    decompose_symmetric, pairing_matrix, sigma_claims, sigma_pairing, sigma_pairing_symmetric,
    PairingMatrix, SigmaClaim,
};
pub use split::{MarkSplit, MAX_MARKS};
pub use vector::{Basis, H2Vector};
