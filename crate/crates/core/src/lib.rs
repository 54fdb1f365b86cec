//! Exact computations for genus-zero Hurwitz numbers.
//!
//! Three independent routes to the same numbers:
//!
//! * [`monodromy`]: counting transitive factorizations of the identity in `S_n`;
//! * [`closed_forms`]: Hurwitz's formula, the two-double-point formula, and the
//!   conversions between Hurwitz numbers, Lyashko–Looijenga degrees and
//!   couplings with powers of `Ψ`;
//! * [`cohomology`]: degree-two classes on the projectivized Hurwitz space in
//!   Keel's presentation, plus top powers of `Ψ` via ψ-class integrals.
//!
//! [`discriminant`] is a small exact polynomial engine used to recompute the
//! caustic equations and the multiplicity bookkeeping behind the σ-family
//! intersection numbers.

pub mod closed_forms;
pub mod cohomology;
pub mod combinatorics;
pub mod discriminant;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod monodromy;

pub use combinatorics::{Partition, RamificationProfile};
pub use error::{Error, Result};
pub use exact::Q;
