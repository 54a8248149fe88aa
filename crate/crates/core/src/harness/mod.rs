//! Mechanized checks of the three theorems relating preparation
//! noncontextuality to maximal ψ-epistemicity.
//!
//! * [`theorem1`]: the sum of support integrals over two decompositions of
//!   `I/2`, and the degree-of-epistemicity values it forces.
//! * [`theorem2`]: maximal classical overlap between two procedures for the
//!   same pure state forces equal epistemic states.
//! * [`theorem3`]: exhaustive sign-pattern enumeration and an LP search showing
//!   that the trine decompositions of `I/2` cannot be noncontextual at both the
//!   pure and the mixed level.

pub mod theorem1;
pub mod theorem2;
pub mod theorem3;

pub use theorem1::{theorem1_check, Theorem1Report};
pub use theorem2::{theorem2_check, Theorem2Report};
pub use theorem3::{
    theorem3_enumerate, theorem3_lp, witness_residuals, FeasibilityCertificate, LpDetails,
    NamedValue, PatternRow, PatternSearch, Sign, Theorem3Mode, WitnessResiduals, DEFAULT_LP_CAP,
};
