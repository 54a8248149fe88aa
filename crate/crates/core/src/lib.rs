//! Discretized ontological models of qubit theory.
//!
//! An ontological model assigns each preparation a probability density over a
//! space of ontic states and each measurement a response function. This crate
//! represents such models on finite spaces (a spherical Fibonacci grid for the
//! qubit Bloch sphere, or abstract point sets), measures how much epistemic
//! states overlap, classifies models as ψ-ontic or (maximally) ψ-epistemic,
//! checks preparation noncontextuality, and produces certificates for the
//! relations between these properties.
//!
//! ```
//! use ontoscope::{build_ks, quantum::QuantumState, overlap::overlap_record};
//!
//! let model = build_ks(20_000).unwrap();
//! let r = overlap_record(&model, &QuantumState::zero(), &QuantumState::plus()).unwrap();
//! assert!((r.l_q - r.l_c).abs() < 2e-2);
//! ```

pub mod classify;
pub mod error;
pub mod harness;
pub mod io;
pub mod ontic;
pub mod overlap;
pub mod quantum;
pub mod sampling;
pub mod simplex;
pub mod zoo;

pub use error::{Error, Result};
pub use ontic::{EpistemicState, Measurement, OnticSpace, OntologicalModel, PreparationProcedure, ResponseFunction};
pub use quantum::{DensityOperator, Effect, QuantumState};
pub use zoo::{build_bb, build_ks, build_theorem3_witness, build_truncated_epistemic};

// The guide's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/overlaps.md")]
    mod overlaps {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/files.md")]
    mod files {}
}
