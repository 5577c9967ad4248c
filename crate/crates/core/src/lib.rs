//! Word problem for positively presented inverse monoids.
//!
//! The generic engine is Stephen's procedure on Schützenberger complexes
//! ([`stephen`]). For the decidable Adian classes the closures are finite;
//! [`bs_family`] builds them directly for `⟨a,b | abᵐ = bⁿa⟩` and
//! [`oracle`] searches derivations as an independent check on positive
//! words.

pub mod bs_family;
pub mod cli;
pub mod complex;
pub mod oracle;
pub mod presentation;
pub mod stephen;
pub mod wordgraph;

pub use complex::{BettiReport, Complex, ComplexError, Face};
pub use presentation::{
    classify, parse_presentation, parse_word, DecidabilityClass, Letter, ParseError, Presentation, Word, WordError,
};
pub use stephen::{Budget, ClosureOutcome, ClosureStatus, StephenError, TriBool};
pub use wordgraph::{GraphError, VertexId, WordGraph};
