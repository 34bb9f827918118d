//! Origami monoids `𝒪ₙ` and Jones monoids `𝒥ₙ`.
//!
//! The crate builds both monoids from finite presentations, completes the
//! presentations into confluent rewriting systems, enumerates their elements,
//! and analyses them with Green's relations. Jones monoids are also available
//! as planar diagrams, which serve as an independent model.

pub mod error;
pub mod monoid;
pub mod rewriting;
pub mod words;
pub mod green;
pub mod jones;
pub mod morphism;
pub mod origami;
pub mod presentation;
pub mod verify;

pub use error::{Error, Result};
pub use monoid::FiniteMonoid;
pub use rewriting::{knuth_bendix, CompletionLimits, CompletionReport, RewriteSystem, Rule, Status};
pub use words::{Alphabet, Family, Generator, GeneratorKind, Letter, TermOrder, Word};
