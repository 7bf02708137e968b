//! Attribute relevance in formal contexts.
//!
//! `fcarel` enumerates the concept lattice of a formal context, measures how
//! much of the lattice (weighted by the objects in each extent) depends on a
//! set of attributes, and selects small attribute sets that keep as much of it
//! as possible:
//!
//! * [`lattice`]: Close-by-One concept enumeration and extent labels.
//! * [`relevance`]: relevance of attributes and exact relative relevance
//!   `r(N)` of attribute sets.
//! * [`entropy`]: the Shannon object entropy and the object entropy of a
//!   context.
//! * [`selection`]: exhaustive, greedy, entropy-guided and random selection.
//! * [`experiment`]: the sweep harness behind the `fcarel experiment` command.
//!
//! ```
//! use fcarel::{fixtures, relative_relevance};
//!
//! let water = fixtures::water4();
//! let b = water.attribute_index("b").unwrap();
//! assert_eq!(relative_relevance(&water, &[b])?.to_string(), "4/11");
//! # Ok::<(), fcarel::Error>(())
//! ```
//!
//! The guide in `book/` walks through the same material with worked examples;
//! its code blocks are compiled and run as doctests of this crate.

pub mod bitset;
pub mod clarify;
pub mod context;
pub mod entropy;
mod error;
pub mod experiment;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod relevance;
pub mod scale;
pub mod selection;

pub use bitset::BitSet;
pub use clarify::{clarify, reduce, ClarificationMap};
pub use context::FormalContext;
pub use entropy::{object_entropy, scale_entropy, shannon_object_entropy, EntropyKind};
pub use error::{Error, Result, Side};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentOutcome, ExperimentRecord};
pub use io::{parse_context, write_context, Format};
pub use lattice::{enumerate_concepts, surviving_concepts, Concept, ConceptSet, Enumerator};
pub use relevance::{
    is_irreducible, is_relevant, is_relevant_to_context, relative_relevance, ClarifyPolicy, Relevance,
    RelevanceAnalysis,
};
pub use scale::{make_scale, ScaleKind};
pub use selection::{
    select_era, select_exhaustive, select_imrs, select_random, Objective, RandomBaseline, SelectionMethod,
    SelectionOptions, SelectionResult, Selector,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    mod contexts {}
    #[doc = include_str!("../../../book/src/concepts.md")]
    mod concepts {}
    #[doc = include_str!("../../../book/src/relevance.md")]
    mod relevance {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    mod entropy {}
    #[doc = include_str!("../../../book/src/selection.md")]
    mod selection {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
