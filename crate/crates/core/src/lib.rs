//! Typed-feature-structure grammar of Japanese particles.
//!
//! A small type lattice of particle classes, a lexicon keyed on romaji
//! surface forms, four combination schemata, and an exhaustive chart parser
//! producing predicate-argument structures. [`cooc`] compares the particle
//! pairs the lexicon licenses against attested dialogue counts.

pub mod chart;
pub mod cooc;
pub mod corpus;
pub mod lattice;
pub mod lexicon;
pub mod rules;
pub mod sign;

pub use chart::{build_chart, parse, tokenize, Chart, Diagnostic, ParseError, ParseResult};
pub use cooc::{derive_licensing, load_table1, reconcile, CoocError, CoocMatrix, ReconciliationReport};
#[cfg(feature = "parallel")]
pub use corpus::parse_corpus_parallel;
pub use corpus::{parse_corpus, parse_corpus_sequential, parse_corpus_text, CorpusLine, CorpusReport, Verdict};
pub use lattice::{Glb, LatticeError, TypeId, TypeLattice};
pub use lexicon::{LexEntry, Lexicon, LexiconError};
pub use rules::Mismatch;
pub use sign::{Adjunct, Binding, Flavor, Pas, Sign, Span};
