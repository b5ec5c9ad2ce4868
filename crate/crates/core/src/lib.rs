//! Multi-tape two-level morphology.
//!
//! A word on the surface tape is related to `n` synchronized lexical tapes
//! (pattern, root, vocalism, affix, ...) by partitioning both into rule
//! applications. Each application pairs a surface segment with an n-tuple
//! of lexical strings and must be licensed by a rule whose contexts hold;
//! obligatory rules additionally reject derivations in which their lexical
//! side occurs but their surface side is not realized. Tape contents are
//! read through per-tape lexicon trees, and the resulting morpheme sequence
//! is checked by a unification-based morphotactic grammar.
//!
//! ```
//! use mtl::{packs, analyze};
//! let pack = packs::load("moraic").unwrap();
//! let found = analyze(&pack, "jaamuus", None).unwrap();
//! assert_eq!(found.len(), 1);
//! assert_eq!(found[0].root.to_string(), "noun_stem[measure=hh,number=sing]");
//! ```

pub mod corpus;
pub mod engine;
pub mod feature;
pub mod lexicon;
pub mod morphotactics;
pub mod pack;
pub mod packs;
pub mod render;
pub mod rule;
pub mod symbol;

mod pipeline;

pub use engine::{Derivation, Element, Morpheme, SearchLimits};
pub use feature::{Env, FeatureStructure, Term, ValueSet};
pub use pack::{Diagnostic, GrammarPack, Severity};
pub use pipeline::{analyze, generate, parse_tape_spec, resolve_key, Analysis, TapeEntry};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("declaration error: {0}")]
    Declaration(String),
    #[error("pack has {} error(s): {}", .0.len(), .0.first().map(|d| d.message.as_str()).unwrap_or(""))]
    Pack(Vec<Diagnostic>),
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
