//! Two-level search: partitions of the surface and lexical tapes into rule
//! applications, for analysis (surface given) and generation (tapes given).

mod complete;
mod search;
mod source;

pub use source::FixedTape;

use crate::feature::{Env, FeatureStructure};
use crate::lexicon::{Closed, EntryId, TreeSource};
use crate::pack::GrammarPack;
use crate::rule::Bindings;
use crate::symbol::Sym;

use source::Source;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Longest run of consecutive elements that put nothing on the surface.
    pub max_silent_run: usize,
    /// Longest run of consecutive elements that read no lexical tape.
    pub max_insertion_run: usize,
    /// Stop after this many distinct derivations.
    pub max_derivations: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_silent_run: 6,
            max_insertion_run: 2,
            max_derivations: 10_000,
        }
    }
}

/// One rule application: a surface segment paired with per-tape lexical
/// segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub rule: usize,
    pub surface: Vec<Sym>,
    pub surface_start: usize,
    pub lex: Vec<Vec<Sym>>,
    /// Tape read positions when the element started.
    pub tape_start: Vec<usize>,
    pub bindings: Bindings,
}

/// A morpheme read off one tape.
#[derive(Debug, Clone)]
pub struct Morpheme {
    pub tape: usize,
    pub entry: EntryId,
    pub closed: Closed,
    /// Symbol span on its tape, boundary included.
    pub span: (usize, usize),
    /// Index of the element that consumed the boundary.
    pub position: usize,
    /// Instance features after rule features were applied (in `env`).
    pub features: FeatureStructure,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub elements: Vec<Element>,
    pub surface: Vec<Sym>,
    pub tapes: Vec<Vec<Sym>>,
    /// In emission order.
    pub morphemes: Vec<Morpheme>,
    pub env: Env,
}

impl Derivation {
    pub fn rule_names<'p>(&self, pack: &'p GrammarPack) -> Vec<&'p str> {
        self.elements.iter().map(|e| pack.rules[e.rule].name.as_str()).collect()
    }
}

/// Every two-level derivation of `surface`, sorted.
pub fn analyze_surface(pack: &GrammarPack, surface: &[Sym], limits: SearchLimits) -> Vec<Derivation> {
    let sources: Vec<Source> = (0..pack.tapes)
        .map(|t| Source::Tree(TreeSource { store: &pack.lexicon, tape: t + 1 }))
        .collect();
    search::run(pack, &sources, Some(surface), &[], limits)
}

/// Every two-level derivation over the given tape contents, sorted.
pub fn generate_surface(pack: &GrammarPack, tapes: &[FixedTape], limits: SearchLimits) -> Vec<Derivation> {
    let sources: Vec<Source> = tapes.iter().map(Source::Fixed).collect();
    let overrides: Vec<Vec<FeatureStructure>> = tapes.iter().map(|t| t.overrides.clone()).collect();
    search::run(pack, &sources, None, &overrides, limits)
}
