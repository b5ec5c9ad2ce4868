use crate::feature::FeatureStructure;
use crate::lexicon::{Closed, LexiconStore, TapeSource, TreeSource, TriePos};
use crate::symbol::{Sym, BOUNDARY};

/// A tape whose contents are given up front, as in generation.
#[derive(Debug, Clone, Default)]
pub struct FixedTape {
    syms: Vec<Sym>,
    closes: Vec<Option<Closed>>,
    /// Per morpheme, in tape order: features to unify into its instance.
    pub overrides: Vec<FeatureStructure>,
}

impl FixedTape {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append one morpheme and its boundary.
    pub fn push(&mut self, store: &LexiconStore, closed: Closed, overrides: FeatureStructure) {
        for s in store.spell(&closed) {
            self.syms.push(s);
            self.closes.push(None);
        }
        self.syms.push(BOUNDARY);
        self.closes.push(Some(closed));
        self.overrides.push(overrides);
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.syms
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }
}

pub(crate) enum Source<'a> {
    Tree(TreeSource<'a>),
    Fixed(&'a FixedTape),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Cursor {
    Tree(TriePos),
    Fixed(usize),
}

impl TapeSource for Source<'_> {
    type Pos = Cursor;

    fn start(&self) -> Cursor {
        match self {
            Source::Tree(t) => Cursor::Tree(t.start()),
            Source::Fixed(_) => Cursor::Fixed(0),
        }
    }

    fn next_syms(&self, pos: &Cursor, classes: &[Vec<Sym>]) -> Vec<Sym> {
        match (self, pos) {
            (Source::Tree(t), Cursor::Tree(p)) => t.next_syms(p, classes),
            (Source::Fixed(f), Cursor::Fixed(i)) => f.syms.get(*i).copied().into_iter().collect(),
            _ => Vec::new(),
        }
    }

    fn step(&self, pos: &Cursor, sym: Sym, classes: &[Vec<Sym>]) -> Vec<(Cursor, Option<Closed>)> {
        match (self, pos) {
            (Source::Tree(t), Cursor::Tree(p)) => t
                .step(p, sym, classes)
                .into_iter()
                .map(|(p, c)| (Cursor::Tree(p), c))
                .collect(),
            (Source::Fixed(f), Cursor::Fixed(i)) => {
                if f.syms.get(*i) == Some(&sym) {
                    vec![(Cursor::Fixed(i + 1), f.closes[*i].clone())]
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        }
    }

    fn can_end(&self, pos: &Cursor) -> bool {
        match (self, pos) {
            (Source::Tree(t), Cursor::Tree(p)) => t.can_end(p),
            (Source::Fixed(f), Cursor::Fixed(i)) => *i == f.syms.len(),
            _ => false,
        }
    }
}
