//! Morpheme lexica stored as one character tree per lexical tape.
//!
//! Every entry's path is its form followed by the boundary symbol `+`, so a
//! traversal that consumes `+` lands on a node whose terminals are exactly
//! the entries spelled by the path.

use crate::feature::FeatureStructure;
use crate::symbol::{Sym, BOUNDARY};
use crate::Error;

pub type EntryId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormItem {
    Lit(Sym),
    /// Entry-scoped variable, index into [`MorphemeEntry::vars`].
    Var(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryVar {
    pub name: String,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MorphemeEntry {
    /// Optional lookup key, e.g. `m1act.a`.
    pub name: Option<String>,
    pub lexicon: String,
    pub form: Vec<FormItem>,
    pub category: String,
    pub features: FeatureStructure,
    /// 1-based tree (tape) index.
    pub tree: usize,
    pub vars: Vec<EntryVar>,
}

/// Entry-variable bindings along a traversal, by variable name.
pub type EntryBinds = Vec<(String, Sym)>;

/// A morpheme identified by consuming its trailing `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Closed {
    pub entry: EntryId,
    /// Values of the entry's variables, in declaration order.
    pub values: Vec<Sym>,
}

/// Incremental traversal of one tape's possible contents.
pub trait TapeSource {
    type Pos: Clone;
    fn start(&self) -> Self::Pos;
    /// Candidate next symbols at `pos` (superset is fine; `step` filters).
    fn next_syms(&self, pos: &Self::Pos, classes: &[Vec<Sym>]) -> Vec<Sym>;
    /// Successor positions; consuming `+` reports the closed morpheme.
    fn step(&self, pos: &Self::Pos, sym: Sym, classes: &[Vec<Sym>]) -> Vec<(Self::Pos, Option<Closed>)>;
    /// Whether the tape may end at `pos`.
    fn can_end(&self, pos: &Self::Pos) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Edge {
    Lit(Sym),
    Var { name: String, class: usize },
}

#[derive(Debug, Clone, Default)]
struct Node {
    edges: Vec<(Edge, usize)>,
    terminals: Vec<EntryId>,
}

/// One character tree.
#[derive(Debug, Clone)]
pub struct Trie {
    nodes: Vec<Node>,
}

impl Default for Trie {
    fn default() -> Self {
        Trie {
            nodes: vec![Node::default()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriePos {
    pub node: usize,
    pub binds: EntryBinds,
}

impl Trie {
    fn child(&mut self, from: usize, edge: Edge) -> usize {
        if let Some((_, to)) = self.nodes[from].edges.iter().find(|(e, _)| *e == edge) {
            return *to;
        }
        self.nodes.push(Node::default());
        let to = self.nodes.len() - 1;
        self.nodes[from].edges.push((edge, to));
        to
    }

    fn insert(&mut self, id: EntryId, entry: &MorphemeEntry) {
        let mut at = 0;
        for item in &entry.form {
            let edge = match item {
                FormItem::Lit(s) => Edge::Lit(*s),
                FormItem::Var(v) => Edge::Var {
                    name: entry.vars[*v].name.clone(),
                    class: entry.vars[*v].class,
                },
            };
            at = self.child(at, edge);
        }
        at = self.child(at, Edge::Lit(BOUNDARY));
        self.nodes[at].terminals.push(id);
    }

    pub fn root(&self) -> TriePos {
        TriePos {
            node: 0,
            binds: Vec::new(),
        }
    }

    /// Successor positions under `sym`. Class-variable edges bind the
    /// variable for the rest of the path.
    pub fn step(&self, pos: &TriePos, sym: Sym, classes: &[Vec<Sym>]) -> Vec<TriePos> {
        let mut out = Vec::new();
        for (edge, to) in &self.nodes[pos.node].edges {
            match edge {
                Edge::Lit(s) if *s == sym => out.push(TriePos {
                    node: *to,
                    binds: pos.binds.clone(),
                }),
                Edge::Lit(_) => {}
                Edge::Var { name, class } => match pos.binds.iter().find(|(n, _)| n == name) {
                    Some((_, v)) if *v == sym => out.push(TriePos {
                        node: *to,
                        binds: pos.binds.clone(),
                    }),
                    Some(_) => {}
                    None if classes[*class].contains(&sym) => {
                        let mut binds = pos.binds.clone();
                        binds.push((name.clone(), sym));
                        out.push(TriePos { node: *to, binds });
                    }
                    None => {}
                },
            }
        }
        out
    }

    pub fn closed_entries(&self, pos: &TriePos) -> &[EntryId] {
        &self.nodes[pos.node].terminals
    }

    fn next_syms(&self, pos: &TriePos, classes: &[Vec<Sym>]) -> Vec<Sym> {
        let mut out = Vec::new();
        for (edge, _) in &self.nodes[pos.node].edges {
            match edge {
                Edge::Lit(s) => out.push(*s),
                Edge::Var { name, class } => match pos.binds.iter().find(|(n, _)| n == name) {
                    Some((_, v)) => out.push(*v),
                    None => out.extend(classes[*class].iter().copied()),
                },
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// All lexica of a pack, one tree per tape.
#[derive(Debug, Clone)]
pub struct LexiconStore {
    entries: Vec<MorphemeEntry>,
    trees: Vec<Trie>,
}

impl LexiconStore {
    pub fn new(tapes: usize) -> Self {
        LexiconStore {
            entries: Vec::new(),
            trees: vec![Trie::default(); tapes],
        }
    }

    pub fn insert(&mut self, entry: MorphemeEntry) -> Result<EntryId, Error> {
        if entry.tree == 0 || entry.tree > self.trees.len() {
            return Err(Error::Declaration(format!(
                "entry {} is on tree {} but the pack has {} tapes",
                entry.name.clone().unwrap_or_else(|| entry.category.clone()),
                entry.tree,
                self.trees.len()
            )));
        }
        if entry.form.is_empty() {
            return Err(Error::Declaration(format!(
                "entry of category {} has an empty form",
                entry.category
            )));
        }
        let id = self.entries.len();
        self.trees[entry.tree - 1].insert(id, &entry);
        self.entries.push(entry);
        Ok(id)
    }

    pub fn entries(&self) -> &[MorphemeEntry] {
        &self.entries
    }

    pub fn entry(&self, id: EntryId) -> &MorphemeEntry {
        &self.entries[id]
    }

    /// The tree for a 1-based tape index.
    pub fn tree(&self, tape: usize) -> &Trie {
        &self.trees[tape - 1]
    }

    pub fn tapes(&self) -> usize {
        self.trees.len()
    }

    /// Values of `entry`'s variables from path bindings, if all are bound.
    pub fn close(&self, entry: EntryId, binds: &EntryBinds) -> Option<Closed> {
        let e = &self.entries[entry];
        let values = e
            .vars
            .iter()
            .map(|v| binds.iter().find(|(n, _)| *n == v.name).map(|(_, s)| *s))
            .collect::<Option<Vec<_>>>()?;
        Some(Closed { entry, values })
    }

    /// Concrete symbols of a closed morpheme's form.
    pub fn spell(&self, closed: &Closed) -> Vec<Sym> {
        self.entries[closed.entry]
            .form
            .iter()
            .map(|i| match i {
                FormItem::Lit(s) => *s,
                FormItem::Var(v) => closed.values[*v],
            })
            .collect()
    }
}

/// Traversal over one tree of the store.
pub struct TreeSource<'a> {
    pub store: &'a LexiconStore,
    pub tape: usize,
}

impl TapeSource for TreeSource<'_> {
    type Pos = TriePos;

    fn start(&self) -> TriePos {
        self.store.tree(self.tape).root()
    }

    fn next_syms(&self, pos: &TriePos, classes: &[Vec<Sym>]) -> Vec<Sym> {
        self.store.tree(self.tape).next_syms(pos, classes)
    }

    fn step(&self, pos: &TriePos, sym: Sym, classes: &[Vec<Sym>]) -> Vec<(TriePos, Option<Closed>)> {
        let tree = self.store.tree(self.tape);
        let mut out = Vec::new();
        for next in tree.step(pos, sym, classes) {
            if sym == BOUNDARY {
                for &id in tree.closed_entries(&next) {
                    if let Some(c) = self.store.close(id, &next.binds) {
                        out.push((tree.root(), Some(c)));
                    }
                }
            } else {
                out.push((next, None));
            }
        }
        out
    }

    fn can_end(&self, pos: &TriePos) -> bool {
        pos.node == 0
    }
}
