//! Two-level rules: `LSC - SURF - RSC (=>|<=>) LLC - LEX - RLC`.
//!
//! Surface sides are token patterns; lexical sides are n-tuples with one
//! pattern per tape. Rule variables bind single symbols and are scoped to a
//! single rule application.

use crate::feature::FeatureStructure;
use crate::symbol::Sym;

pub type VarId = usize;

/// One position of a token pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Item {
    Lit(Sym),
    Var(VarId),
    /// `*`: any string, including the empty one. Only legal in contexts.
    Any,
}

/// Pattern over one tape's consumption. Empty means `_` (consume nothing).
pub type TapePattern = Vec<Item>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tuple(pub Vec<TapePattern>);

impl Tuple {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Whether every tape pattern is `_`.
    pub fn is_all_empty(&self) -> bool {
        self.0.iter().all(|p| p.is_empty())
    }

    /// Whether the tuple accepts the virtual all-empty element standing in
    /// for the word edges.
    pub fn accepts_empty(&self) -> bool {
        self.0.iter().all(|p| p.iter().all(|i| *i == Item::Any))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LeftContext {
    pub tuples: Vec<Tuple>,
    pub ellipsis: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// `=>`: licenses the mapping.
    Optional,
    /// `<=>`: licenses and coerces.
    Obligatory,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `X in Class`, stored as the class index.
    InClass(usize),
    /// `X in {a b c}`
    InSet(Vec<Sym>),
    /// `X != s`
    NotEq(Sym),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVar {
    pub name: String,
    pub constraints: Vec<Constraint>,
    /// Occurs in SURF, LSC or RSC, so it may only bind surface symbols.
    pub on_surface: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub name: String,
    pub label: Option<String>,
    pub kind: RuleKind,
    pub lsc: Vec<Item>,
    pub surf: Vec<Item>,
    pub rsc: Vec<Item>,
    pub llc: LeftContext,
    pub lex: Tuple,
    pub rlc: Vec<Tuple>,
    /// One structure per tape; empty structures impose nothing.
    pub features: Vec<FeatureStructure>,
    pub vars: Vec<RuleVar>,
}

impl Rule {
    pub fn is_obligatory(&self) -> bool {
        self.kind == RuleKind::Obligatory
    }

    /// Insertion rules consume no lexical material.
    pub fn is_insertion(&self) -> bool {
        self.lex.is_all_empty()
    }

    pub fn has_features(&self) -> bool {
        self.features.iter().any(|f| !f.is_empty())
    }

    /// Number of surface tokens an RSC check needs, ignoring a trailing `*`.
    pub fn rsc_len(&self) -> usize {
        self.rsc.iter().filter(|i| **i != Item::Any).count()
    }
}

/// Rule-application bindings, one slot per rule variable.
pub type Bindings = Vec<Option<Sym>>;

/// Domain check for a variable binding, supplied by the pack.
pub trait VarDomain {
    fn admits(&self, rule: &Rule, var: VarId, sym: Sym) -> bool;
}

/// All ways `pattern` matches `text` exactly, extending `b`.
pub fn match_seq<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    pattern: &[Item],
    text: &[Sym],
    b: &Bindings,
) -> Vec<Bindings> {
    let mut out = Vec::new();
    glob(dom, rule, pattern, text, b.clone(), &mut out);
    out
}

fn glob<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    pattern: &[Item],
    text: &[Sym],
    b: Bindings,
    out: &mut Vec<Bindings>,
) {
    let Some((first, rest)) = pattern.split_first() else {
        if text.is_empty() {
            out.push(b);
        }
        return;
    };
    match *first {
        Item::Any => {
            for skip in 0..=text.len() {
                glob(dom, rule, rest, &text[skip..], b.clone(), out);
            }
        }
        Item::Lit(s) => {
            if text.first() == Some(&s) {
                glob(dom, rule, rest, &text[1..], b, out);
            }
        }
        Item::Var(v) => {
            let Some(&sym) = text.first() else { return };
            match b[v] {
                Some(bound) if bound == sym => glob(dom, rule, rest, &text[1..], b, out),
                Some(_) => {}
                None => {
                    if dom.admits(rule, v, sym) {
                        let mut nb = b;
                        nb[v] = Some(sym);
                        glob(dom, rule, rest, &text[1..], nb, out);
                    }
                }
            }
        }
    }
}

/// Match a tuple pattern against one element's per-tape consumption.
pub fn match_tuple<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    tuple: &Tuple,
    lex: &[Vec<Sym>],
    b: &Bindings,
) -> Vec<Bindings> {
    let mut frontier = vec![b.clone()];
    for (pat, text) in tuple.0.iter().zip(lex) {
        let mut next = Vec::new();
        for fb in &frontier {
            next.extend(match_seq(dom, rule, pat, text, fb));
        }
        if next.is_empty() {
            return next;
        }
        frontier = next;
    }
    frontier
}

fn strip_any(pattern: &[Item]) -> impl Iterator<Item = &Item> {
    pattern.iter().filter(|i| **i != Item::Any)
}

/// Left surface context: the pattern must match the tokens immediately
/// before `start`. A `*` at the open end is a no-op.
pub fn match_lsc<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    surface: &[Sym],
    start: usize,
    b: &Bindings,
) -> Vec<Bindings> {
    let pat: Vec<Item> = strip_any(&rule.lsc).copied().collect();
    if pat.len() > start {
        return Vec::new();
    }
    match_seq(dom, rule, &pat, &surface[start - pat.len()..start], b)
}

/// Right surface context, left-anchored at `end`.
pub fn match_rsc<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    surface: &[Sym],
    end: usize,
    b: &Bindings,
) -> Vec<Bindings> {
    let pat: Vec<Item> = strip_any(&rule.rsc).copied().collect();
    if end + pat.len() > surface.len() {
        return Vec::new();
    }
    match_seq(dom, rule, &pat, &surface[end..end + pat.len()], b)
}

/// Left lexical context against the consumption history (oldest first).
///
/// Without ellipsis the tuples match the immediately preceding elements,
/// right-aligned, with all-empty virtual elements past the word start.
/// With ellipsis the block starts at the nearest element matching the first
/// tuple; nothing further left is considered.
pub fn match_llc<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    history: &[&[Vec<Sym>]],
    b: &Bindings,
) -> Vec<Bindings> {
    let tuples = &rule.llc.tuples;
    if tuples.is_empty() {
        return vec![b.clone()];
    }
    if rule.llc.ellipsis {
        for start in (0..history.len()).rev() {
            let first = match_tuple(dom, rule, &tuples[0], history[start], b);
            if first.is_empty() {
                continue;
            }
            if start + tuples.len() > history.len() {
                return Vec::new();
            }
            let mut frontier = first;
            for (k, t) in tuples.iter().enumerate().skip(1) {
                frontier = frontier
                    .iter()
                    .flat_map(|fb| match_tuple(dom, rule, t, history[start + k], fb))
                    .collect();
            }
            return frontier;
        }
        return Vec::new();
    }
    let mut frontier = vec![b.clone()];
    let n = tuples.len();
    for (k, t) in tuples.iter().enumerate() {
        // tuple k aligns with history[len - n + k]
        let idx = history.len() as isize - n as isize + k as isize;
        if idx < 0 {
            if !t.accepts_empty() {
                return Vec::new();
            }
            continue;
        }
        frontier = frontier
            .iter()
            .flat_map(|fb| match_tuple(dom, rule, t, history[idx as usize], fb))
            .collect();
        if frontier.is_empty() {
            break;
        }
    }
    frontier
}

/// Right lexical context against the following elements. `complete` says
/// whether `following` runs to the end of the word; if not, tuples past the
/// known elements are reported as undecided via `None`.
pub fn match_rlc<D: VarDomain>(
    dom: &D,
    rule: &Rule,
    following: &[&[Vec<Sym>]],
    complete: bool,
    b: &Bindings,
) -> Option<Vec<Bindings>> {
    if !complete && following.len() < rule.rlc.len() {
        return None;
    }
    let mut frontier = vec![b.clone()];
    for (k, t) in rule.rlc.iter().enumerate() {
        match following.get(k) {
            Some(lex) => {
                frontier = frontier
                    .iter()
                    .flat_map(|fb| match_tuple(dom, rule, t, lex, fb))
                    .collect();
            }
            None => {
                if !t.accepts_empty() {
                    return Some(Vec::new());
                }
            }
        }
        if frontier.is_empty() {
            break;
        }
    }
    Some(frontier)
}
