//! Flat feature structures with disjunctive values and shared variables.
//!
//! A [`FeatureStructure`] maps attribute names to either a non-empty set of
//! atomic values or a variable. Variables live in an [`Env`], which records
//! their bindings; unification is the only combination operator and never
//! mutates the environment when it fails.

use std::collections::HashMap;
use std::fmt;

/// A non-empty disjunction of atomic values, kept in first-seen order.
#[derive(Debug, Clone, Eq)]
pub struct ValueSet(Vec<String>);

impl ValueSet {
    /// Returns `None` for an empty input: an empty set is a failure, not a value.
    pub fn new<I, S>(values: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for v in values {
            let v = v.into();
            if !out.contains(&v) {
                out.push(v);
            }
        }
        (!out.is_empty()).then_some(ValueSet(out))
    }

    pub fn single(v: impl Into<String>) -> Self {
        ValueSet(vec![v.into()])
    }

    pub fn values(&self) -> &[String] {
        &self.0
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.iter().any(|x| x == v)
    }

    pub fn intersect(&self, other: &ValueSet) -> Option<ValueSet> {
        ValueSet::new(self.0.iter().filter(|v| other.contains(v)).cloned())
    }

    pub fn is_subset(&self, other: &ValueSet) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }
}

impl PartialEq for ValueSet {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.is_subset(other)
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "({})", self.0.join(","))
        }
    }
}

/// A variable occurrence. `id` indexes a cell in an [`Env`]; `name` is kept
/// for printing only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub id: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Set(ValueSet),
    Var(Variable),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Set(s) => write!(f, "{s}"),
            Term::Var(v) => write!(f, "{}", v.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureStructure {
    entries: Vec<(String, Term)>,
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Free,
    Bound(ValueSet),
    Link(u32),
}

/// Variable bindings for one search. Cells are created on demand, so a
/// template's local variable ids are valid in a fresh environment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Env {
    cells: Vec<Cell>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> u32 {
        self.cells.push(Cell::Free);
        (self.cells.len() - 1) as u32
    }

    fn ensure(&mut self, id: u32) {
        while self.cells.len() <= id as usize {
            self.cells.push(Cell::Free);
        }
    }

    fn root(&self, mut id: u32) -> u32 {
        while let Some(Cell::Link(next)) = self.cells.get(id as usize) {
            id = *next;
        }
        id
    }

    /// The value set a variable is bound to, if any.
    pub fn lookup(&self, id: u32) -> Option<&ValueSet> {
        match self.cells.get(self.root(id) as usize) {
            Some(Cell::Bound(s)) => Some(s),
            _ => None,
        }
    }

    fn constrain(&mut self, id: u32, set: &ValueSet) -> bool {
        self.ensure(id);
        let r = self.root(id);
        let next = match &self.cells[r as usize] {
            Cell::Bound(s) => match s.intersect(set) {
                Some(n) => n,
                None => return false,
            },
            _ => set.clone(),
        };
        self.cells[r as usize] = Cell::Bound(next);
        true
    }

    fn link(&mut self, a: u32, b: u32) -> bool {
        self.ensure(a.max(b));
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return true;
        }
        let merged = match (&self.cells[ra as usize], &self.cells[rb as usize]) {
            (Cell::Bound(x), Cell::Bound(y)) => match x.intersect(y) {
                Some(s) => Cell::Bound(s),
                None => return false,
            },
            (Cell::Bound(x), _) => Cell::Bound(x.clone()),
            (_, Cell::Bound(y)) => Cell::Bound(y.clone()),
            _ => Cell::Free,
        };
        self.cells[ra as usize] = Cell::Link(rb);
        self.cells[rb as usize] = merged;
        true
    }

    fn unify_terms(&mut self, a: &Term, b: &Term) -> Option<Term> {
        match (a, b) {
            (Term::Set(x), Term::Set(y)) => x.intersect(y).map(Term::Set),
            (Term::Var(v), Term::Set(s)) | (Term::Set(s), Term::Var(v)) => {
                self.constrain(v.id, s).then(|| Term::Var(v.clone()))
            }
            (Term::Var(v), Term::Var(w)) => self.link(v.id, w.id).then(|| Term::Var(v.clone())),
        }
    }
}

/// Scope mapping variable names to ids while parsing templates.
#[derive(Debug, Default, Clone)]
pub struct VarScope {
    names: HashMap<String, u32>,
}

impl VarScope {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn id(&mut self, name: &str) -> u32 {
        let next = self.names.len() as u32;
        *self.names.entry(name.to_string()).or_insert(next)
    }
}

impl FeatureStructure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder used by tests and parsers. Panics on a duplicate attribute.
    pub fn with(mut self, attr: &str, term: Term) -> Self {
        assert!(self.get(attr).is_none(), "duplicate attribute {attr}");
        self.entries.push((attr.to_string(), term));
        self
    }

    pub fn with_values(self, attr: &str, values: &[&str]) -> Self {
        let set = ValueSet::new(values.iter().copied()).expect("non-empty value set");
        self.with(attr, Term::Set(set))
    }

    pub fn insert(&mut self, attr: &str, term: Term) -> bool {
        if self.get(attr).is_some() {
            return false;
        }
        self.entries.push((attr.to_string(), term));
        true
    }

    pub fn get(&self, attr: &str) -> Option<&Term> {
        self.entries.iter().find(|(a, _)| a == attr).map(|(_, t)| t)
    }

    pub fn entries(&self) -> &[(String, Term)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Unify `self` with `other`. On success the environment is updated and
    /// the combined structure returned; on failure `env` is left untouched.
    pub fn unify(&self, other: &FeatureStructure, env: &mut Env) -> Option<FeatureStructure> {
        let mut work = env.clone();
        let mut out = FeatureStructure::new();
        for (attr, term) in &self.entries {
            let t = match other.get(attr) {
                Some(o) => work.unify_terms(term, o)?,
                None => term.clone(),
            };
            out.entries.push((attr.clone(), t));
        }
        for (attr, term) in &other.entries {
            if self.get(attr).is_none() {
                out.entries.push((attr.clone(), term.clone()));
            }
        }
        *env = work;
        Some(out)
    }

    /// Copy with every variable renamed to a fresh cell of `env`.
    pub fn instantiate(&self, env: &mut Env) -> FeatureStructure {
        let mut map = HashMap::new();
        self.instantiate_with(env, &mut map)
    }

    /// Like [`instantiate`](Self::instantiate) but shares the renaming across
    /// several structures (e.g. the two sides of a grammar rule).
    pub fn instantiate_with(&self, env: &mut Env, map: &mut HashMap<u32, u32>) -> FeatureStructure {
        let entries = self
            .entries
            .iter()
            .map(|(a, t)| {
                let t = match t {
                    Term::Var(v) => {
                        let id = *map.entry(v.id).or_insert_with(|| env.fresh());
                        Term::Var(Variable {
                            name: v.name.clone(),
                            id,
                        })
                    }
                    other => other.clone(),
                };
                (a.clone(), t)
            })
            .collect();
        FeatureStructure { entries }
    }

    /// Replace bound variables by their value sets.
    pub fn resolve(&self, env: &Env) -> FeatureStructure {
        let entries = self
            .entries
            .iter()
            .map(|(a, t)| {
                let t = match t {
                    Term::Var(v) => match env.lookup(v.id) {
                        Some(s) => Term::Set(s.clone()),
                        None => Term::Var(v.clone()),
                    },
                    other => other.clone(),
                };
                (a.clone(), t)
            })
            .collect();
        FeatureStructure { entries }
    }

    /// Parse `[attr=v, attr=(v1,v2), attr=N]`. Values starting with an
    /// uppercase ASCII letter are variables.
    pub fn parse(text: &str, scope: &mut VarScope) -> Result<FeatureStructure, String> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| format!("feature structure must be bracketed: {t}"))?;
        let mut fs = FeatureStructure::new();
        for part in split_top(inner) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (attr, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected attr=value, found `{part}`"))?;
            let (attr, value) = (attr.trim(), value.trim());
            if attr.is_empty() {
                return Err(format!("missing attribute name in `{part}`"));
            }
            let term = if let Some(list) = value.strip_prefix('(') {
                let list = list
                    .strip_suffix(')')
                    .ok_or_else(|| format!("unclosed value list in `{part}`"))?;
                let vals: Vec<&str> = list.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
                Term::Set(ValueSet::new(vals).ok_or_else(|| format!("empty value list in `{part}`"))?)
            } else if value.starts_with(|c: char| c.is_ascii_uppercase()) {
                Term::Var(Variable {
                    name: value.to_string(),
                    id: scope.id(value),
                })
            } else if value.is_empty() {
                return Err(format!("missing value in `{part}`"));
            } else {
                Term::Set(ValueSet::single(value))
            };
            if !fs.insert(attr, term) {
                return Err(format!("attribute `{attr}` appears twice"));
            }
        }
        Ok(fs)
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for FeatureStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, t)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}={t}")?;
        }
        write!(f, "]")
    }
}
