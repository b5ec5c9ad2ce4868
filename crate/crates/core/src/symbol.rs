//! Interned tape and surface symbols.

use std::collections::HashMap;
use std::fmt;

/// An atomic tape symbol. Multi-character tokens such as `c1` or `smm`
/// are single symbols and never decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

/// The morpheme boundary symbol `+` is always interned first.
pub const BOUNDARY: Sym = Sym(0);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, Sym>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        let mut t = SymbolTable {
            names: Vec::new(),
            index: HashMap::new(),
        };
        t.intern("+");
        t
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> Sym {
        if let Some(&s) = self.index.get(name) {
            return s;
        }
        let s = Sym(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), s);
        s
    }

    pub fn get(&self, name: &str) -> Option<Sym> {
        self.index.get(name).copied()
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.names[sym.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Render a symbol sequence, joining tokens without separators.
    pub fn join(&self, syms: &[Sym]) -> String {
        syms.iter().map(|&s| self.name(s)).collect()
    }

    /// Render a symbol sequence with single spaces between tokens.
    pub fn spaced(&self, syms: &[Sym]) -> String {
        syms.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Greedy longest-match tokenization of `text` over `alphabet`.
/// Returns the byte offset of the first untokenizable position on failure.
pub fn tokenize(text: &str, alphabet: &[(String, Sym)]) -> Result<Vec<Sym>, usize> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while !rest.is_empty() {
        let hit = alphabet
            .iter()
            .filter(|(name, _)| rest.starts_with(name.as_str()))
            .max_by_key(|(name, _)| name.len());
        match hit {
            Some((name, sym)) => {
                out.push(*sym);
                rest = &rest[name.len()..];
                offset += name.len();
            }
            None => return Err(offset),
        }
    }
    Ok(out)
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
