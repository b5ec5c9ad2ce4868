//! Grammar packs: tape count, symbol classes, two-level rules, lexica and a
//! morphotactic grammar, loaded from a line-oriented text format.

mod parse;
mod print;
mod validate;

use std::fmt;

pub use parse::parse_pack;
pub use validate::validate;

use crate::lexicon::{EntryId, FormItem, LexiconStore};
use crate::morphotactics::CfRule;
use crate::rule::{Constraint, Rule, VarDomain, VarId};
use crate::symbol::{tokenize, Sym, SymbolTable};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based line number, 0 when not tied to a line.
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn error(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            line,
            message: message.into(),
        }
    }

    pub fn warning(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            line,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `file:line: severity: message`
    pub fn render(&self, file: &str) -> String {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        format!("{}:{}: {}: {}", file, self.line, sev, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolClass {
    pub name: String,
    pub members: Vec<Sym>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconDecl {
    pub name: String,
    pub tree: usize,
}

#[derive(Debug, Clone)]
pub struct GrammarPack {
    pub tapes: usize,
    pub start: String,
    pub symbols: SymbolTable,
    /// Surface alphabet.
    pub alphabet: Vec<Sym>,
    pub classes: Vec<SymbolClass>,
    /// Class members by class index, as consumed by lexicon traversal.
    pub class_sets: Vec<Vec<Sym>>,
    pub rules: Vec<Rule>,
    /// Source line of each rule, for diagnostics.
    pub rule_lines: Vec<usize>,
    pub lexica: Vec<LexiconDecl>,
    pub lexicon: LexiconStore,
    pub grammar: Vec<CfRule>,
}

impl GrammarPack {
    /// Parse and validate; any error-severity diagnostic fails the load.
    pub fn load(text: &str) -> Result<GrammarPack, Error> {
        let pack = parse_pack(text).map_err(Error::Pack)?;
        let diags: Vec<Diagnostic> = validate(&pack).into_iter().filter(|d| d.is_error()).collect();
        if diags.is_empty() {
            Ok(pack)
        } else {
            Err(Error::Pack(diags))
        }
    }

    pub fn load_file(path: &std::path::Path) -> Result<GrammarPack, Error> {
        Self::load(&std::fs::read_to_string(path)?)
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name == name)
    }

    pub fn sym_name(&self, s: Sym) -> &str {
        self.symbols.name(s)
    }

    pub fn in_alphabet(&self, s: Sym) -> bool {
        self.alphabet.contains(&s)
    }

    /// Split a surface word into alphabet symbols (longest match first).
    pub fn tokenize_surface(&self, word: &str) -> Result<Vec<Sym>, Error> {
        let alpha: Vec<(String, Sym)> = self
            .alphabet
            .iter()
            .map(|&s| (self.symbols.name(s).to_string(), s))
            .collect();
        tokenize(word, &alpha).map_err(|at| {
            let rest: String = word[at..].chars().take(1).collect();
            Error::Input(format!("unknown surface token `{rest}` in `{word}`"))
        })
    }

    /// Lookup key of an entry: its explicit name, else its form spelled out.
    pub fn entry_key(&self, id: EntryId) -> String {
        let e = self.lexicon.entry(id);
        if let Some(n) = &e.name {
            return n.clone();
        }
        e.form
            .iter()
            .map(|i| match i {
                FormItem::Lit(s) => self.symbols.name(*s).to_string(),
                FormItem::Var(v) => e.vars[*v].name.clone(),
            })
            .collect()
    }

    /// Key of a closed morpheme with entry variables filled in.
    pub fn closed_key(&self, closed: &crate::lexicon::Closed) -> String {
        let e = self.lexicon.entry(closed.entry);
        if let Some(n) = &e.name {
            return n.clone();
        }
        self.symbols.join(&self.lexicon.spell(closed))
    }
}

impl VarDomain for GrammarPack {
    fn admits(&self, rule: &Rule, var: VarId, sym: Sym) -> bool {
        let v = &rule.vars[var];
        if v.on_surface && !self.in_alphabet(sym) {
            return false;
        }
        v.constraints.iter().all(|c| match c {
            Constraint::InClass(k) => self.class_sets[*k].contains(&sym),
            Constraint::InSet(set) => set.contains(&sym),
            Constraint::NotEq(s) => *s != sym,
        })
    }
}

impl fmt::Display for GrammarPack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_pack(self, f)
    }
}
