use std::fmt::{self, Write};

use crate::lexicon::FormItem;
use crate::rule::{Constraint, Item, Rule, RuleKind, Tuple};
use crate::symbol::SymbolTable;

use super::GrammarPack;

pub(super) fn write_pack(p: &GrammarPack, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "tapes {}", p.tapes)?;
    if !p.start.is_empty() {
        writeln!(f, "start {}", p.start)?;
    }
    let alpha: Vec<&str> = p.alphabet.iter().map(|&s| p.symbols.name(s)).collect();
    writeln!(f, "alphabet {}", alpha.join(" "))?;
    for c in &p.classes {
        let m: Vec<&str> = c.members.iter().map(|&s| p.symbols.name(s)).collect();
        writeln!(f, "class {} = {}", c.name, m.join(" "))?;
    }
    writeln!(f)?;
    for r in &p.rules {
        writeln!(f, "rule {}", rule_text(p, r))?;
    }
    for decl in &p.lexica {
        writeln!(f)?;
        writeln!(f, "lexicon {} tree {} {{", decl.name, decl.tree)?;
        for e in p.lexicon.entries().iter().filter(|e| e.lexicon == decl.name) {
            let form: Vec<&str> = e
                .form
                .iter()
                .map(|i| match i {
                    FormItem::Lit(s) => p.symbols.name(*s),
                    FormItem::Var(v) => e.vars[*v].name.as_str(),
                })
                .collect();
            write!(f, "  ")?;
            if let Some(n) = &e.name {
                write!(f, "{n} = ")?;
            }
            write!(f, "{} : {}{}", form.join(" "), e.category, e.features)?;
            if !e.vars.is_empty() {
                let w: Vec<String> = e
                    .vars
                    .iter()
                    .map(|v| format!("{} in {}", v.name, p.classes[v.class].name))
                    .collect();
                write!(f, " where {}", w.join(", "))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "}}")?;
    }
    if !p.grammar.is_empty() {
        writeln!(f)?;
        writeln!(f, "grammar {{")?;
        for r in &p.grammar {
            let rhs: Vec<String> = r.rhs.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {} -> {}", r.lhs, rhs.join(" "))?;
        }
        writeln!(f, "}}")?;
    }
    Ok(())
}

fn item(sy: &SymbolTable, r: &Rule, i: &Item) -> String {
    match i {
        Item::Lit(s) => sy.name(*s).to_string(),
        Item::Var(v) => r.vars[*v].name.clone(),
        Item::Any => "*".into(),
    }
}

fn seq(sy: &SymbolTable, r: &Rule, items: &[Item], empty: &str) -> String {
    if items.is_empty() {
        return empty.into();
    }
    items.iter().map(|i| item(sy, r, i)).collect::<Vec<_>>().join(" ")
}

fn tuple(sy: &SymbolTable, r: &Rule, t: &Tuple) -> String {
    let parts: Vec<String> = t.0.iter().map(|p| seq(sy, r, p, "_")).collect();
    format!("({})", parts.join(","))
}

fn tuples(sy: &SymbolTable, r: &Rule, ts: &[Tuple]) -> String {
    if ts.is_empty() {
        return "*".into();
    }
    ts.iter().map(|t| tuple(sy, r, t)).collect::<Vec<_>>().join(" ")
}

/// One rule in pack syntax, without the leading `rule` keyword.
pub fn rule_text(p: &GrammarPack, r: &Rule) -> String {
    let sy = &p.symbols;
    let mut s = r.name.clone();
    if let Some(l) = &r.label {
        let _ = write!(s, " \"{l}\"");
    }
    let arrow = match r.kind {
        RuleKind::Optional => "=>",
        RuleKind::Obligatory => "<=>",
    };
    let mut llc = tuples(sy, r, &r.llc.tuples);
    if r.llc.ellipsis {
        llc = if r.llc.tuples.is_empty() { "...".into() } else { format!("{llc} ...") };
    }
    let _ = write!(
        s,
        ": {} - {} - {} {} {} - {} - {}",
        seq(sy, r, &r.lsc, "*"),
        seq(sy, r, &r.surf, "_"),
        seq(sy, r, &r.rsc, "*"),
        arrow,
        llc,
        tuple(sy, r, &r.lex),
        tuples(sy, r, &r.rlc),
    );
    if r.has_features() {
        let fs: Vec<String> = r.features.iter().map(|f| f.to_string()).collect();
        let _ = write!(s, " feat: ({})", fs.join(";"));
    }
    let mut cons = Vec::new();
    for v in &r.vars {
        for c in &v.constraints {
            cons.push(match c {
                Constraint::InClass(k) => format!("{} in {}", v.name, p.classes[*k].name),
                Constraint::InSet(set) => {
                    let m: Vec<&str> = set.iter().map(|&x| sy.name(x)).collect();
                    format!("{} in {{ {} }}", v.name, m.join(" "))
                }
                Constraint::NotEq(x) => format!("{} != {}", v.name, sy.name(*x)),
            });
        }
    }
    if !cons.is_empty() {
        let _ = write!(s, " where {}", cons.join(", "));
    }
    s
}
