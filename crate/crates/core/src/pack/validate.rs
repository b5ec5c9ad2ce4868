use std::collections::HashSet;

use crate::lexicon::FormItem;
use crate::rule::{Constraint, Item, Rule};
use crate::symbol::{Sym, BOUNDARY};

use super::{Diagnostic, GrammarPack};

/// Semantic checks on a parsed pack. Errors block loading.
pub fn validate(pack: &GrammarPack) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let tree_syms = tree_symbols(pack);
    for (ri, r) in pack.rules.iter().enumerate() {
        let line = pack.rule_lines.get(ri).copied().unwrap_or(0);
        if r.surf.is_empty() && r.is_insertion() {
            out.push(Diagnostic::error(
                line,
                format!("rule {}: no progress (empty SURF and empty LEX)", r.name),
            ));
        }
        for (v, var) in r.vars.iter().enumerate() {
            let classed = var
                .constraints
                .iter()
                .any(|c| matches!(c, Constraint::InClass(_) | Constraint::InSet(_)));
            if !classed && occurs_only_in_surf(r, v) {
                out.push(Diagnostic::error(
                    line,
                    format!("rule {}: variable {} is unresolved (only in SURF and unclassed)", r.name, var.name),
                ));
            }
        }
        if r.is_obligatory() {
            for (t, pat) in r.lex.0.iter().enumerate() {
                let dead = pat.iter().find_map(|i| match i {
                    Item::Lit(s) if *s != BOUNDARY && !tree_syms[t].contains(s) => Some(*s),
                    _ => None,
                });
                if let Some(s) = dead {
                    out.push(Diagnostic::warning(
                        line,
                        format!(
                            "obligatory rule {}: LEX symbol `{}` never occurs in lexicon tree {}",
                            r.name,
                            pack.symbols.name(s),
                            t + 1
                        ),
                    ));
                }
            }
        }
    }
    for t in 0..pack.tapes {
        let touched = pack.rules.iter().any(|r| !r.lex.0[t].is_empty());
        let populated = pack.lexicon.entries().iter().any(|e| e.tree == t + 1);
        if populated && !touched {
            out.push(Diagnostic::warning(0, format!("lexicon tree {} is unreachable: no rule consumes it", t + 1)));
        }
    }
    out
}

fn occurs_only_in_surf(r: &Rule, v: usize) -> bool {
    let has = |p: &[Item]| p.contains(&Item::Var(v));
    let in_tuples = |ts: &[crate::rule::Tuple]| ts.iter().any(|t| t.0.iter().any(|p| has(p)));
    has(&r.surf)
        && !has(&r.lsc)
        && !has(&r.rsc)
        && !r.lex.0.iter().any(|p| has(p))
        && !in_tuples(&r.llc.tuples)
        && !in_tuples(&r.rlc)
}

/// Every symbol that some entry on each tree can put on its tape.
fn tree_symbols(pack: &GrammarPack) -> Vec<HashSet<Sym>> {
    let mut out = vec![HashSet::new(); pack.tapes];
    for e in pack.lexicon.entries() {
        for i in &e.form {
            match i {
                FormItem::Lit(s) => {
                    out[e.tree - 1].insert(*s);
                }
                FormItem::Var(v) => out[e.tree - 1].extend(pack.class_sets[e.vars[*v].class].iter().copied()),
            }
        }
    }
    out
}
