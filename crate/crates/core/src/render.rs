//! Text output: derivation tables, analysis blocks and one-line records.

use crate::engine::Derivation;
use crate::pack::GrammarPack;
use crate::pipeline::Analysis;
use crate::symbol::Sym;

/// Short rule label for tables: `R4v` -> `4`, `R22L` -> `22`. Names that
/// do not start with `R` and a digit are kept whole.
pub fn rule_label(name: &str) -> String {
    let Some(rest) = name.strip_prefix('R') else {
        return name.to_string();
    };
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        name.to_string()
    } else {
        digits
    }
}

/// Short labels of a derivation's rules, in order.
pub fn trace_labels(pack: &GrammarPack, d: &Derivation) -> Vec<String> {
    d.rule_names(pack).into_iter().map(rule_label).collect()
}

fn cell(pack: &GrammarPack, syms: &[Sym]) -> String {
    if syms.iter().any(|&s| pack.sym_name(s).chars().count() > 1) {
        pack.symbols.spaced(syms)
    } else {
        pack.symbols.join(syms)
    }
}

/// One column per rule application: lexical tapes from the last down to
/// the first, then the rule row, then the surface.
pub fn trace_table(pack: &GrammarPack, d: &Derivation) -> String {
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    for t in (0..pack.tapes).rev() {
        rows.push((format!("tape {}", t + 1), d.elements.iter().map(|e| cell(pack, &e.lex[t])).collect()));
    }
    rows.push(("rules".to_string(), trace_labels(pack, d)));
    rows.push((
        "surface".to_string(),
        d.elements.iter().map(|e| pack.symbols.join(&e.surface)).collect(),
    ));
    let label_w = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..d.elements.len())
        .map(|c| rows.iter().map(|(_, r)| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (label, cells) in &rows {
        let mut line = format!("{label:<label_w$}");
        for (c, w) in cells.iter().zip(&widths) {
            line.push_str(&format!(" | {c:<w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Root category, morphemes and parse tree of one analysis.
pub fn analysis_block(pack: &GrammarPack, a: &Analysis) -> String {
    let mut out = format!("{}\n", a.root);
    let d = &a.derivation;
    let keys = a.keys(pack);
    let key_w = keys.iter().map(|k| k.chars().count()).max().unwrap_or(0);
    for (m, key) in d.morphemes.iter().zip(&keys) {
        let entry = pack.lexicon.entry(m.entry);
        out.push_str(&format!(
            "  {}  {key:<key_w$}  {}{}\n",
            m.tape + 1,
            entry.category,
            m.features.resolve(&d.env)
        ));
    }
    out.push_str(&format!("  rules {}\n", trace_labels(pack, d).join(",")));
    out.push_str(&format!("  parse {}\n", a.parse.tree.render(&a.parse.env)));
    out
}

/// `surface<TAB>root<TAB>keys<TAB>rule names`, stable for diffing.
pub fn porcelain(pack: &GrammarPack, a: &Analysis) -> String {
    format!(
        "{}\t{}\t{}\t{}",
        a.surface,
        a.root,
        a.keys(pack).join(" "),
        a.derivation.rule_names(pack).join(",")
    )
}
