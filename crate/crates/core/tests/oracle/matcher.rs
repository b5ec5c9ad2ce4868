//! Pattern matching over the rule AST, written independently of the
//! engine's matcher.

use mtl::lexicon::Closed;
use mtl::pack::GrammarPack;
use mtl::rule::{Constraint, Item, Rule, Tuple};
use mtl::symbol::Sym;

pub type B = Vec<Option<Sym>>;

fn admits(pack: &GrammarPack, rule: &Rule, v: usize, s: Sym) -> bool {
    let var = &rule.vars[v];
    if var.on_surface && !pack.alphabet.contains(&s) {
        return false;
    }
    var.constraints.iter().all(|c| match c {
        Constraint::InClass(k) => pack.class_sets[*k].contains(&s),
        Constraint::InSet(set) => set.contains(&s),
        Constraint::NotEq(x) => *x != s,
    })
}

/// Every extension of `b` under which `pat` spells exactly `text`.
pub fn seq(pack: &GrammarPack, rule: &Rule, pat: &[Item], text: &[Sym], b: &B) -> Vec<B> {
    if pat.is_empty() {
        return if text.is_empty() { vec![b.clone()] } else { vec![] };
    }
    let mut out = Vec::new();
    match pat[0] {
        Item::Any => {
            for k in 0..=text.len() {
                out.extend(seq(pack, rule, &pat[1..], &text[k..], b));
            }
        }
        Item::Lit(s) => {
            if text.first() == Some(&s) {
                out.extend(seq(pack, rule, &pat[1..], &text[1..], b));
            }
        }
        Item::Var(v) => {
            if let Some(&s) = text.first() {
                let ok = match b[v] {
                    Some(x) => x == s,
                    None => admits(pack, rule, v, s),
                };
                if ok {
                    let mut nb = b.clone();
                    nb[v] = Some(s);
                    out.extend(seq(pack, rule, &pat[1..], &text[1..], &nb));
                }
            }
        }
    }
    out
}

pub fn tuple(pack: &GrammarPack, rule: &Rule, t: &Tuple, lex: &[Vec<Sym>], b: &B) -> Vec<B> {
    let mut cur = vec![b.clone()];
    for (pat, text) in t.0.iter().zip(lex) {
        cur = cur.iter().flat_map(|x| seq(pack, rule, pat, text, x)).collect();
    }
    cur
}

/// Whether a tuple holds for the all-empty element beyond either word edge.
fn edge_ok(t: &Tuple) -> bool {
    t.0.iter().flatten().all(|i| *i == Item::Any)
}

pub fn llc(pack: &GrammarPack, rule: &Rule, history: &[Vec<Vec<Sym>>], b: &B) -> Vec<B> {
    let ts = &rule.llc.tuples;
    if ts.is_empty() {
        return vec![b.clone()];
    }
    if rule.llc.ellipsis {
        // the nearest element matching the first tuple anchors the block
        let Some(start) = (0..history.len()).rev().find(|&i| !tuple(pack, rule, &ts[0], &history[i], b).is_empty())
        else {
            return vec![];
        };
        if start + ts.len() > history.len() {
            return vec![];
        }
        let mut cur = vec![b.clone()];
        for (k, t) in ts.iter().enumerate() {
            cur = cur.iter().flat_map(|x| tuple(pack, rule, t, &history[start + k], x)).collect();
        }
        return cur;
    }
    let mut cur = vec![b.clone()];
    for (k, t) in ts.iter().enumerate() {
        let back = ts.len() - k;
        if back > history.len() {
            if !edge_ok(t) {
                return vec![];
            }
        } else {
            let h = &history[history.len() - back];
            cur = cur.iter().flat_map(|x| tuple(pack, rule, t, h, x)).collect();
        }
    }
    cur
}

pub fn rlc(pack: &GrammarPack, rule: &Rule, following: &[Vec<Vec<Sym>>], b: &B) -> Vec<B> {
    let mut cur = vec![b.clone()];
    for (k, t) in rule.rlc.iter().enumerate() {
        match following.get(k) {
            Some(h) => cur = cur.iter().flat_map(|x| tuple(pack, rule, t, h, x)).collect(),
            None if edge_ok(t) => {}
            None => return vec![],
        }
    }
    cur
}

fn concrete(pat: &[Item]) -> Vec<Item> {
    pat.iter().copied().filter(|i| *i != Item::Any).collect()
}

pub fn lsc(pack: &GrammarPack, rule: &Rule, surface: &[Sym], start: usize, b: &B) -> Vec<B> {
    let p = concrete(&rule.lsc);
    if p.len() > start {
        return vec![];
    }
    seq(pack, rule, &p, &surface[start - p.len()..start], b)
}

pub fn rsc(pack: &GrammarPack, rule: &Rule, surface: &[Sym], end: usize, b: &B) -> Vec<B> {
    let p = concrete(&rule.rsc);
    if end + p.len() > surface.len() {
        return vec![];
    }
    seq(pack, rule, &p, &surface[end..end + p.len()], b)
}

/// Every instantiation of every entry on `tree`, spelled with its boundary.
pub fn morphemes_on(pack: &GrammarPack, tree: usize) -> Vec<(Closed, Vec<Sym>)> {
    let mut out = Vec::new();
    for (id, e) in pack.lexicon.entries().iter().enumerate() {
        if e.tree != tree {
            continue;
        }
        let mut assignments: Vec<Vec<Sym>> = vec![vec![]];
        for v in &e.vars {
            assignments = assignments
                .iter()
                .flat_map(|a| {
                    pack.class_sets[v.class].iter().map(move |&s| {
                        let mut n = a.clone();
                        n.push(s);
                        n
                    })
                })
                .collect();
        }
        for values in assignments {
            let mut spelled: Vec<Sym> = e
                .form
                .iter()
                .map(|f| match f {
                    mtl::lexicon::FormItem::Lit(s) => *s,
                    mtl::lexicon::FormItem::Var(v) => values[*v],
                })
                .collect();
            spelled.push(mtl::symbol::BOUNDARY);
            out.push((Closed { entry: id, values }, spelled));
        }
    }
    out
}
