//! Two-level search followed by morphotactic parsing.

use std::collections::HashSet;

use crate::engine::{analyze_surface, generate_surface, Derivation, FixedTape, SearchLimits};
use crate::feature::{FeatureStructure, VarScope};
use crate::lexicon::{Closed, FormItem};
use crate::morphotactics::{parse, CatFs, Leaf, Parse};
use crate::pack::GrammarPack;
use crate::symbol::{tokenize, Sym};
use crate::Error;

/// One well-formed result: a derivation plus the parse that licenses it.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub surface: String,
    pub derivation: Derivation,
    pub parse: Parse,
    pub root: CatFs,
}

impl Analysis {
    /// Morpheme keys in emission order.
    pub fn keys(&self, pack: &GrammarPack) -> Vec<String> {
        self.derivation.morphemes.iter().map(|m| pack.closed_key(&m.closed)).collect()
    }

    /// `key key key => cat[fs]`
    pub fn summary(&self, pack: &GrammarPack) -> String {
        format!("{} => {}", self.keys(pack).join(" "), self.root)
    }
}

/// A morpheme requested on a tape: a lookup key and optional features.
#[derive(Debug, Clone, PartialEq)]
pub struct TapeEntry {
    pub key: String,
    pub features: FeatureStructure,
}

/// `KEY` or `KEY[attr=v,...]`, several separated by `+` or whitespace.
pub fn parse_tape_spec(spec: &str) -> Result<Vec<TapeEntry>, Error> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    let mut flush = |cur: &mut String| -> Result<(), Error> {
        let t = cur.trim();
        if !t.is_empty() {
            let (key, fs) = match t.find('[') {
                Some(i) => (&t[..i], &t[i..]),
                None => (t, "[]"),
            };
            let features = FeatureStructure::parse(fs, &mut VarScope::new()).map_err(Error::Input)?;
            if key.is_empty() {
                return Err(Error::Input(format!("missing entry key in `{t}`")));
            }
            out.push(TapeEntry {
                key: key.to_string(),
                features,
            });
        }
        cur.clear();
        Ok(())
    };
    for c in spec.chars() {
        match c {
            '[' => {
                depth += 1;
                cur.push(c);
            }
            ']' => {
                depth -= 1;
                cur.push(c);
            }
            '+' if depth == 0 => flush(&mut cur)?,
            c if c.is_whitespace() && depth == 0 => flush(&mut cur)?,
            c => cur.push(c),
        }
    }
    flush(&mut cur)?;
    Ok(out)
}

/// Entries on `tape` (0-based) matching `key`: explicit names first,
/// otherwise spelled forms, binding class variables.
pub fn resolve_key(pack: &GrammarPack, tape: usize, key: &str) -> Result<Vec<Closed>, Error> {
    let entries = pack.lexicon.entries();
    let named: Vec<Closed> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.tree == tape + 1 && e.name.as_deref() == Some(key) && e.vars.is_empty())
        .map(|(id, _)| Closed { entry: id, values: Vec::new() })
        .collect();
    if !named.is_empty() {
        return Ok(named);
    }
    let mut alpha: Vec<(String, Sym)> = Vec::new();
    let mut add = |s: Sym| {
        let name = pack.symbols.name(s).to_string();
        if !alpha.iter().any(|(_, x)| *x == s) {
            alpha.push((name, s));
        }
    };
    for e in entries.iter().filter(|e| e.tree == tape + 1) {
        for item in &e.form {
            match item {
                FormItem::Lit(s) => add(*s),
                FormItem::Var(v) => pack.class_sets[e.vars[*v].class].iter().for_each(|s| add(*s)),
            }
        }
    }
    let not_found = || Error::Input(format!("no entry `{key}` on tape {}", tape + 1));
    let toks = tokenize(key, &alpha).map_err(|_| not_found())?;
    let mut out = Vec::new();
    for (id, e) in entries.iter().enumerate().filter(|(_, e)| e.tree == tape + 1) {
        if e.form.len() != toks.len() {
            continue;
        }
        let mut values: Vec<Option<Sym>> = vec![None; e.vars.len()];
        let ok = e.form.iter().zip(&toks).all(|(item, &s)| match item {
            FormItem::Lit(l) => *l == s,
            FormItem::Var(v) => match values[*v] {
                Some(x) => x == s,
                None if pack.class_sets[e.vars[*v].class].contains(&s) => {
                    values[*v] = Some(s);
                    true
                }
                None => false,
            },
        });
        if ok {
            out.push(Closed {
                entry: id,
                values: values.into_iter().map(|v| v.expect("every variable occurs in its form")).collect(),
            });
        }
    }
    if out.is_empty() {
        Err(not_found())
    } else {
        Ok(out)
    }
}

fn leaves(pack: &GrammarPack, d: &Derivation) -> Vec<Leaf> {
    d.morphemes
        .iter()
        .map(|m| Leaf {
            category: pack.lexicon.entry(m.entry).category.clone(),
            features: m.features.clone(),
        })
        .collect()
}

fn licensed(pack: &GrammarPack, derivations: Vec<Derivation>, target: Option<&str>) -> Vec<Analysis> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in derivations {
        for p in parse(&leaves(pack, &d), &pack.grammar, target, &d.env) {
            let root = p.root();
            let a = Analysis {
                surface: pack.symbols.join(&d.surface),
                derivation: d.clone(),
                parse: p,
                root,
            };
            if seen.insert((a.surface.clone(), a.summary(pack))) {
                out.push(a);
            }
        }
    }
    out
}

/// Analyses of a surface word, rooted in `target` or the pack's start
/// category.
pub fn analyze(pack: &GrammarPack, word: &str, target: Option<&str>) -> Result<Vec<Analysis>, Error> {
    let surface = pack.tokenize_surface(word)?;
    let derivations = analyze_surface(pack, &surface, SearchLimits::default());
    let start = target.or(Some(pack.start.as_str()).filter(|s| !s.is_empty()));
    Ok(licensed(pack, derivations, start))
}

/// Surface realizations of the given per-tape morphemes. Without a
/// target, any complete constituent licenses a result.
pub fn generate(pack: &GrammarPack, tapes: &[Vec<TapeEntry>], target: Option<&str>) -> Result<Vec<Analysis>, Error> {
    if tapes.len() > pack.tapes {
        return Err(Error::Input(format!("pack has {} tapes, got {}", pack.tapes, tapes.len())));
    }
    // every combination of homograph readings
    let mut combos: Vec<Vec<FixedTape>> = vec![vec![FixedTape::new(); pack.tapes]];
    for (t, entries) in tapes.iter().enumerate() {
        for te in entries {
            let options = resolve_key(pack, t, &te.key)?;
            let mut next = Vec::new();
            for combo in &combos {
                for c in &options {
                    let mut nc = combo.clone();
                    nc[t].push(&pack.lexicon, c.clone(), te.features.clone());
                    next.push(nc);
                }
            }
            combos = next;
        }
    }
    let mut derivations = Vec::new();
    for combo in &combos {
        derivations.extend(generate_surface(pack, combo, SearchLimits::default()));
    }
    let mut out = licensed(pack, derivations, target);
    out.sort_by(|a, b| a.surface.cmp(&b.surface));
    Ok(out)
}
