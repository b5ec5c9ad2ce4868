//! Brute-force reference for the two-level module: enumerate every
//! partition of a surface word into rule applications, materializing tape
//! contents one morpheme at a time, then check contexts, rule features and
//! obligatory rules on the finished partition.

#![allow(dead_code)]

pub mod matcher;

use std::collections::{BTreeSet, HashMap};

use mtl::engine::SearchLimits;
use mtl::lexicon::Closed;
use mtl::pack::GrammarPack;
use mtl::symbol::{Sym, BOUNDARY};
use mtl::{Derivation, Env, FeatureStructure};

use matcher::B;

#[derive(Clone, Debug)]
struct El {
    rule: usize,
    start: usize,
    surface: Vec<Sym>,
    lex: Vec<Vec<Sym>>,
    tape_start: Vec<usize>,
    b: B,
}

#[derive(Clone, Debug)]
struct Tape {
    morphs: Vec<(Closed, usize, usize)>,
    syms: Vec<Sym>,
    used: usize,
}

struct Walk<'a> {
    pack: &'a GrammarPack,
    surface: &'a [Sym],
    menus: Vec<Vec<(Closed, Vec<Sym>)>>,
    limits: SearchLimits,
    found: BTreeSet<String>,
}

/// Canonical text of every licensed, coherent derivation of `word`.
pub fn derivations(pack: &GrammarPack, word: &[Sym]) -> BTreeSet<String> {
    let mut w = Walk {
        pack,
        surface: word,
        menus: (1..=pack.tapes).map(|t| matcher::morphemes_on(pack, t)).collect(),
        limits: SearchLimits::default(),
        found: BTreeSet::new(),
    };
    let tapes = vec![
        Tape {
            morphs: vec![],
            syms: vec![],
            used: 0
        };
        pack.tapes
    ];
    w.step(0, &mut vec![], tapes, 0, 0);
    w.found
}

impl Walk<'_> {
    fn step(&mut self, pos: usize, els: &mut Vec<El>, tapes: Vec<Tape>, silent: usize, inserted: usize) {
        if pos == self.surface.len() && tapes.iter().all(|t| t.used == t.syms.len()) {
            if let Some(c) = self.finish(els, &tapes) {
                self.found.insert(c);
            }
        }
        for r in 0..self.pack.rules.len() {
            let rule = &self.pack.rules[r];
            let slen = rule.surf.len();
            if pos + slen > self.surface.len() {
                continue;
            }
            let is_silent = slen == 0;
            let is_insertion = rule.lex.0.iter().all(|p| p.is_empty());
            if is_silent && silent >= self.limits.max_silent_run {
                continue;
            }
            if is_insertion && inserted >= self.limits.max_insertion_run {
                continue;
            }
            let seg = &self.surface[pos..pos + slen];
            for b in matcher::seq(self.pack, rule, &rule.surf, seg, &vec![None; rule.vars.len()]) {
                self.extend_tapes(r, pos, 0, tapes.clone(), b, els, silent, inserted);
            }
        }
    }

    /// Reads rule `r`'s LEX tape by tape, growing tapes with whole
    /// morphemes where the rule needs more symbols than are there.
    #[allow(clippy::too_many_arguments)]
    fn extend_tapes(
        &mut self,
        r: usize,
        pos: usize,
        t: usize,
        tapes: Vec<Tape>,
        b: B,
        els: &mut Vec<El>,
        silent: usize,
        inserted: usize,
    ) {
        let rule = &self.pack.rules[r];
        if t == self.pack.tapes {
            let lex: Vec<Vec<Sym>> = (0..self.pack.tapes)
                .map(|k| tapes[k].syms[tapes[k].used..tapes[k].used + rule.lex.0[k].len()].to_vec())
                .collect();
            if lex.iter().all(|l| l.is_empty()) && rule.surf.is_empty() {
                return;
            }
            let history: Vec<Vec<Vec<Sym>>> = els.iter().map(|e| e.lex.clone()).collect();
            let slen = rule.surf.len();
            let mut bs = Vec::new();
            for b1 in matcher::tuple(self.pack, rule, &rule.lex, &lex, &b) {
                for b2 in matcher::llc(self.pack, rule, &history, &b1) {
                    for b3 in matcher::lsc(self.pack, rule, self.surface, pos, &b2) {
                        bs.extend(matcher::rsc(self.pack, rule, self.surface, pos + slen, &b3));
                    }
                }
            }
            for b in bs {
                let mut next = tapes.clone();
                let tape_start: Vec<usize> = next.iter().map(|x| x.used).collect();
                for (k, tp) in next.iter_mut().enumerate() {
                    tp.used += rule.lex.0[k].len();
                }
                els.push(El {
                    rule: r,
                    start: pos,
                    surface: self.surface[pos..pos + slen].to_vec(),
                    lex: lex.clone(),
                    tape_start,
                    b,
                });
                let silent = if slen == 0 { silent + 1 } else { 0 };
                let inserted = if lex.iter().all(|l| l.is_empty()) { inserted + 1 } else { 0 };
                self.step(pos + slen, els, next, silent, inserted);
                els.pop();
            }
            return;
        }
        let need = rule.lex.0[t].len();
        if tapes[t].used + need <= tapes[t].syms.len() {
            self.extend_tapes(r, pos, t + 1, tapes, b, els, silent, inserted);
            return;
        }
        for k in 0..self.menus[t].len() {
            let (closed, spelled) = self.menus[t][k].clone();
            let mut next = tapes.clone();
            let start = next[t].syms.len();
            next[t].syms.extend(&spelled);
            next[t].morphs.push((closed, start, start + spelled.len()));
            self.extend_tapes(r, pos, t, next, b.clone(), els, silent, inserted);
        }
    }

    fn finish(&self, els: &[El], tapes: &[Tape]) -> Option<String> {
        let pack = self.pack;
        let lexes: Vec<Vec<Vec<Sym>>> = els.iter().map(|e| e.lex.clone()).collect();
        // right lexical contexts, now that the whole partition is known
        for (i, e) in els.iter().enumerate() {
            if matcher::rlc(pack, &pack.rules[e.rule], &lexes[i + 1..], &e.b).is_empty() {
                return None;
            }
        }
        // morphemes, positioned by the element that reads their boundary
        let mut ms: Vec<M> = Vec::new();
        for (t, tape) in tapes.iter().enumerate() {
            for (closed, s, end) in &tape.morphs {
                let last = end - 1;
                debug_assert_eq!(tape.syms[last], BOUNDARY);
                let position = els
                    .iter()
                    .position(|e| e.tape_start[t] <= last && last < e.tape_start[t] + e.lex[t].len())
                    .expect("every symbol is read");
                ms.push(M {
                    tape: t,
                    closed: closed.clone(),
                    span: (*s, *end),
                    position,
                    features: FeatureStructure::new(),
                });
            }
        }
        ms.sort_by_key(|m| (m.position, m.tape));
        let mut env = Env::new();
        for m in ms.iter_mut() {
            m.features = pack.lexicon.entry(m.closed.entry).features.instantiate(&mut env);
        }
        for e in els {
            apply(pack, e.rule, e, &mut ms, &mut env)?;
        }
        // obligatory rules
        for (i, e) in els.iter().enumerate() {
            for (r, rule) in pack.rules.iter().enumerate().filter(|(_, r)| r.is_obligatory()) {
                let mut bs = Vec::new();
                for b1 in matcher::tuple(pack, rule, &rule.lex, &e.lex, &vec![None; rule.vars.len()]) {
                    for b2 in matcher::llc(pack, rule, &lexes[..i], &b1) {
                        for b3 in matcher::lsc(pack, rule, self.surface, e.start, &b2) {
                            for b4 in matcher::rsc(pack, rule, self.surface, e.start + e.surface.len(), &b3) {
                                bs.extend(matcher::rlc(pack, rule, &lexes[i + 1..], &b4));
                            }
                        }
                    }
                }
                for b in bs {
                    let mut env2 = env.clone();
                    let mut ms2 = ms.clone();
                    if apply(pack, r, e, &mut ms2, &mut env2).is_none() {
                        continue;
                    }
                    if matcher::seq(pack, rule, &rule.surf, &e.surface, &b).is_empty() {
                        return None;
                    }
                }
            }
        }
        let elems: Vec<(usize, Vec<Sym>, Vec<Vec<Sym>>)> =
            els.iter().map(|e| (e.rule, e.surface.clone(), e.lex.clone())).collect();
        let morphs: Vec<(usize, Closed, FeatureStructure)> =
            ms.iter().map(|m| (m.tape, m.closed.clone(), m.features.resolve(&env))).collect();
        Some(canon(pack, &elems, &morphs))
    }
}

#[derive(Clone, Debug)]
struct M {
    tape: usize,
    closed: Closed,
    span: (usize, usize),
    position: usize,
    features: FeatureStructure,
}

fn apply(pack: &GrammarPack, r: usize, e: &El, ms: &mut [M], env: &mut Env) -> Option<()> {
    let rule = &pack.rules[r];
    let mut map = HashMap::new();
    for (t, fs) in rule.features.iter().enumerate() {
        if fs.is_empty() {
            continue;
        }
        let inst = fs.instantiate_with(env, &mut map);
        let at = e.tape_start[t];
        let on_tape: Vec<usize> = (0..ms.len()).filter(|&k| ms[k].tape == t).collect();
        let target = on_tape
            .iter()
            .copied()
            .find(|&k| ms[k].span.0 <= at && at < ms[k].span.1)
            .or_else(|| on_tape.iter().copied().max_by_key(|&k| ms[k].span.0));
        if let Some(k) = target {
            ms[k].features = ms[k].features.unify(&inst, env)?;
        }
    }
    Some(())
}

fn canon(pack: &GrammarPack, elems: &[(usize, Vec<Sym>, Vec<Vec<Sym>>)], morphs: &[(usize, Closed, FeatureStructure)]) -> String {
    let el: Vec<String> = elems
        .iter()
        .map(|(r, s, lex)| {
            let tapes: Vec<String> = lex.iter().map(|l| pack.symbols.spaced(l)).collect();
            format!("{}:{}=({})", pack.rules[*r].name, pack.symbols.join(s), tapes.join(","))
        })
        .collect();
    let ms: Vec<String> = morphs
        .iter()
        .map(|(t, c, fs)| format!("{}:{}{}", t + 1, pack.closed_key(c), fs))
        .collect();
    format!("{} :: {}", el.join(" "), ms.join(" "))
}

/// The same canonical text for an engine derivation.
pub fn engine_canon(pack: &GrammarPack, d: &Derivation) -> String {
    let elems: Vec<(usize, Vec<Sym>, Vec<Vec<Sym>>)> =
        d.elements.iter().map(|e| (e.rule, e.surface.clone(), e.lex.clone())).collect();
    let morphs: Vec<(usize, Closed, FeatureStructure)> = d
        .morphemes
        .iter()
        .map(|m| (m.tape, m.closed.clone(), m.features.resolve(&d.env)))
        .collect();
    canon(pack, &elems, &morphs)
}

/// Re-run the final checks on an engine derivation: right contexts, rule
/// features and obligatory rules. Returns the canonical text on success.
pub fn recheck(pack: &GrammarPack, d: &Derivation) -> Option<String> {
    let w = Walk {
        pack,
        surface: &d.surface,
        menus: vec![],
        limits: SearchLimits::default(),
        found: BTreeSet::new(),
    };
    let els: Vec<El> = d
        .elements
        .iter()
        .map(|e| El {
            rule: e.rule,
            start: e.surface_start,
            surface: e.surface.clone(),
            lex: e.lex.clone(),
            tape_start: e.tape_start.clone(),
            b: e.bindings.clone(),
        })
        .collect();
    let mut tapes: Vec<Tape> = d
        .tapes
        .iter()
        .map(|syms| Tape {
            morphs: vec![],
            syms: syms.clone(),
            used: syms.len(),
        })
        .collect();
    for m in &d.morphemes {
        tapes[m.tape].morphs.push((m.closed.clone(), m.span.0, m.span.1));
    }
    for t in &mut tapes {
        t.morphs.sort_by_key(|m| m.1);
    }
    w.finish(&els, &tapes)
}

/// Compare the engine's derivation set for `word` with the enumerator's.
/// Returns the number of derivations when they agree.
pub fn agrees(pack: &GrammarPack, word: &str) -> Result<usize, String> {
    let syms = pack.tokenize_surface(word).map_err(|e| e.to_string())?;
    let want = derivations(pack, &syms);
    let got: BTreeSet<String> = mtl::engine::analyze_surface(pack, &syms, SearchLimits::default())
        .iter()
        .map(|d| engine_canon(pack, d))
        .collect();
    if got == want {
        Ok(got.len())
    } else {
        let missing: Vec<_> = want.difference(&got).collect();
        let extra: Vec<_> = got.difference(&want).collect();
        Err(format!("{word}: engine misses {missing:?}, adds {extra:?}"))
    }
}
