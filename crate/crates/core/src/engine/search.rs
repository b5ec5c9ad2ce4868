use std::collections::HashSet;

use crate::feature::FeatureStructure;
use crate::lexicon::{Closed, TapeSource};
use crate::pack::GrammarPack;
use crate::rule::{match_llc, match_lsc, match_rlc, match_rsc, match_seq, Bindings, Item, Rule, VarDomain};
use crate::symbol::Sym;

use super::complete::{finish, ClosedAt};
use super::source::{Cursor, Source};
use super::{Derivation, Element, SearchLimits};

/// A deferred right-context check for one element.
#[derive(Clone)]
struct Pending {
    elem: usize,
    rlc: bool,
    rsc: bool,
    binds: Vec<Bindings>,
}

#[derive(Clone)]
struct State {
    pos: Vec<Cursor>,
    tapes: Vec<Vec<Sym>>,
    morph_start: Vec<usize>,
    closed: Vec<ClosedAt>,
    surface: Vec<Sym>,
    elements: Vec<Element>,
    pending: Vec<Pending>,
    silent_run: usize,
    insertion_run: usize,
}

/// Result of reading one rule's LEX off the tapes.
struct LexRead {
    b: Bindings,
    pos: Vec<Cursor>,
    consumed: Vec<Vec<Sym>>,
    /// (tape, index of the boundary on that tape, morpheme)
    closes: Vec<(usize, usize, Closed)>,
}

type Key = (Vec<(usize, Vec<Sym>, Vec<Vec<Sym>>)>, Vec<(usize, Closed)>);

struct Search<'a> {
    pack: &'a GrammarPack,
    sources: &'a [Source<'a>],
    target: Option<&'a [Sym]>,
    overrides: &'a [Vec<FeatureStructure>],
    limits: SearchLimits,
    seen: HashSet<Key>,
    out: Vec<Derivation>,
}

pub(super) fn run<'a>(
    pack: &'a GrammarPack,
    sources: &'a [Source<'a>],
    target: Option<&'a [Sym]>,
    overrides: &'a [Vec<FeatureStructure>],
    limits: SearchLimits,
) -> Vec<Derivation> {
    let n = pack.tapes;
    if sources.len() != n {
        return Vec::new();
    }
    let mut s = Search {
        pack,
        sources,
        target,
        overrides,
        limits,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    let st = State {
        pos: sources.iter().map(|s| s.start()).collect(),
        tapes: vec![Vec::new(); n],
        morph_start: vec![0; n],
        closed: Vec::new(),
        surface: Vec::new(),
        elements: Vec::new(),
        pending: Vec::new(),
        silent_run: 0,
        insertion_run: 0,
    };
    s.dfs(st);
    let mut out = s.out;
    let names = |d: &Derivation| -> Vec<String> {
        d.elements.iter().map(|e| pack.rules[e.rule].name.clone()).collect()
    };
    let tape_text = |d: &Derivation| -> Vec<String> { d.tapes.iter().map(|t| pack.symbols.spaced(t)).collect() };
    out.sort_by(|a, b| {
        (a.elements.len(), names(a), tape_text(a), pack.symbols.join(&a.surface)).cmp(&(
            b.elements.len(),
            names(b),
            tape_text(b),
            pack.symbols.join(&b.surface),
        ))
    });
    out
}

impl Search<'_> {
    fn dfs(&mut self, st: State) {
        if self.out.len() >= self.limits.max_derivations {
            return;
        }
        self.try_complete(&st);
        for (ri, rule) in self.pack.rules.iter().enumerate() {
            if rule.is_insertion() && st.insertion_run >= self.limits.max_insertion_run {
                continue;
            }
            if rule.surf.is_empty() && st.silent_run >= self.limits.max_silent_run {
                continue;
            }
            if let Some(t) = self.target {
                if st.surface.len() + rule.surf.len() > t.len() {
                    continue;
                }
            }
            for child in self.children(&st, rule) {
                if let Some(next) = self.extend(&st, ri, child) {
                    self.dfs(next);
                }
            }
        }
    }

    /// Candidate applications of `rule` at `st`, merged when they differ
    /// only in bindings.
    fn children(&self, st: &State, rule: &Rule) -> Vec<Child> {
        let pack = self.pack;
        let mut kids: Vec<Child> = Vec::new();
        let history: Vec<&[Vec<Sym>]> = st.elements.iter().map(|e| e.lex.as_slice()).collect();
        let mut reads = Vec::new();
        self.read_lex(
            st,
            rule,
            0,
            0,
            LexRead {
                b: vec![None; rule.vars.len()],
                pos: st.pos.clone(),
                consumed: vec![Vec::new(); pack.tapes],
                closes: Vec::new(),
            },
            &mut reads,
        );
        for read in reads {
            for b1 in match_llc(pack, rule, &history, &read.b) {
                for b2 in match_lsc(pack, rule, &st.surface, st.surface.len(), &b1) {
                    for (b3, seg) in self.surf_options(st, rule, &b2) {
                        let binds = match self.target {
                            Some(t) => match_rsc(pack, rule, t, st.surface.len() + seg.len(), &b3),
                            None => vec![b3],
                        };
                        if binds.is_empty() {
                            continue;
                        }
                        match kids.iter_mut().find(|k| {
                            k.seg == seg && k.consumed == read.consumed && k.pos == read.pos && k.closes == read.closes
                        }) {
                            Some(k) => k.binds.extend(binds),
                            None => kids.push(Child {
                                seg,
                                consumed: read.consumed.clone(),
                                pos: read.pos.clone(),
                                closes: read.closes.clone(),
                                binds,
                            }),
                        }
                    }
                }
            }
        }
        kids
    }

    fn read_lex(&self, st: &State, rule: &Rule, t: usize, i: usize, cur: LexRead, out: &mut Vec<LexRead>) {
        if t == self.pack.tapes {
            out.push(cur);
            return;
        }
        let pat = &rule.lex.0[t];
        if i == pat.len() {
            self.read_lex(st, rule, t + 1, 0, cur, out);
            return;
        }
        let classes = &self.pack.class_sets;
        let src = &self.sources[t];
        let mut cands: Vec<(Sym, Bindings)> = Vec::new();
        match pat[i] {
            Item::Lit(s) => cands.push((s, cur.b.clone())),
            Item::Var(v) => match cur.b[v] {
                Some(s) => cands.push((s, cur.b.clone())),
                None => {
                    for s in src.next_syms(&cur.pos[t], classes) {
                        if self.pack.admits(rule, v, s) {
                            let mut b = cur.b.clone();
                            b[v] = Some(s);
                            cands.push((s, b));
                        }
                    }
                }
            },
            Item::Any => return,
        }
        for (sym, b) in cands {
            for (np, closed) in src.step(&cur.pos[t], sym, classes) {
                let at = st.tapes[t].len() + cur.consumed[t].len();
                let mut next = LexRead {
                    b: b.clone(),
                    pos: cur.pos.clone(),
                    consumed: cur.consumed.clone(),
                    closes: cur.closes.clone(),
                };
                next.pos[t] = np;
                next.consumed[t].push(sym);
                if let Some(c) = closed {
                    next.closes.push((t, at, c));
                }
                self.read_lex(st, rule, t, i + 1, next, out);
            }
        }
    }

    /// Surface segments for SURF: read from the target in analysis,
    /// enumerated over the alphabet in generation.
    fn surf_options(&self, st: &State, rule: &Rule, b: &Bindings) -> Vec<(Bindings, Vec<Sym>)> {
        match self.target {
            Some(t) => {
                let from = st.surface.len();
                let seg = &t[from..from + rule.surf.len()];
                match_seq(self.pack, rule, &rule.surf, seg, b)
                    .into_iter()
                    .map(|nb| (nb, seg.to_vec()))
                    .collect()
            }
            None => {
                let mut out = Vec::new();
                self.spell_surf(rule, 0, b.clone(), Vec::new(), &mut out);
                out
            }
        }
    }

    fn spell_surf(&self, rule: &Rule, i: usize, b: Bindings, seg: Vec<Sym>, out: &mut Vec<(Bindings, Vec<Sym>)>) {
        let Some(item) = rule.surf.get(i) else {
            out.push((b, seg));
            return;
        };
        match *item {
            Item::Lit(s) => {
                let mut seg = seg;
                seg.push(s);
                self.spell_surf(rule, i + 1, b, seg, out);
            }
            Item::Var(v) => match b[v] {
                Some(s) => {
                    let mut seg = seg;
                    seg.push(s);
                    self.spell_surf(rule, i + 1, b, seg, out);
                }
                None => {
                    for &s in &self.pack.alphabet {
                        if self.pack.admits(rule, v, s) {
                            let mut nb = b.clone();
                            nb[v] = Some(s);
                            let mut ns = seg.clone();
                            ns.push(s);
                            self.spell_surf(rule, i + 1, nb, ns, out);
                        }
                    }
                }
            },
            Item::Any => {}
        }
    }
}

struct Child {
    seg: Vec<Sym>,
    consumed: Vec<Vec<Sym>>,
    pos: Vec<Cursor>,
    closes: Vec<(usize, usize, Closed)>,
    binds: Vec<Bindings>,
}

impl Search<'_> {
    fn extend(&self, st: &State, ri: usize, child: Child) -> Option<State> {
        let rule = &self.pack.rules[ri];
        let mut next = st.clone();
        let k = next.elements.len();
        let element = Element {
            rule: ri,
            surface: child.seg.clone(),
            surface_start: st.surface.len(),
            lex: child.consumed.clone(),
            tape_start: st.tapes.iter().map(|t| t.len()).collect(),
            bindings: child.binds[0].clone(),
        };
        for (t, syms) in child.consumed.iter().enumerate() {
            next.tapes[t].extend(syms);
        }
        for (t, at, closed) in child.closes {
            next.closed.push(ClosedAt {
                tape: t,
                closed,
                span: (next.morph_start[t], at + 1),
                position: k,
            });
            next.morph_start[t] = at + 1;
        }
        next.pos = child.pos;
        next.surface.extend(&child.seg);
        next.silent_run = if child.seg.is_empty() { st.silent_run + 1 } else { 0 };
        next.insertion_run = if rule.is_insertion() { st.insertion_run + 1 } else { 0 };
        next.elements.push(element);
        let rsc = self.target.is_none() && rule.rsc_len() > 0;
        if !rule.rlc.is_empty() || rsc {
            next.pending.push(Pending {
                elem: k,
                rlc: !rule.rlc.is_empty(),
                rsc,
                binds: child.binds,
            });
        }
        if self.advance(&mut next, false) {
            Some(next)
        } else {
            None
        }
    }

    /// Re-check deferred contexts that have become decidable. False when one
    /// of them fails.
    fn advance(&self, st: &mut State, complete: bool) -> bool {
        let pack = self.pack;
        let mut keep = Vec::new();
        for mut p in std::mem::take(&mut st.pending) {
            let rule = &pack.rules[st.elements[p.elem].rule];
            if p.rlc {
                let following: Vec<&[Vec<Sym>]> =
                    st.elements[p.elem + 1..].iter().map(|e| e.lex.as_slice()).collect();
                let mut decided = true;
                let mut nb = Vec::new();
                for b in &p.binds {
                    match match_rlc(pack, rule, &following, complete, b) {
                        Some(v) => nb.extend(v),
                        None => decided = false,
                    }
                }
                if decided {
                    if nb.is_empty() {
                        return false;
                    }
                    p.binds = nb;
                    p.rlc = false;
                }
            }
            if p.rsc {
                let e = &st.elements[p.elem];
                let end = e.surface_start + e.surface.len();
                if complete || st.surface.len() >= end + rule.rsc_len() {
                    let nb: Vec<Bindings> = p
                        .binds
                        .iter()
                        .flat_map(|b| match_rsc(pack, rule, &st.surface, end, b))
                        .collect();
                    if nb.is_empty() {
                        return false;
                    }
                    p.binds = nb;
                    p.rsc = false;
                }
            }
            if p.rlc || p.rsc {
                keep.push(p);
            }
        }
        st.pending = keep;
        true
    }

    fn try_complete(&mut self, st: &State) {
        if st.elements.is_empty() {
            return;
        }
        if let Some(t) = self.target {
            if st.surface.len() != t.len() {
                return;
            }
        }
        if !self.sources.iter().zip(&st.pos).all(|(s, p)| s.can_end(p)) {
            return;
        }
        let mut st = st.clone();
        if !self.advance(&mut st, true) {
            return;
        }
        let key: Key = (
            st.elements
                .iter()
                .map(|e| (e.rule, e.surface.clone(), e.lex.clone()))
                .collect(),
            st.closed.iter().map(|c| (c.tape, c.closed.clone())).collect(),
        );
        if !self.seen.insert(key) {
            return;
        }
        if let Some(d) = finish(self.pack, st.elements, st.surface, st.tapes, st.closed, self.overrides) {
            self.out.push(d);
        }
    }
}
