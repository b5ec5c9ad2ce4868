use std::collections::HashMap;

use crate::feature::{Env, FeatureStructure};
use crate::lexicon::Closed;
use crate::pack::GrammarPack;
use crate::rule::{match_llc, match_lsc, match_rlc, match_rsc, match_seq, match_tuple, Bindings, Rule};
use crate::symbol::Sym;

use super::{Derivation, Element, Morpheme};

#[derive(Debug, Clone)]
pub(super) struct ClosedAt {
    pub tape: usize,
    pub closed: Closed,
    pub span: (usize, usize),
    pub position: usize,
}

/// The morpheme on `tape` that contains read position `at`; past the end of
/// the tape that is the last one.
fn affected(morphemes: &[Morpheme], tape: usize, at: usize) -> Option<usize> {
    let mut last = None;
    for (k, m) in morphemes.iter().enumerate().filter(|(_, m)| m.tape == tape) {
        if m.span.0 <= at && at < m.span.1 {
            return Some(k);
        }
        last = Some(k);
    }
    last
}

/// Unify `rule`'s features into the morphemes its application at `e`
/// touches. None if some unification fails.
fn apply_features(rule: &Rule, e: &Element, morphemes: &mut [Morpheme], env: &mut Env) -> Option<()> {
    if !rule.has_features() {
        return Some(());
    }
    let mut map = HashMap::new();
    for (t, fs) in rule.features.iter().enumerate() {
        if fs.is_empty() {
            continue;
        }
        let inst = fs.instantiate_with(env, &mut map);
        if let Some(k) = affected(morphemes, t, e.tape_start[t]) {
            morphemes[k].features = morphemes[k].features.unify(&inst, env)?;
        }
    }
    Some(())
}

pub(super) fn finish(
    pack: &GrammarPack,
    elements: Vec<Element>,
    surface: Vec<Sym>,
    tapes: Vec<Vec<Sym>>,
    closed: Vec<ClosedAt>,
    overrides: &[Vec<FeatureStructure>],
) -> Option<Derivation> {
    let mut env = Env::new();
    let mut ordinal = vec![0usize; pack.tapes];
    let mut morphemes = Vec::with_capacity(closed.len());
    for c in closed {
        let entry = pack.lexicon.entry(c.closed.entry);
        let mut features = entry.features.instantiate(&mut env);
        if let Some(ov) = overrides.get(c.tape).and_then(|o| o.get(ordinal[c.tape])) {
            if !ov.is_empty() {
                let ov = ov.instantiate(&mut env);
                features = features.unify(&ov, &mut env)?;
            }
        }
        ordinal[c.tape] += 1;
        morphemes.push(Morpheme {
            tape: c.tape,
            entry: c.closed.entry,
            closed: c.closed,
            span: c.span,
            position: c.position,
            features,
        });
    }
    for e in &elements {
        apply_features(&pack.rules[e.rule], e, &mut morphemes, &mut env)?;
    }
    if !coherent(pack, &elements, &surface, &morphemes, &env) {
        return None;
    }
    morphemes.sort_by_key(|m| (m.position, m.tape));
    Some(Derivation {
        elements,
        surface,
        tapes,
        morphemes,
        env,
    })
}

/// Obligatory rules: wherever one's LEX, contexts and features hold for an
/// element, the element's surface must be that rule's SURF.
fn coherent(pack: &GrammarPack, elements: &[Element], surface: &[Sym], morphemes: &[Morpheme], env: &Env) -> bool {
    let lexes: Vec<&[Vec<Sym>]> = elements.iter().map(|e| e.lex.as_slice()).collect();
    for (i, e) in elements.iter().enumerate() {
        for r in pack.rules.iter().filter(|r| r.is_obligatory()) {
            for b in applications(pack, r, i, e, &lexes, surface) {
                let mut env2 = env.clone();
                let mut ms = morphemes.to_vec();
                if apply_features(r, e, &mut ms, &mut env2).is_none() {
                    continue;
                }
                if match_seq(pack, r, &r.surf, &e.surface, &b).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Bindings under which `r`'s lexical side and all contexts hold at element
/// `i`, ignoring SURF.
fn applications(
    pack: &GrammarPack,
    r: &Rule,
    i: usize,
    e: &Element,
    lexes: &[&[Vec<Sym>]],
    surface: &[Sym],
) -> Vec<Bindings> {
    let b0 = vec![None; r.vars.len()];
    let mut out = Vec::new();
    for b1 in match_tuple(pack, r, &r.lex, &e.lex, &b0) {
        for b2 in match_llc(pack, r, &lexes[..i], &b1) {
            for b3 in match_lsc(pack, r, surface, e.surface_start, &b2) {
                let end = e.surface_start + e.surface.len();
                for b4 in match_rsc(pack, r, surface, end, &b3) {
                    if let Some(bs) = match_rlc(pack, r, &lexes[i + 1..], true, &b4) {
                        out.extend(bs);
                    }
                }
            }
        }
    }
    out
}
