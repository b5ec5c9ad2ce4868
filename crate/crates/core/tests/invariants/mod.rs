//! Engine invariants over a shipped pack and its corpus. Each check returns
//! a description of the first violation.

#![allow(dead_code)]

use mtl::corpus::{parse_corpus, Direction};
use mtl::engine::analyze_surface;
use mtl::symbol::Sym;
use mtl::{analyze, generate, packs, Analysis, FeatureStructure, GrammarPack, SearchLimits, TapeEntry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle;

/// Words of a corpus with their target category: analysis inputs, then
/// the expected surfaces of generation cases.
pub fn corpus_words(name: &str) -> Vec<(String, Option<String>)> {
    let cases = parse_corpus(packs::corpus(name).unwrap()).unwrap();
    let mut out: Vec<(String, Option<String>)> = Vec::new();
    for c in &cases {
        if c.direction == Direction::Generate {
            out.extend(c.expected_set().into_iter().map(|w| (w, None)));
        } else {
            let (w, t) = c.word();
            out.push((w.to_string(), t.map(str::to_string)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Morpheme keys grouped by tape, each tape in reading order.
pub fn keys_by_tape(pack: &GrammarPack, a: &Analysis) -> Vec<Vec<String>> {
    let mut ms: Vec<_> = a.derivation.morphemes.iter().collect();
    ms.sort_by_key(|m| (m.tape, m.span.0));
    let mut out = vec![Vec::new(); pack.tapes];
    for m in ms {
        out[m.tape].push(pack.closed_key(&m.closed));
    }
    out
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Elements tile the surface and every tape; morphemes tile every tape.
pub fn partitions_are_total(name: &str) -> Result<usize, String> {
    let pack = packs::load(name).unwrap();
    let mut n = 0;
    for (word, _) in corpus_words(name) {
        let surface = pack.tokenize_surface(&word).unwrap();
        for d in analyze_surface(&pack, &surface, SearchLimits::default()) {
            n += 1;
            let mut pos = 0;
            let mut read: Vec<Vec<Sym>> = vec![Vec::new(); pack.tapes];
            for e in &d.elements {
                check(e.surface_start == pos, || format!("{name} {word}: gap on the surface"))?;
                pos += e.surface.len();
                for t in 0..pack.tapes {
                    check(e.tape_start[t] == read[t].len(), || format!("{name} {word}: gap on tape {}", t + 1))?;
                    read[t].extend(&e.lex[t]);
                }
            }
            check(pos == surface.len() && d.surface == surface, || format!("{name} {word}: surface not covered"))?;
            check(read == d.tapes, || format!("{name} {word}: tapes not covered"))?;
            for t in 0..pack.tapes {
                let mut spans: Vec<_> = d.morphemes.iter().filter(|m| m.tape == t).map(|m| m.span).collect();
                spans.sort();
                let mut at = 0;
                for (s, e) in spans {
                    check(s == at, || format!("{name} {word}: morphemes do not tile tape {}", t + 1))?;
                    at = e;
                }
                check(at == d.tapes[t].len(), || format!("{name} {word}: tape {} not covered", t + 1))?;
            }
        }
    }
    Ok(n)
}

/// Contexts, rule features and obligatory rules hold when rechecked
/// independently on each finished derivation.
pub fn derivations_survive_recheck(name: &str) -> Result<usize, String> {
    let pack = packs::load(name).unwrap();
    let mut n = 0;
    for (word, _) in corpus_words(name) {
        let surface = pack.tokenize_surface(&word).unwrap();
        for d in analyze_surface(&pack, &surface, SearchLimits::default()) {
            n += 1;
            let want = oracle::engine_canon(&pack, &d);
            check(oracle::recheck(&pack, &d).as_ref() == Some(&want), || format!("{name} {word}: {want} fails recheck"))?;
        }
    }
    Ok(n)
}

/// Generating from an analysis's morphemes yields the analyzed word.
pub fn analyses_regenerate(name: &str) -> Result<usize, String> {
    let pack = packs::load(name).unwrap();
    let mut n = 0;
    for (word, target) in corpus_words(name) {
        for a in analyze(&pack, &word, target.as_deref()).unwrap() {
            n += 1;
            let tapes: Vec<Vec<TapeEntry>> = keys_by_tape(&pack, &a)
                .into_iter()
                .map(|keys| {
                    keys.into_iter()
                        .map(|key| TapeEntry { key, features: FeatureStructure::new() })
                        .collect()
                })
                .collect();
            let surfaces: Vec<String> = generate(&pack, &tapes, None)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|g| g.surface)
                .collect();
            check(surfaces.contains(&word), || format!("{name} {word}: {} regenerates {surfaces:?}", a.summary(&pack)))?;
        }
    }
    Ok(n)
}

/// Random morpheme choices per tape; every realization found must analyze
/// back to the same morphemes under its own root category. Returns the
/// number of words produced.
pub fn probe(name: &str, seed: u64, probes: usize) -> Result<usize, String> {
    let pack = packs::load(name).unwrap();
    let menus: Vec<Vec<String>> = (1..=pack.tapes)
        .map(|t| {
            let mut keys: Vec<String> = oracle::matcher::morphemes_on(&pack, t)
                .iter()
                .map(|(c, _)| pack.closed_key(c))
                .collect();
            keys.sort();
            keys.dedup();
            keys
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut realized = 0;
    for _ in 0..probes {
        let tapes: Vec<Vec<TapeEntry>> = menus
            .iter()
            .map(|menu| {
                let n = match (menu.is_empty(), rng.gen_range(0..10)) {
                    (true, _) | (_, 0) => 0,
                    (_, 1 | 2) => 2,
                    _ => 1,
                };
                (0..n)
                    .map(|_| TapeEntry {
                        key: menu[rng.gen_range(0..menu.len())].clone(),
                        features: FeatureStructure::new(),
                    })
                    .collect()
            })
            .collect();
        let Ok(found) = generate(&pack, &tapes, None) else { continue };
        for g in found {
            realized += 1;
            let want = keys_by_tape(&pack, &g);
            let back = analyze(&pack, &g.surface, Some(&g.root.category)).map_err(|e| e.to_string())?;
            check(back.iter().any(|a| keys_by_tape(&pack, a) == want), || {
                format!("{name}: {} from {want:?} does not analyze back", g.surface)
            })?;
        }
    }
    check(realized > 0, || format!("{name}: no probe produced a word"))?;
    Ok(realized)
}

/// Engine and brute-force enumerator agree on every corpus word.
pub fn oracle_agrees(name: &str) -> Result<usize, String> {
    let pack = packs::load(name).unwrap();
    let mut n = 0;
    for (word, _) in corpus_words(name) {
        n += oracle::agrees(&pack, &word).map_err(|e| format!("{name} {e}"))?;
    }
    Ok(n)
}
