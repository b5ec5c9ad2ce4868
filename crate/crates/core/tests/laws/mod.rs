//! Algebraic laws of feature-structure unification, as reusable checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mtl::feature::VarScope;
use mtl::{Env, FeatureStructure, Term};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

const ATTRS: [&str; 3] = ["a", "b", "c"];

fn term() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => prop::sample::subsequence(vec!["1", "2", "3"], 1..=3).prop_map(|v| {
            if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.join(","))
            }
        }),
        2 => prop::sample::select(vec!["X", "Y", "Z"]).prop_map(str::to_string),
    ]
}

pub fn fs_text() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::option::of(term()), 3).prop_map(|terms| {
        let parts: Vec<String> = ATTRS
            .iter()
            .zip(terms)
            .filter_map(|(a, t)| t.map(|t| format!("{a}={t}")))
            .collect();
        format!("[{}]", parts.join(","))
    })
}

pub fn parse_all(texts: &[&str]) -> Vec<FeatureStructure> {
    let mut scope = VarScope::new();
    texts.iter().map(|t| FeatureStructure::parse(t, &mut scope).unwrap()).collect()
}

/// Resolved values per attribute; unbound attributes are described by the
/// set of attributes that share their variable, which is invariant under
/// renaming.
fn canon(fs: &FeatureStructure, env: &Env) -> BTreeMap<String, String> {
    let resolved = fs.resolve(env);
    let mut out = BTreeMap::new();
    for (attr, t) in resolved.entries() {
        let v = match t {
            Term::Set(s) => {
                let mut v = s.values().to_vec();
                v.sort();
                v.join(",")
            }
            Term::Var(_) => {
                let mut probe_env = env.clone();
                let probe = FeatureStructure::new().with_values(attr, &["probe"]);
                let bound = fs.unify(&probe, &mut probe_env).expect("free variable accepts any value");
                let bound = bound.resolve(&probe_env);
                let mut shared: Vec<&str> = bound
                    .entries()
                    .iter()
                    .filter(|(_, t)| matches!(t, Term::Set(s) if s.contains("probe")))
                    .map(|(a, _)| a.as_str())
                    .collect();
                shared.sort();
                format!("var{{{}}}", shared.join(","))
            }
        };
        out.insert(attr.clone(), v);
    }
    out
}

fn unify_in(a: &FeatureStructure, b: &FeatureStructure, env: &mut Env) -> Option<BTreeMap<String, String>> {
    a.unify(b, env).map(|r| canon(&r, env))
}

type Law = Result<(), TestCaseError>;

pub fn commutative(a: &str, b: &str) -> Law {
    let fs = parse_all(&[a, b]);
    let ab = unify_in(&fs[0], &fs[1], &mut Env::new());
    let ba = unify_in(&fs[1], &fs[0], &mut Env::new());
    prop_assert_eq!(ab, ba);
    Ok(())
}

pub fn associative(a: &str, b: &str, c: &str) -> Law {
    let fs = parse_all(&[a, b, c]);
    let mut e1 = Env::new();
    let left = fs[0].unify(&fs[1], &mut e1).and_then(|ab| ab.unify(&fs[2], &mut e1)).map(|r| canon(&r, &e1));
    let mut e2 = Env::new();
    let right = fs[1].unify(&fs[2], &mut e2).and_then(|bc| fs[0].unify(&bc, &mut e2)).map(|r| canon(&r, &e2));
    prop_assert_eq!(left, right);
    Ok(())
}

pub fn idempotent(a: &str) -> Law {
    let fs = parse_all(&[a]);
    let mut env = Env::new();
    let alone = canon(&fs[0], &env);
    let twice = unify_in(&fs[0], &fs[0], &mut env);
    prop_assert_eq!(twice, Some(alone));
    Ok(())
}

pub fn monotone(a: &str, b: &str) -> Law {
    let fs = parse_all(&[a, b]);
    let mut env = Env::new();
    if let Some(r) = fs[0].unify(&fs[1], &mut env) {
        let r = r.resolve(&env);
        for operand in &fs {
            for (attr, t) in operand.entries() {
                let got = r.get(attr);
                prop_assert!(got.is_some(), "{} lost", attr);
                if let (Term::Set(want), Some(Term::Set(have))) = (t, got) {
                    prop_assert!(have.is_subset(want), "{} grew: {} vs {}", attr, have, want);
                }
            }
        }
    }
    Ok(())
}

pub fn bindings_persist(a: &str, b: &str, c: &str) -> Law {
    let fs = parse_all(&[a, b, c]);
    let mut env = Env::new();
    let Some(ab) = fs[0].unify(&fs[1], &mut env) else { return Ok(()) };
    let before: Vec<_> = (0..3).map(|id| env.lookup(id).cloned()).collect();
    if ab.unify(&fs[2], &mut env).is_some() {
        for (id, old) in before.iter().enumerate() {
            if let Some(old) = old {
                let now = env.lookup(id as u32);
                prop_assert!(now.is_some_and(|n| n.is_subset(old)), "variable {} rebound", id);
            }
        }
    }
    Ok(())
}

pub fn failure_leaves_env_unchanged(a: &str, b: &str, c: &str) -> Law {
    let fs = parse_all(&[a, b, c]);
    let mut env = Env::new();
    let Some(ab) = fs[0].unify(&fs[1], &mut env) else { return Ok(()) };
    let snapshot = env.clone();
    if ab.unify(&fs[2], &mut env).is_none() {
        prop_assert_eq!(env, snapshot);
    }
    Ok(())
}

/// Every law over `cases` random triples.
pub fn run_all(cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    });
    runner
        .run(&(fs_text(), fs_text(), fs_text()), |(a, b, c)| {
            commutative(&a, &b)?;
            associative(&a, &b, &c)?;
            idempotent(&a)?;
            monotone(&a, &b)?;
            bindings_persist(&a, &b, &c)?;
            failure_leaves_env_unchanged(&a, &b, &c)
        })
        .map_err(|e| e.to_string())
}
