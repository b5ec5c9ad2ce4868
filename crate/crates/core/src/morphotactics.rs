//! Unification-based context-free morphotactics, parsed shift-reduce with
//! exhaustive backtracking over reduce choices.

use std::collections::HashMap;
use std::fmt;

use crate::feature::{Env, FeatureStructure};

/// A category with a feature-structure template.
#[derive(Debug, Clone, PartialEq)]
pub struct CatFs {
    pub category: String,
    pub features: FeatureStructure,
}

impl fmt::Display for CatFs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.category, self.features)
    }
}

/// `lhs -> rhs1 rhs2 ...`; variable ids are shared across both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct CfRule {
    pub lhs: CatFs,
    pub rhs: Vec<CatFs>,
}

/// One morpheme handed to the parser, its features already instantiated in
/// the derivation environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Leaf {
    pub category: String,
    pub features: FeatureStructure,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseTree {
    Leaf {
        index: usize,
        category: String,
        features: FeatureStructure,
    },
    Node {
        rule: usize,
        category: String,
        features: FeatureStructure,
        children: Vec<ParseTree>,
    },
}

impl ParseTree {
    pub fn category(&self) -> &str {
        match self {
            ParseTree::Leaf { category, .. } | ParseTree::Node { category, .. } => category,
        }
    }

    pub fn features(&self) -> &FeatureStructure {
        match self {
            ParseTree::Leaf { features, .. } | ParseTree::Node { features, .. } => features,
        }
    }

    /// Leaf indices in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        match self {
            ParseTree::Leaf { index, .. } => vec![*index],
            ParseTree::Node { children, .. } => children.iter().flat_map(|c| c.leaves()).collect(),
        }
    }

    /// Bracketed rendering with resolved features.
    pub fn render(&self, env: &Env) -> String {
        match self {
            ParseTree::Leaf { category, features, .. } => {
                format!("{}{}", category, features.resolve(env))
            }
            ParseTree::Node {
                category,
                features,
                children,
                ..
            } => {
                let kids: Vec<String> = children.iter().map(|c| c.render(env)).collect();
                format!("({}{} {})", category, features.resolve(env), kids.join(" "))
            }
        }
    }
}

/// A complete parse together with the bindings it produced.
#[derive(Debug, Clone)]
pub struct Parse {
    pub tree: ParseTree,
    pub env: Env,
}

impl Parse {
    pub fn root(&self) -> CatFs {
        CatFs {
            category: self.tree.category().to_string(),
            features: self.tree.features().resolve(&self.env),
        }
    }
}

/// All parses of `leaves` rooted in `start`, or in any category if `None`.
pub fn parse(leaves: &[Leaf], rules: &[CfRule], start: Option<&str>, env: &Env) -> Vec<Parse> {
    let mut out = Vec::new();
    let mut p = Parser {
        leaves,
        rules,
        start,
        out: &mut out,
    };
    p.run(Vec::new(), 0, env.clone(), 0);
    out
}

struct Parser<'a> {
    leaves: &'a [Leaf],
    rules: &'a [CfRule],
    start: Option<&'a str>,
    out: &'a mut Vec<Parse>,
}

impl Parser<'_> {
    fn run(&mut self, stack: Vec<ParseTree>, next: usize, env: Env, reduce_run: usize) {
        if next == self.leaves.len() && stack.len() == 1 && self.start.is_none_or(|s| stack[0].category() == s) {
            self.out.push(Parse {
                tree: stack[0].clone(),
                env: env.clone(),
            });
        }
        // unary cycles are cut off by bounding consecutive reductions
        if reduce_run <= self.rules.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                let k = rule.rhs.len();
                if k == 0 || k > stack.len() {
                    continue;
                }
                let top = &stack[stack.len() - k..];
                if !top.iter().zip(&rule.rhs).all(|(n, r)| n.category() == r.category) {
                    continue;
                }
                let mut e = env.clone();
                let mut map = HashMap::new();
                let lhs = rule.lhs.features.instantiate_with(&mut e, &mut map);
                let ok = top.iter().zip(&rule.rhs).all(|(node, r)| {
                    let pat = r.features.instantiate_with(&mut e, &mut map);
                    pat.unify(node.features(), &mut e).is_some()
                });
                if !ok {
                    continue;
                }
                let mut st = stack[..stack.len() - k].to_vec();
                st.push(ParseTree::Node {
                    rule: ri,
                    category: rule.lhs.category.clone(),
                    features: lhs,
                    children: top.to_vec(),
                });
                self.run(st, next, e, reduce_run + 1);
            }
        }
        if let Some(leaf) = self.leaves.get(next) {
            let mut st = stack;
            st.push(ParseTree::Leaf {
                index: next,
                category: leaf.category.clone(),
                features: leaf.features.clone(),
            });
            self.run(st, next + 1, env, 0);
        }
    }
}
