use crate::feature::{FeatureStructure, VarScope};
use crate::lexicon::{EntryVar, FormItem, LexiconStore, MorphemeEntry};
use crate::morphotactics::{CatFs, CfRule};
use crate::rule::{Constraint, Item, LeftContext, Rule, RuleKind, RuleVar, Tuple};
use crate::symbol::{Sym, SymbolTable, BOUNDARY};

use super::{Diagnostic, GrammarPack, LexiconDecl, SymbolClass};

type Line = (usize, String);

struct LexBlock {
    line: usize,
    name: String,
    tree: usize,
    entries: Vec<Line>,
}

#[derive(Default)]
struct Raw {
    tapes: Option<(usize, usize)>,
    start: Option<String>,
    alphabet: Vec<Line>,
    classes: Vec<Line>,
    rules: Vec<Line>,
    lexica: Vec<LexBlock>,
    grammar: Vec<Line>,
}

/// Parse pack text. Syntax errors are reported together; semantic checks
/// that do not prevent building the pack are left to [`super::validate`].
pub fn parse_pack(text: &str) -> Result<GrammarPack, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let raw = split_sections(text, &mut diags);
    let Some((tapes_line, tapes)) = raw.tapes else {
        diags.push(Diagnostic::error(1, "missing `tapes N` declaration"));
        return Err(diags);
    };
    if tapes == 0 {
        diags.push(Diagnostic::error(tapes_line, "tape count must be at least 1"));
        return Err(diags);
    }

    let mut b = Builder {
        tapes,
        symbols: SymbolTable::new(),
        alphabet: Vec::new(),
        classes: Vec::new(),
        diags,
    };
    for (line, rest) in &raw.alphabet {
        for w in rest.split_whitespace() {
            let s = b.symbols.intern(w);
            if s == BOUNDARY {
                b.diags.push(Diagnostic::error(*line, "`+` is reserved and cannot be a surface symbol"));
            } else if !b.alphabet.contains(&s) {
                b.alphabet.push(s);
            }
        }
    }
    for (line, rest) in &raw.classes {
        b.class(*line, rest);
    }

    let mut lexicon = LexiconStore::new(tapes);
    let mut lexica = Vec::new();
    for block in &raw.lexica {
        if block.tree == 0 || block.tree > tapes {
            b.diags.push(Diagnostic::error(
                block.line,
                format!("lexicon {} is on tree {} but the pack has {} tapes", block.name, block.tree, tapes),
            ));
            continue;
        }
        lexica.push(LexiconDecl {
            name: block.name.clone(),
            tree: block.tree,
        });
        for (line, text) in &block.entries {
            if let Some(entry) = b.entry(*line, text, block) {
                if let Err(e) = lexicon.insert(entry) {
                    b.diags.push(Diagnostic::error(*line, e.to_string()));
                }
            }
        }
    }

    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();
    for (line, text) in &raw.rules {
        match b.rule(text) {
            Ok(r) => {
                if rules.iter().any(|o: &Rule| o.name == r.name) {
                    b.diags.push(Diagnostic::error(*line, format!("duplicate rule name {}", r.name)));
                }
                rules.push(r);
                rule_lines.push(*line);
            }
            Err(m) => b.diags.push(Diagnostic::error(*line, m)),
        }
    }

    let mut grammar = Vec::new();
    for (line, text) in &raw.grammar {
        match parse_cf_rule(text) {
            Ok(r) => grammar.push(r),
            Err(m) => b.diags.push(Diagnostic::error(*line, m)),
        }
    }

    if b.diags.iter().any(|d| d.is_error()) {
        return Err(b.diags);
    }
    let class_sets = b.classes.iter().map(|c| c.members.clone()).collect();
    Ok(GrammarPack {
        tapes,
        start: raw.start.unwrap_or_default(),
        symbols: b.symbols,
        alphabet: b.alphabet,
        classes: b.classes,
        class_sets,
        rules,
        rule_lines,
        lexica,
        lexicon,
        grammar,
    })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_sections(text: &str, diags: &mut Vec<Diagnostic>) -> Raw {
    enum Block {
        None,
        Lexicon(LexBlock),
        Grammar,
    }
    let mut raw = Raw::default();
    let mut block = Block::None;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let l = strip_comment(line).trim();
        if l.is_empty() {
            continue;
        }
        match &mut block {
            Block::Lexicon(lb) => {
                if l == "}" {
                    if let Block::Lexicon(lb) = std::mem::replace(&mut block, Block::None) {
                        raw.lexica.push(lb);
                    }
                } else {
                    lb.entries.push((n, l.to_string()));
                }
                continue;
            }
            Block::Grammar => {
                if l == "}" {
                    block = Block::None;
                } else {
                    raw.grammar.push((n, l.to_string()));
                }
                continue;
            }
            Block::None => {}
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "tapes" => match rest.parse::<usize>() {
                Ok(k) if raw.tapes.is_none() => raw.tapes = Some((n, k)),
                Ok(_) => diags.push(Diagnostic::error(n, "duplicate `tapes` declaration")),
                Err(_) => diags.push(Diagnostic::error(n, format!("bad tape count `{rest}`"))),
            },
            "start" => raw.start = Some(rest.to_string()),
            "alphabet" => raw.alphabet.push((n, rest.to_string())),
            "class" => raw.classes.push((n, rest.to_string())),
            "rule" => raw.rules.push((n, rest.to_string())),
            "grammar" => {
                let (head, body, closed) = split_block(rest);
                if !head.is_empty() || !rest.contains('{') {
                    diags.push(Diagnostic::error(n, "expected `grammar {`"));
                }
                if !body.is_empty() {
                    raw.grammar.push((n, body.to_string()));
                }
                if !closed {
                    block = Block::Grammar;
                }
            }
            "lexicon" => {
                let (head, body, closed) = split_block(rest);
                match parse_lexicon_header(head).and_then(|h| {
                    if rest.contains('{') {
                        Ok(h)
                    } else {
                        Err("expected `lexicon NAME tree N {`".to_string())
                    }
                }) {
                    Ok((name, tree)) => {
                        let mut lb = LexBlock {
                            line: n,
                            name,
                            tree,
                            entries: Vec::new(),
                        };
                        if !body.is_empty() {
                            lb.entries.push((n, body.to_string()));
                        }
                        if closed {
                            raw.lexica.push(lb);
                        } else {
                            block = Block::Lexicon(lb);
                        }
                    }
                    Err(m) => diags.push(Diagnostic::error(n, m)),
                }
            }
            _ => diags.push(Diagnostic::error(n, format!("unknown declaration `{kw}`"))),
        }
    }
    match block {
        Block::None => {}
        Block::Lexicon(lb) => {
            diags.push(Diagnostic::error(lb.line, format!("lexicon {} is not closed", lb.name)));
        }
        Block::Grammar => diags.push(Diagnostic::error(0, "grammar block is not closed")),
    }
    raw
}

/// Splits `head { body }` or `head { body`; the flag says whether the
/// block closes on the same line.
fn split_block(rest: &str) -> (&str, &str, bool) {
    let Some((head, tail)) = rest.split_once('{') else {
        return (rest.trim(), "", false);
    };
    let tail = tail.trim();
    match tail.strip_suffix('}') {
        Some(body) => (head.trim(), body.trim(), true),
        None => (head.trim(), tail, false),
    }
}

/// `NAME [tree N]`
fn parse_lexicon_header(head: &str) -> Result<(String, usize), String> {
    let words: Vec<&str> = head.split_whitespace().collect();
    match words.as_slice() {
        [name] => Ok((name.to_string(), 1)),
        [name, "tree", k] => k
            .parse()
            .map(|t| (name.to_string(), t))
            .map_err(|_| format!("bad tree number `{k}`")),
        _ => Err("expected `lexicon NAME tree N {`".into()),
    }
}

struct Builder {
    tapes: usize,
    symbols: SymbolTable,
    alphabet: Vec<Sym>,
    classes: Vec<SymbolClass>,
    diags: Vec<Diagnostic>,
}

impl Builder {
    /// `Name = a b c`
    fn class(&mut self, line: usize, rest: &str) {
        let Some((name, members)) = rest.split_once('=') else {
            self.diags.push(Diagnostic::error(line, "expected `class Name = members`"));
            return;
        };
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            self.diags.push(Diagnostic::error(line, format!("bad class name `{name}`")));
            return;
        }
        if self.classes.iter().any(|c| c.name == name) {
            self.diags.push(Diagnostic::error(line, format!("duplicate class {name}")));
            return;
        }
        let mut syms = Vec::new();
        for w in members.split_whitespace() {
            let s = self.symbols.intern(w);
            if !syms.contains(&s) {
                syms.push(s);
            }
        }
        if syms.is_empty() {
            self.diags.push(Diagnostic::error(line, format!("class {name} is empty")));
        }
        self.classes.push(SymbolClass {
            name: name.to_string(),
            members: syms,
        });
    }

    fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// `[KEY =] FORM : CAT[FS] [where V in Class, ...]`
    fn entry(&mut self, line: usize, text: &str, block: &LexBlock) -> Option<MorphemeEntry> {
        match self.entry_inner(text, block) {
            Ok(e) => Some(e),
            Err(m) => {
                self.diags.push(Diagnostic::error(line, m));
                None
            }
        }
    }

    fn entry_inner(&mut self, text: &str, block: &LexBlock) -> Result<MorphemeEntry, String> {
        let fail = Err::<MorphemeEntry, String>;
        let Some((left, right)) = text.split_once(':') else {
            return fail(format!("expected `form : category[features]`, found `{text}`"));
        };
        let (name, form) = match left.split_once('=') {
            Some((k, f)) => (Some(k.trim().to_string()), f.trim()),
            None => (None, left.trim()),
        };
        if name.as_deref() == Some("") {
            return fail("empty entry name".into());
        }
        let (catfs, wh) = match find_word(right, "where") {
            Some(i) => (&right[..i], Some(&right[i + 5..])),
            None => (right, None),
        };
        let (category, fs_text) = split_cat(catfs.trim());
        if category.is_empty() {
            return fail("missing category".into());
        }
        let features = match FeatureStructure::parse(fs_text.unwrap_or("[]"), &mut VarScope::new()) {
            Ok(f) => f,
            Err(m) => return fail(m),
        };
        let mut vars: Vec<EntryVar> = Vec::new();
        if let Some(wh) = wh {
            for clause in wh.split(',') {
                let words: Vec<&str> = clause.split_whitespace().collect();
                match words.as_slice() {
                    [v, "in", c] => match self.class_index(c) {
                        Some(k) => vars.push(EntryVar {
                            name: v.to_string(),
                            class: k,
                        }),
                        None => return fail(format!("unknown class {c}")),
                    },
                    _ => return fail(format!("expected `V in Class`, found `{}`", clause.trim())),
                }
            }
        }
        let mut items = Vec::new();
        for w in form.split_whitespace() {
            match vars.iter().position(|v| v.name == w) {
                Some(k) => items.push(FormItem::Var(k)),
                None if w == "+" => return fail("`+` cannot appear in a lexical form".into()),
                None => items.push(FormItem::Lit(self.symbols.intern(w))),
            }
        }
        Ok(MorphemeEntry {
            name,
            lexicon: block.name.clone(),
            form: items,
            category: category.to_string(),
            features,
            tree: block.tree,
            vars,
        })
    }
}

/// Byte offset of `word` as a standalone whitespace-delimited word.
fn find_word(text: &str, word: &str) -> Option<usize> {
    let mut from = 0;
    while let Some(i) = text[from..].find(word) {
        let at = from + i;
        let before = text[..at].chars().next_back().is_none_or(char::is_whitespace);
        let after = text[at + word.len()..].chars().next().is_none_or(char::is_whitespace);
        if before && after {
            return Some(at);
        }
        from = at + word.len();
    }
    None
}

/// `cat[fs]` into its parts.
fn split_cat(text: &str) -> (&str, Option<&str>) {
    match text.find('[') {
        Some(i) => (text[..i].trim(), Some(&text[i..])),
        None => (text, None),
    }
}

/// `lhs[FS] -> rhs1[FS] rhs2[FS] ...`, variables shared within the rule.
fn parse_cf_rule(text: &str) -> Result<CfRule, String> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| format!("expected `lhs -> rhs`, found `{text}`"))?;
    let mut scope = VarScope::new();
    let lhs_items = cat_items(lhs, &mut scope)?;
    let [lhs] = <[CatFs; 1]>::try_from(lhs_items).map_err(|_| "left side must be one category".to_string())?;
    let rhs = cat_items(rhs, &mut scope)?;
    if rhs.is_empty() {
        return Err("right side is empty".into());
    }
    Ok(CfRule { lhs, rhs })
}

fn cat_items(text: &str, scope: &mut VarScope) -> Result<Vec<CatFs>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '[' {
            i += 1;
        }
        let category: String = chars[start..i].iter().collect();
        let mut fs = FeatureStructure::new();
        if i < chars.len() && chars[i] == '[' {
            let open = i;
            while i < chars.len() && chars[i] != ']' {
                i += 1;
            }
            if i == chars.len() {
                return Err(format!("unclosed `[` after {category}"));
            }
            i += 1;
            let body: String = chars[open..i].iter().collect();
            fs = FeatureStructure::parse(&body, scope)?;
        }
        if category.is_empty() {
            return Err("feature structure without category".into());
        }
        out.push(CatFs { category, features: fs });
    }
    Ok(out)
}

/// Tokens of a rule body. Bracketed feature structures and quoted labels
/// come through as single tokens.
fn rule_tokens(text: &str) -> Result<Vec<String>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let starts = |i: usize, s: &str| s.chars().enumerate().all(|(k, c)| chars.get(i + k) == Some(&c));
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let mut fixed = None;
        for op in ["<=>", "=>", "!=", "..."] {
            if starts(i, op) {
                fixed = Some(op);
                break;
            }
        }
        if let Some(op) = fixed {
            out.push(op.to_string());
            i += op.len();
            continue;
        }
        if "(),;:{}-".contains(c) {
            out.push(c.to_string());
            i += 1;
            continue;
        }
        if c == '[' || c == '"' {
            let close = if c == '[' { ']' } else { '"' };
            let start = i;
            i += 1;
            while i < chars.len() && chars[i] != close {
                i += 1;
            }
            if i == chars.len() {
                return Err(format!("unclosed `{c}`"));
            }
            i += 1;
            out.push(chars[start..i].iter().collect());
            continue;
        }
        let start = i;
        while i < chars.len()
            && !chars[i].is_whitespace()
            && !"(),;:{}[\"-".contains(chars[i])
            && !starts(i, "<=>")
            && !starts(i, "=>")
            && !starts(i, "!=")
            && !starts(i, "...")
        {
            i += 1;
        }
        out.push(chars[start..i].iter().collect());
    }
    Ok(out)
}

/// Split at top-level occurrences of `sep` (outside parentheses and braces).
fn split_top<'a>(toks: &'a [String], sep: &str) -> Vec<&'a [String]> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, t) in toks.iter().enumerate() {
        match t.as_str() {
            "(" | "{" => depth += 1,
            ")" | "}" => depth -= 1,
            s if s == sep && depth == 0 => {
                parts.push(&toks[last..i]);
                last = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&toks[last..]);
    parts
}

struct RuleVars {
    vars: Vec<RuleVar>,
}

impl RuleVars {
    fn id(&mut self, name: &str, surface: bool) -> usize {
        let k = match self.vars.iter().position(|v| v.name == name) {
            Some(k) => k,
            None => {
                self.vars.push(RuleVar {
                    name: name.to_string(),
                    constraints: Vec::new(),
                    on_surface: false,
                });
                self.vars.len() - 1
            }
        };
        self.vars[k].on_surface |= surface;
        k
    }
}

fn is_var_name(w: &str) -> bool {
    w.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl Builder {
    fn item(&mut self, w: &str, vars: &mut RuleVars, surface: bool) -> Result<Option<Item>, String> {
        Ok(match w {
            "*" => Some(Item::Any),
            "_" => None,
            "+" => Some(Item::Lit(BOUNDARY)),
            _ if "(),;:{}-".contains(w) || w.starts_with('[') || w == "..." => {
                return Err(format!("unexpected `{w}`"));
            }
            _ => match self.symbols.get(w) {
                Some(s) => Some(Item::Lit(s)),
                None if is_var_name(w) => Some(Item::Var(vars.id(w, surface))),
                None => Some(Item::Lit(self.symbols.intern(w))),
            },
        })
    }

    fn pattern(&mut self, toks: &[String], vars: &mut RuleVars, surface: bool) -> Result<Vec<Item>, String> {
        let mut out = Vec::new();
        for t in toks {
            if let Some(it) = self.item(t, vars, surface)? {
                out.push(it);
            }
        }
        Ok(out)
    }

    /// A run of `(p1, ..., pn)` tuples; a lone `*` means no tuples.
    fn tuples(&mut self, toks: &[String], vars: &mut RuleVars) -> Result<(Vec<Tuple>, bool), String> {
        let mut out = Vec::new();
        let mut ellipsis = false;
        if toks.len() == 1 && toks[0] == "*" {
            return Ok((out, false));
        }
        let mut i = 0;
        while i < toks.len() {
            match toks[i].as_str() {
                "..." => {
                    ellipsis = true;
                    i += 1;
                }
                "(" => {
                    let close = toks[i..]
                        .iter()
                        .position(|t| t == ")")
                        .ok_or_else(|| "unclosed `(`".to_string())?
                        + i;
                    let mut pats = Vec::new();
                    for part in split_top(&toks[i + 1..close], ",") {
                        pats.push(self.pattern(part, vars, false)?);
                    }
                    if pats.len() != self.tapes {
                        return Err(format!(
                            "tuple has {} tape patterns but the pack has {} tapes",
                            pats.len(),
                            self.tapes
                        ));
                    }
                    out.push(Tuple(pats));
                    i = close + 1;
                }
                t => return Err(format!("expected a tuple, found `{t}`")),
            }
        }
        Ok((out, ellipsis))
    }

    /// `NAME ["label"]: LSC - SURF - RSC (=>|<=>) LLC - LEX - RLC [feat: (...)] [where ...]`
    fn rule(&mut self, text: &str) -> Result<Rule, String> {
        let toks = rule_tokens(text)?;
        let name = toks.first().ok_or("missing rule name")?.clone();
        let mut i = 1;
        let mut label = None;
        if let Some(t) = toks.get(i).filter(|t| t.starts_with('"')) {
            label = Some(t[1..t.len() - 1].to_string());
            i += 1;
        }
        if toks.get(i).map(String::as_str) != Some(":") {
            return Err(format!("expected `:` after rule name {name}"));
        }
        let body = &toks[i + 1..];
        let arrow = body
            .iter()
            .position(|t| t == "=>" || t == "<=>")
            .ok_or_else(|| format!("rule {name}: missing `=>` or `<=>`"))?;
        let kind = if body[arrow] == "<=>" {
            RuleKind::Obligatory
        } else {
            RuleKind::Optional
        };
        let surface = &body[..arrow];
        let mut rest = &body[arrow + 1..];
        let mut where_toks: &[String] = &[];
        if let Some(w) = rest.iter().position(|t| t == "where") {
            where_toks = &rest[w + 1..];
            rest = &rest[..w];
        }
        let mut feat_toks: &[String] = &[];
        if let Some(f) = rest.windows(2).position(|w| w[0] == "feat" && w[1] == ":") {
            feat_toks = &rest[f + 2..];
            rest = &rest[..f];
        }
        let err = |m: String| format!("rule {name}: {m}");

        let mut vars = RuleVars { vars: Vec::new() };
        let sparts = split_top(surface, "-");
        if sparts.len() != 3 {
            return Err(err("surface side must be `LSC - SURF - RSC`".into()));
        }
        let lsc = self.pattern(sparts[0], &mut vars, true).map_err(&err)?;
        let surf = self.pattern(sparts[1], &mut vars, true).map_err(&err)?;
        let rsc = self.pattern(sparts[2], &mut vars, true).map_err(&err)?;
        if surf.contains(&Item::Any) {
            return Err(err("`*` is not allowed in SURF".into()));
        }
        if surf.contains(&Item::Lit(BOUNDARY)) || lsc.contains(&Item::Lit(BOUNDARY)) || rsc.contains(&Item::Lit(BOUNDARY)) {
            return Err(err("`+` is not a surface symbol".into()));
        }

        let lparts = split_top(rest, "-");
        if lparts.len() != 3 {
            return Err(err("lexical side must be `LLC - LEX - RLC`".into()));
        }
        let (llc, ellipsis) = self.tuples(lparts[0], &mut vars).map_err(&err)?;
        let (lex_tuples, lex_ell) = self.tuples(lparts[1], &mut vars).map_err(&err)?;
        if lex_ell || lex_tuples.is_empty() {
            return Err(err("LEX must be one or more tuples".into()));
        }
        let mut lex = vec![Vec::new(); self.tapes];
        for t in lex_tuples {
            for (k, p) in t.0.into_iter().enumerate() {
                if p.contains(&Item::Any) {
                    return Err(err("`*` is not allowed in LEX".into()));
                }
                lex[k].extend(p);
            }
        }
        let (rlc, rlc_ell) = self.tuples(lparts[2], &mut vars).map_err(&err)?;
        if rlc_ell {
            return Err(err("`...` is only allowed in LLC".into()));
        }

        let features = if feat_toks.is_empty() {
            vec![FeatureStructure::new(); self.tapes]
        } else {
            self.rule_features(feat_toks).map_err(&err)?
        };
        if !where_toks.is_empty() {
            for clause in split_top(where_toks, ",") {
                self.constraint(clause, &mut vars).map_err(&err)?;
            }
        }
        Ok(Rule {
            name,
            label,
            kind,
            lsc,
            surf,
            rsc,
            llc: LeftContext { tuples: llc, ellipsis },
            lex: Tuple(lex),
            rlc,
            features,
            vars: vars.vars,
        })
    }

    fn rule_features(&mut self, toks: &[String]) -> Result<Vec<FeatureStructure>, String> {
        let mut scope = VarScope::new();
        let inner = match toks {
            [single] if single.starts_with('[') => std::slice::from_ref(single),
            [open, inner @ .., close] if open == "(" && close == ")" => inner,
            _ => return Err("expected `feat: ([..];[..];...)`".into()),
        };
        let mut out = Vec::new();
        for part in split_top(inner, ";") {
            match part {
                [fs] if fs.starts_with('[') => out.push(FeatureStructure::parse(fs, &mut scope)?),
                [] => out.push(FeatureStructure::new()),
                _ => return Err("each tape's features must be one `[...]`".into()),
            }
        }
        if out.len() != self.tapes {
            return Err(format!(
                "feat gives {} structures but the pack has {} tapes",
                out.len(),
                self.tapes
            ));
        }
        Ok(out)
    }

    fn constraint(&mut self, clause: &[String], vars: &mut RuleVars) -> Result<(), String> {
        let words: Vec<&str> = clause.iter().map(String::as_str).collect();
        let (v, c) = match words.as_slice() {
            [v, "in", cls] if *cls != "{" => {
                let k = self.class_index(cls).ok_or_else(|| format!("unknown class {cls}"))?;
                (*v, Constraint::InClass(k))
            }
            [v, "in", "{", members @ .., "}"] => {
                let set = members.iter().map(|m| self.symbols.intern(m)).collect();
                (*v, Constraint::InSet(set))
            }
            [v, "!=", s] => {
                let sym = if *s == "+" { BOUNDARY } else { self.symbols.intern(s) };
                (*v, Constraint::NotEq(sym))
            }
            _ => return Err(format!("bad constraint `{}`", words.join(" "))),
        };
        let k = vars
            .vars
            .iter()
            .position(|x| x.name == v)
            .ok_or_else(|| format!("constraint on unknown variable {v}"))?;
        vars.vars[k].constraints.push(c);
        Ok(())
    }
}
