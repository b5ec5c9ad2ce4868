//! The grammar packs and conformance corpora shipped with the crate.

use crate::pack::GrammarPack;
use crate::Error;

/// `(name, pack text, corpus text)`
pub const SHIPPED: &[(&str, &str, &str)] = &[
    ("cv", include_str!("../packs/cv.mtg"), include_str!("../packs/cv.corpus")),
    ("moraic", include_str!("../packs/moraic.mtg"), include_str!("../packs/moraic.corpus")),
    ("affix", include_str!("../packs/affix.mtg"), include_str!("../packs/affix.corpus")),
    ("plural", include_str!("../packs/plural.mtg"), include_str!("../packs/plural.corpus")),
    ("english", include_str!("../packs/english.mtg"), include_str!("../packs/english.corpus")),
];

fn find(name: &str) -> Option<&'static (&'static str, &'static str, &'static str)> {
    let stem = name.strip_suffix(".mtg").or_else(|| name.strip_suffix(".corpus")).unwrap_or(name);
    SHIPPED.iter().find(|(n, _, _)| *n == stem)
}

/// Names of the shipped packs.
pub fn names() -> impl Iterator<Item = &'static str> {
    SHIPPED.iter().map(|(n, _, _)| *n)
}

/// Source text of a shipped pack; `name` may carry the `.mtg` suffix.
pub fn source(name: &str) -> Option<&'static str> {
    find(name).map(|(_, p, _)| *p)
}

/// Corpus text of a shipped pack.
pub fn corpus(name: &str) -> Option<&'static str> {
    find(name).map(|(_, _, c)| *c)
}

pub fn load(name: &str) -> Result<GrammarPack, Error> {
    let text = source(name).ok_or_else(|| Error::Input(format!("no shipped pack named `{name}`")))?;
    GrammarPack::load(text)
}
