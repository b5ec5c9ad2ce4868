//! Conformance corpora: one tab-separated case per line,
//! `direction  input  expected  # note`.
//!
//! | direction       | input                      | expected                                  |
//! |-----------------|----------------------------|-------------------------------------------|
//! | `generate`      | tape specs joined by ` \| ` | surfaces separated by spaces, `-` if none |
//! | `analyze`       | surface word               | one summary `keys => cat[fs]` or `cat[fs]` |
//! | `analyze-exact` | surface word               | all summaries joined by ` \| `, `-` if none |
//! | `trace`         | surface word               | rule labels of one analysis, `2,2,3,...`  |
//!
//! A word may be followed by a target category, `katab verb_stem`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::thread;

use crate::pack::GrammarPack;
use crate::pipeline::{analyze, generate, parse_tape_spec, TapeEntry};
use crate::render::trace_labels;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Generate,
    Analyze,
    AnalyzeExact,
    Trace,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "generate" => Ok(Direction::Generate),
            "analyze" => Ok(Direction::Analyze),
            "analyze-exact" => Ok(Direction::AnalyzeExact),
            "trace" => Ok(Direction::Trace),
            other => Err(Error::Input(format!("unknown corpus direction `{other}`"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Generate => "generate",
            Direction::Analyze => "analyze",
            Direction::AnalyzeExact => "analyze-exact",
            Direction::Trace => "trace",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusCase {
    /// 1-based line in the corpus file.
    pub line: usize,
    pub direction: Direction,
    pub input: String,
    pub expected: String,
    pub note: String,
}

impl CorpusCase {
    /// Per-tape entries of a `generate` case.
    pub fn tapes(&self) -> Result<Vec<Vec<TapeEntry>>, Error> {
        self.input.split('|').map(parse_tape_spec).collect()
    }

    /// Word and optional target category of an analysis case.
    pub fn word(&self) -> (&str, Option<&str>) {
        let mut it = self.input.split_whitespace();
        (it.next().unwrap_or(""), it.next())
    }

    /// The expected values as a set; `-` is the empty set.
    pub fn expected_set(&self) -> BTreeSet<String> {
        if self.expected.trim() == "-" {
            return BTreeSet::new();
        }
        match self.direction {
            Direction::Generate => self.expected.split_whitespace().map(str::to_string).collect(),
            _ => self.expected.split(" | ").map(|s| s.trim().to_string()).collect(),
        }
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>, Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (body, note) = match raw.find("\t#") {
            Some(p) => (&raw[..p], raw[p + 2..].trim()),
            None => (raw, ""),
        };
        let fields: Vec<&str> = body.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
        if fields.len() != 3 {
            return Err(Error::Input(format!(
                "corpus line {line}: expected 3 tab-separated fields, found {}",
                fields.len()
            )));
        }
        out.push(CorpusCase {
            line,
            direction: fields[0].parse().map_err(|e| Error::Input(format!("corpus line {line}: {e}")))?,
            input: fields[1].to_string(),
            expected: fields[2].to_string(),
            note: note.to_string(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub case: CorpusCase,
    pub passed: bool,
    /// What the pack actually produced.
    pub actual: Vec<String>,
    pub error: Option<String>,
}

impl CaseResult {
    /// `PASS`/`FAIL` line, with the difference on failure.
    pub fn render(&self) -> String {
        let c = &self.case;
        let status = if self.passed { "PASS" } else { "FAIL" };
        let head = format!("{status} line {}: {} {}", c.line, c.direction, c.input);
        if self.passed {
            return head;
        }
        if let Some(e) = &self.error {
            return format!("{head}\n    error: {e}");
        }
        let got = if self.actual.is_empty() { "-".to_string() } else { self.actual.join(" | ") };
        format!("{head}\n    expected: {}\n    got:      {got}", c.expected)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub results: Vec<CaseResult>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{}", r.render())?;
        }
        write!(f, "{}/{} pass", self.passed(), self.results.len())
    }
}

fn evaluate(pack: &GrammarPack, case: &CorpusCase) -> Result<(bool, Vec<String>), Error> {
    let expected = case.expected_set();
    let (word, target) = case.word();
    match case.direction {
        Direction::Generate => {
            let found = generate(pack, &case.tapes()?, None)?;
            let got: BTreeSet<String> = found.into_iter().map(|a| a.surface).collect();
            Ok((got == expected, got.into_iter().collect()))
        }
        Direction::Analyze => {
            let found = analyze(pack, word, target)?;
            let want = case.expected.trim();
            let ok = found.iter().any(|a| a.summary(pack) == want || a.root.to_string() == want);
            Ok((ok, found.iter().map(|a| a.summary(pack)).collect()))
        }
        Direction::AnalyzeExact => {
            let found = analyze(pack, word, target)?;
            let got: BTreeSet<String> = found.iter().map(|a| a.summary(pack)).collect();
            Ok((got == expected, got.into_iter().collect()))
        }
        Direction::Trace => {
            let found = analyze(pack, word, target)?;
            let traces: Vec<String> = found.iter().map(|a| trace_labels(pack, &a.derivation).join(",")).collect();
            let ok = traces.iter().any(|t| t == case.expected.trim());
            Ok((ok, traces))
        }
    }
}

pub fn run_case(pack: &GrammarPack, case: &CorpusCase) -> CaseResult {
    match evaluate(pack, case) {
        Ok((passed, actual)) => CaseResult {
            case: case.clone(),
            passed,
            actual,
            error: None,
        },
        Err(e) => CaseResult {
            case: case.clone(),
            passed: false,
            actual: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Runs every case, in parallel, reporting in corpus order.
pub fn run_corpus(pack: &GrammarPack, cases: &[CorpusCase]) -> Report {
    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(cases.len().max(1));
    let chunk = cases.len().div_ceil(workers).max(1);
    let results = thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|c| run_case(pack, c)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("corpus worker panicked")).collect()
    });
    Report { results }
}
