use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mtl::corpus::{parse_corpus, run_corpus};
use mtl::pack::{parse_pack, validate};
use mtl::{analyze, generate, packs, parse_tape_spec, render, Error, GrammarPack, Severity, TapeEntry};

/// Analyze, generate and trace words with multi-tape two-level grammars.
///
/// PACK is a file path, a file on MTL_PACK_PATH, or the name of a shipped
/// pack (cv, moraic, affix, plural, english). It may be given with
/// -g instead of as the first argument.
#[derive(Parser)]
#[command(name = "mtl", version)]
struct Cli {
    /// Grammar pack to use.
    #[arg(short = 'g', long = "grammar", global = true, value_name = "PATH")]
    grammar: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every analysis of each word.
    Analyze {
        #[command(flatten)]
        out: Output,
        /// [PACK] WORD...
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Print the surface forms of the given tape contents.
    Generate {
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        tapes: Tapes,
        /// [PACK]
        args: Vec<String>,
    },
    /// Print the alignment of surface and lexical tapes for each word.
    Trace {
        /// Category the word must analyze as.
        #[arg(long, value_name = "CAT")]
        target: Option<String>,
        /// Show every derivation, not just the first.
        #[arg(long)]
        all: bool,
        /// [PACK] WORD...
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// Check a pack and print its diagnostics.
    Validate {
        /// [PACK]
        args: Vec<String>,
    },
    /// Run a corpus of test cases against a pack.
    Test {
        /// Only print failing cases and the summary.
        #[arg(long)]
        quiet: bool,
        /// [PACK] [CORPUS]; a shipped pack defaults to its own corpus.
        args: Vec<String>,
    },
}

#[derive(Args)]
struct Output {
    /// Category results must be rooted in.
    #[arg(long, value_name = "CAT")]
    target: Option<String>,
    /// One tab-separated line per result.
    #[arg(long)]
    porcelain: bool,
}

#[derive(Args)]
struct Tapes {
    /// Entries on tape 1, e.g. `hh` or `base`.
    #[arg(short = '1', value_name = "ENTRIES")]
    t1: Option<String>,
    /// Entries on tape 2.
    #[arg(short = '2', value_name = "ENTRIES")]
    t2: Option<String>,
    /// Entries on tape 3.
    #[arg(short = '3', value_name = "ENTRIES")]
    t3: Option<String>,
    /// Entries on tape 4.
    #[arg(short = '4', value_name = "ENTRIES")]
    t4: Option<String>,
}

/// Exit statuses: found something, found nothing, bad input.
const FOUND: u8 = 0;
const NONE: u8 = 1;
const USAGE: u8 = 2;

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Pack(diags) => Failure(diags.iter().map(|d| d.render("pack")).collect::<Vec<_>>().join("\n")),
            other => Failure(other.to_string()),
        }
    }
}

struct Loaded {
    label: String,
    text: String,
    /// Name of the shipped pack this came from, if any.
    shipped: Option<&'static str>,
}

fn find_file(name: &str) -> Option<PathBuf> {
    let p = Path::new(name);
    if p.is_file() {
        return Some(p.to_path_buf());
    }
    let dirs = std::env::var_os("MTL_PACK_PATH")?;
    std::env::split_paths(&dirs).map(|d| d.join(name)).find(|p| p.is_file())
}

fn read_pack(name: &str) -> Result<Loaded, Failure> {
    if let Some(path) = find_file(name) {
        let text = std::fs::read_to_string(&path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        return Ok(Loaded {
            label: path.display().to_string(),
            text,
            shipped: None,
        });
    }
    let text = packs::source(name).ok_or_else(|| Failure(format!("no pack `{name}` (not a file, not on MTL_PACK_PATH, not shipped)")))?;
    let shipped = packs::names().find(|n| packs::source(n) == Some(text));
    Ok(Loaded {
        label: name.to_string(),
        text: text.to_string(),
        shipped,
    })
}

fn load(src: &Loaded) -> Result<GrammarPack, Failure> {
    GrammarPack::load(&src.text).map_err(|e| match e {
        Error::Pack(diags) => Failure(diags.iter().map(|d| d.render(&src.label)).collect::<Vec<_>>().join("\n")),
        other => Failure(format!("{}: {other}", src.label)),
    })
}

/// Split off the pack argument unless it was given with `-g`.
fn pack_and_rest(grammar: Option<String>, mut args: Vec<String>) -> Result<(String, Vec<String>), Failure> {
    match grammar {
        Some(g) => Ok((g, args)),
        None if args.is_empty() => Err(Failure("missing grammar pack (give PACK or -g PATH)".into())),
        None => {
            let pack = args.remove(0);
            Ok((pack, args))
        }
    }
}

fn cmd_analyze(grammar: Option<String>, out: Output, args: Vec<String>) -> Result<u8, Failure> {
    let (pack_name, words) = pack_and_rest(grammar, args)?;
    if words.is_empty() {
        return Err(Failure("missing WORD".into()));
    }
    let pack = load(&read_pack(&pack_name)?)?;
    let mut status = FOUND;
    for (i, word) in words.iter().enumerate() {
        let found = analyze(&pack, word, out.target.as_deref())?;
        if found.is_empty() {
            eprintln!("{word}: no analysis");
            status = NONE;
        }
        for a in &found {
            if out.porcelain {
                println!("{}", render::porcelain(&pack, a));
            } else {
                if words.len() > 1 || i > 0 {
                    println!("{word}:");
                }
                print!("{}", render::analysis_block(&pack, a));
            }
        }
    }
    Ok(status)
}

fn cmd_generate(grammar: Option<String>, out: Output, tapes: Tapes, args: Vec<String>) -> Result<u8, Failure> {
    let (pack_name, rest) = pack_and_rest(grammar, args)?;
    if !rest.is_empty() {
        return Err(Failure(format!("unexpected argument `{}`; tape contents go after -1 .. -4", rest[0])));
    }
    let pack = load(&read_pack(&pack_name)?)?;
    let specs = [tapes.t1, tapes.t2, tapes.t3, tapes.t4];
    let used = specs.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
    if used == 0 {
        return Err(Failure("no tape contents given (use -1 .. -4)".into()));
    }
    let tapes: Vec<Vec<TapeEntry>> = specs[..used]
        .iter()
        .map(|s| parse_tape_spec(s.as_deref().unwrap_or("")))
        .collect::<Result<_, _>>()?;
    let found = generate(&pack, &tapes, out.target.as_deref())?;
    if out.porcelain {
        for a in &found {
            println!("{}", render::porcelain(&pack, a));
        }
    } else {
        let mut surfaces: Vec<&str> = found.iter().map(|a| a.surface.as_str()).collect();
        surfaces.dedup();
        for s in surfaces {
            println!("{s}");
        }
    }
    Ok(if found.is_empty() { NONE } else { FOUND })
}

fn cmd_trace(grammar: Option<String>, target: Option<String>, all: bool, args: Vec<String>) -> Result<u8, Failure> {
    let (pack_name, words) = pack_and_rest(grammar, args)?;
    if words.is_empty() {
        return Err(Failure("missing WORD".into()));
    }
    let pack = load(&read_pack(&pack_name)?)?;
    let mut status = FOUND;
    for word in &words {
        let found = analyze(&pack, word, target.as_deref())?;
        if found.is_empty() {
            eprintln!("{word}: no analysis");
            status = NONE;
            continue;
        }
        let shown = if all { found.len() } else { 1 };
        for a in &found[..shown] {
            println!("{word}  {}", a.root);
            println!("{}", render::trace_table(&pack, &a.derivation));
        }
    }
    Ok(status)
}

fn cmd_validate(grammar: Option<String>, args: Vec<String>) -> Result<u8, Failure> {
    let (pack_name, rest) = pack_and_rest(grammar, args)?;
    if let Some(extra) = rest.first() {
        return Err(Failure(format!("unexpected argument `{extra}`")));
    }
    let src = read_pack(&pack_name)?;
    let diags = match parse_pack(&src.text) {
        Ok(pack) => validate(&pack),
        Err(diags) => diags,
    };
    for d in &diags {
        println!("{}", d.render(&src.label));
    }
    let errors = diags.iter().filter(|d| d.severity == Severity::Error).count();
    println!("{} error(s), {} warning(s)", errors, diags.len() - errors);
    Ok(if errors == 0 { FOUND } else { NONE })
}

fn cmd_test(grammar: Option<String>, quiet: bool, args: Vec<String>) -> Result<u8, Failure> {
    let (pack_name, rest) = pack_and_rest(grammar, args)?;
    let src = read_pack(&pack_name)?;
    let pack = load(&src)?;
    let corpus = match rest.as_slice() {
        [] => {
            let name = src.shipped.ok_or_else(|| Failure("missing CORPUS".into()))?;
            packs::corpus(name).expect("every shipped pack has a corpus").to_string()
        }
        [c] => match find_file(c) {
            Some(path) => std::fs::read_to_string(&path).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
            None => packs::corpus(c).ok_or_else(|| Failure(format!("no corpus `{c}`")))?.to_string(),
        },
        [_, extra, ..] => return Err(Failure(format!("unexpected argument `{extra}`"))),
    };
    let cases = parse_corpus(&corpus)?;
    let report = run_corpus(&pack, &cases);
    for r in &report.results {
        if !quiet || !r.passed {
            println!("{}", r.render());
        }
    }
    println!("{}/{} pass", report.passed(), report.results.len());
    Ok(if report.all_passed() { FOUND } else { NONE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.grammar;
    let result = match cli.command {
        Command::Analyze { out, args } => cmd_analyze(g, out, args),
        Command::Generate { out, tapes, args } => cmd_generate(g, out, tapes, args),
        Command::Trace { target, all, args } => cmd_trace(g, target, all, args),
        Command::Validate { args } => cmd_validate(g, args),
        Command::Test { quiet, args } => cmd_test(g, quiet, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("mtl: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
