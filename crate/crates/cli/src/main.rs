use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use particle_grammar::cooc::{self, BUNDLED_TABLE1, DEFAULT_THRESHOLD};
use particle_grammar::lattice::BUNDLED_HIERARCHY;
use particle_grammar::lexicon::{Role, BUNDLED_LEXICON};
use particle_grammar::{
    derive_licensing, load_table1, parse, parse_corpus, parse_corpus_text, reconcile, tokenize, Adjunct, Binding,
    CoocMatrix, Lexicon, Sign, TypeLattice,
};

const EXIT_OK: u8 = 0;
const EXIT_REJECTED: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Parse romaji sentences with the particle grammar and compare particle
/// cooccurrence licensing against attested counts.
#[derive(Debug, Parser)]
#[command(name = "particles", version)]
struct Cli {
    /// Lexicon TSV [default: <data dir>/lexicon.tsv]
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Type hierarchy file [default: <data dir>/hierarchy.txt]
    #[arg(long, global = true)]
    hierarchy: Option<PathBuf>,
    /// Cooccurrence counts CSV [default: <data dir>/table1.csv]
    #[arg(long, global = true)]
    table1: Option<PathBuf>,
    /// Directory holding the default data files; built-in copies are used when unset.
    #[arg(long, global = true, env = "PARTICLE_DATA_DIR")]
    data_dir: Option<PathBuf>,
    /// Minimum count for a pair to count as attested.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse one sentence and print every analysis.
    Parse { sentence: String },
    /// Check a corpus file of sentences against their grammaticality marks.
    Corpus { path: PathBuf },
    /// Print the derived licensing matrix and the reconciliation report.
    Cooc,
}

struct Grammar {
    lattice: TypeLattice,
    lexicon: Lexicon,
    table: CoocMatrix<u32>,
    threshold: u32,
    format: Format,
}

fn read_source(
    explicit: &Option<PathBuf>,
    data_dir: &Option<PathBuf>,
    file: &str,
    bundled: &str,
) -> Result<String, String> {
    let path = match (explicit, data_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => dir.join(file),
        (None, None) => return Ok(bundled.to_string()),
    };
    std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(cli: &Cli) -> Result<Grammar, String> {
    let hierarchy = read_source(&cli.hierarchy, &cli.data_dir, "hierarchy.txt", BUNDLED_HIERARCHY)?;
    let lattice = TypeLattice::parse(&hierarchy).map_err(|e| format!("hierarchy: {e}"))?;
    let lexicon_text = read_source(&cli.lexicon, &cli.data_dir, "lexicon.tsv", BUNDLED_LEXICON)?;
    let lexicon = Lexicon::parse(&lexicon_text, &lattice).map_err(|e| format!("lexicon: {e}"))?;
    let table_text = read_source(&cli.table1, &cli.data_dir, "table1.csv", BUNDLED_TABLE1)?;
    let table = load_table1(&table_text).map_err(|e| format!("table1: {e}"))?;
    Ok(Grammar {
        lattice,
        lexicon,
        table,
        threshold: cli.threshold,
        format: cli.format,
    })
}

#[derive(Serialize)]
struct AnalysisOut<'a> {
    derivation: String,
    predicate: Option<&'a str>,
    bound: &'a BTreeMap<Role, Binding>,
    adjuncts: &'a [Adjunct],
    open: &'a [Role],
    auxiliaries: &'a [String],
}

impl<'a> AnalysisOut<'a> {
    fn new(sign: &'a Arc<Sign>) -> Self {
        AnalysisOut {
            derivation: sign.bracketed(),
            predicate: sign.pas.predicate.as_deref(),
            bound: &sign.pas.bound,
            adjuncts: &sign.pas.adjuncts,
            open: &sign.pas.open,
            auxiliaries: &sign.pas.auxiliaries,
        }
    }
}

#[derive(Serialize)]
struct ParseOut<'a> {
    sentence: String,
    analyses_count: usize,
    analyses: Vec<AnalysisOut<'a>>,
}

fn words(tokens: &[&str], span: particle_grammar::Span) -> String {
    tokens[span.start..span.end].join(" ")
}

fn render_analysis(out: &mut String, tokens: &[&str], a: &AnalysisOut<'_>) {
    let _ = writeln!(out, "  {}", a.derivation);
    let _ = writeln!(out, "  predicate: {}", a.predicate.unwrap_or("-"));
    for (role, b) in a.bound {
        let case = b.case.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "    {:<6} {case:<4} {} [{}] {}",
            role.to_string(),
            b.span,
            b.sort,
            words(tokens, b.span)
        );
    }
    for adj in a.adjuncts {
        let _ = writeln!(
            out,
            "    adjunct {} {} {}",
            adj.span,
            adj.flavor,
            words(tokens, adj.span)
        );
    }
    if !a.open.is_empty() {
        let open: Vec<_> = a.open.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(out, "    open: {}", open.join(", "));
    }
    if !a.auxiliaries.is_empty() {
        let _ = writeln!(out, "    aux: {}", a.auxiliaries.join(" "));
    }
}

fn cmd_parse(g: &Grammar, sentence: &str) -> u8 {
    let tokens = tokenize(sentence);
    let result = match parse(&g.lexicon, &g.lattice, &tokens) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let analyses: Vec<_> = result.analyses.iter().map(AnalysisOut::new).collect();
    match g.format {
        Format::Json => {
            let out = ParseOut {
                sentence: tokens.join(" "),
                analyses_count: analyses.len(),
                analyses,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            let mut out = format!("{} analysis(es)\n", analyses.len());
            for (i, a) in analyses.iter().enumerate() {
                let _ = writeln!(out, "#{}", i + 1);
                render_analysis(&mut out, &tokens, a);
            }
            print!("{out}");
        }
    }
    if result.analyses.is_empty() {
        eprintln!("no analysis; refused combinations:");
        for d in &result.diagnostics {
            eprintln!("  {} {}: {}", d.span, words(&tokens, d.span), d.reason);
        }
        EXIT_REJECTED
    } else {
        EXIT_OK
    }
}

#[derive(Serialize)]
struct LineOut {
    line: usize,
    sentence: String,
    expect_grammatical: bool,
    analyses_count: Option<usize>,
    error: Option<String>,
    pass: Option<bool>,
}

#[derive(Serialize)]
struct CorpusOut {
    passed: usize,
    failed: usize,
    errors: usize,
    total: usize,
    lines: Vec<LineOut>,
}

fn cmd_corpus(g: &Grammar, path: &Path) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    };
    let corpus = parse_corpus_text(&text);
    let report = parse_corpus(&g.lexicon, &g.lattice, &corpus);
    let lines: Vec<_> = report
        .verdicts
        .iter()
        .map(|v| LineOut {
            line: v.line.line,
            sentence: v.line.sentence(),
            expect_grammatical: v.line.expect_grammatical,
            analyses_count: v.outcome.as_ref().ok().copied(),
            error: v.outcome.as_ref().err().map(|e| e.to_string()),
            pass: v.matches(),
        })
        .collect();
    for l in &lines {
        if let Some(e) = &l.error {
            eprintln!("line {}: {e}", l.line);
        }
    }
    let out = CorpusOut {
        passed: report.passed(),
        failed: report.failed(),
        errors: report.errors(),
        total: report.verdicts.len(),
        lines,
    };
    match g.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out).expect("serializable")),
        Format::Text => {
            let mut s = String::new();
            for l in &out.lines {
                let status = match l.pass {
                    Some(true) => "ok  ",
                    Some(false) => "FAIL",
                    None => "ERR ",
                };
                let mark = if l.expect_grammatical { " " } else { "*" };
                let n = l.analyses_count.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(s, "{status} {:>4} {mark}{} ({n})", l.line, l.sentence);
            }
            let _ = writeln!(s, "passed {}/{} ({} error(s))", out.passed, out.total, out.errors);
            print!("{s}");
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    }
}

#[derive(Serialize)]
struct CoocOut<'a> {
    rows: &'a [String],
    cols: &'a [String],
    licensed: Vec<Vec<bool>>,
    report: &'a cooc::ReconciliationReport,
}

fn cmd_cooc(g: &Grammar) -> u8 {
    let derived = match derive_licensing(&g.lexicon, &g.lattice) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let report = match reconcile(&derived, &g.table, g.threshold) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match g.format {
        Format::Json => {
            let out = CoocOut {
                rows: derived.rows(),
                cols: derived.cols(),
                licensed: derived
                    .rows()
                    .iter()
                    .map(|r| derived.row(r).unwrap_or(&[]).to_vec())
                    .collect(),
                report: &report,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Format::Text => {
            print!("{}", derived.to_csv_01());
            println!();
            print!("{report}");
        }
    }
    EXIT_OK
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let grammar = match load(&cli) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let code = match &cli.command {
        Command::Parse { sentence } => cmd_parse(&grammar, sentence),
        Command::Corpus { path } => cmd_corpus(&grammar, path),
        Command::Cooc => cmd_cooc(&grammar),
    };
    ExitCode::from(code)
}
