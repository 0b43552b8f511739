//! Golden corpora: sentences with a grammaticality expectation.
//!
//! One sentence per line; a leading `*` marks a sentence that must get no
//! analysis; `#` starts a comment. Lines are parsed independently, in
//! parallel when the `parallel` feature is on.

use crate::chart::{parse, tokenize, ParseError};
use crate::lattice::TypeLattice;
use crate::lexicon::Lexicon;

/// The example sentences bundled with the crate.
pub const BUNDLED_CORPUS: &str = include_str!("../data/paper_examples.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLine {
    /// 1-based line number in the source file.
    pub line: usize,
    pub expect_grammatical: bool,
    pub tokens: Vec<String>,
}

impl CorpusLine {
    pub fn sentence(&self) -> String {
        self.tokens.join(" ")
    }
}

pub fn parse_corpus_text(text: &str) -> Vec<CorpusLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                return None;
            }
            let (expect_grammatical, body) = match line.strip_prefix('*') {
                Some(rest) => (false, rest),
                None => (true, line),
            };
            Some(CorpusLine {
                line: i + 1,
                expect_grammatical,
                tokens: tokenize(body).into_iter().map(str::to_string).collect(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub line: CorpusLine,
    /// Number of analyses, or the reason the line could not be parsed.
    pub outcome: Result<usize, ParseError>,
}

impl Verdict {
    /// `None` when the line errored.
    pub fn matches(&self) -> Option<bool> {
        self.outcome
            .as_ref()
            .ok()
            .map(|&n| (n > 0) == self.line.expect_grammatical)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub verdicts: Vec<Verdict>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.matches() == Some(true)).count()
    }

    pub fn failed(&self) -> usize {
        self.verdicts.iter().filter(|v| v.matches() == Some(false)).count()
    }

    pub fn errors(&self) -> usize {
        self.verdicts.iter().filter(|v| v.outcome.is_err()).count()
    }

    /// Lines that produced a verdict (errors excluded).
    pub fn judged(&self) -> usize {
        self.passed() + self.failed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

fn judge(lexicon: &Lexicon, lattice: &TypeLattice, line: &CorpusLine) -> Verdict {
    Verdict {
        line: line.clone(),
        outcome: parse(lexicon, lattice, &line.tokens).map(|r| r.analyses.len()),
    }
}

pub fn parse_corpus_sequential(lexicon: &Lexicon, lattice: &TypeLattice, corpus: &[CorpusLine]) -> CorpusReport {
    CorpusReport {
        verdicts: corpus.iter().map(|l| judge(lexicon, lattice, l)).collect(),
    }
}

#[cfg(feature = "parallel")]
pub fn parse_corpus_parallel(lexicon: &Lexicon, lattice: &TypeLattice, corpus: &[CorpusLine]) -> CorpusReport {
    use rayon::prelude::*;
    CorpusReport {
        verdicts: corpus.par_iter().map(|l| judge(lexicon, lattice, l)).collect(),
    }
}

/// Judge every line against its expectation. Errors are recorded per line.
pub fn parse_corpus(lexicon: &Lexicon, lattice: &TypeLattice, corpus: &[CorpusLine]) -> CorpusReport {
    #[cfg(feature = "parallel")]
    {
        parse_corpus_parallel(lexicon, lattice, corpus)
    }
    #[cfg(not(feature = "parallel"))]
    {
        parse_corpus_sequential(lexicon, lattice, corpus)
    }
}
