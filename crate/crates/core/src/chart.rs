//! Exhaustive bottom-up chart parsing over whitespace-tokenized romaji.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::TypeLattice;
use crate::lexicon::{Lexicon, Pos};
use crate::rules::{adjunct_head, bare_np_adjunct, complement_head, sap_attach, Mismatch};
use crate::sign::{Functor, Sign, SignKey, Span};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { token: String, position: usize },
}

/// A refused combination, reported when a sentence gets no analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagnostic {
    pub span: Span,
    pub reason: Mismatch,
}

/// Edges indexed by span. Grows monotonically; equivalent edges are kept once.
#[derive(Debug)]
pub struct Chart {
    tokens: Vec<String>,
    cells: Vec<Vec<Vec<Arc<Sign>>>>,
    seen: HashSet<SignKey>,
    failures: BTreeSet<Diagnostic>,
}

impl Chart {
    fn new(tokens: Vec<String>) -> Self {
        let n = tokens.len();
        Chart {
            tokens,
            cells: vec![vec![Vec::new(); n + 1]; n + 1],
            seen: HashSet::new(),
            failures: BTreeSet::new(),
        }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn cell(&self, span: Span) -> &[Arc<Sign>] {
        &self.cells[span.start][span.end]
    }

    pub fn edges(&self) -> impl Iterator<Item = &Arc<Sign>> {
        self.cells.iter().flatten().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Diagnostic> {
        self.failures.iter()
    }

    /// Spanning utterances, or spanning complete clauses.
    pub fn analyses(&self) -> Vec<Arc<Sign>> {
        let n = self.tokens.len();
        self.cells[0][n]
            .iter()
            .filter(|s| s.is_utterance() || s.is_complete_predicate())
            .cloned()
            .collect()
    }

    fn insert(&mut self, sign: Sign) -> Option<Arc<Sign>> {
        if !self.seen.insert(sign.key()) {
            return None;
        }
        let sign = Arc::new(sign);
        self.cells[sign.span.start][sign.span.end].push(sign.clone());
        Some(sign)
    }

    fn close_unary(&mut self, added: Vec<Arc<Sign>>) {
        let mut agenda = added;
        while let Some(edge) = agenda.pop() {
            if edge.head.pos == Pos::Noun && edge.is_saturated() && !edge.is_promoted() {
                if let Ok(promoted) = bare_np_adjunct(&edge) {
                    if let Some(e) = self.insert(promoted) {
                        agenda.push(e);
                    }
                }
            }
        }
    }

    fn combine(&mut self, lattice: &TypeLattice, left: &Arc<Sign>, right: &Arc<Sign>) -> Vec<Arc<Sign>> {
        let span = left.span.join(right.span);
        let mut built = Vec::new();
        let mut refused = Vec::new();

        let particle_head = matches!(right.functor, Functor::Particle(_));
        let predicate_head = right.is_saturated() && right.head.pos.is_predicate() && !right.valence.is_empty();
        if particle_head || (predicate_head && left.is_saturated()) {
            match complement_head(lattice, left, right) {
                Ok(signs) => built.extend(signs),
                Err(why) => refused.push(why),
            }
        }
        if right.is_lexical_sap() {
            match sap_attach(left, right) {
                Ok(s) => built.push(s),
                Err(why) => refused.push(why),
            }
        }
        if left.is_saturated() && right.is_saturated() && right.head.pos != Pos::Utterance {
            match adjunct_head(lattice, left, right) {
                Ok(s) => built.push(s),
                Err(why) => refused.push(why),
            }
        }

        for reason in refused {
            self.failures.insert(Diagnostic { span, reason });
        }
        built.into_iter().filter_map(|s| self.insert(s)).collect()
    }
}

/// Fill a chart for `tokens`. Unknown tokens and empty input are errors.
pub fn build_chart<S: AsRef<str>>(lexicon: &Lexicon, lattice: &TypeLattice, tokens: &[S]) -> Result<Chart, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut chart = Chart::new(tokens.iter().map(|t| t.as_ref().to_string()).collect());
    for (i, tok) in tokens.iter().enumerate() {
        let tok = tok.as_ref();
        let signs = lexicon.lookup_at(tok, i);
        if signs.is_empty() {
            return Err(ParseError::UnknownToken {
                token: tok.to_string(),
                position: i,
            });
        }
        let added: Vec<_> = signs.into_iter().filter_map(|s| chart.insert(s)).collect();
        chart.close_unary(added);
    }

    let n = tokens.len();
    for width in 2..=n {
        for start in 0..=n - width {
            let end = start + width;
            let mut added = Vec::new();
            for mid in start + 1..end {
                let lefts = chart.cells[start][mid].clone();
                let rights = chart.cells[mid][end].clone();
                for l in &lefts {
                    for r in &rights {
                        added.extend(chart.combine(lattice, l, r));
                    }
                }
            }
            chart.close_unary(added);
        }
    }
    Ok(chart)
}

#[derive(Debug, Clone)]
pub struct ParseResult {
    pub analyses: Vec<Arc<Sign>>,
    /// Refused combinations over spans that ended up with no edge at all;
    /// empty unless `analyses` is.
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn is_grammatical(&self) -> bool {
        !self.analyses.is_empty()
    }
}

pub fn parse<S: AsRef<str>>(lexicon: &Lexicon, lattice: &TypeLattice, tokens: &[S]) -> Result<ParseResult, ParseError> {
    let chart = build_chart(lexicon, lattice, tokens)?;
    let analyses = chart.analyses();
    let diagnostics = if analyses.is_empty() {
        chart
            .failures()
            .filter(|d| chart.cell(d.span).is_empty())
            .copied()
            .collect()
    } else {
        Vec::new()
    };
    Ok(ParseResult { analyses, diagnostics })
}

/// Split a sentence on whitespace.
pub fn tokenize(sentence: &str) -> Vec<&str> {
    sentence.split_whitespace().collect()
}
