//! Signs: immutable lexical and phrasal analyses.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Case, Head, Pos, Role, SemSort, SlotStatus, SubcatSpec, ValenceSlot};

/// Half-open token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(self) -> bool {
        self.start == self.end
    }

    pub fn join(self, right: Span) -> Span {
        Span::new(self.start, right.end)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Which schema built a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schema {
    Lexical,
    ComplementHead,
    AdjunctHead,
    BareNp,
    SapAttach,
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schema::Lexical => "lex",
            Schema::ComplementHead => "complement-head",
            Schema::AdjunctHead => "adjunct-head",
            Schema::BareNp => "bare-np",
            Schema::SapAttach => "sap",
        })
    }
}

/// What a sign still needs on its left before it is saturated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Functor {
    None,
    /// An unsaturated particle waiting for its complement.
    Particle(Arc<SubcatSpec>),
    /// A sentence-final particle waiting for a clause.
    Sap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Postposition,
    Adverbial,
    TopicUnbound,
    GaAdjunct,
    BareNp,
    NoAttributive,
    Adverb,
    Adnominal,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Postposition => "postposition",
            Flavor::Adverbial => "adverbial",
            Flavor::TopicUnbound => "topic-unbound",
            Flavor::GaAdjunct => "ga-adjunct",
            Flavor::BareNp => "bare-np",
            Flavor::NoAttributive => "no-attributive",
            Flavor::Adverb => "adverb",
            Flavor::Adnominal => "adnominal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binding {
    pub span: Span,
    pub sort: SemSort,
    pub case: Option<Case>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Adjunct {
    pub span: Span,
    pub flavor: Flavor,
}

/// Predicate-argument skeleton of a clause.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pas {
    pub predicate: Option<String>,
    pub bound: BTreeMap<Role, Binding>,
    pub adjuncts: Vec<Adjunct>,
    /// Argument roles of the predicate left unexpressed.
    pub open: Vec<Role>,
    /// Auxiliaries and copulas stacked on the predicate, innermost first.
    pub auxiliaries: Vec<String>,
}

impl Pas {
    pub fn for_predicate(id: &str, valence: &[ValenceSlot]) -> Self {
        Pas {
            predicate: Some(id.to_string()),
            open: valence
                .iter()
                .filter(|s| s.role != Role::Pred)
                .map(|s| s.role)
                .collect(),
            ..Pas::default()
        }
    }
}

/// A lexical or phrasal analysis. Never mutated after construction.
#[derive(Debug, Clone)]
pub struct Sign {
    pub head: Arc<Head>,
    /// Entry id of the lexical head.
    pub entry: Arc<str>,
    /// Surface token, for lexical signs.
    pub word: Option<Arc<str>>,
    pub functor: Functor,
    pub valence: Vec<ValenceSlot>,
    pub span: Span,
    pub sort: SemSort,
    pub pas: Pas,
    pub daughters: Vec<Arc<Sign>>,
    pub rule: Schema,
}

/// Equivalence key used to deduplicate chart edges and analyses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignKey {
    span: Span,
    entry: Arc<str>,
    promoted: bool,
    functor: u8,
    slots: Vec<(Role, SlotStatus, Option<Span>)>,
    sort: SemSort,
    pas: Pas,
}

impl Sign {
    pub fn is_saturated(&self) -> bool {
        self.functor == Functor::None
    }

    pub fn is_lexical_sap(&self) -> bool {
        self.functor == Functor::Sap
    }

    pub fn has_open_adjacent(&self) -> bool {
        self.valence.iter().any(|s| s.status == SlotStatus::Adjacent)
    }

    /// Verb or adjective with nothing left to fill next to it.
    pub fn is_complete_predicate(&self) -> bool {
        self.is_saturated() && self.head.pos.is_predicate() && !self.has_open_adjacent()
    }

    pub fn is_utterance(&self) -> bool {
        self.is_saturated() && self.head.pos == Pos::Utterance
    }

    /// Built by promoting a bare noun phrase to a verbal adjunct.
    pub fn is_promoted(&self) -> bool {
        self.rule == Schema::BareNp
    }

    pub fn key(&self) -> SignKey {
        let mut pas = self.pas.clone();
        pas.adjuncts.sort();
        SignKey {
            span: self.span,
            entry: self.entry.clone(),
            promoted: self.is_promoted(),
            functor: match self.functor {
                Functor::None => 0,
                Functor::Particle(_) => 1,
                Functor::Sap => 2,
            },
            slots: self.valence.iter().map(|s| (s.role, s.status, s.filler)).collect(),
            sort: self.sort,
            pas,
        }
    }

    /// The daughter whose head this sign shares, if any.
    pub fn head_daughter(&self) -> Option<&Arc<Sign>> {
        match self.rule {
            Schema::Lexical => None,
            Schema::BareNp => self.daughters.first(),
            _ => self.daughters.last(),
        }
    }

    /// Bracketed derivation, e.g. `(0..2 ga-case:complement-head (0..1 kanojo) (1..2 ga))`.
    pub fn bracketed(&self) -> String {
        let mut out = String::new();
        self.write_bracketed(&mut out);
        out
    }

    fn write_bracketed(&self, out: &mut String) {
        use std::fmt::Write;
        match (&self.word, self.rule) {
            (Some(w), Schema::Lexical) => {
                let _ = write!(out, "({} {}", self.span, w);
                if *self.entry != **w {
                    let _ = write!(out, "/{}", self.entry);
                }
                out.push(')');
            }
            _ => {
                let _ = write!(out, "({} {}:{}", self.span, self.entry, self.rule);
                for d in &self.daughters {
                    out.push(' ');
                    d.write_bracketed(out);
                }
                out.push(')');
            }
        }
    }

    /// Every sign in the derivation, root first.
    pub fn walk(&self) -> Vec<&Sign> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let s = out[i];
            out.extend(s.daughters.iter().map(|d| &**d));
            i += 1;
        }
        out
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketed())
    }
}
