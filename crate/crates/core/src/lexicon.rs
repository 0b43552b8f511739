//! Lexical entries and the tab-separated lexicon format.
//!
//! Each non-comment line is `surface<TAB>pos<TAB>type-or-dash<TAB>features`,
//! where features are space-separated `key=value` pairs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{TypeId, TypeLattice};
use crate::sign::{Functor, Pas, Schema, Sign, Span};

/// The lexicon shipped with the crate.
pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: unknown type `{name}`")]
    UnknownType { line: usize, name: String },
    #[error("line {line}: duplicate entry id `{id}`")]
    DuplicateId { line: usize, id: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Particle,
    Utterance,
}

impl Pos {
    /// Verbs and adjectives head clauses.
    pub fn is_predicate(self) -> bool {
        matches!(self, Pos::Verb | Pos::Adjective)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Ga,
    Wo,
    Ni,
    To,
}

/// Flat semantic sorts; `Any` is satisfied by every sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemSort {
    Temporal,
    Human,
    Situation,
    Place,
    Object,
    Event,
    Any,
}

impl SemSort {
    /// Does a constraint of this sort admit a phrase of sort `other`?
    pub fn admits(self, other: SemSort) -> bool {
        self == SemSort::Any || self == other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetPos {
    Noun,
    Verb,
}

/// What a modifier may adjoin to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModTarget {
    pub target: TargetPos,
    pub nonaux_only: bool,
    pub sort: SemSort,
}

impl ModTarget {
    /// MOD value given to bare noun phrases: nonauxiliary verbs, any sort.
    pub fn nonaux_verb() -> Self {
        ModTarget {
            target: TargetPos::Verb,
            nonaux_only: true,
            sort: SemSort::Any,
        }
    }
}

/// Head features. Shared by reference between a phrase and its head daughter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Head {
    pub pos: Pos,
    pub ptype: Option<TypeId>,
    pub case: Option<Case>,
    pub modifies: Option<ModTarget>,
    pub aux: bool,
    /// Set on the question marker `ka`; utterances it closes are question clauses.
    pub question: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Subj,
    Obj,
    Iobj,
    Compl,
    /// The predicate an auxiliary or copula attaches to.
    Pred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotStatus {
    Optional,
    Adjacent,
    Saturated,
}

/// One subcategorized verbal argument (SAT in `status`, VAL in the rest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValenceSlot {
    pub role: Role,
    /// `None` only for [`Role::Pred`], which takes a caseless predicate.
    pub case: Option<Case>,
    pub sort: SemSort,
    pub status: SlotStatus,
    pub filler: Option<Span>,
}

impl ValenceSlot {
    pub fn is_open(&self) -> bool {
        self.status != SlotStatus::Saturated
    }
}

/// A category a particle (or complementizer) can take as its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Noun,
    Verb,
    Adjective,
    Utterance,
    QuestionClause,
    Particle(TypeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubcatSpec {
    pub takes: Vec<Category>,
    pub adjacent: bool,
    /// Sorts the complement may have; empty means unrestricted.
    pub sorts: Vec<SemSort>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexEntry {
    pub id: String,
    pub surface: String,
    pub head: Arc<Head>,
    pub subcat: Option<Arc<SubcatSpec>>,
    pub valence: Vec<ValenceSlot>,
    pub sort: SemSort,
}

impl LexEntry {
    /// Entries with pos `utterance` are sentence-final particles.
    pub fn is_sap(&self) -> bool {
        self.head.pos == Pos::Utterance
    }

    pub fn to_sign(&self, position: usize) -> Sign {
        let functor = match (&self.subcat, self.is_sap()) {
            (_, true) => Functor::Sap,
            (Some(sc), false) => Functor::Particle(sc.clone()),
            (None, false) => Functor::None,
        };
        let pas = if self.head.pos.is_predicate() {
            Pas::for_predicate(&self.id, &self.valence)
        } else {
            Pas::default()
        };
        Sign {
            head: self.head.clone(),
            entry: Arc::from(self.id.as_str()),
            word: Some(Arc::from(self.surface.as_str())),
            functor,
            valence: self.valence.clone(),
            span: Span::new(position, position + 1),
            sort: self.sort,
            pas,
            daughters: Vec::new(),
            rule: Schema::Lexical,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexEntry>,
    by_surface: HashMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn bundled(lattice: &TypeLattice) -> Self {
        Self::parse(BUNDLED_LEXICON, lattice).expect("bundled lexicon is well formed")
    }

    pub fn parse(text: &str, lattice: &TypeLattice) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        let mut ids = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let entry = parse_entry(i + 1, line, lattice)?;
            if !ids.insert(entry.id.clone()) {
                return Err(LexiconError::DuplicateId {
                    line: i + 1,
                    id: entry.id,
                });
            }
            lex.by_surface
                .entry(entry.surface.clone())
                .or_default()
                .push(lex.entries.len());
            lex.entries.push(entry);
        }
        Ok(lex)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    /// All entries for a surface form, in file order.
    pub fn entries_for<'a>(&'a self, surface: &str) -> impl Iterator<Item = &'a LexEntry> + 'a {
        self.by_surface
            .get(surface)
            .into_iter()
            .flatten()
            .map(move |&i| &self.entries[i])
    }

    pub fn entry(&self, id: &str) -> Option<&LexEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.by_surface.contains_key(surface)
    }

    /// One lexical sign per entry, spanning `position..position+1`.
    pub fn lookup_at(&self, token: &str, position: usize) -> Vec<Sign> {
        self.entries_for(token).map(|e| e.to_sign(position)).collect()
    }

    pub fn lookup(&self, token: &str) -> Vec<Sign> {
        self.lookup_at(token, 0)
    }
}

fn parse_entry(line: usize, text: &str, lattice: &TypeLattice) -> Result<LexEntry, LexiconError> {
    let bad = |msg: String| LexiconError::Malformed { line, msg };
    let fields: Vec<&str> = text.split('\t').collect();
    if fields.len() < 3 || fields.len() > 4 {
        return Err(bad(format!(
            "expected 3 or 4 tab-separated fields, found {}",
            fields.len()
        )));
    }
    let surface = fields[0].trim();
    if surface.is_empty() {
        return Err(bad("empty surface form".into()));
    }
    let pos: Pos = parse_word(fields[1].trim()).map_err(|_| bad(format!("unknown pos `{}`", fields[1])))?;
    let ptype = match fields[2].trim() {
        "-" | "" => None,
        name => Some(lattice.id(name).map_err(|_| LexiconError::UnknownType {
            line,
            name: name.to_string(),
        })?),
    };

    let mut feats: HashMap<&str, &str> = HashMap::new();
    for kv in fields.get(3).copied().unwrap_or("").split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got `{kv}`")))?;
        if feats.insert(k, v).is_some() {
            return Err(bad(format!("key `{k}` given twice")));
        }
    }
    for k in feats.keys() {
        if !matches!(
            *k,
            "case" | "mod" | "nonaux" | "subcat" | "adjacent" | "sort" | "valence" | "aux" | "id" | "question"
        ) {
            return Err(bad(format!("unrecognized key `{k}`")));
        }
    }
    let flag = |k: &str| -> Result<bool, LexiconError> {
        match feats.get(k) {
            None | Some(&"no") => Ok(false),
            Some(&"yes") => Ok(true),
            Some(v) => Err(bad(format!("`{k}` must be yes or no, got `{v}`"))),
        }
    };

    let case = feats
        .get("case")
        .map(|v| parse_word::<Case>(v).map_err(|_| bad(format!("illegal case `{v}`"))))
        .transpose()?;
    let modifies = match feats.get("mod") {
        None => None,
        Some(v) => Some(ModTarget {
            target: parse_word(v).map_err(|_| bad(format!("mod must be noun or verb, got `{v}`")))?,
            nonaux_only: flag("nonaux")?,
            sort: SemSort::Any,
        }),
    };
    let sorts: Vec<SemSort> = match feats.get("sort") {
        None => Vec::new(),
        Some(v) => v
            .split(',')
            .map(|s| parse_word(s).map_err(|_| bad(format!("unknown sort `{s}`"))))
            .collect::<Result<_, _>>()?,
    };
    let aux = flag("aux")?;
    let question = flag("question")?;

    if pos == Pos::Particle && ptype.is_none() {
        return Err(bad("particle entries need a type".into()));
    }
    if pos != Pos::Particle && ptype.is_some() {
        return Err(bad("only particles carry a type".into()));
    }
    if aux && pos != Pos::Verb {
        return Err(bad("aux is only meaningful on verbs".into()));
    }
    let case_particle = lattice.id("case-particle").ok();
    let modifying_particle = lattice.id("modifying-particle").ok();
    let under = |root: Option<TypeId>| match (root, ptype) {
        (Some(r), Some(t)) => lattice.subsumes_id(r, t),
        _ => false,
    };
    if case.is_some() && !under(case_particle) {
        return Err(bad("case requires a type under case-particle".into()));
    }
    if under(case_particle) && (modifies.is_some() || case.is_none()) {
        return Err(bad("case particles need a case and MOD none".into()));
    }
    if under(modifying_particle) && modifies.is_none() {
        return Err(bad("modifying particles need a MOD value".into()));
    }

    let subcat = match feats.get("subcat") {
        None => None,
        Some(v) => {
            let mut takes = Vec::new();
            for c in v.split(',') {
                takes.push(match c {
                    "noun" => Category::Noun,
                    "verb" => Category::Verb,
                    "adjective" => Category::Adjective,
                    "utterance" => Category::Utterance,
                    "question-clause" => Category::QuestionClause,
                    name => Category::Particle(lattice.id(name).map_err(|_| LexiconError::UnknownType {
                        line,
                        name: name.to_string(),
                    })?),
                });
            }
            if takes.is_empty() {
                return Err(bad("empty subcat".into()));
            }
            Some(Arc::new(SubcatSpec {
                takes,
                adjacent: flag("adjacent")?,
                sorts: sorts.clone(),
            }))
        }
    };
    if pos == Pos::Particle && subcat.is_none() {
        return Err(bad("particles need a subcat".into()));
    }

    let valence = match feats.get("valence") {
        None => Vec::new(),
        Some(v) => parse_valence(v).map_err(bad)?,
    };
    if !valence.is_empty() && !pos.is_predicate() {
        return Err(bad("only verbs and adjectives take a valence".into()));
    }

    // For particles `sort` restricts the complement; elsewhere it is the word's own sort.
    let sort = if subcat.is_some() {
        SemSort::Any
    } else {
        match sorts.as_slice() {
            [] => SemSort::Any,
            [s] => *s,
            _ => return Err(bad("a word has exactly one sort".into())),
        }
    };

    Ok(LexEntry {
        id: feats.get("id").copied().unwrap_or(surface).to_string(),
        surface: surface.to_string(),
        head: Arc::new(Head {
            pos,
            ptype,
            case,
            modifies,
            aux,
            question,
        }),
        subcat,
        valence,
        sort,
    })
}

fn parse_valence(text: &str) -> Result<Vec<ValenceSlot>, String> {
    let mut slots: Vec<ValenceSlot> = Vec::new();
    for part in text.split(';') {
        let f: Vec<&str> = part.split(':').collect();
        let [role, case, sort, status] = f.as_slice() else {
            return Err(format!("valence slot `{part}` is not role:case:sort:status"));
        };
        let role: Role = parse_word(role).map_err(|_| format!("unknown role `{role}`"))?;
        let case = match *case {
            "-" => None,
            c => Some(parse_word::<Case>(c).map_err(|_| format!("illegal case `{c}`"))?),
        };
        if (role == Role::Pred) != case.is_none() {
            return Err("only the pred slot is caseless".into());
        }
        let status = match *status {
            "optional" => SlotStatus::Optional,
            "adjacent" => SlotStatus::Adjacent,
            s => return Err(format!("slot status must be optional or adjacent, got `{s}`")),
        };
        if slots.iter().any(|s| s.role == role) {
            return Err(format!("role {role} given twice"));
        }
        if case == Some(Case::Wo) && slots.iter().any(|s| s.case == Some(Case::Wo)) {
            return Err("at most one wo-marked slot".into());
        }
        slots.push(ValenceSlot {
            role,
            case,
            sort: parse_word(sort).map_err(|_| format!("unknown sort `{sort}`"))?,
            status,
            filler: None,
        });
    }
    Ok(slots)
}

/// Parse a lowercase keyword through serde's variant names.
fn parse_word<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, ()> {
    T::deserialize(serde::de::value::StrDeserializer::<serde::de::value::Error>::new(s)).map_err(|_| ())
}

macro_rules! keyword_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = format!("{:?}", self).to_lowercase();
                f.write_str(&s)
            }
        }
        impl FromStr for $t {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                parse_word(s).map_err(|_| format!("unknown {} `{}`", stringify!($t), s))
            }
        }
    )*};
}
keyword_display!(Pos, Case, SemSort, Role, SlotStatus, TargetPos);
