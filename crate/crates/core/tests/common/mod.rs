//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use particle_grammar::lattice::TypeDecl;
use particle_grammar::lexicon::{Lexicon, Pos, Role, SemSort, SlotStatus, BUNDLED_LEXICON};
use particle_grammar::rules::{adjunct_head, bare_np_adjunct, complement_head, sap_attach};
use particle_grammar::sign::{Adjunct, Binding, Functor, Schema, Sign, Span};
use particle_grammar::TypeLattice;

// ---------------------------------------------------------------------------
// Lattice

/// Reflexive-transitive ancestor sets computed straight from the declarations.
pub fn ancestors(decls: &[TypeDecl]) -> BTreeMap<String, BTreeSet<String>> {
    let parents: BTreeMap<&str, &[String]> = decls.iter().map(|d| (d.name.as_str(), d.parents.as_slice())).collect();
    let mut out = BTreeMap::new();
    for d in decls {
        let mut seen = BTreeSet::new();
        let mut stack = vec![d.name.clone()];
        while let Some(t) = stack.pop() {
            if seen.insert(t.clone()) {
                stack.extend(parents.get(t.as_str()).into_iter().flat_map(|ps| ps.iter().cloned()));
            }
        }
        out.insert(d.name.clone(), seen);
    }
    out
}

pub fn has_cycle(decls: &[TypeDecl]) -> bool {
    let anc = ancestors(decls);
    decls.iter().any(|d| {
        d.parents
            .iter()
            .any(|p| anc.get(p).is_some_and(|a| a.contains(&d.name)))
    })
}

/// Maximal common subtypes of `a` and `b`, by exhaustive search.
pub fn maximal_common_subtypes(decls: &[TypeDecl], a: &str, b: &str) -> Vec<String> {
    let anc = ancestors(decls);
    let common: Vec<&String> = anc
        .iter()
        .filter(|(_, up)| up.contains(a) && up.contains(b))
        .map(|(t, _)| t)
        .collect();
    common
        .iter()
        .filter(|t| !common.iter().any(|u| *u != **t && anc[**t].contains(*u)))
        .map(|t| t.to_string())
        .collect()
}

/// The GLB by brute force: `None` for bottom, `Err` when it is not unique.
pub fn glb_oracle(decls: &[TypeDecl], a: &str, b: &str) -> Result<Option<String>, Vec<String>> {
    let mut max = maximal_common_subtypes(decls, a, b);
    match max.len() {
        0 => Ok(None),
        1 => Ok(max.pop()),
        _ => Err(max),
    }
}

pub fn bundled_decls() -> Vec<TypeDecl> {
    particle_grammar::lattice::parse_declarations(particle_grammar::lattice::BUNDLED_HIERARCHY).unwrap()
}

// ---------------------------------------------------------------------------
// Expected cooccurrence counts, row by row.

pub const PRINTED_TABLE: [[u32; 12]; 14] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
    [0, 0, 0, 19, 0, 0, 0, 0, 137, 49, 0, 15],
    [2, 0, 0, 0, 0, 0, 0, 14, 158, 241, 0, 30],
    [0, 0, 0, 1, 0, 0, 0, 4, 0, 0, 0, 0],
    [23, 0, 30, 81, 0, 0, 0, 34, 69, 12, 0, 123],
    [17, 1, 66, 32, 0, 0, 0, 40, 63, 1, 0, 79],
    [64, 9, 1, 2249, 0, 0, 0, 0, 287, 11, 0, 4],
    [0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [3, 0, 0, 1, 0, 0, 0, 0, 30, 0, 0, 0],
    [0, 3, 0, 1, 0, 0, 0, 14, 17, 58, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 36, 15, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 15, 0, 0, 0],
];

// ---------------------------------------------------------------------------
// Lexicons

/// Lexicon lines (from the bundled file) whose entry id is in `ids`. An entry
/// without an explicit `id=` is identified by its surface form.
pub fn lexicon_subset(ids: &[&str]) -> String {
    BUNDLED_LEXICON
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
        .filter(|l| {
            let surface = l.split('\t').next().unwrap();
            let id = l
                .split_whitespace()
                .find_map(|w| w.strip_prefix("id="))
                .unwrap_or(surface);
            ids.contains(&id)
        })
        .map(|l| format!("{l}\n"))
        .collect()
}

pub const MINI_IDS: [&str; 10] = [
    "kanojo",
    "oyogi",
    "gogo",
    "ga-case",
    "ga-adjunct",
    "wo-case",
    "kara-postposition",
    "wa-topic",
    "dekimasu",
    "ka-sap",
];

pub fn mini_lexicon(lattice: &TypeLattice) -> Lexicon {
    let lex = Lexicon::parse(&lexicon_subset(&MINI_IDS), lattice).unwrap();
    assert_eq!(lex.len(), MINI_IDS.len());
    lex
}

/// Bundled lexicon plus a sortless noun used to build particle fragments.
pub fn lexicon_with_dummy(lattice: &TypeLattice) -> Lexicon {
    let text = format!("{BUNDLED_LEXICON}\ndummy\tnoun\t-\tsort=any\n");
    Lexicon::parse(&text, lattice).unwrap()
}

// ---------------------------------------------------------------------------
// Derivations

/// What an analysis means, independent of how it was derived.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Signature {
    pub entry: String,
    pub pos: Pos,
    pub sort: SemSort,
    pub predicate: Option<String>,
    pub bound: Vec<(Role, Binding)>,
    pub adjuncts: Vec<Adjunct>,
    pub open: Vec<Role>,
    pub auxiliaries: Vec<String>,
    pub slots: Vec<(Role, SlotStatus, Option<Span>)>,
}

pub fn signature(s: &Sign) -> Signature {
    let mut adjuncts = s.pas.adjuncts.clone();
    adjuncts.sort();
    Signature {
        entry: s.entry.to_string(),
        pos: s.head.pos,
        sort: s.sort,
        predicate: s.pas.predicate.clone(),
        bound: s.pas.bound.iter().map(|(r, b)| (*r, *b)).collect(),
        adjuncts,
        open: s.pas.open.clone(),
        auxiliaries: s.pas.auxiliaries.clone(),
        slots: s.valence.iter().map(|v| (v.role, v.status, v.filler)).collect(),
    }
}

/// A spanning sign counts as a sentence when it is a closed utterance, or a
/// verb/adjective with no open adjacent slot.
pub fn is_sentence(s: &Sign) -> bool {
    if s.functor != Functor::None {
        return false;
    }
    match s.head.pos {
        Pos::Utterance => true,
        Pos::Verb | Pos::Adjective => s.valence.iter().all(|v| v.status != SlotStatus::Adjacent),
        _ => false,
    }
}

fn with_unary(signs: Vec<Sign>) -> Vec<Arc<Sign>> {
    let mut out = Vec::new();
    for s in signs {
        let s = Arc::new(s);
        if let Ok(p) = bare_np_adjunct(&s) {
            out.push(Arc::new(p));
        }
        out.push(s);
    }
    out
}

/// Every sign derivable over `tokens[i..j]`, one per derivation tree. Each
/// binary node tries every schema on every pair of daughters.
pub fn all_derivations(lex: &Lexicon, lattice: &TypeLattice, tokens: &[&str], i: usize, j: usize) -> Vec<Arc<Sign>> {
    if j == i + 1 {
        return with_unary(lex.lookup_at(tokens[i], i));
    }
    let mut built = Vec::new();
    for k in i + 1..j {
        let lefts = all_derivations(lex, lattice, tokens, i, k);
        let rights = all_derivations(lex, lattice, tokens, k, j);
        for l in &lefts {
            for r in &rights {
                if let Ok(v) = complement_head(lattice, l, r) {
                    built.extend(v);
                }
                if let Ok(s) = adjunct_head(lattice, l, r) {
                    built.push(s);
                }
                if let Ok(s) = sap_attach(l, r) {
                    built.push(s);
                }
            }
        }
    }
    with_unary(built)
}

pub fn brute_force_analyses(lex: &Lexicon, lattice: &TypeLattice, tokens: &[&str]) -> BTreeSet<Signature> {
    all_derivations(lex, lattice, tokens, 0, tokens.len())
        .iter()
        .filter(|s| is_sentence(s))
        .map(|s| signature(s))
        .collect()
}

/// Walk every sign in a derivation, checking the head-sharing identity.
pub fn head_feature_principle_holds(s: &Sign) -> bool {
    let here = match s.rule {
        Schema::Lexical | Schema::BareNp => true,
        Schema::ComplementHead | Schema::AdjunctHead | Schema::SapAttach => {
            s.daughters.len() == 2 && Arc::ptr_eq(&s.head, &s.daughters[1].head)
        }
    };
    here && s.daughters.iter().all(|d| head_feature_principle_holds(d))
}

/// Saturated slots stay saturated, with the same filler, from head daughter
/// to mother; a saturated head daughter never yields an unsaturated mother.
pub fn saturation_monotone(s: &Sign) -> bool {
    let here = match s.rule {
        Schema::Lexical => true,
        _ => {
            let hd = s.daughters.last().unwrap();
            let slots_kept = hd.valence.len() == s.valence.len()
                && hd.valence.iter().zip(&s.valence).all(|(d, m)| {
                    d.role == m.role
                        && match d.status {
                            SlotStatus::Saturated => m.status == SlotStatus::Saturated && m.filler == d.filler,
                            _ => true,
                        }
                });
            let count = |x: &Sign| x.valence.iter().filter(|v| v.status == SlotStatus::Saturated).count();
            let functor_ok = hd.functor != Functor::None || s.functor == Functor::None;
            slots_kept && count(s) >= count(hd) && functor_ok
        }
    };
    here && s.daughters.iter().all(|d| saturation_monotone(d))
}

/// Every sequence of `len` tokens over `alphabet`.
pub fn sequences<'a>(alphabet: &[&'a str], len: usize) -> Vec<Vec<&'a str>> {
    let mut out: Vec<Vec<&str>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |t| {
                    let mut p = prefix.clone();
                    p.push(*t);
                    p
                })
            })
            .collect();
    }
    out
}

/// Surface forms in a lexicon, deduplicated and sorted.
pub fn surfaces(lex: &Lexicon) -> Vec<String> {
    let set: BTreeSet<_> = lex.entries().iter().map(|e| e.surface.clone()).collect();
    set.into_iter().collect()
}

/// Licensing read off parsed fragments: (L, R) holds when `dummy L R` has a
/// saturated R-headed particle phrase whose complement is headed by L.
pub fn fragment_licensing(lex: &Lexicon, lattice: &TypeLattice, left: &str, right: &str) -> bool {
    let chart = particle_grammar::build_chart(lex, lattice, &["dummy", left, right]).unwrap();
    chart.cell(Span::new(0, 3)).iter().any(|s| {
        s.functor == Functor::None
            && s.head.pos == Pos::Particle
            && s.rule == Schema::ComplementHead
            && lex.entry(&s.entry).is_some_and(|e| e.surface == right)
            && s.daughters[0].span == Span::new(0, 2)
            && lex.entry(&s.daughters[0].entry).is_some_and(|e| e.surface == left)
            && s.daughters[0].head.pos == Pos::Particle
    })
}
