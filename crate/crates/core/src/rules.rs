//! Head-final combination schemata.
//!
//! Every binary rule takes the left daughter first and the head second and
//! requires the two spans to meet. The mother shares the head daughter's
//! [`Head`](crate::lexicon::Head) by pointer; only the bare-NP promotion builds a
//! fresh head.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lattice::TypeLattice;
use crate::lexicon::{Category, ModTarget, Pos, Role, SlotStatus, TargetPos};
use crate::sign::{Adjunct, Binding, Flavor, Functor, Schema, Sign};

/// Why a combination was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mismatch {
    CaseClash,
    SortClash,
    AlreadySaturated,
    AdjacencyViolation,
    ModNone,
    TargetPosClash,
    AuxClash,
    CategoryClash,
    Incomplete,
    NotBareNoun,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mismatch::CaseClash => "case-clash",
            Mismatch::SortClash => "sort-clash",
            Mismatch::AlreadySaturated => "already-saturated",
            Mismatch::AdjacencyViolation => "adjacency-violation",
            Mismatch::ModNone => "mod-none",
            Mismatch::TargetPosClash => "target-pos-clash",
            Mismatch::AuxClash => "aux-clash",
            Mismatch::CategoryClash => "category-clash",
            Mismatch::Incomplete => "incomplete",
            Mismatch::NotBareNoun => "not-bare-noun",
        })
    }
}

/// Does `sign` count as an instance of `cat` for a particle's subcat?
pub fn satisfies(lattice: &TypeLattice, cat: Category, sign: &Sign) -> bool {
    match cat {
        Category::Noun => sign.head.pos == Pos::Noun && sign.is_saturated() && !sign.is_promoted(),
        Category::Verb => sign.head.pos == Pos::Verb && sign.is_complete_predicate(),
        Category::Adjective => sign.head.pos == Pos::Adjective && sign.is_complete_predicate(),
        Category::Utterance => sign.is_utterance(),
        Category::QuestionClause => sign.is_utterance() && sign.head.question,
        Category::Particle(t) => {
            sign.head.pos == Pos::Particle
                && sign.is_saturated()
                && sign.head.ptype.is_some_and(|p| lattice.subsumes_id(t, p))
        }
    }
}

/// Complement-Head: the left daughter saturates the head's subcat or one of
/// its valence slots. A verb with two matching open slots yields one mother
/// per slot.
pub fn complement_head(lattice: &TypeLattice, comp: &Arc<Sign>, head: &Arc<Sign>) -> Result<Vec<Sign>, Mismatch> {
    if comp.span.end != head.span.start {
        return Err(Mismatch::AdjacencyViolation);
    }
    if !comp.is_saturated() {
        return Err(Mismatch::Incomplete);
    }
    match &head.functor {
        Functor::Particle(subcat) => {
            if comp.is_promoted() || !subcat.takes.iter().any(|&c| satisfies(lattice, c, comp)) {
                return Err(Mismatch::CategoryClash);
            }
            if !subcat.sorts.is_empty() && !subcat.sorts.contains(&comp.sort) {
                return Err(Mismatch::SortClash);
            }
            Ok(vec![Sign {
                head: head.head.clone(),
                entry: head.entry.clone(),
                word: None,
                functor: Functor::None,
                valence: Vec::new(),
                span: comp.span.join(head.span),
                sort: comp.sort,
                pas: comp.pas.clone(),
                daughters: vec![comp.clone(), head.clone()],
                rule: Schema::ComplementHead,
            }])
        }
        Functor::Sap => Err(Mismatch::CategoryClash),
        Functor::None => saturate_slot(comp, head),
    }
}

fn saturate_slot(comp: &Arc<Sign>, head: &Arc<Sign>) -> Result<Vec<Sign>, Mismatch> {
    if !head.head.pos.is_predicate() || head.valence.is_empty() {
        return Err(Mismatch::CategoryClash);
    }
    let predicate_filler = comp.is_complete_predicate();
    let case = match comp.head.pos {
        Pos::Particle => comp.head.case.ok_or(Mismatch::CaseClash)?,
        _ if predicate_filler => {
            // caseless predicate: only a pred slot will do
            return fill(comp, head, |s| s.role == Role::Pred);
        }
        _ => return Err(Mismatch::CaseClash),
    };
    fill(comp, head, |s| s.case == Some(case))
}

fn fill(
    comp: &Arc<Sign>,
    head: &Arc<Sign>,
    matches: impl Fn(&crate::lexicon::ValenceSlot) -> bool,
) -> Result<Vec<Sign>, Mismatch> {
    let candidates: Vec<usize> = (0..head.valence.len()).filter(|&i| matches(&head.valence[i])).collect();
    if candidates.is_empty() {
        return Err(Mismatch::CaseClash);
    }
    let mut open: Vec<usize> = candidates.into_iter().filter(|&i| head.valence[i].is_open()).collect();
    if open.is_empty() {
        return Err(Mismatch::AlreadySaturated);
    }
    if head.has_open_adjacent() {
        open.retain(|&i| head.valence[i].status == SlotStatus::Adjacent);
        if open.is_empty() {
            return Err(Mismatch::AdjacencyViolation);
        }
    }
    open.retain(|&i| head.valence[i].sort.admits(comp.sort));
    if open.is_empty() {
        return Err(Mismatch::SortClash);
    }

    Ok(open
        .into_iter()
        .map(|i| {
            let slot = &head.valence[i];
            let mut valence = head.valence.clone();
            valence[i].status = SlotStatus::Saturated;
            valence[i].filler = Some(comp.span);
            let pas = if slot.role == Role::Pred {
                // auxiliaries are transparent: the embedded predicate's structure carries up
                let mut pas = comp.pas.clone();
                pas.adjuncts.extend(head.pas.adjuncts.iter().copied());
                pas.auxiliaries.push(head.entry.to_string());
                pas
            } else {
                let mut pas = head.pas.clone();
                pas.bound.insert(
                    slot.role,
                    Binding {
                        span: comp.span,
                        sort: comp.sort,
                        case: slot.case,
                    },
                );
                pas.open.retain(|&r| r != slot.role);
                pas
            };
            Sign {
                head: head.head.clone(),
                entry: head.entry.clone(),
                word: None,
                functor: Functor::None,
                valence,
                span: comp.span.join(head.span),
                sort: head.sort,
                pas,
                daughters: vec![comp.clone(), head.clone()],
                rule: Schema::ComplementHead,
            }
        })
        .collect())
}

/// Adjunct-Head: a sign with a MOD value attaches to the head it selects.
pub fn adjunct_head(lattice: &TypeLattice, adj: &Arc<Sign>, head: &Arc<Sign>) -> Result<Sign, Mismatch> {
    if adj.span.end != head.span.start {
        return Err(Mismatch::AdjacencyViolation);
    }
    if !adj.is_saturated() {
        return Err(Mismatch::Incomplete);
    }
    if !head.is_saturated() {
        return Err(Mismatch::CategoryClash);
    }
    let target: ModTarget = adj.head.modifies.ok_or(Mismatch::ModNone)?;
    if adj.head.pos.is_predicate() && adj.has_open_adjacent() {
        return Err(Mismatch::AdjacencyViolation);
    }
    let pos_ok = match target.target {
        TargetPos::Noun => head.head.pos == Pos::Noun && !head.is_promoted(),
        TargetPos::Verb => head.head.pos.is_predicate(),
    };
    if !pos_ok {
        return Err(Mismatch::TargetPosClash);
    }
    if target.nonaux_only && head.head.aux {
        return Err(Mismatch::AuxClash);
    }
    if !target.sort.admits(head.sort) {
        return Err(Mismatch::SortClash);
    }
    if head.has_open_adjacent() {
        return Err(Mismatch::AdjacencyViolation);
    }

    let mut pas = head.pas.clone();
    pas.adjuncts.push(Adjunct {
        span: adj.span,
        flavor: flavor_of(lattice, adj, target),
    });
    // A semantically light noun (e.g. hou) takes its sort from its attribute.
    let sort = if target.target == TargetPos::Noun && head.sort == crate::lexicon::SemSort::Any {
        adj.sort
    } else {
        head.sort
    };
    Ok(Sign {
        head: head.head.clone(),
        entry: head.entry.clone(),
        word: None,
        functor: Functor::None,
        valence: head.valence.clone(),
        span: adj.span.join(head.span),
        sort,
        pas,
        daughters: vec![adj.clone(), head.clone()],
        rule: Schema::AdjunctHead,
    })
}

fn flavor_of(lattice: &TypeLattice, adj: &Sign, target: ModTarget) -> Flavor {
    if adj.is_promoted() {
        return Flavor::BareNp;
    }
    let Some(ptype) = adj.head.ptype else {
        return match target.target {
            TargetPos::Noun => Flavor::Adnominal,
            TargetPos::Verb => Flavor::Adverb,
        };
    };
    let under = |name: &str| lattice.id(name).is_ok_and(|t| lattice.subsumes_id(t, ptype));
    if under("topic-particle") {
        Flavor::TopicUnbound
    } else if under("adverbial-particle") {
        Flavor::Adverbial
    } else if under("postposition") {
        Flavor::Postposition
    } else if under("noun-modifying-particle") {
        Flavor::NoAttributive
    } else {
        Flavor::GaAdjunct
    }
}

/// Unary promotion of a bare noun phrase to a nonauxiliary-verb adjunct.
pub fn bare_np_adjunct(np: &Arc<Sign>) -> Result<Sign, Mismatch> {
    if np.head.pos != Pos::Noun || !np.is_saturated() || np.is_promoted() {
        return Err(Mismatch::NotBareNoun);
    }
    let mut head = (*np.head).clone();
    head.modifies = Some(ModTarget::nonaux_verb());
    Ok(Sign {
        head: Arc::new(head),
        entry: np.entry.clone(),
        word: None,
        functor: Functor::None,
        valence: np.valence.clone(),
        span: np.span,
        sort: np.sort,
        pas: np.pas.clone(),
        daughters: vec![np.clone()],
        rule: Schema::BareNp,
    })
}

/// Attach a sentence-final particle to a complete clause or utterance.
pub fn sap_attach(clause: &Arc<Sign>, sap: &Arc<Sign>) -> Result<Sign, Mismatch> {
    if clause.span.end != sap.span.start {
        return Err(Mismatch::AdjacencyViolation);
    }
    if !sap.is_lexical_sap() {
        return Err(Mismatch::CategoryClash);
    }
    if !(clause.is_complete_predicate() || clause.is_utterance()) {
        return Err(Mismatch::Incomplete);
    }
    Ok(Sign {
        head: sap.head.clone(),
        entry: sap.entry.clone(),
        word: None,
        functor: Functor::None,
        valence: Vec::new(),
        span: clause.span.join(sap.span),
        sort: clause.sort,
        pas: clause.pas.clone(),
        daughters: vec![clause.clone(), sap.clone()],
        rule: Schema::SapAttach,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Case, Lexicon, SemSort};
    use crate::sign::Span;

    struct Fixture {
        lattice: TypeLattice,
        lexicon: Lexicon,
    }

    impl Fixture {
        fn new() -> Self {
            let lattice = TypeLattice::bundled();
            let lexicon = Lexicon::bundled(&lattice);
            Fixture { lattice, lexicon }
        }

        fn word(&self, id: &str, pos: usize) -> Arc<Sign> {
            Arc::new(
                self.lexicon
                    .entry(id)
                    .unwrap_or_else(|| panic!("no entry {id}"))
                    .to_sign(pos),
            )
        }

        fn comp(&self, c: &Arc<Sign>, h: &Arc<Sign>) -> Result<Vec<Arc<Sign>>, Mismatch> {
            complement_head(&self.lattice, c, h).map(|v| v.into_iter().map(Arc::new).collect())
        }
    }

    #[test]
    fn noun_plus_ga_is_saturated_case_phrase() {
        let f = Fixture::new();
        let p = f.comp(&f.word("oyogi", 0), &f.word("ga-case", 1)).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p[0].is_saturated());
        assert_eq!(p[0].head.case, Some(Case::Ga));
        assert_eq!(p[0].head.modifies, None);
        assert_eq!(p[0].sort, SemSort::Event);
        assert!(Arc::ptr_eq(&p[0].head, &p[0].daughters[1].head));
    }

    #[test]
    fn dekimasu_takes_two_ga_phrases_once_each() {
        let f = Fixture::new();
        let oyogi_ga = f.comp(&f.word("oyogi", 2), &f.word("ga-case", 3)).unwrap().remove(0);
        let obj = f.comp(&oyogi_ga, &f.word("dekimasu", 4)).unwrap();
        // oyogi is an event: only the object slot admits it
        assert_eq!(obj.len(), 1);
        let vp = &obj[0];
        assert!(vp.pas.bound.contains_key(&Role::Obj));
        assert!(vp.pas.open.contains(&Role::Subj));

        let kanojo_ga = f.comp(&f.word("kanojo", 0), &f.word("ga-case", 1)).unwrap().remove(0);
        let s = f.comp(&kanojo_ga, vp).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].pas.bound.len(), 2);
        assert_eq!(s[0].pas.bound[&Role::Subj].span, Span::new(0, 2));
        assert_eq!(s[0].pas.predicate.as_deref(), Some("dekimasu"));
        assert!(s[0].pas.open.is_empty());
    }

    #[test]
    fn saturated_slot_cannot_be_refilled() {
        let f = Fixture::new();
        // naru has one ni slot; fill it, then offer a second ni-phrase
        let ni1 = f.comp(&f.word("raigetsu", 2), &f.word("ni-case", 3)).unwrap().remove(0);
        let vp = f.comp(&ni1, &f.word("naru", 4)).unwrap().remove(0);
        let ni0 = f.comp(&f.word("sochira", 0), &f.word("ni-case", 1)).unwrap().remove(0);
        assert_eq!(f.comp(&ni0, &vp).unwrap_err(), Mismatch::AlreadySaturated);
    }

    #[test]
    fn case_and_sort_clashes() {
        let f = Fixture::new();
        let wo = f.comp(&f.word("oyogi", 0), &f.word("wo-case", 1)).unwrap().remove(0);
        assert_eq!(f.comp(&wo, &f.word("dekimasu", 2)).unwrap_err(), Mismatch::CaseClash);
        // jikaN is an object: not human enough for the subject, not an event for the object
        let ga = f.comp(&f.word("jikaN", 0), &f.word("ga-case", 1)).unwrap().remove(0);
        assert_eq!(f.comp(&ga, &f.word("dekimasu", 2)).unwrap_err(), Mismatch::SortClash);
        // ga-adjunct restricts its noun to temporal or human
        assert_eq!(
            f.comp(&f.word("oyogi", 0), &f.word("ga-adjunct", 1)).unwrap_err(),
            Mismatch::SortClash
        );
    }

    #[test]
    fn adjacent_slot_blocks_other_fillers() {
        let f = Fixture::new();
        // omoimasu needs its to-clause first; a ga-phrase may not skip it
        let ga = f.comp(&f.word("kanojo", 0), &f.word("ga-case", 1)).unwrap().remove(0);
        assert_eq!(
            f.comp(&ga, &f.word("omoimasu", 2)).unwrap_err(),
            Mismatch::AdjacencyViolation
        );
        let adv = f.word("yukkuri", 1);
        assert_eq!(
            adjunct_head(&f.lattice, &adv, &f.word("omoimasu", 2)).unwrap_err(),
            Mismatch::AdjacencyViolation
        );
    }

    #[test]
    fn postposition_adjoins_verb() {
        let f = Fixture::new();
        let pp = f
            .comp(&f.word("naNji", 0), &f.word("kara-postposition", 1))
            .unwrap()
            .remove(0);
        let s = adjunct_head(&f.lattice, &pp, &f.word("hajimaru", 2)).unwrap();
        assert_eq!(
            s.pas.adjuncts,
            vec![Adjunct {
                span: Span::new(0, 2),
                flavor: Flavor::Postposition
            }]
        );
        assert!(Arc::ptr_eq(&s.head, &s.daughters[1].head));
        assert_eq!(s.valence, s.daughters[1].valence);
    }

    #[test]
    fn case_phrase_never_adjoins() {
        let f = Fixture::new();
        let pp = f
            .comp(&f.word("naNji", 0), &f.word("kara-postposition", 1))
            .unwrap()
            .remove(0);
        let ga = f.comp(&pp, &f.word("ga-case", 2)).unwrap().remove(0);
        assert_eq!(ga.head.modifies, None);
        assert_eq!(
            adjunct_head(&f.lattice, &ga, &f.word("toremasu", 3)).unwrap_err(),
            Mismatch::ModNone
        );
    }

    #[test]
    fn no_phrase_needs_a_noun() {
        let f = Fixture::new();
        let no = f
            .comp(&f.word("hou", 0), &f.word("no-attributive", 1))
            .unwrap()
            .remove(0);
        assert_eq!(
            adjunct_head(&f.lattice, &no, &f.word("yukkuri", 2)).unwrap_err(),
            Mismatch::TargetPosClash
        );
        assert_eq!(
            adjunct_head(&f.lattice, &no, &f.word("dekimasu", 2)).unwrap_err(),
            Mismatch::TargetPosClash
        );
        let np = adjunct_head(&f.lattice, &no, &f.word("hanashi", 2)).unwrap();
        assert_eq!(np.pas.adjuncts[0].flavor, Flavor::NoAttributive);
    }

    #[test]
    fn light_noun_inherits_attribute_sort() {
        let f = Fixture::new();
        let no = f
            .comp(&f.word("gogo", 0), &f.word("no-attributive", 1))
            .unwrap()
            .remove(0);
        let np = adjunct_head(&f.lattice, &no, &f.word("hou", 2)).unwrap();
        assert_eq!(np.sort, SemSort::Temporal);
    }

    #[test]
    fn particle_adjuncts_skip_auxiliaries() {
        let f = Fixture::new();
        let pp = f
            .comp(&f.word("naNji", 0), &f.word("kara-postposition", 1))
            .unwrap()
            .remove(0);
        assert_eq!(
            adjunct_head(&f.lattice, &pp, &f.word("gozaimasu", 2)).unwrap_err(),
            Mismatch::AuxClash
        );
        let bare = Arc::new(bare_np_adjunct(&f.word("gogo", 0)).unwrap());
        assert_eq!(
            adjunct_head(&f.lattice, &bare, &f.word("gozaimasu", 1)).unwrap_err(),
            Mismatch::AuxClash
        );
    }

    #[test]
    fn bare_np_promotion() {
        let f = Fixture::new();
        let gogo = f.word("gogo", 0);
        let bare = Arc::new(bare_np_adjunct(&gogo).unwrap());
        assert_eq!(bare.head.modifies, Some(ModTarget::nonaux_verb()));
        assert_eq!(gogo.head.modifies, None, "original stays a plain noun");
        let vp = adjunct_head(&f.lattice, &bare, &f.word("hajimaru", 1)).unwrap();
        assert_eq!(vp.pas.adjuncts[0].flavor, Flavor::BareNp);
        // a promoted noun is not a complement
        assert_eq!(
            f.comp(&bare, &f.word("ga-case", 1)).unwrap_err(),
            Mismatch::CategoryClash
        );

        let ga = f.comp(&f.word("gogo", 0), &f.word("ga-case", 1)).unwrap().remove(0);
        assert_eq!(bare_np_adjunct(&ga).unwrap_err(), Mismatch::NotBareNoun);
        assert_eq!(bare_np_adjunct(&bare).unwrap_err(), Mismatch::NotBareNoun);
    }

    #[test]
    fn sap_wraps_clauses_only() {
        let f = Fixture::new();
        let clause = f.comp(&f.word("yoroshii", 0), &f.word("desu", 1)).unwrap().remove(0);
        let u = Arc::new(sap_attach(&clause, &f.word("ka-sap", 2)).unwrap());
        assert!(u.is_utterance());
        assert!(u.head.question);
        // a second SAP may follow
        assert!(sap_attach(&u, &f.word("ne-sap", 3)).is_ok());
        assert_eq!(
            sap_attach(&f.word("gogo", 0), &f.word("ka-sap", 1)).unwrap_err(),
            Mismatch::Incomplete
        );
        // desu without its predicate is not a clause yet
        assert_eq!(
            sap_attach(&f.word("desu", 0), &f.word("ka-sap", 1)).unwrap_err(),
            Mismatch::Incomplete
        );
    }

    #[test]
    fn auxiliary_is_transparent_for_pas() {
        let f = Fixture::new();
        let ni = f.comp(&f.word("raigetsu", 0), &f.word("ni-case", 1)).unwrap().remove(0);
        let vp = f.comp(&ni, &f.word("naru", 2)).unwrap().remove(0);
        let n = f.comp(&vp, &f.word("N", 3)).unwrap().remove(0);
        let desu = f.comp(&n, &f.word("desu", 4)).unwrap().remove(0);
        assert_eq!(desu.pas.predicate.as_deref(), Some("naru"));
        assert_eq!(desu.pas.bound[&Role::Obj].case, Some(Case::Ni));
        assert_eq!(desu.pas.auxiliaries, vec!["N".to_string(), "desu".to_string()]);
        assert!(desu.head.aux);
    }

    #[test]
    fn spans_must_meet() {
        let f = Fixture::new();
        assert_eq!(
            f.comp(&f.word("oyogi", 0), &f.word("ga-case", 2)).unwrap_err(),
            Mismatch::AdjacencyViolation
        );
    }
}
