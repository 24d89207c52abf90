//! Best analogies and skeptical consequence over a finite analogy space.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::analogy::{classify, AnalogyError, AnalogyMap, SupportReport};
use crate::formula::{check_formula, evaluate, Formula, FormulaError};
use crate::kb::KnowledgeDomain;
use crate::preference::{
    count_preference, dominance_preference, mu, PreferenceError, PreferenceRelation, Weights,
};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("analogy `{0}` is declared twice")]
    DuplicateAnalogy(String),
    #[error("analogy `{0}` does not map between the session's source and target")]
    WrongDomains(String),
    #[error("preference carrier does not match the analogy names")]
    CarrierMismatch,
    #[error("working-set formula `{formula}` is not a source sentence: {error}")]
    IllFormedWorkingSet {
        formula: Formula,
        error: FormulaError,
    },
    #[error("analogy `{name}`: {error}")]
    Analogy { name: String, error: AnalogyError },
    #[error(transparent)]
    Preference(#[from] PreferenceError),
}

/// How the preference over analogies is obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreferenceSpec {
    Dominance,
    Counts(Weights),
    /// `(better, worse)` pairs.
    Explicit(Vec<(String, String)>),
}

/// A finite set of analogies between one source and one target, with a
/// working set and a preference over analogy names.
#[derive(Debug, Clone)]
pub struct AnalogySpace {
    source: Arc<KnowledgeDomain>,
    target: Arc<KnowledgeDomain>,
    analogies: Vec<AnalogyMap>,
    working: Vec<Formula>,
    reports: Vec<SupportReport>,
    preference: PreferenceRelation,
}

impl AnalogySpace {
    pub fn new(
        source: Arc<KnowledgeDomain>,
        target: Arc<KnowledgeDomain>,
        analogies: Vec<AnalogyMap>,
        working: Vec<Formula>,
        preference: &PreferenceSpec,
    ) -> Result<AnalogySpace, SpaceError> {
        let mut names = BTreeSet::new();
        for a in &analogies {
            if !names.insert(a.name()) {
                return Err(SpaceError::DuplicateAnalogy(a.name().to_string()));
            }
            if **a.source() != *source || **a.target() != *target {
                return Err(SpaceError::WrongDomains(a.name().to_string()));
            }
        }
        for f in &working {
            check_formula(f, source.signature()).map_err(|error| {
                SpaceError::IllFormedWorkingSet {
                    formula: f.clone(),
                    error,
                }
            })?;
        }
        for a in &analogies {
            a.check_injective_on(&working)
                .map_err(|error| SpaceError::Analogy {
                    name: a.name().to_string(),
                    error,
                })?;
        }
        let reports: Vec<SupportReport> = analogies.iter().map(|a| classify(a, &working)).collect();
        let carrier: Vec<String> = analogies.iter().map(|a| a.name().to_string()).collect();
        let preference = match preference {
            PreferenceSpec::Dominance => dominance_preference(&reports)?,
            PreferenceSpec::Counts(w) => count_preference(&reports, *w)?,
            PreferenceSpec::Explicit(edges) => {
                PreferenceRelation::new(carrier, edges.iter().map(|(a, b)| (a, b)))?
            }
        };
        Ok(AnalogySpace {
            source,
            target,
            analogies,
            working,
            reports,
            preference,
        })
    }

    /// Space with a ready-made relation whose carrier must list exactly the
    /// analogy names, in order.
    pub fn with_relation(
        source: Arc<KnowledgeDomain>,
        target: Arc<KnowledgeDomain>,
        analogies: Vec<AnalogyMap>,
        working: Vec<Formula>,
        relation: PreferenceRelation,
    ) -> Result<AnalogySpace, SpaceError> {
        let names: Vec<&str> = analogies.iter().map(|a| a.name()).collect();
        if relation
            .carrier()
            .iter()
            .map(String::as_str)
            .ne(names.iter().copied())
        {
            return Err(SpaceError::CarrierMismatch);
        }
        let mut space = AnalogySpace::new(
            source,
            target,
            analogies,
            working,
            &PreferenceSpec::Explicit(Vec::new()),
        )?;
        space.preference = relation;
        Ok(space)
    }

    pub fn source(&self) -> &Arc<KnowledgeDomain> {
        &self.source
    }

    pub fn target(&self) -> &Arc<KnowledgeDomain> {
        &self.target
    }

    pub fn analogies(&self) -> &[AnalogyMap] {
        &self.analogies
    }

    pub fn working_set(&self) -> &[Formula] {
        &self.working
    }

    /// One report per analogy, in analogy order.
    pub fn reports(&self) -> &[SupportReport] {
        &self.reports
    }

    pub fn preference(&self) -> &PreferenceRelation {
        &self.preference
    }

    pub fn report(&self, name: &str) -> Option<&SupportReport> {
        self.reports.iter().find(|r| r.analogy == name)
    }
}

/// The ⊑-best analogies, sorted by name. Empty when every analogy is beaten.
pub fn best(space: &AnalogySpace) -> Vec<String> {
    let rel = &space.preference;
    let mut names: Vec<String> = rel
        .names_of(mu(rel, rel.full()))
        .into_iter()
        .map(str::to_string)
        .collect();
    names.sort();
    names
}

/// What one analogy says about a target sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjecture {
    /// The target already knows the value; no analogy involved.
    Settled(TruthValue),
    /// `from` is the working-set formula whose image is the query.
    Analogical {
        from: Formula,
        value: TruthValue,
    },
    Undefined,
}

impl Conjecture {
    pub fn value(&self) -> Option<TruthValue> {
        match self {
            Conjecture::Settled(v) | Conjecture::Analogical { value: v, .. } => Some(*v),
            Conjecture::Undefined => None,
        }
    }
}

fn analogical(report: &SupportReport, psi: &Formula) -> Conjecture {
    match report.conjecture_for_image(psi) {
        Some((from, value)) => Conjecture::Analogical {
            from: from.clone(),
            value,
        },
        None => Conjecture::Undefined,
    }
}

/// The value `analogy` conjectures for the target sentence `psi`, given the
/// working set.
pub fn conjecture_for(
    analogy: &AnalogyMap,
    working: &[Formula],
    psi: &Formula,
) -> Result<Conjecture, FormulaError> {
    let v = evaluate(psi, analogy.target())?.value;
    if v.is_known() {
        return Ok(Conjecture::Settled(v));
    }
    Ok(analogical(&classify(analogy, working), psi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Entailed(TruthValue),
    Conflicted,
    NoSupport,
    SettledInTarget(TruthValue),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportRow {
    pub analogy: String,
    pub conjecture: Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub query: Formula,
    pub status: VerdictStatus,
    /// One row per best analogy, sorted by name. Empty for settled queries.
    pub support: Vec<SupportRow>,
    pub warning: Option<String>,
}

/// Skeptical verdict for the target sentence `psi`.
///
/// Known target values win outright. Otherwise the best analogies that
/// conjecture a value must all agree, and at least one must speak.
pub fn entail(space: &AnalogySpace, psi: &Formula) -> Result<Verdict, FormulaError> {
    let v = evaluate(psi, &space.target)?.value;
    if v.is_known() {
        return Ok(Verdict {
            query: psi.clone(),
            status: VerdictStatus::SettledInTarget(v),
            support: Vec::new(),
            warning: None,
        });
    }
    let best = best(space);
    let support: Vec<SupportRow> = best
        .iter()
        .map(|name| SupportRow {
            analogy: name.clone(),
            conjecture: analogical(
                space.report(name).expect("best names come from the space"),
                psi,
            ),
        })
        .collect();
    let values: BTreeSet<TruthValue> = support
        .iter()
        .filter_map(|r| r.conjecture.value())
        .collect();
    let status = match values.len() {
        0 => VerdictStatus::NoSupport,
        1 => VerdictStatus::Entailed(*values.first().unwrap()),
        _ => VerdictStatus::Conflicted,
    };
    let warning = if !best.is_empty() {
        None
    } else if space.analogies.is_empty() {
        Some("the analogy space is empty".to_string())
    } else {
        Some("no best analogy: every analogy is beaten, so the preference has a cycle".to_string())
    };
    Ok(Verdict {
        query: psi.clone(),
        status,
        support,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::kb::{make_domain, GroundAtom, Interpretation, Signature};
    use TruthValue::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    /// Source constants `p` (H true), `n` (H false), `u` (H unknown); target
    /// constants `t`, `k` with G(k) true and G(t) unknown.
    fn domains() -> (Arc<KnowledgeDomain>, Arc<KnowledgeDomain>) {
        let s_sig = Signature::new(["p", "n", "u"], [("H".to_string(), 1)], []).unwrap();
        let s = make_domain(
            "S",
            s_sig.clone(),
            Interpretation::herbrand(&s_sig),
            [
                (GroundAtom::new("H", ["p"]), True),
                (GroundAtom::new("H", ["n"]), False),
            ],
        )
        .unwrap();
        let t_sig = Signature::new(["t", "k"], [("G".to_string(), 1)], []).unwrap();
        let t = make_domain(
            "T",
            t_sig.clone(),
            Interpretation::herbrand(&t_sig),
            [(GroundAtom::new("G", ["k"]), True)],
        )
        .unwrap();
        (Arc::new(s), Arc::new(t))
    }

    fn analogy(
        name: &str,
        from: &str,
        s: &Arc<KnowledgeDomain>,
        t: &Arc<KnowledgeDomain>,
    ) -> AnalogyMap {
        AnalogyMap::single(name, s.clone(), t.clone(), [(from, "t"), ("H", "G")]).unwrap()
    }

    fn space(names: &[(&str, &str)], edges: &[(&str, &str)]) -> AnalogySpace {
        let (s, t) = domains();
        let analogies = names.iter().map(|(n, c)| analogy(n, c, &s, &t)).collect();
        let working = vec![f("H(p)"), f("H(n)"), f("H(u)")];
        let pref = PreferenceSpec::Explicit(
            edges
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        );
        AnalogySpace::new(s, t, analogies, working, &pref).unwrap()
    }

    #[test]
    fn best_examples() {
        assert_eq!(best(&space(&[("a", "p"), ("b", "n")], &[])), vec!["a", "b"]);
        assert_eq!(best(&space(&[("a", "p")], &[])), vec!["a"]);
        assert!(best(&space(&[("a", "p"), ("b", "n")], &[("a", "b"), ("b", "a")])).is_empty());
    }

    #[test]
    fn conjectures() {
        let (s, t) = domains();
        let a = analogy("a", "p", &s, &t);
        let working = [f("H(p)")];
        assert_eq!(
            conjecture_for(&a, &working, &f("G(k)")).unwrap(),
            Conjecture::Settled(True)
        );
        assert_eq!(
            conjecture_for(&a, &working, &f("G(t)")).unwrap(),
            Conjecture::Analogical {
                from: f("H(p)"),
                value: True
            }
        );
        assert_eq!(
            conjecture_for(&a, &working, &f("!G(t)")).unwrap(),
            Conjecture::Undefined
        );
        assert!(conjecture_for(&a, &working, &f("H(t)")).is_err());
    }

    #[test]
    fn verdicts() {
        let q = f("G(t)");
        let sp = space(&[("a", "p"), ("b", "n")], &[]);
        assert_eq!(entail(&sp, &q).unwrap().status, VerdictStatus::Conflicted);
        let sp = space(&[("a", "p"), ("b", "n")], &[("a", "b")]);
        assert_eq!(
            entail(&sp, &q).unwrap().status,
            VerdictStatus::Entailed(True)
        );
        // an analogy that says nothing does not veto
        let sp = space(&[("a", "p"), ("c", "u")], &[]);
        let v = entail(&sp, &q).unwrap();
        assert_eq!(v.status, VerdictStatus::Entailed(True));
        assert_eq!(v.support.len(), 2);
        assert_eq!(v.support[1].conjecture, Conjecture::Undefined);
        let sp = space(&[("c", "u")], &[]);
        assert_eq!(entail(&sp, &q).unwrap().status, VerdictStatus::NoSupport);
        assert_eq!(
            entail(&sp, &f("G(k)")).unwrap().status,
            VerdictStatus::SettledInTarget(True)
        );
    }

    #[test]
    fn empty_best_is_flagged() {
        let sp = space(&[("a", "p"), ("b", "n")], &[("a", "b"), ("b", "a")]);
        let v = entail(&sp, &f("G(t)")).unwrap();
        assert_eq!(v.status, VerdictStatus::NoSupport);
        assert!(v.warning.unwrap().contains("cycle"));
        let empty = space(&[], &[]);
        let v = entail(&empty, &f("G(t)")).unwrap();
        assert_eq!(v.status, VerdictStatus::NoSupport);
        assert!(v.warning.is_some());
    }

    #[test]
    fn order_independent() {
        let a = space(&[("a", "p"), ("b", "n"), ("c", "u")], &[("c", "b")]);
        let b = space(&[("c", "u"), ("b", "n"), ("a", "p")], &[("c", "b")]);
        assert_eq!(
            entail(&a, &f("G(t)")).unwrap(),
            entail(&b, &f("G(t)")).unwrap()
        );
    }

    #[test]
    fn space_validation() {
        let (s, t) = domains();
        let a = analogy("a", "p", &s, &t);
        let err = AnalogySpace::new(
            s.clone(),
            t.clone(),
            vec![a.clone(), a.clone()],
            vec![],
            &PreferenceSpec::Dominance,
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::DuplicateAnalogy("a".into()));
        let err = AnalogySpace::new(
            t.clone(),
            s.clone(),
            vec![a.clone()],
            vec![],
            &PreferenceSpec::Dominance,
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::WrongDomains("a".into()));
        let err = AnalogySpace::new(
            s,
            t,
            vec![a],
            vec![],
            &PreferenceSpec::Explicit(vec![("a".into(), "z".into())]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            SpaceError::Preference(PreferenceError::UnknownItem(_))
        ));
    }
}
