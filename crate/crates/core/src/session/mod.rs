//! Session files: domains, analogies, a working set, a preference and
//! queries in one text file.
//!
//! ```text
//! domain S { objects: a, b; pred P/1; func f/1; fact P(a) = true; interp f(a) = b; interp f(b) = a; }
//! domain T { objects: c; pred Q/1; }
//! analogy alpha from S to T { map a -> c; map P -> Q; }
//! workingset { P(a); }
//! preference dominance;
//! query Q(c);
//! ```
//!
//! Objects double as constants and universe elements, each naming itself.
//! The first declared domain is the source and the last is the target; a
//! session with a single domain uses it for both.

mod parse;
mod print;
mod run;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::analogy::{combination_closure, AnalogyMap, Guard, Piece};
use crate::entailment::{AnalogySpace, PreferenceSpec, SpaceError};
use crate::formula::{check_formula, Formula};
use crate::kb::{make_domain, GroundAtom, Interpretation, KnowledgeDomain, Signature};
use crate::preference::Weights;
use crate::syntax::{Pos, Spanned, SyntaxError};
use crate::truth::TruthValue;

pub use parse::parse_ast;
pub use print::print_ast;
pub use run::{render_sweep, run, run_repcheck, Command, Output};

type Name = Spanned<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionAst {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Domain(DomainDecl),
    Analogy(AnalogyDecl),
    WorkingSet(Vec<WorkingEntry>),
    Preference(Spanned<PreferenceDecl>),
    Closure(Spanned<bool>),
    Query(Spanned<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainDecl {
    pub name: Name,
    pub entries: Vec<DomainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainEntry {
    Objects(Vec<Name>),
    Pred(Name, usize),
    Func(Name, usize),
    Fact {
        predicate: Name,
        args: Vec<Name>,
        value: TruthValue,
    },
    Interp {
        function: Name,
        args: Vec<Name>,
        value: Name,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalogyDecl {
    pub name: Name,
    pub from: Name,
    pub to: Name,
    pub body: AnalogyBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalogyBody {
    Single(Vec<MapEntry>),
    Pieces(Vec<PieceDecl>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDecl {
    pub mentions: Vec<Name>,
    pub maps: Vec<MapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub from: Name,
    pub to: Name,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorkingEntry {
    Formula(Spanned<Formula>),
    /// Every ground atom of the source.
    AllAtoms(Spanned<()>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreferenceDecl {
    Dominance,
    /// Weights as written, positive then negative.
    Counts(Name, Name),
    /// `(better, worse)` pairs.
    Explicit(Vec<(Name, Name)>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("error at {pos}: {message}")]
    Semantic { pos: Pos, message: String },
}

impl SessionError {
    fn at(pos: Pos, message: impl fmt::Display) -> SessionError {
        SessionError::Semantic {
            pos,
            message: message.to_string(),
        }
    }
}

/// A validated session.
#[derive(Debug, Clone)]
pub struct Session {
    pub ast: SessionAst,
    pub source: Arc<KnowledgeDomain>,
    pub target: Arc<KnowledgeDomain>,
    pub space: AnalogySpace,
    pub preference: PreferenceSpec,
    pub closure: bool,
    pub queries: Vec<Formula>,
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    validate(parse_ast(text)?)
}

/// Parses a decimal weight such as `2` or `0.75` into an exact rational.
pub fn parse_weight(text: &str) -> Option<Ratio<i64>> {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty()
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let numer: i64 = format!("{int}{frac}").parse().ok()?;
    Some(Ratio::new(numer, denom))
}

fn build_domain(decl: &DomainDecl) -> Result<KnowledgeDomain, SessionError> {
    let name = &decl.name;
    let wrap = |pos: Pos, e: crate::kb::DomainError| {
        SessionError::at(pos, format!("domain `{}`: {e}", name.node))
    };
    let mut objects = Vec::new();
    let mut preds = Vec::new();
    let mut funcs = Vec::new();
    for e in &decl.entries {
        match e {
            DomainEntry::Objects(os) => objects.extend(os.iter().map(|o| o.node.clone())),
            DomainEntry::Pred(p, k) => preds.push((p.node.clone(), *k)),
            DomainEntry::Func(f, k) => funcs.push((f.node.clone(), *k)),
            _ => {}
        }
    }
    let sig = Signature::new(objects, preds, funcs).map_err(|e| wrap(name.pos, e))?;
    let mut interp = Interpretation::herbrand(&sig);
    for e in &decl.entries {
        if let DomainEntry::Interp {
            function,
            args,
            value,
        } = e
        {
            interp.functions.push((
                function.node.clone(),
                args.iter().map(|a| a.node.clone()).collect(),
                value.node.clone(),
            ));
        }
    }
    let base = make_domain(name.node.clone(), sig, interp, []).map_err(|e| wrap(name.pos, e))?;
    let mut facts: Vec<(GroundAtom, TruthValue)> = Vec::new();
    for e in &decl.entries {
        if let DomainEntry::Fact {
            predicate,
            args,
            value,
        } = e
        {
            let atom = GroundAtom::new(predicate.node.clone(), args.iter().map(|a| a.node.clone()));
            base.atom_index(&atom).map_err(|e| wrap(predicate.pos, e))?;
            if facts.iter().any(|(a, v)| *a == atom && v != value) {
                return Err(wrap(
                    predicate.pos,
                    crate::kb::DomainError::ConflictingFact(atom),
                ));
            }
            facts.push((atom, *value));
        }
    }
    let values = {
        let mut v = base.fact_values().to_vec();
        for (atom, value) in &facts {
            v[base.atom_index(atom).expect("checked above")] = *value;
        }
        v
    };
    Ok(base.with_fact_values(values).expect("same atom count"))
}

fn build_analogy(
    decl: &AnalogyDecl,
    source: &Arc<KnowledgeDomain>,
    target: &Arc<KnowledgeDomain>,
) -> Result<AnalogyMap, SessionError> {
    if decl.from.node != source.name() || decl.to.node != target.name() {
        return Err(SessionError::at(
            decl.from.pos,
            format!(
                "analogy `{}` must map from `{}` to `{}`",
                decl.name.node,
                source.name(),
                target.name()
            ),
        ));
    }
    let pairs = |maps: &[MapEntry]| -> Vec<(String, String)> {
        maps.iter()
            .map(|m| (m.from.node.clone(), m.to.node.clone()))
            .collect()
    };
    let wrap = |e| SessionError::at(decl.name.pos, format!("analogy `{}`: {e}", decl.name.node));
    let pieces = match &decl.body {
        AnalogyBody::Single(maps) => vec![Piece::new(Guard::Always, pairs(maps)).map_err(wrap)?],
        AnalogyBody::Pieces(ps) => ps
            .iter()
            .map(|p| {
                let guard = Guard::mentions(p.mentions.iter().map(|m| m.node.clone()));
                Piece::new(guard, pairs(&p.maps)).map_err(wrap)
            })
            .collect::<Result<_, _>>()?,
    };
    AnalogyMap::new(
        decl.name.node.clone(),
        source.clone(),
        target.clone(),
        pieces,
    )
    .map_err(wrap)
}

/// Resolves every cross-reference of a parsed session.
pub fn validate(ast: SessionAst) -> Result<Session, SessionError> {
    let domains: Vec<&DomainDecl> = ast
        .items
        .iter()
        .filter_map(|i| match i {
            Item::Domain(d) => Some(d),
            _ => None,
        })
        .collect();
    match domains.len() {
        0 => {
            return Err(SessionError::at(
                Pos { line: 1, col: 1 },
                "no domain declared",
            ))
        }
        1 | 2 => {}
        _ => {
            return Err(SessionError::at(
                domains[2].name.pos,
                "at most two domains (source and target) may be declared",
            ))
        }
    }
    if domains.len() == 2 && domains[0].name.node == domains[1].name.node {
        return Err(SessionError::at(
            domains[1].name.pos,
            format!("domain `{}` is declared twice", domains[1].name.node),
        ));
    }
    let source = Arc::new(build_domain(domains[0])?);
    let target = if domains.len() == 2 {
        Arc::new(build_domain(domains[1])?)
    } else {
        source.clone()
    };

    let mut analogies = Vec::new();
    let mut names = BTreeSet::new();
    let mut working = Vec::new();
    let mut preference: Option<Spanned<PreferenceSpec>> = None;
    let mut closure: Option<bool> = None;
    let mut queries = Vec::new();
    for item in &ast.items {
        match item {
            Item::Domain(_) => {}
            Item::Analogy(decl) => {
                if !names.insert(decl.name.node.clone()) {
                    return Err(SessionError::at(
                        decl.name.pos,
                        format!("analogy `{}` is declared twice", decl.name.node),
                    ));
                }
                analogies.push(build_analogy(decl, &source, &target)?);
            }
            Item::WorkingSet(entries) => {
                for e in entries {
                    match e {
                        WorkingEntry::Formula(f) => {
                            check_formula(f, source.signature()).map_err(|e| {
                                SessionError::at(
                                    f.pos,
                                    format!("working-set formula `{}`: {e}", f.node),
                                )
                            })?;
                            working.push(f.node.clone());
                        }
                        WorkingEntry::AllAtoms(_) => working.extend(
                            source
                                .ground_atoms()
                                .into_iter()
                                .map(|g| Formula::ground(g.predicate, g.args)),
                        ),
                    }
                }
            }
            Item::Preference(p) => {
                if preference.is_some() {
                    return Err(SessionError::at(p.pos, "preference declared twice"));
                }
                let spec = match &p.node {
                    PreferenceDecl::Dominance => PreferenceSpec::Dominance,
                    PreferenceDecl::Counts(wp, wn) => {
                        let weight = |w: &Name| {
                            parse_weight(w)
                                .filter(|r| *r > Ratio::from_integer(0))
                                .ok_or_else(|| {
                                    SessionError::at(
                                        w.pos,
                                        format!("weight `{}` must be a positive number", w.node),
                                    )
                                })
                        };
                        PreferenceSpec::Counts(Weights {
                            positive: weight(wp)?,
                            negative: weight(wn)?,
                        })
                    }
                    PreferenceDecl::Explicit(edges) => {
                        for (a, b) in edges {
                            for n in [a, b] {
                                if !names.contains(&n.node) {
                                    return Err(SessionError::at(
                                        n.pos,
                                        format!("unknown analogy `{}`", n.node),
                                    ));
                                }
                            }
                            if a.node == b.node {
                                return Err(SessionError::at(
                                    a.pos,
                                    format!("`{}` cannot be preferred over itself", a.node),
                                ));
                            }
                        }
                        PreferenceSpec::Explicit(
                            edges
                                .iter()
                                .map(|(a, b)| (a.node.clone(), b.node.clone()))
                                .collect(),
                        )
                    }
                };
                preference = Some(Spanned::new(spec, p.pos));
            }
            Item::Closure(c) => {
                if closure.is_some() {
                    return Err(SessionError::at(c.pos, "closure declared twice"));
                }
                closure = Some(c.node);
            }
            Item::Query(q) => {
                check_formula(q, target.signature())
                    .map_err(|e| SessionError::at(q.pos, format!("query `{}`: {e}", q.node)))?;
                queries.push(q.node.clone());
            }
        }
    }

    // Preference edges may name analogies declared after the preference.
    let pref_pos = preference
        .as_ref()
        .map_or(Pos { line: 1, col: 1 }, |p| p.pos);
    let preference = preference.map_or(PreferenceSpec::Dominance, |p| p.node);
    let closure = closure.unwrap_or(false);
    if closure {
        let extra = combination_closure(&analogies, &working)
            .map_err(|e| SessionError::at(pref_pos, format!("closure: {e}")))?;
        analogies.extend(extra);
    }
    let space = AnalogySpace::new(
        source.clone(),
        target.clone(),
        analogies,
        working,
        &preference,
    )
    .map_err(|e| space_error(&ast, e))?;
    Ok(Session {
        ast,
        source,
        target,
        space,
        preference,
        closure,
        queries,
    })
}

fn space_error(ast: &SessionAst, e: SpaceError) -> SessionError {
    let pos = match &e {
        SpaceError::Analogy { name, .. }
        | SpaceError::DuplicateAnalogy(name)
        | SpaceError::WrongDomains(name) => ast.items.iter().find_map(|i| match i {
            Item::Analogy(d) if d.name.node == *name => Some(d.name.pos),
            _ => None,
        }),
        _ => None,
    };
    SessionError::at(pos.unwrap_or(Pos { line: 1, col: 1 }), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMOKE: &str = "
        domain S { objects: a; pred P/1; fact P(a) = true; }
        domain T { objects: b; pred Q/1; fact Q(b) = true; }
        analogy alpha from S to T { map a -> b; map P -> Q; }
        workingset { P(a); }
    ";

    #[test]
    fn smoke_session() {
        let s = parse_session(SMOKE).unwrap();
        assert_eq!(s.source.name(), "S");
        assert_eq!(s.target.name(), "T");
        assert_eq!(s.space.analogies().len(), 1);
        assert_eq!(s.space.reports()[0].positive().len(), 1);
        assert_eq!(s.preference, PreferenceSpec::Dominance);
    }

    #[test]
    fn arity_mismatch_is_semantic() {
        let text = "
            domain S { objects: a; pred P/1; }
            domain T { objects: b; pred Q/2; }
            analogy alpha from S to T { map P -> Q; }
        ";
        let err = parse_session(text).unwrap_err();
        assert!(matches!(err, SessionError::Semantic { .. }));
        assert!(err.to_string().contains("arity mismatch"), "{err}");
        assert!(err.to_string().contains("line 4"), "{err}");
    }

    #[test]
    fn semantic_errors_name_entities() {
        let cases = [
            ("domain S { objects: a; pred P/1; fact P(a) = true; fact P(a) = false; }", "conflicting fact"),
            ("domain S { objects: a; pred P/1; fact R(a) = true; }", "`R`"),
            ("domain S { objects: a; } query P(a);", "query `P(a)`"),
            ("domain S { objects: a; pred P/1; } workingset { P(x); }", "`x`"),
            (
                "domain S { objects: a; pred P/1; } analogy x from S to S { map a -> a; } preference explicit { prefer x over y; }",
                "unknown analogy `y`",
            ),
            ("domain S { objects: a; } domain T { objects: b; } domain U { objects: c; }", "at most two"),
            ("domain S { objects: a; } preference counts(0, 1);", "positive"),
            (
                "domain S { objects: a; } domain T { objects: b; } analogy x from T to S { map b -> a; }",
                "must map from `S` to `T`",
            ),
            ("workingset { }", "no domain"),
            (
                "domain S { objects: a; func f/1; }",
                "f",
            ),
        ];
        for (text, needle) in cases {
            let err = parse_session(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn weights_are_exact() {
        assert_eq!(parse_weight("2"), Some(Ratio::from_integer(2)));
        assert_eq!(parse_weight("0.25"), Some(Ratio::new(1, 4)));
        assert_eq!(parse_weight(".5"), None);
        assert_eq!(parse_weight("1e3"), None);
    }

    #[test]
    fn all_atoms_expands() {
        let s =
            parse_session("domain S { objects: a, b; pred P/1; } workingset { atoms; }").unwrap();
        assert_eq!(s.space.working_set().len(), 2);
    }
}
