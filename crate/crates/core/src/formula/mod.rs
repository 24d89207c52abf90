//! First-order formulas, well-formedness against a signature, and strong
//! Kleene evaluation over a [`KnowledgeDomain`].

mod parse;
mod print;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::kb::{KnowledgeDomain, Signature, SymbolKind};
use crate::truth::TruthValue;

pub(crate) use parse::formula as parse_formula_tokens;
pub use parse::parse_formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(f: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    fn collect_constants<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(_) => {}
            Term::Const(c) => {
                out.insert(c);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_constants(out)),
        }
    }

    fn try_map<E>(
        &self,
        f: &mut impl FnMut(&str, SymbolRole) -> Result<String, E>,
    ) -> Result<Term, E> {
        Ok(match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::Const(c) => Term::Const(f(c, SymbolRole::Constant)?),
            Term::App(g, args) => Term::App(
                f(g, SymbolRole::Function(args.len()))?,
                args.iter()
                    .map(|t| t.try_map(f))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }
}

/// How a symbol occurs in a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolRole {
    Constant,
    Predicate(usize),
    Function(usize),
}

impl SymbolRole {
    pub fn kind(self) -> SymbolKind {
        match self {
            SymbolRole::Constant => SymbolKind::Constant,
            SymbolRole::Predicate(k) => SymbolKind::Predicate(k),
            SymbolRole::Function(k) => SymbolKind::Function(k),
        }
    }
}

impl Formula {
    pub fn atom(p: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(p.into(), args)
    }

    /// Atom whose arguments are all constants.
    pub fn ground<I>(p: impl Into<String>, args: I) -> Formula
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        Formula::Atom(
            p.into(),
            args.into_iter().map(|a| Term::Const(a.into())).collect(),
        )
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Height of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Constant symbols occurring anywhere in the formula.
    pub fn constants(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.collect_constants(out)),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => {
                f.collect_constants(out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_constants(out);
                b.collect_constants(out);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn term(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(v) if !bound.contains(v) => {
                    out.insert(v.clone());
                }
                Term::Var(_) | Term::Const(_) => {}
                Term::App(_, args) => args.iter().for_each(|a| term(a, bound, out)),
            }
        }
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom(_, args) => args.iter().for_each(|a| term(a, bound, out)),
                Formula::Not(g) => go(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    bound.push(v.clone());
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Rebuilds the formula with every non-logical symbol passed through `f`.
    /// Variables and connectives are left untouched.
    pub fn try_map_symbols<E>(
        &self,
        f: &mut impl FnMut(&str, SymbolRole) -> Result<String, E>,
    ) -> Result<Formula, E> {
        Ok(match self {
            Formula::Atom(p, args) => Formula::Atom(
                f(p, SymbolRole::Predicate(args.len()))?,
                args.iter()
                    .map(|t| t.try_map(f))
                    .collect::<Result<_, _>>()?,
            ),
            Formula::Not(g) => Formula::not(g.try_map_symbols(f)?),
            Formula::And(a, b) => Formula::and(a.try_map_symbols(f)?, b.try_map_symbols(f)?),
            Formula::Or(a, b) => Formula::or(a.try_map_symbols(f)?, b.try_map_symbols(f)?),
            Formula::Implies(a, b) => {
                Formula::implies(a.try_map_symbols(f)?, b.try_map_symbols(f)?)
            }
            Formula::Forall(v, g) => Formula::forall(v.clone(), g.try_map_symbols(f)?),
            Formula::Exists(v, g) => Formula::exists(v.clone(), g.try_map_symbols(f)?),
        })
    }

    /// Visits every non-logical symbol occurrence, left to right.
    pub fn for_each_symbol(&self, f: &mut impl FnMut(&str, SymbolRole)) {
        let _ = self.try_map_symbols(&mut |s, role| {
            f(s, role);
            Ok::<_, ()>(s.to_string())
        });
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("unknown {expected} `{name}`")]
    UnknownSymbol {
        name: String,
        expected: &'static str,
    },
    #[error("`{name}` is declared as a {declared}, used as a {used}")]
    WrongKind {
        name: String,
        declared: &'static str,
        used: &'static str,
    },
    #[error("arity mismatch: `{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("free variable `{0}`")]
    FreeVariable(String),
}

/// Checks that every symbol is declared with matching kind and arity and that
/// the formula is closed. Reports the first offence in left-to-right order.
pub fn check_formula(f: &Formula, sig: &Signature) -> Result<(), FormulaError> {
    fn symbol(sig: &Signature, name: &str, role: SymbolRole) -> Result<(), FormulaError> {
        let used = role.kind().describe();
        match (sig.lookup(name), role) {
            (None, _) => Err(FormulaError::UnknownSymbol {
                name: name.to_string(),
                expected: used,
            }),
            (Some(SymbolKind::Constant), SymbolRole::Constant) => Ok(()),
            (Some(SymbolKind::Predicate(k)), SymbolRole::Predicate(n))
            | (Some(SymbolKind::Function(k)), SymbolRole::Function(n)) => {
                if k == n {
                    Ok(())
                } else {
                    Err(FormulaError::ArityMismatch {
                        symbol: name.to_string(),
                        expected: k,
                        found: n,
                    })
                }
            }
            (Some(kind), _) => Err(FormulaError::WrongKind {
                name: name.to_string(),
                declared: kind.describe(),
                used,
            }),
        }
    }
    fn term(t: &Term, sig: &Signature, bound: &mut Vec<String>) -> Result<(), FormulaError> {
        match t {
            Term::Var(v) if bound.contains(v) => Ok(()),
            Term::Var(v) => Err(FormulaError::FreeVariable(v.clone())),
            Term::Const(c) => symbol(sig, c, SymbolRole::Constant),
            Term::App(g, args) => {
                symbol(sig, g, SymbolRole::Function(args.len()))?;
                args.iter().try_for_each(|a| term(a, sig, bound))
            }
        }
    }
    fn go(f: &Formula, sig: &Signature, bound: &mut Vec<String>) -> Result<(), FormulaError> {
        match f {
            Formula::Atom(p, args) => {
                symbol(sig, p, SymbolRole::Predicate(args.len()))?;
                args.iter().try_for_each(|a| term(a, sig, bound))
            }
            Formula::Not(g) => go(g, sig, bound),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                go(a, sig, bound)?;
                go(b, sig, bound)
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                bound.push(v.clone());
                let r = go(g, sig, bound);
                bound.pop();
                r
            }
        }
    }
    go(f, sig, &mut Vec::new())
}

/// The value of a sentence in a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub value: TruthValue,
}

impl Valuation {
    pub fn known(self) -> bool {
        self.value.is_known()
    }
}

/// Strong Kleene evaluation of a sentence.
///
/// Atoms read the fact table after reducing their terms through the function
/// interpretation; quantifiers fold conjunction (resp. disjunction) over the
/// universe.
pub fn evaluate(f: &Formula, d: &KnowledgeDomain) -> Result<Valuation, FormulaError> {
    check_formula(f, d.signature())?;
    Ok(Valuation {
        value: eval(f, d, &mut Vec::new()),
    })
}

fn eval_term(t: &Term, d: &KnowledgeDomain, env: &[(&str, usize)]) -> usize {
    match t {
        Term::Var(v) => {
            env.iter()
                .rev()
                .find(|(n, _)| n == v)
                .expect("checked: variable is bound")
                .1
        }
        Term::Const(c) => d.constant(c).expect("checked: constant is declared"),
        Term::App(g, args) => {
            let args: Vec<usize> = args.iter().map(|a| eval_term(a, d, env)).collect();
            d.apply(g, &args).expect("checked: function is declared")
        }
    }
}

fn eval<'f>(f: &'f Formula, d: &KnowledgeDomain, env: &mut Vec<(&'f str, usize)>) -> TruthValue {
    match f {
        Formula::Atom(p, args) => {
            let args: Vec<usize> = args.iter().map(|a| eval_term(a, d, env)).collect();
            d.fact_at(p, &args).expect("checked: predicate is declared")
        }
        Formula::Not(g) => !eval(g, d, env),
        Formula::And(a, b) => {
            let l = eval(a, d, env);
            if l == TruthValue::False {
                return l;
            }
            l & eval(b, d, env)
        }
        Formula::Or(a, b) => {
            let l = eval(a, d, env);
            if l == TruthValue::True {
                return l;
            }
            l | eval(b, d, env)
        }
        Formula::Implies(a, b) => eval(a, d, env).implies(eval(b, d, env)),
        Formula::Forall(v, g) => quantify(v, g, d, env, TruthValue::True),
        Formula::Exists(v, g) => quantify(v, g, d, env, TruthValue::False),
    }
}

/// Folds `&` (unit `True`) or `|` (unit `False`) over the universe, stopping
/// at the absorbing value.
fn quantify<'f>(
    var: &'f str,
    body: &'f Formula,
    d: &KnowledgeDomain,
    env: &mut Vec<(&'f str, usize)>,
    unit: TruthValue,
) -> TruthValue {
    let absorbing = !unit;
    let mut acc = unit;
    for e in 0..d.universe().len() {
        env.push((var, e));
        let v = eval(body, d, env);
        env.pop();
        acc = if unit == TruthValue::True {
            acc & v
        } else {
            acc | v
        };
        if acc == absorbing {
            break;
        }
    }
    acc
}
