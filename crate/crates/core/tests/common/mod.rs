//! Helpers shared by the integration tests: small signatures, exhaustive
//! formula generation and an independent two-valued evaluator.

#![allow(dead_code)]

use analogic::formula::{Formula, Term};
use analogic::kb::{make_domain, Interpretation, KnowledgeDomain, Signature};
use analogic::TruthValue;

const VARS: [&str; 3] = ["x", "y", "z"];

fn terms(sig: &Signature, vars: &[&str]) -> Vec<Term> {
    let mut base: Vec<Term> = sig.constants().iter().map(Term::constant).collect();
    base.extend(vars.iter().map(|v| Term::var(*v)));
    let mut out = base.clone();
    for (f, k) in sig.functions() {
        assert_eq!(*k, 1, "generator only nests unary functions");
        out.extend(base.iter().map(|t| Term::app(f.clone(), vec![t.clone()])));
    }
    out
}

fn tuples(items: &[Term], k: usize) -> Vec<Vec<Term>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in tuples(items, k - 1) {
        for t in items {
            let mut v = rest.clone();
            v.push(t.clone());
            out.push(v);
        }
    }
    out
}

fn generate(sig: &Signature, depth: usize, vars: &[&str]) -> Vec<Formula> {
    let ts = terms(sig, vars);
    let mut atoms = Vec::new();
    for (p, k) in sig.predicates() {
        for args in tuples(&ts, *k) {
            atoms.push(Formula::atom(p.clone(), args));
        }
    }
    if depth <= 1 {
        return atoms;
    }
    let smaller = generate(sig, depth - 1, vars);
    let mut out = smaller.clone();
    for f in &smaller {
        out.push(Formula::not(f.clone()));
    }
    for a in &smaller {
        for b in &smaller {
            out.push(Formula::and(a.clone(), b.clone()));
            out.push(Formula::or(a.clone(), b.clone()));
            out.push(Formula::implies(a.clone(), b.clone()));
        }
    }
    if vars.len() < VARS.len() {
        let v = VARS[vars.len()];
        let mut inner_vars = vars.to_vec();
        inner_vars.push(v);
        for body in generate(sig, depth - 1, &inner_vars) {
            out.push(Formula::forall(v, body.clone()));
            out.push(Formula::exists(v, body));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every sentence of depth at most `depth`, atoms having depth 1.
pub fn sentences(sig: &Signature, depth: usize) -> Vec<Formula> {
    generate(sig, depth, &[])
}

/// A small signature with its candidate interpretations; every one has
/// exactly four ground atoms.
pub struct Fixture {
    pub name: &'static str,
    pub signature: Signature,
    pub interpretations: Vec<Interpretation>,
}

pub fn fixtures() -> Vec<Fixture> {
    let unary =
        Signature::new(["a", "b"], [("P".to_string(), 1), ("Q".to_string(), 1)], []).unwrap();
    let binary = Signature::new(["a", "b"], [("R".to_string(), 2)], []).unwrap();
    let func = Signature::new(
        ["a"],
        [("P".to_string(), 1), ("Q".to_string(), 1)],
        [("f".to_string(), 1)],
    )
    .unwrap();
    let universe = vec!["e1".to_string(), "e2".to_string()];
    let mut func_interps = Vec::new();
    for c in &universe {
        for f1 in &universe {
            for f2 in &universe {
                func_interps.push(Interpretation {
                    universe: universe.clone(),
                    constants: vec![("a".into(), c.clone())],
                    functions: vec![
                        ("f".into(), vec!["e1".into()], f1.clone()),
                        ("f".into(), vec!["e2".into()], f2.clone()),
                    ],
                });
            }
        }
    }
    vec![
        Fixture {
            name: "P/1, Q/1 over {a, b}",
            interpretations: vec![Interpretation::herbrand(&unary)],
            signature: unary,
        },
        Fixture {
            name: "R/2 over {a, b}",
            interpretations: vec![Interpretation::herbrand(&binary)],
            signature: binary,
        },
        Fixture {
            name: "P/1, Q/1, f/1, a over {e1, e2}",
            interpretations: func_interps,
            signature: func,
        },
    ]
}

/// Every fact table over `values` for the domain shape given by `interp`.
pub fn all_fact_tables(
    sig: &Signature,
    interp: &Interpretation,
    values: &[TruthValue],
) -> Vec<KnowledgeDomain> {
    let base = make_domain("D", sig.clone(), interp.clone(), []).unwrap();
    let n = base.atom_count();
    let mut out = Vec::new();
    let total = values.len().pow(n as u32);
    for mut k in 0..total {
        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            table.push(values[k % values.len()]);
            k /= values.len();
        }
        out.push(base.with_fact_values(table).unwrap());
    }
    out
}

fn term_value(t: &Term, d: &KnowledgeDomain, env: &[(String, usize)]) -> usize {
    match t {
        Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).unwrap().1,
        Term::Const(c) => d.constant(c).unwrap(),
        Term::App(f, args) => {
            let args: Vec<usize> = args.iter().map(|a| term_value(a, d, env)).collect();
            d.apply(f, &args).unwrap()
        }
    }
}

fn classical_in(f: &Formula, d: &KnowledgeDomain, env: &mut Vec<(String, usize)>) -> bool {
    match f {
        Formula::Atom(p, args) => {
            let args: Vec<usize> = args.iter().map(|a| term_value(a, d, env)).collect();
            match d.fact_at(p, &args).unwrap() {
                TruthValue::True => true,
                TruthValue::False => false,
                TruthValue::Unknown => panic!("two-valued evaluator met an unknown fact"),
            }
        }
        Formula::Not(a) => !classical_in(a, d, env),
        Formula::And(a, b) => {
            let x = classical_in(a, d, env);
            let y = classical_in(b, d, env);
            x && y
        }
        Formula::Or(a, b) => {
            let x = classical_in(a, d, env);
            let y = classical_in(b, d, env);
            x || y
        }
        Formula::Implies(a, b) => {
            let x = classical_in(a, d, env);
            let y = classical_in(b, d, env);
            !x || y
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let mut results = Vec::new();
            for e in 0..d.universe().len() {
                env.push((v.clone(), e));
                results.push(classical_in(body, d, env));
                env.pop();
            }
            if matches!(f, Formula::Forall(..)) {
                results.iter().all(|r| *r)
            } else {
                results.iter().any(|r| *r)
            }
        }
    }
}

/// Textbook two-valued semantics; panics on an unknown fact.
pub fn classical(f: &Formula, d: &KnowledgeDomain) -> bool {
    classical_in(f, d, &mut Vec::new())
}
