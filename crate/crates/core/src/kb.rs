//! Finite single-sorted first-order structures with partially known ground facts.
//!
//! A [`KnowledgeDomain`] fixes a signature, a finite universe, total
//! interpretations of constants and function symbols, and a fact table that
//! assigns a [`TruthValue`] to every ground predicate atom. Atoms that were
//! never stated are `Unknown`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::syntax::is_identifier;
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("symbol `{0}` is declared more than once")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("the universe must not be empty")]
    EmptyUniverse,
    #[error("element `{0}` is listed more than once")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown {kind} `{name}`")]
    UnknownSymbol { name: String, kind: &'static str },
    #[error("constant `{0}` has no interpretation")]
    MissingConstant(String),
    #[error("`{0}` is interpreted more than once with different values")]
    ConflictingInterpretation(String),
    #[error("function `{function}` has no value for ({args})")]
    MissingFunctionValue { function: String, args: String },
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("conflicting fact for {0}")]
    ConflictingFact(GroundAtom),
}

/// What a declared symbol stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "arity", rename_all = "lowercase")]
pub enum SymbolKind {
    Constant,
    Predicate(usize),
    Function(usize),
}

impl SymbolKind {
    pub fn describe(self) -> &'static str {
        match self {
            SymbolKind::Constant => "constant",
            SymbolKind::Predicate(_) => "predicate",
            SymbolKind::Function(_) => "function",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Constant => f.write_str("constant"),
            SymbolKind::Predicate(k) => write!(f, "predicate/{k}"),
            SymbolKind::Function(k) => write!(f, "function/{k}"),
        }
    }
}

/// A first-order signature: constants, predicate symbols and function symbols.
///
/// Identifiers are unique across all three kinds. Only first-order symbols
/// exist; there is no way to declare a symbol ranging over sets of elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    constants: Vec<String>,
    predicates: Vec<(String, usize)>,
    functions: Vec<(String, usize)>,
    kinds: BTreeMap<String, SymbolKind>,
}

impl Signature {
    pub fn new<C, P, F>(constants: C, predicates: P, functions: F) -> Result<Self, DomainError>
    where
        C: IntoIterator,
        C::Item: Into<String>,
        P: IntoIterator<Item = (String, usize)>,
        F: IntoIterator<Item = (String, usize)>,
    {
        let mut sig = Signature::default();
        for c in constants {
            sig.declare(c.into(), SymbolKind::Constant)?;
        }
        for (p, k) in predicates {
            sig.declare(p, SymbolKind::Predicate(k))?;
        }
        for (f, k) in functions {
            sig.declare(f, SymbolKind::Function(k))?;
        }
        Ok(sig)
    }

    fn declare(&mut self, name: String, kind: SymbolKind) -> Result<(), DomainError> {
        if !is_identifier(&name) {
            return Err(DomainError::InvalidIdentifier(name));
        }
        if self.kinds.contains_key(&name) {
            return Err(DomainError::DuplicateSymbol(name));
        }
        match kind {
            SymbolKind::Constant => self.constants.push(name.clone()),
            SymbolKind::Predicate(0) | SymbolKind::Function(0) => {
                return Err(DomainError::ZeroArity(name))
            }
            SymbolKind::Predicate(k) => self.predicates.push((name.clone(), k)),
            SymbolKind::Function(k) => self.functions.push((name.clone(), k)),
        }
        self.kinds.insert(name, kind);
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolKind> {
        self.kinds.get(name).copied()
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn predicates(&self) -> &[(String, usize)] {
        &self.predicates
    }

    pub fn functions(&self) -> &[(String, usize)] {
        &self.functions
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, SymbolKind)> {
        self.kinds.iter().map(|(n, k)| (n.as_str(), *k))
    }
}

/// A predicate applied to universe elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub predicate: String,
    pub args: Vec<String>,
}

impl GroundAtom {
    pub fn new<I>(predicate: impl Into<String>, args: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        GroundAtom {
            predicate: predicate.into(),
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.predicate, self.args.join(", "))
    }
}

impl Serialize for GroundAtom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Interpretation of the non-logical symbols over a universe.
#[derive(Debug, Clone, Default)]
pub struct Interpretation {
    pub universe: Vec<String>,
    pub constants: Vec<(String, String)>,
    pub functions: Vec<(String, Vec<String>, String)>,
}

impl Interpretation {
    /// Universe made of the signature's constants, each denoting itself.
    pub fn herbrand(sig: &Signature) -> Self {
        Interpretation {
            universe: sig.constants().to_vec(),
            constants: sig
                .constants()
                .iter()
                .map(|c| (c.clone(), c.clone()))
                .collect(),
            functions: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct FunctionTable {
    arity: usize,
    values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PredicateSlot {
    arity: usize,
    offset: usize,
}

/// A finite structure with a three-valued fact table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeDomain {
    name: String,
    signature: Signature,
    universe: Vec<String>,
    elements: BTreeMap<String, usize>,
    constants: BTreeMap<String, usize>,
    functions: BTreeMap<String, FunctionTable>,
    predicates: BTreeMap<String, PredicateSlot>,
    facts: Vec<TruthValue>,
}

/// Mixed-radix index of an argument tuple.
fn tuple_index(args: &[usize], base: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * base + a)
}

fn tuple_at(mut index: usize, arity: usize, base: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// Builds a domain; every ground atom not mentioned in `facts` is `Unknown`.
///
/// Repeating a fact with the same value is accepted, repeating it with a
/// different value is a [`DomainError::ConflictingFact`].
pub fn make_domain<I>(
    name: impl Into<String>,
    signature: Signature,
    interp: Interpretation,
    facts: I,
) -> Result<KnowledgeDomain, DomainError>
where
    I: IntoIterator<Item = (GroundAtom, TruthValue)>,
{
    if interp.universe.is_empty() {
        return Err(DomainError::EmptyUniverse);
    }
    let mut universe = interp.universe.clone();
    universe.sort();
    for pair in universe.windows(2) {
        if pair[0] == pair[1] {
            return Err(DomainError::DuplicateElement(pair[0].clone()));
        }
    }
    let elements: BTreeMap<String, usize> = universe
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let elem = |e: &str| {
        elements
            .get(e)
            .copied()
            .ok_or_else(|| DomainError::UnknownElement(e.to_string()))
    };
    let n = universe.len();

    let mut constants = BTreeMap::new();
    for (c, e) in &interp.constants {
        if signature.lookup(c) != Some(SymbolKind::Constant) {
            return Err(DomainError::UnknownSymbol {
                name: c.clone(),
                kind: "constant",
            });
        }
        let e = elem(e)?;
        if let Some(prev) = constants.insert(c.clone(), e) {
            if prev != e {
                return Err(DomainError::ConflictingInterpretation(c.clone()));
            }
        }
    }
    if let Some(c) = signature
        .constants()
        .iter()
        .find(|c| !constants.contains_key(*c))
    {
        return Err(DomainError::MissingConstant(c.clone()));
    }

    let mut partial: BTreeMap<String, (usize, Vec<Option<usize>>)> = signature
        .functions()
        .iter()
        .map(|(f, k)| (f.clone(), (*k, vec![None; n.pow(*k as u32)])))
        .collect();
    for (f, args, value) in &interp.functions {
        let (arity, table) = partial
            .get_mut(f)
            .ok_or_else(|| DomainError::UnknownSymbol {
                name: f.clone(),
                kind: "function",
            })?;
        if args.len() != *arity {
            return Err(DomainError::ArityMismatch {
                symbol: f.clone(),
                expected: *arity,
                found: args.len(),
            });
        }
        let idx: Vec<usize> = args.iter().map(|a| elem(a)).collect::<Result<_, _>>()?;
        let v = elem(value)?;
        let slot = &mut table[tuple_index(&idx, n)];
        match slot {
            Some(prev) if *prev != v => {
                return Err(DomainError::ConflictingInterpretation(format!(
                    "{f}({})",
                    args.join(", ")
                )))
            }
            _ => *slot = Some(v),
        }
    }
    let mut functions = BTreeMap::new();
    for (f, (arity, table)) in partial {
        let mut values = Vec::with_capacity(table.len());
        for (i, v) in table.into_iter().enumerate() {
            match v {
                Some(v) => values.push(v),
                None => {
                    let args: Vec<&str> = tuple_at(i, arity, n)
                        .into_iter()
                        .map(|e| universe[e].as_str())
                        .collect();
                    return Err(DomainError::MissingFunctionValue {
                        function: f,
                        args: args.join(", "),
                    });
                }
            }
        }
        functions.insert(f, FunctionTable { arity, values });
    }

    // Sorting by name fixes the enumeration order of ground atoms.
    let mut preds: Vec<&(String, usize)> = signature.predicates().iter().collect();
    preds.sort();
    let mut predicates = BTreeMap::new();
    let mut offset = 0;
    for (p, k) in preds {
        predicates.insert(p.clone(), PredicateSlot { arity: *k, offset });
        offset += n.pow(*k as u32);
    }

    let mut domain = KnowledgeDomain {
        name: name.into(),
        signature,
        universe,
        elements,
        constants,
        functions,
        predicates,
        facts: vec![TruthValue::Unknown; offset],
    };
    let mut stated: BTreeMap<usize, TruthValue> = BTreeMap::new();
    for (atom, value) in facts {
        let idx = domain.atom_index(&atom)?;
        match stated.insert(idx, value) {
            Some(prev) if prev != value => return Err(DomainError::ConflictingFact(atom)),
            _ => domain.facts[idx] = value,
        }
    }
    Ok(domain)
}

impl KnowledgeDomain {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Universe elements in sorted order; indices into this slice are element ids.
    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.get(name).copied()
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn apply(&self, function: &str, args: &[usize]) -> Option<usize> {
        let table = self.functions.get(function)?;
        if args.len() != table.arity || args.iter().any(|&a| a >= self.universe.len()) {
            return None;
        }
        Some(table.values[tuple_index(args, self.universe.len())])
    }

    /// Fact lookup on element ids; `None` for an undeclared predicate or bad arity.
    pub fn fact_at(&self, predicate: &str, args: &[usize]) -> Option<TruthValue> {
        let slot = self.predicates.get(predicate)?;
        if args.len() != slot.arity || args.iter().any(|&a| a >= self.universe.len()) {
            return None;
        }
        Some(self.facts[slot.offset + tuple_index(args, self.universe.len())])
    }

    pub fn fact(&self, atom: &GroundAtom) -> Option<TruthValue> {
        self.atom_index(atom).ok().map(|i| self.facts[i])
    }

    pub(crate) fn atom_index(&self, atom: &GroundAtom) -> Result<usize, DomainError> {
        let slot =
            self.predicates
                .get(&atom.predicate)
                .ok_or_else(|| DomainError::UnknownSymbol {
                    name: atom.predicate.clone(),
                    kind: "predicate",
                })?;
        if atom.args.len() != slot.arity {
            return Err(DomainError::ArityMismatch {
                symbol: atom.predicate.clone(),
                expected: slot.arity,
                found: atom.args.len(),
            });
        }
        let idx = atom
            .args
            .iter()
            .map(|a| {
                self.element(a)
                    .ok_or_else(|| DomainError::UnknownElement(a.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(slot.offset + tuple_index(&idx, self.universe.len()))
    }

    /// Every ground atom, ordered by predicate name and then argument tuple.
    pub fn ground_atoms(&self) -> Vec<GroundAtom> {
        let n = self.universe.len();
        let mut out = Vec::with_capacity(self.facts.len());
        for (p, slot) in &self.predicates {
            for i in 0..n.pow(slot.arity as u32) {
                out.push(GroundAtom {
                    predicate: p.clone(),
                    args: tuple_at(i, slot.arity, n)
                        .into_iter()
                        .map(|e| self.universe[e].clone())
                        .collect(),
                });
            }
        }
        out
    }

    pub fn atom_count(&self) -> usize {
        self.facts.len()
    }

    /// Fact values aligned with [`KnowledgeDomain::ground_atoms`].
    pub fn fact_values(&self) -> &[TruthValue] {
        &self.facts
    }

    /// Same structure with the fact table replaced; `values` is aligned with
    /// [`KnowledgeDomain::ground_atoms`].
    pub fn with_fact_values(&self, values: Vec<TruthValue>) -> Option<KnowledgeDomain> {
        (values.len() == self.facts.len()).then(|| KnowledgeDomain {
            facts: values,
            ..self.clone()
        })
    }

    /// `true` if `other` has the same structure and agrees with every known fact of `self`.
    pub fn is_refined_by(&self, other: &KnowledgeDomain) -> bool {
        self.universe == other.universe
            && self.constants == other.constants
            && self.functions == other.functions
            && self.predicates == other.predicates
            && self
                .facts
                .iter()
                .zip(&other.facts)
                .all(|(a, b)| a.refined_by(*b))
    }

    pub fn known_facts(&self) -> impl Iterator<Item = (GroundAtom, TruthValue)> + '_ {
        self.ground_atoms()
            .into_iter()
            .zip(self.facts.iter().copied())
            .filter(|(_, v)| v.is_known())
    }

    /// Names of constants denoting each element, for display.
    pub fn constants_by_element(&self) -> BTreeMap<usize, BTreeSet<&str>> {
        let mut out: BTreeMap<usize, BTreeSet<&str>> = BTreeMap::new();
        for (c, e) in &self.constants {
            out.entry(*e).or_default().insert(c.as_str());
        }
        out
    }

    /// Function graph as `(function, args, value)` triples, in table order.
    pub fn function_graph(&self) -> Vec<(String, Vec<String>, String)> {
        let n = self.universe.len();
        let mut out = Vec::new();
        for (f, table) in &self.functions {
            for (i, v) in table.values.iter().enumerate() {
                let args = tuple_at(i, table.arity, n)
                    .into_iter()
                    .map(|e| self.universe[e].clone())
                    .collect();
                out.push((f.clone(), args, self.universe[*v].clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(consts: &[&str], preds: &[(&str, usize)], funcs: &[(&str, usize)]) -> Signature {
        Signature::new(
            consts.iter().copied(),
            preds.iter().map(|(p, k)| (p.to_string(), *k)),
            funcs.iter().map(|(f, k)| (f.to_string(), *k)),
        )
        .unwrap()
    }

    #[test]
    fn single_fact_others_unknown() {
        let s = sig(&["a", "b"], &[("P", 1)], &[]);
        let d = make_domain(
            "S",
            s.clone(),
            Interpretation::herbrand(&s),
            [(GroundAtom::new("P", ["a"]), TruthValue::True)],
        )
        .unwrap();
        assert_eq!(d.fact(&GroundAtom::new("P", ["a"])), Some(TruthValue::True));
        assert_eq!(
            d.fact(&GroundAtom::new("P", ["b"])),
            Some(TruthValue::Unknown)
        );
    }

    #[test]
    fn empty_fact_list_is_all_unknown() {
        let s = sig(&["a", "b"], &[("P", 1), ("R", 2)], &[]);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), []).unwrap();
        assert_eq!(d.atom_count(), 6);
        assert!(d.fact_values().iter().all(|v| *v == TruthValue::Unknown));
        for g in d.ground_atoms() {
            assert_eq!(d.fact(&g), Some(TruthValue::Unknown));
        }
    }

    #[test]
    fn conflicting_fact_rejected() {
        let s = sig(&["a"], &[("P", 1)], &[]);
        let err = make_domain(
            "S",
            s.clone(),
            Interpretation::herbrand(&s),
            [
                (GroundAtom::new("P", ["a"]), TruthValue::True),
                (GroundAtom::new("P", ["a"]), TruthValue::False),
            ],
        )
        .unwrap_err();
        assert_eq!(
            err,
            DomainError::ConflictingFact(GroundAtom::new("P", ["a"]))
        );
        assert!(err.to_string().contains("conflicting fact"));
    }

    #[test]
    fn repeated_identical_fact_accepted() {
        let s = sig(&["a"], &[("P", 1)], &[]);
        let f = (GroundAtom::new("P", ["a"]), TruthValue::False);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), [f.clone(), f]).unwrap();
        assert_eq!(d.fact_values(), &[TruthValue::False]);
    }

    #[test]
    fn unknown_symbol_rejected() {
        let s = sig(&["a"], &[("P", 1)], &[]);
        let err = make_domain(
            "S",
            s.clone(),
            Interpretation::herbrand(&s),
            [(GroundAtom::new("Q", ["a"]), TruthValue::True)],
        )
        .unwrap_err();
        assert!(matches!(err, DomainError::UnknownSymbol { .. }));
        let err = make_domain(
            "S",
            s.clone(),
            Interpretation::herbrand(&s),
            [(GroundAtom::new("P", ["z"]), TruthValue::True)],
        )
        .unwrap_err();
        assert_eq!(err, DomainError::UnknownElement("z".into()));
    }

    #[test]
    fn ground_atom_order() {
        let s = sig(&["b", "a"], &[("P", 1)], &[]);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), []).unwrap();
        assert_eq!(
            d.ground_atoms(),
            vec![GroundAtom::new("P", ["a"]), GroundAtom::new("P", ["b"])]
        );

        let s = sig(&["a", "b"], &[("R", 2)], &[]);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), []).unwrap();
        let shown: Vec<String> = d.ground_atoms().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["R(a, a)", "R(a, b)", "R(b, a)", "R(b, b)"]);

        let s = sig(&["a", "b"], &[], &[]);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), []).unwrap();
        assert!(d.ground_atoms().is_empty());
    }

    #[test]
    fn ground_atoms_sorted_and_unique() {
        let s = sig(&["c", "a", "b"], &[("Q", 1), ("P", 2), ("Z", 1)], &[]);
        let d = make_domain("S", s.clone(), Interpretation::herbrand(&s), []).unwrap();
        let atoms = d.ground_atoms();
        assert_eq!(atoms.len(), 3 + 9 + 3);
        assert!(atoms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(atoms, d.ground_atoms());
        for (i, g) in atoms.iter().enumerate() {
            assert_eq!(d.atom_index(g).unwrap(), i);
        }
    }

    #[test]
    fn signature_rules() {
        assert_eq!(
            Signature::new(["a"], [("a".to_string(), 1)], []).unwrap_err(),
            DomainError::DuplicateSymbol("a".into())
        );
        assert_eq!(
            Signature::new(Vec::<String>::new(), [("P".to_string(), 0)], []).unwrap_err(),
            DomainError::ZeroArity("P".into())
        );
        assert!(matches!(
            Signature::new(["forall"], [], []).unwrap_err(),
            DomainError::InvalidIdentifier(_)
        ));
        assert!(matches!(
            Signature::new(["1a"], [], []).unwrap_err(),
            DomainError::InvalidIdentifier(_)
        ));
    }

    #[test]
    fn functions_must_be_total() {
        let s = sig(&["a", "b"], &[], &[("f", 1)]);
        let mut interp = Interpretation::herbrand(&s);
        interp
            .functions
            .push(("f".into(), vec!["a".into()], "b".into()));
        let err = make_domain("S", s.clone(), interp.clone(), []).unwrap_err();
        assert!(matches!(err, DomainError::MissingFunctionValue { .. }));
        interp
            .functions
            .push(("f".into(), vec!["b".into()], "b".into()));
        let d = make_domain("S", s, interp, []).unwrap();
        assert_eq!(d.apply("f", &[0]), Some(1));
        assert_eq!(d.apply("f", &[1]), Some(1));
    }

    #[test]
    fn separate_universe_and_constants() {
        let s = sig(&["c"], &[("P", 1)], &[]);
        let interp = Interpretation {
            universe: vec!["e2".into(), "e1".into()],
            constants: vec![("c".into(), "e2".into())],
            functions: vec![],
        };
        let d = make_domain("S", s, interp, []).unwrap();
        assert_eq!(d.universe(), ["e1", "e2"]);
        assert_eq!(d.constant("c"), Some(1));
        assert_eq!(d.atom_count(), 2);
    }

    #[test]
    fn empty_universe_rejected() {
        let s = sig(&[], &[("P", 1)], &[]);
        assert_eq!(
            make_domain("S", s, Interpretation::default(), []).unwrap_err(),
            DomainError::EmptyUniverse
        );
    }
}
