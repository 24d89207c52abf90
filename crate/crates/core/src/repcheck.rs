//! Exhaustive checks of the choice-function properties `(μ⊆)`, `(μPR)`,
//! `(μCUM)` and `(μ=)` against the relation classes that should induce them.
//!
//! The soundness sweep walks every irreflexive relation on a small carrier and
//! checks that its `mu` has the properties of its class. The completeness
//! sweep walks every choice function and asks for a relation of the class
//! that induces it.

use std::fmt;
use std::str::FromStr;

use crate::preference::{
    choice_of, is_ranked, is_smooth, is_transitive, letters, ChoiceFunction, ItemSet,
    PreferenceRelation,
};

pub const SOUNDNESS_MAX_N: usize = 4;
pub const COMPLETENESS_MAX_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    /// `μ(X) ⊆ X`
    MuSubset,
    /// `X ⊆ Y ⇒ μ(Y) ∩ X ⊆ μ(X)`
    MuPR,
    /// `μ(X) ⊆ Y ⊆ X ⇒ μ(X) = μ(Y)`
    MuCUM,
    /// `X ⊆ Y, μ(Y) ∩ X ≠ ∅ ⇒ μ(X) = μ(Y) ∩ X`
    MuEq,
}

impl PropertyId {
    pub const ALL: [PropertyId; 4] = [
        PropertyId::MuSubset,
        PropertyId::MuPR,
        PropertyId::MuCUM,
        PropertyId::MuEq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::MuSubset => "MuSubset",
            PropertyId::MuPR => "MuPR",
            PropertyId::MuCUM => "MuCUM",
            PropertyId::MuEq => "MuEq",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A failing instance of a property. `y` is absent for `MuSubset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyWitness {
    pub property: PropertyId,
    pub x: ItemSet,
    pub y: Option<ItemSet>,
}

/// Checks `p` over every subset (pair); the witness is the first failure with
/// `X` then `Y` in increasing mask order.
pub fn check_property(cf: &ChoiceFunction, p: PropertyId) -> Result<(), PropertyWitness> {
    let full = cf.full();
    let fail = |x, y| PropertyWitness { property: p, x, y };
    for x in full.subsets() {
        let mx = cf.choose(x);
        match p {
            PropertyId::MuSubset => {
                if !mx.is_subset(x) {
                    return Err(fail(x, None));
                }
            }
            PropertyId::MuPR => {
                for y in full.subsets().filter(|y| x.is_subset(*y)) {
                    if !cf.choose(y).intersection(x).is_subset(mx) {
                        return Err(fail(x, Some(y)));
                    }
                }
            }
            PropertyId::MuCUM => {
                for y in x.subsets().filter(|y| mx.is_subset(*y)) {
                    if cf.choose(y) != mx {
                        return Err(fail(x, Some(y)));
                    }
                }
            }
            PropertyId::MuEq => {
                for y in full.subsets().filter(|y| x.is_subset(*y)) {
                    let my = cf.choose(y).intersection(x);
                    if !my.is_empty() && mx != my {
                        return Err(fail(x, Some(y)));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationClass {
    All,
    /// Smooth and transitive.
    TransitiveSmooth,
    Ranked,
}

impl RelationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationClass::All => "all",
            RelationClass::TransitiveSmooth => "smooth",
            RelationClass::Ranked => "ranked",
        }
    }

    /// Properties a choice function induced by a relation of this class has.
    pub fn properties(self) -> &'static [PropertyId] {
        match self {
            RelationClass::All => &[PropertyId::MuSubset, PropertyId::MuPR],
            RelationClass::TransitiveSmooth => {
                &[PropertyId::MuSubset, PropertyId::MuPR, PropertyId::MuCUM]
            }
            RelationClass::Ranked => &[PropertyId::MuSubset, PropertyId::MuPR, PropertyId::MuEq],
        }
    }

    pub fn contains(self, rel: &PreferenceRelation) -> bool {
        match self {
            RelationClass::All => true,
            RelationClass::TransitiveSmooth => is_transitive(rel) && is_smooth(rel),
            RelationClass::Ranked => is_ranked(rel),
        }
    }
}

impl fmt::Display for RelationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown relation class `{0}` (expected all, smooth or ranked)")]
pub struct ParseClassError(pub String);

impl FromStr for RelationClass {
    type Err = ParseClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(RelationClass::All),
            "smooth" => Ok(RelationClass::TransitiveSmooth),
            "ranked" => Ok(RelationClass::Ranked),
            other => Err(ParseClassError(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Soundness,
    Completeness,
}

impl SweepMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepMode::Soundness => "soundness",
            SweepMode::Completeness => "completeness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepcheckError {
    #[error("carrier size {n} exceeds the {mode} limit of {max}")]
    SizeCap {
        n: usize,
        max: usize,
        mode: &'static str,
    },
}

/// One failed check. `property` is `None` when a choice function has every
/// property of the class but no relation of the class induces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub subject: String,
    pub property: Option<PropertyId>,
    pub x: Option<Vec<String>>,
    pub y: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub class: RelationClass,
    pub n: usize,
    /// Relations or choice functions enumerated.
    pub examined: usize,
    /// Soundness: relations in the class. Completeness: choice functions with
    /// every property of the class.
    pub in_scope: usize,
    /// Soundness: in-scope relations that are transitive. Completeness:
    /// in-scope choice functions represented by a transitive relation.
    pub transitive: usize,
    /// Completeness only: in-scope choice functions that were represented.
    pub represented: usize,
    pub violations: Vec<Violation>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn names(carrier: &[String], s: ItemSet) -> Vec<String> {
    s.iter().map(|i| carrier[i].clone()).collect()
}

fn show_set(carrier: &[String], s: ItemSet) -> String {
    format!("{{{}}}", names(carrier, s).join(","))
}

/// `{} -> {}; {a} -> {a}; ...` in mask order.
pub fn describe_choice(cf: &ChoiceFunction) -> String {
    cf.full()
        .subsets()
        .map(|x| {
            format!(
                "{} -> {}",
                show_set(cf.carrier(), x),
                show_set(cf.carrier(), cf.choose(x))
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn violation(subject: String, carrier: &[String], w: PropertyWitness) -> Violation {
    Violation {
        subject,
        property: Some(w.property),
        x: Some(names(carrier, w.x)),
        y: w.y.map(|y| names(carrier, y)),
    }
}

/// Every irreflexive relation on `n` items in `class`: its choice function
/// must have the class's properties.
pub fn soundness_sweep(n: usize, class: RelationClass) -> Result<SweepResult, RepcheckError> {
    if n > SOUNDNESS_MAX_N {
        return Err(RepcheckError::SizeCap {
            n,
            max: SOUNDNESS_MAX_N,
            mode: "soundness",
        });
    }
    let mut out = SweepResult {
        mode: SweepMode::Soundness,
        class,
        n,
        examined: 0,
        in_scope: 0,
        transitive: 0,
        represented: 0,
        violations: Vec::new(),
    };
    for rel in PreferenceRelation::enumerate(letters(n)) {
        out.examined += 1;
        if !class.contains(&rel) {
            continue;
        }
        out.in_scope += 1;
        if is_transitive(&rel) {
            out.transitive += 1;
        }
        let cf = choice_of(&rel).expect("within the choice cap");
        for &p in class.properties() {
            if let Err(w) = check_property(&cf, p) {
                out.violations
                    .push(violation(rel.to_string(), rel.carrier(), w));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotRepresentable {
    /// The choice function lacks a property every relation of the class induces.
    Property(PropertyWitness),
    /// It has every property, but no relation of the class induces it.
    NoRelation,
}

/// The only irreflexive relation that can induce `cf`: on a two-element set
/// `{x, y}`, `x ⊑ y` exactly when `y` is not chosen.
pub fn pairwise_candidate(cf: &ChoiceFunction) -> PreferenceRelation {
    let n = cf.len();
    let mut rel = PreferenceRelation::empty(cf.carrier().to_vec()).expect("valid carrier");
    for x in 0..n {
        for y in 0..n {
            if x != y && !cf.choose(ItemSet::singleton(x).with(y)).contains(y) {
                rel.add_edge(x, y).expect("x != y");
            }
        }
    }
    rel
}

/// A relation in `class` whose `mu` is exactly `cf`.
///
/// The class's properties are checked first. Since an irreflexive relation
/// is determined by `mu` on two-element sets, the search reduces to one
/// candidate.
pub fn represent(
    cf: &ChoiceFunction,
    class: RelationClass,
) -> Result<PreferenceRelation, NotRepresentable> {
    for &p in class.properties() {
        check_property(cf, p).map_err(NotRepresentable::Property)?;
    }
    let rel = pairwise_candidate(cf);
    if class.contains(&rel) && choice_of(&rel).as_ref() == Ok(cf) {
        Ok(rel)
    } else {
        Err(NotRepresentable::NoRelation)
    }
}

/// Brute-force search over every irreflexive relation; the first match in
/// enumeration order.
pub fn search_representer(cf: &ChoiceFunction, class: RelationClass) -> Option<PreferenceRelation> {
    PreferenceRelation::enumerate(cf.carrier().to_vec())
        .find(|rel| class.contains(rel) && choice_of(rel).as_ref() == Ok(cf))
}

/// Every choice function on `carrier` with `cf(X) ⊆ X`, counting the first
/// subset fastest.
pub fn all_choice_functions(carrier: Vec<String>) -> impl Iterator<Item = ChoiceFunction> {
    let n = carrier.len();
    let subsets: Vec<ItemSet> = ItemSet::full(n).subsets().collect();
    let choices: Vec<Vec<ItemSet>> = subsets.iter().map(|x| x.subsets().collect()).collect();
    let total: usize = choices.iter().map(Vec::len).product();
    (0..total).map(move |mut k| {
        let table = choices
            .iter()
            .map(|opts| {
                let c = opts[k % opts.len()];
                k /= opts.len();
                c
            })
            .collect();
        ChoiceFunction::new(carrier.clone(), table).expect("one entry per subset")
    })
}

/// Every choice function on `n` items with the properties of `class` must be
/// induced by a relation of `class`.
pub fn completeness_sweep(n: usize, class: RelationClass) -> Result<SweepResult, RepcheckError> {
    if n > COMPLETENESS_MAX_N {
        return Err(RepcheckError::SizeCap {
            n,
            max: COMPLETENESS_MAX_N,
            mode: "completeness",
        });
    }
    let mut out = SweepResult {
        mode: SweepMode::Completeness,
        class,
        n,
        examined: 0,
        in_scope: 0,
        transitive: 0,
        represented: 0,
        violations: Vec::new(),
    };
    for cf in all_choice_functions(letters(n)) {
        out.examined += 1;
        if class
            .properties()
            .iter()
            .any(|&p| check_property(&cf, p).is_err())
        {
            continue;
        }
        out.in_scope += 1;
        match represent(&cf, class) {
            Ok(rel) => {
                out.represented += 1;
                if is_transitive(&rel) {
                    out.transitive += 1;
                }
            }
            Err(_) => out.violations.push(Violation {
                subject: describe_choice(&cf),
                property: None,
                x: None,
                y: None,
            }),
        }
    }
    Ok(out)
}

pub fn sweep(
    mode: SweepMode,
    n: usize,
    class: RelationClass,
) -> Result<SweepResult, RepcheckError> {
    match mode {
        SweepMode::Soundness => soundness_sweep(n, class),
        SweepMode::Completeness => completeness_sweep(n, class),
    }
}
