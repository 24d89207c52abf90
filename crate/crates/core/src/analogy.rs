//! Analogy maps between a source and a target domain.
//!
//! An [`AnalogyMap`] sends source symbols to target symbols of the same kind
//! and arity. It may be piecewise: each [`Piece`] carries a [`Guard`] that
//! selects formulas by the constants they mention, and the first matching
//! piece translates the formula. [`classify`] compares the value of each
//! working-set formula in the source with the value of its translation in the
//! target and sorts it into positive, negative or open support.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::formula::{check_formula, evaluate, Formula};
use crate::kb::{KnowledgeDomain, SymbolKind};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalogyError {
    #[error("analogy `{0}` has no pieces")]
    NoPieces(String),
    #[error("`{0}` is not a symbol of the source domain")]
    UnknownSourceSymbol(String),
    #[error("`{0}` is not a symbol of the target domain")]
    UnknownTargetSymbol(String),
    #[error("arity mismatch: `{from}` has arity {from_arity}, `{to}` has arity {to_arity}")]
    ArityMismatch {
        from: String,
        from_arity: usize,
        to: String,
        to_arity: usize,
    },
    #[error("kind mismatch: `{from}` is a {from_kind}, `{to}` is a {to_kind}")]
    KindMismatch {
        from: String,
        from_kind: &'static str,
        to: String,
        to_kind: &'static str,
    },
    #[error("`{0}` is mapped more than once in the same piece")]
    DuplicateMapping(String),
    #[error("map is not injective: `{first}` and `{second}` both go to `{target}`")]
    NotInjective {
        first: String,
        second: String,
        target: String,
    },
    #[error("guard mentions `{0}`, which is not a source constant")]
    GuardNotConstant(String),
    #[error("guards overlap on constant `{0}`")]
    OverlappingGuards(String),
    #[error("an `always` guard is only allowed on a single-piece analogy")]
    AlwaysInMultiPiece,
    #[error("analogies `{0}` and `{1}` do not share source and target domains")]
    DomainMismatch(String, String),
    #[error("analogy `{0}` is already piecewise; only single-piece analogies can be combined")]
    MultiPiece(String),
    #[error("no guard covers `{0}`")]
    CoverageGap(Formula),
    #[error("translation is not injective on the working set: `{first}` and `{second}` both become `{image}`")]
    TranslationNotInjective {
        first: Box<Formula>,
        second: Box<Formula>,
        image: Box<Formula>,
    },
    #[error("too many constants ({0}) for combination closure")]
    TooManyConstants(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("no guard matches the formula")]
    NoGuardMatch,
    #[error("symbol `{0}` is outside the map's domain")]
    UntranslatableSymbol(String),
}

/// Selects the formulas a piece is responsible for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    Always,
    /// Matches formulas mentioning at least one of these source constants.
    /// Formulas that mention no constant at all are matched by every guard.
    Mentions(BTreeSet<String>),
}

impl Guard {
    pub fn mentions<I>(constants: I) -> Guard
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        Guard::Mentions(constants.into_iter().map(Into::into).collect())
    }

    pub fn matches(&self, f: &Formula) -> bool {
        match self {
            Guard::Always => true,
            Guard::Mentions(set) => {
                let consts = f.constants();
                consts.is_empty() || consts.iter().any(|c| set.contains(*c))
            }
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Always => f.write_str("always"),
            Guard::Mentions(set) => {
                let items: Vec<&str> = set.iter().map(String::as_str).collect();
                write!(f, "mentions {{{}}}", items.join(", "))
            }
        }
    }
}

/// One guarded symbol map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub guard: Guard,
    map: BTreeMap<String, String>,
}

impl Piece {
    pub fn new<I, A, B>(guard: Guard, pairs: I) -> Result<Piece, AnalogyError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            let a = a.into();
            if map.insert(a.clone(), b.into()).is_some() {
                return Err(AnalogyError::DuplicateMapping(a));
            }
        }
        Ok(Piece { guard, map })
    }

    pub fn map(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn get(&self, symbol: &str) -> Option<&str> {
        self.map.get(symbol).map(String::as_str)
    }
}

/// An injective, kind- and arity-preserving symbol map from a source domain to
/// a target domain, possibly defined piecewise.
#[derive(Debug, Clone)]
pub struct AnalogyMap {
    name: String,
    source: Arc<KnowledgeDomain>,
    target: Arc<KnowledgeDomain>,
    pieces: Vec<Piece>,
}

fn same_domain(a: &Arc<KnowledgeDomain>, b: &Arc<KnowledgeDomain>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl AnalogyMap {
    pub fn new(
        name: impl Into<String>,
        source: Arc<KnowledgeDomain>,
        target: Arc<KnowledgeDomain>,
        pieces: Vec<Piece>,
    ) -> Result<AnalogyMap, AnalogyError> {
        let name = name.into();
        if pieces.is_empty() {
            return Err(AnalogyError::NoPieces(name));
        }
        let multi = pieces.len() > 1;
        let mut guarded: BTreeSet<&str> = BTreeSet::new();
        for piece in &pieces {
            match &piece.guard {
                Guard::Always if multi => return Err(AnalogyError::AlwaysInMultiPiece),
                Guard::Always => {}
                Guard::Mentions(set) => {
                    for c in set {
                        if source.signature().lookup(c) != Some(SymbolKind::Constant) {
                            return Err(AnalogyError::GuardNotConstant(c.clone()));
                        }
                        if !guarded.insert(c) {
                            return Err(AnalogyError::OverlappingGuards(c.clone()));
                        }
                    }
                }
            }
            check_symbol_map(&piece.map, &source, &target)?;
        }
        Ok(AnalogyMap {
            name,
            source,
            target,
            pieces,
        })
    }

    /// Single-piece map with the `always` guard.
    pub fn single<I, A, B>(
        name: impl Into<String>,
        source: Arc<KnowledgeDomain>,
        target: Arc<KnowledgeDomain>,
        pairs: I,
    ) -> Result<AnalogyMap, AnalogyError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        AnalogyMap::new(
            name,
            source,
            target,
            vec![Piece::new(Guard::Always, pairs)?],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<KnowledgeDomain> {
        &self.source
    }

    pub fn target(&self) -> &Arc<KnowledgeDomain> {
        &self.target
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn renamed(&self, name: impl Into<String>) -> AnalogyMap {
        AnalogyMap {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Index of the first piece whose guard matches `f`.
    pub fn piece_for(&self, f: &Formula) -> Option<usize> {
        self.pieces.iter().position(|p| p.guard.matches(f))
    }

    /// Replaces every symbol of `f` through the matching piece.
    pub fn translate(&self, f: &Formula) -> Result<Formula, TranslateError> {
        let piece = &self.pieces[self.piece_for(f).ok_or(TranslateError::NoGuardMatch)?];
        f.try_map_symbols(&mut |s, _| {
            piece
                .get(s)
                .map(str::to_string)
                .ok_or_else(|| TranslateError::UntranslatableSymbol(s.to_string()))
        })
    }

    /// Fails if two distinct translatable formulas of `formulas` share an image.
    pub fn check_injective_on(&self, formulas: &[Formula]) -> Result<(), AnalogyError> {
        let mut images: BTreeMap<Formula, &Formula> = BTreeMap::new();
        for f in formulas {
            if let Ok(img) = self.translate(f) {
                if let Some(prev) = images.get(&img) {
                    if *prev != f {
                        return Err(AnalogyError::TranslationNotInjective {
                            first: Box::new((*prev).clone()),
                            second: Box::new(f.clone()),
                            image: Box::new(img),
                        });
                    }
                } else {
                    images.insert(img, f);
                }
            }
        }
        Ok(())
    }
}

fn check_symbol_map(
    map: &BTreeMap<String, String>,
    source: &KnowledgeDomain,
    target: &KnowledgeDomain,
) -> Result<(), AnalogyError> {
    let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
    for (from, to) in map {
        let fk = source
            .signature()
            .lookup(from)
            .ok_or_else(|| AnalogyError::UnknownSourceSymbol(from.clone()))?;
        let tk = target
            .signature()
            .lookup(to)
            .ok_or_else(|| AnalogyError::UnknownTargetSymbol(to.clone()))?;
        match (fk, tk) {
            (SymbolKind::Constant, SymbolKind::Constant) => {}
            (SymbolKind::Predicate(a), SymbolKind::Predicate(b))
            | (SymbolKind::Function(a), SymbolKind::Function(b)) => {
                if a != b {
                    return Err(AnalogyError::ArityMismatch {
                        from: from.clone(),
                        from_arity: a,
                        to: to.clone(),
                        to_arity: b,
                    });
                }
            }
            _ => {
                return Err(AnalogyError::KindMismatch {
                    from: from.clone(),
                    from_kind: fk.describe(),
                    to: to.clone(),
                    to_kind: tk.describe(),
                })
            }
        }
        if let Some(prev) = seen.insert(to, from) {
            return Err(AnalogyError::NotInjective {
                first: prev.to_string(),
                second: from.clone(),
                target: to.clone(),
            });
        }
    }
    Ok(())
}

/// Where a working-set formula falls under an analogy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportClass {
    /// Known in both domains, same value.
    Positive,
    /// Known in both domains, different values.
    Negative,
    /// Known in the source, unknown in the target.
    Open,
    /// Unknown in the source.
    NotApplicable,
    /// Outside the analogy's domain of applicability.
    Untranslatable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classified {
    pub formula: Formula,
    pub class: SupportClass,
    pub translated: Option<Formula>,
    pub source_value: Option<TruthValue>,
    pub target_value: Option<TruthValue>,
    /// Why the formula could not be translated.
    pub reason: Option<String>,
}

/// Partition of a working set by one analogy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub analogy: String,
    pub source: String,
    pub target: String,
    pub items: Vec<Classified>,
}

impl SupportReport {
    pub fn formula_set(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter().map(|c| &c.formula)
    }

    pub fn of_class(&self, class: SupportClass) -> impl Iterator<Item = &Classified> {
        self.items.iter().filter(move |c| c.class == class)
    }

    fn formulas(&self, class: SupportClass) -> Vec<&Formula> {
        self.of_class(class).map(|c| &c.formula).collect()
    }

    pub fn positive(&self) -> Vec<&Formula> {
        self.formulas(SupportClass::Positive)
    }

    pub fn negative(&self) -> Vec<&Formula> {
        self.formulas(SupportClass::Negative)
    }

    pub fn open(&self) -> Vec<&Formula> {
        self.formulas(SupportClass::Open)
    }

    pub fn not_applicable(&self) -> Vec<&Formula> {
        self.formulas(SupportClass::NotApplicable)
    }

    pub fn untranslatable(&self) -> Vec<&Formula> {
        self.formulas(SupportClass::Untranslatable)
    }

    /// Positions (in the working set) of the formulas in `class`.
    pub fn indices(&self, class: SupportClass) -> BTreeSet<usize> {
        self.items
            .iter()
            .enumerate()
            .filter(|(_, c)| c.class == class)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn class_of(&self, f: &Formula) -> Option<SupportClass> {
        self.items.iter().find(|c| c.formula == *f).map(|c| c.class)
    }

    /// The conjectured target value for an open formula: its source value.
    pub fn conjecture(&self, f: &Formula) -> Option<TruthValue> {
        self.of_class(SupportClass::Open)
            .find(|c| c.formula == *f)
            .and_then(|c| c.source_value)
    }

    /// Open formula whose translation is `image`, with its source value.
    pub fn conjecture_for_image(&self, image: &Formula) -> Option<(&Formula, TruthValue)> {
        self.of_class(SupportClass::Open)
            .find(|c| c.translated.as_ref() == Some(image))
            .and_then(|c| Some((&c.formula, c.source_value?)))
    }
}

/// Sorts each formula of `formulas` into positive, negative, open,
/// not-applicable or untranslatable support. Duplicates are dropped, keeping
/// the first occurrence; the report preserves the input order.
pub fn classify(analogy: &AnalogyMap, formulas: &[Formula]) -> SupportReport {
    let mut seen = BTreeSet::new();
    let items = formulas
        .iter()
        .filter(|f| seen.insert(*f))
        .map(|f| classify_one(analogy, f))
        .collect();
    SupportReport {
        analogy: analogy.name.clone(),
        source: analogy.source.name().to_string(),
        target: analogy.target.name().to_string(),
        items,
    }
}

fn classify_one(analogy: &AnalogyMap, f: &Formula) -> Classified {
    let untranslatable = |reason: String| Classified {
        formula: f.clone(),
        class: SupportClass::Untranslatable,
        translated: None,
        source_value: None,
        target_value: None,
        reason: Some(reason),
    };
    if let Err(e) = check_formula(f, analogy.source.signature()) {
        return untranslatable(format!("not a source sentence: {e}"));
    }
    let image = match analogy.translate(f) {
        Ok(img) => img,
        Err(e) => return untranslatable(e.to_string()),
    };
    let vs = evaluate(f, &analogy.source)
        .expect("checked against the source signature")
        .value;
    // Maps are kind- and arity-checked against both signatures, so the image
    // of a source sentence is a target sentence.
    let vt = evaluate(&image, &analogy.target)
        .expect("translation preserves well-formedness")
        .value;
    let class = match (vs.is_known(), vt.is_known()) {
        (false, _) => SupportClass::NotApplicable,
        (true, false) => SupportClass::Open,
        (true, true) if vs == vt => SupportClass::Positive,
        (true, true) => SupportClass::Negative,
    };
    Classified {
        formula: f.clone(),
        class,
        translated: Some(image),
        source_value: Some(vs),
        target_value: Some(vt),
        reason: None,
    }
}

/// Piecewise combination: `first` on formulas matched by `first_guard`,
/// `second` on formulas matched by `second_guard`, first match winning.
///
/// Both inputs must be single-piece analogies over the same domains. The
/// guards must be disjoint, must together mention every constant that occurs
/// in `working`, and the combined translation must stay injective on
/// `working`.
pub fn combine(
    name: impl Into<String>,
    first: &AnalogyMap,
    second: &AnalogyMap,
    first_guard: BTreeSet<String>,
    second_guard: BTreeSet<String>,
    working: &[Formula],
) -> Result<AnalogyMap, AnalogyError> {
    if !same_domain(&first.source, &second.source) || !same_domain(&first.target, &second.target) {
        return Err(AnalogyError::DomainMismatch(
            first.name.clone(),
            second.name.clone(),
        ));
    }
    for a in [first, second] {
        if a.pieces.len() != 1 {
            return Err(AnalogyError::MultiPiece(a.name.clone()));
        }
    }
    let combined = AnalogyMap::new(
        name,
        first.source.clone(),
        first.target.clone(),
        vec![
            Piece {
                guard: Guard::Mentions(first_guard),
                map: first.pieces[0].map.clone(),
            },
            Piece {
                guard: Guard::Mentions(second_guard),
                map: second.pieces[0].map.clone(),
            },
        ],
    )?;
    if let Some(gap) = working.iter().find(|f| combined.piece_for(f).is_none()) {
        return Err(AnalogyError::CoverageGap(gap.clone()));
    }
    combined.check_injective_on(working)?;
    Ok(combined)
}

/// Largest number of working-set constants the closure step will split.
pub const CLOSURE_MAX_CONSTANTS: usize = 12;

/// One round of pairwise combination.
///
/// For every pair of single-piece analogies `(a, b)` (in list order) and every
/// split of the constants occurring in `working` into two nonempty parts
/// `(C1, C2)`, adds `combine(a, b, C1, C2)` named `a+b@{C1}`. Candidates whose
/// translation is not injective on `working` are skipped. Returns only the new
/// analogies.
pub fn combination_closure(
    analogies: &[AnalogyMap],
    working: &[Formula],
) -> Result<Vec<AnalogyMap>, AnalogyError> {
    let constants: Vec<String> = working
        .iter()
        .flat_map(|f| f.constants().into_iter().map(str::to_string))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let k = constants.len();
    if k > CLOSURE_MAX_CONSTANTS {
        return Err(AnalogyError::TooManyConstants(k));
    }
    let mut out = Vec::new();
    if k < 2 {
        return Ok(out);
    }
    for (i, a) in analogies.iter().enumerate() {
        for b in &analogies[i + 1..] {
            if a.pieces.len() != 1 || b.pieces.len() != 1 {
                continue;
            }
            for mask in 1..(1u32 << k) - 1 {
                let (left, right): (Vec<_>, Vec<_>) = constants
                    .iter()
                    .enumerate()
                    .partition(|(j, _)| mask >> j & 1 == 1);
                let left: BTreeSet<String> = left.into_iter().map(|(_, c)| c.clone()).collect();
                let right: BTreeSet<String> = right.into_iter().map(|(_, c)| c.clone()).collect();
                let name = format!(
                    "{}+{}@{{{}}}",
                    a.name,
                    b.name,
                    left.iter().cloned().collect::<Vec<_>>().join(",")
                );
                match combine(name, a, b, left, right, working) {
                    Ok(c) => out.push(c),
                    Err(AnalogyError::TranslationNotInjective { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// Keynes-style summary of one analogy over a working set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedReport {
    pub analogy: String,
    /// `(P, P*)`: accepted similarities.
    pub positive_pairs: Vec<(Formula, Formula)>,
    /// `(A, A*)`: `A` holds in the source, `A*` fails in the target.
    pub negative_pairs_a: Vec<(Formula, Formula)>,
    /// `(B, B*)`: `B` fails in the source, `B*` holds in the target.
    pub negative_pairs_b: Vec<(Formula, Formula)>,
    /// `(Q, Q*, v)`: `Q*` is conjectured to take the source value `v`.
    pub plausible: Vec<(Formula, Formula, TruthValue)>,
}

impl AugmentedReport {
    /// Straight-rule score with `n`, `r`, `s` taken from this report.
    pub fn score(&self) -> Result<StraightRuleScore, ScoreError> {
        straight_rule(
            self.positive_pairs.len() as u64,
            self.negative_pairs_a.len() as u64,
            self.negative_pairs_b.len() as u64,
        )
    }
}

pub fn augmented_report(analogy: &AnalogyMap, formulas: &[Formula]) -> AugmentedReport {
    augment(&classify(analogy, formulas))
}

/// Builds the augmented form of an existing classification.
pub fn augment(report: &SupportReport) -> AugmentedReport {
    let mut out = AugmentedReport {
        analogy: report.analogy.clone(),
        positive_pairs: Vec::new(),
        negative_pairs_a: Vec::new(),
        negative_pairs_b: Vec::new(),
        plausible: Vec::new(),
    };
    for c in &report.items {
        let Some(image) = c.translated.clone() else {
            continue;
        };
        let pair = (c.formula.clone(), image);
        match (c.class, c.source_value) {
            (SupportClass::Positive, _) => out.positive_pairs.push(pair),
            (SupportClass::Negative, Some(TruthValue::True)) => out.negative_pairs_a.push(pair),
            (SupportClass::Negative, _) => out.negative_pairs_b.push(pair),
            (SupportClass::Open, Some(v)) => out.plausible.push((pair.0, pair.1, v)),
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("the straight rule needs at least one positive analogy (n >= 1)")]
    NoPositiveAnalogy,
}

/// Baseline degree of support `p = n / (n + r + s + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StraightRuleScore {
    pub n: u64,
    pub r: u64,
    pub s: u64,
    pub p: Ratio<u64>,
}

pub fn straight_rule(n: u64, r: u64, s: u64) -> Result<StraightRuleScore, ScoreError> {
    if n == 0 {
        return Err(ScoreError::NoPositiveAnalogy);
    }
    Ok(StraightRuleScore {
        n,
        r,
        s,
        p: Ratio::new(n, n + r + s + 1),
    })
}
