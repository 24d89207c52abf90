//! Strict preference relations over a finite carrier, the induced choice
//! function `mu`, and the smooth / ranked / transitive class checks.
//!
//! Smaller is better: an edge `x ⊑ y` says `x` is preferred to `y`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::analogy::{SupportClass, SupportReport};

/// Largest carrier a [`PreferenceRelation`] can hold.
pub const MAX_CARRIER: usize = 64;

/// Default cap on the carrier size for [`choice_of`].
pub const DEFAULT_CHOICE_CAP: usize = 4;

/// A subset of a carrier of at most 64 items, as a bit mask over item indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ItemSet(pub u64);

impl ItemSet {
    pub const EMPTY: ItemSet = ItemSet(0);

    pub fn full(n: usize) -> ItemSet {
        if n >= 64 {
            ItemSet(u64::MAX)
        } else {
            ItemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> ItemSet {
        ItemSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(items: I) -> ItemSet {
        items.into_iter().fold(ItemSet::EMPTY, |s, i| s.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> ItemSet {
        ItemSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> ItemSet {
        ItemSet(self.0 & !(1 << i))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ItemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ItemSet) -> ItemSet {
        ItemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ItemSet) -> ItemSet {
        ItemSet(self.0 & other.0)
    }

    pub fn difference(self, other: ItemSet) -> ItemSet {
        ItemSet(self.0 & !other.0)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Every subset of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = ItemSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(ItemSet(cur))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PreferenceError {
    #[error("item `{0}` appears twice in the carrier")]
    DuplicateItem(String),
    #[error("`{0}` is not in the carrier")]
    UnknownItem(String),
    #[error("reflexive edge `{0} ⊑ {0}`: preference relations are strict")]
    Reflexive(String),
    #[error("carrier of {0} items exceeds the limit of {MAX_CARRIER}")]
    TooLarge(usize),
    #[error("carrier of {size} items exceeds the choice-function cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("report for `{0}` is over a different working set or domain pair")]
    MismatchedWorkingSet(String),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("choice table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
}

/// A strict relation `⊑` over a named finite carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceRelation {
    carrier: Vec<String>,
    /// `better[y]` holds every `x` with `x ⊑ y`.
    better: Vec<ItemSet>,
}

impl PreferenceRelation {
    pub fn empty(carrier: Vec<String>) -> Result<PreferenceRelation, PreferenceError> {
        if carrier.len() > MAX_CARRIER {
            return Err(PreferenceError::TooLarge(carrier.len()));
        }
        let mut seen = BTreeSet::new();
        for c in &carrier {
            if !seen.insert(c) {
                return Err(PreferenceError::DuplicateItem(c.clone()));
            }
        }
        let better = vec![ItemSet::EMPTY; carrier.len()];
        Ok(PreferenceRelation { carrier, better })
    }

    /// Builds a relation from `(better, worse)` name pairs.
    pub fn new<I, A, B>(
        carrier: Vec<String>,
        edges: I,
    ) -> Result<PreferenceRelation, PreferenceError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut rel = PreferenceRelation::empty(carrier)?;
        for (x, y) in edges {
            let xi = rel.index_or_err(x.as_ref())?;
            let yi = rel.index_or_err(y.as_ref())?;
            rel.add_edge(xi, yi)?;
        }
        Ok(rel)
    }

    /// Relation on `carrier` whose dominator sets are `better`.
    pub fn from_dominators(
        carrier: Vec<String>,
        better: Vec<ItemSet>,
    ) -> Result<PreferenceRelation, PreferenceError> {
        let mut rel = PreferenceRelation::empty(carrier)?;
        assert_eq!(better.len(), rel.len(), "one dominator set per item");
        for (y, b) in better.into_iter().enumerate() {
            if b.contains(y) {
                return Err(PreferenceError::Reflexive(rel.carrier[y].clone()));
            }
            assert!(b.is_subset(rel.full()), "dominators outside the carrier");
            rel.better[y] = b;
        }
        Ok(rel)
    }

    fn index_or_err(&self, name: &str) -> Result<usize, PreferenceError> {
        self.index_of(name)
            .ok_or_else(|| PreferenceError::UnknownItem(name.to_string()))
    }

    /// Adds `x ⊑ y`.
    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<(), PreferenceError> {
        if x == y {
            return Err(PreferenceError::Reflexive(self.carrier[x].clone()));
        }
        self.better[y] = self.better[y].with(x);
        Ok(())
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn full(&self) -> ItemSet {
        ItemSet::full(self.len())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == name)
    }

    /// `x ⊑ y`.
    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.better[y].contains(x)
    }

    pub fn dominators(&self, y: usize) -> ItemSet {
        self.better[y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.prefers(x, y) || self.prefers(y, x)
    }

    /// All edges `(x, y)` with `x ⊑ y`, sorted by `x` then `y`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.prefers(x, y))
            .collect()
    }

    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .map(|(x, y)| (self.carrier[x].as_str(), self.carrier[y].as_str()))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.better.iter().map(|b| b.len()).sum()
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<ItemSet, PreferenceError> {
        names.iter().try_fold(ItemSet::EMPTY, |s, n| {
            Ok(s.with(self.index_or_err(n.as_ref())?))
        })
    }

    pub fn names_of(&self, set: ItemSet) -> Vec<&str> {
        set.iter().map(|i| self.carrier[i].as_str()).collect()
    }

    /// Every irreflexive relation on `carrier`, in increasing order of the
    /// edge mask over ordered pairs `(x, y)`, `x != y`, listed
    /// lexicographically.
    pub fn enumerate(carrier: Vec<String>) -> impl Iterator<Item = PreferenceRelation> {
        let n = carrier.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|(x, y)| x != y)
            .collect();
        assert!(pairs.len() < 32, "carrier too large to enumerate");
        let base = PreferenceRelation::empty(carrier).expect("valid carrier");
        (0u32..1 << pairs.len()).map(move |mask| {
            let mut rel = base.clone();
            for (k, &(x, y)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    rel.better[y] = rel.better[y].with(x);
                }
            }
            rel
        })
    }
}

impl fmt::Display for PreferenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edge_names()
            .into_iter()
            .map(|(x, y)| format!("{x} ⊑ {y}"))
            .collect();
        write!(f, "{{{}}}", edges.join(", "))
    }
}

/// Carrier `a, b, c, ...` of size `n` (at most 26).
pub fn letters(n: usize) -> Vec<String> {
    assert!(n <= 26);
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// The elements of `x` not beaten by any element of `x`.
pub fn mu(rel: &PreferenceRelation, x: ItemSet) -> ItemSet {
    ItemSet::from_indices(
        x.iter()
            .filter(|&i| rel.dominators(i).intersection(x).is_empty()),
    )
}

/// A choice function tabulated over every subset of its carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceFunction {
    carrier: Vec<String>,
    table: Vec<ItemSet>,
}

impl ChoiceFunction {
    /// `table[m]` is the choice for the subset with mask `m`.
    pub fn new(
        carrier: Vec<String>,
        table: Vec<ItemSet>,
    ) -> Result<ChoiceFunction, PreferenceError> {
        if carrier.len() >= 32 {
            return Err(PreferenceError::TooLarge(carrier.len()));
        }
        let expected = 1usize << carrier.len();
        if table.len() != expected {
            return Err(PreferenceError::TableSize {
                expected,
                found: table.len(),
            });
        }
        Ok(ChoiceFunction { carrier, table })
    }

    pub fn identity(carrier: Vec<String>) -> ChoiceFunction {
        let table = (0..1u64 << carrier.len()).map(ItemSet).collect();
        ChoiceFunction { carrier, table }
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn full(&self) -> ItemSet {
        ItemSet::full(self.len())
    }

    pub fn choose(&self, x: ItemSet) -> ItemSet {
        self.table[x.0 as usize]
    }

    pub fn table(&self) -> &[ItemSet] {
        &self.table
    }
}

/// Tabulates `mu` over the powerset, with the default cap.
pub fn choice_of(rel: &PreferenceRelation) -> Result<ChoiceFunction, PreferenceError> {
    choice_of_capped(rel, DEFAULT_CHOICE_CAP)
}

pub fn choice_of_capped(
    rel: &PreferenceRelation,
    cap: usize,
) -> Result<ChoiceFunction, PreferenceError> {
    if rel.len() > cap || rel.len() >= 32 {
        return Err(PreferenceError::CapExceeded {
            size: rel.len(),
            cap,
        });
    }
    let table = rel.full().subsets().map(|x| mu(rel, x)).collect();
    Ok(ChoiceFunction {
        carrier: rel.carrier.clone(),
        table,
    })
}

/// A set `X` and an item `x ∈ X` that is neither minimal in `X` nor beaten by
/// a minimal element of `X`; `None` if the relation is smooth.
///
/// Runs in polynomial time. For each `x`, the largest candidate `X` contains
/// everything that does not beat `x`, plus the dominators of `x` that stay
/// beaten inside `X`; the latter are found as a greatest fixpoint.
pub fn smoothness_witness(rel: &PreferenceRelation) -> Option<(ItemSet, usize)> {
    let full = rel.full();
    for x in 0..rel.len() {
        let preds = rel.dominators(x);
        let rest = full.difference(preds);
        let mut d = preds;
        loop {
            let set = rest.union(d);
            let drop = d
                .iter()
                .find(|&i| rel.dominators(i).intersection(set).is_empty());
            match drop {
                Some(i) => d = d.without(i),
                None => break,
            }
        }
        if !d.is_empty() {
            return Some((rest.union(d), x));
        }
    }
    None
}

pub fn is_smooth(rel: &PreferenceRelation) -> bool {
    smoothness_witness(rel).is_none()
}

/// First triple `(x, y, z)` in lexicographic order with `x`, `y` incomparable
/// and either `z ⊑ x` without `z ⊑ y`, or `x ⊑ z` without `y ⊑ z`.
pub fn rankedness_witness(rel: &PreferenceRelation) -> Option<(usize, usize, usize)> {
    let n = rel.len();
    for x in 0..n {
        for y in 0..n {
            if x == y || rel.comparable(x, y) {
                continue;
            }
            for z in 0..n {
                if (rel.prefers(z, x) && !rel.prefers(z, y))
                    || (rel.prefers(x, z) && !rel.prefers(y, z))
                {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_ranked(rel: &PreferenceRelation) -> bool {
    rankedness_witness(rel).is_none()
}

/// First `(x, y, z)` with `x ⊑ y`, `y ⊑ z` and not `x ⊑ z`.
pub fn transitivity_witness(rel: &PreferenceRelation) -> Option<(usize, usize, usize)> {
    let n = rel.len();
    for x in 0..n {
        for y in 0..n {
            if !rel.prefers(x, y) {
                continue;
            }
            for z in 0..n {
                if rel.prefers(y, z) && !rel.prefers(x, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

pub fn is_transitive(rel: &PreferenceRelation) -> bool {
    transitivity_witness(rel).is_none()
}

fn check_shared(reports: &[SupportReport]) -> Result<Vec<String>, PreferenceError> {
    let mut names = Vec::with_capacity(reports.len());
    if let Some(first) = reports.first() {
        let phi: Vec<_> = first.formula_set().collect();
        for r in reports {
            if r.source != first.source
                || r.target != first.target
                || r.formula_set().ne(phi.iter().copied())
            {
                return Err(PreferenceError::MismatchedWorkingSet(r.analogy.clone()));
            }
            names.push(r.analogy.clone());
        }
    }
    Ok(names)
}

/// `α ⊑ β` iff `α⁺ ⊇ β⁺`, `α⁻ ⊆ β⁻`, and the two reports differ on one of them.
pub fn dominance_preference(
    reports: &[SupportReport],
) -> Result<PreferenceRelation, PreferenceError> {
    let names = check_shared(reports)?;
    let mut rel = PreferenceRelation::empty(names)?;
    let sets: Vec<_> = reports
        .iter()
        .map(|r| {
            (
                r.indices(SupportClass::Positive),
                r.indices(SupportClass::Negative),
            )
        })
        .collect();
    for (a, (pa, na)) in sets.iter().enumerate() {
        for (b, (pb, nb)) in sets.iter().enumerate() {
            if a != b && pa.is_superset(pb) && na.is_subset(nb) && (pa != pb || na != nb) {
                rel.add_edge(a, b)?;
            }
        }
    }
    Ok(rel)
}

/// Weights for [`count_preference`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    pub positive: Ratio<i64>,
    pub negative: Ratio<i64>,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            positive: Ratio::from_integer(1),
            negative: Ratio::from_integer(1),
        }
    }
}

/// `rank(α) = w⁻·|α⁻| − w⁺·|α⁺|`.
pub fn count_rank(report: &SupportReport, w: Weights) -> Ratio<i64> {
    let pos = report.of_class(SupportClass::Positive).count() as i64;
    let neg = report.of_class(SupportClass::Negative).count() as i64;
    w.negative * neg - w.positive * pos
}

/// `α ⊑ β` iff `rank(α) < rank(β)`.
pub fn count_preference(
    reports: &[SupportReport],
    w: Weights,
) -> Result<PreferenceRelation, PreferenceError> {
    if w.positive <= Ratio::zero() || w.negative <= Ratio::zero() {
        return Err(PreferenceError::NonPositiveWeight);
    }
    let names = check_shared(reports)?;
    let ranks: Vec<_> = reports.iter().map(|r| count_rank(r, w)).collect();
    let mut rel = PreferenceRelation::empty(names)?;
    for (a, ra) in ranks.iter().enumerate() {
        for (b, rb) in ranks.iter().enumerate() {
            if ra < rb {
                rel.add_edge(a, b)?;
            }
        }
    }
    Ok(rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analogy::Classified;
    use crate::formula::Formula;
    use proptest::prelude::*;

    fn rel(n: usize, edges: &[(usize, usize)]) -> PreferenceRelation {
        let mut r = PreferenceRelation::empty(letters(n)).unwrap();
        for &(x, y) in edges {
            r.add_edge(x, y).unwrap();
        }
        r
    }

    fn set(items: &[usize]) -> ItemSet {
        ItemSet::from_indices(items.iter().copied())
    }

    /// Smoothness straight from the definition, over every subset.
    fn smooth_oracle(r: &PreferenceRelation) -> bool {
        r.full().subsets().all(|x| {
            let m = mu(r, x);
            x.iter()
                .all(|i| m.contains(i) || m.iter().any(|j| r.prefers(j, i)))
        })
    }

    #[test]
    fn itemset_subsets_in_mask_order() {
        let s = set(&[0, 2]);
        let subs: Vec<u64> = s.subsets().map(|x| x.0).collect();
        assert_eq!(subs, vec![0, 1, 4, 5]);
        assert_eq!(ItemSet::full(3).subsets().count(), 8);
        assert_eq!(ItemSet::EMPTY.subsets().count(), 1);
        assert_eq!(set(&[1, 3]).iter().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn mu_examples() {
        let empty = rel(2, &[]);
        for x in empty.full().subsets() {
            assert_eq!(mu(&empty, x), x);
        }
        assert_eq!(mu(&rel(2, &[(0, 1)]), set(&[0, 1])), set(&[0]));
        assert_eq!(mu(&rel(2, &[(0, 1), (1, 0)]), set(&[0, 1])), ItemSet::EMPTY);
    }

    #[test]
    fn reflexive_edges_rejected() {
        let err = PreferenceRelation::new(letters(2), [("a", "a")]).unwrap_err();
        assert_eq!(err, PreferenceError::Reflexive("a".into()));
        let err = PreferenceRelation::new(letters(2), [("a", "z")]).unwrap_err();
        assert_eq!(err, PreferenceError::UnknownItem("z".into()));
    }

    #[test]
    fn choice_tables() {
        let c = choice_of(&rel(2, &[])).unwrap();
        assert_eq!(c, ChoiceFunction::identity(letters(2)));
        let c = choice_of(&rel(2, &[(0, 1)])).unwrap();
        assert_eq!(c.choose(set(&[0, 1])), set(&[0]));
        assert_eq!(c.choose(set(&[1])), set(&[1]));
        assert_eq!(c.choose(ItemSet::EMPTY), ItemSet::EMPTY);
        assert!(matches!(
            choice_of(&rel(5, &[])),
            Err(PreferenceError::CapExceeded { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth(&rel(3, &[])));
        assert!(is_smooth(&rel(3, &[(0, 1), (1, 2), (0, 2)])));
        assert_eq!(
            smoothness_witness(&rel(2, &[(0, 1), (1, 0)])),
            Some((set(&[0, 1]), 0))
        );
    }

    #[test]
    fn smoothness_matches_subset_oracle() {
        for n in 1..=3 {
            for r in PreferenceRelation::enumerate(letters(n)) {
                let w = smoothness_witness(&r);
                assert_eq!(w.is_none(), smooth_oracle(&r), "{r}");
                if let Some((x, i)) = w {
                    let m = mu(&r, x);
                    assert!(x.contains(i) && !m.contains(i));
                    assert!(m.iter().all(|j| !r.prefers(j, i)));
                }
            }
        }
    }

    #[test]
    fn rankedness_examples() {
        assert!(is_ranked(&rel(3, &[(0, 1), (1, 2), (0, 2)])));
        assert!(is_ranked(&rel(3, &[(0, 2), (1, 2)])));
        assert_eq!(rankedness_witness(&rel(3, &[(0, 1)])), Some((0, 2, 1)));
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&rel(3, &[(0, 1), (1, 2), (0, 2)])));
        assert_eq!(
            transitivity_witness(&rel(3, &[(0, 1), (1, 2)])),
            Some((0, 1, 2))
        );
        assert!(!is_transitive(&rel(2, &[(0, 1), (1, 0)])));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(PreferenceRelation::enumerate(letters(2)).count(), 4);
        assert_eq!(PreferenceRelation::enumerate(letters(3)).count(), 64);
    }

    /// Exhaustive over every irreflexive relation on three items.
    #[test]
    fn choice_properties_at_three() {
        for r in PreferenceRelation::enumerate(letters(3)) {
            let smooth = is_smooth(&r);
            let ranked = is_ranked(&r);
            for y in r.full().subsets() {
                let my = mu(&r, y);
                assert!(my.is_subset(y));
                for x in y.subsets() {
                    let mx = mu(&r, x);
                    assert!(my.intersection(x).is_subset(mx), "PR {r}");
                    // with the roles of X and Y swapped: mu(Y) ⊆ X ⊆ Y
                    if smooth && my.is_subset(x) {
                        assert_eq!(mx, my, "CUM {r}");
                    }
                    if ranked && !my.intersection(x).is_empty() {
                        assert_eq!(mx, my.intersection(x), "EQ {r}");
                    }
                }
            }
        }
    }

    fn report(name: &str, classes: &[SupportClass]) -> SupportReport {
        SupportReport {
            analogy: name.into(),
            source: "S".into(),
            target: "T".into(),
            items: classes
                .iter()
                .enumerate()
                .map(|(i, &class)| Classified {
                    formula: Formula::ground("P", [format!("c{i}")]),
                    class,
                    translated: None,
                    source_value: None,
                    target_value: None,
                    reason: None,
                })
                .collect(),
        }
    }

    use SupportClass::{Negative as N, Open as O, Positive as P};

    #[test]
    fn dominance_examples() {
        let same = dominance_preference(&[report("a", &[P, N]), report("b", &[P, N])]).unwrap();
        assert_eq!(same.edge_count(), 0);
        let r = dominance_preference(&[report("a", &[P, P]), report("b", &[P, O])]).unwrap();
        assert_eq!(r.edge_names(), vec![("a", "b")]);
        let mismatched = report("c", &[P]);
        assert_eq!(
            dominance_preference(&[report("a", &[P, P]), mismatched]).unwrap_err(),
            PreferenceError::MismatchedWorkingSet("c".into())
        );
    }

    #[test]
    fn count_examples() {
        let r = count_preference(
            &[
                report("a", &[P, P]),
                report("b", &[P, O]),
                report("c", &[O, O]),
            ],
            Weights::default(),
        )
        .unwrap();
        assert_eq!(r.edge_count(), 3);
        assert!(is_ranked(&r));
        let tie = count_preference(
            &[report("a", &[P, O]), report("b", &[O, P])],
            Weights::default(),
        )
        .unwrap();
        assert_eq!(tie.edge_count(), 0);
        assert!(is_ranked(&tie));
        let zero = Weights {
            positive: Ratio::zero(),
            ..Weights::default()
        };
        assert_eq!(
            count_preference(&[], zero).unwrap_err(),
            PreferenceError::NonPositiveWeight
        );
    }

    fn class() -> impl Strategy<Value = SupportClass> {
        prop_oneof![
            Just(SupportClass::Positive),
            Just(SupportClass::Negative),
            Just(SupportClass::Open),
            Just(SupportClass::NotApplicable),
        ]
    }

    proptest! {
        #[test]
        fn dominance_implies_count(
            rows in prop::collection::vec(prop::collection::vec(class(), 5), 3),
            wp in 1i64..6, wpd in 1i64..4, wn in 1i64..6, wnd in 1i64..4,
        ) {
            let reports: Vec<_> = rows.iter().enumerate()
                .map(|(i, r)| report(&format!("r{i}"), r)).collect();
            let w = Weights { positive: Ratio::new(wp, wpd), negative: Ratio::new(wn, wnd) };
            let dom = dominance_preference(&reports).unwrap();
            let cnt = count_preference(&reports, w).unwrap();
            prop_assert!(is_ranked(&cnt));
            prop_assert!(is_transitive(&dom));
            for (x, y) in dom.edges() {
                prop_assert!(!dom.prefers(y, x));
                let (rx, ry) = (count_rank(&reports[x], w), count_rank(&reports[y], w));
                prop_assert!(rx < ry);
                prop_assert!(cnt.prefers(x, y));
            }
        }
    }
}
