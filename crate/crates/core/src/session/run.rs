//! Commands over a validated session, rendered as text or JSON.
//!
//! JSON objects keep their keys in declaration order and arrays follow the
//! working-set or analogy order, so output is byte-stable across runs.

use std::fmt::Write;

use serde::Serialize;

use super::Session;
use crate::analogy::{augment, SupportClass, SupportReport};
use crate::entailment::{best, entail, Conjecture, PreferenceSpec, VerdictStatus};
use crate::formula::Formula;
use crate::repcheck::{sweep, RelationClass, RepcheckError, SweepMode, SweepResult};
use crate::truth::TruthValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Classify,
    Report,
    Best,
    Entail,
    Score,
}

/// A rendered command result. `ok` is false when the command found an error
/// (a rejected score) or a sweep violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub json: String,
    pub ok: bool,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn strings(fs: Vec<&Formula>) -> Vec<String> {
    fs.into_iter().map(Formula::to_string).collect()
}

fn describe_preference(p: &PreferenceSpec) -> String {
    match p {
        PreferenceSpec::Dominance => "dominance".into(),
        PreferenceSpec::Counts(w) => format!("counts({}, {})", w.positive, w.negative),
        PreferenceSpec::Explicit(_) => "explicit".into(),
    }
}

#[derive(Serialize)]
struct CheckOut {
    source: String,
    target: String,
    analogies: Vec<String>,
    working_set: usize,
    queries: usize,
    preference: String,
    closure: bool,
}

#[derive(Serialize)]
struct UntranslatableOut {
    formula: String,
    reason: String,
}

#[derive(Serialize)]
struct ConjectureOut {
    formula: String,
    translated: String,
    value: TruthValue,
}

#[derive(Serialize)]
struct ReportOut {
    analogy: String,
    source: String,
    target: String,
    positive: Vec<String>,
    negative: Vec<String>,
    open: Vec<String>,
    not_applicable: Vec<String>,
    untranslatable: Vec<UntranslatableOut>,
    conjectures: Vec<ConjectureOut>,
}

impl From<&SupportReport> for ReportOut {
    fn from(r: &SupportReport) -> Self {
        ReportOut {
            analogy: r.analogy.clone(),
            source: r.source.clone(),
            target: r.target.clone(),
            positive: strings(r.positive()),
            negative: strings(r.negative()),
            open: strings(r.open()),
            not_applicable: strings(r.not_applicable()),
            untranslatable: r
                .of_class(SupportClass::Untranslatable)
                .map(|c| UntranslatableOut {
                    formula: c.formula.to_string(),
                    reason: c.reason.clone().unwrap_or_default(),
                })
                .collect(),
            conjectures: r
                .of_class(SupportClass::Open)
                .map(|c| ConjectureOut {
                    formula: c.formula.to_string(),
                    translated: c
                        .translated
                        .as_ref()
                        .map(Formula::to_string)
                        .unwrap_or_default(),
                    value: c.source_value.unwrap_or_default(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    reports: Vec<ReportOut>,
}

#[derive(Serialize)]
struct PairOut {
    source: String,
    target: String,
}

#[derive(Serialize)]
struct PlausibleOut {
    source: String,
    target: String,
    value: TruthValue,
}

#[derive(Serialize)]
struct AugmentedOut {
    analogy: String,
    positive: Vec<PairOut>,
    negative_a: Vec<PairOut>,
    negative_b: Vec<PairOut>,
    plausible: Vec<PlausibleOut>,
}

#[derive(Serialize)]
struct ReportsOut {
    reports: Vec<AugmentedOut>,
}

#[derive(Serialize)]
struct BestOut {
    preference: String,
    edges: Vec<[String; 2]>,
    best: Vec<String>,
    warning: Option<String>,
}

#[derive(Serialize)]
struct SupportOut {
    analogy: String,
    conjecture: Option<TruthValue>,
    from: Option<String>,
}

#[derive(Serialize)]
struct VerdictOut {
    query: String,
    status: &'static str,
    value: Option<TruthValue>,
    support: Vec<SupportOut>,
    warning: Option<String>,
}

#[derive(Serialize)]
struct EntailOut {
    best: Vec<String>,
    verdicts: Vec<VerdictOut>,
}

#[derive(Serialize)]
struct ScoreRow {
    analogy: String,
    n: u64,
    r: u64,
    s: u64,
    p: Option<String>,
    error: Option<String>,
}

#[derive(Serialize)]
struct ScoreOut {
    rule: &'static str,
    scores: Vec<ScoreRow>,
}

#[derive(Serialize)]
struct ViolationOut {
    subject: String,
    property: Option<&'static str>,
    x: Option<Vec<String>>,
    y: Option<Vec<String>>,
}

#[derive(Serialize)]
struct RepcheckOut {
    mode: &'static str,
    class: &'static str,
    n: usize,
    examined: usize,
    in_scope: usize,
    transitive: usize,
    represented: Option<usize>,
    passed: bool,
    violations: Vec<ViolationOut>,
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(", ")
    }
}

pub fn run(session: &Session, command: Command) -> Output {
    match command {
        Command::Check => check(session),
        Command::Classify => classify_cmd(session),
        Command::Report => report_cmd(session),
        Command::Best => best_cmd(session),
        Command::Entail => entail_cmd(session),
        Command::Score => score_cmd(session),
    }
}

fn check(session: &Session) -> Output {
    let space = &session.space;
    let out = CheckOut {
        source: session.source.name().to_string(),
        target: session.target.name().to_string(),
        analogies: space
            .analogies()
            .iter()
            .map(|a| a.name().to_string())
            .collect(),
        working_set: space.working_set().len(),
        queries: session.queries.len(),
        preference: describe_preference(&session.preference),
        closure: session.closure,
    };
    let text = format!(
        "ok: source {}, target {}, {} analogies ({}), {} working-set formulas, {} queries, preference {}, closure {}\n",
        out.source,
        out.target,
        out.analogies.len(),
        list(&out.analogies),
        out.working_set,
        out.queries,
        out.preference,
        if out.closure { "on" } else { "off" },
    );
    Output {
        json: to_json(&out),
        text,
        ok: true,
    }
}

fn classify_cmd(session: &Session) -> Output {
    let reports: Vec<ReportOut> = session
        .space
        .reports()
        .iter()
        .map(ReportOut::from)
        .collect();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "analogy {} ({} -> {})", r.analogy, r.source, r.target);
        let _ = writeln!(text, "  positive:       {}", list(&r.positive));
        let _ = writeln!(text, "  negative:       {}", list(&r.negative));
        let _ = writeln!(text, "  open:           {}", list(&r.open));
        let _ = writeln!(text, "  not applicable: {}", list(&r.not_applicable));
        for u in &r.untranslatable {
            let _ = writeln!(text, "  untranslatable: {} ({})", u.formula, u.reason);
        }
        for c in &r.conjectures {
            let _ = writeln!(
                text,
                "  conjecture:     {} = {} (from {})",
                c.translated, c.value, c.formula
            );
        }
    }
    Output {
        json: to_json(&ClassifyOut { reports }),
        text,
        ok: true,
    }
}

fn report_cmd(session: &Session) -> Output {
    let pairs = |ps: Vec<(Formula, Formula)>| -> Vec<PairOut> {
        ps.into_iter()
            .map(|(s, t)| PairOut {
                source: s.to_string(),
                target: t.to_string(),
            })
            .collect()
    };
    let reports: Vec<AugmentedOut> = session
        .space
        .reports()
        .iter()
        .map(|r| {
            let a = augment(r);
            AugmentedOut {
                analogy: a.analogy,
                positive: pairs(a.positive_pairs),
                negative_a: pairs(a.negative_pairs_a),
                negative_b: pairs(a.negative_pairs_b),
                plausible: a
                    .plausible
                    .into_iter()
                    .map(|(s, t, value)| PlausibleOut {
                        source: s.to_string(),
                        target: t.to_string(),
                        value,
                    })
                    .collect(),
            }
        })
        .collect();
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "analogy {}", r.analogy);
        for p in &r.positive {
            let _ = writeln!(text, "  positive    {}  ~  {}", p.source, p.target);
        }
        for p in &r.negative_a {
            let _ = writeln!(text, "  negative A  {}  but not  {}", p.source, p.target);
        }
        for p in &r.negative_b {
            let _ = writeln!(text, "  negative B  not {}  but  {}", p.source, p.target);
        }
        for p in &r.plausible {
            let _ = writeln!(
                text,
                "  plausible   {} = {}  so  {} = {}",
                p.source, p.value, p.target, p.value
            );
        }
    }
    Output {
        json: to_json(&ReportsOut { reports }),
        text,
        ok: true,
    }
}

fn best_cmd(session: &Session) -> Output {
    let rel = session.space.preference();
    let best = best(&session.space);
    let warning = (best.is_empty() && !rel.is_empty()).then(|| {
        "no best analogy: every analogy is beaten, so the preference has a cycle".to_string()
    });
    let out = BestOut {
        preference: describe_preference(&session.preference),
        edges: rel
            .edge_names()
            .into_iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect(),
        best,
        warning,
    };
    let mut text = format!("preference: {}\n", out.preference);
    for [a, b] in &out.edges {
        let _ = writeln!(text, "  {a} ⊑ {b}");
    }
    let _ = writeln!(text, "best: {}", list(&out.best));
    if let Some(w) = &out.warning {
        let _ = writeln!(text, "warning: {w}");
    }
    Output {
        json: to_json(&out),
        text,
        ok: true,
    }
}

fn entail_cmd(session: &Session) -> Output {
    let best_names = best(&session.space);
    let verdicts: Vec<VerdictOut> = session
        .queries
        .iter()
        .map(|q| {
            let v = entail(&session.space, q).expect("queries are validated against the target");
            let (status, value) = match v.status {
                VerdictStatus::Entailed(t) => ("entailed", Some(t)),
                VerdictStatus::Conflicted => ("conflicted", None),
                VerdictStatus::NoSupport => ("no_support", None),
                VerdictStatus::SettledInTarget(t) => ("settled_in_target", Some(t)),
            };
            VerdictOut {
                query: q.to_string(),
                status,
                value,
                support: v
                    .support
                    .into_iter()
                    .map(|row| SupportOut {
                        analogy: row.analogy,
                        conjecture: row.conjecture.value(),
                        from: match row.conjecture {
                            Conjecture::Analogical { from, .. } => Some(from.to_string()),
                            _ => None,
                        },
                    })
                    .collect(),
                warning: v.warning,
            }
        })
        .collect();
    let mut text = format!("best: {}\n", list(&best_names));
    for v in &verdicts {
        let value = v.value.map(|t| format!(" {t}")).unwrap_or_default();
        let _ = writeln!(text, "query {}: {}{value}", v.query, v.status);
        for s in &v.support {
            match (&s.conjecture, &s.from) {
                (Some(c), Some(from)) => {
                    let _ = writeln!(text, "  {}: {c} (from {from})", s.analogy);
                }
                _ => {
                    let _ = writeln!(text, "  {}: no conjecture", s.analogy);
                }
            }
        }
        if let Some(w) = &v.warning {
            let _ = writeln!(text, "  warning: {w}");
        }
    }
    Output {
        json: to_json(&EntailOut {
            best: best_names,
            verdicts,
        }),
        text,
        ok: true,
    }
}

fn score_cmd(session: &Session) -> Output {
    let scores: Vec<ScoreRow> = session
        .space
        .reports()
        .iter()
        .map(|r| {
            let a = augment(r);
            let (n, rr, s) = (
                a.positive_pairs.len() as u64,
                a.negative_pairs_a.len() as u64,
                a.negative_pairs_b.len() as u64,
            );
            let (p, error) = match a.score() {
                Ok(sc) => (Some(sc.p.to_string()), None),
                Err(e) => (None, Some(e.to_string())),
            };
            ScoreRow {
                analogy: a.analogy,
                n,
                r: rr,
                s,
                p,
                error,
            }
        })
        .collect();
    let ok = scores.iter().all(|s| s.error.is_none());
    let mut text = String::from("straight rule p = n/(n+r+s+1) (baseline)\n");
    for s in &scores {
        let result = match (&s.p, &s.error) {
            (Some(p), _) => format!("p = {p}"),
            (_, Some(e)) => format!("rejected: {e}"),
            _ => unreachable!(),
        };
        let _ = writeln!(
            text,
            "  {}: n={} r={} s={}  {result}",
            s.analogy, s.n, s.r, s.s
        );
    }
    Output {
        json: to_json(&ScoreOut {
            rule: "n/(n+r+s+1)",
            scores,
        }),
        text,
        ok,
    }
}

pub fn render_sweep(result: &SweepResult) -> Output {
    let out = RepcheckOut {
        mode: result.mode.as_str(),
        class: result.class.as_str(),
        n: result.n,
        examined: result.examined,
        in_scope: result.in_scope,
        transitive: result.transitive,
        represented: (result.mode == SweepMode::Completeness).then_some(result.represented),
        passed: result.passed(),
        violations: result
            .violations
            .iter()
            .map(|v| ViolationOut {
                subject: v.subject.clone(),
                property: v.property.map(|p| p.as_str()),
                x: v.x.clone(),
                y: v.y.clone(),
            })
            .collect(),
    };
    let mut text = format!(
        "{} sweep, class {}, n = {}: examined {}, in scope {}, transitive {}",
        out.mode, out.class, out.n, out.examined, out.in_scope, out.transitive
    );
    if let Some(r) = out.represented {
        let _ = write!(text, ", represented {r}");
    }
    let _ = writeln!(
        text,
        "\n{}: {} violation(s)",
        if out.passed { "PASS" } else { "FAIL" },
        out.violations.len()
    );
    for v in &out.violations {
        let _ = write!(text, "  {}", v.subject);
        if let Some(p) = v.property {
            let _ = write!(text, "  {p}");
        }
        if let Some(x) = &v.x {
            let _ = write!(text, "  X={{{}}}", x.join(","));
        }
        if let Some(y) = &v.y {
            let _ = write!(text, "  Y={{{}}}", y.join(","));
        }
        text.push('\n');
    }
    Output {
        json: to_json(&out),
        text,
        ok: out.passed,
    }
}

/// Runs a sweep; independent of any session.
pub fn run_repcheck(
    mode: SweepMode,
    n: usize,
    class: RelationClass,
) -> Result<Output, RepcheckError> {
    Ok(render_sweep(&sweep(mode, n, class)?))
}
