//! Condition reports, catalog scans and class-triple counts as serializable
//! documents. Every document carries a `schemaVersion`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::prime_divisors;
use crate::catalog::{CatalogEntry, ExpectedFacts};
use crate::chartable::{match_classes, CharacterTable, ClassMatching};
use crate::conditions::{
    collision_to_ppo_triple, find_3po_triple, find_3ppo_triple, find_3ss_witness,
    find_kaplan_levy_triple, find_thompson_triple, ppo_triple_to_sylow_witness, survey_3ss,
    PrimeTripleSurvey, SearchMode, SylowWitness, TripleWitness,
};
use crate::definition::GroupDefinition;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::{conjugacy_classes, is_simple, is_solvable, ConjugacyClass};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TripleSummary {
    pub present: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<[u64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub odd_prime: Option<u64>,
}

impl TripleSummary {
    pub fn from_witness(w: Option<&TripleWitness>) -> Self {
        match w {
            None => TripleSummary {
                present: false,
                orders: None,
                elements: None,
                odd_prime: None,
            },
            Some(t) => TripleSummary {
                present: true,
                orders: Some(t.orders),
                elements: Some([t.x.to_string(), t.y.to_string(), t.z.to_string()]),
                odd_prime: t.odd_prime(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SylowSummary {
    pub primes: [u64; 3],
    pub subgroup_orders: [usize; 3],
    pub product_set_size: usize,
    pub full_product: usize,
    pub collision: [[String; 3]; 2],
}

impl SylowSummary {
    pub fn from_witness(w: &SylowWitness) -> Self {
        let (a, b) = &w.collision;
        SylowSummary {
            primes: w.primes,
            subgroup_orders: w.subgroup_orders(),
            product_set_size: w.product_set_size,
            full_product: w.full_product(),
            collision: [
                [a[0].to_string(), a[1].to_string(), a[2].to_string()],
                [b[0].to_string(), b[1].to_string(), b[2].to_string()],
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ThreeSsSummary {
    pub present: bool,
    pub mode: String,
    /// One entry per prime triple, counting the Sylow choices examined.
    pub surveys: Vec<PrimeTripleSurvey>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SylowSummary>,
    /// 3PPO triple extracted from the witness collision.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_triple: Option<TripleSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolvableSummary {
    pub solvable: bool,
    pub derived_series: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionReport {
    pub group_name: String,
    pub order: usize,
    pub prime_divisors: Vec<u64>,
    pub solvable: SolvableSummary,
    pub simple: bool,
    pub thompson: TripleSummary,
    pub kaplan_levy: TripleSummary,
    pub three_po: TripleSummary,
    pub three_ppo: TripleSummary,
    pub three_ss: ThreeSsSummary,
    pub notes: Vec<String>,
    pub consistency_flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl ConditionReport {
    /// A solvable 3PPO group or a nonsolvable non-3PPO group.
    pub fn counterexample(&self) -> Option<String> {
        match (self.solvable.solvable, self.three_ppo.present) {
            (true, true) => Some(format!("{} is solvable and 3PPO", self.group_name)),
            (false, false) => Some(format!("{} is nonsolvable but not 3PPO", self.group_name)),
            _ => None,
        }
    }
}

pub fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Fast => "fast",
        SearchMode::Exhaustive => "exhaustive",
    }
}

struct Timer {
    enabled: bool,
    timings: BTreeMap<String, f64>,
}

impl Timer {
    fn time<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.timings
                .insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

/// Evaluates every condition on `g` and cross-checks the expected
/// implications. Timings are only recorded when requested, so reports are
/// otherwise byte-identical across runs.
pub fn analyze(g: &FiniteGroup, mode: SearchMode, with_timings: bool) -> ConditionReport {
    let mut timer = Timer {
        enabled: with_timings,
        timings: BTreeMap::new(),
    };
    let primes = prime_divisors(g.order() as u64);
    let solv = timer.time("solvable", || is_solvable(g));
    let classes = timer.time("classes", || conjugacy_classes(g));
    let simple = timer.time("simple", || is_simple(g, &classes));
    let thompson = timer.time("thompson", || find_thompson_triple(g));
    let kl = timer.time("kaplanLevy", || find_kaplan_levy_triple(g));
    let po = timer.time("threePo", || find_3po_triple(g));
    let ppo = timer.time("threePpo", || find_3ppo_triple(g));
    let ss = timer.time("threeSs", || survey_3ss(g, mode));

    let mut flags = Vec::new();
    for (name, w) in [
        ("thompson", &thompson),
        ("kaplan-levy", &kl),
        ("3po", &po),
        ("3ppo", &ppo),
    ] {
        if let Some(Err(e)) = w.as_ref().map(TripleWitness::validate) {
            flags.push(format!("{name} witness fails revalidation: {e}"));
        }
    }
    let derived = match &ss.witness {
        Some(w) => {
            if let Err(e) = w.validate(g) {
                flags.push(format!("3ss witness fails revalidation: {e}"));
            }
            match collision_to_ppo_triple(w) {
                Ok(t) => Some(t),
                Err(e) => {
                    flags.push(format!("3ss collision does not yield a 3ppo triple: {e}"));
                    None
                }
            }
        }
        None => None,
    };
    if let Some(t) = &ppo {
        if let Err(e) = ppo_triple_to_sylow_witness(g, t) {
            flags.push(format!("3ppo triple does not yield a 3ss witness: {e}"));
        }
    }
    let solvable = solv.solvable;
    let implications = [
        (po.is_some() && ppo.is_none(), "3po holds but 3ppo fails"),
        (
            ppo.is_some() && thompson.is_none(),
            "3ppo holds but no thompson triple",
        ),
        (
            thompson.is_some() == solvable,
            "thompson triple presence disagrees with nonsolvability",
        ),
        (
            kl.is_some() == solvable,
            "kaplan-levy triple presence disagrees with nonsolvability",
        ),
        (
            ppo.is_none() && ss.witness.is_some(),
            "3ss holds but 3ppo fails",
        ),
        (
            mode == SearchMode::Exhaustive && ppo.is_some() && ss.witness.is_none(),
            "3ppo holds but 3ss fails",
        ),
    ];
    flags.extend(
        implications
            .iter()
            .filter(|(bad, _)| *bad)
            .map(|(_, m)| m.to_string()),
    );

    let mut notes = Vec::new();
    if primes.len() < 3 {
        notes.push(format!(
            "|G| has {} distinct prime divisor(s): 3PO, 3PPO and 3SS are false by definition",
            primes.len()
        ));
    }
    if mode == SearchMode::Fast {
        notes.push("3SS checked on one Sylow subgroup per prime only (fast mode)".into());
        if ppo.is_some() && ss.witness.is_none() {
            notes.push("3SS not found among the Sylow subgroups tried; inconclusive".into());
        }
    }

    ConditionReport {
        group_name: g.name().to_string(),
        order: g.order(),
        prime_divisors: primes,
        solvable: SolvableSummary {
            solvable,
            derived_series: solv.series,
        },
        simple,
        thompson: TripleSummary::from_witness(thompson.as_ref()),
        kaplan_levy: TripleSummary::from_witness(kl.as_ref()),
        three_po: TripleSummary::from_witness(po.as_ref()),
        three_ppo: TripleSummary::from_witness(ppo.as_ref()),
        three_ss: ThreeSsSummary {
            present: ss.witness.is_some(),
            mode: mode_name(mode).to_string(),
            surveys: ss.triples,
            witness: ss.witness.as_ref().map(SylowSummary::from_witness),
            derived_triple: derived
                .as_ref()
                .map(|t| TripleSummary::from_witness(Some(t))),
        },
        notes,
        consistency_flags: flags,
        timings_ms: with_timings.then_some(timer.timings),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeDocument {
    pub schema_version: u32,
    pub report: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ConditionReport>,
    pub expected_mismatches: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl ScanRow {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.expected_mismatches.is_empty()
            && self.counterexample.is_none()
            && self
                .report
                .as_ref()
                .is_some_and(|r| r.consistency_flags.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanDocument {
    pub schema_version: u32,
    pub mode: String,
    pub rows: Vec<ScanRow>,
    pub alarms: Vec<String>,
    pub passed: bool,
}

/// A definition to scan plus optional facts to check it against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInput {
    #[serde(flatten)]
    pub definition: GroupDefinition,
    #[serde(default)]
    pub expected: Option<ExpectedFacts>,
}

impl From<CatalogEntry> for ScanInput {
    fn from(e: CatalogEntry) -> Self {
        ScanInput {
            definition: e.definition,
            expected: Some(e.expected),
        }
    }
}

pub fn scan_row(input: &ScanInput, cap: usize, mode: SearchMode, with_timings: bool) -> ScanRow {
    let name = input.definition.name.clone();
    let g = match input.definition.build(cap) {
        Ok(g) => g,
        Err(e) => {
            return ScanRow {
                name,
                error: Some(e.to_string()),
                report: None,
                expected_mismatches: Vec::new(),
                counterexample: None,
            }
        }
    };
    let report = analyze(&g, mode, with_timings);
    let mut mismatches = Vec::new();
    if let Some(exp) = &input.expected {
        if exp.order != report.order {
            mismatches.push(format!("order {} (expected {})", report.order, exp.order));
        }
        if exp.solvable != report.solvable.solvable {
            mismatches.push(format!(
                "solvable={} (expected {})",
                report.solvable.solvable, exp.solvable
            ));
        }
        if exp.simple != report.simple {
            mismatches.push(format!(
                "simple={} (expected {})",
                report.simple, exp.simple
            ));
        }
    }
    ScanRow {
        name,
        error: None,
        counterexample: report.counterexample(),
        report: Some(report),
        expected_mismatches: mismatches,
    }
}

pub fn scan(
    inputs: &[ScanInput],
    cap: usize,
    mode: SearchMode,
    with_timings: bool,
) -> ScanDocument {
    let rows = inputs
        .iter()
        .map(|i| scan_row(i, cap, mode, with_timings))
        .collect();
    assemble_scan(rows, mode)
}

/// Collects alarms and the overall verdict for already computed rows.
pub fn assemble_scan(rows: Vec<ScanRow>, mode: SearchMode) -> ScanDocument {
    let alarms = rows
        .iter()
        .filter_map(|r| r.counterexample.clone())
        .collect();
    ScanDocument {
        schema_version: SCHEMA_VERSION,
        mode: mode_name(mode).to_string(),
        passed: rows.iter().all(ScanRow::passed),
        rows,
        alarms,
    }
}

/// Condition names accepted by `check`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "thompson")]
    Thompson,
    #[serde(rename = "kl")]
    KaplanLevy,
    #[serde(rename = "3po")]
    ThreePo,
    #[serde(rename = "3ppo")]
    ThreePpo,
    #[serde(rename = "3ss")]
    ThreeSs,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Thompson,
        Condition::KaplanLevy,
        Condition::ThreePo,
        Condition::ThreePpo,
        Condition::ThreeSs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Thompson => "thompson",
            Condition::KaplanLevy => "kl",
            Condition::ThreePo => "3po",
            Condition::ThreePpo => "3ppo",
            Condition::ThreeSs => "3ss",
        }
    }

    fn absence_message(self) -> &'static str {
        match self {
            Condition::Thompson => "no triple of pairwise coprime orders",
            Condition::KaplanLevy => "no triple of 2-power, odd p-power and coprime orders",
            Condition::ThreePo => "no triple of distinct prime orders",
            Condition::ThreePpo => "no triple of distinct prime-power orders",
            Condition::ThreeSs => "no Sylow subgroups with a smaller product set",
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Condition::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown condition {s:?} (expected thompson, kl, 3po, 3ppo or 3ss)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckDocument {
    pub schema_version: u32,
    pub group_name: String,
    pub order: usize,
    pub condition: Condition,
    pub holds: bool,
    /// False only for a failed 3SS search in fast mode.
    pub conclusive: bool,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow: Option<SylowSummary>,
}

pub fn check_condition(g: &FiniteGroup, condition: Condition, mode: SearchMode) -> CheckDocument {
    let mut doc = CheckDocument {
        schema_version: SCHEMA_VERSION,
        group_name: g.name().to_string(),
        order: g.order(),
        condition,
        holds: false,
        conclusive: true,
        message: condition.absence_message().to_string(),
        triple: None,
        sylow: None,
    };
    let triple = match condition {
        Condition::Thompson => find_thompson_triple(g),
        Condition::KaplanLevy => find_kaplan_levy_triple(g),
        Condition::ThreePo => find_3po_triple(g),
        Condition::ThreePpo => find_3ppo_triple(g),
        Condition::ThreeSs => {
            match find_3ss_witness(g, mode) {
                Some(w) => {
                    doc.holds = true;
                    doc.message = format!(
                        "|P1P2P3| = {} < {} for primes ({}, {}, {})",
                        w.product_set_size,
                        w.full_product(),
                        w.primes[0],
                        w.primes[1],
                        w.primes[2]
                    );
                    doc.sylow = Some(SylowSummary::from_witness(&w));
                    doc.triple = collision_to_ppo_triple(&w)
                        .ok()
                        .map(|t| TripleSummary::from_witness(Some(&t)));
                }
                None => {
                    doc.conclusive = mode == SearchMode::Exhaustive
                        || prime_divisors(g.order() as u64).len() < 3;
                    if !doc.conclusive {
                        doc.message
                            .push_str(" among the Sylow subgroups tried (fast mode)");
                    }
                }
            }
            return doc;
        }
    };
    if let Some(t) = triple {
        doc.holds = true;
        doc.message = format!("orders ({}, {}, {})", t.orders[0], t.orders[1], t.orders[2]);
        doc.triple = Some(TripleSummary::from_witness(Some(&t)));
    }
    doc
}

pub fn render_check_text(doc: &CheckDocument) -> String {
    let mut out = format!(
        "{} {}: {}\n",
        doc.group_name,
        doc.condition.name(),
        if doc.holds {
            "holds"
        } else if doc.conclusive {
            "fails"
        } else {
            "inconclusive"
        }
    );
    if let Some(w) = &doc.sylow {
        out.push_str(&format!(
            "primes ({}, {}, {}), Sylow orders ({}, {}, {})\n|P1P2P3| = {} < {}\n",
            w.primes[0],
            w.primes[1],
            w.primes[2],
            w.subgroup_orders[0],
            w.subgroup_orders[1],
            w.subgroup_orders[2],
            w.product_set_size,
            w.full_product
        ));
        out.push_str(&format!(
            "{} * {} * {} = {} * {} * {}\n",
            w.collision[0][0],
            w.collision[0][1],
            w.collision[0][2],
            w.collision[1][0],
            w.collision[1][1],
            w.collision[1][2]
        ));
    } else if !doc.holds {
        out.push_str(&doc.message);
        out.push('\n');
    }
    if let Some(t) = &doc.triple {
        out.push_str(&triple_line("witness", t));
        out.push('\n');
    }
    out
}

/// Resolved class selector: computed class index plus the matched table class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedClass {
    pub class: usize,
    pub table_class: Option<usize>,
}

/// Resolves a selector against table labels first, then computed labels,
/// then as a bare element order when exactly one class has that order.
pub fn resolve_selector(
    selector: &str,
    classes: &[ConjugacyClass],
    table: Option<(&CharacterTable, &ClassMatching)>,
) -> Result<ResolvedClass> {
    let sel = selector.trim();
    let to_table = |c: usize| {
        table.map(|(_, m)| {
            m.table_to_class
                .iter()
                .position(|&x| x == c)
                .expect("matching is a bijection")
        })
    };
    if let Some((t, m)) = table {
        if let Some(ti) = t.class_index(sel) {
            return Ok(ResolvedClass {
                class: m.table_to_class[ti],
                table_class: Some(ti),
            });
        }
    }
    if let Some(c) = classes.iter().position(|c| c.label == sel) {
        return Ok(ResolvedClass {
            class: c,
            table_class: to_table(c),
        });
    }
    if let Ok(order) = sel.parse::<u64>() {
        let hits: Vec<usize> = (0..classes.len())
            .filter(|&c| classes[c].element_order == order)
            .collect();
        return match hits.as_slice() {
            [c] => Ok(ResolvedClass {
                class: *c,
                table_class: to_table(*c),
            }),
            [] => Err(Error::UnknownClass(format!(
                "{sel} (no class of that order)"
            ))),
            many => {
                let labels: Vec<&str> = many.iter().map(|&c| classes[c].label.as_str()).collect();
                Err(Error::UnknownClass(format!(
                    "{sel} is ambiguous, use one of {}",
                    labels.join(", ")
                )))
            }
        };
    }
    Err(Error::UnknownClass(sel.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchingSummary {
    pub ambiguous: bool,
    /// Table labels that the power maps leave interchangeable.
    pub interchangeable: Vec<String>,
    /// Table label to computed label.
    pub assignment: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountDocument {
    pub schema_version: u32,
    pub group_name: String,
    pub classes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_classes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_sum: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<MatchingSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Brute,
    Character,
    Both,
}

pub fn count_triples(
    g: &FiniteGroup,
    selectors: &[String; 3],
    method: CountMethod,
    table: Option<&CharacterTable>,
) -> Result<CountDocument> {
    let classes = conjugacy_classes(g);
    let matching = match table {
        Some(t) => Some(match_classes(g, &classes, t)?),
        None if method != CountMethod::Brute => {
            return Err(Error::Parse("character counting needs --table".into()))
        }
        None => None,
    };
    let ctx = table.zip(matching.as_ref());
    let resolved = [
        resolve_selector(&selectors[0], &classes, ctx)?,
        resolve_selector(&selectors[1], &classes, ctx)?,
        resolve_selector(&selectors[2], &classes, ctx)?,
    ];

    let brute = match method {
        CountMethod::Brute | CountMethod::Both => Some(crate::conditions::brute_count_triples(
            g,
            &classes[resolved[0].class],
            &classes[resolved[1].class],
            &classes[resolved[2].class],
        )?),
        CountMethod::Character => None,
    };
    let (character, character_sum) = match (method, table) {
        (CountMethod::Character | CountMethod::Both, Some(t)) => {
            let [i, j, k] = resolved.map(|r| r.table_class.expect("table present"));
            (
                Some(t.structure_constant_count(i, j, k)?),
                Some(t.character_sum(i, j, k)?.to_string()),
            )
        }
        _ => (None, None),
    };
    let matching_summary = ctx.map(|(t, m)| MatchingSummary {
        ambiguous: m.is_ambiguous(),
        interchangeable: m
            .ambiguous_classes()
            .into_iter()
            .map(|i| t.classes[i].label.clone())
            .collect(),
        assignment: t
            .classes
            .iter()
            .zip(&m.table_to_class)
            .map(|(tc, &c)| (tc.label.clone(), classes[c].label.clone()))
            .collect(),
    });
    Ok(CountDocument {
        schema_version: SCHEMA_VERSION,
        group_name: g.name().to_string(),
        classes: resolved
            .iter()
            .map(|r| classes[r.class].label.clone())
            .collect(),
        table_classes: table.map(|t| {
            resolved
                .iter()
                .map(|r| {
                    t.classes[r.table_class.expect("table present")]
                        .label
                        .clone()
                })
                .collect()
        }),
        agree: brute.zip(character).map(|(b, c)| b == c),
        brute,
        character,
        character_sum,
        matching: matching_summary,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn triple_line(label: &str, t: &TripleSummary) -> String {
    match (&t.orders, &t.elements) {
        (Some(o), Some(e)) => {
            let mut line = format!(
                "{label:<12} yes  orders ({}, {}, {})  x = {}  y = {}  z = {}",
                o[0], o[1], o[2], e[0], e[1], e[2]
            );
            if let Some(p) = t.odd_prime {
                line.push_str(&format!("  p = {p}"));
            }
            line
        }
        _ => format!("{label:<12} no"),
    }
}

pub fn render_report_text(r: &ConditionReport) -> String {
    let mut out = String::new();
    let primes: Vec<String> = r.prime_divisors.iter().map(u64::to_string).collect();
    out.push_str(&format!(
        "group        {}  (order {}, primes {})\n",
        r.group_name,
        r.order,
        primes.join(", ")
    ));
    let series: Vec<String> = r
        .solvable
        .derived_series
        .iter()
        .map(usize::to_string)
        .collect();
    out.push_str(&format!(
        "solvable     {}  derived series {}\n",
        yes_no(r.solvable.solvable),
        series.join(" > ")
    ));
    out.push_str(&format!("simple       {}\n", yes_no(r.simple)));
    out.push_str(&triple_line("thompson", &r.thompson));
    out.push('\n');
    out.push_str(&triple_line("kaplan-levy", &r.kaplan_levy));
    out.push('\n');
    out.push_str(&triple_line("3PO", &r.three_po));
    out.push('\n');
    out.push_str(&triple_line("3PPO", &r.three_ppo));
    out.push('\n');
    match &r.three_ss.witness {
        Some(w) => out.push_str(&format!(
            "3SS          yes  primes ({}, {}, {})  |P1P2P3| = {} < {}\n",
            w.primes[0], w.primes[1], w.primes[2], w.product_set_size, w.full_product
        )),
        None => out.push_str("3SS          no\n"),
    }
    for s in &r.three_ss.surveys {
        out.push_str(&format!(
            "  primes ({}, {}, {}): {} of {} Sylow choices give a smaller product set ({})\n",
            s.primes[0], s.primes[1], s.primes[2], s.strict, s.choices, r.three_ss.mode
        ));
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    if r.consistency_flags.is_empty() {
        out.push_str("consistency  ok\n");
    } else {
        for f in &r.consistency_flags {
            out.push_str(&format!("INCONSISTENT: {f}\n"));
        }
    }
    if let Some(t) = &r.timings_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k} {v:.1}ms")).collect();
        out.push_str(&format!("timings      {}\n", parts.join(", ")));
    }
    out
}

pub fn render_count_text(doc: &CountDocument) -> String {
    let mut out = format!("{}  classes {}", doc.group_name, doc.classes.join(", "));
    if let Some(tc) = &doc.table_classes {
        out.push_str(&format!("  (table {})", tc.join(", ")));
    }
    out.push('\n');
    if let Some(b) = doc.brute {
        out.push_str(&format!("brute      {b}\n"));
    }
    if let Some(c) = doc.character {
        out.push_str(&format!("character  {c}"));
        if let Some(s) = &doc.character_sum {
            out.push_str(&format!("  (character sum {s})"));
        }
        out.push('\n');
    }
    match doc.agree {
        Some(true) => out.push_str("agree\n"),
        Some(false) => out.push_str("DISAGREE\n"),
        None => {}
    }
    if let Some(m) = &doc.matching {
        if m.ambiguous {
            out.push_str(&format!(
                "note: table classes {} are interchangeable under the power maps\n",
                m.interchangeable.join(", ")
            ));
        }
    }
    out
}

pub fn render_scan_text(doc: &ScanDocument) -> String {
    let mut out = format!(
        "{:<10} {:>5}  {:<8} {:<8} {:<4} {:<4} {:<4}  status\n",
        "group", "order", "solvable", "thompson", "3PO", "3PPO", "3SS"
    );
    for row in &doc.rows {
        match &row.report {
            Some(r) => {
                let status = if row.passed() {
                    "ok".to_string()
                } else {
                    let mut s: Vec<String> = row.expected_mismatches.clone();
                    s.extend(r.consistency_flags.iter().cloned());
                    s.extend(row.counterexample.iter().cloned());
                    format!("FAIL: {}", s.join("; "))
                };
                out.push_str(&format!(
                    "{:<10} {:>5}  {:<8} {:<8} {:<4} {:<4} {:<4}  {}\n",
                    row.name,
                    r.order,
                    yes_no(r.solvable.solvable),
                    yes_no(r.thompson.present),
                    yes_no(r.three_po.present),
                    yes_no(r.three_ppo.present),
                    yes_no(r.three_ss.present),
                    status
                ));
            }
            None => out.push_str(&format!(
                "{:<10} ERROR: {}\n",
                row.name,
                row.error.as_deref().unwrap_or("unknown")
            )),
        }
    }
    for a in &doc.alarms {
        out.push_str(&format!("*** COUNTEREXAMPLE: {a} ***\n"));
    }
    out.push_str(&format!(
        "{} group(s), {}\n",
        doc.rows.len(),
        if doc.passed {
            "all checks passed"
        } else {
            "CHECKS FAILED"
        }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn build(name: &str) -> FiniteGroup {
        lookup(name)
            .unwrap()
            .definition
            .build(crate::DEFAULT_ORDER_CAP)
            .unwrap()
    }

    #[test]
    fn sl25_report() {
        let r = analyze(&build("SL(2,5)"), SearchMode::Exhaustive, false);
        assert!(!r.solvable.solvable);
        assert!(!r.three_po.present);
        assert!(r.three_ppo.present);
        assert!(r.three_ss.present);
        assert!(r.thompson.present);
        assert!(r.consistency_flags.is_empty(), "{:?}", r.consistency_flags);
        assert!(r.counterexample().is_none());
        assert!(r.timings_ms.is_none());
    }

    #[test]
    fn small_groups_note_the_definition() {
        let r = analyze(&build("S4"), SearchMode::Exhaustive, true);
        assert!(r.notes.iter().any(|n| n.contains("false by definition")));
        assert!(r.timings_ms.is_some());
        assert!(r.consistency_flags.is_empty());
    }

    #[test]
    fn selectors() {
        let g = build("SL(2,5)");
        let cl = conjugacy_classes(&g);
        assert_eq!(
            cl[resolve_selector("2", &cl, None).unwrap().class].element_order,
            2
        );
        assert_eq!(
            cl[resolve_selector("5B", &cl, None).unwrap().class].label,
            "5B"
        );
        assert!(matches!(
            resolve_selector("5", &cl, None),
            Err(Error::UnknownClass(_))
        ));
        assert!(matches!(
            resolve_selector("7", &cl, None),
            Err(Error::UnknownClass(_))
        ));
        assert!(matches!(
            resolve_selector("9Z", &cl, None),
            Err(Error::UnknownClass(_))
        ));
    }

    #[test]
    fn scan_rows_flag_errors_and_mismatches() {
        let mut bad = ScanInput::from(lookup("A5").unwrap());
        bad.expected.as_mut().unwrap().solvable = true;
        let row = scan_row(&bad, 1000, SearchMode::Fast, false);
        assert!(!row.passed());
        assert_eq!(row.expected_mismatches.len(), 1);

        let big = ScanInput::from(lookup("A6").unwrap());
        let row = scan_row(&big, 100, SearchMode::Fast, false);
        assert!(row.error.as_deref().unwrap().contains("100"));
        assert!(!row.passed());

        let doc = scan(&[], 1000, SearchMode::Exhaustive, false);
        assert!(doc.passed && doc.rows.is_empty());
    }
}
