//! Batch runs over a JSON config: a list of
//! `{ "spec": ..., "checks": [...], "expected_order"?: "...", "partner"?: ... }`.
//!
//! An empty `checks` list means `["family"]`.

use std::collections::HashSet;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::{aut_order_report, family_checks_on, sides, summarize};
use super::stability::verdict_for;
use super::{
    check_attached, check_bipartition_behavior, check_perp_automorphism, check_pointwise_fix,
    check_s_u_isomorphism, check_semidirect_structure, check_stable, check_vd, johnson_neighbor_counts,
    stability_report, weichsel_check, xab_structure, Analyzed, VerifyError, VerifyReport,
};
use crate::auteng::automorphism_count_brute;
use crate::families::{FamilyKind, FamilySpec};
use crate::grassmann::{doubled_grassmann, grassmann_graph};

/// The built-in config covering the standard family instances.
pub const DEFAULT_SUITE: &str = include_str!("../../suites/default.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Family,
    AutOrder,
    VertexDetermining,
    BipartitionBehavior,
    PointwiseFix,
    AttachedGraph,
    StabilizerIsomorphism,
    SemidirectStructure,
    StabilityCriterion,
    Stable,
    JohnsonNeighborCounts,
    XabDichotomy,
    PerpAutomorphism,
    Weichsel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub spec: FamilySpec,
    #[serde(default)]
    pub checks: Vec<Check>,
    /// Overrides the table value for the `aut-order` check (decimal).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<String>,
    /// Second factor for `weichsel`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partner: Option<FamilySpec>,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Per-entry wall clock budget.
    pub timeout: Option<Duration>,
    /// Adds a brute-force order cross-check for graphs up to this size.
    pub brute_cap: Option<usize>,
    /// Records `wall_time_ms` on each report.
    pub timings: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOutcome {
    /// Sorted by `(theorem_id, instance)`.
    pub reports: Vec<VerifyReport>,
    /// Entries that ran out of time; they also appear as skipped reports.
    pub timed_out: Vec<String>,
}

impl SuiteOutcome {
    pub fn any_refuted(&self) -> bool {
        self.reports.iter().any(VerifyReport::is_refuted)
    }

    /// Every report passed and nothing timed out.
    pub fn passed(&self) -> bool {
        !self.any_refuted() && self.timed_out.is_empty()
    }
}

pub fn parse_config(text: &str) -> Result<Vec<SuiteEntry>, VerifyError> {
    let entries: Vec<SuiteEntry> = serde_json::from_str(text).map_err(|e| VerifyError::Config(e.to_string()))?;
    for e in &entries {
        if let Some(order) = &e.expected_order {
            order
                .parse::<num_bigint::BigUint>()
                .map_err(|_| VerifyError::Config(format!("{}: expected_order {order:?} is not a decimal", e.spec)))?;
        }
        if e.checks.contains(&Check::Weichsel) && e.partner.is_none() {
            return Err(VerifyError::Config(format!("{}: weichsel needs a partner", e.spec)));
        }
    }
    Ok(entries)
}

pub fn default_suite() -> Vec<SuiteEntry> {
    parse_config(DEFAULT_SUITE).expect("built-in suite parses")
}

/// Runs all entries in parallel. Fails only when the stability criterion
/// holds on an unstable graph; every other problem becomes a report.
pub fn run_suite(entries: &[SuiteEntry], opts: &SuiteOptions) -> Result<SuiteOutcome, VerifyError> {
    let results: Vec<Result<EntryResult, VerifyError>> =
        entries.par_iter().map(|e| run_with_timeout(e, opts)).collect();
    let mut outcome = SuiteOutcome::default();
    for r in results {
        match r? {
            EntryResult::Done(reports) => outcome.reports.extend(reports),
            EntryResult::TimedOut(report) => {
                outcome.timed_out.push(report.instance.clone());
                outcome.reports.push(report);
            }
        }
    }
    outcome
        .reports
        .sort_by(|a, b| (&a.theorem_id, &a.instance).cmp(&(&b.theorem_id, &b.instance)));
    Ok(outcome)
}

enum EntryResult {
    Done(Vec<VerifyReport>),
    TimedOut(VerifyReport),
}

/// A timed-out worker thread is left to finish on its own; its result is
/// discarded.
fn run_with_timeout(entry: &SuiteEntry, opts: &SuiteOptions) -> Result<EntryResult, VerifyError> {
    let Some(limit) = opts.timeout else {
        return run_entry(entry, opts).map(EntryResult::Done);
    };
    let (tx, rx) = mpsc::channel();
    let (e, o) = (entry.clone(), opts.clone());
    thread::spawn(move || {
        let _ = tx.send(run_entry(&e, &o));
    });
    match rx.recv_timeout(limit) {
        Ok(r) => r.map(EntryResult::Done),
        Err(_) => {
            let reason = format!("no result within {} s", limit.as_secs_f64());
            Ok(EntryResult::TimedOut(
                VerifyReport::new("timeout", &entry.spec.to_string(), "the entry finishes within the time limit")
                    .not_applicable(reason),
            ))
        }
    }
}

pub fn run_entry(entry: &SuiteEntry, opts: &SuiteOptions) -> Result<Vec<VerifyReport>, VerifyError> {
    let spec = &entry.spec;
    let checks = if entry.checks.is_empty() { vec![Check::Family] } else { entry.checks.clone() };
    let start = Instant::now();
    let graph = match spec.build() {
        Ok(g) => g,
        Err(e) => {
            return Ok(vec![VerifyReport::new("build", &spec.to_string(), "the family parameters are valid")
                .not_applicable(e.to_string())]);
        }
    };
    let a = Analyzed::new(graph, spec.to_string());
    let expected = entry.expected_order.as_ref().map(|s| s.parse().expect("checked in parse_config"));

    let mut out = Vec::new();
    for check in checks {
        match check {
            Check::Family => {
                let parts = family_checks_on(&a, spec, expected.as_ref())?;
                out.push(summarize(spec, &parts));
                out.extend(parts);
            }
            other => out.push(single(other, &a, entry, expected.as_ref())?),
        }
    }
    if let Some(cap) = opts.brute_cap {
        out.push(oracle_report(&a, cap));
    }
    if a.graph().is_connected() && a.bipartition().is_none() {
        if let Err(e @ VerifyError::Invariant(_)) = verdict_for(&a) {
            return Err(e);
        }
    }

    let mut seen = HashSet::new();
    out.retain(|r| seen.insert((r.theorem_id.clone(), r.instance.clone())));
    if opts.timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut out {
            r.wall_time_ms = Some(ms);
        }
    }
    Ok(out)
}

fn single(
    check: Check,
    a: &Analyzed,
    entry: &SuiteEntry,
    expected: Option<&num_bigint::BigUint>,
) -> Result<VerifyReport, VerifyError> {
    let spec = &entry.spec;
    let p = &spec.params;
    let na = |id: &str, reason: &str| VerifyReport::new(id, a.instance(), "").not_applicable(reason);
    Ok(match check {
        Check::Family => unreachable!("expanded by the caller"),
        Check::AutOrder => aut_order_report(a, spec, expected),
        Check::VertexDetermining => check_vd(a),
        Check::BipartitionBehavior => check_bipartition_behavior(a),
        Check::PointwiseFix => check_pointwise_fix(a),
        Check::AttachedGraph | Check::StabilizerIsomorphism | Check::SemidirectStructure => {
            let id = match check {
                Check::AttachedGraph => "attached-graph",
                Check::StabilizerIsomorphism => "stabilizer-isomorphism",
                _ => "semidirect-structure",
            };
            let Some(s) = sides(spec)? else {
                return Ok(na(id, "the family has no distinguished side"));
            };
            match (check, &s.attached, &s.swap) {
                (Check::AttachedGraph, Some(g1), _) => check_attached(a, &s.part, g1),
                (Check::StabilizerIsomorphism, Some(g1), _) => check_s_u_isomorphism(a, &s.part, g1),
                (Check::SemidirectStructure, _, Some(t)) => check_semidirect_structure(a, &s.part, t),
                (Check::SemidirectStructure, _, None) => na(id, "no involutive side swap is known"),
                _ => na(id, "no attached graph is known for this family"),
            }
        }
        Check::StabilityCriterion => stability_report(a),
        Check::Stable => check_stable(a),
        Check::JohnsonNeighborCounts => match spec.kind {
            FamilyKind::Johnson => johnson_neighbor_counts(p[0], p[1]),
            _ => na("johnson-neighbor-counts", "not a Johnson graph"),
        },
        Check::XabDichotomy => match spec.kind {
            FamilyKind::Johnson => xab_structure(p[0], p[1]),
            _ => na("xab-dichotomy", "not a Johnson graph"),
        },
        Check::PerpAutomorphism => match spec.kind {
            FamilyKind::Grassmann => {
                check_perp_automorphism(&grassmann_graph(p[0], p[1] as usize, p[2] as usize)?, a.instance())
            }
            FamilyKind::DoubledGrassmann => {
                check_perp_automorphism(&doubled_grassmann(p[0], p[1] as usize, p[2] as usize)?, a.instance())
            }
            _ => na("perp-automorphism", "not a subspace graph"),
        },
        Check::Weichsel => {
            let partner = entry.partner.as_ref().expect("checked in parse_config");
            let instance = format!("{spec} x {partner}");
            match partner.build() {
                Ok(g2) => weichsel_check(a.graph(), &g2, &instance),
                Err(e) => VerifyReport::new("weichsel", &instance, "").not_applicable(e.to_string()),
            }
        }
    })
}

/// Compares the search result with plain backtracking on small graphs.
fn oracle_report(a: &Analyzed, cap: usize) -> VerifyReport {
    let r = VerifyReport::new(
        "brute-force-oracle",
        a.instance(),
        "the group order equals the number of automorphisms found by exhaustive backtracking",
    );
    match automorphism_count_brute(a.graph(), cap) {
        Ok(count) => {
            let order = a.aut().order().clone();
            let mut r = r.with("brute_count", count).with("order", order.to_string());
            if order != num_bigint::BigUint::from(count) {
                r.refute(format!("search order {order}, backtracking found {count}"));
            }
            r
        }
        Err(e) => r.not_applicable(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        assert!(parse_config("[]").unwrap().is_empty());
        let e = parse_config(r#"[{"spec": "johnson:5,2"}]"#).unwrap();
        assert_eq!(e[0].checks, Vec::<Check>::new());
        assert!(parse_config(r#"[{"spec": "johnson:5"}]"#).is_err());
        assert!(parse_config(r#"[{"spec": "johnson:5,2", "checks": ["nope"]}]"#).is_err());
        assert!(parse_config(r#"[{"spec": "cycle:5", "checks": ["weichsel"]}]"#).is_err());
        assert!(parse_config(r#"[{"spec": "cycle:5", "expected_order": "ten"}]"#).is_err());
        assert_eq!(default_suite().len(), 19);
    }

    #[test]
    fn empty_suite_passes() {
        let out = run_suite(&[], &SuiteOptions::default()).unwrap();
        assert!(out.reports.is_empty() && out.passed());
    }

    #[test]
    fn wrong_expected_order_is_refuted() {
        let entries = parse_config(r#"[{"spec": "johnson:5,2", "checks": ["aut-order"], "expected_order": "121"}]"#).unwrap();
        let out = run_suite(&entries, &SuiteOptions::default()).unwrap();
        assert!(out.any_refuted());
        let entries = parse_config(r#"[{"spec": "johnson:5,2", "checks": ["aut-order"], "expected_order": "120"}]"#).unwrap();
        assert!(run_suite(&entries, &SuiteOptions::default()).unwrap().passed());
    }

    #[test]
    fn reports_are_sorted_and_deduplicated() {
        let entries = parse_config(
            r#"[{"spec": "cycle:7", "checks": ["stable", "family", "stable"]},
                {"spec": "cycle:5", "checks": ["family"]}]"#,
        )
        .unwrap();
        let opts = SuiteOptions { brute_cap: Some(10), ..Default::default() };
        let out = run_suite(&entries, &opts).unwrap();
        let keys: Vec<(String, String)> = out.reports.iter().map(|r| (r.theorem_id.clone(), r.instance.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
        assert!(keys.contains(&("brute-force-oracle".into(), "cycle:7".into())));
        assert!(out.passed(), "{:?}", out.reports);
    }

    #[test]
    fn inapplicable_checks_are_skipped() {
        let entries = parse_config(
            r#"[{"spec": "cycle:5", "checks": ["xab-dichotomy", "perp-automorphism", "attached-graph", "semidirect-structure"]},
                {"spec": "johnson:9,3", "checks": ["xab-dichotomy"]}]"#,
        )
        .unwrap();
        let out = run_suite(&entries, &SuiteOptions::default()).unwrap();
        assert_eq!(out.reports.len(), 5);
        assert!(out.reports.iter().all(|r| matches!(r.conclusion, super::super::Conclusion::Skipped { .. })));
    }

    #[test]
    fn timeouts_are_reported() {
        let entries = parse_config(r#"[{"spec": "doubled-grassmann:2,5,2", "checks": ["family"]}]"#).unwrap();
        let opts = SuiteOptions { timeout: Some(Duration::from_millis(1)), ..Default::default() };
        let out = run_suite(&entries, &opts).unwrap();
        assert_eq!(out.timed_out, vec!["doubled-grassmann:2,5,2".to_string()]);
        assert!(!out.passed());
    }
}
