//! Stability of bipartite doubles and the common-neighbour criterion.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{big, decimal, Analyzed, VerifyError, VerifyReport};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Criterion {
    Holds,
    Inconclusive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<[usize; 2]>,
        reason: String,
    },
}

impl Criterion {
    pub fn holds(&self) -> bool {
        matches!(self, Criterion::Holds)
    }

    fn inconclusive(witness: Option<[usize; 2]>, reason: impl Into<String>) -> Self {
        Criterion::Inconclusive { witness, reason: reason.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub a0: Option<usize>,
    pub criterion: Criterion,
    #[serde(with = "decimal")]
    pub aut_order: BigUint,
    #[serde(with = "decimal")]
    pub double_aut_order: BigUint,
    pub stable: bool,
}

/// Why the graph-level hypotheses of the criterion fail, if they do.
fn criterion_hypothesis(g: &Graph) -> Option<(Option<[usize; 2]>, String)> {
    if !g.is_connected() {
        return Some((None, "graph is not connected".into()));
    }
    if g.is_bipartite() {
        return Some((None, "graph is bipartite".into()));
    }
    g.vd_witness()
        .map(|(v, w)| (Some([v, w]), format!("graph is not vertex-determining: N({v}) = N({w})")))
}

/// `a₀` is the common-neighbour count of the first edge. The criterion
/// holds when every edge has `c = a₀` and every non-adjacent pair has
/// `c ≠ a₀`; otherwise the first offending pair is the witness.
pub fn stability_criterion(g: &Graph) -> (Option<usize>, Criterion) {
    if let Some((witness, reason)) = criterion_hypothesis(g) {
        return (None, Criterion::inconclusive(witness, reason));
    }
    let (u0, v0) = g.edges().next().expect("connected non-bipartite graphs have edges");
    let a0 = g.common_neighbors_unchecked(u0, v0);
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let c = g.common_neighbors_unchecked(u, v);
            let adjacent = g.adjacent(u, v);
            if adjacent && c != a0 {
                return (Some(a0), Criterion::inconclusive(Some([u, v]), format!("adjacent pair with c = {c} != a0 = {a0}")));
            }
            if !adjacent && c == a0 {
                return (Some(a0), Criterion::inconclusive(Some([u, v]), format!("non-adjacent pair with c = a0 = {a0}")));
            }
        }
    }
    (Some(a0), Criterion::Holds)
}

fn verdict(a: &Analyzed) -> Result<StabilityVerdict, VerifyError> {
    if !a.graph().is_connected() {
        return Err(VerifyError::Precondition(format!("{} is not connected", a.instance())));
    }
    let (a0, criterion) = stability_criterion(a.graph());
    let aut_order = a.aut().order().clone();
    let double_aut_order = a.double_aut_order().clone();
    let stable = double_aut_order == &aut_order * big(2);
    if criterion.holds() && !stable {
        return Err(VerifyError::Invariant(format!(
            "{}: common-neighbour criterion holds with a0 = {a0:?} but |Aut(B(G))| = {double_aut_order} != 2 * {aut_order}",
            a.instance()
        )));
    }
    Ok(StabilityVerdict { a0, criterion, aut_order, double_aut_order, stable })
}

/// Full verdict: both group orders and the criterion. Errors when `g` is
/// disconnected, or loudly when the criterion holds on an unstable graph.
pub fn is_stable(g: &Graph) -> Result<StabilityVerdict, VerifyError> {
    verdict(&Analyzed::anonymous(g.clone()))
}

pub(crate) fn verdict_for(a: &Analyzed) -> Result<StabilityVerdict, VerifyError> {
    verdict(a)
}

fn record_orders(r: &mut VerifyReport, v: &StabilityVerdict) {
    r.note("aut_order", v.aut_order.to_string());
    r.note("double_aut_order", v.double_aut_order.to_string());
    r.note("stable", v.stable);
    r.note("a0", v.a0);
}

/// The criterion as a report: not applicable unless the graph is connected,
/// non-bipartite and vd; hypothesis fails when the counts do not separate
/// edges from non-edges; otherwise stability must follow.
pub fn stability_report(a: &Analyzed) -> VerifyReport {
    let r = VerifyReport::new(
        "stability-criterion",
        a.instance(),
        "if common-neighbour counts equal a0 exactly on edges, the bipartite double has twice as many automorphisms",
    );
    if let Some((_, reason)) = criterion_hypothesis(a.graph()) {
        return r.not_applicable(reason);
    }
    let (a0, criterion) = stability_criterion(a.graph());
    if let Criterion::Inconclusive { reason, .. } = criterion {
        return r.hypothesis_fails(reason).with("a0", a0);
    }
    let mut r = r;
    match verdict(a) {
        Ok(v) => record_orders(&mut r, &v),
        Err(e) => r.refute(e.to_string()),
    }
    r
}

/// Asserts that the graph is stable.
pub fn check_stable(a: &Analyzed) -> VerifyReport {
    let r = VerifyReport::new(
        "stable",
        a.instance(),
        "the bipartite double has exactly twice as many automorphisms as the graph",
    );
    let mut r = r;
    match verdict(a) {
        Ok(v) => {
            record_orders(&mut r, &v);
            r.note("criterion", &v.criterion);
            if !v.stable {
                r.refute(format!("|Aut(B(G))| = {} != 2 * {}", v.double_aut_order, v.aut_order));
            }
            r
        }
        Err(VerifyError::Precondition(reason)) => r.not_applicable(reason),
        Err(e) => {
            r.refute(e.to_string());
            r
        }
    }
}
