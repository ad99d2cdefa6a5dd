//! Common-neighbour counts in Johnson graphs and the `X(a,b)` test on
//! bipartite doubles of `J(6,k)`.

use std::collections::BTreeMap;

use super::{VerifyError, VerifyReport};
use crate::families::{self, rank_subset, KSubset};
use crate::graph::{bipartite_double, induced_subgraph, Graph};

pub fn johnson_neighbor_counts(n: u64, k: u64) -> VerifyReport {
    let r = VerifyReport::new(
        "johnson-neighbor-counts",
        &format!("johnson:{n},{k}"),
        "in J(n,k), pairs at distance 1, 2 and at least 3 have n-2, 4 and 0 common neighbours",
    );
    if !(2 <= k && 2 * k <= n) {
        return r.not_applicable(format!("need 2 <= k <= n/2, got n={n}, k={k}"));
    }
    let g = match families::johnson(n, k) {
        Ok(g) => g,
        Err(e) => return r.not_applicable(e.to_string()),
    };
    let expected = |d: usize| match d {
        1 => n as usize - 2,
        2 => 4,
        _ => 0,
    };
    let mut r = r;
    let mut observed: BTreeMap<usize, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for u in 0..g.n() {
        let dist = g.distances_from(u);
        for (v, d) in dist.iter().enumerate().skip(u + 1) {
            let d = d.expect("Johnson graphs are connected");
            let c = g.common_neighbors_unchecked(u, v);
            observed.entry(d).or_default().insert(c);
            if c != expected(d) {
                r.refute(format!(
                    "{} and {} at distance {d} have {c} common neighbours, expected {}",
                    label(&g, u),
                    label(&g, v),
                    expected(d)
                ));
            }
        }
    }
    let observed: BTreeMap<String, Vec<usize>> =
        observed.into_iter().map(|(d, cs)| (d.to_string(), cs.into_iter().collect())).collect();
    r.with("counts_by_distance", observed).with("adjacent_equals_distance_two", n == 6)
}

fn label(g: &Graph, v: usize) -> String {
    g.label(v).map_or_else(|| v.to_string(), str::to_string)
}

/// The `X(a,b)` structure for two layer-0 vertices of `B(J(n,k))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XabPair {
    pub a: String,
    pub b: String,
    /// Whether the underlying subsets are adjacent in `J(n,k)`.
    pub adjacent: bool,
    /// Vertices of `<X(a,b)>` with no neighbour inside `X(a,b)`.
    pub degree_zero: Vec<String>,
}

impl XabPair {
    pub fn dichotomy_holds(&self) -> bool {
        self.adjacent == !self.degree_zero.is_empty()
    }
}

/// `X(a,b) = {a, b} ∪ N(a,b) ∪ t(N(a,b))` in `b_graph = B(G)` where `G` has
/// `base` vertices, `a` and `b` are layer-0 indices and `t` swaps layers.
fn xab(b_graph: &Graph, base: usize, a: usize, b: usize) -> XabPair {
    let common: Vec<usize> = b_graph
        .neighbors(a)
        .iter()
        .copied()
        .filter(|&x| b_graph.adjacent(b, x))
        .collect();
    let mut x: Vec<usize> = vec![a, b];
    x.extend(&common);
    x.extend(common.iter().map(|&v| (v + base) % (2 * base)));
    let induced = induced_subgraph(b_graph, &x);
    let degree_zero = (0..induced.graph.n())
        .filter(|&i| induced.graph.degree(i) == 0)
        .map(|i| label(b_graph, induced.new_to_old[i]))
        .collect();
    XabPair {
        a: label(b_graph, a),
        b: label(b_graph, b),
        adjacent: b_graph.adjacent(a, b + base),
        degree_zero,
    }
}

pub fn xab_pair(n: u64, k: u64, a: &KSubset, b: &KSubset) -> Result<XabPair, VerifyError> {
    let j = families::johnson(n, k)?;
    let index = |s: &KSubset| -> Result<usize, VerifyError> {
        if s.len() as u64 != k {
            return Err(VerifyError::Precondition(format!("{s} is not a {k}-subset")));
        }
        Ok(rank_subset(s, n)? as usize)
    };
    let (ia, ib) = (index(a)?, index(b)?);
    if ia == ib {
        return Err(VerifyError::Precondition("X(a,b) needs two distinct vertices".into()));
    }
    Ok(xab(&bipartite_double(&j), j.n(), ia, ib))
}

/// Runs the `X(a,b)` dichotomy over every pair of layer-0 vertices of
/// `B(J(6,k))`: a degree-0 vertex appears exactly for adjacent pairs.
pub fn xab_structure(n: u64, k: u64) -> VerifyReport {
    let r = VerifyReport::new(
        "xab-dichotomy",
        &format!("johnson:{n},{k}"),
        "in B(J(6,k)), <X(a,b)> has an isolated vertex exactly when a and b are adjacent in layer 0",
    );
    if !(n == 6 && (k == 2 || k == 3)) {
        return r.not_applicable(format!("defined for n = 6 and k in {{2,3}}, got n={n}, k={k}"));
    }
    let j = families::johnson(n, k).expect("valid parameters");
    let base = j.n();
    let b_graph = bipartite_double(&j);
    let mut r = r;
    let (mut pairs, mut adjacent, mut violations) = (0usize, 0usize, 0usize);
    for a in 0..base {
        for b in a + 1..base {
            let p = xab(&b_graph, base, a, b);
            pairs += 1;
            adjacent += usize::from(p.adjacent);
            if !p.dichotomy_holds() {
                violations += 1;
                r.refute(format!(
                    "pair {} {}: adjacent = {}, isolated vertices {:?}",
                    p.a, p.b, p.adjacent, p.degree_zero
                ));
            }
        }
    }
    r.with("pairs_checked", pairs)
        .with("adjacent_pairs", adjacent)
        .with("violations", violations)
}
