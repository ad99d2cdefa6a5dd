//! Grassmann graphs `G(q,n,k)` and doubled Grassmann graphs `S(q,n,k)`.
//!
//! Vertices follow [`enumerate_subspaces`] order; for `S(q,n,k)` the
//! `k`-subspaces come first and the `(k+1)`-subspaces second.

use std::collections::HashMap;
use std::sync::Arc;

use crate::families::{check_params, FamilyError, FamilyKind};
use crate::fq::{enumerate_subspaces, Field, SubspaceRep};
use crate::graph::Graph;
use crate::perm::Permutation;

/// A graph whose vertices are subspaces, with the lookup from subspace to
/// vertex index.
#[derive(Clone, Debug)]
pub struct SubspaceGraph {
    pub graph: Graph,
    pub vertices: Vec<SubspaceRep>,
    index: HashMap<SubspaceRep, usize>,
    field: Arc<Field>,
    n: usize,
    k: usize,
    doubled: bool,
}

impl SubspaceGraph {
    fn new(graph: Graph, vertices: Vec<SubspaceRep>, field: Arc<Field>, n: usize, k: usize, doubled: bool) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        SubspaceGraph { graph, vertices, index, field, n, k, doubled }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn index_of(&self, v: &SubspaceRep) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Number of `k`-subspaces; for `S(q,n,k)` this is the first side.
    pub fn first_side_len(&self) -> usize {
        self.vertices.iter().take_while(|v| v.dim() == self.k).count()
    }
}

fn params_error(family: &str, reason: String) -> FamilyError {
    FamilyError::Parameters { family: family.to_string(), reason }
}

fn subspaces(field: &Arc<Field>, n: usize, dims: &[usize]) -> Result<Vec<SubspaceRep>, FamilyError> {
    let mut out = Vec::new();
    for &d in dims {
        out.extend(enumerate_subspaces(field, n, d)?);
    }
    Ok(out)
}

/// `G(q,n,k)`: `k`-subspaces of `F_q^n`, adjacent when they meet in
/// dimension `k − 1`. Requires `1 < k ≤ n/2`.
pub fn grassmann_graph(q: u64, n: usize, k: usize) -> Result<SubspaceGraph, FamilyError> {
    check_params(FamilyKind::Grassmann, &[q, n as u64, k as u64])?;
    let field = Field::of_order(q)?;
    let vertices = subspaces(&field, n, &[k])?;
    let graph = Graph::from_predicate(vertices.len(), |u, v| {
        vertices[u].intersect_dim(&vertices[v]).expect("same ambient space") == k - 1
    })
    .with_labels(vertices.iter().map(ToString::to_string).collect())
    .expect("one label per vertex");
    Ok(SubspaceGraph::new(graph, vertices, field, n, k, false))
}

/// `S(q,n,k)`: `k`- and `(k+1)`-subspaces of `F_q^n`, adjacent under
/// containment. Requires `n ≥ 3` and `1 ≤ k ≤ n/2`.
pub fn doubled_grassmann(q: u64, n: usize, k: usize) -> Result<SubspaceGraph, FamilyError> {
    check_params(FamilyKind::DoubledGrassmann, &[q, n as u64, k as u64])?;
    let field = Field::of_order(q)?;
    let vertices = subspaces(&field, n, &[k, k + 1])?;
    let graph = Graph::from_predicate(vertices.len(), |u, v| {
        let (a, b) = (&vertices[u], &vertices[v]);
        let (small, large) = if a.dim() < b.dim() { (a, b) } else { (b, a) };
        small.dim() + 1 == large.dim() && small.is_subspace_of(large).expect("same ambient space")
    })
    .with_labels(vertices.iter().map(ToString::to_string).collect())
    .expect("one label per vertex");
    Ok(SubspaceGraph::new(graph, vertices, field, n, k, true))
}

/// `θ(v) = v⊥` as a vertex permutation: on `G(q,2k,k)` when `n = 2k`, on
/// `S(q,2k+1,k)` when `n = 2k + 1`.
pub fn perp_automorphism(q: u64, n: usize, k: usize) -> Result<Permutation, FamilyError> {
    let sg = if n == 2 * k {
        grassmann_graph(q, n, k)?
    } else if n == 2 * k + 1 {
        doubled_grassmann(q, n, k)?
    } else {
        return Err(params_error("perp", format!("need n = 2k or n = 2k + 1, got n={n}, k={k}")));
    };
    perp_on(&sg)
}

/// The ⊥ map on an already built subspace graph, checked to be an
/// automorphism.
pub fn perp_on(sg: &SubspaceGraph) -> Result<Permutation, FamilyError> {
    let images = sg
        .vertices
        .iter()
        .map(|v| {
            sg.index_of(&v.perp()).ok_or_else(|| {
                params_error("perp", format!("complement of {v} is not a vertex"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !sg.graph.is_automorphism(&images) {
        return Err(params_error("perp", "complement map does not preserve adjacency".into()));
    }
    Ok(Permutation::from_images(images).expect("perp is injective"))
}

/// A path in `S(q,n,k)` from `v1` to `v2` (both `k`-subspaces) of length at
/// most `2j`, `j = k − dim(v1 ∩ v2)`, built by pivoting through a
/// `k`-subspace that shares `k − 1` dimensions with `v2`.
pub fn connect_path(sg: &SubspaceGraph, v1: &SubspaceRep, v2: &SubspaceRep) -> Result<Vec<usize>, FamilyError> {
    let k = sg.k;
    if !sg.doubled {
        return Err(params_error("connect-path", "graph is not a doubled Grassmann graph".into()));
    }
    for v in [v1, v2] {
        if v.dim() != k || v.ambient_dim() != sg.n {
            return Err(FamilyError::Field(crate::fq::FieldError::DimensionMismatch(format!(
                "expected a {k}-subspace of F_q^{}, got {v}",
                sg.n
            ))));
        }
    }
    let path = subspace_path(v1, v2, k)?;
    path.iter()
        .map(|s| sg.index_of(s).ok_or_else(|| params_error("connect-path", format!("{s} is not a vertex"))))
        .collect()
}

fn subspace_path(v1: &SubspaceRep, v2: &SubspaceRep, k: usize) -> Result<Vec<SubspaceRep>, FamilyError> {
    let common = v1.intersection(v2)?;
    let j = k - common.dim();
    match j {
        0 => Ok(vec![v1.clone()]),
        1 => Ok(vec![v1.clone(), v1.sum_space(v2)?, v2.clone()]),
        _ => {
            let c = extend_basis(&common, v1);
            let d = extend_basis(&common, v2);
            let mut gens: Vec<Vec<u32>> = common.rows().to_vec();
            gens.push(c[0].clone());
            gens.extend(d[1..].iter().cloned());
            let s = SubspaceRep::span(v1.field(), v1.ambient_dim(), &gens)?;
            debug_assert_eq!(s.dim(), k);
            let mut path = subspace_path(v1, &s, k)?;
            path.push(s.sum_space(v2)?);
            path.push(v2.clone());
            Ok(path)
        }
    }
}

/// Rows of `outer` that extend a basis of `inner ⊆ outer` to one of `outer`.
fn extend_basis(inner: &SubspaceRep, outer: &SubspaceRep) -> Vec<Vec<u32>> {
    let mut span = inner.clone();
    let mut extra = Vec::new();
    for row in outer.rows() {
        if !span.contains_vector(row) {
            extra.push(row.clone());
            let mut gens = span.rows().to_vec();
            gens.push(row.clone());
            span = SubspaceRep::span(outer.field(), outer.ambient_dim(), &gens).expect("rows come from outer");
        }
    }
    extra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_counts() {
        let g = grassmann_graph(2, 4, 2).unwrap();
        assert_eq!(g.graph.n(), 35);
        assert_eq!(g.graph.is_regular(), Some(18));
        assert_eq!(g.graph.edge_count(), 315);
        assert!(grassmann_graph(2, 4, 1).is_err());
        assert!(grassmann_graph(2, 4, 3).is_err());
        assert!(grassmann_graph(6, 4, 2).is_err());
    }

    #[test]
    fn grassmann_distance_law() {
        let g = grassmann_graph(2, 4, 2).unwrap();
        for u in 0..g.graph.n() {
            let dist = g.graph.distances_from(u);
            for v in 0..g.graph.n() {
                let meet = g.vertices[u].intersect_dim(&g.vertices[v]).unwrap();
                assert_eq!(dist[v], Some(2 - meet));
            }
        }
    }

    #[test]
    fn fano_incidence() {
        let s = doubled_grassmann(2, 3, 1).unwrap();
        assert_eq!((s.graph.n(), s.graph.is_regular(), s.first_side_len()), (14, Some(3), 7));
        assert!(s.graph.is_bipartite() && s.graph.is_connected() && s.graph.is_vd());
        assert_eq!(doubled_grassmann(2, 4, 1).unwrap().graph.n(), 50);
        assert!(doubled_grassmann(2, 2, 1).is_err());
    }

    #[test]
    fn perp_is_an_involutive_automorphism() {
        let t = perp_automorphism(2, 4, 2).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        let t = perp_automorphism(2, 3, 1).unwrap();
        assert!(t.compose(&t).unwrap().is_identity());
        assert!((0..7).all(|v| t.apply(v) >= 7));
        assert!(perp_automorphism(2, 5, 1).is_err());
    }

    #[test]
    fn unique_common_neighbor_on_the_upper_side() {
        for (n, k) in [(3, 1), (4, 1), (4, 2)] {
            let s = doubled_grassmann(2, n, k).unwrap();
            let low = s.first_side_len();
            for a in 0..low {
                for b in a + 1..low {
                    let common: Vec<usize> = s.graph.neighbors(a).iter().copied().filter(|x| s.graph.adjacent(b, *x)).collect();
                    let meet = s.vertices[a].intersect_dim(&s.vertices[b]).unwrap();
                    if meet == k - 1 {
                        let sum = s.vertices[a].sum_space(&s.vertices[b]).unwrap();
                        assert_eq!(common, vec![s.index_of(&sum).unwrap()]);
                    } else {
                        assert!(common.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn paths_are_valid_and_short() {
        let s = doubled_grassmann(2, 4, 2).unwrap();
        let low = s.first_side_len();
        for a in 0..low {
            let dist = s.graph.distances_from(a);
            for b in 0..low {
                let path = connect_path(&s, &s.vertices[a], &s.vertices[b]).unwrap();
                let j = 2 - s.vertices[a].intersect_dim(&s.vertices[b]).unwrap();
                assert_eq!((path[0], *path.last().unwrap()), (a, b));
                assert!(path.windows(2).all(|w| s.graph.adjacent(w[0], w[1])));
                assert!(path.len() - 1 <= 2 * j);
                assert!(path.len() > dist[b].unwrap());
            }
        }
        let g = grassmann_graph(2, 4, 2).unwrap();
        assert!(connect_path(&g, &g.vertices[0], &g.vertices[1]).is_err());
        assert!(connect_path(&s, &s.vertices[low], &s.vertices[0]).is_err());
    }
}
