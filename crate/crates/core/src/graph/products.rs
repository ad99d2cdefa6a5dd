use super::Graph;

/// Tensor (direct) product. Vertex `(a, b)` has index `a * g2.n() + b`.
pub fn tensor_product(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.n();
    let mut adjacency = vec![Vec::new(); g1.n() * n2];
    for a in 0..g1.n() {
        for b in 0..n2 {
            let nb = &mut adjacency[a * n2 + b];
            for &c in g1.neighbors(a) {
                for &d in g2.neighbors(b) {
                    nb.push(c * n2 + d);
                }
            }
            nb.sort_unstable();
        }
    }
    let g = Graph::from_adjacency(adjacency);
    match (g1.labels(), g2.labels()) {
        (Some(l1), Some(l2)) => {
            let labels = l1
                .iter()
                .flat_map(|a| l2.iter().map(move |b| format!("({a},{b})")))
                .collect();
            g.with_labels(labels).expect("label count matches")
        }
        _ => g,
    }
}

/// Bipartite double cover: `(v, 0)` is vertex `v`, `(v, 1)` is vertex
/// `n + v`, and `(v, 0) ~ (w, 1)` iff `v ~ w`.
pub fn bipartite_double(g: &Graph) -> Graph {
    let n = g.n();
    let mut adjacency = Vec::with_capacity(2 * n);
    for v in 0..n {
        adjacency.push(g.neighbors(v).iter().map(|&w| n + w).collect());
    }
    for v in 0..n {
        adjacency.push(g.neighbors(v).to_vec());
    }
    let labels = (0..2 * n)
        .map(|i| {
            let v = i % n;
            let layer = i / n;
            match g.label(v) {
                Some(l) => format!("({l},{layer})"),
                None => format!("({v},{layer})"),
            }
        })
        .collect();
    Graph::from_adjacency(adjacency)
        .with_labels(labels)
        .expect("label count matches")
}

/// An induced subgraph with the maps between old and new indices.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `new_to_old[i]` is the original index of new vertex `i`.
    pub new_to_old: Vec<usize>,
    /// `old_to_new[v]` is `Some(i)` when `v` was kept.
    pub old_to_new: Vec<Option<usize>>,
}

/// Subgraph induced by `vertices`, relabelled in ascending original order.
/// Duplicates and out-of-range entries are ignored.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Induced {
    let mut keep = vec![false; g.n()];
    for &v in vertices {
        if v < g.n() {
            keep[v] = true;
        }
    }
    let new_to_old: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let adjacency = new_to_old
        .iter()
        .map(|&v| g.neighbors(v).iter().filter_map(|&w| old_to_new[w]).collect())
        .collect();
    let mut graph = Graph::from_adjacency(adjacency);
    if let Some(labels) = g.labels() {
        graph = graph
            .with_labels(new_to_old.iter().map(|&v| labels[v].clone()).collect())
            .expect("label count matches");
    }
    Induced {
        graph,
        new_to_old,
        old_to_new,
    }
}
