//! Automorphism groups of graphs.
//!
//! [`automorphism_group`] runs an individualization-refinement search over
//! equitable partitions and hands the generators it finds to
//! [`PermGroup`]. [`automorphism_group_brute`] is an independent
//! backtracking enumerator for small graphs, used as an oracle.

mod partition;
mod search;

use thiserror::Error;

use crate::graph::Graph;
use crate::perm::{PermGroup, Permutation};

use partition::Partition;
pub use search::SearchStats;

/// Default vertex limit for [`automorphism_group_brute`].
pub const DEFAULT_BRUTE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("brute-force search limited to {cap} vertices, graph has {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("permutation maps {vertex} out of the part")]
    NotStabilized { vertex: usize },
    #[error("permutation has degree {degree}, part mentions vertex {vertex}")]
    OutOfRange { vertex: usize, degree: usize },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
}

/// A vertex coloring: `color[v]` in `0..c` and the matching cells, each
/// sorted ascending and listed by color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    color: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

impl Coloring {
    pub fn uniform(n: usize) -> Self {
        Coloring {
            color: vec![0; n],
            cells: if n == 0 { Vec::new() } else { vec![(0..n).collect()] },
        }
    }

    /// Colors must use every value in `0..c` for some `c`.
    pub fn from_colors(color: Vec<usize>) -> Result<Self, AutError> {
        let c = color.iter().max().map_or(0, |m| m + 1);
        let mut cells = vec![Vec::new(); c];
        for (v, &k) in color.iter().enumerate() {
            cells[k].push(v);
        }
        if let Some(k) = cells.iter().position(Vec::is_empty) {
            return Err(AutError::InvalidColoring(format!("color {k} is unused")));
        }
        Ok(Coloring { color, cells })
    }

    /// Cells must partition `0..n`; cell `i` gets color `i`.
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self, AutError> {
        let mut color = vec![usize::MAX; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(AutError::InvalidColoring(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= n || color[v] != usize::MAX {
                    return Err(AutError::InvalidColoring(format!("vertex {v} is out of range or repeated")));
                }
                color[v] = i;
            }
        }
        if let Some(v) = color.iter().position(|&c| c == usize::MAX) {
            return Err(AutError::InvalidColoring(format!("vertex {v} has no cell")));
        }
        Coloring::from_colors(color)
    }

    pub fn color(&self) -> &[usize] {
        &self.color
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_colors(&self) -> usize {
        self.cells.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.color.len()
    }

    /// Same-colored vertices have equal neighbor counts into every cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let counts = |v: usize| {
            let mut row = vec![0usize; self.cells.len()];
            for &x in g.neighbors(v) {
                row[self.color[x]] += 1;
            }
            row
        };
        self.cells.iter().all(|cell| {
            let first = counts(cell[0]);
            cell[1..].iter().all(|&v| counts(v) == first)
        })
    }
}

/// Coarsest equitable coloring finer than `c`. Split cells are ordered by
/// neighbor count, so cell numbering does not depend on vertex names.
pub fn refine(g: &Graph, c: &Coloring) -> Coloring {
    let mut p = Partition::from_cells(g.n(), &c.cells);
    p.refine_all(g);
    let cells = p
        .cell_vectors()
        .into_iter()
        .map(|mut cell| {
            cell.sort_unstable();
            cell
        })
        .collect();
    Coloring::from_cells(g.n(), cells).expect("refinement yields a partition")
}

pub fn automorphism_group(g: &Graph) -> PermGroup {
    automorphism_group_colored(g, &Coloring::uniform(g.n())).0
}

/// Color-preserving automorphisms of `g`, with search statistics.
pub fn automorphism_group_colored(g: &Graph, c: &Coloring) -> (PermGroup, SearchStats) {
    let (gens, stats) = search::search(g, Partition::from_cells(g.n(), &c.cells));
    for gamma in &gens {
        assert!(g.is_automorphism(gamma.images()), "search produced a non-automorphism {gamma}");
        assert!(
            (0..g.n()).all(|v| c.color[gamma.apply(v)] == c.color[v]),
            "search produced a color-changing permutation {gamma}"
        );
    }
    let group = PermGroup::from_generators(g.n(), gens).expect("generators share the graph's degree");
    (group, stats)
}

/// Every automorphism of `g`, in lexicographic order of image lists, by
/// plain backtracking. Refuses graphs with more than `cap` vertices.
pub fn automorphism_group_brute(g: &Graph, cap: usize) -> Result<Vec<Permutation>, AutError> {
    let n = g.n();
    if n > cap {
        return Err(AutError::CapExceeded { n, cap });
    }
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(g, &mut images, &mut used, &mut |images| {
        out.push(Permutation::from_images(images.to_vec()).expect("assignment is a bijection"))
    });
    Ok(out)
}

/// Number of automorphisms found by the same backtracking, without
/// storing them.
pub fn automorphism_count_brute(g: &Graph, cap: usize) -> Result<u64, AutError> {
    let n = g.n();
    if n > cap {
        return Err(AutError::CapExceeded { n, cap });
    }
    let mut count = 0u64;
    extend(g, &mut Vec::with_capacity(n), &mut vec![false; n], &mut |_| count += 1);
    Ok(count)
}

fn extend(g: &Graph, images: &mut Vec<usize>, used: &mut [bool], found: &mut dyn FnMut(&[usize])) {
    let v = images.len();
    if v == g.n() {
        found(images);
        return;
    }
    for w in 0..g.n() {
        if used[w] || g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.adjacent(u, v) != g.adjacent(images[u], w)) {
            continue;
        }
        used[w] = true;
        images.push(w);
        extend(g, images, used, found);
        images.pop();
        used[w] = false;
    }
}

/// `p` restricted to `part`, re-indexed so that `part[i]` becomes `i`.
pub fn restrict(p: &Permutation, part: &[usize]) -> Result<Permutation, AutError> {
    let degree = p.degree();
    let mut index = vec![usize::MAX; degree];
    for (i, &v) in part.iter().enumerate() {
        if v >= degree {
            return Err(AutError::OutOfRange { vertex: v, degree });
        }
        index[v] = i;
    }
    let images = part
        .iter()
        .map(|&v| match index[p.apply(v)] {
            usize::MAX => Err(AutError::NotStabilized { vertex: v }),
            i => Ok(i),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Permutation::from_images(images).expect("restriction of a bijection to a stable part"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::bipartite_double;
    use num_bigint::BigUint;

    fn order(g: &Graph) -> BigUint {
        automorphism_group(g).order().clone()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn refine_examples() {
        let c5 = families::cycle(5).unwrap();
        assert_eq!(refine(&c5, &Coloring::uniform(5)).num_colors(), 1);
        let p3 = refine(&path(3), &Coloring::uniform(3));
        assert_eq!(p3.cells(), &[vec![0, 2], vec![1]]);
        assert!(p3.is_equitable(&path(3)));
        let p = path(7);
        let once = refine(&p, &Coloring::uniform(7));
        assert_eq!(refine(&p, &once), once);
        assert!(!Coloring::uniform(3).is_equitable(&path(3)));
    }

    #[test]
    fn coloring_validation() {
        assert!(Coloring::from_colors(vec![0, 2]).is_err());
        assert!(Coloring::from_cells(3, vec![vec![0], vec![1]]).is_err());
        assert!(Coloring::from_cells(2, vec![vec![0, 1], vec![1]]).is_err());
        let c = Coloring::from_cells(3, vec![vec![2], vec![0, 1]]).unwrap();
        assert_eq!(c.color(), &[1, 1, 0]);
    }

    #[test]
    fn known_orders() {
        assert_eq!(order(&families::cycle(5).unwrap()), BigUint::from(10u32));
        assert_eq!(order(&families::kneser(5, 2).unwrap()), BigUint::from(120u32));
        assert_eq!(order(&families::johnson(5, 2).unwrap()), BigUint::from(120u32));
        assert_eq!(order(&families::johnson(4, 2).unwrap()), BigUint::from(48u32));
        assert_eq!(order(&families::complete(5).unwrap()), BigUint::from(120u32));
        assert_eq!(order(&Graph::empty(4)), BigUint::from(24u32));
        assert_eq!(order(&Graph::empty(1)), BigUint::from(1u32));
        assert_eq!(order(&Graph::empty(0)), BigUint::from(1u32));
        assert_eq!(order(&path(4)), BigUint::from(2u32));
    }

    #[test]
    fn brute_examples() {
        let k3 = families::complete(3).unwrap();
        assert_eq!(automorphism_group_brute(&k3, DEFAULT_BRUTE_CAP).unwrap().len(), 6);
        assert_eq!(automorphism_group_brute(&path(3), DEFAULT_BRUTE_CAP).unwrap().len(), 2);
        assert_eq!(automorphism_group_brute(&families::cycle(6).unwrap(), DEFAULT_BRUTE_CAP).unwrap().len(), 12);
        assert_eq!(automorphism_count_brute(&families::cycle(6).unwrap(), DEFAULT_BRUTE_CAP).unwrap(), 12);
        assert_eq!(automorphism_count_brute(&families::kneser(5, 2).unwrap(), DEFAULT_BRUTE_CAP).unwrap(), 120);
        assert!(matches!(
            automorphism_group_brute(&Graph::empty(11), DEFAULT_BRUTE_CAP),
            Err(AutError::CapExceeded { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn colored_search_respects_colors() {
        let c4 = families::cycle(4).unwrap();
        let c = Coloring::from_colors(vec![0, 1, 1, 1]).unwrap();
        assert_eq!(automorphism_group_colored(&c4, &c).0.order(), &BigUint::from(2u32));
    }

    #[test]
    fn generators_are_deterministic() {
        let j = families::johnson(6, 3).unwrap();
        let a = automorphism_group(&j);
        let b = automorphism_group(&j);
        assert_eq!(a.generators(), b.generators());
        assert_eq!(a.order(), &BigUint::from(1440u32));
    }

    #[test]
    fn restrict_examples() {
        let id = Permutation::identity(4);
        assert!(restrict(&id, &[2, 0]).unwrap().is_identity());
        let b = bipartite_double(&families::cycle(5).unwrap());
        let grp = automorphism_group(&b);
        let layer0: Vec<usize> = (0..5).collect();
        let s = grp.part_stabilizer(&layer0).unwrap();
        let c5 = families::cycle(5).unwrap();
        for g in s.generators() {
            assert!(c5.is_automorphism(restrict(g, &layer0).unwrap().images()));
        }
        let swap = Permutation::from_images((0..10).map(|v| (v + 5) % 10).collect()).unwrap();
        assert!(matches!(restrict(&swap, &layer0), Err(AutError::NotStabilized { vertex: 0 })));
        assert!(restrict(&id, &[7]).is_err());
    }
}
