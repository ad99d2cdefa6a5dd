//! Individualization-refinement search for automorphism generators.
//!
//! The first path always individualizes the smallest vertex of the target
//! cell, and its leaf serves as the reference labelling. Levels are then
//! revisited from the deepest up; at level `i` each vertex of the target
//! cell that is not already known to be equivalent to the first path's
//! choice gets a subtree search for a leaf matching the reference. A match
//! gives an automorphism fixing the first `i` choices.

use super::partition::Partition;
use crate::graph::Graph;
use crate::perm::Permutation;

struct Node {
    partition: Partition,
    target: usize,
    chosen: usize,
}

struct Search<'a> {
    g: &'a Graph,
    hashes: Vec<u64>,
    path: Vec<Node>,
    reference: Vec<usize>,
    nodes: usize,
}

/// Counters for one search, mostly useful for timing reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub depth: usize,
}

pub(crate) fn search(g: &Graph, mut root: Partition) -> (Vec<Permutation>, SearchStats) {
    let mut hashes = vec![root.refine_all(g)];
    let mut path = Vec::new();
    let mut p = root;
    while let Some(target) = p.target_cell() {
        let chosen = *p.cell(target).iter().min().expect("target cell is non-empty");
        path.push(Node { partition: p.clone(), target, chosen });
        hashes.push(p.individualize(g, chosen));
    }
    let mut s = Search {
        g,
        hashes,
        reference: p.lab,
        nodes: path.len() + 1,
        path,
    };
    let mut found: Vec<(usize, Permutation)> = Vec::new();
    for level in (0..s.path.len()).rev() {
        let node = &s.path[level];
        let mut cell = node.partition.cell(node.target).to_vec();
        cell.sort_unstable();
        let mut orbits = Orbits::new(g.n(), found.iter().filter(|(l, _)| *l >= level).map(|(_, p)| p));
        let mut tried = vec![node.chosen];
        for w in cell {
            if tried.iter().any(|&t| orbits.same(t, w)) {
                continue;
            }
            tried.push(w);
            let mut child = s.path[level].partition.clone();
            let h = child.individualize(g, w);
            if let Some(gamma) = s.descend(child, h, level + 1) {
                orbits.absorb(&gamma);
                found.push((level, gamma));
            }
        }
    }
    let stats = SearchStats { nodes: s.nodes, depth: s.path.len() };
    (found.into_iter().map(|(_, p)| p).collect(), stats)
}

impl Search<'_> {
    fn descend(&mut self, p: Partition, hash: u64, depth: usize) -> Option<Permutation> {
        self.nodes += 1;
        if self.hashes.get(depth) != Some(&hash) {
            return None;
        }
        if p.is_discrete() {
            if depth != self.path.len() {
                return None;
            }
            let mut images = vec![0; p.n()];
            for (&from, &to) in self.reference.iter().zip(&p.lab) {
                images[from] = to;
            }
            return self
                .g
                .is_automorphism(&images)
                .then(|| Permutation::from_images(images).expect("leaf labelling is a bijection"));
        }
        let target = p.target_cell()?;
        if self.path.get(depth).map(|n| n.target) != Some(target) {
            return None;
        }
        let mut cell = p.cell(target).to_vec();
        cell.sort_unstable();
        for u in cell {
            let mut child = p.clone();
            let h = child.individualize(self.g, u);
            if let Some(gamma) = self.descend(child, h, depth + 1) {
                return Some(gamma);
            }
        }
        None
    }
}

/// Union-find over the orbits of a set of permutations.
struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new<'p>(n: usize, gens: impl Iterator<Item = &'p Permutation>) -> Self {
        let mut o = Orbits { parent: (0..n).collect() };
        for g in gens {
            o.absorb(g);
        }
        o
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn absorb(&mut self, g: &Permutation) {
        for (x, &y) in g.images().iter().enumerate() {
            let (a, b) = (self.find(x), self.find(y));
            if a != b {
                self.parent[a.max(b)] = a.min(b);
            }
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
