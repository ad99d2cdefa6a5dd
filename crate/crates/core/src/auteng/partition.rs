//! Ordered partitions with equitable refinement.
//!
//! Cells are contiguous ranges of `lab` and are named by their start index.
//! Refinement is driven by a splitter queue; every split is folded into a
//! trace hash so that two nodes of the search tree with different traces
//! cannot be related by an automorphism.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::Graph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub(crate) lab: Vec<usize>,
    pos: Vec<usize>,
    /// Start of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// For a cell start, one past its end; meaningless elsewhere.
    cell_end: Vec<usize>,
    cells: usize,
}

impl Partition {
    /// Cells given as vertex lists, in order.
    pub(crate) fn from_cells(n: usize, cells: &[Vec<usize>]) -> Self {
        let mut p = Partition {
            lab: Vec::with_capacity(n),
            pos: vec![0; n],
            cell_of: vec![0; n],
            cell_end: vec![0; n],
            cells: 0,
        };
        for cell in cells.iter().filter(|c| !c.is_empty()) {
            let start = p.lab.len();
            for &v in cell {
                p.pos[v] = p.lab.len();
                p.cell_of[v] = start;
                p.lab.push(v);
            }
            p.cell_end[start] = p.lab.len();
            p.cells += 1;
        }
        p
    }

    pub(crate) fn n(&self) -> usize {
        self.lab.len()
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.n()
    }

    /// Cell starts in order.
    pub(crate) fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s = self.cell_end[s];
        }
        out
    }

    pub(crate) fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..self.cell_end[start]]
    }

    pub(crate) fn cell_vectors(&self) -> Vec<Vec<usize>> {
        self.starts().into_iter().map(|s| self.cell(s).to_vec()).collect()
    }

    /// First cell of minimum size among the non-singleton cells.
    pub(crate) fn target_cell(&self) -> Option<usize> {
        self.starts()
            .into_iter()
            .filter(|&s| self.cell_end[s] - s > 1)
            .min_by_key(|&s| (self.cell_end[s] - s, s))
    }

    /// Splits `v` off to the front of its cell and refines. Returns the
    /// invariant of the resulting node.
    pub(crate) fn individualize(&mut self, g: &Graph, v: usize) -> u64 {
        let start = self.cell_of[v];
        let end = self.cell_end[start];
        debug_assert!(end - start > 1);
        let other = self.lab[start];
        let pv = self.pos[v];
        self.lab.swap(start, pv);
        self.pos[v] = start;
        self.pos[other] = pv;
        self.cell_end[start] = start + 1;
        self.cell_end[start + 1] = end;
        for i in start + 1..end {
            self.cell_of[self.lab[i]] = start + 1;
        }
        self.cells += 1;
        let mut h = DefaultHasher::new();
        start.hash(&mut h);
        self.refine(g, vec![start], h)
    }

    /// Refines to the coarsest equitable partition finer than the current
    /// one, starting from all cells as splitters.
    pub(crate) fn refine_all(&mut self, g: &Graph) -> u64 {
        let starts = self.starts();
        self.refine(g, starts, DefaultHasher::new())
    }

    fn refine(&mut self, g: &Graph, initial: Vec<usize>, mut trace: DefaultHasher) -> u64 {
        let n = self.n();
        let mut queue = std::collections::VecDeque::from(initial);
        let mut queued = vec![false; n];
        for &s in &queue {
            queued[s] = true;
        }
        let mut count = vec![0usize; n];
        let mut touched_cell = vec![false; n];
        while let Some(splitter) = queue.pop_front() {
            queued[splitter] = false;
            if self.is_discrete() {
                break;
            }
            let members: Vec<usize> = self.cell(splitter).to_vec();
            let mut touched = Vec::new();
            let mut hit = Vec::new();
            for &u in &members {
                for &x in g.neighbors(u) {
                    if count[x] == 0 {
                        hit.push(x);
                        let c = self.cell_of[x];
                        if !touched_cell[c] {
                            touched_cell[c] = true;
                            touched.push(c);
                        }
                    }
                    count[x] += 1;
                }
            }
            touched.sort_unstable();
            for &start in &touched {
                touched_cell[start] = false;
                let end = self.cell_end[start];
                if end - start == 1 {
                    continue;
                }
                let slice = &mut self.lab[start..end];
                slice.sort_by_key(|&x| count[x]);
                if count[slice[0]] == count[slice[end - start - 1]] {
                    continue;
                }
                (splitter, start).hash(&mut trace);
                let mut frag_start = start;
                for i in start..=end {
                    let boundary = i == end || (i > frag_start && count[self.lab[i]] != count[self.lab[i - 1]]);
                    if !boundary {
                        continue;
                    }
                    (i - frag_start, count[self.lab[frag_start]]).hash(&mut trace);
                    self.cell_end[frag_start] = i;
                    for j in frag_start..i {
                        let x = self.lab[j];
                        self.pos[x] = j;
                        self.cell_of[x] = frag_start;
                    }
                    if !queued[frag_start] {
                        queued[frag_start] = true;
                        queue.push_back(frag_start);
                    }
                    frag_start = i;
                }
                self.cells += self.cells_in(start, end) - 1;
            }
            for x in hit {
                count[x] = 0;
            }
        }
        self.starts().hash(&mut trace);
        self.quotient(g).hash(&mut trace);
        trace.finish()
    }

    fn cells_in(&self, start: usize, end: usize) -> usize {
        let mut k = 0;
        let mut s = start;
        while s < end {
            k += 1;
            s = self.cell_end[s];
        }
        k
    }

    /// For each cell, a representative's neighbour counts into every cell;
    /// on an equitable partition this is the quotient matrix.
    pub(crate) fn quotient(&self, g: &Graph) -> Vec<Vec<usize>> {
        let starts = self.starts();
        let mut index = vec![0; self.n()];
        for (i, &s) in starts.iter().enumerate() {
            index[s] = i;
        }
        starts
            .iter()
            .map(|&s| {
                let mut row = vec![0; starts.len()];
                for &x in g.neighbors(self.lab[s]) {
                    row[index[self.cell_of[x]]] += 1;
                }
                row
            })
            .collect()
    }
}
