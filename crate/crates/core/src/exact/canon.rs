//! Canonical forms for small edge-labeled graphs.
//!
//! States of both exact solvers are graphs whose pairs carry one of three
//! labels (0 = absent/untried, 1 and 2 = the two colors or built/failed).
//! Two states with isomorphic labeled graphs have the same game value, so
//! the memo tables key on a canonical byte encoding: the lexicographically
//! least upper-triangle label string over all vertex orderings, found by
//! iterated signature refinement with individualization rather than a raw
//! sweep over all n! permutations.

/// Symmetric labeled graph on up to ~10 vertices, labels in {0, 1, 2}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    mat: Vec<u8>,
}

impl LabeledGraph {
    pub fn new(n: usize) -> Self {
        LabeledGraph { n, mat: vec![0; n * n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.mat[u * self.n + v]
    }

    pub fn set(&mut self, u: usize, v: usize, label: u8) {
        assert!(u != v && label <= 2);
        self.mat[u * self.n + v] = label;
        self.mat[v * self.n + u] = label;
    }

    /// Copy into a graph with extra isolated vertices appended.
    pub fn grown(&self, extra: usize) -> LabeledGraph {
        let m = self.n + extra;
        let mut out = LabeledGraph::new(m);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let l = self.get(u, v);
                if l != 0 {
                    out.set(u, v, l);
                }
            }
        }
        out
    }

    pub fn labeled_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| u != v && self.get(u, v) != 0).count()
    }

    /// The subgraph of pairs carrying `label`, as a plain graph.
    pub fn label_graph(&self, label: u8) -> crate::graph::SimpleGraph {
        let mut g = crate::graph::SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.get(u, v) == label {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn encode_under(&self, order: &[usize]) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + self.n * (self.n - 1) / 2);
        out.push(self.n as u8);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.get(order[i], order[j]));
            }
        }
        out
    }

    /// Apply a relabeling: vertex v of the result is `order[v]` of self.
    pub fn permuted(&self, order: &[usize]) -> LabeledGraph {
        let mut out = LabeledGraph::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let l = self.get(order[i], order[j]);
                if l != 0 {
                    out.set(i, j, l);
                }
            }
        }
        out
    }
}

/// One round of signature refinement: split every cell by each vertex's
/// per-cell label counts, ordering the new cells by signature. Returns true
/// if any cell split.
fn refine_once(g: &LabeledGraph, cells: &mut Vec<Vec<usize>>) -> bool {
    let cell_of = {
        let mut c = vec![0usize; g.n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                c[v] = i;
            }
        }
        c
    };
    let sig = |v: usize| -> Vec<(usize, u8, u8)> {
        // For each cell index: counts of label-1 and label-2 edges into it.
        let mut counts = vec![(0u8, 0u8); cells.len()];
        for u in 0..g.n {
            if u == v {
                continue;
            }
            match g.get(u, v) {
                1 => counts[cell_of[u]].0 += 1,
                2 => counts[cell_of[u]].1 += 1,
                _ => {}
            }
        }
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, (a, b))| a > 0 || b > 0)
            .map(|(i, (a, b))| (i, a, b))
            .collect()
    };
    let mut changed = false;
    let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
    for cell in cells.iter() {
        if cell.len() == 1 {
            next.push(cell.clone());
            continue;
        }
        let mut tagged: Vec<(Vec<(usize, u8, u8)>, usize)> =
            cell.iter().map(|&v| (sig(v), v)).collect();
        tagged.sort();
        let mut start = 0;
        for i in 1..=tagged.len() {
            if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                next.push(tagged[start..i].iter().map(|&(_, v)| v).collect());
                if i - start != cell.len() {
                    changed = true;
                }
                start = i;
            }
        }
    }
    *cells = next;
    changed
}

fn refine(g: &LabeledGraph, cells: &mut Vec<Vec<usize>>) {
    while refine_once(g, cells) {}
}

fn canon_search(g: &LabeledGraph, mut cells: Vec<Vec<usize>>, best: &mut Option<Vec<u8>>) {
    refine(g, &mut cells);
    if let Some(split_at) = cells.iter().position(|c| c.len() > 1) {
        let branch_cell = cells[split_at].clone();
        for &v in &branch_cell {
            let mut next = cells.clone();
            next[split_at] = vec![v];
            next.insert(
                split_at + 1,
                branch_cell.iter().copied().filter(|&u| u != v).collect(),
            );
            canon_search(g, next, best);
        }
        return;
    }
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let enc = g.encode_under(&order);
    if best.as_ref().map_or(true, |b| enc < *b) {
        *best = Some(enc);
    }
}

/// Canonical byte string: equal for two graphs iff they are isomorphic as
/// labeled graphs.
pub fn canonical_encoding(g: &LabeledGraph) -> Vec<u8> {
    if g.n == 0 {
        return vec![0];
    }
    // Initial partition by labeled degree pair to cut the search down.
    let mut tagged: Vec<((usize, usize), usize)> = (0..g.n)
        .map(|v| {
            let d1 = (0..g.n).filter(|&u| u != v && g.get(u, v) == 1).count();
            let d2 = (0..g.n).filter(|&u| u != v && g.get(u, v) == 2).count();
            ((d1, d2), v)
        })
        .collect();
    tagged.sort();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut start = 0;
    for i in 1..=tagged.len() {
        if i == tagged.len() || tagged[i].0 != tagged[start].0 {
            cells.push(tagged[start..i].iter().map(|&(_, v)| v).collect());
            start = i;
        }
    }
    let mut best = None;
    canon_search(g, cells, &mut best);
    best.expect("at least one ordering")
}
