//! Deterministic graph primitives: adjacency storage, clique detection,
//! matchings, vertex covers, degeneracy, jumbledness, and subgraph counting.
//!
//! Everything here is a pure function of immutable inputs. The exact
//! (exponential) operations carry explicit size caps and reject larger
//! inputs instead of silently running forever.

use std::fmt;
use std::str::FromStr;

use crate::error::GraphError;

/// Exhaustive minimum-vertex-cover search is limited to this many vertices.
pub const VERTEX_COVER_CAP: usize = 24;
/// Exhaustive jumbledness checking is limited to this many vertices.
pub const JUMBLED_CAP: usize = 20;
/// Pattern graphs for labeled-copy counting are limited to this many vertices.
pub const PATTERN_CAP: usize = 8;

/// An immutable simple graph: no self-loops, symmetric adjacency,
/// vertices indexed `0..vertex_count`.
///
/// Adjacency is stored as sorted neighbor lists, which keeps the engines'
/// sparse games cheap while still allowing bitmask extraction for the
/// exhaustive small-graph routines.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(v={}, e={})", self.n, self.edge_count)
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, adj: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).expect("complete graph edges are valid");
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.add_edge(u, (u + 1) % n).expect("cycle edges are valid");
            }
        }
        g
    }

    /// Star `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = SimpleGraph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v).expect("star edges are valid");
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let (u32a, u32b) = (u as u32, v as u32);
        let pos = self.adj[u].partition_point(|&x| x < u32b);
        self.adj[u].insert(pos, u32b);
        let pos = self.adj[v].partition_point(|&x| x < u32a);
        self.adj[v].insert(pos, u32a);
        self.edge_count += 1;
        Ok(())
    }

    /// Remove an edge that is present; no-op if it is not.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if let Ok(pos) = self.adj[u].binary_search(&(v as u32)) {
            self.adj[u].remove(pos);
            let pos = self.adj[v].binary_search(&(u as u32)).expect("symmetric adjacency");
            self.adj[v].remove(pos);
            self.edge_count -= 1;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if (v as usize) > u {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Per-vertex adjacency bitmasks; only valid for `n <= 64`.
    fn bitmask_rows(&self) -> Vec<u64> {
        debug_assert!(self.n <= 64);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for &v in &self.adj[u] {
                rows[u] |= 1u64 << v;
            }
        }
        rows
    }

    /// Induced subgraph on `verts` (vertices renumbered in the given order).
    pub fn induced(&self, verts: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(verts.len());
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                if self.has_edge(verts[i], verts[j]) {
                    g.add_edge(i, j).expect("induced edges are valid");
                }
            }
        }
        g
    }
}

// ---------------------------------------------------------------------------
// Matchings and vertex covers
// ---------------------------------------------------------------------------

/// Size of a maximum matching, by exhaustive branching on the lowest free
/// vertex. Exact for any graph small enough to enumerate (n <= 128).
pub fn max_matching_size(g: &SimpleGraph) -> usize {
    assert!(g.vertex_count() <= 128, "max_matching_size is an exhaustive routine");
    let mut used = vec![false; g.vertex_count()];
    matching_rec(g, 0, &mut used)
}

fn matching_rec(g: &SimpleGraph, from: usize, used: &mut Vec<bool>) -> usize {
    // Find the lowest free vertex that still has a free neighbor.
    let mut u = from;
    loop {
        if u >= g.vertex_count() {
            return 0;
        }
        if !used[u] && g.neighbors(u).iter().any(|&v| !used[v as usize]) {
            break;
        }
        u += 1;
    }
    // Either u stays unmatched, or it is matched to one of its free neighbors.
    used[u] = true;
    let mut best = matching_rec(g, u + 1, used);
    for i in 0..g.neighbors(u).len() {
        let v = g.neighbors(u)[i] as usize;
        if !used[v] {
            used[v] = true;
            best = best.max(1 + matching_rec(g, u + 1, used));
            used[v] = false;
        }
    }
    used[u] = false;
    best
}

/// Size of a minimum vertex cover, by branching on an uncovered edge.
/// Rejects graphs above [`VERTEX_COVER_CAP`] vertices.
pub fn min_vertex_cover_size(g: &SimpleGraph) -> Result<usize, GraphError> {
    if g.vertex_count() > VERTEX_COVER_CAP {
        return Err(GraphError::TooLarge {
            op: "min_vertex_cover_size",
            n: g.vertex_count(),
            cap: VERTEX_COVER_CAP,
        });
    }
    let edges = g.edges();
    let mut best = edges.len().min(g.vertex_count());
    let mut covered = vec![false; g.vertex_count()];
    cover_rec(&edges, &mut covered, 0, &mut best);
    Ok(best)
}

fn cover_rec(edges: &[(usize, usize)], covered: &mut Vec<bool>, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let uncovered = edges.iter().find(|&&(u, v)| !covered[u] && !covered[v]);
    match uncovered {
        None => *best = size,
        Some(&(u, v)) => {
            covered[u] = true;
            cover_rec(edges, covered, size + 1, best);
            covered[u] = false;
            covered[v] = true;
            cover_rec(edges, covered, size + 1, best);
            covered[v] = false;
        }
    }
}

// ---------------------------------------------------------------------------
// Cliques
// ---------------------------------------------------------------------------

/// True iff `g` contains `m` pairwise-adjacent vertices.
pub fn contains_clique(g: &SimpleGraph, m: usize) -> bool {
    assert!(m >= 1);
    if m == 1 {
        return g.vertex_count() >= 1;
    }
    if m == 2 {
        return g.edge_count() >= 1;
    }
    let candidates: Vec<u32> = (0..g.vertex_count() as u32).collect();
    clique_search(g, &candidates, m)
}

/// Depth-first clique search over a sorted candidate set, with the standard
/// "not enough candidates left" cutoff.
fn clique_search(g: &SimpleGraph, candidates: &[u32], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    for (i, &u) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            return false;
        }
        let rest: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&v| g.has_edge(u as usize, v as usize))
            .collect();
        if clique_search(g, &rest, need - 1) {
            return true;
        }
    }
    false
}

/// Number of injective vertex-ordered embeddings of `K_m` into `g`
/// (the number of unordered m-cliques times `m!`).
pub fn count_labeled_clique_copies(m: usize, g: &SimpleGraph) -> u64 {
    assert!(m >= 2);
    let candidates: Vec<u32> = (0..g.vertex_count() as u32).collect();
    let unordered = count_cliques(g, &candidates, m);
    unordered * factorial(m)
}

fn count_cliques(g: &SimpleGraph, candidates: &[u32], need: usize) -> u64 {
    if need == 0 {
        return 1;
    }
    if candidates.len() < need {
        return 0;
    }
    if need == 1 {
        return candidates.len() as u64;
    }
    let mut total = 0;
    for (i, &u) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            break;
        }
        let rest: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&v| g.has_edge(u as usize, v as usize))
            .collect();
        total += count_cliques(g, &rest, need - 1);
    }
    total
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Number of injective labeled embeddings of `h` into `g` (edges of `h` must
/// map to edges of `g`; non-edges of `h` are unconstrained).
pub fn count_labeled_subgraph_copies(h: &SimpleGraph, g: &SimpleGraph) -> Result<u64, GraphError> {
    if h.vertex_count() > PATTERN_CAP {
        return Err(GraphError::TooLarge {
            op: "count_labeled_subgraph_copies",
            n: h.vertex_count(),
            cap: PATTERN_CAP,
        });
    }
    if h.vertex_count() > g.vertex_count() {
        return Ok(0);
    }
    // Place pattern vertices in an order that maximizes back-edges, so each
    // placement after the first is drawn from a neighborhood intersection.
    let order = pattern_order(h);
    let mut assignment = vec![usize::MAX; h.vertex_count()];
    let mut used = vec![false; g.vertex_count()];
    Ok(embed_count(h, g, &order, 0, &mut assignment, &mut used))
}

fn pattern_order(h: &SimpleGraph) -> Vec<usize> {
    let n = h.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let back = h.neighbors(v).iter().filter(|&&u| placed[u as usize]).count();
            let key = (back, h.degree(v));
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        placed[best] = true;
        order.push(best);
    }
    order
}

fn embed_count(
    h: &SimpleGraph,
    g: &SimpleGraph,
    order: &[usize],
    depth: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let hv = order[depth];
    let placed_neighbors: Vec<usize> = h
        .neighbors(hv)
        .iter()
        .map(|&u| u as usize)
        .filter(|&u| assignment[u] != usize::MAX)
        .map(|u| assignment[u])
        .collect();

    let mut total = 0;
    let mut try_vertex = |gv: usize, total: &mut u64| {
        if used[gv] {
            return;
        }
        assignment[hv] = gv;
        used[gv] = true;
        *total += embed_count(h, g, order, depth + 1, assignment, used);
        used[gv] = false;
        assignment[hv] = usize::MAX;
    };

    if let Some(&anchor) = placed_neighbors.first() {
        'cand: for &gv in g.neighbors(anchor) {
            let gv = gv as usize;
            for &other in &placed_neighbors[1..] {
                if !g.has_edge(gv, other) {
                    continue 'cand;
                }
            }
            try_vertex(gv, &mut total);
        }
    } else {
        for gv in 0..g.vertex_count() {
            try_vertex(gv, &mut total);
        }
    }
    total
}

// ---------------------------------------------------------------------------
// Degeneracy
// ---------------------------------------------------------------------------

/// Result of min-degree peeling: `ordering[i]` has `back_degrees[i]` neighbors
/// among `ordering[..i]`, and `max_back_degree` is the degeneracy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyResult {
    pub ordering: Vec<usize>,
    pub back_degrees: Vec<usize>,
    pub max_back_degree: usize,
}

/// Min-degree peeling, picking the ordering back to front: repeatedly delete
/// a minimum-degree vertex and place it last among the remaining positions.
pub fn degeneracy_peel(g: &SimpleGraph) -> DegeneracyResult {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut ordering = vec![0usize; n];
    let mut back_degrees = vec![0usize; n];
    let mut max_back = 0usize;

    for pos in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("some vertex is alive");
        ordering[pos] = v;
        back_degrees[pos] = deg[v];
        max_back = max_back.max(deg[v]);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w as usize] {
                deg[w as usize] -= 1;
            }
        }
    }
    DegeneracyResult { ordering, back_degrees, max_back_degree: max_back }
}

// ---------------------------------------------------------------------------
// Jumbledness
// ---------------------------------------------------------------------------

/// A jumbledness verdict. Sampled verdicts are explicitly non-authoritative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JumbledVerdict {
    pub holds: bool,
    pub authoritative: bool,
}

/// Exhaustive check that every induced subgraph on at least `m_min` vertices
/// has `(1 ± eps) * p * C(|U|, 2)` edges. Rejects graphs above
/// [`JUMBLED_CAP`] vertices; use [`is_jumbled_sampled`] beyond that.
pub fn is_jumbled(g: &SimpleGraph, p: f64, m_min: usize, eps: f64) -> Result<bool, GraphError> {
    check_jumbled_params(p, m_min, eps)?;
    let n = g.vertex_count();
    if n > JUMBLED_CAP {
        return Err(GraphError::TooLarge { op: "is_jumbled", n, cap: JUMBLED_CAP });
    }
    if n == 0 {
        return Ok(true);
    }
    let rows = g.bitmask_rows();
    // e[mask] by peeling the lowest set bit; masks visited in increasing order.
    let mut edge_counts = vec![0u16; 1usize << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        edge_counts[mask] =
            edge_counts[rest] + (rows[low] & rest as u64).count_ones() as u16;
    }
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < m_min {
            continue;
        }
        if !edge_band_ok(edge_counts[mask] as f64, size, p, eps) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Randomized spot-check of the jumbledness condition over `samples` random
/// subsets. The verdict is flagged non-authoritative.
pub fn is_jumbled_sampled(
    g: &SimpleGraph,
    p: f64,
    m_min: usize,
    eps: f64,
    samples: usize,
    seed: u64,
) -> Result<JumbledVerdict, GraphError> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    check_jumbled_params(p, m_min, eps)?;
    let n = g.vertex_count();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        let size = rng.gen_range(m_min..=n.max(m_min));
        let size = size.min(n);
        verts.shuffle(&mut rng);
        let subset = &verts[..size];
        let mut e = 0usize;
        for i in 0..size {
            for j in (i + 1)..size {
                if g.has_edge(subset[i], subset[j]) {
                    e += 1;
                }
            }
        }
        if !edge_band_ok(e as f64, size, p, eps) {
            return Ok(JumbledVerdict { holds: false, authoritative: false });
        }
    }
    Ok(JumbledVerdict { holds: true, authoritative: false })
}

fn check_jumbled_params(p: f64, m_min: usize, eps: f64) -> Result<(), GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!("p={p} outside [0,1]")));
    }
    if m_min < 1 {
        return Err(GraphError::InvalidParameter("M must be positive".into()));
    }
    if eps <= 0.0 {
        return Err(GraphError::InvalidParameter(format!("eps={eps} must be positive")));
    }
    Ok(())
}

fn edge_band_ok(e: f64, size: usize, p: f64, eps: f64) -> bool {
    let expected = p * (size * (size - 1)) as f64 / 2.0;
    e >= (1.0 - eps) * expected && e <= (1.0 + eps) * expected
}

// ---------------------------------------------------------------------------
// The half-graph split family H_k
// ---------------------------------------------------------------------------

/// The split graph `H_k` on vertices `a_1..a_k, b_1..b_k`: the `a_i` form a
/// clique, the `b_i` an independent set, and `a_i ~ b_j` iff `i <= j`.
/// Vertices `0..k` are `a_1..a_k` and `k..2k` are `b_1..b_k`.
#[derive(Clone, Debug)]
pub struct HalfGraphSplit {
    pub k: usize,
    graph: SimpleGraph,
}

impl HalfGraphSplit {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn a_vertex(&self, i: usize) -> usize {
        assert!((1..=self.k).contains(&i));
        i - 1
    }

    pub fn b_vertex(&self, j: usize) -> usize {
        assert!((1..=self.k).contains(&j));
        self.k + j - 1
    }
}

/// Builds `H_k`; the result has exactly `k^2` edges.
pub fn make_half_graph_split(k: usize) -> HalfGraphSplit {
    assert!(k >= 1);
    let mut g = SimpleGraph::empty(2 * k);
    for i in 1..=k {
        for j in (i + 1)..=k {
            g.add_edge(i - 1, j - 1).expect("clique edges are valid");
        }
    }
    for i in 1..=k {
        for j in i..=k {
            g.add_edge(i - 1, k + j - 1).expect("half-graph edges are valid");
        }
    }
    debug_assert_eq!(g.edge_count(), k * k);
    HalfGraphSplit { k, graph: g }
}

// ---------------------------------------------------------------------------
// Edge-list text format
// ---------------------------------------------------------------------------

impl SimpleGraph {
    /// Serializes to the minimal edge-list format: `v=<n>` then one
    /// `u w` pair per line (0-indexed, `u < w`).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("v={}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl FromStr for SimpleGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
        let n: usize = header
            .trim()
            .strip_prefix("v=")
            .ok_or_else(|| GraphError::Parse(format!("expected 'v=<n>' header, got '{header}'")))?
            .parse()
            .map_err(|e| GraphError::Parse(format!("bad vertex count: {e}")))?;
        let mut g = SimpleGraph::empty(n);
        for line in lines {
            let mut parts = line.split_whitespace();
            let u: usize = parts
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line '{line}'")))?
                .parse()
                .map_err(|e| GraphError::Parse(format!("bad vertex: {e}")))?;
            let v: usize = parts
                .next()
                .ok_or_else(|| GraphError::Parse(format!("bad edge line '{line}'")))?
                .parse()
                .map_err(|e| GraphError::Parse(format!("bad vertex: {e}")))?;
            if parts.next().is_some() {
                return Err(GraphError::Parse(format!("trailing tokens on line '{line}'")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Parses compact graph names used by the CLI and tests: `K<m>` (clique),
/// `C<n>` (cycle), `H<k>` (half-graph split), `S<k>` (star K_{1,k}),
/// `E<n>` (empty).
pub fn parse_named_graph(name: &str) -> Result<SimpleGraph, GraphError> {
    let err = || GraphError::Parse(format!("unknown graph name '{name}'"));
    let (kind, num) = name.split_at(1);
    let v: usize = num.parse().map_err(|_| err())?;
    match kind {
        "K" if v >= 1 => Ok(SimpleGraph::complete(v)),
        "C" if v >= 3 => Ok(SimpleGraph::cycle(v)),
        "H" if v >= 1 => Ok(make_half_graph_split(v).graph().clone()),
        "S" if v >= 1 => Ok(SimpleGraph::star(v)),
        "E" => Ok(SimpleGraph::empty(v)),
        _ => Err(err()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        let count = 1usize << pairs.len();
        (0..count).map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            SimpleGraph::from_edges(n, &edges).unwrap()
        })
    }

    #[test]
    fn matching_examples() {
        assert_eq!(max_matching_size(&SimpleGraph::complete(3)), 1);
        let h2 = make_half_graph_split(2);
        assert_eq!(max_matching_size(h2.graph()), 2);
        assert_eq!(max_matching_size(&SimpleGraph::cycle(5)), 2);
    }

    #[test]
    fn matching_c5_brute_force_oracle() {
        // Enumerate all edge subsets of C5 and keep the largest set of
        // pairwise vertex-disjoint edges.
        let g = SimpleGraph::cycle(5);
        let edges = g.edges();
        let mut best = 0;
        for mask in 0usize..(1 << edges.len()) {
            let chosen: Vec<_> =
                edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).collect();
            let mut seen = [false; 5];
            let mut ok = true;
            for (_, &(u, v)) in &chosen {
                if seen[u] || seen[v] {
                    ok = false;
                    break;
                }
                seen[u] = true;
                seen[v] = true;
            }
            if ok {
                best = best.max(chosen.len());
            }
        }
        assert_eq!(max_matching_size(&g), best);
    }

    #[test]
    fn cover_examples() {
        let edge = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(min_vertex_cover_size(&edge).unwrap(), 1);
        assert_eq!(min_vertex_cover_size(&SimpleGraph::star(5)).unwrap(), 1);
        assert_eq!(min_vertex_cover_size(&SimpleGraph::cycle(5)).unwrap(), 3);
    }

    #[test]
    fn cover_c5_brute_force_oracle() {
        let g = SimpleGraph::cycle(5);
        let mut best = 5;
        for mask in 0usize..(1 << 5) {
            let covers_all = g
                .edges()
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1);
            if covers_all {
                best = best.min(mask.count_ones() as usize);
            }
        }
        assert_eq!(min_vertex_cover_size(&g).unwrap(), best);
    }

    #[test]
    fn cover_rejects_above_cap() {
        let g = SimpleGraph::empty(VERTEX_COVER_CAP + 1);
        assert!(matches!(min_vertex_cover_size(&g), Err(GraphError::TooLarge { .. })));
    }

    #[test]
    fn koenig_sandwich_exhaustive_small() {
        // matching <= cover <= 2 * matching for every graph on <= 6 vertices.
        for n in 0..=6 {
            for g in all_graphs(n) {
                let mm = max_matching_size(&g);
                let vc = min_vertex_cover_size(&g).unwrap();
                assert!(mm <= vc && vc <= 2 * mm || (mm == 0 && vc == 0), "failed: {g:?}");
            }
        }
    }

    #[test]
    fn clique_examples() {
        let mut k4_minus = SimpleGraph::complete(4);
        k4_minus = {
            let mut g = SimpleGraph::empty(4);
            for (u, v) in k4_minus.edges() {
                if (u, v) != (2, 3) {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        };
        assert!(!contains_clique(&k4_minus, 4));
        assert!(contains_clique(&SimpleGraph::complete(4), 3));
        assert!(!contains_clique(&SimpleGraph::cycle(5), 3));
    }

    #[test]
    fn c5_triangle_free_by_enumeration() {
        let g = SimpleGraph::cycle(5);
        let mut found = false;
        for a in 0..5 {
            for b in (a + 1)..5 {
                for c in (b + 1)..5 {
                    if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        found = true;
                    }
                }
            }
        }
        assert!(!found);
        assert_eq!(contains_clique(&g, 3), found);
    }

    #[test]
    fn labeled_clique_counts() {
        let edge = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(count_labeled_clique_copies(2, &edge), 2);
        assert_eq!(count_labeled_clique_copies(3, &SimpleGraph::complete(3)), 6);
        assert_eq!(count_labeled_clique_copies(3, &SimpleGraph::complete(4)), 24);
    }

    #[test]
    fn labeled_clique_count_matches_falling_factorial() {
        for v in 2..=7usize {
            let g = SimpleGraph::complete(v);
            for m in 2..=v {
                let expected: u64 =
                    ((v - m + 1)..=v).map(|x| x as u64).product();
                assert_eq!(count_labeled_clique_copies(m, &g), expected, "m={m} v={v}");
            }
        }
    }

    #[test]
    fn labeled_subgraph_counts() {
        let edge = SimpleGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(count_labeled_subgraph_copies(&edge, &SimpleGraph::complete(3)).unwrap(), 6);
        let h1 = make_half_graph_split(1);
        assert_eq!(count_labeled_subgraph_copies(h1.graph(), &SimpleGraph::complete(2)).unwrap(), 2);
        let h2 = make_half_graph_split(2);
        assert_eq!(count_labeled_subgraph_copies(h2.graph(), &SimpleGraph::complete(4)).unwrap(), 24);
    }

    #[test]
    fn labeled_subgraph_matches_naive_enumeration() {
        // Brute force over all injective 4-maps of H_2 into a random-ish graph.
        let h2 = make_half_graph_split(2);
        let g = SimpleGraph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 3), (3, 4), (4, 5), (2, 5)],
        )
        .unwrap();
        let h = h2.graph();
        let hv = h.vertex_count();
        let gv = g.vertex_count();
        let mut naive = 0u64;
        let mut assign = vec![0usize; hv];
        fn rec(
            h: &SimpleGraph,
            g: &SimpleGraph,
            assign: &mut Vec<usize>,
            depth: usize,
            gv: usize,
            naive: &mut u64,
        ) {
            if depth == assign.len() {
                for (u, v) in h.edges() {
                    if !g.has_edge(assign[u], assign[v]) {
                        return;
                    }
                }
                *naive += 1;
                return;
            }
            for cand in 0..gv {
                if assign[..depth].contains(&cand) {
                    continue;
                }
                assign[depth] = cand;
                rec(h, g, assign, depth + 1, gv, naive);
            }
        }
        rec(h, &g, &mut assign, 0, gv, &mut naive);
        assert_eq!(count_labeled_subgraph_copies(h, &g).unwrap(), naive);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_peel(&SimpleGraph::complete(4)).max_back_degree, 3);
        let tri = SimpleGraph::complete(3);
        let d = degeneracy_peel(&tri).max_back_degree;
        assert_eq!(d, 2);
        assert!((d as f64) <= (2.0 * 3.0f64).sqrt());
        assert_eq!(degeneracy_peel(&SimpleGraph::empty(5)).max_back_degree, 0);
    }

    #[test]
    fn degeneracy_ordering_is_consistent() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                let d = degeneracy_peel(&g);
                for (i, &v) in d.ordering.iter().enumerate() {
                    let back = d.ordering[..i]
                        .iter()
                        .filter(|&&u| g.has_edge(u, v))
                        .count();
                    assert_eq!(back, d.back_degrees[i]);
                    assert!(back <= d.max_back_degree);
                }
            }
        }
    }

    #[test]
    fn degeneracy_sqrt_bound_exhaustive() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                let d = degeneracy_peel(&g).max_back_degree as f64;
                assert!(d <= (2.0 * g.edge_count() as f64).sqrt() + 1e-9);
            }
        }
    }

    #[test]
    fn jumbled_examples() {
        assert!(is_jumbled(&SimpleGraph::complete(5), 1.0, 2, 0.01).unwrap());
        assert!(!is_jumbled(&SimpleGraph::empty(6), 0.5, 3, 0.5).unwrap());
        // C5 with M=5: the single qualifying subset is V itself, 5 edges
        // against 0.5 * 10.
        assert!(is_jumbled(&SimpleGraph::cycle(5), 0.5, 5, 0.1).unwrap());
    }

    #[test]
    fn jumbled_rejects_above_cap_and_sampled_is_flagged() {
        let g = SimpleGraph::empty(JUMBLED_CAP + 1);
        assert!(matches!(is_jumbled(&g, 0.5, 3, 0.1), Err(GraphError::TooLarge { .. })));
        let v = is_jumbled_sampled(&g, 0.5, 3, 0.1, 50, 7).unwrap();
        assert!(!v.authoritative);
    }

    #[test]
    fn half_graph_examples() {
        let h1 = make_half_graph_split(1);
        assert_eq!(h1.graph().edge_count(), 1);
        assert!(h1.graph().has_edge(0, 1));

        let h2 = make_half_graph_split(2);
        let g = h2.graph();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(h2.a_vertex(1), h2.a_vertex(2)));
        assert!(g.has_edge(h2.a_vertex(1), h2.b_vertex(1)));
        assert!(g.has_edge(h2.a_vertex(1), h2.b_vertex(2)));
        assert!(g.has_edge(h2.a_vertex(2), h2.b_vertex(2)));
        assert!(!g.has_edge(h2.a_vertex(2), h2.b_vertex(1)));
        assert!(!g.has_edge(h2.b_vertex(1), h2.b_vertex(2)));

        assert_eq!(make_half_graph_split(3).graph().edge_count(), 9);
    }

    #[test]
    fn half_graph_matching_and_edge_count() {
        for k in 1..=5 {
            let h = make_half_graph_split(k);
            assert_eq!(h.graph().edge_count(), k * k);
            assert_eq!(max_matching_size(h.graph()), k);
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let text = g.to_edge_list();
        let back: SimpleGraph = text.parse().unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!("".parse::<SimpleGraph>().is_err());
        assert!("v=3\n0 0\n".parse::<SimpleGraph>().is_err());
        assert!("v=3\n0 5\n".parse::<SimpleGraph>().is_err());
        assert!("v=3\n0 1\n0 1\n".parse::<SimpleGraph>().is_err());
    }

    #[test]
    fn named_graphs_parse() {
        assert_eq!(parse_named_graph("K4").unwrap().edge_count(), 6);
        assert_eq!(parse_named_graph("C5").unwrap().edge_count(), 5);
        assert_eq!(parse_named_graph("H2").unwrap().edge_count(), 4);
        assert_eq!(parse_named_graph("S3").unwrap().edge_count(), 3);
        assert!(parse_named_graph("Q7").is_err());
    }
}
