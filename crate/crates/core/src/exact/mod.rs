//! Exact desk-scale solvers: minimax value of the budgeted colored game
//! (adversarial painter), optimal success probability of the query game by
//! expectimax, the induced adversarial painter policy, exhaustive painter
//! enumeration against a fixed builder, a brute-force Ramsey-number oracle,
//! and a small disk cache for solver results.
//!
//! Both solvers memoize on the canonical form of the edge-labeled state
//! plus the count of interchangeable untouched pool vertices, which is what
//! makes vertex budgets of 8-9 tractable.

pub mod canon;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{Board, BuilderMove, BuilderPolicy, Color};
use crate::error::{PolicyError, SolverError};
use crate::graph::{self, SimpleGraph};
use canon::{canonical_encoding, LabeledGraph};

/// Edge labels inside solver states.
const L_RED: u8 = 1; // red / successfully built
const L_BLUE: u8 = 2; // blue / failed

pub const EXACT_MN_CAP: usize = 4;
pub const EXACT_VERTEX_CAP: usize = 9;
pub const QUERY_TARGET_CAP: usize = 4;
pub const QUERY_BUDGET_CAP: usize = 14;
pub const QUERY_VERTEX_CAP: usize = 8;
/// Node guard: solvers abort rather than churn past this many expansions.
pub const DEFAULT_MAX_NODES: u64 = 50_000_000;

fn cap_err(op: &'static str, detail: String, cap: usize) -> SolverError {
    SolverError::CapExceeded { op, detail, cap }
}

/// One move in solver state space: an untried pair among the touched
/// vertices, one representative fresh endpoint per touched vertex, and one
/// fresh-fresh representative (untouched vertices are interchangeable).
fn state_moves(g: &LabeledGraph, pool: usize) -> Vec<(usize, usize, usize)> {
    // (u, v, pool_cost); fresh vertices are indexed past g's current size.
    let n = g.vertex_count();
    let mut moves = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if g.get(u, v) == 0 {
                moves.push((u, v, 0));
            }
        }
    }
    if pool >= 1 {
        for u in 0..n {
            moves.push((u, n, 1));
        }
    }
    if pool >= 2 {
        moves.push((n, n + 1, 2));
    }
    moves
}

fn child(g: &LabeledGraph, mv: (usize, usize, usize), label: u8) -> LabeledGraph {
    let mut out = g.grown(mv.2);
    out.set(mv.0, mv.1, label);
    out
}

#[derive(Clone, Copy, Debug)]
enum Bound {
    /// True minimax value (independent of any depth limit).
    Exact(usize),
    /// Builder has no forced win within this many turns.
    NoWinWithin(usize),
}

/// Minimax solver for the budgeted colored game: Builder (minimizing turns)
/// vs. an adversarial painter, goal red K_m or blue K_n.
pub struct RamseySolver {
    m: usize,
    n: usize,
    memo: HashMap<(Vec<u8>, usize), Bound>,
    nodes: u64,
    max_nodes: u64,
}

impl RamseySolver {
    pub fn new(m: usize, n: usize) -> Self {
        RamseySolver { m, n, memo: HashMap::new(), nodes: 0, max_nodes: DEFAULT_MAX_NODES }
    }

    pub fn states_explored(&self) -> usize {
        self.memo.len()
    }

    fn terminal(&self, g: &LabeledGraph) -> bool {
        graph::contains_clique(&g.label_graph(L_RED), self.m)
            || graph::contains_clique(&g.label_graph(L_BLUE), self.n)
    }

    /// Fewest further turns in which Builder can force a win from this
    /// state, if that is at most `depth`; None means no forced win within
    /// `depth` turns.
    pub fn value(
        &mut self,
        g: &LabeledGraph,
        pool: usize,
        depth: usize,
    ) -> Result<Option<usize>, SolverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(cap_err(
                "exact_online_ramsey",
                format!("node guard at {} expansions", self.max_nodes),
                self.max_nodes as usize,
            ));
        }
        if self.terminal(g) {
            return Ok(Some(0));
        }
        let key = (canonical_encoding(g), pool);
        match self.memo.get(&key) {
            Some(&Bound::Exact(v)) => return Ok((v <= depth).then_some(v)),
            Some(&Bound::NoWinWithin(d)) if d >= depth => return Ok(None),
            _ => {}
        }
        if depth == 0 {
            self.note_no_win(key, 0);
            return Ok(None);
        }
        let mut best: Option<usize> = None;
        // Children only need to be searched deep enough to beat the best
        // move found so far.
        for mv in state_moves(g, pool) {
            let limit = match best {
                Some(b) => b - 2, // need 1 + max(children) <= b - 1
                None => depth - 1,
            };
            let red = child(g, mv, L_RED);
            let Some(rv) = self.value(&red, pool - mv.2, limit)? else { continue };
            let blue = child(g, mv, L_BLUE);
            let Some(bv) = self.value(&blue, pool - mv.2, limit)? else { continue };
            let cand = 1 + rv.max(bv);
            if best.map_or(true, |b| cand < b) {
                best = Some(cand);
                if cand == 1 {
                    break;
                }
            }
        }
        match best {
            Some(v) => {
                self.memo.insert(key, Bound::Exact(v));
                Ok(Some(v))
            }
            None => {
                self.note_no_win(key, depth);
                Ok(None)
            }
        }
    }

    fn note_no_win(&mut self, key: (Vec<u8>, usize), depth: usize) {
        match self.memo.get(&key) {
            Some(&Bound::Exact(_)) => {}
            Some(&Bound::NoWinWithin(d)) if d >= depth => {}
            _ => {
                self.memo.insert(key, Bound::NoWinWithin(depth));
            }
        }
    }

    /// Builder's best move and the painter's best reply, state by state,
    /// from a solved position. Edges are reported in the state's own vertex
    /// numbering (fresh endpoints get new indices).
    pub fn principal_variation(
        &mut self,
        vertex_budget: usize,
        value: usize,
    ) -> Result<Vec<(usize, usize, Color)>, SolverError> {
        let mut line = Vec::new();
        let mut g = LabeledGraph::new(0);
        let mut pool = vertex_budget;
        let mut v = value;
        while v > 0 {
            let mut chosen = None;
            'outer: for mv in state_moves(&g, pool) {
                let red = child(&g, mv, L_RED);
                let blue = child(&g, mv, L_BLUE);
                let rv = self.value(&red, pool - mv.2, v - 1)?;
                let bv = self.value(&blue, pool - mv.2, v - 1)?;
                if let (Some(rv), Some(bv)) = (rv, bv) {
                    if 1 + rv.max(bv) == v {
                        // Painter answers with the color that resists longer.
                        let (color, cg, cv) = if rv >= bv {
                            (Color::Red, red, rv)
                        } else {
                            (Color::Blue, blue, bv)
                        };
                        line.push((mv.0, mv.1, color));
                        pool -= mv.2;
                        g = cg;
                        v = cv;
                        chosen = Some(());
                        break 'outer;
                    }
                }
            }
            if chosen.is_none() {
                break;
            }
        }
        Ok(line)
    }
}

/// Fewest turns in which Builder forces red K_m or blue K_n against an
/// optimal painter, with at most `vertex_budget` vertices ever touched.
/// None = no forced win within `turn_cap` turns under this budget.
pub fn exact_online_ramsey(
    m: usize,
    n: usize,
    vertex_budget: usize,
    turn_cap: usize,
) -> Result<Option<usize>, SolverError> {
    exact_online_ramsey_report(m, n, vertex_budget, turn_cap).map(|r| r.value)
}

/// Solver output bundle for reporting: value, principal variation (edges in
/// state numbering with the painter's best reply), and memo statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamseyValueReport {
    pub m: usize,
    pub n: usize,
    pub vertex_budget: usize,
    pub turn_cap: usize,
    /// None = no forced win within the cap under this vertex budget.
    pub value: Option<usize>,
    /// (u, v, 'R'|'B') per turn along the principal line.
    pub pv: Vec<(usize, usize, char)>,
    pub states_explored: usize,
}

/// As `exact_online_ramsey`, additionally reporting the principal variation
/// and the number of canonical states explored.
pub fn exact_online_ramsey_report(
    m: usize,
    n: usize,
    vertex_budget: usize,
    turn_cap: usize,
) -> Result<RamseyValueReport, SolverError> {
    if m > EXACT_MN_CAP || n > EXACT_MN_CAP {
        return Err(cap_err("exact_online_ramsey", format!("targets ({m},{n})"), EXACT_MN_CAP));
    }
    if vertex_budget > EXACT_VERTEX_CAP {
        return Err(cap_err(
            "exact_online_ramsey",
            format!("vertex_budget {vertex_budget}"),
            EXACT_VERTEX_CAP,
        ));
    }
    let pair_cap = vertex_budget * vertex_budget.saturating_sub(1) / 2;
    if turn_cap > pair_cap {
        return Err(cap_err("exact_online_ramsey", format!("turn_cap {turn_cap}"), pair_cap));
    }
    let mut solver = RamseySolver::new(m, n);
    let root = LabeledGraph::new(0);
    let mut value = None;
    for depth in 1..=turn_cap {
        if let Some(v) = solver.value(&root, vertex_budget, depth)? {
            value = Some(v);
            break;
        }
    }
    let pv = match value {
        Some(v) => solver
            .principal_variation(vertex_budget, v)?
            .into_iter()
            .map(|(u, w, c)| (u, w, if c == Color::Red { 'R' } else { 'B' }))
            .collect(),
        None => Vec::new(),
    };
    Ok(RamseyValueReport {
        m,
        n,
        vertex_budget,
        turn_cap,
        value,
        pv,
        states_explored: solver.states_explored(),
    })
}

/// Success condition for the expectimax solver.
#[derive(Clone, Debug)]
pub enum QueryGoal {
    /// Find a copy of this graph among successfully built edges.
    Subgraph(SimpleGraph),
    /// Complete a red K_m or a blue K_n (chance-colored game).
    TwoCliques { m: usize, n: usize },
}

impl QueryGoal {
    fn satisfied(&self, g: &LabeledGraph) -> bool {
        match self {
            QueryGoal::Subgraph(h) => {
                let built = g.label_graph(L_RED);
                graph::count_labeled_subgraph_copies(h, &built).map_or(false, |c| c > 0)
            }
            QueryGoal::TwoCliques { m, n } => {
                graph::contains_clique(&g.label_graph(L_RED), *m)
                    || graph::contains_clique(&g.label_graph(L_BLUE), *n)
            }
        }
    }
}

/// Expectimax solver: Builder maximizes the probability of reaching the
/// goal; each played pair succeeds (red) independently with probability p.
pub struct QuerySolver {
    goal: QueryGoal,
    p: f64,
    memo: HashMap<(Vec<u8>, usize, usize), f64>,
    nodes: u64,
    max_nodes: u64,
}

impl QuerySolver {
    pub fn new(goal: QueryGoal, p: f64) -> Result<Self, SolverError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(SolverError::InvalidParameter(format!("p = {p} outside (0,1)")));
        }
        Ok(QuerySolver { goal, p, memo: HashMap::new(), nodes: 0, max_nodes: DEFAULT_MAX_NODES })
    }

    pub fn states_explored(&self) -> usize {
        self.memo.len()
    }

    pub fn value(
        &mut self,
        g: &LabeledGraph,
        pool: usize,
        budget: usize,
    ) -> Result<f64, SolverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(cap_err(
                "exact_query_value",
                format!("node guard at {} expansions", self.max_nodes),
                self.max_nodes as usize,
            ));
        }
        if self.goal.satisfied(g) {
            return Ok(1.0);
        }
        if budget == 0 {
            return Ok(0.0);
        }
        let key = (canonical_encoding(g), pool, budget);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut best = 0.0f64;
        for mv in state_moves(g, pool) {
            let win = self.value(&child(g, mv, L_RED), pool - mv.2, budget - 1)?;
            let lose = self.value(&child(g, mv, L_BLUE), pool - mv.2, budget - 1)?;
            let val = self.p * win + (1.0 - self.p) * lose;
            if val > best {
                best = val;
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }
}

fn check_query_caps(h: &SimpleGraph, budget: usize, vertex_budget: usize) -> Result<(), SolverError> {
    if h.vertex_count() > QUERY_TARGET_CAP {
        return Err(cap_err("exact_query_value", format!("target on {} vertices", h.vertex_count()), QUERY_TARGET_CAP));
    }
    if budget > QUERY_BUDGET_CAP {
        return Err(cap_err("exact_query_value", format!("budget {budget}"), QUERY_BUDGET_CAP));
    }
    if vertex_budget > QUERY_VERTEX_CAP {
        return Err(cap_err("exact_query_value", format!("vertex_budget {vertex_budget}"), QUERY_VERTEX_CAP));
    }
    Ok(())
}

/// Optimal probability of building a copy of `h` within `budget` queries,
/// touching at most `vertex_budget` vertices.
pub fn exact_query_value(
    h: &SimpleGraph,
    p: f64,
    budget: usize,
    vertex_budget: usize,
) -> Result<f64, SolverError> {
    check_query_caps(h, budget, vertex_budget)?;
    let mut solver = QuerySolver::new(QueryGoal::Subgraph(h.clone()), p)?;
    solver.value(&LabeledGraph::new(0), vertex_budget, budget)
}

/// The same expectimax value computed on raw states over an explicit fixed
/// vertex set, with no canonicalization and no interchangeable-pool
/// collapsing; transposition memoization on the literal label vector only.
/// Reference oracle for the canonical solver.
pub fn brute_force_query_value(
    h: &SimpleGraph,
    p: f64,
    budget: usize,
    vertex_budget: usize,
) -> Result<f64, SolverError> {
    check_query_caps(h, budget, vertex_budget)?;
    let vb = vertex_budget;
    let pairs: Vec<(usize, usize)> =
        (0..vb).flat_map(|u| ((u + 1)..vb).map(move |v| (u, v))).collect();
    fn rec(
        labels: &mut Vec<u8>,
        budget: usize,
        h: &SimpleGraph,
        p: f64,
        vb: usize,
        pairs: &[(usize, usize)],
        memo: &mut HashMap<(Vec<u8>, usize), f64>,
    ) -> f64 {
        let built = {
            let mut g = SimpleGraph::empty(vb);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if labels[i] == L_RED {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        };
        if graph::count_labeled_subgraph_copies(h, &built).map_or(false, |c| c > 0) {
            return 1.0;
        }
        if budget == 0 {
            return 0.0;
        }
        let key = (labels.clone(), budget);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = 0.0f64;
        for i in 0..pairs.len() {
            if labels[i] != 0 {
                continue;
            }
            labels[i] = L_RED;
            let win = rec(labels, budget - 1, h, p, vb, pairs, memo);
            labels[i] = L_BLUE;
            let lose = rec(labels, budget - 1, h, p, vb, pairs, memo);
            labels[i] = 0;
            let val = p * win + (1.0 - p) * lose;
            if val > best {
                best = val;
            }
        }
        memo.insert(key, best);
        best
    }
    let mut labels = vec![0u8; pairs.len()];
    let mut memo = HashMap::new();
    Ok(rec(&mut labels, budget, h, p, vb, &pairs, &mut memo))
}

/// Least query budget whose optimal success probability reaches 1/2,
/// together with that probability. Errors if no budget within the cap
/// suffices.
pub fn exact_f(
    h: &SimpleGraph,
    p: f64,
    vertex_budget: usize,
) -> Result<(usize, f64), SolverError> {
    exact_f_up_to(h, p, vertex_budget, QUERY_BUDGET_CAP)
}

/// As `exact_f` but giving up past `max_budget`; useful when an upper bound
/// on the answer is already known and deeper scans would be wasted.
pub fn exact_f_up_to(
    h: &SimpleGraph,
    p: f64,
    vertex_budget: usize,
    max_budget: usize,
) -> Result<(usize, f64), SolverError> {
    check_query_caps(h, 0, vertex_budget)?;
    let max_budget = max_budget.min(QUERY_BUDGET_CAP);
    let mut solver = QuerySolver::new(QueryGoal::Subgraph(h.clone()), p)?;
    for budget in 1..=max_budget {
        let v = solver.value(&LabeledGraph::new(0), vertex_budget, budget)?;
        if v >= 0.5 - 1e-12 {
            return Ok((budget, v));
        }
    }
    Err(cap_err(
        "exact_f",
        format!("no budget up to {max_budget} reaches probability 1/2"),
        max_budget,
    ))
}

/// Sandwich report for the chance-colored game value against both one-color
/// query values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichReport {
    pub m: usize,
    pub n: usize,
    pub p: f64,
    /// Least N whose optimal red-K_m-or-blue-K_n probability reaches 1/2.
    pub r_tilde_p: usize,
    pub r_tilde_prob: f64,
    /// f(K_m, p); None if past the budget cap.
    pub f_red: Option<usize>,
    /// f(K_n, 1-p); None if past the budget cap.
    pub f_blue: Option<usize>,
    pub min_f: usize,
    pub sandwich_ok: bool,
}

/// Checks r̃(m,n;p) <= min{f(K_m,p), f(K_n,1-p)} <= 3 r̃(m,n;p) on a tiny
/// diagonal instance. Requires m = n: then by p-monotonicity the smaller f
/// is the one at max(p, 1-p), so one side may exceed the budget cap without
/// obscuring the minimum.
pub fn theorem_sandwich_check(
    m: usize,
    n: usize,
    p: f64,
    vertex_budget: usize,
) -> Result<SandwichReport, SolverError> {
    if m != n {
        return Err(SolverError::InvalidParameter(
            "sandwich check implemented for the diagonal m = n only".into(),
        ));
    }
    if m > 3 {
        return Err(cap_err("theorem_sandwich_check", format!("m = {m}"), 3));
    }
    let km = SimpleGraph::complete(m);
    let mut chance = QuerySolver::new(QueryGoal::TwoCliques { m, n }, p)?;
    let mut r_tilde = None;
    for budget in 1..=QUERY_BUDGET_CAP {
        let v = chance.value(&LabeledGraph::new(0), vertex_budget, budget)?;
        if v >= 0.5 - 1e-12 {
            r_tilde = Some((budget, v));
            break;
        }
    }
    let (r_tilde_p, r_tilde_prob) = r_tilde.ok_or_else(|| {
        cap_err("theorem_sandwich_check", "r-tilde exceeds the budget cap".into(), QUERY_BUDGET_CAP)
    })?;
    // Solve the easier color first; by p-monotonicity only budgets up to
    // its f can matter for the minimum, which caps the harder scan.
    let (p_easy, p_hard) = if p >= 0.5 { (p, 1.0 - p) } else { (1.0 - p, p) };
    let f_easy = exact_f(&km, p_easy, vertex_budget).ok().map(|(b, _)| b);
    let f_hard = f_easy
        .and_then(|cap| exact_f_up_to(&km, p_hard, vertex_budget, cap).ok().map(|(b, _)| b));
    let (f_red, f_blue) = if p >= 0.5 { (f_easy, f_hard) } else { (f_hard, f_easy) };
    // For m = n the smaller side is the one with the larger success
    // probability, which always fits the cap when the other one does.
    let min_f = match (f_red, f_blue) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => {
            return Err(cap_err(
                "theorem_sandwich_check",
                "both query values exceed the budget cap".into(),
                QUERY_BUDGET_CAP,
            ))
        }
    };
    Ok(SandwichReport {
        m,
        n,
        p,
        r_tilde_p,
        r_tilde_prob,
        f_red,
        f_blue,
        min_f,
        sandwich_ok: r_tilde_p <= min_f && min_f <= 3 * r_tilde_p,
    })
}

/// Smallest N such that every 2-coloring of K_N contains a red K_m or a
/// blue K_n, by backtracking over edge colorings.
pub fn ramsey_number(m: usize, n: usize, search_cap: usize) -> Result<usize, SolverError> {
    fn avoidable(big_n: usize, m: usize, n: usize) -> bool {
        // Is there a coloring of K_{big_n} with no red K_m / blue K_n?
        let pairs: Vec<(usize, usize)> =
            (0..big_n).flat_map(|u| ((u + 1)..big_n).map(move |v| (u, v))).collect();
        let mut red = SimpleGraph::empty(big_n);
        let mut blue = SimpleGraph::empty(big_n);
        fn rec(
            i: usize,
            pairs: &[(usize, usize)],
            red: &mut SimpleGraph,
            blue: &mut SimpleGraph,
            m: usize,
            n: usize,
        ) -> bool {
            if i == pairs.len() {
                return true;
            }
            let (u, v) = pairs[i];
            red.add_edge(u, v).unwrap();
            let ok = !graph::contains_clique(red, m) && rec(i + 1, pairs, red, blue, m, n);
            red.remove_edge(u, v);
            if ok {
                return true;
            }
            blue.add_edge(u, v).unwrap();
            let ok = !graph::contains_clique(blue, n) && rec(i + 1, pairs, red, blue, m, n);
            blue.remove_edge(u, v);
            ok
        }
        rec(0, &pairs, &mut red, &mut blue, m, n)
    }
    for big_n in 1..=search_cap {
        if !avoidable(big_n, m, n) {
            return Ok(big_n);
        }
    }
    Err(cap_err("ramsey_number", format!("r({m},{n}) exceeds the search cap"), search_cap))
}

/// Painter that consults the minimax solver while the board still fits the
/// vertex budget, choosing the color from which Builder needs the most
/// further turns (ideally none within the lookahead horizon); past the
/// budget it falls back to a clique-threat heuristic. Deterministic.
pub struct AdversarialPainter {
    m: usize,
    n: usize,
    vertex_budget: usize,
    horizon: usize,
    solver: RamseySolver,
}

impl AdversarialPainter {
    pub fn new(m: usize, n: usize, vertex_budget: usize, horizon: usize) -> Self {
        let vb = vertex_budget.min(EXACT_VERTEX_CAP);
        AdversarialPainter { m, n, vertex_budget: vb, horizon, solver: RamseySolver::new(m, n) }
    }

    /// Largest clique in `adj`-color through the new edge if it were that
    /// color; smaller is safer for the painter.
    fn threat(board: &Board, edge: (usize, usize), color: Color) -> usize {
        let neighbors = |x: usize| -> Vec<usize> {
            let list = match color {
                Color::Red => board.success_neighbors(x),
                Color::Blue => board.failure_neighbors(x),
            };
            list.iter().map(|&v| v as usize).collect()
        };
        let (u, v) = edge;
        let nu = neighbors(u);
        let common: Vec<usize> = neighbors(v).into_iter().filter(|x| nu.contains(x)).collect();
        // Greedy max clique in the (tiny) common neighborhood.
        fn grow(common: &[usize], chosen: &mut Vec<usize>, neigh: &dyn Fn(usize) -> Vec<usize>) -> usize {
            let mut best = chosen.len();
            for (i, &x) in common.iter().enumerate() {
                if chosen.iter().all(|&c| neigh(c).contains(&x)) {
                    chosen.push(x);
                    let rest: Vec<usize> = common[i + 1..].to_vec();
                    best = best.max(grow(&rest, chosen, neigh));
                    chosen.pop();
                }
            }
            best
        }
        2 + grow(&common, &mut Vec::new(), &neighbors)
    }

    fn board_state(&self, board: &Board, edge: (usize, usize)) -> Option<(LabeledGraph, Vec<usize>, usize)> {
        // Compact the touched vertices (plus the new edge's endpoints).
        let mut verts: Vec<usize> = (0..board.used_vertices())
            .filter(|&v| board.degree(v) > 0)
            .collect();
        for &e in &[edge.0, edge.1] {
            if !verts.contains(&e) {
                verts.push(e);
            }
        }
        verts.sort_unstable();
        if verts.len() > self.vertex_budget {
            return None;
        }
        let idx = |x: usize| verts.iter().position(|&v| v == x).unwrap();
        let mut g = LabeledGraph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in board.success_neighbors(v) {
                let j = idx(w as usize);
                if j > i {
                    g.set(i, j, L_RED);
                }
            }
            for &w in board.failure_neighbors(v) {
                let j = idx(w as usize);
                if j > i {
                    g.set(i, j, L_BLUE);
                }
            }
        }
        let pool = self.vertex_budget - verts.len();
        Some((g, verts, pool))
    }
}

impl crate::engine::PainterPolicy for AdversarialPainter {
    fn id(&self) -> String {
        format!("adversarial m={} n={} vb={} h={}", self.m, self.n, self.vertex_budget, self.horizon)
    }

    fn color(
        &mut self,
        board: &Board,
        edge: (usize, usize),
        _rng: &mut ChaCha8Rng,
    ) -> Result<Color, PolicyError> {
        if let Some((g, verts, pool)) = self.board_state(board, edge) {
            let idx = |x: usize| verts.iter().position(|&v| v == x).unwrap();
            let (u, v) = (idx(edge.0), idx(edge.1));
            let mut score = |label: u8| -> Option<usize> {
                // None = survives the whole horizon; Some(v) = loses in v.
                let mut c = g.clone();
                c.set(u.min(v), u.max(v), label);
                self.solver.value(&c, pool, self.horizon).ok().flatten()
            };
            let red = score(L_RED);
            let blue = score(L_BLUE);
            match (red, blue) {
                (None, Some(_)) => return Ok(Color::Red),
                (Some(_), None) => return Ok(Color::Blue),
                (Some(a), Some(b)) if a != b => {
                    return Ok(if a > b { Color::Red } else { Color::Blue })
                }
                _ => {} // tie: fall through to the threat heuristic
            }
        }
        let rt = Self::threat(board, edge, Color::Red);
        let bt = Self::threat(board, edge, Color::Blue);
        // Never complete a losing clique if the other color avoids it.
        if rt >= self.m && bt < self.n {
            return Ok(Color::Blue);
        }
        if bt >= self.n && rt < self.m {
            return Ok(Color::Red);
        }
        // Slack = distance to the fatal clique size; keep the larger slack.
        let red_slack = self.m as i64 - rt as i64;
        let blue_slack = self.n as i64 - bt as i64;
        Ok(if red_slack >= blue_slack { Color::Red } else { Color::Blue })
    }
}

/// Result of enumerating every painter reply sequence against one
/// deterministic builder.
#[derive(Clone, Debug)]
pub struct ExhaustiveReport {
    pub paths: u64,
    pub max_turns: usize,
    pub all_win: bool,
}

/// Walks the full binary tree of painter color choices against a cloneable
/// deterministic builder; every leaf must be a Builder win (red K_m or blue
/// K_n) within `turn_cap` turns or the report comes back with
/// `all_win = false`.
pub fn exhaustive_painter_check<B: BuilderPolicy + Clone>(
    builder: &B,
    m: usize,
    n: usize,
    turn_cap: usize,
    max_paths: u64,
) -> Result<ExhaustiveReport, SolverError> {
    let mut report = ExhaustiveReport { paths: 0, max_turns: 0, all_win: true };
    let rng = crate::engine::rng::role_rng(0, crate::engine::rng::ROLE_BUILDER);
    fn dfs<B: BuilderPolicy + Clone>(
        mut builder: B,
        mut board: Board,
        mut rng: ChaCha8Rng,
        m: usize,
        n: usize,
        report: &mut ExhaustiveReport,
        max_paths: u64,
    ) -> Result<(), SolverError> {
        if report.paths >= max_paths {
            return Err(cap_err(
                "exhaustive_painter_check",
                "painter tree larger than max_paths".into(),
                max_paths as usize,
            ));
        }
        if board.turns_left() == 0 {
            report.paths += 1;
            report.all_win = false;
            return Ok(());
        }
        match builder.next_move(&board, &mut rng) {
            BuilderMove::Concede(_) => {
                report.paths += 1;
                report.all_win = false;
                Ok(())
            }
            BuilderMove::Edge(u, v) => {
                if u == v || board.is_tried(u, v) || u.max(v) >= board.vertex_cap() {
                    report.paths += 1;
                    report.all_win = false;
                    return Ok(());
                }
                for color in [Color::Red, Color::Blue] {
                    let mut b2 = board.clone();
                    let won = b2.step_colored(u, v, color, m, n);
                    if won {
                        report.paths += 1;
                        report.max_turns = report.max_turns.max(b2.turn());
                    } else {
                        dfs(builder.clone(), b2, rng.clone(), m, n, report, max_paths)?;
                    }
                }
                // Silence the unused mutation of the original board.
                let _ = &mut board;
                Ok(())
            }
        }
    }
    dfs(builder.clone(), Board::new(turn_cap), rng, m, n, &mut report, max_paths)?;
    Ok(report)
}

/// Versioned on-disk cache of solver results, keyed by a parameter string.
pub struct SolverCache {
    path: PathBuf,
    entries: BTreeMap<String, serde_json::Value>,
}

pub const CACHE_VERSION: &str = "solver-cache-v1";

impl SolverCache {
    /// Opens (or initializes) the cache at `path`. A version mismatch or
    /// unreadable file starts fresh.
    pub fn open(path: PathBuf) -> Self {
        let entries = std::fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<serde_json::Value>(&s).ok())
            .and_then(|v| {
                if v.get("version")?.as_str()? != CACHE_VERSION {
                    return None;
                }
                serde_json::from_value(v.get("entries")?.clone()).ok()
            })
            .unwrap_or_default();
        SolverCache { path, entries }
    }

    pub fn get(&self, key: &str) -> Option<&serde_json::Value> {
        self.entries.get(key)
    }

    pub fn put(&mut self, key: String, value: serde_json::Value) {
        self.entries.insert(key, value);
    }

    pub fn save(&self) -> std::io::Result<()> {
        let doc = serde_json::json!({ "version": CACHE_VERSION, "entries": self.entries });
        std::fs::write(&self.path, serde_json::to_string_pretty(&doc).expect("serializable"))
    }
}

/// Cache key for the online Ramsey value.
pub fn ramsey_cache_key(m: usize, n: usize, vertex_budget: usize, turn_cap: usize) -> String {
    format!("online-ramsey m={m} n={n} vb={vertex_budget} cap={turn_cap}")
}
