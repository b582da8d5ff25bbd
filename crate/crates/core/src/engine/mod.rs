//! Turn-by-turn state machines for both games.
//!
//! The colored game (Builder vs. Painter) and the query game (Builder vs.
//! chance) share one board representation and one builder interface: from
//! the builder's side both games look like a graph of "successful" edges
//! (red / built) and "failed" edges (blue / failed), plus a pool of unused
//! vertices. A painter additionally sees the presented edge.
//!
//! The vertex pool is lazily allocated and capped at `2 * turn_cap`; a game
//! of N turns never needs more than 2N vertices.

pub mod rng;
pub mod transcript;

use rand_chacha::ChaCha8Rng;

pub use transcript::{MoveRecord, MoveResult, Outcome, Transcript};

use crate::error::{EngineError, PolicyError};
use crate::graph::SimpleGraph;

/// Painter's answer for one presented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

/// A builder's decision each turn: play an edge, or concede with a reason
/// (recorded as a transcript note; the game ends without success).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderMove {
    Edge(usize, usize),
    Concede(String),
}

/// The public board: successful and failed edges plus pool accounting.
/// In the colored game success = red and failure = blue; in the query game
/// success = built and failure = failed.
#[derive(Clone, Debug)]
pub struct Board {
    success_adj: Vec<Vec<u32>>,
    failure_adj: Vec<Vec<u32>>,
    used: usize,
    vertex_cap: usize,
    turn: usize,
    turn_cap: usize,
}

impl Board {
    pub(crate) fn new(turn_cap: usize) -> Self {
        Board {
            success_adj: Vec::new(),
            failure_adj: Vec::new(),
            used: 0,
            vertex_cap: 2 * turn_cap,
            turn: 0,
            turn_cap,
        }
    }

    /// Number of vertices touched by some edge so far.
    pub fn used_vertices(&self) -> usize {
        self.used
    }

    /// Hard cap on vertex indices (2 · turn_cap).
    pub fn vertex_cap(&self) -> usize {
        self.vertex_cap
    }

    /// Completed turns.
    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn turn_cap(&self) -> usize {
        self.turn_cap
    }

    pub fn turns_left(&self) -> usize {
        self.turn_cap - self.turn
    }

    /// Sorted successful-edge neighbors of `u` (empty for fresh vertices).
    pub fn success_neighbors(&self, u: usize) -> &[u32] {
        self.success_adj.get(u).map_or(&[], |v| v.as_slice())
    }

    /// Sorted failed-edge neighbors of `u`.
    pub fn failure_neighbors(&self, u: usize) -> &[u32] {
        self.failure_adj.get(u).map_or(&[], |v| v.as_slice())
    }

    /// Total degree of `u` counting both edge kinds.
    pub fn degree(&self, u: usize) -> usize {
        self.success_neighbors(u).len() + self.failure_neighbors(u).len()
    }

    pub fn has_success_edge(&self, u: usize, v: usize) -> bool {
        self.success_neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn has_failure_edge(&self, u: usize, v: usize) -> bool {
        self.failure_neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// True iff the pair has already been played/queried.
    pub fn is_tried(&self, u: usize, v: usize) -> bool {
        self.has_success_edge(u, v) || self.has_failure_edge(u, v)
    }

    /// The graph of successful edges on the touched vertices.
    pub fn success_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.used);
        for u in 0..self.used {
            for &v in self.success_neighbors(u) {
                if (v as usize) > u {
                    g.add_edge(u, v as usize).expect("board edges are simple");
                }
            }
        }
        g
    }

    fn grow_to(&mut self, v: usize) {
        if v >= self.success_adj.len() {
            self.success_adj.resize(v + 1, Vec::new());
            self.failure_adj.resize(v + 1, Vec::new());
        }
        self.used = self.used.max(v + 1);
    }

    fn record(&mut self, u: usize, v: usize, success: bool) {
        self.grow_to(u.max(v));
        let table = if success { &mut self.success_adj } else { &mut self.failure_adj };
        let pos = table[u].partition_point(|&x| x < v as u32);
        table[u].insert(pos, v as u32);
        let pos = table[v].partition_point(|&x| x < u as u32);
        table[v].insert(pos, u as u32);
        self.turn += 1;
    }

    /// Whether the successful subgraph has an `m`-clique through edge (u,v)
    /// (the edge must already be recorded).
    fn success_clique_through(&self, u: usize, v: usize, m: usize) -> bool {
        clique_through_edge(&self.success_adj, u, v, m)
    }

    fn failure_clique_through(&self, u: usize, v: usize, m: usize) -> bool {
        clique_through_edge(&self.failure_adj, u, v, m)
    }

    /// Record one colored move and report whether it completed the moving
    /// color's target clique (red K_m / blue K_n). Used by exhaustive
    /// painter-tree enumeration, which steps a board outside `play_*`.
    pub(crate) fn step_colored(&mut self, u: usize, v: usize, color: Color, m: usize, n: usize) -> bool {
        match color {
            Color::Red => {
                self.record(u, v, true);
                self.success_clique_through(u, v, m)
            }
            Color::Blue => {
                self.record(u, v, false);
                self.failure_clique_through(u, v, n)
            }
        }
    }
}

/// Does `adj` contain an m-clique using the edge (u,v)? Assumes (u,v) is
/// present. Searches for an (m-2)-clique in the common neighborhood.
fn clique_through_edge(adj: &[Vec<u32>], u: usize, v: usize, m: usize) -> bool {
    if m <= 2 {
        return true;
    }
    let common = sorted_intersection(&adj[u], &adj[v]);
    clique_in_candidates(adj, &common, m - 2)
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn clique_in_candidates(adj: &[Vec<u32>], candidates: &[u32], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    for (i, &x) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            return false;
        }
        let rest: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&y| adj[x as usize].binary_search(&y).is_ok())
            .collect();
        if clique_in_candidates(adj, &rest, need - 1) {
            return true;
        }
    }
    false
}

/// Does the successful subgraph contain a copy of `h` using edge (u,v)?
/// `h` is tiny (engine targets are at most 8 vertices), so plain
/// backtracking anchored at the new edge is cheap.
fn subgraph_through_edge(adj: &[Vec<u32>], u: usize, v: usize, h: &SimpleGraph) -> bool {
    let hv = h.vertex_count();
    if hv < 2 {
        return hv == 0 || !adj.is_empty();
    }
    let mut assignment = vec![usize::MAX; hv];
    for (x, y) in h.edges() {
        for (gu, gv) in [(u, v), (v, u)] {
            assignment[x] = gu;
            assignment[y] = gv;
            if extend_embedding(adj, h, &mut assignment) {
                return true;
            }
            assignment[x] = usize::MAX;
            assignment[y] = usize::MAX;
        }
    }
    false
}

fn extend_embedding(adj: &[Vec<u32>], h: &SimpleGraph, assignment: &mut Vec<usize>) -> bool {
    // Pick an unplaced pattern vertex with a placed neighbor if possible.
    let next = (0..h.vertex_count())
        .filter(|&x| assignment[x] == usize::MAX)
        .max_by_key(|&x| {
            h.neighbors(x).iter().filter(|&&y| assignment[y as usize] != usize::MAX).count()
        });
    let Some(x) = next else { return true };

    let placed: Vec<usize> = h
        .neighbors(x)
        .iter()
        .map(|&y| assignment[y as usize])
        .filter(|&g| g != usize::MAX)
        .collect();

    let try_candidates = |cands: &mut dyn Iterator<Item = usize>,
                          assignment: &mut Vec<usize>|
     -> bool {
        for g in cands {
            if assignment.contains(&g) {
                continue;
            }
            if !placed.iter().all(|&q| adj[g].binary_search(&(q as u32)).is_ok()) {
                continue;
            }
            assignment[x] = g;
            if extend_embedding(adj, h, assignment) {
                return true;
            }
            assignment[x] = usize::MAX;
        }
        false
    };

    if let Some(&anchor) = placed.first() {
        let mut it = adj[anchor].iter().map(|&g| g as usize);
        try_candidates(&mut it, assignment)
    } else {
        // Disconnected pattern piece: any vertex of the built graph works
        // as a start; scan vertices that have at least one successful edge,
        // plus nothing else (isolated pattern vertices cannot occur in
        // targets with no isolated vertices, which all engine targets are).
        let mut it = (0..adj.len()).filter(|&g| !adj[g].is_empty());
        try_candidates(&mut it, assignment)
    }
}

// ---------------------------------------------------------------------------
// Policy interfaces
// ---------------------------------------------------------------------------

/// Plays a fixed list of pairs in order, then concedes. Used for crafted
/// test sequences and adversarial scripts.
pub struct ScriptBuilder {
    moves: Vec<(usize, usize)>,
    next: usize,
}

impl ScriptBuilder {
    pub fn new(moves: Vec<(usize, usize)>) -> Self {
        ScriptBuilder { moves, next: 0 }
    }
}

impl BuilderPolicy for ScriptBuilder {
    fn id(&self) -> String {
        format!("script len={}", self.moves.len())
    }

    fn next_move(&mut self, _board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        match self.moves.get(self.next) {
            Some(&(u, v)) => {
                self.next += 1;
                BuilderMove::Edge(u, v)
            }
            None => BuilderMove::Concede("script exhausted".into()),
        }
    }
}

/// An edge-proposing strategy. One instance drives one game; it may keep
/// mutable phase state across turns. `rng` is the builder substream.
pub trait BuilderPolicy {
    /// Stable identifier recorded in transcripts.
    fn id(&self) -> String;

    /// The next pair to play. Must be an untried pair of vertices below
    /// `board.vertex_cap()`; violations abort the game.
    fn next_move(&mut self, board: &Board, rng: &mut ChaCha8Rng) -> BuilderMove;
}

/// An edge-coloring strategy. Sees only the public board and the presented
/// edge; `rng` is the painter substream.
pub trait PainterPolicy {
    fn id(&self) -> String;

    fn color(
        &mut self,
        board: &Board,
        edge: (usize, usize),
        rng: &mut ChaCha8Rng,
    ) -> Result<Color, PolicyError>;
}

// ---------------------------------------------------------------------------
// Game loops
// ---------------------------------------------------------------------------

fn validated_edge(
    board: &Board,
    builder_id: &str,
    mv: &BuilderMove,
) -> Result<Option<(usize, usize)>, EngineError> {
    let (u, v) = match mv {
        BuilderMove::Concede(_) => return Ok(None),
        BuilderMove::Edge(u, v) => (*u, *v),
    };
    let abort = |reason: String| {
        EngineError::Policy(PolicyError::Aborted { policy: builder_id.to_string(), reason })
    };
    if u == v {
        return Err(abort(format!("proposed self-loop at vertex {u}")));
    }
    if u >= board.vertex_cap() || v >= board.vertex_cap() {
        return Err(EngineError::VertexBudget {
            needed: u.max(v),
            cap: board.vertex_cap(),
        });
    }
    if board.is_tried(u, v) {
        return Err(abort(format!("proposed already-played pair ({u}, {v})")));
    }
    Ok(Some((u.min(v), u.max(v))))
}

/// Plays one online Ramsey game: Builder proposes edges, Painter colors
/// them, and the game ends at the first red `K_m` or blue `K_n`, at
/// `turn_cap`, or when the builder concedes.
pub fn play_online_ramsey(
    builder: &mut dyn BuilderPolicy,
    painter: &mut dyn PainterPolicy,
    m: usize,
    n: usize,
    turn_cap: usize,
    seed: u64,
) -> Result<Transcript, EngineError> {
    assert!(m >= 2 && n >= 2, "clique targets must be at least 2");
    assert!(turn_cap >= 1);
    let mut board = Board::new(turn_cap);
    let mut builder_rng = rng::role_rng(seed, rng::ROLE_BUILDER);
    let mut painter_rng = rng::role_rng(seed, rng::ROLE_PAINTER);
    let mut records = Vec::new();
    let mut notes = Vec::new();
    let mut outcome = Outcome::BudgetExhausted;

    for turn in 1..=turn_cap {
        let mv = builder.next_move(&board, &mut builder_rng);
        let Some((u, v)) = validated_edge(&board, &builder.id(), &mv)? else {
            if let BuilderMove::Concede(reason) = mv {
                notes.push((turn - 1, reason));
            }
            break;
        };
        let color = painter.color(&board, (u, v), &mut painter_rng)?;
        let (success, result, clique_outcome, target) = match color {
            Color::Red => (true, MoveResult::Red, Outcome::RedClique, m),
            Color::Blue => (false, MoveResult::Blue, Outcome::BlueClique, n),
        };
        board.record(u, v, success);
        records.push(MoveRecord { turn, u, w: v, result });
        let hit = if success {
            board.success_clique_through(u, v, target)
        } else {
            board.failure_clique_through(u, v, target)
        };
        if hit {
            outcome = clique_outcome;
            break;
        }
    }

    Ok(Transcript {
        game: format!("colored m={m} n={n}"),
        seed,
        turn_cap,
        builder: builder.id(),
        painter: painter.id(),
        records,
        notes,
        outcome,
    })
}

/// Plays one subgraph query game: each proposed pair is built independently
/// with probability `p` from the chance substream. If `stop_at_first_copy`
/// the game ends as soon as the built graph contains `target`; otherwise it
/// always runs to `turn_cap` (used for expectation measurements).
pub fn play_subgraph_query_with(
    builder: &mut dyn BuilderPolicy,
    target: &SimpleGraph,
    target_name: &str,
    p: f64,
    turn_cap: usize,
    seed: u64,
    stop_at_first_copy: bool,
) -> Result<Transcript, EngineError> {
    assert!(p > 0.0 && p < 1.0, "query probability must be in (0,1)");
    assert!(turn_cap >= 1);
    use rand::Rng;
    let mut board = Board::new(turn_cap);
    let mut builder_rng = rng::role_rng(seed, rng::ROLE_BUILDER);
    let mut chance_rng = rng::role_rng(seed, rng::ROLE_CHANCE);
    let mut records = Vec::new();
    let mut notes = Vec::new();
    let mut outcome = Outcome::BudgetExhausted;
    let mut found = false;

    for turn in 1..=turn_cap {
        let mv = builder.next_move(&board, &mut builder_rng);
        let Some((u, v)) = validated_edge(&board, &builder.id(), &mv)? else {
            if let BuilderMove::Concede(reason) = mv {
                notes.push((turn - 1, reason));
            }
            break;
        };
        let built = chance_rng.gen_bool(p);
        board.record(u, v, built);
        records.push(MoveRecord {
            turn,
            u,
            w: v,
            result: if built { MoveResult::Success } else { MoveResult::Failure },
        });
        if built && !found && subgraph_through_edge(&board.success_adj, u, v, target) {
            found = true;
            if stop_at_first_copy {
                outcome = Outcome::Found;
                break;
            }
        }
    }
    if found {
        outcome = Outcome::Found;
    }

    Ok(Transcript {
        game: format!("query target={target_name} p={p}"),
        seed,
        turn_cap,
        builder: builder.id(),
        painter: format!("chance p={p}"),
        records,
        notes,
        outcome,
    })
}

/// [`play_subgraph_query_with`] stopping at the first embedded copy.
pub fn play_subgraph_query(
    builder: &mut dyn BuilderPolicy,
    target: &SimpleGraph,
    target_name: &str,
    p: f64,
    turn_cap: usize,
    seed: u64,
) -> Result<Transcript, EngineError> {
    play_subgraph_query_with(builder, target, target_name, p, turn_cap, seed, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use rand::Rng;

    /// Builds the first untried pair in lexicographic order over touched
    /// vertices plus one fresh vertex.
    pub struct LexBuilder;

    impl BuilderPolicy for LexBuilder {
        fn id(&self) -> String {
            "lex".into()
        }
        fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
            let used = board.used_vertices().max(2);
            for limit in [used, used + 1, used + 2] {
                let limit = limit.min(board.vertex_cap());
                for u in 0..limit {
                    for v in (u + 1)..limit {
                        if !board.is_tried(u, v) {
                            return BuilderMove::Edge(u, v);
                        }
                    }
                }
            }
            BuilderMove::Concede("no untried pair".into())
        }
    }

    /// Star builder: every edge from vertex 0 to a fresh vertex.
    struct StarBuilder;

    impl BuilderPolicy for StarBuilder {
        fn id(&self) -> String {
            "star".into()
        }
        fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
            let fresh = board.used_vertices().max(1);
            if fresh >= board.vertex_cap() {
                return BuilderMove::Concede("vertex pool exhausted".into());
            }
            BuilderMove::Edge(0, fresh)
        }
    }

    struct ConstPainter(Color);

    impl PainterPolicy for ConstPainter {
        fn id(&self) -> String {
            match self.0 {
                Color::Red => "all-red".into(),
                Color::Blue => "all-blue".into(),
            }
        }
        fn color(
            &mut self,
            _board: &Board,
            _edge: (usize, usize),
            _rng: &mut ChaCha8Rng,
        ) -> Result<Color, PolicyError> {
            Ok(self.0)
        }
    }

    struct CoinPainter(f64);

    impl PainterPolicy for CoinPainter {
        fn id(&self) -> String {
            format!("coin p={}", self.0)
        }
        fn color(
            &mut self,
            _board: &Board,
            _edge: (usize, usize),
            rng: &mut ChaCha8Rng,
        ) -> Result<Color, PolicyError> {
            Ok(if rng.gen_bool(self.0) { Color::Red } else { Color::Blue })
        }
    }

    #[test]
    fn triangle_vs_all_red_ends_at_turn_three() {
        let t = play_online_ramsey(&mut LexBuilder, &mut ConstPainter(Color::Red), 3, 3, 10, 1)
            .unwrap();
        assert_eq!(t.outcome, Outcome::RedClique);
        assert_eq!(t.turns_used(), 3);
        assert_eq!(t.success_indicator(), 1);
    }

    #[test]
    fn star_vs_all_red_exhausts_budget() {
        let t = play_online_ramsey(&mut StarBuilder, &mut ConstPainter(Color::Red), 3, 3, 10, 1)
            .unwrap();
        assert_eq!(t.outcome, Outcome::BudgetExhausted);
        assert_eq!(t.turns_used(), 10);
    }

    #[test]
    fn all_blue_forces_blue_clique() {
        let t = play_online_ramsey(&mut LexBuilder, &mut ConstPainter(Color::Blue), 3, 3, 10, 1)
            .unwrap();
        assert_eq!(t.outcome, Outcome::BlueClique);
        assert_eq!(t.turns_used(), 3);
    }

    #[test]
    fn transcripts_are_deterministic() {
        for seed in [0u64, 7, 991] {
            let a = play_online_ramsey(&mut LexBuilder, &mut CoinPainter(0.5), 3, 3, 30, seed)
                .unwrap();
            let b = play_online_ramsey(&mut LexBuilder, &mut CoinPainter(0.5), 3, 3, 30, seed)
                .unwrap();
            assert_eq!(a.render(), b.render());
        }
    }

    #[test]
    fn query_game_k2_found_on_first_success() {
        let k2 = SimpleGraph::complete(2);
        let t =
            play_subgraph_query(&mut LexBuilder, &k2, "K2", 0.5, 100, 3).unwrap();
        assert_eq!(t.outcome, Outcome::Found);
        // Every record but the last is a failure.
        for r in &t.records[..t.records.len() - 1] {
            assert_eq!(r.result, MoveResult::Failure);
        }
        assert_eq!(t.records.last().unwrap().result, MoveResult::Success);
    }

    #[test]
    fn query_game_k3_needs_three_edges() {
        let k3 = SimpleGraph::complete(3);
        let t = play_subgraph_query(&mut LexBuilder, &k3, "K3", 0.999, 2, 3).unwrap();
        assert_eq!(t.outcome, Outcome::BudgetExhausted);
    }

    #[test]
    fn outcome_soundness_and_first_hit() {
        // When red_clique is declared, the red graph must contain K_m and no
        // proper prefix may already contain it.
        for seed in 0..50u64 {
            let t = play_online_ramsey(&mut LexBuilder, &mut CoinPainter(0.6), 3, 3, 40, seed)
                .unwrap();
            if t.outcome == Outcome::RedClique {
                let red = t.success_graph();
                assert!(graph::contains_clique(&red, 3));
                let mut prefix = SimpleGraph::empty(red.vertex_count());
                for r in &t.records[..t.records.len() - 1] {
                    if r.result == MoveResult::Red {
                        prefix.add_edge(r.u, r.w).unwrap();
                    }
                }
                assert!(!graph::contains_clique(&prefix, 3), "first-hit violated");
            }
        }
    }

    #[test]
    fn edge_accounting_and_vertex_cap() {
        let t = play_online_ramsey(&mut LexBuilder, &mut CoinPainter(0.5), 4, 4, 25, 11).unwrap();
        assert_eq!(t.records.len(), t.turns_used());
        let mut seen = std::collections::HashSet::new();
        for r in &t.records {
            assert!(seen.insert((r.u, r.w)), "pair presented twice");
            assert!(r.u < 50 && r.w < 50, "vertex cap 2*turn_cap violated");
        }
    }

    #[test]
    fn illegal_move_aborts_with_diagnostic() {
        struct Repeater;
        impl BuilderPolicy for Repeater {
            fn id(&self) -> String {
                "repeater".into()
            }
            fn next_move(&mut self, _b: &Board, _r: &mut ChaCha8Rng) -> BuilderMove {
                BuilderMove::Edge(0, 1)
            }
        }
        let err = play_online_ramsey(&mut Repeater, &mut ConstPainter(Color::Red), 3, 3, 5, 1)
            .unwrap_err();
        assert!(err.to_string().contains("repeater"));
    }

    #[test]
    fn query_to_cap_keeps_counting() {
        let k2 = SimpleGraph::complete(2);
        let t = play_subgraph_query_with(&mut LexBuilder, &k2, "K2", 0.5, 40, 5, false).unwrap();
        assert_eq!(t.turns_used(), 40);
        assert_eq!(t.outcome, Outcome::Found);
    }

    #[test]
    fn subgraph_detection_matches_counter() {
        // Random query games: the engine's found flag must agree with the
        // offline copy counter on the final built graph.
        let h2 = graph::make_half_graph_split(2);
        for seed in 0..20u64 {
            let t = play_subgraph_query_with(
                &mut LexBuilder,
                h2.graph(),
                "H2",
                0.55,
                18,
                seed,
                false,
            )
            .unwrap();
            let built = t.success_graph();
            let copies = graph::count_labeled_subgraph_copies(h2.graph(), &built).unwrap();
            assert_eq!(t.outcome == Outcome::Found, copies > 0, "seed {seed}");
        }
    }
}
