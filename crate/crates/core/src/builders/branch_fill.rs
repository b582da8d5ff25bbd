//! Clique builders for the query game: the triangle strategy and the
//! three-phase Branch-and-Fill strategy.
//!
//! Branch-and-Fill targets K_m with m = a + b + 1: build a seed clique U on
//! a vertices, harvest about p^a T common neighbors W of U, then repeat
//! p^-alpha rounds of "pick a pivot w_1 in W, probe its edges to the rest of
//! W, fill the successful set W_1 completely, discard {w_1} union W_1".
//! T = c_T p^(-(2a+b+1)/2 + alpha/b) is the turn-count scale; the engine
//! detects the finished clique, so every phase ends early on success.

use rand_chacha::ChaCha8Rng;

use crate::builders::{alpha, bnf_turn_exponent, choose_ab, fresh_vertex};
use crate::engine::{Board, BuilderMove, BuilderPolicy};
use crate::error::PolicyError;

/// The triangle strategy: query pairs at a single center vertex, and fill
/// pairs among the found neighbors as soon as they exist. Querying ~p^(-3/2)
/// center pairs yields ~p^(-1/2) neighbors, whose ~p^-1 internal pairs close
/// a triangle with constant probability; the eager interleaving keeps the
/// same scale while never idling, and runs until the engine stops it.
pub struct TriangleBuilder;

impl BuilderPolicy for TriangleBuilder {
    fn id(&self) -> String {
        "triangle".into()
    }

    fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        let center = 0usize;
        let nbrs = board.success_neighbors(center);
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !board.is_tried(x as usize, y as usize) {
                    return BuilderMove::Edge(x as usize, y as usize);
                }
            }
        }
        match fresh_vertex(board) {
            Some(v) if v != center => BuilderMove::Edge(center, v),
            Some(_) => BuilderMove::Edge(center, 1),
            None => BuilderMove::Concede("vertex pool exhausted".into()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BranchAndFillConfig {
    /// Target clique size.
    pub m: usize,
    pub a: usize,
    pub b: usize,
    /// Multiplier on the per-attempt turn budget T; the asymptotic exponent
    /// is unaffected, only the constant in front.
    pub c_t: f64,
    /// Full strategy restarts before conceding; `None` = unlimited.
    pub max_restarts: Option<usize>,
}

impl BranchAndFillConfig {
    /// The canonical split for K_m with default constants.
    pub fn for_m(m: usize) -> Result<Self, PolicyError> {
        let (a, b) = choose_ab(m);
        alpha(a, b)?;
        Ok(BranchAndFillConfig { m, a, b, c_t: 1.0, max_restarts: Some(3) })
    }

    pub fn validate(&self) -> Result<(), PolicyError> {
        if self.a + self.b + 1 != self.m {
            return Err(PolicyError::BadParameter {
                policy: "bnf".into(),
                detail: format!("split ({}, {}) does not sum to m-1 = {}", self.a, self.b,
                    self.m - 1),
            });
        }
        if self.c_t <= 0.0 {
            return Err(PolicyError::BadParameter {
                policy: "bnf".into(),
                detail: "c_T must be positive".into(),
            });
        }
        alpha(self.a, self.b).map(|_| ())
    }

    /// T = ceil(c_T * p^exponent) with exponent from the (a, b) split.
    pub fn t_scale(&self, p: f64) -> usize {
        let e = bnf_turn_exponent(self.a, self.b).expect("validated split");
        let e = *e.numer() as f64 / *e.denom() as f64;
        (self.c_t * p.powf(e)).ceil().max(1.0) as usize
    }

    /// Number of phase-3 rounds, ceil(p^-alpha).
    pub fn rounds(&self, p: f64) -> usize {
        let al = alpha(self.a, self.b).expect("validated split");
        let al = *al.numer() as f64 / *al.denom() as f64;
        p.powf(-al).ceil().max(1.0) as usize
    }
}

enum Phase {
    /// Growing the seed clique U greedily: candidate `cand` has matched
    /// `matched` members of U so far.
    Seed { cand: Option<(usize, usize)> },
    /// Harvesting common neighbors of U: candidate and progress as above.
    Harvest { cand: Option<(usize, usize)> },
    /// Probing pivot w1 against the remaining W (by index).
    Probe { w1: usize, idx: usize },
    /// Filling all pairs inside W1.
    Fill { w1_set: Vec<usize>, pair: usize },
}

pub struct BranchAndFillBuilder {
    cfg: BranchAndFillConfig,
    p: f64,
    t: usize,
    w_target: usize,
    rounds_left: usize,
    u: Vec<usize>,
    w: Vec<usize>,
    phase: Phase,
    restarts_done: usize,
    /// Monotone fresh-vertex cursor: the first seed vertex is claimed before
    /// any edge touches it, so the board's used count alone is not enough.
    next_fresh: usize,
}

impl BranchAndFillBuilder {
    pub fn new(cfg: BranchAndFillConfig, p: f64) -> Result<Self, PolicyError> {
        cfg.validate()?;
        if p <= 0.0 || p >= 1.0 {
            return Err(PolicyError::BadParameter {
                policy: "bnf".into(),
                detail: format!("p={p} outside (0,1)"),
            });
        }
        let t = cfg.t_scale(p);
        // |W| target = ceil(p^a T): the expected survivor count of T
        // candidate probes against the a-clique.
        let w_target = (p.powi(cfg.a as i32) * t as f64).ceil().max(2.0) as usize;
        let rounds_left = cfg.rounds(p);
        Ok(BranchAndFillBuilder {
            cfg,
            p,
            t,
            w_target,
            rounds_left,
            u: Vec::new(),
            w: Vec::new(),
            phase: Phase::Seed { cand: None },
            restarts_done: 0,
            next_fresh: 0,
        })
    }

    fn restart(&mut self) -> Option<BuilderMove> {
        if let Some(max) = self.cfg.max_restarts {
            if self.restarts_done >= max {
                return Some(BuilderMove::Concede(format!(
                    "gave up after {max} restarts"
                )));
            }
        }
        self.restarts_done += 1;
        self.u.clear();
        self.w.clear();
        self.rounds_left = self.cfg.rounds(self.p);
        self.phase = Phase::Seed { cand: None };
        None
    }

    fn step(&mut self, board: &Board) -> BuilderMove {
        // Bounded by phase transitions per call; each loop iteration either
        // returns a move or advances the phase machine.
        for _ in 0..10_000 {
            // Round bookkeeping for the probe phase happens outside the
            // match so the restart path can rebuild the whole state.
            if matches!(self.phase, Phase::Probe { .. })
                && (self.w.len() < 2 || self.rounds_left == 0)
            {
                match self.restart() {
                    Some(mv) => return mv,
                    None => continue,
                }
            }
            match &mut self.phase {
                Phase::Seed { cand } => {
                    if self.u.len() >= self.cfg.a {
                        self.phase = Phase::Harvest { cand: None };
                        continue;
                    }
                    match cand.take() {
                        Some((v, matched)) => {
                            // Absorb the result of the last seed query.
                            let prev = self.u[matched];
                            if board.has_success_edge(v, prev) {
                                if matched + 1 == self.u.len() {
                                    self.u.push(v);
                                    // next candidate
                                } else {
                                    let next = matched + 1;
                                    *cand = Some((v, next));
                                    return BuilderMove::Edge(v, self.u[next]);
                                }
                            }
                            // On failure the candidate is discarded.
                        }
                        None => {}
                    }
                    if self.u.len() >= self.cfg.a {
                        continue;
                    }
                    let v = self.next_fresh.max(board.used_vertices());
                    if v >= board.vertex_cap() {
                        return BuilderMove::Concede("vertex pool exhausted".into());
                    }
                    self.next_fresh = v + 1;
                    if self.u.is_empty() {
                        // First seed vertex joins with no edges; it only
                        // becomes "used" once an edge touches it, so just
                        // record it and let the next query materialize it.
                        self.u.push(v);
                        continue;
                    }
                    *cand = Some((v, 0));
                    return BuilderMove::Edge(v, self.u[0]);
                }
                Phase::Harvest { cand } => {
                    if self.cfg.a == 0 {
                        // Degenerate split: the common neighborhood of an
                        // empty clique is unconstrained, so W is T fresh
                        // vertices taken without queries.
                        let base = self.next_fresh.max(board.used_vertices());
                        if base + self.t > board.vertex_cap() {
                            return BuilderMove::Concede("vertex pool exhausted".into());
                        }
                        self.w = (base..base + self.t).collect();
                        self.next_fresh = base + self.t;
                        self.phase = Phase::Probe { w1: 0, idx: 0 };
                        continue;
                    }
                    if self.w.len() >= self.w_target {
                        self.phase = Phase::Probe { w1: 0, idx: 0 };
                        continue;
                    }
                    match cand.take() {
                        Some((v, matched)) => {
                            if board.has_success_edge(v, self.u[matched]) {
                                if matched + 1 == self.u.len() {
                                    self.w.push(v);
                                } else {
                                    let next = matched + 1;
                                    *cand = Some((v, next));
                                    return BuilderMove::Edge(v, self.u[next]);
                                }
                            }
                        }
                        None => {}
                    }
                    if self.w.len() >= self.w_target {
                        continue;
                    }
                    let v = self.next_fresh.max(board.used_vertices());
                    if v >= board.vertex_cap() {
                        return BuilderMove::Concede("vertex pool exhausted".into());
                    }
                    self.next_fresh = v + 1;
                    *cand = Some((v, 0));
                    return BuilderMove::Edge(v, self.u[0]);
                }
                Phase::Probe { w1, idx } => {
                    let pivot = self.w[*w1];
                    // Query pivot against each later W member in order.
                    while *idx < self.w.len() {
                        let other = self.w[*idx];
                        *idx += 1;
                        if other != pivot && !board.is_tried(pivot, other) {
                            return BuilderMove::Edge(pivot, other);
                        }
                    }
                    // Probe finished: W1 = successful neighbors of the pivot
                    // within W.
                    let w1_set: Vec<usize> = self
                        .w
                        .iter()
                        .copied()
                        .filter(|&o| o != pivot && board.has_success_edge(pivot, o))
                        .collect();
                    // Remove {w1} union W1 from W for later rounds.
                    self.w.retain(|&o| o != pivot && !w1_set.contains(&o));
                    self.rounds_left -= 1;
                    self.phase = Phase::Fill { w1_set, pair: 0 };
                }
                Phase::Fill { w1_set, pair } => {
                    let k = w1_set.len();
                    let total = k * k.saturating_sub(1) / 2;
                    while *pair < total {
                        let (i, j) = super::branching::unrank_pair(k, *pair);
                        *pair += 1;
                        if !board.is_tried(w1_set[i], w1_set[j]) {
                            return BuilderMove::Edge(w1_set[i], w1_set[j]);
                        }
                    }
                    self.phase = Phase::Probe { w1: 0, idx: 0 };
                }
            }
        }
        BuilderMove::Concede("phase machine failed to produce a move".into())
    }
}

impl BuilderPolicy for BranchAndFillBuilder {
    fn id(&self) -> String {
        format!(
            "bnf m={} a={} b={} c_T={} p={}",
            self.cfg.m, self.cfg.a, self.cfg.b, self.cfg.c_t, self.p
        )
    }

    fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        self.step(board)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_subgraph_query, Outcome};
    use crate::graph::SimpleGraph;

    #[test]
    fn triangle_builder_finds_triangles() {
        let k3 = SimpleGraph::complete(3);
        let mut wins = 0;
        for seed in 0..200u64 {
            let mut b = TriangleBuilder;
            let t = play_subgraph_query(&mut b, &k3, "K3", 0.5, 60, seed).unwrap();
            if t.outcome == Outcome::Found {
                wins += 1;
                // The closing move must be a success.
                assert_eq!(
                    t.records.last().unwrap().result,
                    crate::engine::MoveResult::Success
                );
            }
        }
        // At p = 0.5 and 60 queries a triangle is found nearly always.
        assert!(wins > 180, "wins {wins}");
    }

    #[test]
    fn bnf_config_defaults() {
        let c4 = BranchAndFillConfig::for_m(4).unwrap();
        assert_eq!((c4.a, c4.b), (0, 3));
        let c5 = BranchAndFillConfig::for_m(5).unwrap();
        assert_eq!((c5.a, c5.b), (1, 3));
        // m=4: T ~ p^-2, one round.
        assert_eq!(c4.t_scale(0.1), 100);
        assert_eq!(c4.rounds(0.1), 1);
        // m=5: alpha = 1 so p^-1 rounds, T ~ p^-8/3.
        assert_eq!(c5.rounds(0.1), 10);
    }

    #[test]
    fn bnf_finds_k4() {
        let k4 = SimpleGraph::complete(4);
        let p = 0.4;
        let mut wins = 0;
        let trials = 120;
        for seed in 0..trials {
            let mut cfg = BranchAndFillConfig::for_m(4).unwrap();
            cfg.c_t = 3.0;
            let mut b = BranchAndFillBuilder::new(cfg, p).unwrap();
            let cap = (40.0 * p.powf(-2.0)) as usize;
            let t = play_subgraph_query(&mut b, &k4, "K4", p, cap, seed).unwrap();
            if t.outcome == Outcome::Found {
                wins += 1;
            }
        }
        assert!(wins * 2 > trials, "wins {wins}/{trials}");
    }

    #[test]
    fn bnf_finds_k5_with_seed_clique() {
        // m=5 exercises the a=1 seed phase and multi-round fill.
        let k5 = SimpleGraph::complete(5);
        let p = 0.5;
        let mut wins = 0;
        let trials = 60;
        for seed in 0..trials {
            let mut cfg = BranchAndFillConfig::for_m(5).unwrap();
            cfg.c_t = 4.0;
            cfg.max_restarts = Some(10);
            let mut b = BranchAndFillBuilder::new(cfg, p).unwrap();
            let cap = (200.0 * p.powf(-8.0 / 3.0)) as usize;
            let t = play_subgraph_query(&mut b, &k5, "K5", p, cap, seed).unwrap();
            if t.outcome == Outcome::Found {
                wins += 1;
            }
        }
        assert!(wins * 2 > trials, "wins {wins}/{trials}");
    }

    #[test]
    fn restart_cap_concedes() {
        let k4 = SimpleGraph::complete(4);
        // Tiny p with a small cap: the strategy restarts and concedes rather
        // than spinning.
        let mut cfg = BranchAndFillConfig::for_m(4).unwrap();
        cfg.max_restarts = Some(1);
        cfg.c_t = 0.001; // tiny T so phases exhaust quickly
        let mut b = BranchAndFillBuilder::new(cfg, 0.05).unwrap();
        let t = play_subgraph_query(&mut b, &k4, "K4", 0.05, 10_000, 3).unwrap();
        assert_eq!(t.outcome, Outcome::BudgetExhausted);
        assert!(t.notes.iter().any(|(_, msg)| msg.contains("restarts")));
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = BranchAndFillConfig::for_m(4).unwrap();
        cfg.b = 4; // breaks a + b + 1 = m
        assert!(BranchAndFillBuilder::new(cfg, 0.3).is_err());
        let cfg = BranchAndFillConfig::for_m(4).unwrap();
        assert!(BranchAndFillBuilder::new(cfg, 0.0).is_err());
    }
}
