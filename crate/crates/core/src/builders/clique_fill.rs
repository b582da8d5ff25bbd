//! The clique-fill builder: all pairs among a fixed vertex set, in a fixed
//! order, never stopping early. Taking v ~ sqrt(2N) vertices consumes about
//! N queries; used for expected-copy-count measurements.

use rand_chacha::ChaCha8Rng;

use crate::engine::{Board, BuilderMove, BuilderPolicy};

pub struct CliqueFillBuilder {
    v: usize,
    next: usize,
}

impl CliqueFillBuilder {
    pub fn new(v: usize) -> Self {
        assert!(v >= 2);
        CliqueFillBuilder { v, next: 0 }
    }

    /// Total queries this builder will ever make: C(v, 2).
    pub fn declared_budget(&self) -> u64 {
        (self.v * (self.v - 1) / 2) as u64
    }

    /// Pair index `k` in the fixed lexicographic enumeration of pairs.
    fn pair(&self, k: usize) -> Option<(usize, usize)> {
        let mut k = k;
        for u in 0..self.v {
            let row = self.v - u - 1;
            if k < row {
                return Some((u, u + 1 + k));
            }
            k -= row;
        }
        None
    }
}

impl BuilderPolicy for CliqueFillBuilder {
    fn id(&self) -> String {
        format!("clique-fill v={}", self.v)
    }

    fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        match self.pair(self.next) {
            Some((u, w)) if w < board.vertex_cap() => {
                self.next += 1;
                BuilderMove::Edge(u, w)
            }
            Some(_) => BuilderMove::Concede("vertex pool too small for fill set".into()),
            None => BuilderMove::Concede("all pairs queried".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_subgraph_query, play_subgraph_query_with, Outcome};
    use crate::graph::{self, SimpleGraph};

    #[test]
    fn near_certain_p_builds_triangle_in_three() {
        let k3 = SimpleGraph::complete(3);
        let mut b = CliqueFillBuilder::new(3);
        let t = play_subgraph_query(&mut b, &k3, "K3", 1.0 - 1e-12, 10, 1).unwrap();
        assert_eq!(t.outcome, Outcome::Found);
        assert_eq!(t.turns_used(), 3);
    }

    #[test]
    fn enumerates_every_pair_once() {
        let k3 = SimpleGraph::complete(3);
        let mut b = CliqueFillBuilder::new(6);
        let t = play_subgraph_query_with(&mut b, &k3, "K3", 0.5, 100, 9, false).unwrap();
        assert_eq!(t.turns_used(), 15); // C(6,2), then concede
        assert!(t.turns_used() as u64 <= CliqueFillBuilder::new(6).declared_budget());
        let mut pairs: Vec<_> = t.records.iter().map(|r| (r.u, r.w)).collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 15);
    }

    #[test]
    fn labeled_triangle_mean_matches_binomial_expectation() {
        // v=12, p=0.5: expected labeled K3 copies = 12*11*10 * p^3 = 165.
        let k3 = SimpleGraph::complete(3);
        let trials = 400;
        let mut total = 0.0;
        for seed in 0..trials {
            let mut b = CliqueFillBuilder::new(12);
            let t = play_subgraph_query_with(&mut b, &k3, "K3", 0.5, 66, seed, false).unwrap();
            let built = t.success_graph();
            total += graph::count_labeled_clique_copies(3, &built) as f64;
        }
        let mean = total / trials as f64;
        // std of per-trial count is modest; 400 trials brings SE under ~4.
        assert!((mean - 165.0).abs() < 15.0, "mean {mean}");
    }
}
