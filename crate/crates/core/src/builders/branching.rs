//! The branching builder for the online Ramsey game.
//!
//! With f(m, n) = (1/L) C(m+n-2, m-1), the builder plays a pivot vertex
//! against a candidate set of f(m, n) vertices: it builds edges from the
//! pivot until either f(m-1, n) come back red (descend into the red
//! neighborhood with target m-1) or the blue neighborhood is guaranteed to
//! hold f(m, n-1) vertices (descend there with target n-1). Branching stops
//! at m0 = floor(m/2) + 1 or n0 = floor(sqrt(n)), where the surviving set is
//! filled completely; the classical Ramsey bound r <= f at the boundary
//! guarantees a monochromatic clique that the pivot chain completes.
//!
//! At L = 1 the thresholds tile exactly by Pascal's identity and the builder
//! wins against every painter within
//! (m+n) f(m,n) + max(f(m0,n)^2, f(m,n0)^2) edges.

use rand_chacha::ChaCha8Rng;

use crate::engine::{Board, BuilderMove, BuilderPolicy};
use crate::error::PolicyError;

/// Binomial coefficient as u64 (small arguments only).
fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

#[derive(Clone, Debug)]
pub struct BranchingConfig {
    pub m: usize,
    pub n: usize,
    /// Savings parameter L >= 1. L = 1 needs no side conditions; a caller
    /// supplying L > 1 must provide a Ramsey upper-bound table certifying
    /// r(m0, n') <= f(m0, n') and r(m', n0) <= f(m', n0) at the boundary.
    pub l: f64,
    pub m0: usize,
    pub n0: usize,
}

impl BranchingConfig {
    pub fn new(m: usize, n: usize) -> Result<Self, PolicyError> {
        if m < 2 || n < 2 {
            return Err(PolicyError::BadParameter {
                policy: "branching".into(),
                detail: format!("targets ({m}, {n}) too small"),
            });
        }
        Ok(BranchingConfig {
            m,
            n,
            l: 1.0,
            m0: m / 2 + 1,
            n0: (n as f64).sqrt().floor() as usize,
        })
    }

    /// Certify an L > 1 configuration against a caller-supplied table of
    /// Ramsey upper bounds: `ramsey_upper(a, b)` must be a valid upper bound
    /// for r(a, b). Checks the two boundary families of hypotheses.
    pub fn with_savings(
        m: usize,
        n: usize,
        l: f64,
        ramsey_upper: &dyn Fn(usize, usize) -> u64,
    ) -> Result<Self, PolicyError> {
        let mut cfg = Self::new(m, n)?;
        if l < 1.0 {
            return Err(PolicyError::BadParameter {
                policy: "branching".into(),
                detail: format!("L={l} must be at least 1"),
            });
        }
        for np in cfg.n0.max(1)..=n {
            let f = (binom(cfg.m0 + np - 2, cfg.m0 - 1) as f64 / l).ceil() as u64;
            if ramsey_upper(cfg.m0, np) > f {
                return Err(PolicyError::BadParameter {
                    policy: "branching".into(),
                    detail: format!("r({}, {np}) bound {} exceeds f = {f}", cfg.m0,
                        ramsey_upper(cfg.m0, np)),
                });
            }
        }
        for mp in cfg.m0..=m {
            let f = (binom(mp + cfg.n0 - 2, mp - 1) as f64 / l).ceil() as u64;
            if ramsey_upper(mp, cfg.n0) > f {
                return Err(PolicyError::BadParameter {
                    policy: "branching".into(),
                    detail: format!("r({mp}, {}) bound {} exceeds f = {f}", cfg.n0,
                        ramsey_upper(mp, cfg.n0)),
                });
            }
        }
        cfg.l = l;
        Ok(cfg)
    }

    /// f(m', n') = ceil((1/L) C(m'+n'-2, m'-1)).
    pub fn f(&self, mp: usize, np: usize) -> usize {
        (binom(mp + np - 2, mp - 1) as f64 / self.l).ceil() as usize
    }
}

/// Edge budget within which the builder is guaranteed to win at L = 1.
pub fn branching_budget(m: usize, n: usize) -> u64 {
    let cfg = BranchingConfig::new(m, n).expect("valid targets");
    let fill = (cfg.f(cfg.m0, n) as u64).pow(2).max((cfg.f(m, cfg.n0) as u64).pow(2));
    (m + n) as u64 * cfg.f(m, n) as u64 + fill
}

#[derive(Clone)]
enum Phase {
    /// Pivot stage: building edges from `pivot` to the queued targets.
    Pivot {
        pivot: usize,
        targets: Vec<usize>,
        next: usize,
        reds: Vec<usize>,
        blues: Vec<usize>,
    },
    /// Boundary reached: fill all pairs of the surviving set.
    Fill { set: Vec<usize>, next_pair: usize },
    Done,
}

#[derive(Clone)]
pub struct BranchingBuilder {
    cfg: BranchingConfig,
    /// Current targets (m', n'); decremented on red/blue descent.
    mp: usize,
    np: usize,
    phase: Option<Phase>,
}

impl BranchingBuilder {
    pub fn new(cfg: BranchingConfig) -> Self {
        let (mp, np) = (cfg.m, cfg.n);
        BranchingBuilder { cfg, mp, np, phase: None }
    }

    /// Starts a pivot stage over `set` (|set| = f(mp, np)): first member is
    /// the pivot, the rest are targets.
    fn start_stage(&mut self, set: Vec<usize>) {
        if self.mp <= self.cfg.m0 || self.np <= self.cfg.n0 {
            self.phase = Some(Phase::Fill { set, next_pair: 0 });
            return;
        }
        let pivot = set[0];
        let targets = set[1..].to_vec();
        self.phase = Some(Phase::Pivot { pivot, targets, next: 0, reds: vec![], blues: vec![] });
    }

    /// Consumes pending pivot-stage results from the board before emitting
    /// the next move; descends when a threshold is met.
    fn advance(&mut self, board: &Board) -> BuilderMove {
        match self.phase.take() {
            None => {
                // Initial stage: f(m, n) fresh vertices.
                let size = self.cfg.f(self.mp, self.np);
                let base = board.used_vertices();
                if base + size > board.vertex_cap() {
                    self.phase = Some(Phase::Done);
                    return BuilderMove::Concede("vertex pool exhausted".into());
                }
                let set: Vec<usize> = (base..base + size).collect();
                self.start_stage(set);
                self.advance(board)
            }
            Some(Phase::Pivot { pivot, targets, mut next, mut reds, mut blues }) => {
                // Absorb the color of the previously built edge, if any.
                if next > 0 {
                    let t = targets[next - 1];
                    if board.has_success_edge(pivot, t) {
                        reds.push(t);
                    } else {
                        blues.push(t);
                    }
                }
                let red_threshold = self.cfg.f(self.mp - 1, self.np);
                let blue_threshold = self.cfg.f(self.mp, self.np - 1);
                if reds.len() >= red_threshold {
                    // Descend into the red neighborhood with target m-1.
                    self.mp -= 1;
                    reds.truncate(self.cfg.f(self.mp, self.np));
                    self.start_stage(reds);
                    return self.advance(board);
                }
                if blues.len() >= blue_threshold {
                    self.np -= 1;
                    blues.truncate(self.cfg.f(self.mp, self.np));
                    self.start_stage(blues);
                    return self.advance(board);
                }
                if next == targets.len() {
                    // Only reachable when a savings table rounds f so that
                    // f(m-1,n) + f(m,n-1) > f(m,n) + 1; impossible at L = 1
                    // where Pascal's identity tiles the targets exactly.
                    self.phase = Some(Phase::Done);
                    return BuilderMove::Concede(
                        "pivot stage exhausted without reaching a threshold".into(),
                    );
                }
                let t = targets[next];
                next += 1;
                self.phase = Some(Phase::Pivot { pivot, targets, next, reds, blues });
                BuilderMove::Edge(pivot, t)
            }
            Some(Phase::Fill { set, mut next_pair }) => {
                let k = set.len();
                let total = k * (k - 1) / 2;
                while next_pair < total {
                    let (i, j) = unrank_pair(k, next_pair);
                    next_pair += 1;
                    if !board.is_tried(set[i], set[j]) {
                        let (u, w) = (set[i], set[j]);
                        self.phase = Some(Phase::Fill { set, next_pair });
                        return BuilderMove::Edge(u, w);
                    }
                }
                self.phase = Some(Phase::Done);
                BuilderMove::Concede("fill completed without a target clique".into())
            }
            Some(Phase::Done) => {
                self.phase = Some(Phase::Done);
                BuilderMove::Concede("strategy exhausted".into())
            }
        }
    }
}

/// Pair `r` in the lexicographic enumeration of pairs of 0..k.
pub(crate) fn unrank_pair(k: usize, mut r: usize) -> (usize, usize) {
    for i in 0..k {
        let row = k - i - 1;
        if r < row {
            return (i, i + 1 + r);
        }
        r -= row;
    }
    unreachable!("rank out of range")
}

impl BuilderPolicy for BranchingBuilder {
    fn id(&self) -> String {
        format!("branching m={} n={} L={}", self.cfg.m, self.cfg.n, self.cfg.l)
    }

    fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        self.advance(board)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_online_ramsey, Outcome};
    use crate::painters::{all_blue_painter, all_red_painter, RandomPainter};

    fn play(m: usize, n: usize, painter: &mut dyn crate::engine::PainterPolicy, seed: u64)
        -> crate::engine::Transcript {
        let cfg = BranchingConfig::new(m, n).unwrap();
        let mut b = BranchingBuilder::new(cfg);
        let cap = branching_budget(m, n) as usize;
        play_online_ramsey(&mut b, painter, m, n, cap, seed).unwrap()
    }

    #[test]
    fn f_table_and_budget() {
        let cfg = BranchingConfig::new(3, 3).unwrap();
        assert_eq!(cfg.f(3, 3), 6);
        assert_eq!(cfg.f(2, 3), 3);
        assert_eq!(cfg.f(3, 2), 3);
        // Pascal tiling at L = 1.
        for m in 2..=6 {
            for n in 2..=6 {
                if m > 2 && n > 2 {
                    assert_eq!(cfg.f(m - 1, n) + cfg.f(m, n - 1), cfg.f(m, n));
                }
            }
        }
        assert_eq!(branching_budget(3, 3), 6 * 6 + 9);
    }

    #[test]
    fn beats_constant_painters() {
        for (m, n) in [(3, 3), (3, 4), (4, 4)] {
            let t = play(m, n, &mut all_red_painter(), 1);
            assert_eq!(t.outcome, Outcome::RedClique, "({m},{n}) vs all-red");
            let t = play(m, n, &mut all_blue_painter(), 1);
            assert_eq!(t.outcome, Outcome::BlueClique, "({m},{n}) vs all-blue");
        }
    }

    #[test]
    fn all_blue_painter_walks_blue_line() {
        // With zero red responses the builder must keep descending through
        // blue neighborhoods (threshold logic), finishing with a blue clique.
        let t = play(3, 5, &mut all_blue_painter(), 2);
        assert_eq!(t.outcome, Outcome::BlueClique);
        assert!(t.records.iter().all(|r| r.result == crate::engine::MoveResult::Blue));
    }

    #[test]
    fn beats_random_painters_within_budget() {
        for (m, n) in [(3, 3), (3, 4), (4, 4)] {
            let budget = branching_budget(m, n);
            for seed in 0..60u64 {
                for p in [0.1, 0.5, 0.9] {
                    let mut painter = RandomPainter::new(p).unwrap();
                    let t = play(m, n, &mut painter, seed);
                    assert!(
                        matches!(t.outcome, Outcome::RedClique | Outcome::BlueClique),
                        "({m},{n}) p={p} seed={seed}: {:?}",
                        t.outcome
                    );
                    assert!(t.turns_used() as u64 <= budget);
                }
            }
        }
    }

    #[test]
    fn savings_certification() {
        // Exact small Ramsey numbers: r(2, n) = n.
        let table = |a: usize, b: usize| -> u64 {
            match (a.min(b), a.max(b)) {
                (1, _) => 1,
                (2, x) => x as u64,
                (3, 3) => 6,
                (3, 4) => 9,
                (3, 5) => 14,
                _ => u64::MAX / 2,
            }
        };
        // L = 1 with a truthful table passes for (3,4).
        assert!(BranchingConfig::with_savings(3, 4, 1.0, &table).is_ok());
        // An aggressive L makes f dip below the true Ramsey numbers.
        assert!(BranchingConfig::with_savings(3, 4, 3.0, &table).is_err());
        assert!(BranchingConfig::with_savings(3, 4, 0.5, &table).is_err());
    }
}
