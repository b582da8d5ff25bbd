//! Painter policies: constant baselines, the i.i.d. random painter, and the
//! alteration painter that never creates a red triangle.
//!
//! The alteration painter keeps vertices inactive until their degree reaches
//! an activation threshold; inactive edges are blue and stay blue. Active
//! vertices receive labels in activation order, and an active edge is blue
//! when its endpoints already have a red common neighbor (an "altered" edge);
//! otherwise it is red with probability `p` — equivalently, red exactly when
//! the corresponding label pair is adjacent in a hidden random graph on the
//! label pool.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{Board, Color, PainterPolicy};
use crate::error::PolicyError;

/// Paints every edge the same color.
pub struct ConstPainter {
    color: Color,
}

impl ConstPainter {
    pub fn new(color: Color) -> Self {
        ConstPainter { color }
    }
}

/// Painter answering red on every edge.
pub fn all_red_painter() -> ConstPainter {
    ConstPainter::new(Color::Red)
}

/// Painter answering blue on every edge.
pub fn all_blue_painter() -> ConstPainter {
    ConstPainter::new(Color::Blue)
}

impl PainterPolicy for ConstPainter {
    fn id(&self) -> String {
        match self.color {
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
        Ok(self.color)
    }
}

/// Colors each presented edge red with probability `p`, independently of
/// history.
pub struct RandomPainter {
    p: f64,
}

impl RandomPainter {
    pub fn new(p: f64) -> Result<Self, PolicyError> {
        if !(0.0..=1.0).contains(&p) || p <= 0.0 || p >= 1.0 {
            return Err(PolicyError::BadParameter {
                policy: "random".into(),
                detail: format!("p={p} outside (0,1)"),
            });
        }
        Ok(RandomPainter { p })
    }
}

impl PainterPolicy for RandomPainter {
    fn id(&self) -> String {
        format!("random p={}", self.p)
    }

    fn color(
        &mut self,
        _board: &Board,
        _edge: (usize, usize),
        rng: &mut ChaCha8Rng,
    ) -> Result<Color, PolicyError> {
        Ok(if rng.gen_bool(self.p) { Color::Red } else { Color::Blue })
    }
}

/// Configuration for the alteration painter.
///
/// The canonical parameters are `p = 20 ln n / n`,
/// `r = 10^-6 n^2 / (ln n)^2`, and activation at degree `(n-1)/4`; those
/// constants target asymptotics, so `defaults` clamps `r >= 1` and every
/// field is overridable for desk-scale runs.
#[derive(Clone, Debug)]
pub struct AlterationConfig {
    /// Blue clique size the painter defends against.
    pub n: usize,
    /// Red probability for active, unaltered edges.
    pub p: f64,
    /// Label-pool size; the game must activate at most this many vertices.
    pub r: usize,
    /// A vertex activates when its degree reaches this value.
    pub activation_threshold: usize,
    /// If true, sample the hidden graph G(r, p) on the labels up front and
    /// color by label adjacency; if false, flip one coin per unaltered
    /// active edge. The two formulations are distributionally equivalent.
    pub hidden_graph: bool,
}

impl AlterationConfig {
    pub fn defaults(n: usize) -> Result<Self, PolicyError> {
        if n < 3 {
            return Err(PolicyError::BadParameter {
                policy: "alteration".into(),
                detail: format!("n={n} too small"),
            });
        }
        let ln_n = (n as f64).ln();
        let p = (20.0 * ln_n / n as f64).min(0.999);
        let r = ((1e-6 * (n * n) as f64) / (ln_n * ln_n)).floor().max(1.0) as usize;
        let activation_threshold = (n - 1).div_ceil(4).max(1);
        Ok(AlterationConfig { n, p, r, activation_threshold, hidden_graph: false })
    }

    pub fn validate(&self) -> Result<(), PolicyError> {
        let bad = |detail: String| PolicyError::BadParameter {
            policy: "alteration".into(),
            detail,
        };
        if self.p <= 0.0 || self.p >= 1.0 {
            return Err(bad(format!("p={} outside (0,1)", self.p)));
        }
        if self.r < 1 {
            return Err(bad("r must be at least 1".into()));
        }
        if self.activation_threshold < 1 {
            return Err(bad("activation threshold must be at least 1".into()));
        }
        Ok(())
    }

    /// The turn budget under which the label pool provably suffices:
    /// (n-1) * r / 8 turns activate at most r vertices.
    pub fn safe_turn_cap(&self) -> usize {
        (self.n - 1) * self.r / 8
    }
}

/// The alteration painter. One instance per game; it owns the label table
/// and (optionally) the hidden graph.
pub struct AlterationPainter {
    cfg: AlterationConfig,
    /// labels[v] = Some(i) once vertex v is active with label i in 1..=r.
    labels: Vec<Option<usize>>,
    next_label: usize,
    /// Upper-triangle adjacency of the hidden G(r, p) on labels, sampled
    /// lazily from the painter substream on the first colored edge.
    hidden: Option<Vec<bool>>,
}

impl AlterationPainter {
    pub fn new(cfg: AlterationConfig) -> Result<Self, PolicyError> {
        cfg.validate()?;
        Ok(AlterationPainter { cfg, labels: Vec::new(), next_label: 1, hidden: None })
    }

    pub fn config(&self) -> &AlterationConfig {
        &self.cfg
    }

    /// The hidden graph as edge-list text (for post-hoc audit); empty until
    /// the first edge is colored in hidden-graph mode.
    pub fn hidden_graph_edge_list(&self) -> Option<String> {
        let hidden = self.hidden.as_ref()?;
        let r = self.cfg.r;
        let mut out = format!("v={r}\n");
        let mut idx = 0;
        for i in 0..r {
            for j in (i + 1)..r {
                if hidden[idx] {
                    out.push_str(&format!("{i} {j}\n"));
                }
                idx += 1;
            }
        }
        Some(out)
    }

    fn label_of(&self, v: usize) -> Option<usize> {
        self.labels.get(v).copied().flatten()
    }

    /// Activates `v` if the given post-edge degree reaches the threshold.
    fn maybe_activate(&mut self, v: usize, degree_after: usize) -> Result<(), PolicyError> {
        if self.label_of(v).is_some() || degree_after < self.cfg.activation_threshold {
            return Ok(());
        }
        if self.next_label > self.cfg.r {
            return Err(PolicyError::Aborted {
                policy: "alteration".into(),
                reason: format!(
                    "label pool exhausted: more than r={} activations (stay within \
                     (n-1)r/8 = {} turns)",
                    self.cfg.r,
                    self.cfg.safe_turn_cap()
                ),
            });
        }
        if v >= self.labels.len() {
            self.labels.resize(v + 1, None);
        }
        self.labels[v] = Some(self.next_label);
        self.next_label += 1;
        Ok(())
    }

    fn hidden_adjacent(&mut self, i: usize, j: usize, rng: &mut ChaCha8Rng) -> bool {
        let r = self.cfg.r;
        let hidden = self.hidden.get_or_insert_with(|| {
            (0..r * (r - 1) / 2).map(|_| rng.gen_bool(self.cfg.p)).collect()
        });
        let (a, b) = (i.min(j) - 1, i.max(j) - 1);
        // Upper-triangle index of (a, b) with a < b among r labels.
        let idx = a * r - a * (a + 1) / 2 + (b - a - 1);
        hidden[idx]
    }
}

impl PainterPolicy for AlterationPainter {
    fn id(&self) -> String {
        format!(
            "alteration n={} p={} r={} threshold={} hidden={}",
            self.cfg.n, self.cfg.p, self.cfg.r, self.cfg.activation_threshold, self.cfg.hidden_graph
        )
    }

    fn color(
        &mut self,
        board: &Board,
        (u, v): (usize, usize),
        rng: &mut ChaCha8Rng,
    ) -> Result<Color, PolicyError> {
        // Degrees counting the edge being built: activation is judged
        // "immediately after (u,v) is built". Labels are assigned in vertex
        // creation order when both endpoints activate on the same edge.
        let (lo, hi) = (u.min(v), u.max(v));
        self.maybe_activate(lo, board.degree(lo) + 1)?;
        self.maybe_activate(hi, board.degree(hi) + 1)?;

        let (Some(i), Some(j)) = (self.label_of(u), self.label_of(v)) else {
            // Inactive edge: blue, and its status is frozen with the color.
            return Ok(Color::Blue);
        };

        // Altered edge: a red common neighbor would complete a red triangle.
        let red_common = board
            .success_neighbors(u)
            .iter()
            .any(|&w| board.has_success_edge(v, w as usize));
        if red_common {
            return Ok(Color::Blue);
        }

        let red = if self.cfg.hidden_graph {
            self.hidden_adjacent(i, j, rng)
        } else {
            rng.gen_bool(self.cfg.p)
        };
        Ok(if red { Color::Red } else { Color::Blue })
    }
}
