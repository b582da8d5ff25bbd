//! Game transcripts: a line-oriented, bit-exact record of every move.
//!
//! Format: a small header (game, policies, seed, caps), then one record per
//! move — `t <turn> <u> <w> <R|B|S|F>` — optional `note` lines, and a final
//! `outcome` line. Rendering is deterministic, so replaying a game with the
//! same policies and seed must reproduce the rendered transcript byte for
//! byte.

use std::fmt;

use crate::graph::SimpleGraph;

/// Terminal (or in-flight) status of a game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ongoing,
    RedClique,
    BlueClique,
    Found,
    BudgetExhausted,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Ongoing => "ongoing",
            Outcome::RedClique => "red_clique",
            Outcome::BlueClique => "blue_clique",
            Outcome::Found => "found",
            Outcome::BudgetExhausted => "budget_exhausted",
        }
    }
}

/// Result of one move: a painted color or a query outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveResult {
    Red,
    Blue,
    Success,
    Failure,
}

impl MoveResult {
    pub fn code(self) -> char {
        match self {
            MoveResult::Red => 'R',
            MoveResult::Blue => 'B',
            MoveResult::Success => 'S',
            MoveResult::Failure => 'F',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub turn: usize,
    pub u: usize,
    pub w: usize,
    pub result: MoveResult,
}

/// Complete record of one game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    /// One-line game description, e.g. `colored m=3 n=3` or
    /// `query target=K3 p=0.3`.
    pub game: String,
    pub seed: u64,
    pub turn_cap: usize,
    pub builder: String,
    pub painter: String,
    pub records: Vec<MoveRecord>,
    /// Free-form annotations (e.g. a builder's stage-abort reason), each
    /// tagged with the turn at which it was emitted.
    pub notes: Vec<(usize, String)>,
    pub outcome: Outcome,
}

impl Transcript {
    /// 1 if the game reached its target (a monochromatic clique in the
    /// colored game, a copy of the target in the query game), else 0.
    pub fn success_indicator(&self) -> u8 {
        match self.outcome {
            Outcome::RedClique | Outcome::BlueClique | Outcome::Found => 1,
            _ => 0,
        }
    }

    /// Number of moves consumed.
    pub fn turns_used(&self) -> usize {
        self.records.len()
    }

    /// The graph of successful moves: red edges in the colored game, built
    /// edges in the query game. Sized to the highest vertex touched.
    pub fn success_graph(&self) -> SimpleGraph {
        let n = self
            .records
            .iter()
            .map(|r| r.u.max(r.w) + 1)
            .max()
            .unwrap_or(0);
        let mut g = SimpleGraph::empty(n);
        for r in &self.records {
            if matches!(r.result, MoveResult::Red | MoveResult::Success) {
                g.add_edge(r.u, r.w).expect("transcript edges are distinct");
            }
        }
        g
    }

    /// Like [`success_graph`](Self::success_graph) but for blue/failed moves.
    pub fn failure_graph(&self) -> SimpleGraph {
        let n = self
            .records
            .iter()
            .map(|r| r.u.max(r.w) + 1)
            .max()
            .unwrap_or(0);
        let mut g = SimpleGraph::empty(n);
        for r in &self.records {
            if matches!(r.result, MoveResult::Blue | MoveResult::Failure) {
                g.add_edge(r.u, r.w).expect("transcript edges are distinct");
            }
        }
        g
    }

    /// Deterministic line-oriented rendering; the replay contract compares
    /// these strings byte for byte.
    pub fn render(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "game {}", self.game)?;
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "turn_cap {}", self.turn_cap)?;
        writeln!(f, "builder {}", self.builder)?;
        writeln!(f, "painter {}", self.painter)?;
        let mut notes = self.notes.iter().peekable();
        for r in &self.records {
            writeln!(f, "t {} {} {} {}", r.turn, r.u, r.w, r.result.code())?;
            while notes.peek().is_some_and(|(t, _)| *t <= r.turn) {
                let (t, msg) = notes.next().unwrap();
                writeln!(f, "note {t} {msg}")?;
            }
        }
        for (t, msg) in notes {
            writeln!(f, "note {t} {msg}")?;
        }
        writeln!(f, "outcome {} {}", self.outcome.as_str(), self.records.len())
    }
}
