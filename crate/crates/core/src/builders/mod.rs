//! Builder policies: branching, triangle, branch-and-fill, nested
//! half-graph, and clique-fill, plus the (a, b) split arithmetic shared by
//! the clique strategies.
//!
//! All builders choose vertices deterministically (lowest unused index;
//! probe sets are prefix slices), so a fixed seed fully determines a game.

pub mod branch_fill;
pub mod branching;
pub mod clique_fill;
pub mod halfgraph;

pub use branch_fill::{BranchAndFillBuilder, BranchAndFillConfig, TriangleBuilder};
pub use branching::{branching_budget, BranchingBuilder, BranchingConfig};
pub use clique_fill::CliqueFillBuilder;
pub use halfgraph::NestedHalfgraphBuilder;

use num_rational::Ratio;

use crate::engine::Board;
use crate::error::PolicyError;

/// The (a, b) split used by Branch-and-Fill for target clique K_m
/// (a + b + 1 = m), by residue of m mod 3.
pub fn choose_ab(m: usize) -> (usize, usize) {
    assert!(m >= 4, "the split is defined for m >= 4");
    let (a, b) = match m % 3 {
        0 => ((m - 3) / 3, 2 * m / 3),
        1 => ((m - 4) / 3, (2 * m + 1) / 3),
        _ => ((m - 2) / 3, (2 * m - 1) / 3),
    };
    debug_assert_eq!(a + b + 1, m);
    (a, b)
}

/// The fill-round exponent alpha = min(1, b(2a+3-b) / (2(b-1))).
pub fn alpha(a: usize, b: usize) -> Result<Ratio<i64>, PolicyError> {
    let bad = |detail: String| PolicyError::BadParameter { policy: "bnf".into(), detail };
    if b < 2 {
        return Err(bad(format!("b={b} must be at least 2")));
    }
    let (a, b) = (a as i64, b as i64);
    if 2 * a + 3 - b < 0 {
        return Err(bad(format!("2a+3-b = {} is negative", 2 * a + 3 - b)));
    }
    Ok(Ratio::new(b * (2 * a + 3 - b), 2 * (b - 1)).min(Ratio::from_integer(1)))
}

/// The exponent of p in the Branch-and-Fill turn count:
/// -(2a+b+1)/2 + alpha/b.
pub fn bnf_turn_exponent(a: usize, b: usize) -> Result<Ratio<i64>, PolicyError> {
    let al = alpha(a, b)?;
    let (ai, bi) = (a as i64, b as i64);
    Ok(-Ratio::new(2 * ai + bi + 1, 2) + al / Ratio::from_integer(bi))
}

/// Lowest vertex index not yet touched by any edge, if the pool allows one.
pub(crate) fn fresh_vertex(board: &Board) -> Option<usize> {
    let v = board.used_vertices();
    (v < board.vertex_cap()).then_some(v)
}
