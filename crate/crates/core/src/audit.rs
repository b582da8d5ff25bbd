//! Runtime weight audit for the colored game.
//!
//! For a vertex set U at time t, the red weight w(U, t) = p^(C(|U|,2) -
//! e(G_t[U])) is the probability that U becomes a red clique if all its
//! missing edges were built and colored by the i.i.d. random painter; any
//! blue edge inside U kills the weight. The aggregate w_{k,c}(t) sums w over
//! k-sets whose red induced subgraph has minimum vertex cover at least c.
//! The audited inequality is E w_{m,c}(N) <= p^(C(m,2) - c(c-1)) (2N)^(m-c)
//! against an arbitrary builder facing the random painter.
//!
//! Sets are drawn from the full 2N-vertex pool. Vertices untouched by any
//! edge are interchangeable, so the sum is computed by enumerating only the
//! touched part of each set and multiplying by a binomial count of free
//! completions; this keeps 10^4-trial audits exact and fast.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{play_online_ramsey, BuilderPolicy, Transcript};
use crate::error::{EngineError, GraphError};
use crate::graph::{self, SimpleGraph};
use crate::painters::RandomPainter;

/// Cap on C(pool, k) for the exact subset sum.
pub const AGGREGATE_CAP: f64 = 1e6;

/// Red weight of one explicit set: 0 if U contains a blue edge, else
/// p^(number of unbuilt-or-missing red slots inside U).
pub fn red_weight(red: &SimpleGraph, blue: &SimpleGraph, u_set: &[usize], p: f64) -> f64 {
    let k = u_set.len();
    assert!(k >= 2);
    let mut red_edges = 0u32;
    for i in 0..k {
        for j in (i + 1)..k {
            if blue.has_edge(u_set[i], u_set[j]) {
                return 0.0;
            }
            if red.has_edge(u_set[i], u_set[j]) {
                red_edges += 1;
            }
        }
    }
    let slots = (k * (k - 1) / 2) as i32 - red_edges as i32;
    p.powi(slots)
}

fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Minimum vertex cover size of the red subgraph induced on `set`.
fn red_cover(red: &SimpleGraph, set: &[usize]) -> usize {
    let induced = red.induced(set);
    graph::min_vertex_cover_size(&induced).expect("audit sets are tiny")
}

/// The aggregate w_{k,c} over all k-subsets of a `pool`-vertex board whose
/// red-cover is at least c. `red` and `blue` are the colored subgraphs on
/// the touched prefix of the pool.
pub fn aggregate_weight(
    red: &SimpleGraph,
    blue: &SimpleGraph,
    pool: usize,
    k: usize,
    c: usize,
    p: f64,
) -> Result<f64, GraphError> {
    if k < 2 * c.max(1) && c > 0 {
        return Err(GraphError::InvalidParameter(format!("k={k} below 2c with c={c}")));
    }
    if binom_f64(pool, k) > AGGREGATE_CAP {
        return Err(GraphError::TooLarge { op: "aggregate_weight", n: pool, cap: k });
    }
    let n_verts = red.vertex_count().max(blue.vertex_count());
    let touched: Vec<usize> = (0..n_verts)
        .filter(|&v| {
            (v < red.vertex_count() && red.degree(v) > 0)
                || (v < blue.vertex_count() && blue.degree(v) > 0)
        })
        .collect();
    let free = pool - touched.len();
    let choose2 = (k * (k - 1) / 2) as i32;

    // Recursive enumeration of blue-free touched subsets of size <= k.
    // Each subset of size s contributes C(free, k-s) completions with full
    // weight on the untouched slots.
    let mut total = 0.0;
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        touched: &[usize],
        from: usize,
        subset: &mut Vec<usize>,
        red: &SimpleGraph,
        blue: &SimpleGraph,
        k: usize,
        c: usize,
        p: f64,
        free: usize,
        choose2: i32,
        total: &mut f64,
    ) {
        let s = subset.len();
        if s >= 2 || (s >= 1 && c == 0) || (s == 0 && c == 0) {
            // Account this subset (completed by free vertices) if its cover
            // qualifies; free vertices never change the cover.
            let cover_ok = if c == 0 { true } else { s >= 2 && red_cover(red, subset) >= c };
            if cover_ok {
                let mut red_edges = 0i32;
                for i in 0..s {
                    for j in (i + 1)..s {
                        if red.has_edge(subset[i], subset[j]) {
                            red_edges += 1;
                        }
                    }
                }
                *total += binom_f64(free, k - s) * p.powi(choose2 - red_edges);
            }
        }
        if s == k {
            return;
        }
        for idx in from..touched.len() {
            let v = touched[idx];
            // Prune: a blue edge to any chosen member kills the weight.
            if subset.iter().any(|&u| blue.has_edge(u, v)) {
                continue;
            }
            subset.push(v);
            rec(touched, idx + 1, subset, red, blue, k, c, p, free, choose2, total);
            subset.pop();
        }
    }
    // The s = 0 term (all-free sets) for c = 0.
    if c == 0 {
        total += binom_f64(free, k) * p.powi(choose2);
        // Size-1 touched subsets and larger are handled by the recursion
        // below; mark the base so it is not double counted.
    }
    fn rec_start(
        touched: &[usize],
        subset: &mut Vec<usize>,
        red: &SimpleGraph,
        blue: &SimpleGraph,
        k: usize,
        c: usize,
        p: f64,
        free: usize,
        choose2: i32,
        total: &mut f64,
    ) {
        for idx in 0..touched.len() {
            subset.push(touched[idx]);
            rec(touched, idx + 1, subset, red, blue, k, c, p, free, choose2, total);
            subset.pop();
        }
    }
    let _ = &mut subset;
    rec_start(&touched, &mut subset, red, blue, k, c, p, free, choose2, &mut total);
    Ok(total)
}

/// All k-sets (over the pool) whose red-cover first reaches `c` when
/// `new_edge` is colored red. Returns an empty list for blue edges. The
/// interchangeable untouched completions are reported as a multiplicity:
/// each entry is (touched core containing both endpoints, number of k-sets
/// it stands for).
pub fn c_critical_events(
    red_before: &SimpleGraph,
    new_edge: (usize, usize),
    was_red: bool,
    pool: usize,
    k: usize,
    c: usize,
) -> Vec<(Vec<usize>, f64)> {
    if !was_red || c == 0 {
        return Vec::new();
    }
    let (u, v) = new_edge;
    let n = red_before.vertex_count().max(u.max(v) + 1);
    let mut red_after = SimpleGraph::empty(n);
    for (a, b) in red_before.edges() {
        red_after.add_edge(a, b).unwrap();
    }
    red_after.add_edge(u, v).expect("new edge is fresh");

    // Touched vertices after this edge (untouched ones cannot change any
    // cover, so cores are subsets of touched plus the two endpoints).
    let touched: Vec<usize> = (0..n)
        .filter(|&w| w < red_after.vertex_count() && red_after.degree(w) > 0)
        .collect();
    // Note: blue-touched-only vertices have red-degree 0 and act like free
    // vertices for cover purposes; fold them into the free pool.
    let free = pool - touched.len();

    let mut out = Vec::new();
    let mut core: Vec<usize> = vec![u.min(v), u.max(v)];
    collect_critical(
        &touched, 0, &mut core, &red_after, red_before, k, c, free, &mut out,
    );
    out
}

fn collect_critical(
    touched: &[usize],
    from: usize,
    core: &mut Vec<usize>,
    red_after: &SimpleGraph,
    red_before: &SimpleGraph,
    k: usize,
    c: usize,
    free: usize,
    out: &mut Vec<(Vec<usize>, f64)>,
) {
    let s = core.len();
    if s <= k {
        let after = red_cover(red_after, core);
        if after >= c && red_cover(red_before, core) < c {
            let mult = binom_f64(free, k - s);
            if mult > 0.0 {
                let mut sorted = core.clone();
                sorted.sort_unstable();
                out.push((sorted, mult));
            }
        }
    }
    if s == k {
        return;
    }
    for idx in from..touched.len() {
        let w = touched[idx];
        if core.contains(&w) {
            continue;
        }
        core.push(w);
        collect_critical(touched, idx + 1, core, red_after, red_before, k, c, free, out);
        core.pop();
    }
}

/// Parameters and result of one weight-bound audit run, serialized as the
/// audit JSON report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub builder: String,
    pub m: usize,
    pub c: usize,
    pub p: f64,
    pub big_n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
    /// One-sided check: mean + 3 stderr <= bound.
    pub verdict: bool,
}

/// The audited upper bound p^(C(m,2) - c(c-1)) (2N)^(m-c).
pub fn weight_bound(m: usize, c: usize, p: f64, big_n: usize) -> f64 {
    let e = (m * (m - 1) / 2 - c * c.saturating_sub(1)) as f64;
    p.powf(e) * (2.0 * big_n as f64).powi((m - c) as i32)
}

/// Plays `trials` games of the builder against the random painter for
/// exactly `big_n` turns each (no early clique stop: the engine targets are
/// set out of reach), measures w_{m,c}(N) per game, and reports the mean
/// against the closed-form bound.
pub fn audit_run(
    make_builder: &(dyn Fn() -> Box<dyn BuilderPolicy> + Sync),
    m: usize,
    c: usize,
    p: f64,
    big_n: usize,
    trials: usize,
    seed: u64,
) -> Result<AuditReport, EngineError> {
    let builder_name = make_builder().id();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let game_seed = crate::engine::rng::trial_seed(seed, trial as u64);
            let mut builder = make_builder();
            let mut painter = RandomPainter::new(p).expect("validated p");
            // Targets far beyond reach so all big_n turns are played.
            let t = play_online_ramsey(
                builder.as_mut(),
                &mut painter,
                big_n + 2,
                big_n + 2,
                big_n,
                game_seed,
            )
            .expect("audit game");
            weight_of_transcript(&t, m, c, p).expect("within aggregate cap")
        })
        .collect();
    let trials_f = trials as f64;
    let mean = values.iter().sum::<f64>() / trials_f;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (trials_f - 1.0).max(1.0);
    let stderr = (var / trials_f).sqrt();
    let bound = weight_bound(m, c, p, big_n);
    Ok(AuditReport {
        builder: builder_name,
        m,
        c,
        p,
        big_n,
        trials,
        seed,
        mean,
        stderr,
        bound,
        verdict: mean + 3.0 * stderr <= bound,
    })
}

/// w_{m,c} evaluated on a finished game's final position.
pub fn weight_of_transcript(
    t: &Transcript,
    k: usize,
    c: usize,
    p: f64,
) -> Result<f64, GraphError> {
    let red = t.success_graph();
    let blue = t.failure_graph();
    aggregate_weight(&red, &blue, 2 * t.turn_cap, k, c, p)
}
