//! Monte Carlo estimation: success probabilities with Wilson intervals,
//! empirical f̂ via doubling + bisection on the turn budget, and
//! least-squares exponent fits for log f̂ vs. log p.
//!
//! All trial fan-out is seeded through `trial_seed`, so a (seed, trials)
//! pair fully determines every statistic regardless of thread scheduling;
//! reductions run over the collected per-trial vector in index order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::rng::{splitmix64, trial_seed};
use crate::engine::{play_subgraph_query, BuilderPolicy};
use crate::error::EngineError;
use crate::graph::SimpleGraph;

/// Point estimate plus Wilson 95% interval and per-trial turn statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub trials: usize,
    pub successes: usize,
    pub mean_turns: f64,
    pub min_turns: usize,
    pub max_turns: usize,
}

/// Wilson score interval at z = 1.96 (95%).
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let z = 1.96f64;
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Builder factories shared by the estimators: a fresh policy per trial.
pub type BuilderFactory<'a> = &'a (dyn Fn() -> Box<dyn BuilderPolicy> + Sync);

/// Fraction of `trials` independent query games in which the builder finds
/// `target` within `big_n` turns.
pub fn estimate_success(
    make_builder: BuilderFactory,
    target: &SimpleGraph,
    target_name: &str,
    p: f64,
    big_n: usize,
    trials: usize,
    seed: u64,
) -> Result<EstimateReport, EngineError> {
    assert!(trials >= 100, "at least 100 trials for a meaningful interval");
    let per_trial: Vec<(u8, usize)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut builder = make_builder();
            let t = play_subgraph_query(
                builder.as_mut(),
                target,
                target_name,
                p,
                big_n,
                trial_seed(seed, trial as u64),
            )
            .expect("estimation game");
            (t.success_indicator(), t.turns_used())
        })
        .collect();
    let successes = per_trial.iter().filter(|&&(s, _)| s == 1).count();
    let total_turns: usize = per_trial.iter().map(|&(_, t)| t).sum();
    let (wilson_low, wilson_high) = wilson_interval(successes, trials);
    Ok(EstimateReport {
        estimate: successes as f64 / trials as f64,
        wilson_low,
        wilson_high,
        trials,
        successes,
        mean_turns: total_turns as f64 / trials as f64,
        min_turns: per_trial.iter().map(|&(_, t)| t).min().unwrap_or(0),
        max_turns: per_trial.iter().map(|&(_, t)| t).max().unwrap_or(0),
    })
}

/// Hard cap for the doubling phase of `estimate_f_hat`.
pub const F_HAT_BUDGET_CAP: usize = 1 << 20;

/// Minimal turn budget N at which the builder's estimated success reaches
/// 1/2, by doubling then bisection. Each probe uses a fresh seed stream
/// derived from (seed, N), and the point estimate is compared against the
/// 1/2 threshold (the Wilson bound is reported by `estimate_success` but a
/// lower-bound threshold would bias N upward whenever the true optimum sits
/// exactly at 1/2, e.g. a single coin at p = 1/2).
pub fn estimate_f_hat(
    make_builder: BuilderFactory,
    target: &SimpleGraph,
    target_name: &str,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<usize, EngineError> {
    let probe = |big_n: usize| -> Result<bool, EngineError> {
        let probe_seed = splitmix64(seed ^ splitmix64(big_n as u64));
        let rep = estimate_success(make_builder, target, target_name, p, big_n, trials, probe_seed)?;
        Ok(rep.estimate >= 0.5)
    };
    let mut hi = 1usize;
    while !probe(hi)? {
        hi *= 2;
        if hi > F_HAT_BUDGET_CAP {
            return Err(EngineError::Transcript(format!(
                "estimate_f_hat did not converge below {F_HAT_BUDGET_CAP} turns"
            )));
        }
    }
    let mut lo = hi / 2; // lo = 0 or the last failing budget
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Least-squares slope with standard error; input points are (x, y) pairs,
/// typically (log p, log f̂).
pub fn slope_fit(points: &[(f64, f64)]) -> Result<(f64, f64), String> {
    let n = points.len();
    if n < 4 {
        return Err(format!("need at least 4 points, got {n}"));
    }
    let nf = n as f64;
    let xbar = points.iter().map(|&(x, _)| x).sum::<f64>() / nf;
    let ybar = points.iter().map(|&(_, y)| y).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|&(x, _)| (x - xbar) * (x - xbar)).sum();
    if sxx < 1e-18 {
        return Err("degenerate abscissae: all x values coincide".into());
    }
    let sxy: f64 = points.iter().map(|&(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let stderr = (ss_res / (nf - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}
