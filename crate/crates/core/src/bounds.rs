//! Closed-form bound evaluators and the lower-bound certificate optimizer.
//!
//! Everything is computed in log-space: the certificate terms involve
//! quantities like (1-p)^C(n,2) that underflow f64 for n beyond ~50. Tests
//! check the log-space arithmetic against exact rational oracles.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::BoundError;
use crate::graph::{self, SimpleGraph};

/// C(k, 2) as f64.
fn choose2(k: usize) -> f64 {
    (k * (k.saturating_sub(1))) as f64 / 2.0
}

/// log(exp(a) + exp(b)) without overflow.
fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

// ---------------------------------------------------------------------------
// Lower-bound certificate
// ---------------------------------------------------------------------------

/// A witness (m, n, N, p, c, d) for the inequality
///
/// ```text
/// p^(C(m,2) - c(c-1)) (2N)^(m-c)  +  (1-p)^(C(n,2) - d(d-1)) (2N)^(n-d)  <=  1/2
/// ```
///
/// which certifies that no builder can force a red K_m or blue K_n within N
/// turns. `lhs_log` is the natural log of the left-hand side.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub m: usize,
    pub n: usize,
    pub big_n: u64,
    pub p: f64,
    pub c: usize,
    pub d: usize,
    pub lhs_log: f64,
}

impl BoundCertificate {
    pub fn lhs_value(&self) -> f64 {
        self.lhs_log.exp()
    }
}

fn check_certificate_domain(
    m: usize,
    n: usize,
    big_n: u64,
    p: f64,
    c: usize,
    d: usize,
) -> Result<(), BoundError> {
    if p <= 0.0 || p >= 1.0 {
        return Err(BoundError::InvalidParameter(format!("p={p} outside (0,1)")));
    }
    if big_n < 1 {
        return Err(BoundError::InvalidParameter("N must be at least 1".into()));
    }
    if 2 * c > m {
        return Err(BoundError::InvalidParameter(format!("c={c} exceeds m/2 with m={m}")));
    }
    if 2 * d > n {
        return Err(BoundError::InvalidParameter(format!("d={d} exceeds n/2 with n={n}")));
    }
    Ok(())
}

/// Natural log of one certificate term: q^(C(k,2) - c(c-1)) * (2N)^(k-c).
fn term_log(q: f64, k: usize, c: usize, big_n: u64) -> f64 {
    let exponent = choose2(k) - (c * c.saturating_sub(1)) as f64;
    let ln_2n = (2.0 * big_n as f64).ln();
    exponent * q.ln() + (k - c) as f64 * ln_2n
}

/// Evaluates the certificate left-hand side (log-space) for the given tuple.
pub fn make_certificate(
    m: usize,
    n: usize,
    big_n: u64,
    p: f64,
    c: usize,
    d: usize,
) -> Result<BoundCertificate, BoundError> {
    check_certificate_domain(m, n, big_n, p, c, d)?;
    let lhs_log = log_add_exp(term_log(p, m, c, big_n), term_log(1.0 - p, n, d, big_n));
    Ok(BoundCertificate { m, n, big_n, p, c, d, lhs_log })
}

/// True iff the certificate inequality holds (lhs <= 1/2), i.e. the
/// certified conclusion "the online Ramsey number exceeds N" is valid.
pub fn certificate_holds(cert: &BoundCertificate) -> bool {
    cert.lhs_log <= 0.5f64.ln()
}

/// Geometric grid of candidate p values: `points_per_decade` points per
/// decade on [p_floor, 1/2], plus the mirror images 1-p (covering p near 1).
fn p_grid(points_per_decade: usize, p_floor: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let decades = (0.5 / p_floor).log10();
    let steps = (decades * points_per_decade as f64).ceil() as usize;
    for i in 0..=steps {
        let p = p_floor * (0.5 / p_floor).powf(i as f64 / steps as f64);
        grid.push(p);
        if p < 0.5 {
            grid.push(1.0 - p);
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid
}

/// Best certificate at fixed (m, n, N) over a p grid and all admissible
/// (c, d): the two terms are independent, so each is minimized separately.
fn best_certificate_at(m: usize, n: usize, big_n: u64, grid: &[f64]) -> BoundCertificate {
    let mut best: Option<BoundCertificate> = None;
    for &p in grid {
        let (c, t1) = (0..=m / 2)
            .map(|c| (c, term_log(p, m, c, big_n)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        let (d, t2) = (0..=n / 2)
            .map(|d| (d, term_log(1.0 - p, n, d, big_n)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        let lhs_log = log_add_exp(t1, t2);
        if best.as_ref().is_none_or(|b| lhs_log < b.lhs_log) {
            best = Some(BoundCertificate { m, n, big_n, p, c, d, lhs_log });
        }
    }
    best.expect("grid is nonempty")
}

/// Largest N admitting a valid certificate, found by doubling then
/// bisection, with one grid refinement around the argmax p. Returns
/// `(0, None)` when even N=1 cannot be certified.
pub fn best_certified_lower_bound(
    m: usize,
    n: usize,
    points_per_decade: usize,
) -> (u64, Option<BoundCertificate>) {
    assert!(m >= 3 && n >= 3);
    let coarse = p_grid(points_per_decade, 1e-8);
    let (n_star, cert) = search_n(m, n, &coarse);
    let Some(cert) = cert else { return (0, None) };

    // Refine: a denser grid in a one-decade window around the argmax p.
    let lo = (cert.p / 3.0).max(1e-9);
    let hi = (cert.p * 3.0).min(1.0 - 1e-9);
    let fine: Vec<f64> = (0..=(points_per_decade * 10))
        .map(|i| lo * (hi / lo).powf(i as f64 / (points_per_decade * 10) as f64))
        .collect();
    let mut grid = coarse;
    grid.extend_from_slice(&fine);
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (n_fine, cert_fine) = search_n(m, n, &grid);
    if n_fine > n_star {
        (n_fine, cert_fine)
    } else {
        (n_star, Some(cert))
    }
}

fn search_n(m: usize, n: usize, grid: &[f64]) -> (u64, Option<BoundCertificate>) {
    let ok = |big_n: u64| {
        let c = best_certificate_at(m, n, big_n, grid);
        certificate_holds(&c).then_some(c)
    };
    let Some(mut best_cert) = ok(1) else { return (0, None) };
    let mut good = 1u64;
    let mut bad = loop {
        let next = good.saturating_mul(2);
        match ok(next) {
            Some(c) => {
                good = next;
                best_cert = c;
            }
            None => break next,
        }
    };
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        match ok(mid) {
            Some(c) => {
                good = mid;
                best_cert = c;
            }
            None => bad = mid,
        }
    }
    (good, Some(best_cert))
}

// ---------------------------------------------------------------------------
// Query-game lower bound and clique exponents
// ---------------------------------------------------------------------------

/// Exponent (C(m,2) - c(c-1)) / (m - c) in the clique query lower bound.
pub fn f_lower_exponent(m: usize, c: usize) -> Result<Ratio<i64>, BoundError> {
    if m < 3 || 2 * c > m {
        return Err(BoundError::InvalidParameter(format!(
            "need 3 <= m and c <= m/2, got m={m} c={c}"
        )));
    }
    let (m, c) = (m as i64, c as i64);
    Ok(Ratio::new(m * (m - 1) / 2 - c * (c - 1), m - c))
}

/// Lower bound (1/4) p^(-exponent) on the clique query budget.
pub fn f_lower_bound(m: usize, c: usize, p: f64) -> Result<f64, BoundError> {
    if p <= 0.0 || p >= 1.0 {
        return Err(BoundError::InvalidParameter(format!("p={p} outside (0,1)")));
    }
    let e = f_lower_exponent(m, c)?;
    let e = *e.numer() as f64 / *e.denom() as f64;
    Ok(0.25 * (-e * p.ln()).exp())
}

/// The integer c in [0, m/2] maximizing the lower-bound exponent; sits near
/// (1 - 1/sqrt(2)) m.
pub fn f_lower_optimal_c(m: usize) -> Result<usize, BoundError> {
    if m < 3 {
        return Err(BoundError::InvalidParameter(format!("m={m} too small")));
    }
    Ok((0..=m / 2)
        .max_by(|&a, &b| {
            let ea = f_lower_exponent(m, a).unwrap();
            let eb = f_lower_exponent(m, b).unwrap();
            ea.cmp(&eb)
        })
        .unwrap())
}

/// The conjectured clique exponent correction c_m: the conjecture reads
/// f(K_m, p) = p^(-2m/3 + c_m + o(1)) with c_m piecewise by m mod 3.
pub fn cm(m: usize) -> Result<Ratio<i64>, BoundError> {
    if m < 4 {
        return Err(BoundError::InvalidParameter(format!("cm needs m >= 4, got {m}")));
    }
    let mi = m as i64;
    Ok(match m % 3 {
        0 => Ratio::new(mi, 2 * mi - 3),
        1 => Ratio::new(2, 3),
        _ => Ratio::new(2 * mi + 8, 6 * mi - 3),
    })
}

// ---------------------------------------------------------------------------
// Expected-copy-count bounds
// ---------------------------------------------------------------------------

/// Natural log of the copy-count upper bound
/// (A e(H))^e(H) p^(e(H) - k(k-1)) (2N)^(v(H) - k), valid when H has a
/// k-matching and pN >= 1.
pub fn t_upper_bound_log(
    h: &SimpleGraph,
    k: usize,
    p: f64,
    big_n: u64,
    a: f64,
) -> Result<f64, BoundError> {
    if p <= 0.0 || p >= 1.0 {
        return Err(BoundError::InvalidParameter(format!("p={p} outside (0,1)")));
    }
    if a <= 1.0 {
        return Err(BoundError::InvalidParameter(format!("A={a} must exceed 1")));
    }
    if graph::max_matching_size(h) < k {
        return Err(BoundError::InvalidParameter(format!(
            "target has no {k}-matching (max matching {})",
            graph::max_matching_size(h)
        )));
    }
    if p * (big_n as f64) < 1.0 {
        return Err(BoundError::OutOfRegime(format!(
            "pN = {} < 1",
            p * big_n as f64
        )));
    }
    let e = h.edge_count() as f64;
    let v = h.vertex_count() as f64;
    let kk = (k * k.saturating_sub(1)) as f64;
    Ok(e * (a * e).ln() + (e - kk) * p.ln() + (v - k as f64) * (2.0 * big_n as f64).ln())
}

/// Linear-space version of [`t_upper_bound_log`] (may overflow to infinity).
pub fn t_upper_bound(
    h: &SimpleGraph,
    k: usize,
    p: f64,
    big_n: u64,
    a: f64,
) -> Result<f64, BoundError> {
    Ok(t_upper_bound_log(h, k, p, big_n, a)?.exp())
}

/// The fill-phase cost surrogate e+(d): expected queries charged to a vertex
/// of back-degree d under (p, M, eps)-jumbledness.
pub fn e_plus(d: u64, p: f64, m_cap: u64, eps: f64) -> f64 {
    let d = d as f64;
    let m = m_cap as f64;
    if d < m * p.sqrt() {
        d * d / 2.0
    } else if d < m {
        (1.0 + eps) * p * m * m / 2.0
    } else {
        (1.0 + eps) * p * d * d / 2.0
    }
}

/// The clique-count benchmark t*(m, N) = p^C(m,2) (2 p^-1 N)^(m/2), with N
/// the edge count of the built graph. t*(2, N) = 2N for every p.
pub fn t_star(m: usize, p: f64, edge_count: u64) -> f64 {
    assert!(m >= 2 && edge_count >= 1);
    assert!(p > 0.0 && p < 1.0 || (m == 2), "p must be in (0,1)");
    let log = choose2(m) * p.ln()
        + (m as f64 / 2.0) * ((2.0 * edge_count as f64).ln() - p.ln());
    log.exp()
}

/// The order-optimal red probability p = C (m/n) log(n/m) for the
/// mixed-target game, clamped into (0, 1).
pub fn opt_p(m: usize, n: usize, c: f64) -> f64 {
    assert!(m >= 3 && m < n && c > 0.0);
    let raw = c * (m as f64 / n as f64) * (n as f64 / m as f64).ln();
    raw.clamp(1e-12, 1.0 - 1e-12)
}
