//! Acceptance suite: one test per criterion, each ending in a single
//! "criterion N: PASS" line (or a failing assertion that explains itself).
//! Tolerances are pinned as constants next to each criterion.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use online_ramsey::audit;
use online_ramsey::bounds;
use online_ramsey::builders::{
    self, BranchAndFillBuilder, BranchAndFillConfig, BranchingBuilder, BranchingConfig,
    CliqueFillBuilder, NestedHalfgraphBuilder, TriangleBuilder,
};
use online_ramsey::engine::rng::trial_seed;
use online_ramsey::engine::{
    play_online_ramsey, play_subgraph_query_with, Board, BuilderMove, BuilderPolicy, Outcome,
};
use online_ramsey::exact;
use online_ramsey::graph::{self, SimpleGraph};
use online_ramsey::harness;
use online_ramsey::manifest::{run_manifest, GameKind, RunManifest};
use online_ramsey::painters::{AlterationConfig, AlterationPainter, RandomPainter};

/// Plays random untried pairs across the whole vertex pool.
#[derive(Clone)]
struct RandomBuilder;

impl BuilderPolicy for RandomBuilder {
    fn id(&self) -> String {
        "random-fuzz".into()
    }
    fn next_move(&mut self, board: &Board, rng: &mut ChaCha8Rng) -> BuilderMove {
        let cap = board.vertex_cap();
        for _ in 0..256 {
            let u = rng.gen_range(0..cap);
            let v = rng.gen_range(0..cap);
            if u != v && !board.is_tried(u, v) {
                return BuilderMove::Edge(u, v);
            }
        }
        BuilderMove::Concede("no untried pair sampled".into())
    }
}

/// Hammers a single hub vertex to force activations as early as possible.
#[derive(Clone)]
struct StarBuilder {
    next: usize,
}

impl BuilderPolicy for StarBuilder {
    fn id(&self) -> String {
        "star-fuzz".into()
    }
    fn next_move(&mut self, board: &Board, _rng: &mut ChaCha8Rng) -> BuilderMove {
        self.next += 1;
        if self.next < board.vertex_cap() {
            BuilderMove::Edge(0, self.next)
        } else {
            BuilderMove::Concede("star exhausted".into())
        }
    }
}

#[test]
fn criterion_01_alteration_painter_keeps_red_triangle_free() {
    // 10^5 fuzzed games, n in {20, 50}, r overridden to 5, both painter
    // formulations, four builder shapes. Tolerance: zero red triangles.
    const GAMES_PER_CONFIG: usize = 6250; // x 16 configs = 100_000
    const R_OVERRIDE: usize = 5;
    let mut configs = Vec::new();
    for &n in &[20usize, 50] {
        for hidden in [false, true] {
            for builder_kind in 0..4 {
                configs.push((n, hidden, builder_kind));
            }
        }
    }
    assert_eq!(configs.len() * GAMES_PER_CONFIG, 100_000);
    let violations: usize = configs
        .par_iter()
        .map(|&(n, hidden, builder_kind)| {
            let mut cfg = AlterationConfig::defaults(n).unwrap();
            cfg.r = R_OVERRIDE;
            cfg.hidden_graph = hidden;
            let cap = cfg.safe_turn_cap();
            (0..GAMES_PER_CONFIG)
                .filter(|&trial| {
                    let seed = trial_seed(
                        0xA17E_4A71 ^ (n as u64) << 1 ^ hidden as u64,
                        (builder_kind * GAMES_PER_CONFIG + trial) as u64,
                    );
                    let mut builder: Box<dyn BuilderPolicy> = match builder_kind {
                        0 => Box::new(RandomBuilder),
                        1 => Box::new(StarBuilder { next: 0 }),
                        2 => Box::new(TriangleBuilder),
                        _ => Box::new(CliqueFillBuilder::new(6)),
                    };
                    let mut painter = AlterationPainter::new(cfg.clone()).unwrap();
                    let t = play_online_ramsey(builder.as_mut(), &mut painter, 3, n, cap, seed)
                        .expect("fuzz game");
                    t.outcome == Outcome::RedClique
                        || graph::contains_clique(&t.success_graph(), 3)
                })
                .count()
        })
        .sum();
    assert_eq!(violations, 0, "criterion 1: FAIL — {violations} games ended with a red triangle");
    println!("criterion 1: PASS — 100000 fuzzed games, red graph always triangle-free");
}

#[test]
fn criterion_02_branching_builder_beats_adversaries_within_budget() {
    const PAIRS: [(usize, usize); 3] = [(3, 3), (3, 4), (4, 4)];
    const RANDOM_PS: [f64; 3] = [0.1, 0.5, 0.9];
    const SEEDS_PER_P: u64 = 334; // 3 x 334 = 1002 random painters per pair

    // Exhaustive painter tree for (3,3): every painter strategy loses.
    let cfg = BranchingConfig::new(3, 3).unwrap();
    let budget33 = builders::branching_budget(3, 3);
    let rep = exact::exhaustive_painter_check(
        &BranchingBuilder::new(cfg),
        3,
        3,
        budget33 as usize,
        10_000_000,
    )
    .unwrap();
    assert!(
        rep.all_win && rep.max_turns as u64 <= budget33,
        "criterion 2: FAIL — exhaustive (3,3) tree: {rep:?}"
    );

    for &(m, n) in &PAIRS {
        let budget = builders::branching_budget(m, n) as usize;
        // Minimax-guided adversarial painter.
        let mut b = BranchingBuilder::new(BranchingConfig::new(m, n).unwrap());
        let mut adv = exact::AdversarialPainter::new(m, n, 9, 6);
        let t = play_online_ramsey(&mut b, &mut adv, m, n, budget, 2024).unwrap();
        assert_eq!(
            t.success_indicator(),
            1,
            "criterion 2: FAIL — ({m},{n}) lost to the adversarial painter"
        );
        // Random painters at three densities, all seeds, 100% wins.
        let losses: usize = RANDOM_PS
            .par_iter()
            .map(|&p| {
                (0..SEEDS_PER_P)
                    .filter(|&seed| {
                        let mut b = BranchingBuilder::new(BranchingConfig::new(m, n).unwrap());
                        let mut painter = RandomPainter::new(p).unwrap();
                        let t = play_online_ramsey(&mut b, &mut painter, m, n, budget, seed)
                            .expect("game");
                        t.success_indicator() != 1 || t.turns_used() > budget
                    })
                    .count()
            })
            .sum();
        assert_eq!(losses, 0, "criterion 2: FAIL — ({m},{n}) lost {losses} random-painter games");
    }
    println!("criterion 2: PASS — branching builder won every adversarial and random game within budget");
}

#[test]
fn criterion_03_triangle_query_exponent() {
    const PS: [f64; 5] = [0.4, 0.3, 0.2, 0.1, 0.05];
    const TRIALS: usize = 2_000;
    const SLOPE_RANGE: (f64, f64) = (-1.7, -1.3);
    let k3 = SimpleGraph::complete(3);
    let points: Vec<(f64, f64)> = PS
        .par_iter()
        .map(|&p| {
            let f = harness::estimate_f_hat(
                &|| Box::new(TriangleBuilder),
                &k3,
                "K3",
                p,
                TRIALS,
                3_141,
            )
            .unwrap();
            (p.ln(), (f as f64).ln())
        })
        .collect();
    let (slope, stderr) = harness::slope_fit(&points).unwrap();
    assert!(
        (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&slope),
        "criterion 3: FAIL — triangle slope {slope:.3} (stderr {stderr:.3}) outside {SLOPE_RANGE:?}"
    );
    println!("criterion 3: PASS — f(K3,p) slope {slope:.3} within {SLOPE_RANGE:?}");
}

#[test]
fn criterion_04_k4_query_exponent() {
    const PS: [f64; 4] = [0.5, 0.4, 0.3, 0.2];
    const TRIALS: usize = 400;
    const SLOPE_RANGE: (f64, f64) = (-2.3, -1.7);
    let k4 = SimpleGraph::complete(4);
    let points: Vec<(f64, f64)> = PS
        .par_iter()
        .map(|&p| {
            let f = harness::estimate_f_hat(
                &|| {
                    let mut cfg = BranchAndFillConfig::for_m(4).unwrap();
                    cfg.max_restarts = None; // retry until the budget runs out
                    // A per-attempt budget of c_t * p^(-11/6) must clear the
                    // 6-probe floor of K4 even at p = 0.5, or attempts are cut
                    // short and the measured exponent flattens.
                    cfg.c_t = 8.0;
                    Box::new(BranchAndFillBuilder::new(cfg, p).unwrap())
                },
                &k4,
                "K4",
                p,
                TRIALS,
                2_718,
            )
            .unwrap();
            (p.ln(), (f as f64).ln())
        })
        .collect();
    let (slope, stderr) = harness::slope_fit(&points).unwrap();
    assert!(
        (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&slope),
        "criterion 4: FAIL — K4 slope {slope:.3} (stderr {stderr:.3}) outside {SLOPE_RANGE:?}"
    );
    println!("criterion 4: PASS — f(K4,p) slope {slope:.3} within {SLOPE_RANGE:?}");
}

#[test]
fn criterion_05_monte_carlo_matches_exact_solver() {
    const FP_TOL: f64 = 1e-12;
    let k3 = SimpleGraph::complete(3);
    let (f_exact, _) = exact::exact_f(&k3, 0.5, 8).unwrap();
    let f_hat = harness::estimate_f_hat(&|| Box::new(TriangleBuilder), &k3, "K3", 0.5, 2_000, 5)
        .unwrap();
    assert!(
        (f_hat as i64 - f_exact as i64).abs() <= 1,
        "criterion 5: FAIL — f_hat {f_hat} vs exact {f_exact}"
    );
    // Canonicalized DP vs. raw brute-force expectimax, same 6-vertex pool.
    for &p in &[0.3, 0.5, 0.8] {
        for budget in 1..=5usize {
            let fast = exact::exact_query_value(&k3, p, budget, 6).unwrap();
            let slow = exact::brute_force_query_value(&k3, p, budget, 6).unwrap();
            assert!(
                (fast - slow).abs() <= FP_TOL,
                "criterion 5: FAIL — p={p} budget={budget}: {fast} vs {slow}"
            );
        }
    }
    println!("criterion 5: PASS — f_hat {f_hat} within 1 of exact {f_exact}; DP equals brute force");
}

#[test]
fn criterion_06_weight_bound_audit() {
    const TRIALS: usize = 10_000;
    const BIG_N: usize = 20;
    const CELLS: [(usize, usize); 3] = [(3, 1), (4, 1), (4, 2)];
    const PS: [f64; 2] = [0.3, 0.5];
    type Factory = Box<dyn Fn() -> Box<dyn BuilderPolicy> + Sync>;
    let factories: Vec<(&str, Factory)> = vec![
        ("clique-fill", Box::new(|| Box::new(CliqueFillBuilder::new(7)))),
        ("triangle", Box::new(|| Box::new(TriangleBuilder))),
        (
            "branching",
            Box::new(|| {
                Box::new(BranchingBuilder::new(BranchingConfig::new(4, 4).unwrap()))
            }),
        ),
    ];
    for (name, factory) in &factories {
        for &(m, c) in &CELLS {
            for &p in &PS {
                let rep =
                    audit::audit_run(factory.as_ref(), m, c, p, BIG_N, TRIALS, 0xBEEF).unwrap();
                assert!(
                    rep.verdict,
                    "criterion 6: FAIL — {name} (m={m},c={c},p={p}): mean {} + 3*{} > bound {}",
                    rep.mean, rep.stderr, rep.bound
                );
            }
        }
    }
    println!("criterion 6: PASS — all 18 audit cells respect the weight bound at 3 standard errors");
}

#[test]
fn criterion_07_clique_fill_triangle_expectation() {
    const SEEDS: u64 = 100;
    const TARGET: f64 = 125_000.0; // p^3 (2N)^{3/2} at p=1/2, N=5000
    const REL_TOL: f64 = 0.10;
    let k3 = SimpleGraph::complete(3);
    let total: f64 = (0..SEEDS)
        .into_par_iter()
        .map(|seed| {
            let mut b = CliqueFillBuilder::new(100);
            let t = play_subgraph_query_with(&mut b, &k3, "K3", 0.5, 5_000, seed, false).unwrap();
            graph::count_labeled_clique_copies(3, &t.success_graph()) as f64
        })
        .sum();
    let mean = total / SEEDS as f64;
    assert!(
        (mean - TARGET).abs() <= REL_TOL * TARGET,
        "criterion 7: FAIL — mean labeled triangles {mean} not within 10% of {TARGET}"
    );
    println!("criterion 7: PASS — mean labeled triangles {mean:.0} within 10% of {TARGET}");
}

#[test]
fn criterion_08_certificate_soundness_and_diagonal_exponent() {
    const EXP_TARGET: f64 = 0.585_786_437_626_905; // 2 - sqrt(2)
    const EXP_TOL: f64 = 0.15;
    const POINTS_PER_DECADE: usize = 12;
    // Soundness at (3,3): the certified bound never exceeds the stabilized
    // exact value.
    let (n_star_33, _) = bounds::best_certified_lower_bound(3, 3, POINTS_PER_DECADE);
    let v8 = exact::exact_online_ramsey(3, 3, 8, 28).unwrap().expect("forced win");
    let v9 = exact::exact_online_ramsey(3, 3, 9, 36).unwrap().expect("forced win");
    assert_eq!(v8, v9, "criterion 8: FAIL — r~(3,3) not stabilized: {v8} vs {v9}");
    assert!(
        n_star_33 <= v9 as u64,
        "criterion 8: FAIL — certified N* {n_star_33} exceeds exact value {v9}"
    );
    // Diagonal exponent for n = 20..60.
    let bad: Vec<(usize, f64)> = (20..=60usize)
        .into_par_iter()
        .filter_map(|n| {
            let (n_star, cert) = bounds::best_certified_lower_bound(n, n, POINTS_PER_DECADE);
            assert!(cert.is_some(), "criterion 8: FAIL — no certificate on the diagonal at n={n}");
            let exponent = (n_star as f64).log2() / n as f64;
            ((exponent - EXP_TARGET).abs() > EXP_TOL).then_some((n, exponent))
        })
        .collect();
    assert!(bad.is_empty(), "criterion 8: FAIL — diagonal exponents out of range: {bad:?}");
    println!(
        "criterion 8: PASS — N*(3,3)={n_star_33} <= r~(3,3)={v9}; diagonal exponent within {EXP_TOL} of 2-sqrt(2)"
    );
}

#[test]
fn criterion_09_exponent_identity() {
    for m in 4..=30usize {
        let (a, b) = builders::choose_ab(m);
        let lhs = builders::bnf_turn_exponent(a, b).unwrap();
        let rhs = -num_rational::Ratio::new(2 * m as i64, 3) + bounds::cm(m).unwrap();
        assert_eq!(lhs, rhs, "criterion 9: FAIL — mismatch at m={m}");
    }
    println!("criterion 9: PASS — turn exponent equals -(2/3)m + c_m exactly for 4 <= m <= 30");
}

#[test]
fn criterion_10_halfgraph_copy_count() {
    const SEEDS: u64 = 50;
    const BIG_N: usize = 10_000;
    const P: f64 = 0.3;
    const FLOOR: f64 = 0.5 * 9_000_000.0 / 4.0; // 0.5 (pN)^2 / k^k, k = 2
    let h2 = graph::make_half_graph_split(2);
    let total: f64 = (0..SEEDS)
        .into_par_iter()
        .map(|seed| {
            let mut b = NestedHalfgraphBuilder::new(2, BIG_N);
            let t = play_subgraph_query_with(&mut b, h2.graph(), "H2", P, BIG_N, seed, false)
                .unwrap();
            graph::count_labeled_subgraph_copies(h2.graph(), &t.success_graph()).unwrap() as f64
        })
        .sum();
    let mean = total / SEEDS as f64;
    assert!(
        mean >= FLOOR,
        "criterion 10: FAIL — mean labeled H2 copies {mean} below floor {FLOOR}"
    );
    println!("criterion 10: PASS — mean labeled H2 copies {mean:.0} >= {FLOOR}");
}

#[test]
fn criterion_11_sandwich_inequality() {
    for &p in &[0.3, 0.5, 0.7] {
        let rep = exact::theorem_sandwich_check(3, 3, p, 8).unwrap();
        assert!(rep.sandwich_ok, "criterion 11: FAIL — sandwich broken at p={p}: {rep:?}");
    }
    println!("criterion 11: PASS — r~(3,3;p) <= min f <= 3 r~(3,3;p) at p in {{0.3, 0.5, 0.7}}");
}

#[test]
fn criterion_12_manifest_replay_is_byte_identical() {
    let manifests = vec![
        RunManifest {
            experiment: "acc-colored-branching".into(),
            game: GameKind::Colored,
            seed: 11,
            trials: 20,
            turn_cap: 45,
            builder: "branching".into(),
            builder_params: serde_json::json!({"m": 3, "n": 3}),
            painter: Some("random".into()),
            painter_params: serde_json::json!({"p": 0.5}),
            m: Some(3),
            n: Some(3),
            target: None,
            p: None,
            created_unix: 0,
        },
        RunManifest {
            experiment: "acc-alteration".into(),
            game: GameKind::Colored,
            seed: 12,
            trials: 20,
            turn_cap: 11,
            builder: "clique-fill".into(),
            builder_params: serde_json::json!({"v": 6}),
            painter: Some("alteration".into()),
            painter_params: serde_json::json!({"n": 20, "r": 5}),
            m: Some(3),
            n: Some(20),
            target: None,
            p: None,
            created_unix: 0,
        },
        RunManifest {
            experiment: "acc-query-triangle".into(),
            game: GameKind::Query,
            seed: 13,
            trials: 20,
            turn_cap: 40,
            builder: "triangle".into(),
            builder_params: serde_json::json!({}),
            painter: None,
            painter_params: serde_json::Value::Null,
            m: None,
            n: None,
            target: Some("K3".into()),
            p: Some(0.3),
            created_unix: 0,
        },
        RunManifest {
            experiment: "acc-query-halfgraph".into(),
            game: GameKind::Query,
            seed: 14,
            trials: 5,
            turn_cap: 500,
            builder: "nested-halfgraph".into(),
            builder_params: serde_json::json!({"k": 2, "n": 500}),
            painter: None,
            painter_params: serde_json::Value::Null,
            m: None,
            n: None,
            target: Some("H2".into()),
            p: Some(0.3),
            created_unix: 0,
        },
    ];
    for m in &manifests {
        let first = run_manifest(m).unwrap();
        // Round-trip through JSON, as `replay` does from disk.
        let reloaded = RunManifest::from_json(&m.to_json()).unwrap();
        let second = run_manifest(&reloaded).unwrap();
        assert_eq!(
            first, second,
            "criterion 12: FAIL — replay of '{}' diverged",
            m.experiment
        );
    }
    println!("criterion 12: PASS — all {} manifests replay byte-identically", manifests.len());
}
