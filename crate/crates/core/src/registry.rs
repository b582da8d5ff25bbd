//! Name-indexed strategy registry: every builder and painter variant sits
//! behind the engine's policy traits and is constructed from a string id
//! plus a JSON parameter object, so the CLI and manifests can select
//! strategies at runtime.

use serde_json::Value;

use crate::builders::{
    BranchAndFillBuilder, BranchAndFillConfig, BranchingBuilder, BranchingConfig,
    CliqueFillBuilder, NestedHalfgraphBuilder, TriangleBuilder,
};
use crate::engine::{BuilderPolicy, Color, PainterPolicy};
use crate::error::PolicyError;
use crate::exact::AdversarialPainter;
use crate::painters::{AlterationConfig, AlterationPainter, ConstPainter, RandomPainter};

pub struct BuilderEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub make: fn(&Value) -> Result<Box<dyn BuilderPolicy>, PolicyError>,
}

pub struct PainterEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub make: fn(&Value) -> Result<Box<dyn PainterPolicy>, PolicyError>,
}

fn bad(policy: &str, detail: String) -> PolicyError {
    PolicyError::BadParameter { policy: policy.into(), detail }
}

fn get_usize(params: &Value, policy: &str, key: &str) -> Result<usize, PolicyError> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| bad(policy, format!("missing integer parameter '{key}'")))
}

fn get_f64(params: &Value, policy: &str, key: &str) -> Result<f64, PolicyError> {
    params
        .get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| bad(policy, format!("missing float parameter '{key}'")))
}

fn opt_usize(params: &Value, key: &str) -> Option<usize> {
    params.get(key).and_then(Value::as_u64).map(|v| v as usize)
}

fn opt_f64(params: &Value, key: &str) -> Option<f64> {
    params.get(key).and_then(Value::as_f64)
}

pub const BUILDERS: &[BuilderEntry] = &[
    BuilderEntry {
        name: "branching",
        summary: "pivot/descend clique builder for the colored game; params m, n",
        make: |params| {
            let m = get_usize(params, "branching", "m")?;
            let n = get_usize(params, "branching", "n")?;
            Ok(Box::new(BranchingBuilder::new(BranchingConfig::new(m, n)?)))
        },
    },
    BuilderEntry {
        name: "triangle",
        summary: "eager star-and-fill triangle finder; no params",
        make: |_| Ok(Box::new(TriangleBuilder)),
    },
    BuilderEntry {
        name: "bnf",
        summary: "branch-and-fill K_m finder; params m, p, optional c_t, max_restarts",
        make: |params| {
            let m = get_usize(params, "bnf", "m")?;
            let p = get_f64(params, "bnf", "p")?;
            let mut cfg = BranchAndFillConfig::for_m(m)?;
            if let Some(ct) = opt_f64(params, "c_t") {
                cfg.c_t = ct;
            }
            if params.get("max_restarts").is_some() {
                cfg.max_restarts = opt_usize(params, "max_restarts");
            }
            Ok(Box::new(BranchAndFillBuilder::new(cfg, p)?))
        },
    },
    BuilderEntry {
        name: "nested-halfgraph",
        summary: "nested common-neighborhood H_k builder; params k, n (query budget)",
        make: |params| {
            let k = get_usize(params, "nested-halfgraph", "k")?;
            let n = get_usize(params, "nested-halfgraph", "n")?;
            if k < 1 || n < k {
                return Err(bad("nested-halfgraph", format!("need 1 <= k <= n, got k={k} n={n}")));
            }
            Ok(Box::new(NestedHalfgraphBuilder::new(k, n)))
        },
    },
    BuilderEntry {
        name: "clique-fill",
        summary: "queries every pair of a fixed v-set; params v",
        make: |params| {
            let v = get_usize(params, "clique-fill", "v")?;
            if v < 2 {
                return Err(bad("clique-fill", format!("v must be at least 2, got {v}")));
            }
            Ok(Box::new(CliqueFillBuilder::new(v)))
        },
    },
];

pub const PAINTERS: &[PainterEntry] = &[
    PainterEntry {
        name: "random",
        summary: "i.i.d. red with probability p; params p",
        make: |params| {
            let p = get_f64(params, "random", "p")?;
            Ok(Box::new(RandomPainter::new(p)?))
        },
    },
    PainterEntry {
        name: "all-red",
        summary: "always answers red; no params",
        make: |_| Ok(Box::new(ConstPainter::new(Color::Red))),
    },
    PainterEntry {
        name: "all-blue",
        summary: "always answers blue; no params",
        make: |_| Ok(Box::new(ConstPainter::new(Color::Blue))),
    },
    PainterEntry {
        name: "alteration",
        summary: "activation/alteration triangle-avoiding painter; params n, optional p, r, threshold, hidden",
        make: |params| {
            let n = get_usize(params, "alteration", "n")?;
            let mut cfg = AlterationConfig::defaults(n)?;
            if let Some(p) = opt_f64(params, "p") {
                cfg.p = p;
            }
            if let Some(r) = opt_usize(params, "r") {
                cfg.r = r;
            }
            if let Some(t) = opt_usize(params, "threshold") {
                cfg.activation_threshold = t;
            }
            if let Some(h) = params.get("hidden").and_then(Value::as_bool) {
                cfg.hidden_graph = h;
            }
            Ok(Box::new(AlterationPainter::new(cfg)?))
        },
    },
    PainterEntry {
        name: "adversarial",
        summary: "minimax-guided delaying painter; params m, n, optional vertex_budget, horizon",
        make: |params| {
            let m = get_usize(params, "adversarial", "m")?;
            let n = get_usize(params, "adversarial", "n")?;
            let vb = opt_usize(params, "vertex_budget").unwrap_or(9);
            let horizon = opt_usize(params, "horizon").unwrap_or(6);
            Ok(Box::new(AdversarialPainter::new(m, n, vb, horizon)))
        },
    },
];

pub fn make_builder(name: &str, params: &Value) -> Result<Box<dyn BuilderPolicy>, PolicyError> {
    BUILDERS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| PolicyError::Unknown(format!("builder '{name}'")))
        .and_then(|e| (e.make)(params))
}

pub fn make_painter(name: &str, params: &Value) -> Result<Box<dyn PainterPolicy>, PolicyError> {
    PAINTERS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| PolicyError::Unknown(format!("painter '{name}'")))
        .and_then(|e| (e.make)(params))
}
