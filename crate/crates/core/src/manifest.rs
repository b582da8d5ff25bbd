//! Experiment manifests: a JSON description of a batch of games (game
//! kind, strategies, parameters, seed, trials) that can be re-run later to
//! reproduce every transcript byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::rng::trial_seed;
use crate::engine::{play_online_ramsey, play_subgraph_query};
use crate::error::EngineError;
use crate::graph::parse_named_graph;
use crate::registry;

/// Which game a manifest drives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameKind {
    /// Builder vs. painter, targets red K_m / blue K_n.
    Colored,
    /// Builder vs. chance, target subgraph.
    Query,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub experiment: String,
    pub game: GameKind,
    pub seed: u64,
    pub trials: usize,
    pub turn_cap: usize,
    pub builder: String,
    #[serde(default)]
    pub builder_params: Value,
    /// Colored game only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub painter: Option<String>,
    #[serde(default)]
    pub painter_params: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Query game only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Set when the manifest is first written; replay preserves it.
    #[serde(default)]
    pub created_unix: u64,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn missing(field: &str) -> EngineError {
    EngineError::Transcript(format!("manifest missing field '{field}'"))
}

/// Runs every trial of a manifest and renders the transcripts plus a
/// success tally into one deterministic report string. Re-running the same
/// manifest yields the identical string.
pub fn run_manifest(manifest: &RunManifest) -> Result<String, EngineError> {
    let mut out = String::new();
    out.push_str(&format!("experiment {}\n", manifest.experiment));
    let mut successes = 0usize;
    let mut turns_total = 0usize;
    for trial in 0..manifest.trials {
        let seed = trial_seed(manifest.seed, trial as u64);
        let transcript = match manifest.game {
            GameKind::Colored => {
                let mut builder =
                    registry::make_builder(&manifest.builder, &manifest.builder_params)?;
                let painter_name = manifest.painter.as_deref().ok_or_else(|| missing("painter"))?;
                let mut painter =
                    registry::make_painter(painter_name, &manifest.painter_params)?;
                play_online_ramsey(
                    builder.as_mut(),
                    painter.as_mut(),
                    manifest.m.ok_or_else(|| missing("m"))?,
                    manifest.n.ok_or_else(|| missing("n"))?,
                    manifest.turn_cap,
                    seed,
                )?
            }
            GameKind::Query => {
                let mut builder =
                    registry::make_builder(&manifest.builder, &manifest.builder_params)?;
                let target_name = manifest.target.as_deref().ok_or_else(|| missing("target"))?;
                let target = parse_named_graph(target_name)
                    .map_err(|e| EngineError::Transcript(format!("bad target: {e}")))?;
                play_subgraph_query(
                    builder.as_mut(),
                    &target,
                    target_name,
                    manifest.p.ok_or_else(|| missing("p"))?,
                    manifest.turn_cap,
                    seed,
                )?
            }
        };
        successes += transcript.success_indicator() as usize;
        turns_total += transcript.turns_used();
        out.push_str(&format!("trial {trial}\n"));
        out.push_str(&transcript.render());
    }
    out.push_str(&format!(
        "summary trials {} successes {} mean_turns {:.6}\n",
        manifest.trials,
        successes,
        turns_total as f64 / manifest.trials.max(1) as f64
    ));
    Ok(out)
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn query_manifest() -> RunManifest {
        RunManifest {
            experiment: "triangle-smoke".into(),
            game: GameKind::Query,
            seed: 99,
            trials: 5,
            turn_cap: 30,
            builder: "triangle".into(),
            builder_params: json!({}),
            painter: None,
            painter_params: Value::Null,
            m: None,
            n: None,
            target: Some("K3".into()),
            p: Some(0.5),
            created_unix: 0,
        }
    }

    #[test]
    fn replay_is_byte_identical() {
        let m = query_manifest();
        let a = run_manifest(&m).unwrap();
        let b = run_manifest(&m).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("summary trials 5"));
    }

    #[test]
    fn json_round_trip_preserves_the_run() {
        let m = query_manifest();
        let m2 = RunManifest::from_json(&m.to_json()).unwrap();
        assert_eq!(run_manifest(&m).unwrap(), run_manifest(&m2).unwrap());
    }

    #[test]
    fn colored_manifest_runs() {
        let m = RunManifest {
            experiment: "colored-smoke".into(),
            game: GameKind::Colored,
            seed: 3,
            trials: 3,
            turn_cap: 45,
            builder: "branching".into(),
            builder_params: json!({"m": 3, "n": 3}),
            painter: Some("random".into()),
            painter_params: json!({"p": 0.5}),
            m: Some(3),
            n: Some(3),
            target: None,
            p: None,
            created_unix: 0,
        };
        let report = run_manifest(&m).unwrap();
        assert!(report.contains("summary trials 3 successes 3"), "{report}");
    }

    #[test]
    fn missing_fields_are_reported() {
        let mut m = query_manifest();
        m.target = None;
        assert!(run_manifest(&m).is_err());
    }
}
