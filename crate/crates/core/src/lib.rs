//! Online Ramsey games and the subgraph query game: engines, strategies,
//! analytic bounds, weight audits, and exact small-case solvers.
//!
//! The crate is organized around two adversarial edge games:
//!
//! * the **colored game**, where a builder presents edges one at a time and a
//!   painter colors each red or blue, the builder trying to force a red
//!   `K_m` or blue `K_n`; and
//! * the **query game**, where each queried pair is built independently with
//!   probability `p` and the builder tries to realize a target subgraph.
//!
//! Builder and painter strategies are trait objects selected by name through
//! [`registry`], so the CLI and the test harness share one catalogue.

pub mod audit;
pub mod bounds;
pub mod builders;
pub mod engine;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod manifest;
pub mod painters;
pub mod registry;
