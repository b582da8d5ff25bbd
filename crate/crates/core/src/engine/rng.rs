//! Seeded randomness with per-role substreams.
//!
//! One root seed expands into independent streams for builder randomness,
//! painter randomness, and chance (query-game coin flips), so changing one
//! policy's draws never perturbs another's. Per-trial seeds are derived with
//! a splitmix step so neighboring trial indices get unrelated roots.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream index for builder randomness.
pub const ROLE_BUILDER: u64 = 0;
/// Stream index for painter randomness.
pub const ROLE_PAINTER: u64 = 1;
/// Stream index for chance edges in the query game.
pub const ROLE_CHANCE: u64 = 2;

/// The substream for one role under a root seed.
pub fn role_rng(root_seed: u64, role: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(role);
    rng
}

/// splitmix64 finalizer; bijective on u64.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Root seed for trial `trial` of an experiment with root `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial.wrapping_add(1)))
}
