//! Seeded randomness. Every instance gets its own ChaCha8 stream keyed by
//! the campaign seed and a stable instance index, so results do not depend
//! on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const RNG_NAME: &str = "ChaCha8Rng(seed_from_u64, stream = instance index)";

pub fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
