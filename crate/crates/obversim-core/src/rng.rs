//! Seeded, splittable random streams.
//!
//! Each parallel chunk of work draws from an independent ChaCha8 stream
//! derived from `(seed, chunk_index)`, so merged output is reproducible
//! regardless of how chunks are scheduled.

use core::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::SpherePoint;

/// Number of accepted points produced per chunk when sampling.
pub(crate) const CHUNK_SIZE: usize = 1 << 16;

pub(crate) struct ChunkRng {
    inner: ChaCha8Rng,
}

impl ChunkRng {
    pub(crate) fn new(seed: u64, chunk_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(chunk_index);
        ChunkRng { inner }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub(crate) fn next_f64(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// A proposal uniform on the sphere: `z ~ U(-1, 1)`, `phi ~ U(-pi, pi)`.
pub(crate) fn uniform_sphere_point(rng: &mut ChunkRng) -> SpherePoint {
    let z = 2.0 * rng.next_f64() - 1.0;
    let phi = (2.0 * rng.next_f64() - 1.0) * PI;
    let s = libm::sqrt((1.0 - z * z).max(0.0));
    SpherePoint {
        x: s * libm::cos(phi),
        y: s * libm::sin(phi),
        z,
    }
}
