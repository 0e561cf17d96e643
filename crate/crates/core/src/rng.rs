//! Counter-based random streams.
//!
//! Every stream is SplitMix64: draw `k` (0-based) of a stream with seed `s`
//! is `mix64(s + (k + 1) * 0x9E3779B97F4A7C15)` with wrapping arithmetic,
//! where `mix64` is the SplitMix64 finalizer:
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! Uniform floats take the top 53 bits: `(u >> 11) * 2^-53`. A child stream
//! `fork(id)` has seed `mix64(s ^ mix64(id + GAMMA))` and does not depend on how
//! many draws the parent has made. Run seeds come from [`derive_run_seed`].
//! All of this is plain integer arithmetic so ports in other languages can
//! reproduce event logs exactly.

use rand_core::{impls, RngCore};

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer (Steele, Lea & Flood, 2014).
pub const fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one simulation run.
///
/// Inputs are packed as `strategy << 56 | drone_count << 40 | rep` (drone
/// count truncated to 16 bits, rep to 40 bits), then
/// `mix64(master ^ mix64(packed))`.
pub fn derive_run_seed(master_seed: u64, strategy_id: u8, drone_count: u16, rep_index: u32) -> u64 {
    let packed = (u64::from(strategy_id) << 56) | (u64::from(drone_count) << 40) | u64::from(rep_index);
    mix64(master_seed ^ mix64(packed))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngHandle {
    stream_seed: u64,
    counter: u64,
}

impl RngHandle {
    pub fn new(stream_seed: u64) -> Self {
        Self {
            stream_seed,
            counter: 0,
        }
    }

    pub fn stream_seed(&self) -> u64 {
        self.stream_seed
    }

    /// Independent child stream keyed by `stream_id`.
    pub fn fork(&self, stream_id: u64) -> RngHandle {
        RngHandle::new(mix64(self.stream_seed ^ mix64(stream_id.wrapping_add(GAMMA))))
    }

    pub fn next_raw(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.stream_seed.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_raw() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n` by multiply-shift on the top 32 bits. `n` must be > 0.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (((self.next_raw() >> 32) * n as u64) >> 32) as usize
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

impl RngCore for RngHandle {
    fn next_u32(&mut self) -> u32 {
        (self.next_raw() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.next_raw()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        impls::fill_bytes_via_next(self, dst)
    }
}
