//! Exhaustive and seeded-random sweeps over tuples of carrier indices.
//!
//! Random mode draws from a SplitMix64 stream seeded with the user seed.
//! Each sampled index is `(x * n) >> 64` for the next 64-bit output `x`, and a
//! `k`-tuple consumes `k` consecutive outputs. Given `(samples, seed)` the
//! sampled tuples are fixed across runs and platforms.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CheckStrategy {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

impl CheckStrategy {
    pub fn random(samples: u64, seed: u64) -> Self {
        CheckStrategy::Random { samples, seed }
    }

    /// Exhaustive if `n^arity` tuples fit in `budget`, otherwise random.
    pub fn auto(n: usize, arity: u32, budget: u64, samples: u64, seed: u64) -> Self {
        match (n as u64).checked_pow(arity) {
            Some(total) if total <= budget => CheckStrategy::Exhaustive,
            _ => CheckStrategy::Random { samples, seed },
        }
    }
}

/// Deterministic sampler of indices in `0..n`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn index(&mut self, n: usize) -> usize {
        ((u128::from(self.rng.next_u64()) * n as u128) >> 64) as usize
    }

    pub fn tuple<const K: usize>(&mut self, n: usize) -> [usize; K] {
        let mut out = [0; K];
        for slot in out.iter_mut() {
            *slot = self.index(n);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome<const K: usize> {
    pub checked: u64,
    pub witness: Option<[usize; K]>,
}

impl<const K: usize> SweepOutcome<K> {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

fn unrank<const K: usize>(mut i: u64, n: u64) -> [usize; K] {
    let mut out = [0; K];
    for slot in out.iter_mut().rev() {
        *slot = (i % n) as usize;
        i /= n;
    }
    out
}

/// Checks `holds` on all (or sampled) `K`-tuples over `0..n`.
///
/// Exhaustive sweeps run in parallel; the reported witness is always the
/// first failing tuple in lexicographic order, and `checked` counts the
/// tuples up to and including it.
pub fn sweep<const K: usize, F>(n: usize, strategy: CheckStrategy, holds: F) -> SweepOutcome<K>
where
    F: Fn([usize; K]) -> bool + Sync,
{
    if n == 0 {
        return SweepOutcome {
            checked: 0,
            witness: None,
        };
    }
    match strategy {
        CheckStrategy::Exhaustive => {
            let total = (n as u64)
                .checked_pow(K as u32)
                .expect("exhaustive sweep size overflows u64");
            let found = (0..total)
                .into_par_iter()
                .find_first(|&i| !holds(unrank::<K>(i, n as u64)));
            match found {
                Some(i) => SweepOutcome {
                    checked: i + 1,
                    witness: Some(unrank(i, n as u64)),
                },
                None => SweepOutcome {
                    checked: total,
                    witness: None,
                },
            }
        }
        CheckStrategy::Random { samples, seed } => {
            let mut sampler = Sampler::new(seed);
            for i in 0..samples {
                let t = sampler.tuple::<K>(n);
                if !holds(t) {
                    return SweepOutcome {
                        checked: i + 1,
                        witness: Some(t),
                    };
                }
            }
            SweepOutcome {
                checked: samples,
                witness: None,
            }
        }
    }
}
