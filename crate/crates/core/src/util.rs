//! Small exact integer helpers and seed derivation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent child seed number `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}

/// Deterministic generator for a derived seed.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `C(n, k)` for nonnegative arguments; zero when `k > n`. Panics on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.checked_mul((n - j) as u128).expect("binomial overflow") / (j as u128 + 1);
    }
    acc
}

/// `C(n, k)` with the counting convention: zero for `n < 0`, `k < 0` or `k > n`.
pub fn binomial_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}
