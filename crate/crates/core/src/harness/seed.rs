//! Replicate seed derivation.
//!
//! `derive_seed` chains the SplitMix64 finalizer over
//! `(master, method code, size, replicate)`, adding the golden-ratio increment
//! before each absorption. The method code is the method's position in
//! [`Method::ALL`] plus one. Everything is fixed-width integer arithmetic, so
//! seeds are identical on every platform.

use crate::sampling::Method;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn absorb(state: u64, word: u64) -> u64 {
    splitmix64(state.wrapping_add(GOLDEN) ^ word)
}

pub fn method_code(method: Method) -> u64 {
    Method::ALL.iter().position(|&m| m == method).unwrap() as u64 + 1
}

pub fn derive_seed(master_seed: u64, method: Method, size: usize, replicate: usize) -> u64 {
    [method_code(method), size as u64, replicate as u64]
        .into_iter()
        .fold(splitmix64(master_seed), absorb)
}
