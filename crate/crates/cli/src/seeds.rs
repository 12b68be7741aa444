//! Splittable child seeds.
//!
//! Every trial owns the seed `child_seed(root, suite_index, trial_index)`,
//! a pure function of its coordinates. Trials therefore commute: running a
//! suite subset, reordering trials, or executing them in parallel cannot
//! change any draw. Objects inside one trial split further with
//! [`derive`], keyed by a small label.

/// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The seed owned by trial (suite_index, trial_index) under `root`.
pub fn child_seed(root: u64, suite_index: u64, trial_index: u64) -> u64 {
    splitmix64(splitmix64(root ^ splitmix64(suite_index)) ^ trial_index)
}

/// Splits one trial seed into per-object streams (operator A vs operator B
/// vs the group element, and so on), keyed by `label`.
pub fn derive(seed: u64, label: u64) -> u64 {
    splitmix64(seed ^ splitmix64(label.wrapping_add(0xA076_1D64_78BD_642F)))
}
