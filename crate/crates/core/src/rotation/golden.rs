use num_bigint::BigUint;

/// Guard bits carried below the requested precision.
const GUARD_BITS: usize = 64;

/// First `n` binary digits of `(√5 − 1)/2`, from an exact integer square root.
pub fn golden_beta(n: usize) -> Vec<u8> {
    let p = n + GUARD_BITS;
    let root = (BigUint::from(5u32) << (2 * p)).sqrt();
    let beta: BigUint = (root - (BigUint::from(1u32) << p)) >> 1u32;
    (0..n)
        .map(|i| u8::from(beta.bit((p - 1 - i) as u64)))
        .collect()
}
