//! Plain-integer reference arithmetic modulo `k^L`.
//!
//! Nothing here touches digit strings or operators; it is the ground truth
//! every operator-level check is compared against.

use crate::digits::Radix;
use crate::error::Result;

pub fn oracle_add(n: u64, m: u64, radix: Radix) -> Result<u64> {
    radix.check_value(n)?;
    radix.check_value(m)?;
    Ok((n + m) % radix.modulus())
}

pub fn oracle_mul(n: u64, m: u64, radix: Radix) -> Result<u64> {
    radix.check_value(n)?;
    radix.check_value(m)?;
    // both operands are below 2^20, so the product fits
    Ok((n * m) % radix.modulus())
}

/// Additive inverse `(k^L - n) mod k^L`.
pub fn oracle_neg(n: u64, radix: Radix) -> Result<u64> {
    radix.check_value(n)?;
    let modulus = radix.modulus();
    Ok((modulus - n) % modulus)
}
