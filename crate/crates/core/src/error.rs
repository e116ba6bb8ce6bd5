use thiserror::Error;

use crate::digits::Radix;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("digit alphabet size k must be at least 2, got {0}")]
    BaseTooSmall(u32),
    #[error("number of components L must be at least 1")]
    NoComponents,
    #[error("k^L = {k}^{len} exceeds the exhaustive cap of {cap} basis states")]
    RadixTooLarge { k: u32, len: usize, cap: u64 },
    #[error("value {value} is outside [0, {modulus})")]
    ValueOutOfRange { value: u64, modulus: u64 },
    #[error("component index j = {j} is outside 1..={len}")]
    ComponentOutOfRange { j: usize, len: usize },
    #[error("digit {digit} at component {j} is not below k = {k}")]
    DigitOutOfRange { j: usize, digit: u32, k: u32 },
    #[error("expected {expected} digits, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("malformed digit string {0:?}")]
    MalformedDigits(String),
    #[error("registers use different radices ({left} vs {right})")]
    RadixMismatch { left: Radix, right: Radix },
    #[error("operator dimension {dim} exceeds the dense cap of {cap}")]
    DimensionCap { dim: u64, cap: usize },
    #[error("operator dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operator is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("evolution time must be positive and finite, got {0}")]
    InvalidTime(f64),
    #[error("invalid label sets: {0}")]
    InvalidLabels(String),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("map enumeration limited to L <= {max} and k <= {max} (got L = {len}, k = {k})")]
    EnumerationCap { len: usize, k: u32, max: usize },
    #[error("axiom suite limited to k^L <= {cap}, got {modulus}")]
    AxiomCap { modulus: u64, cap: u64 },
    #[error("cost k^(j-1) * L overflows 64 bits")]
    CostOverflow,
}
