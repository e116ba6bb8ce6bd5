//! Numbers modulo `k^L` represented by tensor-product qudit states.
//!
//! A register of `L` components, each a `k`-level system, holds a basis
//! label `s : {1..L} -> {0..k-1}` read as `Σ s(j)·k^(j-1)`. The crate provides
//!
//! * the carry-chain successor operators `V_j` (adding `k^(j-1)`), addition
//!   on register pairs and a schoolbook multiply built from them ([`arith`]);
//! * exact and dense matrix forms of the shift, projector and successor
//!   factors, unitarity checks and Hamiltonian extraction ([`operator`]);
//! * the tensor-product-preserving remappings `W_{g,d}` onto physically
//!   labelled registers and the conjugated operators ([`phys`]);
//! * cost accounting for direct versus iterated successors ([`resources`]);
//! * a ring-axiom suite driven by the operator machinery ([`axioms`]);
//! * a plain-integer oracle for everything above ([`oracle`]).

pub mod arith;
pub mod axioms;
pub mod digits;
pub mod error;
pub mod exact;
pub mod operator;
pub mod oracle;
pub mod permutation;
pub mod phys;
pub mod resources;

pub use arith::{
    add_apply, cyclic_shift, successor_apply, successor_apply_super, times_apply, CarryChain, PairState,
    Successor, Superposition,
};
pub use digits::{decode_number, encode_number, DigitString, Radix, MAX_MODULUS};
pub use error::{Error, Result};
pub use exact::ExactMatrix;
pub use operator::{DenseOperator, HermitianGenerator};
pub use oracle::{oracle_add, oracle_mul};
pub use permutation::Permutation;
pub use phys::{LabelSets, MapPair, PhysState};
pub use resources::{CostModel, ResourceReport};
