//! Commutative-ring-with-identity axioms checked through the operator
//! machinery, with the integer oracle as a cross-check.
//!
//! The nine axioms: additive associativity, commutativity, identity and
//! inverses; multiplicative associativity, commutativity and identity; left
//! and right distributivity. Two further checks ride along: successor
//! coherence (`V_1` agrees with adding the encoding of 1) and agreement of
//! every computed sum and product with the oracle.

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{add_apply_with, multiply_with, CarryChain, PairState, Successor};
use crate::digits::{encode_number, DigitString, Radix};
use crate::error::{Error, Result};
use crate::oracle::{oracle_add, oracle_mul, oracle_neg};

/// Registers up to this size are checked on every tuple.
pub const EXHAUSTIVE_LIMIT: u64 = 64;
/// Largest register the suite accepts.
pub const SUITE_CAP: u64 = 1024;
/// Triples drawn above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLE_TRIPLES: usize = 10_000;

pub const AXIOM_NAMES: [&str; 9] = [
    "additive_associativity",
    "additive_commutativity",
    "additive_identity",
    "additive_inverse",
    "multiplicative_associativity",
    "multiplicative_commutativity",
    "multiplicative_identity",
    "left_distributivity",
    "right_distributivity",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, triples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub status: Status,
    pub cases: u64,
    /// Offending elements (digit strings), on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<DigitString>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub radix: Radix,
    pub elements: u64,
    pub mode: Mode,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Memoized sums and products computed through a successor rule.
struct Ops<'a, S: ?Sized> {
    rule: &'a S,
    radix: Radix,
    sums: RefCell<HashMap<(u64, u64), u64>>,
    products: RefCell<HashMap<(u64, u64), u64>>,
}

impl<'a, S: Successor + ?Sized> Ops<'a, S> {
    fn new(rule: &'a S, radix: Radix) -> Self {
        Self { rule, radix, sums: RefCell::default(), products: RefCell::default() }
    }

    fn label(&self, n: u64) -> DigitString {
        encode_number(n, self.radix).expect("elements are below the modulus")
    }

    fn add(&self, a: u64, b: u64) -> Result<u64> {
        if let Some(&v) = self.sums.borrow().get(&(a, b)) {
            return Ok(v);
        }
        let pair = PairState::new(self.label(a), self.label(b))?;
        let v = add_apply_with(self.rule, &pair)?.right.value();
        self.sums.borrow_mut().insert((a, b), v);
        Ok(v)
    }

    fn mul(&self, a: u64, b: u64) -> Result<u64> {
        if let Some(&v) = self.products.borrow().get(&(a, b)) {
            return Ok(v);
        }
        let v = multiply_with(self.rule, &self.label(a), &self.label(b))?.value();
        self.products.borrow_mut().insert((a, b), v);
        Ok(v)
    }
}

/// Accumulates one check: counts cases and keeps the first failure.
struct Tally {
    name: &'static str,
    cases: u64,
    failure: Option<(Vec<u64>, String)>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> (Vec<u64>, String)) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn finish(self, radix: Radix) -> AxiomCheck {
        match self.failure {
            None => AxiomCheck {
                name: self.name,
                status: Status::Pass,
                cases: self.cases,
                counterexample: None,
                detail: format!("{} cases", self.cases),
            },
            Some((elements, detail)) => AxiomCheck {
                name: self.name,
                status: Status::Fail,
                cases: self.cases,
                counterexample: Some(
                    elements.iter().map(|&n| encode_number(n, radix).expect("element in range")).collect(),
                ),
                detail,
            },
        }
    }
}

pub fn axiom_suite(radix: Radix, seed: u64) -> Result<AxiomReport> {
    axiom_suite_with(&CarryChain, radix, seed)
}

/// Runs the suite with an arbitrary successor rule. Registers with
/// `k^L <= 64` are checked exhaustively; larger ones (up to 1024) on
/// [`SAMPLE_TRIPLES`] uniformly drawn triples from a ChaCha8 stream seeded
/// with `seed`.
pub fn axiom_suite_with<S: Successor + ?Sized>(rule: &S, radix: Radix, seed: u64) -> Result<AxiomReport> {
    let n = radix.modulus();
    if n > SUITE_CAP {
        return Err(Error::AxiomCap { modulus: n, cap: SUITE_CAP });
    }
    let (mode, triples, pairs, singles): (Mode, Vec<[u64; 3]>, Vec<[u64; 2]>, Vec<u64>) = if n <= EXHAUSTIVE_LIMIT {
        let triples = (0..n).flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c]))).collect();
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| [a, b])).collect();
        (Mode::Exhaustive, triples, pairs, (0..n).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let triples: Vec<[u64; 3]> =
            (0..SAMPLE_TRIPLES).map(|_| [rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)]).collect();
        let pairs = triples.iter().map(|t| [t[0], t[1]]).collect();
        let singles = triples.iter().map(|t| t[0]).collect();
        (Mode::Sampled { seed, triples: SAMPLE_TRIPLES }, triples, pairs, singles)
    };

    let ops = Ops::new(rule, radix);
    let one = if n > 1 { 1 } else { 0 };
    let [mut add_assoc, mut add_comm, mut add_id, mut add_inv, mut mul_assoc, mut mul_comm, mut mul_id, mut left_dist, mut right_dist] =
        AXIOM_NAMES.map(Tally::new);
    let mut coherence = Tally::new("successor_coherence");
    let mut oracle = Tally::new("oracle_agreement");

    for &[a, b, c] in &triples {
        let lhs = ops.add(ops.add(a, b)?, c)?;
        let rhs = ops.add(a, ops.add(b, c)?)?;
        add_assoc.record(lhs == rhs, || (vec![a, b, c], format!("(a+b)+c = {lhs} but a+(b+c) = {rhs}")));

        let lhs = ops.mul(ops.mul(a, b)?, c)?;
        let rhs = ops.mul(a, ops.mul(b, c)?)?;
        mul_assoc.record(lhs == rhs, || (vec![a, b, c], format!("(a*b)*c = {lhs} but a*(b*c) = {rhs}")));

        let lhs = ops.mul(a, ops.add(b, c)?)?;
        let rhs = ops.add(ops.mul(a, b)?, ops.mul(a, c)?)?;
        left_dist.record(lhs == rhs, || (vec![a, b, c], format!("a*(b+c) = {lhs} but a*b+a*c = {rhs}")));

        let lhs = ops.mul(ops.add(a, b)?, c)?;
        let rhs = ops.add(ops.mul(a, c)?, ops.mul(b, c)?)?;
        right_dist.record(lhs == rhs, || (vec![a, b, c], format!("(a+b)*c = {lhs} but a*c+b*c = {rhs}")));
    }

    for &[a, b] in &pairs {
        let (ab, ba) = (ops.add(a, b)?, ops.add(b, a)?);
        add_comm.record(ab == ba, || (vec![a, b], format!("a+b = {ab} but b+a = {ba}")));
        let (ab, ba) = (ops.mul(a, b)?, ops.mul(b, a)?);
        mul_comm.record(ab == ba, || (vec![a, b], format!("a*b = {ab} but b*a = {ba}")));

        let sum = ops.add(a, b)?;
        let expected = oracle_add(a, b, radix)?;
        oracle.record(sum == expected, || (vec![a, b], format!("a+b = {sum}, oracle says {expected}")));
        let product = ops.mul(a, b)?;
        let expected = oracle_mul(a, b, radix)?;
        oracle.record(product == expected, || (vec![a, b], format!("a*b = {product}, oracle says {expected}")));
    }

    for &a in &singles {
        let (left, right) = (ops.add(0, a)?, ops.add(a, 0)?);
        add_id.record(left == a && right == a, || (vec![a], format!("0+a = {left}, a+0 = {right}")));
        let (left, right) = (ops.mul(one, a)?, ops.mul(a, one)?);
        mul_id.record(left == a && right == a, || (vec![a], format!("1*a = {left}, a*1 = {right}")));

        // the oracle proposes the witness; the operators must confirm it
        let guess = oracle_neg(a, radix)?;
        let found = if ops.add(a, guess)? == 0 {
            true
        } else {
            let mut hit = false;
            for b in 0..n {
                if ops.add(a, b)? == 0 {
                    hit = true;
                    break;
                }
            }
            hit
        };
        add_inv.record(found, || (vec![a], "no b with a+b = 0".to_string()));

        let s = ops.label(a);
        let stepped = rule.successor(1, &s)?.value();
        let plus_one = ops.add(one, a)?;
        coherence.record(stepped == plus_one, || {
            (vec![a], format!("V_1(a) = {stepped} but 1+a = {plus_one}"))
        });
    }

    let checks = [add_assoc, add_comm, add_id, add_inv, mul_assoc, mul_comm, mul_id, left_dist, right_dist, coherence, oracle]
        .into_iter()
        .map(|t| t.finish(radix))
        .collect();
    Ok(AxiomReport { radix, elements: n, mode, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(k: u32, len: usize) -> Radix {
        Radix::new(k, len).unwrap()
    }

    #[test]
    fn small_registers_pass() {
        for radix in [r(2, 2), r(3, 1), r(2, 3)] {
            let report = axiom_suite(radix, 0).unwrap();
            assert!(report.all_pass(), "{report:?}");
            assert_eq!(report.mode, Mode::Exhaustive);
        }
    }

    #[test]
    fn case_counts_for_k2_l3() {
        let report = axiom_suite(r(2, 3), 0).unwrap();
        assert_eq!(report.elements, 8);
        assert_eq!(report.check("additive_associativity").unwrap().cases, 512);
        assert_eq!(report.check("additive_commutativity").unwrap().cases, 64);
        assert_eq!(report.check("additive_inverse").unwrap().cases, 8);
        assert_eq!(report.checks.len(), 11);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(axiom_suite(r(2, 11), 0), Err(Error::AxiomCap { modulus: 2048, cap: SUITE_CAP }));
    }
}
