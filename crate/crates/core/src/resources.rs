//! Cost of realizing `V_j` directly versus by iterating `V_1`.
//!
//! The counted unit is one component-local factor `u_l·P` application. The
//! direct carry-chain evaluation of `V_j` scans components `j..L`, costing
//! `L - j + 1` units. Building `V_j` out of `V_1` needs `k^(j-1)` calls at
//! `L` units each.

use std::cell::Cell;
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::arith::{successor_apply, successor_power, Successor};
use crate::digits::{encode_number, DigitString, Radix};
use crate::error::{Error, Result};
use crate::phys::MapPair;

pub const UNIT_NAME: &str = "component-local shift-with-projection factor";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    pub unit: &'static str,
    pub radix: Radix,
}

impl CostModel {
    pub fn new(radix: Radix) -> Self {
        Self { unit: UNIT_NAME, radix }
    }

    pub fn direct_cost(&self, j: usize) -> Result<u64> {
        direct_cost(j, self.radix)
    }

    pub fn iterated_cost(&self, j: usize) -> Result<u64> {
        iterated_cost(j, self.radix)
    }

    /// `(kL)²`; a reporting convention for "polynomial in k and L".
    pub fn polynomial_bound(&self) -> u64 {
        let kl = u64::from(self.radix.k()) * self.radix.len() as u64;
        kl * kl
    }

    pub fn report(&self, j: usize) -> Result<ResourceReport> {
        let direct = self.direct_cost(j)?;
        let iterated = self.iterated_cost(j)?;
        let verdict = if iterated > self.polynomial_bound() { Verdict::Inefficient } else { Verdict::Efficient };
        Ok(ResourceReport { j, direct, iterated, ratio: Ratio::new(iterated, direct), verdict })
    }
}

pub fn direct_cost(j: usize, radix: Radix) -> Result<u64> {
    radix.check_component(j)?;
    Ok((radix.len() - j + 1) as u64)
}

pub fn iterated_cost(j: usize, radix: Radix) -> Result<u64> {
    radix.weight(j)?.checked_mul(direct_cost(1, radix)?).ok_or(Error::CostOverflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Efficient,
    Inefficient,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Efficient => "efficient",
            Verdict::Inefficient => "inefficient",
        })
    }
}

/// One row of the cost comparison. The verdict refers to the iterated
/// strategy against [`CostModel::polynomial_bound`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub j: usize,
    pub direct: u64,
    pub iterated: u64,
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Ratio<u64>,
    pub verdict: Verdict,
}

fn ratio_string<S: Serializer>(ratio: &Ratio<u64>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(&format_args!("{}/{}", ratio.numer(), ratio.denom()))
}

pub fn efficiency_report(radix: Radix) -> Result<Vec<ResourceReport>> {
    let model = CostModel::new(radix);
    (1..=radix.len()).map(|j| model.report(j)).collect()
}

/// Successor wrapper that counts calls and cost units.
#[derive(Debug, Default)]
pub struct CountingSuccessor {
    applications: Cell<u64>,
    units: Cell<u64>,
}

impl CountingSuccessor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn applications(&self) -> u64 {
        self.applications.get()
    }

    pub fn units(&self) -> u64 {
        self.units.get()
    }
}

impl Successor for CountingSuccessor {
    fn successor(&self, j: usize, state: &DigitString) -> Result<DigitString> {
        let out = successor_apply(j, state)?;
        self.applications.set(self.applications.get() + 1);
        self.units.set(self.units.get() + direct_cost(j, state.radix())?);
        Ok(out)
    }
}

/// `V_j` as `k^(j-1)` applications of `V_1`.
pub fn run_iterated(j: usize, state: &DigitString, counter: &CountingSuccessor) -> Result<DigitString> {
    successor_power(counter, 1, state, state.radix().weight(j)?)
}

/// `V_j` as one carry-chain evaluation.
pub fn run_direct(j: usize, state: &DigitString, counter: &CountingSuccessor) -> Result<DigitString> {
    counter.successor(j, state)
}

/// Result of executing both strategies on a set of basis states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyCheck {
    pub j: usize,
    pub states: usize,
    pub agreed: usize,
    /// Applications of `V_1` made by the iterated strategy, per state.
    pub iterated_applications: u64,
    /// Units counted by the iterated strategy, per state.
    pub iterated_units: u64,
    pub direct_units: u64,
}

pub fn cross_check_strategies<'a>(j: usize, states: impl IntoIterator<Item = &'a DigitString>) -> Result<StrategyCheck> {
    let mut check = StrategyCheck { j, states: 0, agreed: 0, iterated_applications: 0, iterated_units: 0, direct_units: 0 };
    for s in states {
        let iterated = CountingSuccessor::new();
        let direct = CountingSuccessor::new();
        let a = run_iterated(j, s, &iterated)?;
        let b = run_direct(j, s, &direct)?;
        check.states += 1;
        check.agreed += usize::from(a == b);
        check.iterated_applications = iterated.applications();
        check.iterated_units = iterated.units();
        check.direct_units = direct.units();
    }
    Ok(check)
}

/// `count` basis states drawn uniformly from a ChaCha8 stream seeded with `seed`.
pub fn seeded_states(radix: Radix, count: usize, seed: u64) -> Result<Vec<DigitString>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| encode_number(rng.random_range(0..radix.modulus()), radix)).collect()
}

/// Number of steps along `A`'s declared order when walking the sites
/// `g(1), g(2), ..., g(j)`.
pub fn transport_path_length(maps: &MapPair, j: usize) -> Result<u64> {
    maps.radix().check_component(j)?;
    Ok(maps.g()[..j].windows(2).map(|w| w[0].abs_diff(w[1]) as u64).sum())
}
