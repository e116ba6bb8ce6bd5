//! Number states on the abstract register space and the arithmetic
//! operators acting on them as permutations of basis labels.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::digits::{DigitString, Radix};
use crate::error::{Error, Result};

/// Terms with modulus below this are dropped from a [`Superposition`].
pub const PRUNE_THRESHOLD: f64 = 1e-15;
/// Allowed deviation of a superposition's squared norm from 1.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// A rule for the successor family `V_j`, `j = 1..L`.
///
/// [`CarryChain`] is the real operator. The trait exists so that checkers
/// such as the axiom suite can be run against deliberately broken rules.
pub trait Successor {
    /// Adds `k^(j-1)` to `state`, or whatever the rule does instead.
    fn successor(&self, j: usize, state: &DigitString) -> Result<DigitString>;
}

impl<S: Successor + ?Sized> Successor for &S {
    fn successor(&self, j: usize, state: &DigitString) -> Result<DigitString> {
        (**self).successor(j, state)
    }
}

/// Carry-chain successor: increment component `j`, and keep carrying into
/// the next component while the incremented digit wrapped to zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct CarryChain;

impl Successor for CarryChain {
    fn successor(&self, j: usize, state: &DigitString) -> Result<DigitString> {
        successor_apply(j, state)
    }
}

/// Adds `steps` (mod k) to digit `j` only; every other digit is untouched.
pub fn cyclic_shift(state: &DigitString, j: usize, steps: i64) -> Result<DigitString> {
    let radix = state.radix();
    radix.check_component(j)?;
    let k = i64::from(radix.k());
    let mut out = state.clone();
    let digit = &mut out.digits_mut()[j - 1];
    *digit = (i64::from(*digit) + steps).rem_euclid(k) as u32;
    Ok(out)
}

/// The projector onto digit `m` at component `j`, read as a partial map:
/// `Some(state)` when the digit matches, `None` when the projector kills it.
pub fn project(state: &DigitString, m: u32, j: usize) -> Result<Option<DigitString>> {
    let radix = state.radix();
    if m >= radix.k() {
        return Err(Error::DigitOutOfRange { j, digit: m, k: radix.k() });
    }
    Ok((state.digit(j)? == m).then(|| state.clone()))
}

/// `V_j`: adds `k^(j-1)` modulo `k^L`.
pub fn successor_apply(j: usize, state: &DigitString) -> Result<DigitString> {
    let radix = state.radix();
    radix.check_component(j)?;
    let top = radix.k() - 1;
    let mut out = state.clone();
    for digit in &mut out.digits_mut()[j - 1..] {
        if *digit == top {
            *digit = 0;
        } else {
            *digit += 1;
            break;
        }
    }
    Ok(out)
}

/// `(V_j)^times` under `rule`.
pub fn successor_power<S: Successor + ?Sized>(
    rule: &S,
    j: usize,
    state: &DigitString,
    times: u64,
) -> Result<DigitString> {
    state.radix().check_component(j)?;
    let mut out = state.clone();
    for _ in 0..times {
        out = rule.successor(j, &out)?;
    }
    Ok(out)
}

/// A normalized superposition of basis labels of one register.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    radix: Radix,
    terms: BTreeMap<DigitString, Complex64>,
}

impl Superposition {
    pub fn new(radix: Radix, terms: impl IntoIterator<Item = (DigitString, Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, amp) in terms {
            radix.ensure_same(&label.radix())?;
            *map.entry(label).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        map.retain(|_, amp| amp.norm() >= PRUNE_THRESHOLD);
        let out = Self { radix, terms: map };
        let norm = out.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidLabels(format!("superposition has squared norm {norm}, expected 1")));
        }
        Ok(out)
    }

    pub fn basis(label: DigitString) -> Self {
        let radix = label.radix();
        Self { radix, terms: BTreeMap::from([(label, Complex64::new(1.0, 0.0))]) }
    }

    pub fn radix(&self) -> Radix {
        self.radix
    }

    pub fn terms(&self) -> &BTreeMap<DigitString, Complex64> {
        &self.terms
    }

    pub fn amplitude(&self, label: &DigitString) -> Complex64 {
        self.terms.get(label).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(Complex64::norm_sqr).sum()
    }

    /// Relabels every term through `f`. `f` must be injective on the stored
    /// labels, which holds for every operator in this module.
    fn permute_labels(&self, mut f: impl FnMut(&DigitString) -> Result<DigitString>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (label, amp) in &self.terms {
            terms.insert(f(label)?, *amp);
        }
        debug_assert_eq!(terms.len(), self.terms.len());
        Ok(Self { radix: self.radix, terms })
    }
}

/// Linear extension of [`successor_apply`]: amplitudes move with their labels.
pub fn successor_apply_super(j: usize, psi: &Superposition) -> Result<Superposition> {
    psi.radix.check_component(j)?;
    psi.permute_labels(|s| successor_apply(j, s))
}

/// A basis state `|s>|w>` of the two-register space; `left` occupies
/// components `1..L` and `right` components `L+1..2L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub left: DigitString,
    pub right: DigitString,
}

impl PairState {
    pub fn new(left: DigitString, right: DigitString) -> Result<Self> {
        left.radix().ensure_same(&right.radix())?;
        Ok(Self { left, right })
    }

    pub fn radix(&self) -> Radix {
        self.left.radix()
    }

    /// Index of the concatenated label `s * w` in the `k^(2L)` basis.
    pub fn index(&self) -> u64 {
        self.left.value() + self.radix().modulus() * self.right.value()
    }
}

/// `+|s>|w> = |s>|s+w>`, computed as `V_L^{s(L)} ... V_1^{s(1)} |w>`.
pub fn add_apply(pair: &PairState) -> Result<PairState> {
    add_apply_with(&CarryChain, pair)
}

pub fn add_apply_with<S: Successor + ?Sized>(rule: &S, pair: &PairState) -> Result<PairState> {
    pair.left.radix().ensure_same(&pair.right.radix())?;
    let right = add_into(rule, &pair.left, &pair.right)?;
    Ok(PairState { left: pair.left.clone(), right })
}

/// `V_L^{s(L)} ... V_1^{s(1)} |w>`, factors applied in ascending `j`.
fn add_into<S: Successor + ?Sized>(rule: &S, s: &DigitString, w: &DigitString) -> Result<DigitString> {
    let mut out = w.clone();
    for (i, &digit) in s.digits().iter().enumerate() {
        out = successor_power(rule, i + 1, &out, u64::from(digit))?;
    }
    Ok(out)
}

/// Schoolbook multiply-accumulate: returns `target + s * w (mod k^L)`.
///
/// For each component `j` of `s`, the shifted addend `w * k^(j-1)` is added
/// `s(j)` times, each time as successor powers `V_{i+j-1}^{w(i)}`. Digits of
/// `w` that would land above component `L` vanish modulo `k^L`.
pub fn times_apply(s: &DigitString, w: &DigitString, target: &DigitString) -> Result<DigitString> {
    times_apply_with(&CarryChain, s, w, target)
}

pub fn times_apply_with<S: Successor + ?Sized>(
    rule: &S,
    s: &DigitString,
    w: &DigitString,
    target: &DigitString,
) -> Result<DigitString> {
    let radix = s.radix();
    radix.ensure_same(&w.radix())?;
    radix.ensure_same(&target.radix())?;
    let len = radix.len();
    let mut acc = target.clone();
    for (jm1, &sj) in s.digits().iter().enumerate() {
        for _ in 0..sj {
            for (im1, &wi) in w.digits()[..len - jm1].iter().enumerate() {
                acc = successor_power(rule, im1 + jm1 + 1, &acc, u64::from(wi))?;
            }
        }
    }
    Ok(acc)
}

/// `s * w` with a zero accumulator.
pub fn multiply_with<S: Successor + ?Sized>(rule: &S, s: &DigitString, w: &DigitString) -> Result<DigitString> {
    times_apply_with(rule, s, w, &DigitString::zero(s.radix()))
}
