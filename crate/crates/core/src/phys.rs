//! Physically labelled registers and the tensor-product-preserving maps
//! `W_{g,d}` from abstract number states onto them.
//!
//! `A` is an ordered list of `L` site labels and `B` an ordered list of `k`
//! internal-state labels. A [`MapPair`] fixes bijections `g: {1..L} -> A` and
//! `d: {0..k-1} -> B`, stored as index permutations of the declared orders.

use std::collections::HashSet;
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::{add_apply, successor_apply, PairState};
use crate::digits::{DigitString, Radix};
use crate::error::{Error, Result};

/// Largest `L` and `k` accepted by [`enumerate_maps`].
pub const ENUMERATION_CAP: usize = 6;

/// Site labels `A` and internal-state labels `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelSets {
    sites: Vec<String>,
    states: Vec<String>,
}

impl LabelSets {
    pub fn new(sites: Vec<String>, states: Vec<String>) -> Result<Self> {
        for (name, labels) in [("A", &sites), ("B", &states)] {
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(Error::InvalidLabels(format!("duplicate label {dup:?} in {name}")));
            }
        }
        if sites.is_empty() {
            return Err(Error::NoComponents);
        }
        let k = u32::try_from(states.len()).map_err(|_| Error::InvalidLabels("B is too large".into()))?;
        Radix::new(k, sites.len())?;
        Ok(Self { sites, states })
    }

    /// `A = a1..aL`, `B = b0..b(k-1)`.
    pub fn default_for(radix: Radix) -> Self {
        Self {
            sites: (1..=radix.len()).map(|j| format!("a{j}")).collect(),
            states: (0..radix.k()).map(|h| format!("b{h}")).collect(),
        }
    }

    pub fn sites(&self) -> &[String] {
        &self.sites
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn radix(&self) -> Radix {
        Radix::new(self.states.len() as u32, self.sites.len()).expect("validated on construction")
    }

    fn site_index(&self, label: &str) -> Result<usize> {
        self.sites
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::InvalidLabels(format!("unknown site {label:?}")))
    }

    fn state_index(&self, label: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::InvalidLabels(format!("unknown internal state {label:?}")))
    }
}

fn check_bijection(what: &str, perm: &[usize], size: usize) -> Result<()> {
    if perm.len() != size {
        return Err(Error::NotABijection(format!("{what} has {} entries, expected {size}", perm.len())));
    }
    let mut hit = vec![false; size];
    for &i in perm {
        if i >= size || std::mem::replace(&mut hit[i], true) {
            return Err(Error::NotABijection(format!("{what} = {perm:?}")));
        }
    }
    Ok(())
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Bijections `g` (component -> site) and `d` (digit -> internal state).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapPair {
    labels: Arc<LabelSets>,
    /// `g[j-1]` is the index into `A` of site `g(j)`.
    g: Vec<usize>,
    /// `d[h]` is the index into `B` of state `d(h)`.
    d: Vec<usize>,
}

impl MapPair {
    pub fn new(labels: Arc<LabelSets>, g: Vec<usize>, d: Vec<usize>) -> Result<Self> {
        check_bijection("g", &g, labels.sites.len())?;
        check_bijection("d", &d, labels.states.len())?;
        Ok(Self { labels, g, d })
    }

    pub fn identity(labels: Arc<LabelSets>) -> Self {
        let g = (0..labels.sites.len()).collect();
        let d = (0..labels.states.len()).collect();
        Self { labels, g, d }
    }

    pub fn labels(&self) -> &Arc<LabelSets> {
        &self.labels
    }

    pub fn radix(&self) -> Radix {
        self.labels.radix()
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    /// The pair `(g⁻¹, d⁻¹)` as index tables: site index -> component - 1,
    /// and state index -> digit.
    pub fn inverse(&self) -> InverseMaps {
        InverseMaps { g_inv: invert(&self.g), d_inv: invert(&self.d) }
    }

    fn check_state(&self, t: &PhysState) -> Result<()> {
        if *t.labels == *self.labels {
            Ok(())
        } else {
            Err(Error::InvalidLabels("physical state and map pair use different label sets".into()))
        }
    }

    fn check_radix(&self, s: &DigitString) -> Result<()> {
        self.radix().ensure_same(&s.radix())
    }
}

impl Serialize for MapPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MapPair", 4)?;
        st.serialize_field("g", &self.g)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("A", &self.labels.sites)?;
        st.serialize_field("B", &self.labels.states)?;
        st.end()
    }
}

/// Index tables of `g⁻¹` and `d⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseMaps {
    pub g_inv: Vec<usize>,
    pub d_inv: Vec<usize>,
}

/// A basis state `|t>` of the physical register: `t : A -> B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhysState {
    labels: Arc<LabelSets>,
    /// Indexed by site, holding a state index.
    assignment: Vec<usize>,
}

impl PhysState {
    pub fn new(labels: Arc<LabelSets>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != labels.sites.len() {
            return Err(Error::LengthMismatch { expected: labels.sites.len(), got: assignment.len() });
        }
        if let Some(&bad) = assignment.iter().find(|&&b| b >= labels.states.len()) {
            return Err(Error::InvalidLabels(format!("state index {bad} outside B")));
        }
        Ok(Self { labels, assignment })
    }

    /// From `(site, state)` label pairs; every site must appear exactly once.
    pub fn from_labels<'a>(labels: Arc<LabelSets>, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut assignment = vec![None; labels.sites.len()];
        for (site, state) in pairs {
            let a = labels.site_index(site)?;
            let b = labels.state_index(state)?;
            if assignment[a].replace(b).is_some() {
                return Err(Error::InvalidLabels(format!("site {site:?} assigned twice")));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(a, b)| b.ok_or_else(|| Error::InvalidLabels(format!("site {:?} unassigned", labels.sites[a]))))
            .collect::<Result<_>>()?;
        Ok(Self { labels, assignment })
    }

    pub fn labels(&self) -> &Arc<LabelSets> {
        &self.labels
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Label of the state held at site index `a`.
    pub fn state_at(&self, a: usize) -> &str {
        &self.labels.states[self.assignment[a]]
    }
}

impl Serialize for PhysState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Assignment<'a>(&'a PhysState);
        impl Serialize for Assignment<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let t = self.0;
                let mut map = serializer.serialize_map(Some(t.assignment.len()))?;
                for (a, site) in t.labels.sites.iter().enumerate() {
                    map.serialize_entry(site, t.state_at(a))?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("PhysState", 1)?;
        st.serialize_field("assignment", &Assignment(self))?;
        st.end()
    }
}

/// `W_{g,d}|s> = ⊗_j |d(s(j)), g(j)>`.
pub fn wgd_apply(maps: &MapPair, s: &DigitString) -> Result<PhysState> {
    maps.check_radix(s)?;
    let mut assignment = vec![0; maps.g.len()];
    for (jm1, &digit) in s.digits().iter().enumerate() {
        assignment[maps.g[jm1]] = maps.d[digit as usize];
    }
    Ok(PhysState { labels: maps.labels.clone(), assignment })
}

/// `W†_{g,d}`, read per component: `s(j) = d⁻¹(t(g(j)))`.
pub fn wgd_inverse_apply(maps: &MapPair, t: &PhysState) -> Result<DigitString> {
    maps.check_state(t)?;
    let d_inv = invert(&maps.d);
    let digits = maps.g.iter().map(|&a| d_inv[t.assignment[a]] as u32).collect();
    DigitString::new(maps.radix(), digits)
}

/// `W_{g⁻¹,d⁻¹}|t>`, read per site: component `g⁻¹(a)` receives `d⁻¹(t(a))`.
/// Equal to [`wgd_inverse_apply`] on every state.
pub fn wgd_apply_inverse_maps(maps: &MapPair, inverse: &InverseMaps, t: &PhysState) -> Result<DigitString> {
    maps.check_state(t)?;
    let mut digits = vec![0; inverse.g_inv.len()];
    for (a, &b) in t.assignment.iter().enumerate() {
        digits[inverse.g_inv[a]] = inverse.d_inv[b] as u32;
    }
    DigitString::new(maps.radix(), digits)
}

/// `V^{d}_{g,j} = W V_j W†`.
pub fn conjugated_successor_apply(maps: &MapPair, j: usize, t: &PhysState) -> Result<PhysState> {
    let s = wgd_inverse_apply(maps, t)?;
    wgd_apply(maps, &successor_apply(j, &s)?)
}

/// The same operator from its local factors: the carry chain walks sites
/// `g(j), g(j+1), ...`, with `d(k-1)` playing the role of the wrapping
/// digit. Never leaves the physical register.
pub fn local_successor_apply(maps: &MapPair, j: usize, t: &PhysState) -> Result<PhysState> {
    maps.check_state(t)?;
    maps.radix().check_component(j)?;
    let k = maps.d.len();
    let d_inv = invert(&maps.d);
    let mut out = t.clone();
    for &site in &maps.g[j - 1..] {
        let digit = d_inv[out.assignment[site]];
        out.assignment[site] = maps.d[(digit + 1) % k];
        if digit != k - 1 {
            break;
        }
    }
    Ok(out)
}

/// `+_{g,d} = (W ⊗ W) + (W† ⊗ W†)`.
pub fn conjugated_add_apply(maps: &MapPair, pair: &(PhysState, PhysState)) -> Result<(PhysState, PhysState)> {
    let abstract_pair = PairState::new(wgd_inverse_apply(maps, &pair.0)?, wgd_inverse_apply(maps, &pair.1)?)?;
    let out = add_apply(&abstract_pair)?;
    Ok((wgd_apply(maps, &out.left)?, wgd_apply(maps, &out.right)?))
}

/// The number represented by `t` under this choice of `(g, d)`.
pub fn number_of_state(maps: &MapPair, t: &PhysState) -> Result<u64> {
    Ok(wgd_inverse_apply(maps, t)?.value())
}

/// Rearranges `perm` into the next lexicographic permutation; `false` once
/// the last one has been reached.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("a larger element exists to the right of i");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    while next_permutation(&mut perm) {
        out.push(perm.clone());
    }
    out
}

/// Every `(g, d)` pair, `L!·k!` in total, lexicographic in `g` then `d`.
pub fn enumerate_maps(labels: Arc<LabelSets>) -> Result<impl Iterator<Item = MapPair>> {
    let (len, k) = (labels.sites.len(), labels.states.len());
    if len > ENUMERATION_CAP || k > ENUMERATION_CAP {
        return Err(Error::EnumerationCap { len, k: k as u32, max: ENUMERATION_CAP });
    }
    let gs = all_permutations(len);
    let ds = all_permutations(k);
    Ok(gs.into_iter().flat_map(move |g| {
        let labels = labels.clone();
        ds.clone().into_iter().map(move |d| MapPair { labels: labels.clone(), g: g.clone(), d })
    }))
}

/// `L!·k!` without enumerating.
pub fn map_count(labels: &LabelSets) -> u64 {
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    fact(labels.sites.len()) * fact(labels.states.len())
}
