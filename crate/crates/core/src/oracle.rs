// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! The two-oracle access model for a set system `(V, C)`, volume functions
//! and the call counters used to observe delay.

use crate::error::{Error, Result};
use crate::idset::ElementSet;

/// Oracle access to a set system whose components are never listed.
///
/// Implementations must be deterministic: identical queries return
/// identical answers.
pub trait SetSystemOracle {
    /// `n`, the size of the ground set `[1, n]`.
    fn universe(&self) -> usize;

    /// Returns a `Y`-maximal component `C` with `X ⊆ C ⊆ Y`, or `None` when
    /// no component of `Y` contains `X`. Requires `∅ ≠ X ⊆ Y`.
    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>>;

    /// All `Y`-maximal components, duplicate-free and sorted by `≺`.
    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>>;

    /// Upper bound on the number of `Y`-maximal components, for reporting only.
    fn max_components_hint(&self, _y: &ElementSet) -> Option<usize> {
        None
    }
}

impl<O: SetSystemOracle + ?Sized> SetSystemOracle for &O {
    fn universe(&self) -> usize {
        (**self).universe()
    }

    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        (**self).l1(x, y)
    }

    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        (**self).l2(y)
    }

    fn max_components_hint(&self, y: &ElementSet) -> Option<usize> {
        (**self).max_components_hint(y)
    }
}

impl<O: SetSystemOracle + ?Sized> SetSystemOracle for Box<O> {
    fn universe(&self) -> usize {
        (**self).universe()
    }

    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        (**self).l1(x, y)
    }

    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        (**self).l2(y)
    }

    fn max_components_hint(&self, y: &ElementSet) -> Option<usize> {
        (**self).max_components_hint(y)
    }
}

/// Shared precondition check for `l1` implementations.
pub fn check_l1_args(universe: usize, x: &ElementSet, y: &ElementSet) -> Result<()> {
    if x.universe() != universe || y.universe() != universe {
        return Err(Error::contract(format!(
            "l1 arguments must live in [1, {universe}]"
        )));
    }
    if x.is_empty() {
        return Err(Error::contract("l1 requires a non-empty X"));
    }
    if !x.is_subset(y) {
        return Err(Error::contract(format!("l1 requires X ⊆ Y, got X = {x}, Y = {y}")));
    }
    Ok(())
}

/// Monotone pruning predicate: `positive(X)` means `ρ(X) > 0`, and
/// `X ⊆ Y` with `positive(X)` implies `positive(Y)`.
pub trait VolumeFunction {
    fn positive(&self, x: &ElementSet) -> bool;
}

impl<F: Fn(&ElementSet) -> bool> VolumeFunction for F {
    fn positive(&self, x: &ElementSet) -> bool {
        self(x)
    }
}

/// `ρ(X) = 1`; nothing is pruned.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysPositive;

impl VolumeFunction for AlwaysPositive {
    fn positive(&self, _x: &ElementSet) -> bool {
        true
    }
}

/// `ρ(X) = |X| − p`, i.e. keeps sets with more than `p` elements.
#[derive(Debug, Clone, Copy)]
pub struct MinSize(pub usize);

impl VolumeFunction for MinSize {
    fn positive(&self, x: &ElementSet) -> bool {
        x.len() > self.0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CallCounts {
    pub l1_calls: u64,
    pub l2_calls: u64,
    pub rho_calls: u64,
    /// One per entry into the descendant traversal.
    pub traversal_calls: u64,
}

impl CallCounts {
    /// Component-wise `self − earlier`.
    pub fn since(&self, earlier: &CallCounts) -> CallCounts {
        CallCounts {
            l1_calls: self.l1_calls - earlier.l1_calls,
            l2_calls: self.l2_calls - earlier.l2_calls,
            rho_calls: self.rho_calls - earlier.rho_calls,
            traversal_calls: self.traversal_calls - earlier.traversal_calls,
        }
    }

    pub fn oracle_calls(&self) -> u64 {
        self.l1_calls + self.l2_calls + self.rho_calls
    }
}

/// Counter values at the moment a solution was emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmissionSnapshot {
    /// `min I_σ` of the emitted solution.
    pub k: usize,
    pub counts: CallCounts,
}

/// Counters for one enumeration run. Never decreasing.
#[derive(Debug, Clone, Default)]
pub struct OracleStats {
    counts: CallCounts,
    snapshots: Vec<EmissionSnapshot>,
}

impl OracleStats {
    pub fn counts(&self) -> CallCounts {
        self.counts
    }

    pub fn snapshots(&self) -> &[EmissionSnapshot] {
        &self.snapshots
    }

    pub fn outputs(&self) -> usize {
        self.snapshots.len()
    }

    pub(crate) fn record_l1(&mut self) {
        self.counts.l1_calls += 1;
    }

    pub(crate) fn record_l2(&mut self) {
        self.counts.l2_calls += 1;
    }

    pub(crate) fn record_rho(&mut self) {
        self.counts.rho_calls += 1;
    }

    pub(crate) fn record_traversal(&mut self) {
        self.counts.traversal_calls += 1;
    }

    pub(crate) fn record_emission(&mut self, k: usize) {
        self.snapshots.push(EmissionSnapshot {
            k,
            counts: self.counts,
        });
    }

    /// Counter deltas between each pair of consecutive emissions.
    pub fn interoutput_deltas(&self) -> impl Iterator<Item = CallCounts> + '_ {
        self.snapshots
            .windows(2)
            .map(|w| w[1].counts.since(&w[0].counts))
    }
}
