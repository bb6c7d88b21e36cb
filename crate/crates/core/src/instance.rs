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

//! Instances `(V, C, I, σ)`: the attribute map, item indexing `V_⟨J⟩`, common
//! item sets and the pair order on `(I_σ(X), X)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::idset::{ElementSet, ItemSet};
use crate::oracle::SetSystemOracle;

#[derive(Debug, Clone)]
enum Attributes {
    /// `σ(v)` per element, plus the item columns `V_⟨i⟩`.
    Listed {
        sigma: Vec<ItemSet>,
        columns: Vec<ElementSet>,
    },
    /// `φ(v_k) = [1, n] ∖ {k}`, never materialized.
    Complement,
}

/// An instance: `n` elements, `q` items, the attribute map and the oracle
/// standing in for the component family.
#[derive(Debug, Clone)]
pub struct Instance<O> {
    n: usize,
    q: usize,
    attributes: Attributes,
    oracle: O,
}

impl<O: SetSystemOracle> Instance<O> {
    /// `sigma[v - 1]` is `σ(v)`; every entry must be an item set over `[1, q]`.
    pub fn new(q: usize, sigma: Vec<ItemSet>, oracle: O) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::InvalidInstance("need at least one element".into()));
        }
        if q == 0 {
            return Err(Error::InvalidInstance("need at least one item".into()));
        }
        if oracle.universe() != n {
            return Err(Error::InvalidInstance(format!(
                "oracle is over {} elements but sigma has {n} entries",
                oracle.universe()
            )));
        }
        if let Some(v) = sigma.iter().position(|s| s.universe() != q) {
            return Err(Error::InvalidInstance(format!(
                "sigma({}) is not a subset of [1, {q}]",
                v + 1
            )));
        }
        let mut columns = vec![ElementSet::new(n); q];
        for (v, items) in sigma.iter().enumerate() {
            for i in items {
                columns[i - 1].insert(v + 1);
            }
        }
        Ok(Instance {
            n,
            q,
            attributes: Attributes::Listed { sigma, columns },
            oracle,
        })
    }

    /// The instance `(V, C, [1, n], φ)` with `φ(v_k) = [1, n] ∖ {k}`.
    pub(crate) fn with_complement_attributes(oracle: O) -> Result<Self> {
        let n = oracle.universe();
        if n == 0 {
            return Err(Error::InvalidInstance("need at least one element".into()));
        }
        Ok(Instance {
            n,
            q: n,
            attributes: Attributes::Complement,
            oracle,
        })
    }
}

impl<O> Instance<O> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    /// `V = [1, n]`.
    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// `σ(v)`. Panics when `v ∉ [1, n]`.
    pub fn sigma(&self, v: usize) -> ItemSet {
        assert!(v >= 1 && v <= self.n, "element {v} out of range");
        match &self.attributes {
            Attributes::Listed { sigma, .. } => sigma[v - 1].clone(),
            Attributes::Complement => {
                let mut items = ItemSet::full(self.q);
                items.remove(v);
                items
            }
        }
    }

    fn check_elements(&self, x: &ElementSet) -> Result<()> {
        if x.universe() != self.n {
            return Err(Error::contract(format!(
                "element set over [1, {}] used with an instance over [1, {}]",
                x.universe(),
                self.n
            )));
        }
        Ok(())
    }

    /// `I_σ(X) = ⋂_{v ∈ X} σ(v)`. `X` must be non-empty.
    pub fn common_item_set(&self, x: &ElementSet) -> Result<ItemSet> {
        self.check_elements(x)?;
        if x.is_empty() {
            return Err(Error::contract("common item set of the empty set is undefined"));
        }
        Ok(match &self.attributes {
            Attributes::Listed { sigma, .. } => {
                let mut ids = x.iter();
                let first = ids.next().expect("non-empty");
                let mut items = sigma[first - 1].clone();
                for v in ids {
                    items.intersect_with(&sigma[v - 1]);
                }
                items
            }
            Attributes::Complement => x.complement().retag(),
        })
    }

    /// `V_⟨J⟩ = {v | J ⊆ σ(v)}`, with `V_⟨∅⟩ = V`.
    pub fn elements_with_items(&self, j: &ItemSet) -> Result<ElementSet> {
        if j.universe() != self.q {
            return Err(Error::contract(format!(
                "item set over [1, {}] used with an instance over [1, {}]",
                j.universe(),
                self.q
            )));
        }
        Ok(match &self.attributes {
            Attributes::Listed { columns, .. } => {
                let mut out = self.elements();
                for i in j {
                    out.intersect_with(&columns[i - 1]);
                }
                out
            }
            Attributes::Complement => j.complement().retag(),
        })
    }

    /// `V_⟨i⟩` for a single item, where `V_⟨0⟩ = V`.
    pub fn elements_with_item(&self, i: usize) -> Result<ElementSet> {
        if i > self.q {
            return Err(Error::OutOfRange {
                id: i,
                universe: self.q,
            });
        }
        if i == 0 {
            return Ok(self.elements());
        }
        Ok(match &self.attributes {
            Attributes::Listed { columns, .. } => columns[i - 1].clone(),
            Attributes::Complement => {
                let mut out = self.elements();
                out.remove(i);
                out
            }
        })
    }

    /// `(I_σ(X), X) ≺ (I_σ(Y), Y)`.
    pub fn pair_lex_less(&self, x: &ElementSet, y: &ElementSet) -> Result<bool> {
        let ix = self.common_item_set(x)?;
        let iy = self.common_item_set(y)?;
        Ok(pair_cmp(&ix, x, &iy, y) == Ordering::Less)
    }
}

/// Order on pairs: item sets by `≺` first, then element sets by `≺`.
pub fn pair_cmp(ix: &ItemSet, x: &ElementSet, iy: &ItemSet, y: &ElementSet) -> Ordering {
    ix.cmp(iy).then_with(|| x.cmp(y))
}

/// Minimum item of `J`, or the sentinel 0 when `J = ∅`.
pub fn min_item(j: &ItemSet) -> usize {
    j.first().unwrap_or(0)
}
