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

//! Concrete [`SetSystemOracle`] backends.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::idset::ElementSet;
use crate::oracle::{check_l1_args, SetSystemOracle};

/// A set system given by listing every component.
///
/// Maximality is decided by a pairwise subset scan over the listed family.
#[derive(Debug, Clone)]
pub struct ExplicitFamilyOracle {
    n: usize,
    family: Vec<ElementSet>,
}

impl ExplicitFamilyOracle {
    pub fn new(n: usize, family: Vec<ElementSet>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(family.len());
        for (i, c) in family.iter().enumerate() {
            if c.universe() != n {
                return Err(Error::InvalidInstance(format!(
                    "component {i} is not a subset of [1, {n}]"
                )));
            }
            if c.is_empty() {
                return Err(Error::InvalidInstance(format!("component {i} is empty")));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidInstance(format!(
                    "component {i} ({c}) is listed twice"
                )));
            }
        }
        Ok(ExplicitFamilyOracle { n, family })
    }

    pub fn from_lists(n: usize, lists: &[&[usize]]) -> Result<Self> {
        let family = lists
            .iter()
            .map(|ids| ElementSet::from_ids(n, ids.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, family)
    }

    pub fn family(&self) -> &[ElementSet] {
        &self.family
    }

    fn maximal<'a>(candidates: &[&'a ElementSet]) -> Vec<&'a ElementSet> {
        candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| c.is_proper_subset(d)))
            .copied()
            .collect()
    }
}

impl SetSystemOracle for ExplicitFamilyOracle {
    fn universe(&self) -> usize {
        self.n
    }

    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        check_l1_args(self.n, x, y)?;
        let candidates: Vec<&ElementSet> = self
            .family
            .iter()
            .filter(|c| x.is_subset(c) && c.is_subset(y))
            .collect();
        Ok(Self::maximal(&candidates).into_iter().min().cloned())
    }

    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        if y.universe() != self.n {
            return Err(Error::contract(format!("l2 argument must live in [1, {}]", self.n)));
        }
        let inside: Vec<&ElementSet> = self.family.iter().filter(|c| c.is_subset(y)).collect();
        let mut out: Vec<ElementSet> = Self::maximal(&inside).into_iter().cloned().collect();
        out.sort();
        Ok(out)
    }

    fn max_components_hint(&self, _y: &ElementSet) -> Option<usize> {
        Some(self.family.len())
    }
}

/// Connected induced subgraphs of a simple undirected graph on `[1, n]`.
#[derive(Debug, Clone)]
pub struct GraphConnectivityOracle {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

impl GraphConnectivityOracle {
    /// Rejects self-loops, repeated edges and endpoints outside `[1, n]`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::InvalidInstance(format!(
                        "edge {i}: vertex {w} out of range [1, {n}]"
                    )));
                }
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("edge {i}: self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInstance(format!(
                    "edge {i}: {u}-{v} is listed twice"
                )));
            }
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
        }
        Ok(GraphConnectivityOracle { n, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    /// Each edge once as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Vertex set of the component of `G[Y]` containing `start`.
    fn component_within(&self, start: usize, y: &ElementSet) -> ElementSet {
        let mut seen = ElementSet::new(self.n);
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if y.contains(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

impl SetSystemOracle for GraphConnectivityOracle {
    fn universe(&self) -> usize {
        self.n
    }

    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        check_l1_args(self.n, x, y)?;
        let start = x.first().expect("non-empty");
        let comp = self.component_within(start, y);
        Ok(x.is_subset(&comp).then_some(comp))
    }

    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        if y.universe() != self.n {
            return Err(Error::contract(format!("l2 argument must live in [1, {}]", self.n)));
        }
        // Components are disjoint, so discovering them by increasing minimum
        // vertex already yields ≺ order.
        let mut rest = y.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.component_within(v, y);
            rest = rest.difference(&comp);
            out.push(comp);
        }
        Ok(out)
    }

    fn max_components_hint(&self, y: &ElementSet) -> Option<usize> {
        Some(y.len())
    }
}

/// Runtime choice of backend, as loaded from an instance file.
#[derive(Debug, Clone)]
pub enum Backend {
    Explicit(ExplicitFamilyOracle),
    Graph(GraphConnectivityOracle),
}

impl SetSystemOracle for Backend {
    fn universe(&self) -> usize {
        match self {
            Backend::Explicit(o) => o.universe(),
            Backend::Graph(o) => o.universe(),
        }
    }

    fn l1(&self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        match self {
            Backend::Explicit(o) => o.l1(x, y),
            Backend::Graph(o) => o.l1(x, y),
        }
    }

    fn l2(&self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        match self {
            Backend::Explicit(o) => o.l2(y),
            Backend::Graph(o) => o.l2(y),
        }
    }

    fn max_components_hint(&self, y: &ElementSet) -> Option<usize> {
        match self {
            Backend::Explicit(o) => o.max_components_hint(y),
            Backend::Graph(o) => o.max_components_hint(y),
        }
    }
}

impl From<ExplicitFamilyOracle> for Backend {
    fn from(o: ExplicitFamilyOracle) -> Self {
        Backend::Explicit(o)
    }
}

impl From<GraphConnectivityOracle> for Backend {
    fn from(o: GraphConnectivityOracle) -> Self {
        Backend::Graph(o)
    }
}
