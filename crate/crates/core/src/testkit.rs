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

//! Ground truth for tests and `--verify`: brute-force enumeration straight
//! from the definitions, seeded instance generators and delay measurement.
//!
//! Nothing here calls into the enumerator; the brute-force routines only
//! read the attribute map and a fully materialized component family.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerator::Solution;
use crate::error::{Error, Result};
use crate::idset::{ElementSet, ItemSet};
use crate::instance::{pair_cmp, Instance};
use crate::oracle::OracleStats;
use crate::oracles::{Backend, ExplicitFamilyOracle, GraphConnectivityOracle};

/// Largest graph whose connected vertex subsets are materialized.
pub const MAX_GRAPH_MATERIALIZE: usize = 12;

/// Set systems whose full component family can be listed.
pub trait Materialize {
    fn all_components(&self) -> Result<Vec<ElementSet>>;
}

impl Materialize for ExplicitFamilyOracle {
    fn all_components(&self) -> Result<Vec<ElementSet>> {
        Ok(self.family().to_vec())
    }
}

impl Materialize for GraphConnectivityOracle {
    fn all_components(&self) -> Result<Vec<ElementSet>> {
        connected_subsets(self)
    }
}

impl Materialize for Backend {
    fn all_components(&self) -> Result<Vec<ElementSet>> {
        match self {
            Backend::Explicit(o) => o.all_components(),
            Backend::Graph(o) => o.all_components(),
        }
    }
}

impl<T: Materialize + ?Sized> Materialize for &T {
    fn all_components(&self) -> Result<Vec<ElementSet>> {
        (**self).all_components()
    }
}

/// Every non-empty vertex subset inducing a connected subgraph, found by
/// testing all `2^n − 1` subsets with bitmask flooding.
pub fn connected_subsets(graph: &GraphConnectivityOracle) -> Result<Vec<ElementSet>> {
    let n = graph.n();
    if n > MAX_GRAPH_MATERIALIZE {
        return Err(Error::TooLarge(format!(
            "graph has {n} vertices, limit is {MAX_GRAPH_MATERIALIZE}"
        )));
    }
    let adjacency: Vec<u32> = (1..=n)
        .map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << (w - 1)))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut reached = mask & mask.wrapping_neg();
        loop {
            let mut next = reached;
            for (v, adj) in adjacency.iter().enumerate() {
                if reached >> v & 1 == 1 {
                    next |= adj & mask;
                }
            }
            if next == reached {
                break;
            }
            reached = next;
        }
        if reached == mask {
            out.push(ElementSet::from_ids(n, (1..=n).filter(|v| mask >> (v - 1) & 1 == 1))?);
        }
    }
    Ok(out)
}

fn common_items_direct<O>(inst: &Instance<O>, x: &ElementSet) -> ItemSet {
    let mut acc = ItemSet::full(inst.q());
    for v in x {
        acc = acc.intersection(&inst.sigma(v));
    }
    acc
}

/// All solutions by the definition: a component is kept when every strictly
/// larger component has a different (hence strictly smaller) item set.
/// Sorted by `≺` on element sets.
pub fn brute_force_solutions<O: Materialize>(inst: &Instance<O>) -> Result<Vec<Solution>> {
    let components = inst.oracle().all_components()?;
    let items: Vec<ItemSet> = components
        .iter()
        .map(|c| common_items_direct(inst, c))
        .collect();
    let mut out = Vec::new();
    for (i, c) in components.iter().enumerate() {
        let dominated = components
            .iter()
            .zip(&items)
            .any(|(d, id)| c.is_proper_subset(d) && *id == items[i]);
        if !dominated {
            out.push(Solution::from_parts(c.clone(), items[i].clone()));
        }
    }
    out.sort_by(|a, b| a.elements().cmp(b.elements()));
    Ok(out)
}

/// The lex-min minimal superset solution of `s` within `S_k`, found by
/// scanning a precomputed solution list.
pub fn brute_force_parent_among(solutions: &[Solution], s: &Solution) -> Result<Solution> {
    let supersets: Vec<&Solution> = solutions
        .iter()
        .filter(|t| t.k() == s.k() && s.elements().is_proper_subset(t.elements()))
        .collect();
    let minimal = supersets
        .iter()
        .filter(|t| {
            !supersets
                .iter()
                .any(|z| z.elements().is_proper_subset(t.elements()))
        })
        .min_by(|a, b| pair_cmp(a.items(), a.elements(), b.items(), b.elements()));
    minimal.map(|t| (*t).clone()).ok_or_else(|| {
        Error::Contract(format!(
            "{} has no superset solution in S_{}; it is a base",
            s.elements(),
            s.k()
        ))
    })
}

pub fn brute_force_parent<O: Materialize>(inst: &Instance<O>, s: &Solution) -> Result<Solution> {
    brute_force_parent_among(&brute_force_solutions(inst)?, s)
}

/// Largest number of traversal steps between two consecutive outputs;
/// 0 with fewer than two outputs.
pub fn max_interoutput_traversals(stats: &OracleStats) -> u64 {
    stats
        .interoutput_deltas()
        .map(|d| d.traversal_calls)
        .max()
        .unwrap_or(0)
}

/// `(n+q)·q·δ + q + q·δ`, a loose per-output budget for oracle calls.
pub fn delay_envelope(n: usize, q: usize, delta: usize) -> u64 {
    ((n + q) * q * delta + q + q * delta) as u64
}

#[derive(Debug, Clone, PartialEq)]
pub enum SystemKind {
    /// A listed family of at most this many distinct components.
    Explicit { max_components: usize },
    /// `G(n, p)` connected-subgraph systems.
    Graph { edge_probability: f64 },
}

/// Reproducible random instance family. Every `(element, item)` pair is
/// included in `σ` independently with probability 1/2.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub n: RangeInclusive<usize>,
    pub q: RangeInclusive<usize>,
    pub kind: SystemKind,
    pub seed: u64,
}

impl RandomSpec {
    pub fn explicit(seed: u64) -> Self {
        RandomSpec {
            n: 1..=7,
            q: 1..=5,
            kind: SystemKind::Explicit { max_components: 20 },
            seed,
        }
    }

    pub fn graph(seed: u64) -> Self {
        RandomSpec {
            n: 1..=8,
            q: 1..=5,
            kind: SystemKind::Graph {
                edge_probability: 0.4,
            },
            seed,
        }
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// The `index`-th instance of the family.
    pub fn generate(&self, index: u64) -> Instance<Backend> {
        let mut rng = self.rng(index);
        let n = rng.gen_range(self.n.clone());
        let q = rng.gen_range(self.q.clone());
        let backend = match self.kind {
            SystemKind::Explicit { max_components } => {
                Backend::Explicit(random_family(&mut rng, n, max_components))
            }
            SystemKind::Graph { edge_probability } => {
                Backend::Graph(random_graph(&mut rng, n, edge_probability))
            }
        };
        let sigma = (0..n).map(|_| random_subset(&mut rng, q)).collect();
        Instance::new(q, sigma, backend).expect("generated instance is valid")
    }
}

fn random_subset<K>(rng: &mut impl Rng, universe: usize) -> crate::idset::IdSet<K> {
    let mut s = crate::idset::IdSet::new(universe);
    for id in 1..=universe {
        if rng.gen_bool(0.5) {
            s.insert(id);
        }
    }
    s
}

/// Distinct non-empty subsets of `[1, n]`; between 1 and `max_components`.
pub fn random_family(rng: &mut impl Rng, n: usize, max_components: usize) -> ExplicitFamilyOracle {
    let possible = (1usize << n.min(usize::BITS as usize - 1)) - 1;
    let target = rng.gen_range(1..=max_components.max(1)).min(possible);
    let mut family: Vec<ElementSet> = Vec::with_capacity(target);
    while family.len() < target {
        let s: ElementSet = random_subset(rng, n);
        if !s.is_empty() && !family.contains(&s) {
            family.push(s);
        }
    }
    ExplicitFamilyOracle::new(n, family).expect("generated family is valid")
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> GraphConnectivityOracle {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    GraphConnectivityOracle::new(n, &edges).expect("generated graph is simple")
}

pub fn path_graph(m: usize) -> GraphConnectivityOracle {
    let edges: Vec<_> = (1..m).map(|v| (v, v + 1)).collect();
    GraphConnectivityOracle::new(m, &edges).expect("path is simple")
}

/// The three-vertex path `1–2–3` with `σ(1) = {1}`, `σ(2) = {1, 2}`,
/// `σ(3) = {2}`.
pub fn p3_instance() -> Instance<GraphConnectivityOracle> {
    let sigma = [&[1][..], &[1, 2], &[2]]
        .iter()
        .map(|ids| ItemSet::from_ids(2, ids.iter().copied()).expect("in range"))
        .collect();
    Instance::new(2, sigma, path_graph(3)).expect("valid instance")
}
