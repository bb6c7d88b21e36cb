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

//! Enumerating every component of a set system.
//!
//! Give element `v_k` the attribute set `[1, n] ∖ {k}`. Then the common item
//! set of `X` is the complement of `X`, which strictly shrinks under any
//! strict superset, so every component is a solution and the solution
//! enumerator lists the whole family.

use crate::enumerator::{EmitSink, Enumerator};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{OracleStats, SetSystemOracle, VolumeFunction};

/// The instance `(V, C, [1, n], φ)` with `φ(v_k) = [1, n] ∖ {k}`.
///
/// The attribute sets are represented implicitly: `I_φ(X)` and `V_⟨J⟩` are
/// both plain complements.
pub fn build_reduction<O: SetSystemOracle>(n: usize, oracle: O) -> Result<Instance<O>> {
    if n == 0 {
        return Err(Error::InvalidInstance("need at least one element".into()));
    }
    if oracle.universe() != n {
        return Err(Error::InvalidInstance(format!(
            "oracle is over {} elements, expected {n}",
            oracle.universe()
        )));
    }
    Instance::with_complement_attributes(oracle)
}

/// Emits every ρ-positive component exactly once.
pub fn enumerate_components<O, R, S>(
    oracle: O,
    n: usize,
    rho: &R,
    sink: &mut S,
) -> Result<OracleStats>
where
    O: SetSystemOracle,
    R: VolumeFunction + ?Sized,
    S: EmitSink + ?Sized,
{
    let inst = build_reduction(n, oracle)?;
    let mut run = Enumerator::new(&inst, rho);
    run.enumerate_all(sink)?;
    Ok(run.into_stats())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::Solution;
    use crate::idset::{ElementSet, ItemSet};
    use crate::oracle::{AlwaysPositive, MinSize};
    use crate::oracles::GraphConnectivityOracle;

    fn path(m: usize) -> GraphConnectivityOracle {
        let edges: Vec<_> = (1..m).map(|v| (v, v + 1)).collect();
        GraphConnectivityOracle::new(m, &edges).unwrap()
    }

    fn run(oracle: &GraphConnectivityOracle, rho: &dyn VolumeFunction) -> Vec<Vec<usize>> {
        let mut out: Vec<Solution> = Vec::new();
        enumerate_components(oracle, oracle.n(), rho, &mut out).unwrap();
        let mut lists: Vec<_> = out.iter().map(|s| s.elements().to_vec()).collect();
        lists.sort();
        lists
    }

    #[test]
    fn reduced_attributes() {
        let inst = build_reduction(3, path(3)).unwrap();
        let items = |ids: &[usize]| ItemSet::from_ids(3, ids.iter().copied()).unwrap();
        assert_eq!(inst.sigma(1), items(&[2, 3]));
        assert_eq!(inst.sigma(2), items(&[1, 3]));
        assert_eq!(inst.sigma(3), items(&[1, 2]));
        let x = ElementSet::from_ids(3, [1, 3]).unwrap();
        assert_eq!(inst.common_item_set(&x).unwrap(), items(&[2]));

        let single = build_reduction(1, path(1)).unwrap();
        assert!(single.sigma(1).is_empty());
    }

    #[test]
    fn rejects_mismatched_sizes() {
        assert!(build_reduction(0, path(1)).is_err());
        assert!(build_reduction(4, path(3)).is_err());
    }

    #[test]
    fn p3_components() {
        assert_eq!(
            run(&path(3), &AlwaysPositive),
            vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![2], vec![2, 3], vec![3]]
        );
    }

    #[test]
    fn path_counts() {
        for m in 1..=6 {
            assert_eq!(run(&path(m), &AlwaysPositive).len(), m * (m + 1) / 2, "P_{m}");
        }
    }

    #[test]
    fn size_threshold_keeps_whole_graph() {
        let g = path(5);
        assert_eq!(run(&g, &MinSize(4)), vec![vec![1, 2, 3, 4, 5]]);
    }
}
