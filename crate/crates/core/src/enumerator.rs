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

//! Family-tree enumeration of solutions.
//!
//! A solution is a component `X` such that every strictly larger component
//! has a strictly smaller common item set. Solutions are partitioned into
//! `S_k` by their minimum common item `k` (0 for an empty item set). Within
//! `S_k` the roots are the bases, the `V_⟨k⟩`-maximal components with minimum
//! item `k`, and every other solution hangs below its parent: the
//! lexicographically least minimal superset solution in `S_k`.
//!
//! The traversal emits a node before its subtree at odd depth and after it
//! at even depth, so that at most three traversal steps separate two
//! consecutive outputs.

use crate::error::{Error, Result};
use crate::idset::{ElementSet, ItemSet};
use crate::instance::{min_item, Instance};
use crate::oracle::{OracleStats, SetSystemOracle, VolumeFunction};

/// A solution together with its common item set and `k = min I_σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    elements: ElementSet,
    items: ItemSet,
    k: usize,
}

impl Solution {
    /// Wraps `elements`, computing its common item set. Does not check that
    /// `elements` is a solution.
    pub fn new<O>(inst: &Instance<O>, elements: ElementSet) -> Result<Self> {
        let items = inst.common_item_set(&elements)?;
        let k = min_item(&items);
        Ok(Solution { elements, items, k })
    }

    pub(crate) fn from_parts(elements: ElementSet, items: ItemSet) -> Self {
        let k = min_item(&items);
        Solution { elements, items, k }
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn items(&self) -> &ItemSet {
        &self.items
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn into_elements(self) -> ElementSet {
        self.elements
    }
}

/// Receives solutions in traversal order. An error aborts the run.
pub trait EmitSink {
    fn emit(&mut self, solution: &Solution) -> Result<()>;
}

impl EmitSink for Vec<Solution> {
    fn emit(&mut self, solution: &Solution) -> Result<()> {
        self.push(solution.clone());
        Ok(())
    }
}

impl<F: FnMut(&Solution) -> Result<()>> EmitSink for F {
    fn emit(&mut self, solution: &Solution) -> Result<()> {
        self(solution)
    }
}

/// One pending `Descendants(T, k, d)` activation.
struct Frame {
    node: Solution,
    depth: usize,
    /// Items `j ∈ [k+1, q] ∖ I_σ(T)` not yet expanded.
    items: std::vec::IntoIter<usize>,
    j: usize,
    /// Remaining members of `C_max(T ∩ V_⟨j⟩)`.
    candidates: std::vec::IntoIter<ElementSet>,
    emit_on_return: bool,
}

/// One enumeration run over an instance. Every oracle and volume call goes
/// through here and is counted.
pub struct Enumerator<'a, O, R: ?Sized> {
    inst: &'a Instance<O>,
    rho: &'a R,
    stats: OracleStats,
}

impl<'a, O: SetSystemOracle, R: VolumeFunction + ?Sized> Enumerator<'a, O, R> {
    pub fn new(inst: &'a Instance<O>, rho: &'a R) -> Self {
        Enumerator {
            inst,
            rho,
            stats: OracleStats::default(),
        }
    }

    pub fn instance(&self) -> &'a Instance<O> {
        self.inst
    }

    pub fn stats(&self) -> &OracleStats {
        &self.stats
    }

    pub fn into_stats(self) -> OracleStats {
        self.stats
    }

    fn l1(&mut self, x: &ElementSet, y: &ElementSet) -> Result<Option<ElementSet>> {
        self.stats.record_l1();
        self.inst.oracle().l1(x, y)
    }

    fn l2(&mut self, y: &ElementSet) -> Result<Vec<ElementSet>> {
        self.stats.record_l2();
        self.inst.oracle().l2(y)
    }

    fn positive(&mut self, x: &ElementSet) -> bool {
        self.stats.record_rho();
        self.rho.positive(x)
    }

    fn emit<S: EmitSink + ?Sized>(&mut self, solution: &Solution, sink: &mut S) -> Result<()> {
        self.stats.record_emission(solution.k);
        sink.emit(solution)
    }

    /// Whether the component `c` is a solution: `L1(C, V_⟨I_σ(C)⟩)` returns
    /// `C` itself exactly when no larger component keeps the same items.
    pub fn is_solution(&mut self, c: &ElementSet) -> Result<bool> {
        let items = self.inst.common_item_set(c)?;
        let y = self.inst.elements_with_items(&items)?;
        Ok(self.l1(c, &y)?.as_ref() == Some(c))
    }

    /// The parent of a non-base solution `s ∈ S_k`, `k ∈ [1, q−1]`.
    ///
    /// The parent's item set is fixed greedily first, keeping each item of
    /// `I_σ(S)` above `k` whenever `S` still grows inside the elements that
    /// carry it. Elements of `V_⟨J⟩ ∖ S` are then added in ascending order,
    /// keeping those that leave the set extendable to a component, until the
    /// accumulated set is a solution.
    pub fn parent(&mut self, s: &Solution) -> Result<Solution> {
        let q = self.inst.q();
        let k = s.k;
        if k == 0 || k >= q {
            return Err(Error::contract(format!(
                "parent is defined for k in [1, {}], got k = {k}",
                q.saturating_sub(1)
            )));
        }

        let mut items = ItemSet::singleton(q, k)?;
        for i in s.items.iter().filter(|&i| i > k) {
            let extended = items.with(i);
            let y = self.inst.elements_with_items(&extended)?;
            if self.l1(&s.elements, &y)?.as_ref() != Some(&s.elements) {
                items = extended;
            }
        }

        let within = self.inst.elements_with_items(&items)?;
        let outside = within.difference(&s.elements);
        let mut grown = s.elements.clone();
        for u in outside.iter() {
            let probe = grown.with(u);
            if self.l1(&probe, &within)?.is_some() {
                grown = probe;
                if self.is_solution(&grown)? {
                    return Solution::new(self.inst, grown);
                }
            }
        }
        Err(Error::contract(format!(
            "no superset solution found for {}; it is a base or the oracle is inconsistent",
            s.elements
        )))
    }

    /// Applies the child filters to `c ∈ C_max(T ∩ V_⟨j⟩)`, cheapest first.
    fn child_candidate(&mut self, t: &Solution, j: usize, c: ElementSet) -> Result<Option<Solution>> {
        let k = t.k;
        let items = self.inst.common_item_set(&c)?;
        if min_item(&items) != k {
            return Ok(None);
        }
        let first_new = items.difference(&t.items).iter().find(|&i| i > k);
        if first_new != Some(j) {
            return Ok(None);
        }
        if !self.is_solution(&c)? {
            return Ok(None);
        }
        let child = Solution {
            elements: c,
            items,
            k,
        };
        if self.parent(&child)?.elements != t.elements {
            return Ok(None);
        }
        Ok(Some(child))
    }

    fn expansion_items(&self, t: &Solution) -> Vec<usize> {
        ((t.k + 1)..=self.inst.q())
            .filter(|&j| !t.items.contains(j))
            .collect()
    }

    fn check_tree_level(&self, t: &Solution, k: usize) -> Result<()> {
        if k != t.k {
            return Err(Error::contract(format!(
                "solution {} has k = {}, not {k}",
                t.elements, t.k
            )));
        }
        if k == 0 || k > self.inst.q() {
            return Err(Error::contract(format!(
                "family trees exist for k in [1, {}], got {k}",
                self.inst.q()
            )));
        }
        Ok(())
    }

    /// Emits every child of `t ∈ S_k`, ignoring the volume function.
    /// Returns the number of children.
    pub fn children<S: EmitSink + ?Sized>(
        &mut self,
        t: &Solution,
        k: usize,
        sink: &mut S,
    ) -> Result<usize> {
        self.check_tree_level(t, k)?;
        let mut found = 0;
        for j in self.expansion_items(t) {
            let y = t.elements.intersection(&self.inst.elements_with_item(j)?);
            if y.is_empty() {
                continue;
            }
            for c in self.l2(&y)? {
                if let Some(child) = self.child_candidate(t, j, c)? {
                    self.emit(&child, sink)?;
                    found += 1;
                }
            }
        }
        Ok(found)
    }

    fn open_frame(&mut self, node: Solution, depth: usize, emit_on_return: bool) -> Frame {
        self.stats.record_traversal();
        Frame {
            items: self.expansion_items(&node).into_iter(),
            node,
            depth,
            j: 0,
            candidates: Vec::new().into_iter(),
            emit_on_return,
        }
    }

    /// Next ρ-positive child of the frame's node, resuming where the last
    /// call stopped.
    fn next_child(&mut self, frame: &mut Frame) -> Result<Option<Solution>> {
        loop {
            if let Some(c) = frame.candidates.next() {
                if let Some(child) = self.child_candidate(&frame.node, frame.j, c)? {
                    if self.positive(&child.elements) {
                        return Ok(Some(child));
                    }
                }
                continue;
            }
            let Some(j) = frame.items.next() else {
                return Ok(None);
            };
            frame.j = j;
            let y = frame
                .node
                .elements
                .intersection(&self.inst.elements_with_item(j)?);
            frame.candidates = if y.is_empty() {
                Vec::new().into_iter()
            } else {
                self.l2(&y)?.into_iter()
            };
        }
    }

    /// Emits all ρ-positive proper descendants of `t` in the family tree,
    /// `t` itself being at recursion depth `depth`.
    pub fn descendants<S: EmitSink + ?Sized>(
        &mut self,
        t: Solution,
        depth: usize,
        sink: &mut S,
    ) -> Result<()> {
        let k = t.k;
        self.check_tree_level(&t, k)?;
        if depth < 2 {
            return Err(Error::contract(format!("descendant depth must be >= 2, got {depth}")));
        }
        let mut stack = vec![self.open_frame(t, depth, false)];
        while let Some(frame) = stack.last_mut() {
            match self.next_child(frame)? {
                Some(child) => {
                    let depth = frame.depth;
                    if depth % 2 == 1 {
                        self.emit(&child, sink)?;
                        let next = self.open_frame(child, depth + 1, false);
                        stack.push(next);
                    } else {
                        let next = self.open_frame(child, depth + 1, true);
                        stack.push(next);
                    }
                }
                None => {
                    let done = stack.pop().expect("stack is non-empty");
                    if done.emit_on_return {
                        self.emit(&done.node, sink)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Emits every ρ-positive solution in `S_k`, each exactly once.
    pub fn enumerate_k<S: EmitSink + ?Sized>(&mut self, k: usize, sink: &mut S) -> Result<()> {
        let q = self.inst.q();
        if k > q {
            return Err(Error::contract(format!("k must lie in [0, {q}], got {k}")));
        }
        let vk = self.inst.elements_with_item(k)?;
        if vk.is_empty() {
            return Ok(());
        }
        for t in self.l2(&vk)? {
            let items = self.inst.common_item_set(&t)?;
            if min_item(&items) != k || !self.positive(&t) {
                continue;
            }
            let base = Solution {
                elements: t,
                items,
                k,
            };
            self.emit(&base, sink)?;
            if k >= 1 && k < q {
                self.descendants(base, 2, sink)?;
            }
        }
        Ok(())
    }

    /// Emits every ρ-positive solution, `S_0` first and `S_q` last.
    pub fn enumerate_all<S: EmitSink + ?Sized>(&mut self, sink: &mut S) -> Result<()> {
        for k in 0..=self.inst.q() {
            self.enumerate_k(k, sink)?;
        }
        Ok(())
    }
}

pub fn enumerate_all<O, R, S>(inst: &Instance<O>, rho: &R, sink: &mut S) -> Result<OracleStats>
where
    O: SetSystemOracle,
    R: VolumeFunction + ?Sized,
    S: EmitSink + ?Sized,
{
    let mut run = Enumerator::new(inst, rho);
    run.enumerate_all(sink)?;
    Ok(run.into_stats())
}

pub fn enumerate_k<O, R, S>(
    inst: &Instance<O>,
    k: usize,
    rho: &R,
    sink: &mut S,
) -> Result<OracleStats>
where
    O: SetSystemOracle,
    R: VolumeFunction + ?Sized,
    S: EmitSink + ?Sized,
{
    let mut run = Enumerator::new(inst, rho);
    run.enumerate_k(k, sink)?;
    Ok(run.into_stats())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{AlwaysPositive, MinSize};
    use crate::oracles::{ExplicitFamilyOracle, GraphConnectivityOracle};

    fn s(n: usize, ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(n, ids.iter().copied()).unwrap()
    }

    fn p3_sigma() -> Vec<ItemSet> {
        [&[1][..], &[1, 2], &[2]]
            .iter()
            .map(|ids| ItemSet::from_ids(2, ids.iter().copied()).unwrap())
            .collect()
    }

    fn p3() -> Instance<GraphConnectivityOracle> {
        let g = GraphConnectivityOracle::new(3, &[(1, 2), (2, 3)]).unwrap();
        Instance::new(2, p3_sigma(), g).unwrap()
    }

    fn lists(out: &[Solution]) -> Vec<Vec<usize>> {
        out.iter().map(|s| s.elements.to_vec()).collect()
    }

    #[test]
    fn solution_test_on_p3() {
        let inst = p3();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        assert!(!run.is_solution(&s(3, &[1])).unwrap());
        assert!(run.is_solution(&s(3, &[2])).unwrap());
        assert!(run.is_solution(&s(3, &[1, 2, 3])).unwrap());
        assert!(run.is_solution(&s(3, &[1, 2])).unwrap());
        assert!(!run.is_solution(&s(3, &[3])).unwrap());
        assert_eq!(run.stats().counts().l1_calls, 5);
    }

    #[test]
    fn non_component_is_not_a_solution() {
        let inst = p3();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        assert!(!run.is_solution(&s(3, &[1, 3])).unwrap());
    }

    #[test]
    fn parent_on_p3() {
        let inst = p3();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        let child = Solution::new(&inst, s(3, &[2])).unwrap();
        assert_eq!(child.k(), 1);
        let parent = run.parent(&child).unwrap();
        assert_eq!(parent.elements(), &s(3, &[1, 2]));
        assert_eq!(parent.items().to_vec(), vec![1]);
    }

    #[test]
    fn parent_on_explicit_family() {
        let family =
            ExplicitFamilyOracle::from_lists(3, &[&[2], &[1, 2], &[2, 3], &[1, 2, 3]]).unwrap();
        let inst = Instance::new(2, p3_sigma(), family).unwrap();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        let child = Solution::new(&inst, s(3, &[2])).unwrap();
        assert_eq!(run.parent(&child).unwrap().elements(), &s(3, &[1, 2]));
    }

    #[test]
    fn parent_rejects_bases_and_edge_levels() {
        let inst = p3();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        let base = Solution::new(&inst, s(3, &[1, 2])).unwrap();
        assert!(matches!(run.parent(&base), Err(Error::Contract(_))));
        let top = Solution::new(&inst, s(3, &[1, 2, 3])).unwrap();
        assert!(run.parent(&top).is_err());
        let last = Solution::new(&inst, s(3, &[2, 3])).unwrap();
        assert!(run.parent(&last).is_err());
    }

    #[test]
    fn children_on_p3() {
        let inst = p3();
        let mut run = Enumerator::new(&inst, &AlwaysPositive);
        let t = Solution::new(&inst, s(3, &[1, 2])).unwrap();
        let mut out = Vec::new();
        assert_eq!(run.children(&t, 1, &mut out).unwrap(), 1);
        assert_eq!(lists(&out), vec![vec![2]]);

        // all items above k already present: nothing to expand
        let leaf = Solution::new(&inst, s(3, &[2])).unwrap();
        let mut none = Vec::new();
        assert_eq!(run.children(&leaf, 1, &mut none).unwrap(), 0);
        assert!(run.children(&t, 2, &mut none).is_err());
    }

    #[test]
    fn enumerate_k_on_p3() {
        let inst = p3();
        let expected: [&[&[usize]]; 3] = [&[&[1, 2, 3]], &[&[1, 2], &[2]], &[&[2, 3]]];
        for (k, want) in expected.iter().enumerate() {
            let mut out = Vec::new();
            enumerate_k(&inst, k, &AlwaysPositive, &mut out).unwrap();
            let want: Vec<Vec<usize>> = want.iter().map(|l| l.to_vec()).collect();
            assert_eq!(lists(&out), want, "k = {k}");
            assert!(out.iter().all(|s| s.k() == k));
        }
        assert!(enumerate_k(&inst, 3, &AlwaysPositive, &mut Vec::new()).is_err());
    }

    #[test]
    fn enumerate_all_on_p3() {
        let inst = p3();
        let mut out = Vec::new();
        let stats = enumerate_all(&inst, &AlwaysPositive, &mut out).unwrap();
        assert_eq!(
            lists(&out),
            vec![vec![1, 2, 3], vec![1, 2], vec![2], vec![2, 3]]
        );
        assert_eq!(stats.outputs(), 4);
        assert_eq!(stats.counts().traversal_calls, 2);
    }

    #[test]
    fn single_component_system() {
        let family = ExplicitFamilyOracle::from_lists(3, &[&[1, 2, 3]]).unwrap();
        let inst = Instance::new(2, p3_sigma(), family).unwrap();
        let mut out = Vec::new();
        enumerate_all(&inst, &AlwaysPositive, &mut out).unwrap();
        assert_eq!(lists(&out), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn descendants_with_and_without_pruning() {
        let inst = p3();
        let t = Solution::new(&inst, s(3, &[1, 2])).unwrap();

        let mut out = Vec::new();
        Enumerator::new(&inst, &AlwaysPositive)
            .descendants(t.clone(), 2, &mut out)
            .unwrap();
        assert_eq!(lists(&out), vec![vec![2]]);

        let mut pruned = Vec::new();
        Enumerator::new(&inst, &MinSize(2))
            .descendants(t.clone(), 2, &mut pruned)
            .unwrap();
        assert!(pruned.is_empty());

        let leaf = Solution::new(&inst, s(3, &[2])).unwrap();
        let mut none = Vec::new();
        Enumerator::new(&inst, &AlwaysPositive)
            .descendants(leaf, 3, &mut none)
            .unwrap();
        assert!(none.is_empty());
        assert!(Enumerator::new(&inst, &AlwaysPositive)
            .descendants(t, 1, &mut none)
            .is_err());
    }

    #[test]
    fn empty_item_column_short_circuits() {
        // item 3 is carried by nobody
        let sigma = vec![
            ItemSet::from_ids(3, [1]).unwrap(),
            ItemSet::from_ids(3, [1, 2]).unwrap(),
        ];
        let g = GraphConnectivityOracle::new(2, &[(1, 2)]).unwrap();
        let inst = Instance::new(3, sigma, g).unwrap();
        let mut out = Vec::new();
        let stats = enumerate_k(&inst, 3, &AlwaysPositive, &mut out).unwrap();
        assert!(out.is_empty());
        assert_eq!(stats.counts().l2_calls, 0);
    }

    #[test]
    fn sink_error_aborts() {
        let inst = p3();
        let mut calls = 0;
        let mut sink = |_: &Solution| -> Result<()> {
            calls += 1;
            Err(Error::Sink("closed".into()))
        };
        let err = enumerate_all(&inst, &AlwaysPositive, &mut sink).unwrap_err();
        assert!(matches!(err, Error::Sink(_)));
        assert_eq!(calls, 1);
    }
}
