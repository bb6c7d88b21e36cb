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

use std::collections::BTreeSet;

use proptest::prelude::*;
use setsys_enum::{subset_lex_le, subset_lex_less, ItemSet};

/// `≺` straight from the definition on ordered id lists.
fn lex_less_by_definition(j: &BTreeSet<usize>, k: &BTreeSet<usize>) -> bool {
    j.symmetric_difference(k).min().is_some_and(|m| j.contains(m))
}

fn to_set(universe: usize, ids: &BTreeSet<usize>) -> ItemSet {
    ItemSet::from_ids(universe, ids.iter().copied()).unwrap()
}

fn subset_strategy(universe: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    proptest::collection::btree_set(1..=universe, 0..=universe)
}

proptest! {
    #[test]
    fn bitset_order_matches_definition(a in subset_strategy(150), b in subset_strategy(150)) {
        let (x, y) = (to_set(150, &a), to_set(150, &b));
        prop_assert_eq!(subset_lex_less(&x, &y), lex_less_by_definition(&a, &b));
        prop_assert_eq!(subset_lex_le(&x, &y), a == b || lex_less_by_definition(&a, &b));
    }

    #[test]
    fn trichotomy(a in subset_strategy(70), b in subset_strategy(70)) {
        let (x, y) = (to_set(70, &a), to_set(70, &b));
        let cases = [x.lex_less(&y), y.lex_less(&x), x == y];
        prop_assert_eq!(cases.iter().filter(|&&c| c).count(), 1);
    }

    #[test]
    fn transitivity(a in subset_strategy(9), b in subset_strategy(9), c in subset_strategy(9)) {
        let (x, y, z) = (to_set(9, &a), to_set(9, &b), to_set(9, &c));
        if x.lex_less(&y) && y.lex_less(&z) {
            prop_assert!(x.lex_less(&z));
        }
    }

    #[test]
    fn supersets_come_first(a in subset_strategy(40), extra in subset_strategy(40)) {
        let k = to_set(40, &a);
        let j = k.union(&to_set(40, &extra));
        prop_assert!(subset_lex_le(&j, &k));
        prop_assert!(!subset_lex_less(&k, &j));
    }
}
