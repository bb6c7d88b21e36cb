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

//! Polynomial-delay enumeration of solutions in set systems reached only
//! through maximality oracles.
//!
//! A set system `(V, C)` is accessed through two oracles: `l1(X, Y)` returns
//! one `Y`-maximal component containing `X`, and `l2(Y)` returns all
//! `Y`-maximal components. Given attributes `σ: V → 2^I`, a *solution* is a
//! component whose common attribute set shrinks under every strictly larger
//! component. [`enumerate_all`] lists all solutions with bounded delay by
//! traversing a family tree; [`enumerate_components`] reuses it to list
//! every component.

pub mod cli;
pub mod components;
pub mod enumerator;
pub mod error;
pub mod idset;
pub mod instance;
pub mod oracle;
pub mod oracles;
pub mod testkit;

pub use components::{build_reduction, enumerate_components};
pub use enumerator::{enumerate_all, enumerate_k, EmitSink, Enumerator, Solution};
pub use error::{Error, Result};
pub use idset::{subset_lex_le, subset_lex_less, ElementSet, IdSet, ItemSet};
pub use instance::{min_item, pair_cmp, Instance};
pub use oracle::{
    AlwaysPositive, CallCounts, EmissionSnapshot, MinSize, OracleStats, SetSystemOracle,
    VolumeFunction,
};
pub use oracles::{Backend, ExplicitFamilyOracle, GraphConnectivityOracle};
