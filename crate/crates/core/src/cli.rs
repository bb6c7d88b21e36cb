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

//! File-driven front end.
//!
//! Instances are JSON documents:
//!
//! ```json
//! {
//!   "elements": 3,
//!   "items": 2,
//!   "sigma": [[1], [1, 2], [2]],
//!   "system": { "kind": "graph", "edges": [[1, 2], [2, 3]] }
//! }
//! ```
//!
//! or with `"system": { "kind": "explicit", "components": [[1], [1, 2]] }`.
//! `items` and `sigma` may be omitted in `--components` mode.

use std::collections::HashSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::components::build_reduction;
use crate::enumerator::{Enumerator, Solution};
use crate::error::{Error, Result};
use crate::idset::{ElementSet, ItemSet};
use crate::instance::Instance;
use crate::oracle::{MinSize, SetSystemOracle};
use crate::oracles::{Backend, ExplicitFamilyOracle, GraphConnectivityOracle};
use crate::testkit::{self, Materialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Enumerate solutions (or components) of a set system given in a JSON file.
#[derive(Debug, Clone, Parser)]
#[command(name = "setsys-enum", version)]
pub struct Args {
    /// Instance file.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Only enumerate solutions whose minimum common item is K.
    #[arg(long, value_name = "K")]
    pub k: Option<usize>,

    /// Only report sets with more than P elements.
    #[arg(long = "min-size", value_name = "P", default_value_t = 0)]
    pub min_size: usize,

    /// Enumerate every component of the system; sigma is ignored.
    #[arg(long)]
    pub components: bool,

    /// Cross-check the output against brute force (small instances only).
    #[arg(long)]
    pub verify: bool,

    /// Print call counters to stderr.
    #[arg(long)]
    pub stats: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub items: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<usize>>>,
    pub system: SystemSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SystemSpec {
    Graph { edges: Vec<[usize; 2]> },
    Explicit { components: Vec<Vec<usize>> },
}

/// A validated instance file. `sigma` is absent when the file has none.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub n: usize,
    pub q: Option<usize>,
    pub sigma: Option<Vec<ItemSet>>,
    pub backend: Backend,
}

impl LoadedInstance {
    pub fn into_instance(self) -> Result<Instance<Backend>> {
        let (Some(q), Some(sigma)) = (self.q, self.sigma) else {
            return Err(Error::field(
                "sigma",
                "items and sigma are required outside --components mode",
            ));
        };
        Instance::new(q, sigma, self.backend)
    }
}

fn id_set<K>(universe: usize, ids: &[usize], field: &str, what: &str) -> Result<crate::idset::IdSet<K>> {
    let mut set = crate::idset::IdSet::new(universe);
    for (t, &id) in ids.iter().enumerate() {
        if id == 0 || id > universe {
            return Err(Error::field(
                format!("{field}[{t}]"),
                format!("{what} {id} out of range [1, {universe}]"),
            ));
        }
        if !set.insert(id) {
            return Err(Error::field(format!("{field}[{t}]"), format!("duplicate {what} {id}")));
        }
    }
    Ok(set)
}

impl InstanceFile {
    pub fn validate(self) -> Result<LoadedInstance> {
        let n = self.elements;
        if n == 0 {
            return Err(Error::field("elements", "must be at least 1"));
        }
        let q = match self.items {
            Some(0) => return Err(Error::field("items", "must be at least 1")),
            q => q,
        };
        let sigma = match self.sigma {
            None => None,
            Some(rows) => {
                let Some(q) = q else {
                    return Err(Error::field("items", "required when sigma is given"));
                };
                if rows.len() != n {
                    return Err(Error::field(
                        "sigma",
                        format!("expected {n} entries, found {}", rows.len()),
                    ));
                }
                let sets = rows
                    .iter()
                    .enumerate()
                    .map(|(v, row)| id_set(q, row, &format!("sigma[{v}]"), "item"))
                    .collect::<Result<Vec<ItemSet>>>()?;
                Some(sets)
            }
        };
        let backend = match self.system {
            SystemSpec::Graph { edges } => {
                let mut seen = HashSet::new();
                for (i, &[u, v]) in edges.iter().enumerate() {
                    let field = format!("system.edges[{i}]");
                    for w in [u, v] {
                        if w == 0 || w > n {
                            return Err(Error::field(
                                field,
                                format!("vertex {w} out of range [1, {n}]"),
                            ));
                        }
                    }
                    if u == v {
                        return Err(Error::field(field, format!("self-loop at {u}")));
                    }
                    if !seen.insert((u.min(v), u.max(v))) {
                        return Err(Error::field(field, format!("edge {u}-{v} is repeated")));
                    }
                }
                let pairs: Vec<(usize, usize)> = edges.iter().map(|&[u, v]| (u, v)).collect();
                Backend::Graph(GraphConnectivityOracle::new(n, &pairs)?)
            }
            SystemSpec::Explicit { components } => {
                let mut family: Vec<ElementSet> = Vec::with_capacity(components.len());
                for (i, ids) in components.iter().enumerate() {
                    let field = format!("system.components[{i}]");
                    if ids.is_empty() {
                        return Err(Error::field(field, "component is empty"));
                    }
                    let set: ElementSet = id_set(n, ids, &field, "element")?;
                    if let Some(j) = family.iter().position(|c| *c == set) {
                        return Err(Error::field(
                            field,
                            format!("duplicate of system.components[{j}]"),
                        ));
                    }
                    family.push(set);
                }
                Backend::Explicit(ExplicitFamilyOracle::new(n, family)?)
            }
        };
        Ok(LoadedInstance {
            n,
            q,
            sigma,
            backend,
        })
    }
}

pub fn parse_instance_str(text: &str) -> Result<LoadedInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.validate()
}

pub fn load_instance(path: &Path) -> Result<LoadedInstance> {
    parse_instance_str(&fs::read_to_string(path)?)
}

/// Reads and validates an instance file that carries `items` and `sigma`.
pub fn parse_instance(path: &Path) -> Result<Instance<Backend>> {
    load_instance(path)?.into_instance()
}

/// One output line in `--format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub elements: Vec<usize>,
    pub items: Vec<usize>,
    pub k: usize,
}

impl From<&Solution> for Record {
    fn from(s: &Solution) -> Self {
        Record {
            elements: s.elements().to_vec(),
            items: s.items().to_vec(),
            k: s.k(),
        }
    }
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// Renders a solution as one line, without the trailing newline.
pub fn format_record(s: &Solution, format: Format) -> String {
    let record = Record::from(s);
    match format {
        Format::Text => {
            let items = if record.items.is_empty() {
                "-".to_string()
            } else {
                join(&record.items)
            };
            format!("{}\t{items}", join(&record.elements))
        }
        Format::Json => serde_json::to_string(&record).expect("records always serialize"),
    }
}

/// Runs the command line, returning the process exit code.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match try_run(args, out, err) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.input.display());
            EXIT_ERROR
        }
    }
}

fn try_run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let loaded = load_instance(&args.input)?;
    if args.components {
        if loaded.sigma.is_some() {
            writeln!(err, "warning: sigma is ignored in --components mode")?;
        }
        let inst = build_reduction(loaded.n, loaded.backend)?;
        drive(&inst, args, out, err, true)
    } else {
        let inst = loaded.into_instance()?;
        drive(&inst, args, out, err, false)
    }
}

fn drive<O: SetSystemOracle + Materialize>(
    inst: &Instance<O>,
    args: &Args,
    out: &mut dyn Write,
    err: &mut dyn Write,
    components: bool,
) -> Result<i32> {
    let rho = MinSize(args.min_size);
    let mut emitted: Vec<ElementSet> = Vec::new();
    let mut run = Enumerator::new(inst, &rho);
    {
        let mut sink = |s: &Solution| -> Result<()> {
            writeln!(out, "{}", format_record(s, args.format))?;
            out.flush()?;
            if args.verify {
                emitted.push(s.elements().clone());
            }
            Ok(())
        };
        match args.k {
            Some(k) => run.enumerate_k(k, &mut sink)?,
            None => run.enumerate_all(&mut sink)?,
        }
    }
    let stats = run.into_stats();

    if args.stats {
        let c = stats.counts();
        let hint = inst
            .oracle()
            .max_components_hint(&inst.elements())
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        writeln!(
            err,
            "stats: outputs={} l1_calls={} l2_calls={} rho_calls={} traversal_calls={} \
             max_interoutput_traversals={} delta_hint={hint}",
            stats.outputs(),
            c.l1_calls,
            c.l2_calls,
            c.rho_calls,
            c.traversal_calls,
            testkit::max_interoutput_traversals(&stats),
        )?;
    }

    if args.verify {
        let expected = expected_output(inst, args, components)?;
        return report_verification(emitted, expected, err);
    }
    Ok(EXIT_OK)
}

/// Brute-force answer for the requested mode and filters, sorted by `≺`.
fn expected_output<O: Materialize>(
    inst: &Instance<O>,
    args: &Args,
    components: bool,
) -> Result<Vec<ElementSet>> {
    let candidates: Vec<ElementSet> = if components {
        inst.oracle().all_components()?
    } else {
        testkit::brute_force_solutions(inst)?
            .into_iter()
            .map(Solution::into_elements)
            .collect()
    };
    let mut kept = Vec::new();
    for c in candidates {
        if c.len() <= args.min_size {
            continue;
        }
        if let Some(k) = args.k {
            if crate::instance::min_item(&inst.common_item_set(&c)?) != k {
                continue;
            }
        }
        kept.push(c);
    }
    kept.sort();
    Ok(kept)
}

fn report_verification(
    mut emitted: Vec<ElementSet>,
    expected: Vec<ElementSet>,
    err: &mut dyn Write,
) -> Result<i32> {
    let total = emitted.len();
    emitted.sort();
    let before = emitted.len();
    emitted.dedup();
    let duplicates = before - emitted.len();
    let got: HashSet<&ElementSet> = emitted.iter().collect();
    let want: HashSet<&ElementSet> = expected.iter().collect();
    let missing: Vec<_> = expected.iter().filter(|c| !got.contains(c)).collect();
    let unexpected: Vec<_> = emitted.iter().filter(|c| !want.contains(c)).collect();
    if duplicates == 0 && missing.is_empty() && unexpected.is_empty() {
        writeln!(err, "verify: ok ({total} sets match brute force)")?;
        return Ok(EXIT_OK);
    }
    writeln!(
        err,
        "verify: MISMATCH ({} missing, {} unexpected, {duplicates} duplicated)",
        missing.len(),
        unexpected.len()
    )?;
    for c in missing {
        writeln!(err, "  missing {c}")?;
    }
    for c in unexpected {
        writeln!(err, "  unexpected {c}")?;
    }
    Ok(EXIT_MISMATCH)
}
