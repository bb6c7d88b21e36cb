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

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use setsys_enum::cli::{self, Args, Format, Record, EXIT_ERROR, EXIT_OK};

fn p3_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/p3.json")
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setsys-enum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p3(extra: &[&str]) -> Output {
    let path = p3_path();
    let mut args = vec!["--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    bin(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("setsys-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn args_for(path: PathBuf) -> Args {
    Args {
        input: path,
        k: None,
        min_size: 0,
        components: false,
        verify: false,
        stats: false,
        format: Format::Text,
    }
}

#[test]
fn golden_p3() {
    let o = p3(&[]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 3\t-\n1 2\t1\n2\t1 2\n2 3\t2\n");
    assert!(o.stderr.is_empty());
}

#[test]
fn min_size_prunes() {
    let o = p3(&["--min-size", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 3\t-\n1 2\t1\n2 3\t2\n");
}

#[test]
fn single_level() {
    let o = p3(&["--k", "1"]);
    assert_eq!(stdout(&o), "1 2\t1\n2\t1 2\n");
    let o = p3(&["--k", "0"]);
    assert_eq!(stdout(&o), "1 2 3\t-\n");
}

#[test]
fn components_mode_lists_all_subpaths() {
    let o = p3(&["--components"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stderr(&o).contains("warning: sigma is ignored"));

    let path = write_temp("nosigma", r#"{"elements": 3, "system": {"kind": "graph", "edges": [[1, 2], [2, 3]]}}"#);
    let o = bin(&["--input", path.to_str().unwrap(), "--components", "--verify"]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(!stderr(&o).contains("warning"));
    assert!(stderr(&o).contains("verify: ok (6 sets"));
}

#[test]
fn json_records_round_trip() {
    let o = p3(&["--format", "json"]);
    let records: Vec<Record> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 4);
    assert_eq!(
        records[2],
        Record {
            elements: vec![2],
            items: vec![1, 2],
            k: 1
        }
    );
    assert_eq!(records[0].items, Vec::<usize>::new());
}

#[test]
fn verify_and_stats() {
    let o = p3(&["--verify", "--stats"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let err = stderr(&o);
    assert!(err.contains("verify: ok (4 sets match brute force)"));
    let stats = err.lines().find(|l| l.starts_with("stats:")).unwrap();
    assert!(stats.contains("outputs=4"));
    assert!(stats.contains("delta_hint=3"));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn usage_errors() {
    assert!(!bin(&[]).status.success());
    assert!(!p3(&["--bogus"]).status.success());
    let o = bin(&["--input", "/nonexistent/instance.json"]);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
    assert!(stderr(&o).starts_with("error: /nonexistent/instance.json"));
}

#[test]
fn invalid_instance_names_the_field() {
    let path = write_temp(
        "invalid",
        r#"{"elements": 3, "items": 2, "sigma": [[1], [1, 3], [2]],
            "system": {"kind": "graph", "edges": [[1, 2]]}}"#,
    );
    let o = bin(&["--input", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
    assert!(stderr(&o).contains("sigma[1][1]"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn syntax_error_reports_line() {
    let path = write_temp("syntax", "{\n  \"elements\": 3,\n  ]\n}");
    let o = bin(&["--input", path.to_str().unwrap()]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(o.status.code(), Some(EXIT_ERROR));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

/// Counts bytes and flushes.
#[derive(Default)]
struct FlushCounter {
    data: Vec<u8>,
    flushes: usize,
}

impl Write for FlushCounter {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.data.extend_from_slice(buf);
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        self.flushes += 1;
        Ok(())
    }
}

#[test]
fn records_are_flushed_as_emitted() {
    let mut out = FlushCounter::default();
    let mut err = Vec::new();
    assert_eq!(cli::run(&args_for(p3_path()), &mut out, &mut err), EXIT_OK);
    let lines = out.data.iter().filter(|&&b| b == b'\n').count();
    assert_eq!(lines, 4);
    assert!(out.flushes >= lines);
}

/// Fails every write with a broken pipe.
struct Closed;

impl Write for Closed {
    fn write(&mut self, _: &[u8]) -> io::Result<usize> {
        Err(io::ErrorKind::BrokenPipe.into())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

#[test]
fn broken_pipe_is_not_an_error() {
    let mut err = Vec::new();
    assert_eq!(cli::run(&args_for(p3_path()), &mut Closed, &mut err), EXIT_OK);
    assert!(err.is_empty());
}
