//! Runs the built `fiedler` binary and parses `--format kv` reports.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn kv(&self) -> HashMap<String, String> {
        self.stdout
            .lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }

    pub fn float(&self, key: &str) -> f64 {
        self.kv()[key].parse().unwrap()
    }

    pub fn floats(&self, key: &str) -> Vec<f64> {
        self.kv()[key]
            .split(',')
            .map(|s| s.parse().unwrap())
            .collect()
    }
}

pub fn run_cli(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_fiedler"))
        .args(args)
        .output()
        .expect("spawn fiedler");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fiedler-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

pub fn write_graph(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

pub fn path_text(n: usize) -> String {
    let mut s = format!("n {n}\n");
    for i in 1..n {
        s.push_str(&format!("e {i} {}\n", i + 1));
    }
    s
}

pub fn cycle_text(n: usize) -> String {
    let mut s = path_text(n);
    s.push_str(&format!("e {n} 1\n"));
    s
}

/// Reads a sweep CSV into (r, closed, numeric, delta) rows.
pub fn read_sweep(path: &std::path::Path) -> Vec<[f64; 4]> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,lambda2_closed,lambda2_numeric,delta"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}
