//! Benchmark suites: a list of instances and algorithms, reported as a table.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use cutkit::io::{generate_random, parse_instance, GenKind, GenParams, InstanceDocument};
use cutkit::Error;

use crate::solve::{solve, Algo, Problem, RatioBasis, SolveOptions, Status};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    /// Instance file, relative to the suite file.
    #[serde(default)]
    pub instance: Option<PathBuf>,
    /// Or a generated instance.
    #[serde(default)]
    pub generate: Option<Generated>,
    pub problem: Problem,
    pub algos: Vec<Algo>,
    #[serde(default)]
    pub options: SolveOptions,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generated {
    pub kind: GenKind,
    pub seed: u64,
    #[serde(default)]
    pub params: GenParams,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub instance: String,
    pub algo: Algo,
    pub status: Option<Status>,
    pub value: Option<u64>,
    pub oracle_value: Option<u64>,
    pub ratio: Option<f64>,
    pub ratio_basis: Option<RatioBasis>,
    pub wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn load(entry: &Entry, base: &Path) -> cutkit::Result<InstanceDocument> {
    match (&entry.instance, &entry.generate) {
        (Some(p), None) => {
            let path = base.join(p);
            let bytes = std::fs::read(&path)
                .map_err(|e| Error::Other(format!("{}: {e}", path.display())))?;
            parse_instance(&bytes)
        }
        (None, Some(g)) => generate_random(g.kind, &g.params, g.seed),
        _ => Err(Error::InvalidInstance(format!(
            "entry {}: give exactly one of instance or generate",
            entry.name
        ))),
    }
}

pub fn run_suite(suite: &Suite, base: &Path) -> Vec<Row> {
    let jobs: Vec<(&Entry, Algo)> = suite
        .entries
        .iter()
        .flat_map(|e| e.algos.iter().map(move |&a| (e, a)))
        .collect();
    jobs.par_iter()
        .map(|&(entry, algo)| {
            let report =
                load(entry, base).and_then(|doc| solve(entry.problem, algo, &doc, &entry.options));
            match report {
                Ok(r) => Row {
                    instance: entry.name.clone(),
                    algo,
                    status: Some(r.status),
                    value: r.value,
                    oracle_value: r.oracle_value,
                    ratio: r.ratio,
                    ratio_basis: r.ratio_basis,
                    wall_ms: r.wall_ms,
                    error: None,
                },
                Err(e) => Row {
                    instance: entry.name.clone(),
                    algo,
                    status: None,
                    value: None,
                    oracle_value: None,
                    ratio: None,
                    ratio_basis: None,
                    wall_ms: 0.0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn cell<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// Tab-separated table. A ratio against the LP bound is marked `(lp)`.
pub fn render(rows: &[Row]) -> String {
    let mut s = String::from("instance\talgo\tstatus\tvalue\toracle\tratio\twall_ms\n");
    for r in rows {
        let algo = serde_json::to_value(r.algo).unwrap();
        let status = match (&r.status, &r.error) {
            (Some(st), _) => serde_json::to_value(st)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string(),
            (None, Some(e)) => format!("error: {e}"),
            _ => "-".into(),
        };
        let ratio = match (r.ratio, r.ratio_basis) {
            (Some(x), Some(RatioBasis::LpBound)) => format!("{x:.4} (lp)"),
            (Some(x), _) => format!("{x:.4}"),
            _ => "-".into(),
        };
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\n",
            r.instance,
            algo.as_str().unwrap(),
            status,
            cell(&r.value),
            cell(&r.oracle_value),
            ratio,
            r.wall_ms
        ));
    }
    s
}
