//! Aggregation of run reports.

use anyhow::{Context, Result};
use hsbb_core::{LoopItem, Report};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Debug, Default, Serialize)]
pub struct Summary {
    pub runs: usize,
    pub optimal: usize,
    pub verified: usize,
    pub total_tree_nodes: u64,
    pub total_wall_secs: f64,
    pub median_wall_secs: f64,
    pub prunes_by_bound: BTreeMap<LoopItem, u64>,
    pub reduction_applications: BTreeMap<LoopItem, u64>,
    pub forced_by_rule: BTreeMap<LoopItem, u64>,
    /// Summed per-operation time, seconds.
    pub time_by_operation: BTreeMap<String, f64>,
}

pub fn summarize(reports: &[Report]) -> Summary {
    let mut s = Summary {
        runs: reports.len(),
        ..Summary::default()
    };
    let mut walls: Vec<f64> = Vec::with_capacity(reports.len());
    for r in reports {
        s.optimal += r.optimal as usize;
        s.verified += r.verified as usize;
        s.total_tree_nodes += r.tree_nodes;
        let wall = r.timings.wall_nanos as f64 / 1e9;
        s.total_wall_secs += wall;
        walls.push(wall);
        for (map, into) in [
            (&r.prunes_by_bound, &mut s.prunes_by_bound),
            (&r.reduction_applications, &mut s.reduction_applications),
            (&r.forced_by_rule, &mut s.forced_by_rule),
        ] {
            for (&k, &v) in map {
                *into.entry(k).or_default() += v;
            }
        }
        for (k, &v) in &r.timings.by_operation {
            *s.time_by_operation.entry(k.clone()).or_default() += v as f64 / 1e9;
        }
    }
    walls.sort_by(f64::total_cmp);
    s.median_wall_secs = match walls.len() {
        0 => 0.0,
        n if n % 2 == 1 => walls[n / 2],
        n => (walls[n / 2 - 1] + walls[n / 2]) / 2.0,
    };
    s
}

pub fn aggregate(paths: &[PathBuf]) -> Result<Summary> {
    let reports = paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            Report::from_json(&text).with_context(|| format!("{}: malformed report", p.display()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(&reports))
}
