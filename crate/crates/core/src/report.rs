//! Run statistics and their JSON serialization.

use crate::hypergraph::VertexId;
use crate::solver::Settings;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The ten steps of the reduction loop, in the order they are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopItem {
    MaxDegree,
    Efficiency,
    Packing,
    SumOverPacking,
    UnitEdge,
    CostlyDiscardEfficiency,
    CostlyDiscardPackingUpdate,
    CostlyDiscardRepack,
    EdgeDomination,
    VertexDomination,
}

impl LoopItem {
    pub const ALL: [LoopItem; 10] = [
        LoopItem::MaxDegree,
        LoopItem::Efficiency,
        LoopItem::Packing,
        LoopItem::SumOverPacking,
        LoopItem::UnitEdge,
        LoopItem::CostlyDiscardEfficiency,
        LoopItem::CostlyDiscardPackingUpdate,
        LoopItem::CostlyDiscardRepack,
        LoopItem::EdgeDomination,
        LoopItem::VertexDomination,
    ];

    pub const BOUNDS: [LoopItem; 4] = [
        LoopItem::MaxDegree,
        LoopItem::Efficiency,
        LoopItem::Packing,
        LoopItem::SumOverPacking,
    ];

    pub const REDUCTIONS: [LoopItem; 6] = [
        LoopItem::UnitEdge,
        LoopItem::CostlyDiscardEfficiency,
        LoopItem::CostlyDiscardPackingUpdate,
        LoopItem::CostlyDiscardRepack,
        LoopItem::EdgeDomination,
        LoopItem::VertexDomination,
    ];

    pub fn is_bound(self) -> bool {
        self <= LoopItem::SumOverPacking
    }

    pub fn name(self) -> &'static str {
        match self {
            LoopItem::MaxDegree => "max-degree",
            LoopItem::Efficiency => "efficiency",
            LoopItem::Packing => "packing",
            LoopItem::SumOverPacking => "sum-over-packing",
            LoopItem::UnitEdge => "unit-edge",
            LoopItem::CostlyDiscardEfficiency => "costly-discard-efficiency",
            LoopItem::CostlyDiscardPackingUpdate => "costly-discard-packing-update",
            LoopItem::CostlyDiscardRepack => "costly-discard-repack",
            LoopItem::EdgeDomination => "edge-domination",
            LoopItem::VertexDomination => "vertex-domination",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|item| item.name() == name)
    }
}

impl fmt::Display for LoopItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Operation classes that are timed separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Greedy,
    Step(LoopItem),
    LocalSearch,
    Branching,
}

impl Operation {
    pub fn name(self) -> String {
        match self {
            Operation::Greedy => "greedy".into(),
            Operation::Step(item) => item.name().into(),
            Operation::LocalSearch => "local-search".into(),
            Operation::Branching => "branching".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundImprovement {
    pub value: usize,
    pub tree_nodes: u64,
    pub elapsed_nanos: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_nanos: u64,
    /// Keyed by [`Operation::name`].
    pub by_operation: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub settings: Settings,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub total_size: usize,
    /// Ascending vertex ids.
    pub solution: Vec<VertexId>,
    pub opt_size: usize,
    /// Whether the search finished, so `opt_size` is certified minimum.
    pub optimal: bool,
    /// Whether `solution` was checked to hit every input edge.
    pub verified: bool,
    pub tree_nodes: u64,
    pub prunes_by_bound: BTreeMap<LoopItem, u64>,
    /// Branches cut because an edge lost all of its vertices.
    pub infeasible_prunes: u64,
    pub loop_iterations: u64,
    pub loop_reach_counts: BTreeMap<LoopItem, u64>,
    pub reduction_applications: BTreeMap<LoopItem, u64>,
    pub forced_by_rule: BTreeMap<LoopItem, u64>,
    pub greedy_runs: u64,
    pub upper_bound_trace: Vec<UpperBoundImprovement>,
    pub timings: Timings,
}

impl Report {
    pub(crate) fn new(
        settings: Settings,
        num_vertices: usize,
        num_edges: usize,
        total_size: usize,
    ) -> Self {
        let zeros = |items: &[LoopItem]| items.iter().map(|&i| (i, 0)).collect();
        Self {
            settings,
            num_vertices,
            num_edges,
            total_size,
            solution: Vec::new(),
            opt_size: 0,
            optimal: false,
            verified: false,
            tree_nodes: 0,
            prunes_by_bound: zeros(&LoopItem::BOUNDS),
            infeasible_prunes: 0,
            loop_iterations: 0,
            loop_reach_counts: zeros(&LoopItem::ALL),
            reduction_applications: zeros(&LoopItem::REDUCTIONS),
            forced_by_rule: zeros(&[
                LoopItem::UnitEdge,
                LoopItem::CostlyDiscardEfficiency,
                LoopItem::CostlyDiscardPackingUpdate,
                LoopItem::CostlyDiscardRepack,
            ]),
            greedy_runs: 0,
            upper_bound_trace: Vec::new(),
            timings: Timings::default(),
        }
    }

    pub fn total_prunes(&self) -> u64 {
        self.prunes_by_bound.values().sum()
    }

    /// Copy with every wall-clock field zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> Report {
        let mut copy = self.clone();
        copy.timings = Timings::default();
        for step in &mut copy.upper_bound_trace {
            step.elapsed_nanos = 0;
        }
        copy
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}
