//! Branch-and-bound driver.
//!
//! Each search node runs the greedy upper bound, then a loop that evaluates
//! the lower bounds (pruning when `picked + bound >= best`) and tries the
//! reductions in a fixed cheap-to-expensive order, restarting from the top
//! after every successful reduction. When nothing applies, the node branches
//! on a highest-degree vertex, inclusion first.

use crate::bounds::{
    build_packing, efficiency_bound, greedy_upper_bound, local_search_improve, max_degree_bound,
    sum_degree_bound, sum_over_packing_bound,
};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::reductions::{
    costly_discard_efficiency, costly_discard_packing_update, costly_discard_repack,
    edge_domination_rule, unit_edge_rule, vertex_domination_rule, ReductionOutcome,
};
use crate::report::{LoopItem, Operation, Report, UpperBoundImprovement};
use log::{debug, info};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GreedyMode {
    Off,
    OncePerNode,
    EveryLoop,
    BeforeExpensive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalSearch {
    Off,
    OnPacking,
    OnSumOverPacking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    pub repack_count: usize,
    pub greedy_mode: GreedyMode,
    pub enabled_bounds: BTreeSet<LoopItem>,
    pub enabled_reductions: BTreeSet<LoopItem>,
    pub local_search: LocalSearch,
    pub inclusion_first: bool,
    pub time_limit_secs: Option<f64>,
    pub rng_seed: u64,
}

impl Eq for Settings {}

impl Default for Settings {
    fn default() -> Self {
        Self {
            repack_count: 3,
            greedy_mode: GreedyMode::OncePerNode,
            enabled_bounds: LoopItem::BOUNDS.into_iter().collect(),
            enabled_reductions: LoopItem::REDUCTIONS.into_iter().collect(),
            local_search: LocalSearch::Off,
            inclusion_first: true,
            time_limit_secs: None,
            rng_seed: 0,
        }
    }
}

impl Settings {
    /// Pure branching: no lower bounds, no reductions.
    pub fn bare() -> Self {
        Self {
            enabled_bounds: BTreeSet::new(),
            enabled_reductions: BTreeSet::new(),
            ..Self::default()
        }
    }

    fn enabled(&self, item: LoopItem) -> bool {
        if item.is_bound() {
            self.enabled_bounds.contains(&item)
        } else {
            self.enabled_reductions.contains(&item)
        }
    }
}

/// Hooks into the search, used by tests to audit pruning decisions.
pub trait SearchObserver {
    /// Called when `bound` cuts the current node, before its state is undone.
    fn on_prune(&mut self, _inst: &Hypergraph, _picked: usize, _best: usize, _bound: LoopItem) {}
}

impl SearchObserver for () {}

/// `picked + bound >= best`.
pub fn prune_check(picked: usize, bound: usize, best: usize) -> bool {
    picked.saturating_add(bound) >= best
}

/// An active vertex of maximum degree, lowest id on ties. `None` when no
/// active vertex has positive degree.
pub fn select_branching_vertex(inst: &Hypergraph) -> Option<VertexId> {
    let mut best: Option<(usize, VertexId)> = None;
    for v in inst.vertices() {
        let d = inst.degree(v);
        if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.map(|(_, v)| v)
}

enum Step {
    Prune,
    Reduced,
    Exhausted,
}

struct Search<'a, O: SearchObserver> {
    inst: &'a mut Hypergraph,
    settings: &'a Settings,
    observer: &'a mut O,
    report: Report,
    partial: Vec<VertexId>,
    best: Vec<VertexId>,
    best_size: usize,
    has_incumbent: bool,
    start: Instant,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<O: SearchObserver> Search<'_, O> {
    fn time<T>(&mut self, op: Operation, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        *self
            .report
            .timings
            .by_operation
            .entry(op.name())
            .or_default() += start.elapsed().as_nanos() as u64;
        out
    }

    fn incumbent_for_rules(&self) -> usize {
        if self.has_incumbent {
            self.best_size
        } else {
            usize::MAX
        }
    }

    fn record_solution(&mut self, solution: Vec<VertexId>) {
        debug_assert!(solution.len() < self.best_size);
        self.best_size = solution.len();
        self.best = solution;
        self.has_incumbent = true;
        debug!("new upper bound {}", self.best_size);
        self.report.upper_bound_trace.push(UpperBoundImprovement {
            value: self.best_size,
            tree_nodes: self.report.tree_nodes,
            elapsed_nanos: self.start.elapsed().as_nanos() as u64,
        });
    }

    fn run_greedy(&mut self) {
        if self.inst.num_edges() == 0 {
            return;
        }
        self.report.greedy_runs += 1;
        let greedy = self.time(Operation::Greedy, |s| greedy_upper_bound(s.inst));
        if self.partial.len() + greedy.len() < self.best_size {
            let mut solution = self.partial.clone();
            solution.extend(greedy);
            self.record_solution(solution);
        }
    }

    fn reach(&mut self, item: LoopItem) -> bool {
        if !self.settings.enabled(item) {
            return false;
        }
        *self.report.loop_reach_counts.entry(item).or_default() += 1;
        true
    }

    fn try_prune(&mut self, item: LoopItem, bound: usize) -> bool {
        if prune_check(self.partial.len(), bound, self.best_size) {
            *self.report.prunes_by_bound.entry(item).or_default() += 1;
            self.observer
                .on_prune(self.inst, self.partial.len(), self.best_size, item);
            true
        } else {
            false
        }
    }

    fn note_reduction(&mut self, outcome: &ReductionOutcome) -> bool {
        if !outcome.applied {
            return false;
        }
        *self
            .report
            .reduction_applications
            .entry(outcome.rule)
            .or_default() += 1;
        if !outcome.forced_vertices.is_empty() {
            *self.report.forced_by_rule.entry(outcome.rule).or_default() +=
                outcome.forced_vertices.len() as u64;
        }
        true
    }

    fn loop_step(&mut self) -> Step {
        use LoopItem::*;
        self.report.loop_iterations += 1;

        if self.reach(MaxDegree) {
            let b = self.time(Operation::Step(MaxDegree), |s| max_degree_bound(s.inst));
            if self.try_prune(MaxDegree, b) {
                return Step::Prune;
            }
        }

        let efficiency = if self.settings.enabled(Efficiency)
            || self.settings.enabled(CostlyDiscardEfficiency)
        {
            Some(self.time(Operation::Step(Efficiency), |s| efficiency_bound(s.inst)))
        } else {
            None
        };
        if self.reach(Efficiency) {
            let b = efficiency.as_ref().unwrap().value;
            if self.try_prune(Efficiency, b) {
                return Step::Prune;
            }
        }

        let needs_packing = self.settings.enabled(Packing)
            || self.settings.enabled(SumOverPacking)
            || self.settings.enabled(CostlyDiscardPackingUpdate);
        let mut packing: Option<crate::bounds::Packing> = None;
        if needs_packing {
            let mut p = self.time(Operation::Step(Packing), |s| build_packing(s.inst));
            if self.settings.local_search == LocalSearch::OnPacking {
                p = self.time(Operation::LocalSearch, |s| local_search_improve(s.inst, &p));
            }
            packing = Some(p);
        }
        if self.reach(Packing) {
            let b = packing.as_ref().unwrap().len();
            if self.try_prune(Packing, b) {
                return Step::Prune;
            }
        }
        if self.reach(SumOverPacking) {
            let base = packing.as_ref().unwrap();
            let b = if self.settings.local_search == LocalSearch::OnSumOverPacking {
                let improved = self.time(Operation::LocalSearch, |s| {
                    local_search_improve(s.inst, base)
                });
                self.time(Operation::Step(SumOverPacking), |s| {
                    sum_over_packing_bound(s.inst, &improved)
                })
            } else {
                self.time(Operation::Step(SumOverPacking), |s| {
                    sum_over_packing_bound(s.inst, base)
                })
            };
            if self.try_prune(SumOverPacking, b) {
                return Step::Prune;
            }
        }

        if self.reach(UnitEdge) {
            let res = self.time(Operation::Step(UnitEdge), |s| {
                unit_edge_rule(s.inst, &mut s.partial)
            });
            match res {
                Err(_) => {
                    self.report.infeasible_prunes += 1;
                    return Step::Prune;
                }
                Ok(out) => {
                    if self.note_reduction(&out) {
                        return Step::Reduced;
                    }
                }
            }
        }

        let picked = self.partial.len();
        let best = self.incumbent_for_rules();
        if self.reach(CostlyDiscardEfficiency) {
            let eff = efficiency.as_ref().unwrap();
            let out = self.time(Operation::Step(CostlyDiscardEfficiency), |s| {
                costly_discard_efficiency(s.inst, eff, picked, best, &mut s.partial)
            });
            if self.note_reduction(&out) {
                return Step::Reduced;
            }
        }
        if self.reach(CostlyDiscardPackingUpdate) {
            let p = packing.as_ref().unwrap();
            let out = self.time(Operation::Step(CostlyDiscardPackingUpdate), |s| {
                costly_discard_packing_update(s.inst, p, picked, best, &mut s.partial)
            });
            if self.note_reduction(&out) {
                return Step::Reduced;
            }
        }

        if self.settings.greedy_mode == GreedyMode::BeforeExpensive {
            self.run_greedy();
            if self.settings.enabled(MaxDegree)
                && self.try_prune(MaxDegree, max_degree_bound(self.inst))
            {
                return Step::Prune;
            }
        }
        let best = self.incumbent_for_rules();

        if self.reach(CostlyDiscardRepack) {
            let c = self.settings.repack_count;
            let out = self.time(Operation::Step(CostlyDiscardRepack), |s| {
                costly_discard_repack(s.inst, picked, best, c, &mut s.partial)
            });
            if self.note_reduction(&out) {
                return Step::Reduced;
            }
        }
        if self.reach(EdgeDomination) {
            let out = self.time(Operation::Step(EdgeDomination), |s| {
                edge_domination_rule(s.inst)
            });
            if self.note_reduction(&out) {
                return Step::Reduced;
            }
        }
        if self.reach(VertexDomination) {
            let out = self.time(Operation::Step(VertexDomination), |s| {
                vertex_domination_rule(s.inst)
            });
            if self.note_reduction(&out) {
                return Step::Reduced;
            }
        }
        Step::Exhausted
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out && self.report.tree_nodes.is_multiple_of(64) {
            if let Some(deadline) = self.deadline {
                self.timed_out = Instant::now() >= deadline;
            }
        }
        self.timed_out
    }

    fn node(&mut self) {
        if self.out_of_time() {
            return;
        }
        self.report.tree_nodes += 1;
        let mark = self.inst.mark();
        let picked_before = self.partial.len();
        self.expand();
        self.inst.rollback_to(mark);
        self.partial.truncate(picked_before);
    }

    fn expand(&mut self) {
        if self.settings.greedy_mode == GreedyMode::OncePerNode {
            self.run_greedy();
        }
        while self.inst.num_edges() > 0 {
            if self.settings.greedy_mode == GreedyMode::EveryLoop {
                self.run_greedy();
            }
            match self.loop_step() {
                Step::Prune => return,
                Step::Reduced => continue,
                Step::Exhausted => break,
            }
        }
        if self.inst.num_edges() == 0 {
            if self.partial.len() < self.best_size {
                let solution = self.partial.clone();
                self.record_solution(solution);
            }
            return;
        }
        let start = Instant::now();
        let v = select_branching_vertex(self.inst).expect("non-empty edges have vertices");
        *self
            .report
            .timings
            .by_operation
            .entry(Operation::Branching.name())
            .or_default() += start.elapsed().as_nanos() as u64;
        if self.settings.inclusion_first {
            self.include(v);
            self.exclude(v);
        } else {
            self.exclude(v);
            self.include(v);
        }
    }

    fn include(&mut self, v: VertexId) {
        let mark = self.inst.mark();
        self.inst.select_vertex(v);
        self.partial.push(v);
        self.node();
        self.partial.pop();
        self.inst.rollback_to(mark);
    }

    fn exclude(&mut self, v: VertexId) {
        let mark = self.inst.mark();
        self.inst.discard_vertex(v);
        if self
            .inst
            .incident_edges(v)
            .any(|f| self.inst.edge_size(f) == 0)
        {
            self.report.infeasible_prunes += 1;
        } else {
            self.node();
        }
        self.inst.rollback_to(mark);
    }
}

/// Finds a minimum hitting set of the active part of `inst`.
///
/// The instance is left exactly as it was passed in. On timeout the report
/// carries the best solution found and `optimal == false`.
pub fn solve(inst: &mut Hypergraph, settings: &Settings) -> Report {
    solve_with_observer(inst, settings, &mut ())
}

pub fn solve_with_observer<O: SearchObserver>(
    inst: &mut Hypergraph,
    settings: &Settings,
    observer: &mut O,
) -> Report {
    let start = Instant::now();
    let report = Report::new(
        settings.clone(),
        inst.num_vertices(),
        inst.num_edges(),
        inst.total_size(),
    );
    let entry_mark = inst.mark();
    let mut search = Search {
        best_size: inst.num_vertices() + 1,
        inst,
        settings,
        observer,
        report,
        partial: Vec::new(),
        best: Vec::new(),
        has_incumbent: false,
        start,
        deadline: settings
            .time_limit_secs
            .map(|secs| start + Duration::from_secs_f64(secs.max(0.0))),
        timed_out: false,
    };
    if search.inst.has_empty_edge() {
        // Unreachable for instances from `Hypergraph::build`.
        search.report.infeasible_prunes += 1;
    } else {
        search.node();
    }
    let Search {
        inst,
        mut report,
        mut best,
        timed_out,
        mut has_incumbent,
        ..
    } = search;
    debug_assert_eq!(inst.mark(), entry_mark);
    if timed_out && !has_incumbent && !inst.has_empty_edge() {
        // Stopped before the root greedy ran: still hand back a solution.
        best = greedy_upper_bound(inst);
        has_incumbent = true;
    }
    best.sort_unstable();
    report.verified = has_incumbent && inst.is_hitting_set(&best);
    report.opt_size = best.len();
    report.solution = best;
    report.optimal = has_incumbent && !timed_out;
    report.timings.wall_nanos = start.elapsed().as_nanos() as u64;
    info!(
        "solved: size {} optimal {} nodes {} in {:?}",
        report.opt_size,
        report.optimal,
        report.tree_nodes,
        start.elapsed()
    );
    report
}

/// All five lower bounds of the current instance, by name. The sum-degree
/// bound is not part of the reduction loop and only shows up here.
pub fn root_lower_bounds(inst: &Hypergraph) -> [(String, usize); 5] {
    let packing = build_packing(inst);
    [
        ("max-degree".into(), max_degree_bound(inst)),
        ("sum-degree".into(), sum_degree_bound(inst)),
        ("efficiency".into(), efficiency_bound(inst).value),
        ("packing".into(), packing.len()),
        (
            "sum-over-packing".into(),
            sum_over_packing_bound(inst, &packing),
        ),
    ]
}
