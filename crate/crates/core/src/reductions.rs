//! Reduction rules. Every modification goes through the instance journal, so
//! the caller can undo a rule application by rolling back to a mark.

use crate::bounds::{build_packing, Efficiency, Packing};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::report::LoopItem;
use crate::settrie::SetTrie;
use thiserror::Error;

/// What a single rule invocation did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub rule: LoopItem,
    pub applied: bool,
    /// Vertices the rule put into the partial solution.
    pub forced_vertices: Vec<VertexId>,
    pub deleted_edges: Vec<EdgeId>,
    pub discarded_vertices: Vec<VertexId>,
}

impl ReductionOutcome {
    fn none(rule: LoopItem) -> Self {
        Self {
            rule,
            applied: false,
            forced_vertices: Vec::new(),
            deleted_edges: Vec::new(),
            discarded_vertices: Vec::new(),
        }
    }

    fn forced(rule: LoopItem, forced_vertices: Vec<VertexId>) -> Self {
        Self {
            applied: !forced_vertices.is_empty(),
            forced_vertices,
            ..Self::none(rule)
        }
    }
}

/// The current branch contains an edge with no vertices left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("edge {edge} is empty; the branch has no hitting set")]
pub struct Infeasible {
    pub edge: EdgeId,
}

fn force(inst: &mut Hypergraph, partial: &mut Vec<VertexId>, vertices: &[VertexId]) {
    for &v in vertices {
        inst.select_vertex(v);
        partial.push(v);
    }
}

/// Picks the vertex of the first edge of size one, if any.
pub fn unit_edge_rule(
    inst: &mut Hypergraph,
    partial: &mut Vec<VertexId>,
) -> Result<ReductionOutcome, Infeasible> {
    let mut unit = None;
    for f in inst.edges() {
        match inst.edge_size(f) {
            0 => return Err(Infeasible { edge: f }),
            1 if unit.is_none() => unit = inst.edge(f).next(),
            _ => {}
        }
    }
    Ok(match unit {
        Some(v) => {
            force(inst, partial, &[v]);
            ReductionOutcome::forced(LoopItem::UnitEdge, vec![v])
        }
        None => ReductionOutcome::none(LoopItem::UnitEdge),
    })
}

/// Deletes every edge that is a superset of another edge. Among identical
/// edges the one with the lowest id survives.
pub fn edge_domination_rule(inst: &mut Hypergraph) -> ReductionOutcome {
    let mut order: Vec<(usize, EdgeId)> = inst.edges().map(|f| (inst.edge_size(f), f)).collect();
    order.sort_unstable();
    let mut trie = SetTrie::new();
    let mut buf = Vec::new();
    let mut dominated = Vec::new();
    for (_, f) in order {
        buf.clear();
        buf.extend(inst.edge(f));
        if trie.has_subset(&buf) {
            dominated.push(f);
        } else {
            trie.add(&buf);
        }
    }
    for &f in &dominated {
        inst.delete_edge(f);
    }
    ReductionOutcome {
        applied: !dominated.is_empty(),
        deleted_edges: dominated,
        ..ReductionOutcome::none(LoopItem::EdgeDomination)
    }
}

/// Discards every vertex whose edge set is contained in that of a kept
/// vertex, as well as every vertex of degree zero.
pub fn vertex_domination_rule(inst: &mut Hypergraph) -> ReductionOutcome {
    let mut order: Vec<(std::cmp::Reverse<usize>, VertexId)> = inst
        .vertices()
        .map(|v| (std::cmp::Reverse(inst.degree(v)), v))
        .collect();
    order.sort_unstable();
    let mut trie = SetTrie::new();
    let mut buf = Vec::new();
    let mut dominated = Vec::new();
    for (std::cmp::Reverse(degree), v) in order {
        if degree == 0 {
            dominated.push(v);
            continue;
        }
        buf.clear();
        buf.extend(inst.incident_edges(v));
        if trie.has_superset(&buf) {
            dominated.push(v);
        } else {
            trie.add(&buf);
        }
    }
    for &v in &dominated {
        inst.discard_vertex(v);
    }
    ReductionOutcome {
        applied: !dominated.is_empty(),
        discarded_vertices: dominated,
        ..ReductionOutcome::none(LoopItem::VertexDomination)
    }
}

fn reaches(picked: usize, bound: usize, best: usize) -> bool {
    best != usize::MAX && picked.saturating_add(bound) >= best
}

/// Forces every vertex whose removal lifts the efficiency bound so that
/// `picked + bound >= best`. `efficiency` must describe the current instance.
pub fn costly_discard_efficiency(
    inst: &mut Hypergraph,
    efficiency: &Efficiency,
    picked: usize,
    best: usize,
    partial: &mut Vec<VertexId>,
) -> ReductionOutcome {
    if best == usize::MAX {
        return ReductionOutcome::none(LoopItem::CostlyDiscardEfficiency);
    }
    let qualifying: Vec<VertexId> = inst
        .vertices()
        .filter(|&v| inst.degree(v) > 0)
        .filter(|&v| reaches(picked, efficiency.without_vertex(inst, v), best))
        .collect();
    force(inst, partial, &qualifying);
    ReductionOutcome::forced(LoopItem::CostlyDiscardEfficiency, qualifying)
}

/// Forces every vertex `v` for which the packing, grown by the edges blocked
/// by `v`, reaches `best - picked`. `packing` must describe the current
/// instance; it is not modified.
pub fn costly_discard_packing_update(
    inst: &mut Hypergraph,
    packing: &Packing,
    picked: usize,
    best: usize,
    partial: &mut Vec<VertexId>,
) -> ReductionOutcome {
    if best == usize::MAX {
        return ReductionOutcome::none(LoopItem::CostlyDiscardPackingUpdate);
    }
    let mut scratch = vec![false; inst.num_vertices_total()];
    let qualifying: Vec<VertexId> = inst
        .vertices()
        .filter(|&v| !packing.blocked_by(v).is_empty())
        .filter(|&v| reaches(picked, packing.grown_without(inst, v, &mut scratch), best))
        .collect();
    force(inst, partial, &qualifying);
    ReductionOutcome::forced(LoopItem::CostlyDiscardPackingUpdate, qualifying)
}

/// The `count` active vertices of highest degree (ties by lower id).
pub fn highest_degree_vertices(inst: &Hypergraph, count: usize) -> Vec<VertexId> {
    let mut order: Vec<(std::cmp::Reverse<usize>, VertexId)> = inst
        .vertices()
        .filter(|&v| inst.degree(v) > 0)
        .map(|v| (std::cmp::Reverse(inst.degree(v)), v))
        .collect();
    let count = count.min(order.len());
    if count == 0 {
        return Vec::new();
    }
    order.select_nth_unstable(count - 1);
    order.truncate(count);
    order.sort_unstable();
    order.into_iter().map(|(_, v)| v).collect()
}

/// Probes the `count` highest-degree vertices: each is discarded, a fresh
/// packing is built, and the vertex is forced if that packing reaches
/// `best - picked`. The instance is rolled back after every probe.
pub fn costly_discard_repack(
    inst: &mut Hypergraph,
    picked: usize,
    best: usize,
    count: usize,
    partial: &mut Vec<VertexId>,
) -> ReductionOutcome {
    if best == usize::MAX || count == 0 {
        return ReductionOutcome::none(LoopItem::CostlyDiscardRepack);
    }
    let mut qualifying = Vec::new();
    for v in highest_degree_vertices(inst, count) {
        let mark = inst.mark();
        inst.discard_vertex(v);
        let emptied = inst.incident_edges(v).any(|f| inst.edge_size(f) == 0);
        let bound = if emptied {
            usize::MAX
        } else {
            build_packing(inst).len()
        };
        inst.rollback_to(mark);
        if reaches(picked, bound, best) {
            qualifying.push(v);
        }
    }
    force(inst, partial, &qualifying);
    ReductionOutcome::forced(LoopItem::CostlyDiscardRepack, qualifying)
}
