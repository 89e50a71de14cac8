//! Mutable hypergraph with journaled, reversible deletions.
//!
//! Both directions of the incidence relation are kept as
//! [`OrderedSubsetList`]s so every vertex list and edge list stays sorted
//! without ever being copied. All modifications go through one shared
//! journal and are undone strictly LIFO via [`Hypergraph::rollback_to`].

use crate::subset_list::OrderedSubsetList;
use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("empty edge: instance infeasible (edge {edge})")]
    EmptyEdge { edge: usize },
    #[error("vertex id out of range: edge {edge} position {position} has id {vertex}, but there are only {num_vertices} vertices")]
    VertexOutOfRange {
        edge: usize,
        position: usize,
        vertex: u64,
        num_vertices: usize,
    },
    #[error("too many vertices or edges for 32-bit ids")]
    TooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Change {
    DiscardVertex(VertexId),
    DeleteEdge(EdgeId),
}

/// Position in the journal; obtained from [`Hypergraph::mark`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mark(usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    edge_vertices: Vec<OrderedSubsetList>,
    vertex_edges: Vec<OrderedSubsetList>,
    // edge_cross[f][p]: position of f inside vertex_edges[v], where v is the
    // vertex at position p of edge f. vertex_cross is the mirror image.
    edge_cross: Vec<Vec<u32>>,
    vertex_cross: Vec<Vec<u32>>,
    active_vertices: OrderedSubsetList,
    active_edges: OrderedSubsetList,
    vertex_alive: Vec<bool>,
    edge_alive: Vec<bool>,
    total_size: usize,
    journal: Vec<Change>,
}

impl Hypergraph {
    /// Builds an instance over vertices `0..num_vertices`.
    ///
    /// Duplicate vertices within an edge are collapsed; duplicate edges are
    /// kept. An empty edge makes the instance infeasible and is rejected.
    pub fn build<E, I>(num_vertices: usize, edges: E) -> Result<Self, BuildError>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = u64>,
    {
        if num_vertices > u32::MAX as usize - 1 {
            return Err(BuildError::TooLarge);
        }
        let mut members: Vec<Vec<u32>> = Vec::new();
        for (edge, vertices) in edges.into_iter().enumerate() {
            let mut list = Vec::new();
            for (position, vertex) in vertices.into_iter().enumerate() {
                if vertex >= num_vertices as u64 {
                    return Err(BuildError::VertexOutOfRange {
                        edge,
                        position,
                        vertex,
                        num_vertices,
                    });
                }
                list.push(vertex as u32);
            }
            if list.is_empty() {
                return Err(BuildError::EmptyEdge { edge });
            }
            list.sort_unstable();
            list.dedup();
            members.push(list);
        }
        if members.len() > u32::MAX as usize - 1 {
            return Err(BuildError::TooLarge);
        }
        Ok(Self::from_sorted_members(num_vertices, members))
    }

    fn from_sorted_members(num_vertices: usize, members: Vec<Vec<u32>>) -> Self {
        let num_edges = members.len();
        let mut incident: Vec<Vec<u32>> = vec![Vec::new(); num_vertices];
        let mut edge_cross: Vec<Vec<u32>> = Vec::with_capacity(num_edges);
        // Edges are visited in ascending id order, so each incidence list is
        // built already sorted.
        for (f, vertices) in members.iter().enumerate() {
            let mut cross = Vec::with_capacity(vertices.len());
            for &v in vertices {
                cross.push(incident[v as usize].len() as u32);
                incident[v as usize].push(f as u32);
            }
            edge_cross.push(cross);
        }
        let mut vertex_cross: Vec<Vec<u32>> =
            incident.iter().map(|edges| vec![0; edges.len()]).collect();
        for (f, vertices) in members.iter().enumerate() {
            for (p, &v) in vertices.iter().enumerate() {
                vertex_cross[v as usize][edge_cross[f][p] as usize] = p as u32;
            }
        }
        let total_size = members.iter().map(Vec::len).sum();
        Self {
            edge_vertices: members.into_iter().map(OrderedSubsetList::new).collect(),
            vertex_edges: incident.into_iter().map(OrderedSubsetList::new).collect(),
            edge_cross,
            vertex_cross,
            active_vertices: OrderedSubsetList::full(num_vertices),
            active_edges: OrderedSubsetList::full(num_edges),
            vertex_alive: vec![true; num_vertices],
            edge_alive: vec![true; num_edges],
            total_size,
            journal: Vec::new(),
        }
    }

    /// Size of the original vertex universe.
    pub fn num_vertices_total(&self) -> usize {
        self.vertex_alive.len()
    }

    /// Size of the original edge family.
    pub fn num_edges_total(&self) -> usize {
        self.edge_alive.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.active_vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.active_edges.len()
    }

    /// Sum of the sizes of all active edges.
    pub fn total_size(&self) -> usize {
        self.total_size
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.active_vertices.iter()
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + '_ {
        self.active_edges.iter()
    }

    /// Active vertices of edge `f`, ascending.
    pub fn edge(&self, f: EdgeId) -> impl DoubleEndedIterator<Item = VertexId> + '_ {
        self.edge_vertices[f as usize].iter()
    }

    /// Active edges containing `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> impl DoubleEndedIterator<Item = EdgeId> + '_ {
        self.vertex_edges[v as usize].iter()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_edges[v as usize].len()
    }

    pub fn edge_size(&self, f: EdgeId) -> usize {
        self.edge_vertices[f as usize].len()
    }

    pub fn is_vertex_active(&self, v: VertexId) -> bool {
        self.vertex_alive[v as usize]
    }

    pub fn is_edge_active(&self, f: EdgeId) -> bool {
        self.edge_alive[f as usize]
    }

    /// Highest degree among active vertices, 0 if there are none.
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Whether some active edge has lost all its vertices.
    pub fn has_empty_edge(&self) -> bool {
        self.edges().any(|f| self.edge_size(f) == 0)
    }

    /// Removes `v` from the instance, shrinking every edge it belongs to.
    pub fn discard_vertex(&mut self, v: VertexId) {
        assert!(self.vertex_alive[v as usize], "vertex {v} is not active");
        let vi = v as usize;
        for (pos, f) in self.vertex_edges[vi].iter_entries() {
            let p = self.vertex_cross[vi][pos] as usize;
            self.edge_vertices[f as usize].delete(p);
        }
        self.total_size -= self.vertex_edges[vi].len();
        self.active_vertices.delete(vi);
        self.vertex_alive[vi] = false;
        self.journal.push(Change::DiscardVertex(v));
    }

    /// Removes edge `f`, dropping it from the edge list of each member.
    pub fn delete_edge(&mut self, f: EdgeId) {
        assert!(self.edge_alive[f as usize], "edge {f} is not active");
        let fi = f as usize;
        for (pos, v) in self.edge_vertices[fi].iter_entries() {
            let p = self.edge_cross[fi][pos] as usize;
            self.vertex_edges[v as usize].delete(p);
        }
        self.total_size -= self.edge_vertices[fi].len();
        self.active_edges.delete(fi);
        self.edge_alive[fi] = false;
        self.journal.push(Change::DeleteEdge(f));
    }

    /// Takes `v` into the solution: every edge it hits is deleted, then `v`.
    pub fn select_vertex(&mut self, v: VertexId) {
        assert!(self.vertex_alive[v as usize], "vertex {v} is not active");
        while let Some((_, f)) = self.vertex_edges[v as usize].first() {
            self.delete_edge(f);
        }
        self.discard_vertex(v);
    }

    pub fn mark(&self) -> Mark {
        Mark(self.journal.len())
    }

    /// Undoes every change made after `mark` was taken.
    ///
    /// Panics if the journal was already rolled back past `mark`.
    pub fn rollback_to(&mut self, mark: Mark) {
        assert!(
            mark.0 <= self.journal.len(),
            "stale journal mark {} (journal length {})",
            mark.0,
            self.journal.len()
        );
        while self.journal.len() > mark.0 {
            match self.journal.pop().unwrap() {
                Change::DiscardVertex(v) => {
                    let vi = v as usize;
                    self.vertex_alive[vi] = true;
                    self.active_vertices.undo();
                    self.total_size += self.vertex_edges[vi].len();
                    for (pos, f) in self.vertex_edges[vi].iter_entries().rev() {
                        let restored = self.edge_vertices[f as usize].undo();
                        debug_assert_eq!(restored, self.vertex_cross[vi][pos] as usize);
                    }
                }
                Change::DeleteEdge(f) => {
                    let fi = f as usize;
                    self.edge_alive[fi] = true;
                    self.active_edges.undo();
                    self.total_size += self.edge_vertices[fi].len();
                    for (pos, v) in self.edge_vertices[fi].iter_entries().rev() {
                        let restored = self.vertex_edges[v as usize].undo();
                        debug_assert_eq!(restored, self.edge_cross[fi][pos] as usize);
                    }
                }
            }
        }
    }

    /// Active edges with their active vertices, in ascending edge order.
    pub fn active_edge_lists(&self) -> Vec<(EdgeId, Vec<VertexId>)> {
        self.edges().map(|f| (f, self.edge(f).collect())).collect()
    }

    /// Whether `solution` hits every active edge.
    pub fn is_hitting_set(&self, solution: &[VertexId]) -> bool {
        let mut chosen = vec![false; self.num_vertices_total()];
        for &v in solution {
            if let Some(slot) = chosen.get_mut(v as usize) {
                *slot = true;
            }
        }
        self.edges()
            .all(|f| self.edge(f).any(|v| chosen[v as usize]))
    }
}
