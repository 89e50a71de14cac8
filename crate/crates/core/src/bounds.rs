//! Upper and lower bounds on the size of a minimum hitting set.
//!
//! Every lower bound here returns 0 on an instance without edges and
//! [`INFEASIBLE`] when some active edge is empty.

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Bound value reported for instances that contain an empty edge.
pub const INFEASIBLE: usize = usize::MAX;

/// Vertices bucketed by current degree, with O(1) decrement and amortized
/// O(1) extraction of a maximum-degree vertex.
#[derive(Debug, Clone)]
pub struct DegreeBuckets {
    buckets: Vec<Vec<VertexId>>,
    position: Vec<u32>,
    degree: Vec<u32>,
    max: usize,
}

impl DegreeBuckets {
    pub fn new(inst: &Hypergraph) -> Self {
        let max = inst.max_degree();
        let mut buckets = vec![Vec::new(); max + 1];
        let mut position = vec![u32::MAX; inst.num_vertices_total()];
        let mut degree = vec![0; inst.num_vertices_total()];
        for v in inst.vertices() {
            let d = inst.degree(v);
            position[v as usize] = buckets[d].len() as u32;
            degree[v as usize] = d as u32;
            buckets[d].push(v);
        }
        Self {
            buckets,
            position,
            degree,
            max,
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v as usize] as usize
    }

    fn unlink(&mut self, v: VertexId) {
        let d = self.degree[v as usize] as usize;
        let pos = self.position[v as usize] as usize;
        let bucket = &mut self.buckets[d];
        bucket.swap_remove(pos);
        if let Some(&moved) = bucket.get(pos) {
            self.position[moved as usize] = pos as u32;
        }
        self.position[v as usize] = u32::MAX;
    }

    /// Lowers the degree of `v` by one.
    pub fn decrement(&mut self, v: VertexId) {
        debug_assert!(self.position[v as usize] != u32::MAX);
        self.unlink(v);
        let d = self.degree[v as usize] as usize - 1;
        self.degree[v as usize] = d as u32;
        self.position[v as usize] = self.buckets[d].len() as u32;
        self.buckets[d].push(v);
    }

    pub fn remove(&mut self, v: VertexId) {
        if self.position[v as usize] != u32::MAX {
            self.unlink(v);
        }
    }

    /// Removes and returns a vertex of maximum positive degree.
    pub fn pop_max(&mut self) -> Option<VertexId> {
        while self.max > 0 && self.buckets[self.max].is_empty() {
            self.max -= 1;
        }
        if self.max == 0 {
            return None;
        }
        let v = self.buckets[self.max].pop()?;
        self.position[v as usize] = u32::MAX;
        Some(v)
    }
}

/// Greedy hitting set: repeatedly take a vertex of highest degree.
///
/// The instance is modified through its journal and rolled back before
/// returning. The instance must not contain empty edges.
pub fn greedy_upper_bound(inst: &mut Hypergraph) -> Vec<VertexId> {
    let mark = inst.mark();
    let mut buckets = DegreeBuckets::new(inst);
    let mut solution = Vec::new();
    while let Some(v) = buckets.pop_max() {
        for f in inst.incident_edges(v) {
            for u in inst.edge(f) {
                if u != v {
                    buckets.decrement(u);
                }
            }
        }
        inst.select_vertex(v);
        solution.push(v);
    }
    debug_assert_eq!(inst.num_edges(), 0, "greedy left edges unhit");
    inst.rollback_to(mark);
    solution
}

/// `ceil(|H| / d_max)`.
pub fn max_degree_bound(inst: &Hypergraph) -> usize {
    let m = inst.num_edges();
    if m == 0 {
        return 0;
    }
    let d_max = inst.max_degree();
    if d_max == 0 {
        return INFEASIBLE;
    }
    m.div_ceil(d_max)
}

/// `degree_counts[d]` = number of active vertices with degree `d`.
fn degree_histogram(inst: &Hypergraph) -> Vec<usize> {
    let mut counts = vec![0usize; inst.max_degree() + 1];
    for v in inst.vertices() {
        counts[inst.degree(v)] += 1;
    }
    counts
}

/// Fewest values from the multiset described by `counts` (taken largest
/// first) whose sum reaches `target`; `None` if even all of them fall short.
fn fewest_reaching(counts: &[usize], target: usize) -> Option<usize> {
    let mut remaining = target;
    let mut k = 0;
    for d in (1..counts.len()).rev() {
        if remaining == 0 {
            break;
        }
        let take = counts[d].min(remaining.div_ceil(d));
        k += take;
        remaining = remaining.saturating_sub(take * d);
    }
    (remaining == 0).then_some(k)
}

/// Smallest `k` such that the `k` largest degrees sum to at least `|H|`.
pub fn sum_degree_bound(inst: &Hypergraph) -> usize {
    if inst.num_edges() == 0 {
        return 0;
    }
    fewest_reaching(&degree_histogram(inst), inst.num_edges()).unwrap_or(INFEASIBLE)
}

/// The two highest-degree vertices of an edge, as `(vertex, degree)`.
///
/// Ties in degree are broken by lower vertex id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TopTwo {
    pub first: Option<(VertexId, u32)>,
    pub second: Option<(VertexId, u32)>,
}

impl TopTwo {
    fn of(inst: &Hypergraph, f: EdgeId) -> Self {
        let mut top = TopTwo::default();
        for v in inst.edge(f) {
            let d = inst.degree(v) as u32;
            match top.first {
                Some((_, d1)) if d <= d1 => {
                    if top.second.is_none_or(|(_, d2)| d > d2) {
                        top.second = Some((v, d));
                    }
                }
                _ => {
                    top.second = top.first;
                    top.first = Some((v, d));
                }
            }
        }
        top
    }
}

/// Efficiency bound together with the per-edge records needed to evaluate
/// it on `inst - v` for every vertex `v` without recomputation.
#[derive(Debug, Clone)]
pub struct Efficiency {
    pub value: usize,
    // Number of active edges whose highest vertex degree is d.
    max_degree_counts: Vec<u64>,
    approx_sum: f64,
    has_empty_edge: bool,
    /// Indexed by edge id; only entries of active edges are meaningful.
    pub top_two: Vec<TopTwo>,
}

const AMBIGUITY: f64 = 1e-7;

/// `ceil(sum_d counts[d] / d)`, exact even when the sum is (nearly) integral.
fn ceil_reciprocal_sum(counts: &[u64], approx: f64) -> usize {
    let nearest = approx.round();
    if (approx - nearest).abs() > AMBIGUITY {
        return approx.ceil() as usize;
    }
    let mut whole: u64 = 0;
    let mut frac = BigRational::from_integer(BigInt::from(0));
    for (d, &c) in counts.iter().enumerate().skip(1) {
        if c == 0 {
            continue;
        }
        whole += c / d as u64;
        let rem = c % d as u64;
        if rem != 0 {
            frac += BigRational::new(BigInt::from(rem), BigInt::from(d as u64));
        }
    }
    let frac_ceil = frac.ceil().to_integer().to_u64().expect("fraction fits");
    (whole + frac_ceil) as usize
}

fn reciprocal_sum(counts: &[u64]) -> f64 {
    counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, &c)| c as f64 / d as f64)
        .sum()
}

/// `ceil(sum over edges of min over its vertices of 1 / deg)`.
pub fn efficiency_bound(inst: &Hypergraph) -> Efficiency {
    let mut top_two = vec![TopTwo::default(); inst.num_edges_total()];
    let mut counts = vec![0u64; inst.max_degree() + 1];
    let mut has_empty_edge = false;
    for f in inst.edges() {
        let top = TopTwo::of(inst, f);
        match top.first {
            Some((_, d)) => counts[d as usize] += 1,
            None => has_empty_edge = true,
        }
        top_two[f as usize] = top;
    }
    let approx_sum = reciprocal_sum(&counts);
    let value = if has_empty_edge {
        INFEASIBLE
    } else {
        ceil_reciprocal_sum(&counts, approx_sum)
    };
    Efficiency {
        value,
        max_degree_counts: counts,
        approx_sum,
        has_empty_edge,
        top_two,
    }
}

impl Efficiency {
    /// Efficiency bound of `inst - v`, derived from the stored records in
    /// `O(deg(v))` (plus an exact fallback when the sum is near-integral).
    ///
    /// Only edges whose top-degree vertex is `v` change their contribution.
    pub fn without_vertex(&self, inst: &Hypergraph, v: VertexId) -> usize {
        if self.has_empty_edge {
            return INFEASIBLE;
        }
        let mut deltas: Vec<(usize, i64)> = Vec::new();
        for f in inst.incident_edges(v) {
            let top = self.top_two[f as usize];
            let Some((first, d1)) = top.first else {
                continue;
            };
            if first != v {
                continue;
            }
            match top.second {
                None => return INFEASIBLE,
                Some((_, d2)) if d2 != d1 => {
                    deltas.push((d1 as usize, -1));
                    deltas.push((d2 as usize, 1));
                }
                Some(_) => {}
            }
        }
        if deltas.is_empty() {
            return self.value;
        }
        let approx: f64 = self.approx_sum
            + deltas
                .iter()
                .map(|&(d, c)| c as f64 / d as f64)
                .sum::<f64>();
        let nearest = approx.round();
        if (approx - nearest).abs() > AMBIGUITY {
            return approx.ceil() as usize;
        }
        let mut counts = self.max_degree_counts.clone();
        for (d, c) in deltas {
            counts[d] = (counts[d] as i64 + c) as u64;
        }
        ceil_reciprocal_sum(&counts, approx)
    }
}

/// A set of pairwise vertex-disjoint active edges, plus for every vertex the
/// edges that meet the packing's vertex union in exactly that vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    edges: Vec<EdgeId>,
    covered: Vec<bool>,
    blocked_by: Vec<Vec<EdgeId>>,
}

impl Packing {
    /// Packing consisting of the given edges, which must be pairwise disjoint
    /// active edges of `inst`.
    pub fn from_edges(inst: &Hypergraph, edges: Vec<EdgeId>) -> Self {
        let n = inst.num_vertices_total();
        let mut covered = vec![false; n];
        let mut in_packing = vec![false; inst.num_edges_total()];
        for &f in &edges {
            in_packing[f as usize] = true;
            for v in inst.edge(f) {
                debug_assert!(!covered[v as usize], "packing edges overlap");
                covered[v as usize] = true;
            }
        }
        let mut blocked_by: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        let mut keyed: Vec<Vec<(u32, EdgeId)>> = vec![Vec::new(); n];
        for f in inst.edges() {
            if in_packing[f as usize] {
                continue;
            }
            let mut blocker = None;
            let mut hits = 0;
            let mut other_max = 0u32;
            for v in inst.edge(f) {
                if covered[v as usize] {
                    hits += 1;
                    blocker = Some(v);
                    if hits > 1 {
                        break;
                    }
                }
            }
            if hits != 1 {
                continue;
            }
            let blocker = blocker.unwrap();
            for v in inst.edge(f) {
                if v != blocker {
                    other_max = other_max.max(inst.degree(v) as u32);
                }
            }
            keyed[blocker as usize].push((other_max, f));
        }
        for (v, mut list) in keyed.into_iter().enumerate() {
            if list.is_empty() {
                continue;
            }
            // Descending by highest other degree, then ascending edge id.
            list.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            blocked_by[v] = list.into_iter().map(|(_, f)| f).collect();
        }
        Self {
            edges,
            covered,
            blocked_by,
        }
    }

    pub fn empty(inst: &Hypergraph) -> Self {
        Self::from_edges(inst, Vec::new())
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether `v` lies in some packing edge.
    pub fn is_covered(&self, v: VertexId) -> bool {
        self.covered[v as usize]
    }

    /// Edges whose intersection with the packing union is exactly `{v}`.
    pub fn blocked_by(&self, v: VertexId) -> &[EdgeId] {
        &self.blocked_by[v as usize]
    }

    /// Size of this packing grown greedily by the edges blocked by `v`,
    /// i.e. a packing of `inst - v`. `scratch` must be all-false on entry
    /// and is left all-false.
    pub fn grown_without(&self, inst: &Hypergraph, v: VertexId, scratch: &mut [bool]) -> usize {
        let mut added: Vec<EdgeId> = Vec::new();
        for &f in self.blocked_by(v) {
            if inst.edge(f).all(|u| u == v || !scratch[u as usize]) {
                for u in inst.edge(f) {
                    if u != v {
                        scratch[u as usize] = true;
                    }
                }
                added.push(f);
            }
        }
        for &f in &added {
            for u in inst.edge(f) {
                scratch[u as usize] = false;
            }
        }
        self.edges.len() + added.len()
    }
}

/// Greedy packing: edges ascending by the sum of their vertex degrees (ties
/// by edge id), each taken if it is disjoint from those taken so far.
pub fn build_packing(inst: &Hypergraph) -> Packing {
    let mut order: Vec<(usize, EdgeId)> = inst
        .edges()
        .map(|f| (inst.edge(f).map(|v| inst.degree(v)).sum(), f))
        .collect();
    order.sort_unstable();
    let mut marked = vec![false; inst.num_vertices_total()];
    let mut edges = Vec::new();
    for (_, f) in order {
        if inst.edge(f).all(|v| !marked[v as usize]) {
            for v in inst.edge(f) {
                marked[v as usize] = true;
            }
            edges.push(f);
        }
    }
    Packing::from_edges(inst, edges)
}

pub fn packing_bound(packing: &Packing) -> usize {
    packing.len()
}

/// Packing bound strengthened by a sum-degree argument on the edges outside
/// the packing.
///
/// Covering the packing takes `|P|` vertices, which together hit at most
/// `b_P = sum over e in P of max deg(v) - 1` further edges. The remainder of
/// `H \ P` needs the fewest additional vertices whose degrees in `H \ P`
/// (skipping the top vertex of each packing edge) reach the shortfall.
pub fn sum_over_packing_bound(inst: &Hypergraph, packing: &Packing) -> usize {
    if inst.num_edges() == 0 {
        return 0;
    }
    let mut excluded = vec![false; inst.num_vertices_total()];
    let mut covered_elsewhere: usize = 0;
    for &f in packing.edges() {
        // Highest degree, lowest id on ties.
        let top = inst
            .edge(f)
            .map(|v| (inst.degree(v), std::cmp::Reverse(v)))
            .max();
        if let Some((d, std::cmp::Reverse(v))) = top {
            covered_elsewhere += d - 1;
            excluded[v as usize] = true;
        }
    }
    let rest = inst.num_edges() - packing.len();
    if covered_elsewhere >= rest {
        return packing.len();
    }
    let mut counts = vec![0usize; inst.max_degree() + 1];
    for v in inst.vertices() {
        if excluded[v as usize] {
            continue;
        }
        let d = inst.degree(v) - usize::from(packing.is_covered(v));
        counts[d] += 1;
    }
    match fewest_reaching(&counts, rest - covered_elsewhere) {
        Some(k) => packing.len() + k,
        None => INFEASIBLE,
    }
}

/// 2-improvement local search: repeatedly replace one packing edge by two
/// disjoint edges that conflict with nothing else in the packing, and add
/// any edge that became conflict-free. Each pass costs `O(|P| * ||H||)`.
pub fn local_search_improve(inst: &Hypergraph, packing: &Packing) -> Packing {
    let n = inst.num_vertices_total();
    let mut edges = packing.edges().to_vec();
    loop {
        // owner[v]: index into `edges` of the packing edge containing v.
        let mut owner = vec![u32::MAX; n];
        let mut in_packing = vec![false; inst.num_edges_total()];
        for (i, &f) in edges.iter().enumerate() {
            in_packing[f as usize] = true;
            for v in inst.edge(f) {
                owner[v as usize] = i as u32;
            }
        }
        let mut free: Vec<EdgeId> = Vec::new();
        let mut tight: Vec<Vec<EdgeId>> = vec![Vec::new(); edges.len()];
        for f in inst.edges() {
            if in_packing[f as usize] {
                continue;
            }
            let mut only = None;
            let mut conflicts = 0;
            for v in inst.edge(f) {
                let o = owner[v as usize];
                if o != u32::MAX && only != Some(o) {
                    conflicts += 1;
                    only = Some(o);
                    if conflicts > 1 {
                        break;
                    }
                }
            }
            match (conflicts, only) {
                (0, _) => free.push(f),
                (1, Some(o)) => tight[o as usize].push(f),
                _ => {}
            }
        }
        if let Some(&f) = free.first() {
            edges.push(f);
            continue;
        }
        let mut improved = false;
        let mut mark = vec![false; n];
        'outer: for (i, candidates) in tight.iter().enumerate() {
            for (a, &e1) in candidates.iter().enumerate() {
                for v in inst.edge(e1) {
                    mark[v as usize] = true;
                }
                let partner = candidates[a + 1..]
                    .iter()
                    .copied()
                    .find(|&e2| inst.edge(e2).all(|v| !mark[v as usize]));
                for v in inst.edge(e1) {
                    mark[v as usize] = false;
                }
                if let Some(e2) = partner {
                    edges.swap_remove(i);
                    edges.push(e1);
                    edges.push(e2);
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            break;
        }
    }
    edges.sort_unstable();
    Packing::from_edges(inst, edges)
}
