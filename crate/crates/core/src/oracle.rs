//! Exhaustive minimum hitting set for small instances.

use crate::hypergraph::{Hypergraph, VertexId};
use thiserror::Error;

pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {vertices} active vertices, above the oracle cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("instance contains an empty edge and has no hitting set")]
    Infeasible,
}

/// Minimum hitting set of the active part of `inst` by enumerating vertex
/// subsets in order of increasing size. Refuses instances with more than
/// `cap` active vertices (`cap` is clamped to 63).
pub fn brute_force(inst: &Hypergraph, cap: usize) -> Result<(usize, Vec<VertexId>), OracleError> {
    let vertices: Vec<VertexId> = inst.vertices().collect();
    let cap = cap.min(63);
    if vertices.len() > cap {
        return Err(OracleError::TooLarge {
            vertices: vertices.len(),
            cap,
        });
    }
    let mut bit = vec![0u64; inst.num_vertices_total()];
    for (i, &v) in vertices.iter().enumerate() {
        bit[v as usize] = 1 << i;
    }
    let masks: Vec<u64> = inst
        .edges()
        .map(|f| inst.edge(f).fold(0, |m, v| m | bit[v as usize]))
        .collect();
    if masks.contains(&0) {
        return Err(OracleError::Infeasible);
    }
    let n = vertices.len() as u32;
    for k in 0..=n {
        if let Some(set) = first_hitting_subset(&masks, n, k) {
            let chosen = (0..n)
                .filter(|&i| set & (1 << i) != 0)
                .map(|i| vertices[i as usize])
                .collect();
            return Ok((k as usize, chosen));
        }
    }
    unreachable!("the full vertex set hits every non-empty edge")
}

/// Smallest (in colex order) `k`-subset of `0..n` hitting every mask.
fn first_hitting_subset(masks: &[u64], n: u32, k: u32) -> Option<u64> {
    let hits = |set: u64| masks.iter().all(|&m| m & set != 0);
    if k == 0 {
        return hits(0).then_some(0);
    }
    let limit = 1u64 << n;
    let mut set = (1u64 << k) - 1;
    while set < limit {
        if hits(set) {
            return Some(set);
        }
        // Gosper's hack: next integer with the same popcount.
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(n: usize, edges: &[&[u64]]) -> Hypergraph {
        Hypergraph::build(n, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let t = build(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let (size, set) = brute_force(&t, DEFAULT_CAP).unwrap();
        assert_eq!(size, 2);
        assert!(t.is_hitting_set(&set));
        let star = build(4, &[&[0, 1], &[0, 2], &[0, 3]]);
        assert_eq!(brute_force(&star, DEFAULT_CAP).unwrap(), (1, vec![0]));
        let empty = Hypergraph::build(0, Vec::<Vec<u64>>::new()).unwrap();
        assert_eq!(brute_force(&empty, DEFAULT_CAP).unwrap(), (0, vec![]));
    }

    #[test]
    fn oracle_refuses_large_and_infeasible() {
        let big = Hypergraph::build(21, vec![vec![0u64, 20]]).unwrap();
        assert!(matches!(
            brute_force(&big, DEFAULT_CAP),
            Err(OracleError::TooLarge { .. })
        ));
        let mut h = build(2, &[&[0], &[1]]);
        h.discard_vertex(0);
        assert_eq!(brute_force(&h, DEFAULT_CAP), Err(OracleError::Infeasible));
    }

    #[test]
    fn oracle_respects_discarded_vertices() {
        let mut h = build(3, &[&[0, 1], &[0, 2]]);
        h.discard_vertex(0);
        assert_eq!(brute_force(&h, DEFAULT_CAP).unwrap(), (2, vec![1, 2]));
    }
}
