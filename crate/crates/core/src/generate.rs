//! Instance generators.

use crate::format::InstanceFile;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("need at least one vertex and one edge")]
    Empty,
    #[error("edge sizes must satisfy 1 <= min_size <= max_size <= num_vertices")]
    BadSizes,
    #[error("the family needs n >= 1 and k >= 1")]
    BadFamily,
}

/// `m` edges, each with a size drawn uniformly from `min_size..=max_size`
/// and that many distinct vertices drawn uniformly. Deterministic per seed.
pub fn generate_random(
    n: usize,
    m: usize,
    min_size: usize,
    max_size: usize,
    seed: u64,
) -> Result<InstanceFile, GenerateError> {
    if n == 0 || m == 0 {
        return Err(GenerateError::Empty);
    }
    if min_size == 0 || min_size > max_size || max_size > n {
        return Err(GenerateError::BadSizes);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let size = rng.gen_range(min_size..=max_size);
            let mut edge: Vec<u64> = sample(&mut rng, n, size)
                .into_iter()
                .map(|v| v as u64)
                .collect();
            edge.sort_unstable();
            edge
        })
        .collect();
    Ok(InstanceFile {
        num_vertices: n,
        edges,
    })
}

/// Parametrized family separating the efficiency, packing and
/// sum-over-packing bounds.
///
/// * `n` center edges, pairwise disjoint. Center edge `i` holds hub `i` and
///   `k` private vertices of degree two.
/// * `n` right edges, each equal to the set of all hubs (hub degree `n + 1`).
/// * `k * n` left edges. Left edge `t` holds the `t`-th degree-two center
///   vertex, and every pair of left edges shares one further vertex of
///   degree two.
///
/// Vertex ids: hubs `0..n`, center vertices `n..n + kn`, pair vertices after
/// that. Edge ids: center, then right, then left.
pub fn appendix_family(k: usize, n: usize) -> Result<InstanceFile, GenerateError> {
    if k == 0 || n == 0 {
        return Err(GenerateError::BadFamily);
    }
    let left = k * n;
    let hub = |i: usize| i as u64;
    let center_vertex = |t: usize| (n + t) as u64;
    let pair_base = n + left;
    // Index of the shared vertex of left edges a < b in row-major order.
    let pair = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        (pair_base + a * left - a * (a + 1) / 2 + (b - a - 1)) as u64
    };
    let num_vertices = pair_base + left * (left - 1) / 2;
    let mut edges = Vec::with_capacity(2 * n + left);
    for i in 0..n {
        let mut e = vec![hub(i)];
        e.extend((0..k).map(|j| center_vertex(i * k + j)));
        edges.push(e);
    }
    for _ in 0..n {
        edges.push((0..n).map(hub).collect());
    }
    for t in 0..left {
        let mut e = vec![center_vertex(t)];
        e.extend((0..left).filter(|&s| s != t).map(|s| pair(t, s)));
        e.sort_unstable();
        edges.push(e);
    }
    Ok(InstanceFile {
        num_vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_reproducible() {
        let a = generate_random(3, 3, 2, 2, 42).unwrap();
        assert_eq!(a, generate_random(3, 3, 2, 2, 42).unwrap());
        assert!(a.edges.iter().all(|e| e.len() == 2 && e[0] < e[1]));
        assert_ne!(
            generate_random(30, 20, 2, 5, 1).unwrap(),
            generate_random(30, 20, 2, 5, 2).unwrap()
        );
    }

    #[test]
    fn full_size_edges_equal_universe() {
        let f = generate_random(4, 5, 4, 4, 9).unwrap();
        assert!(f.edges.iter().all(|e| e == &vec![0, 1, 2, 3]));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(generate_random(0, 3, 1, 1, 0), Err(GenerateError::Empty));
        assert_eq!(generate_random(3, 3, 2, 4, 0), Err(GenerateError::BadSizes));
        assert_eq!(generate_random(3, 3, 0, 2, 0), Err(GenerateError::BadSizes));
        assert_eq!(appendix_family(0, 3), Err(GenerateError::BadFamily));
    }

    #[test]
    fn appendix_family_shape() {
        for (k, n) in [(1, 4), (2, 5), (3, 2)] {
            let f = appendix_family(k, n).unwrap();
            let h = f.to_hypergraph().unwrap();
            assert_eq!(h.num_edges(), 2 * n + k * n);
            for v in 0..n as u32 {
                assert_eq!(h.degree(v), n + 1);
            }
            for v in n as u32..h.num_vertices_total() as u32 {
                assert_eq!(h.degree(v), 2, "vertex {v}");
            }
            // Center edges are pairwise disjoint.
            let centers: Vec<Vec<u32>> = (0..n as u32).map(|f| h.edge(f).collect()).collect();
            for (i, a) in centers.iter().enumerate() {
                assert_eq!(a.len(), k + 1);
                for b in &centers[i + 1..] {
                    assert!(a.iter().all(|x| !b.contains(x)));
                }
            }
            // Each left edge meets every other left edge and exactly one center edge.
            for t in 0..(k * n) as u32 {
                let l: Vec<u32> = h.edge(2 * n as u32 + t).collect();
                let touching = centers
                    .iter()
                    .filter(|c| c.iter().any(|x| l.contains(x)))
                    .count();
                assert_eq!(touching, 1);
                for s in 0..(k * n) as u32 {
                    if s != t {
                        assert!(h.edge(2 * n as u32 + s).any(|x| l.contains(&x)));
                    }
                }
            }
        }
    }
}
