//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Run with `--nocapture` to see the lines.

mod common;

use common::{corpus, oracle};
use hsbb_core::bounds::{
    build_packing, efficiency_bound, greedy_upper_bound, max_degree_bound, packing_bound,
    sum_degree_bound, sum_over_packing_bound, Packing,
};
use hsbb_core::generate::{appendix_family, generate_random};
use hsbb_core::reductions::{
    costly_discard_efficiency, costly_discard_packing_update, costly_discard_repack,
    edge_domination_rule, unit_edge_rule, vertex_domination_rule, ReductionOutcome,
};
use hsbb_core::settrie::SetTrie;
use hsbb_core::subset_list::OrderedSubsetList;
use hsbb_core::{solve, Hypergraph, LoopItem, Settings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const CORPUS_SIZE: u64 = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn build(n: usize, edges: &[&[u64]]) -> Hypergraph {
    Hypergraph::build(n, edges.iter().map(|e| e.iter().copied())).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut unverified = 0;
    for (i, mut h) in corpus(CORPUS_SIZE).into_iter().enumerate() {
        let expected = oracle(&h);
        let r = solve(&mut h, &Settings::default());
        if r.opt_size != expected || !r.optimal {
            mismatches += 1;
            eprintln!("instance {i}: solver {} oracle {expected}", r.opt_size);
        }
        if !r.verified {
            unverified += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && unverified == 0 && elapsed < Duration::from_secs(60),
        format!("{CORPUS_SIZE} instances, {mismatches} mismatches, {unverified} unverified, {elapsed:.2?}"),
    )
}

fn bound_soundness() -> Outcome {
    let mut violations = 0;
    for (i, mut h) in corpus(CORPUS_SIZE).into_iter().enumerate() {
        let opt = oracle(&h);
        let packing = build_packing(&h);
        let lower = [
            max_degree_bound(&h),
            sum_degree_bound(&h),
            efficiency_bound(&h).value,
            packing_bound(&packing),
            sum_over_packing_bound(&h, &packing),
        ];
        let greedy = greedy_upper_bound(&mut h);
        if lower.iter().any(|&b| b > opt) || greedy.len() < opt || !h.is_hitting_set(&greedy) {
            violations += 1;
            eprintln!(
                "instance {i}: opt {opt} lower {lower:?} greedy {}",
                greedy.len()
            );
        }
    }
    outcome(violations == 0, format!("{violations} violations"))
}

fn bound_hierarchy() -> Outcome {
    let mut violations = 0;
    for (i, h) in corpus(CORPUS_SIZE).into_iter().enumerate() {
        let md = max_degree_bound(&h);
        let sd = sum_degree_bound(&h);
        let eff = efficiency_bound(&h).value;
        let p = build_packing(&h);
        let sop = sum_over_packing_bound(&h, &p);
        let sop_empty = sum_over_packing_bound(&h, &Packing::empty(&h));
        if !(sd >= md && eff >= sd && sop >= p.len() && sop_empty == sd) {
            violations += 1;
            eprintln!(
                "instance {i}: md {md} sd {sd} eff {eff} |p| {} sop {sop} sop(empty) {sop_empty}",
                p.len()
            );
        }
    }
    outcome(violations == 0, format!("{violations} violations"))
}

fn incomparability_witnesses() -> Outcome {
    let mut notes = Vec::new();
    let triangle = build(3, &[&[0, 1], &[0, 2], &[1, 2]]);
    let tri_packing = build_packing(&triangle).len();
    let tri_md = max_degree_bound(&triangle);
    let tri_ok = tri_packing == 1 && tri_md == 2;
    notes.push(format!(
        "triangle packing {tri_packing} max-degree {tri_md}"
    ));

    let n = 50;
    let k1 = appendix_family(1, n).unwrap().to_hypergraph().unwrap();
    let centers = Packing::from_edges(&k1, (0..n as u32).collect());
    let disjoint = {
        let mut seen = BTreeSet::new();
        centers
            .edges()
            .iter()
            .all(|&f| k1.edge(f).all(|v| seen.insert(v)))
    };
    let k1_eff = efficiency_bound(&k1).value;
    let k1_ok = disjoint && centers.len() == n && k1_eff < n;
    notes.push(format!(
        "k=1 efficiency {k1_eff} center packing {}",
        centers.len()
    ));

    let k2 = appendix_family(2, n).unwrap().to_hypergraph().unwrap();
    let p2 = build_packing(&k2);
    let k2_sop = sum_over_packing_bound(&k2, &p2);
    let k2_eff = efficiency_bound(&k2).value;
    let k2_ok = k2_sop <= n && n < k2_eff;
    notes.push(format!("k=2 sum-over-packing {k2_sop} efficiency {k2_eff}"));

    outcome(tri_ok && k1_ok && k2_ok, notes.join("; "))
}

/// Applies one rule to a copy of `h` and returns the number of forced
/// vertices together with the reduced instance.
fn apply_rule(
    h: &Hypergraph,
    rule: LoopItem,
    best: usize,
) -> (usize, Hypergraph, ReductionOutcome) {
    let mut r = h.clone();
    let mut partial = Vec::new();
    let out = match rule {
        LoopItem::UnitEdge => unit_edge_rule(&mut r, &mut partial).expect("no empty edges"),
        LoopItem::EdgeDomination => edge_domination_rule(&mut r),
        LoopItem::VertexDomination => vertex_domination_rule(&mut r),
        LoopItem::CostlyDiscardEfficiency => {
            let eff = efficiency_bound(&r);
            costly_discard_efficiency(&mut r, &eff, 0, best, &mut partial)
        }
        LoopItem::CostlyDiscardPackingUpdate => {
            let p = build_packing(&r);
            costly_discard_packing_update(&mut r, &p, 0, best, &mut partial)
        }
        LoopItem::CostlyDiscardRepack => costly_discard_repack(&mut r, 0, best, 3, &mut partial),
        _ => unreachable!("not a reduction"),
    };
    (partial.len(), r, out)
}

fn reduction_safety() -> Outcome {
    let mut violations = 0;
    let mut applied = [0usize; 6];
    // The corpus has no edges of size one; variants with vertex 0 discarded
    // exercise the unit edge rule as well.
    let mut instances = Vec::new();
    for h in corpus(CORPUS_SIZE) {
        let mut variant = h.clone();
        variant.discard_vertex(0);
        instances.push(h);
        if !variant.has_empty_edge() {
            instances.push(variant);
        }
    }
    for (i, h) in instances.into_iter().enumerate() {
        let opt = oracle(&h);
        for (j, rule) in LoopItem::REDUCTIONS.into_iter().enumerate() {
            let (forced, mut reduced, out) = apply_rule(&h, rule, opt + 1);
            applied[j] += out.applied as usize;
            let re = solve(&mut reduced, &Settings::default());
            if forced + re.opt_size != opt || !re.optimal {
                violations += 1;
                eprintln!(
                    "instance {i} rule {rule}: {forced} + {} != {opt}",
                    re.opt_size
                );
            }
        }
    }
    let counts: Vec<String> = LoopItem::REDUCTIONS
        .iter()
        .zip(applied)
        .map(|(r, c)| format!("{r} {c}"))
        .collect();
    outcome(
        violations == 0,
        format!("{violations} violations; applied: {}", counts.join(", ")),
    )
}

fn data_structure_fuzzing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // Ordered subset list against snapshots taken at every mark.
    let mut ops = 0usize;
    let mut list_failures = 0;
    while ops < 100_000 {
        let n = rng.gen_range(1..=64);
        let mut list = OrderedSubsetList::full(n);
        let mut marks: Vec<(usize, OrderedSubsetList)> = Vec::new();
        for _ in 0..500 {
            ops += 1;
            match rng.gen_range(0..10) {
                0..=5 if !list.is_empty() => {
                    let alive: Vec<usize> = list.iter_positions().collect();
                    list.delete(alive[rng.gen_range(0..alive.len())]);
                }
                6 | 7 => marks.push((list.num_deleted(), list.clone())),
                8 if list.num_deleted() > 0 => {
                    list.undo();
                    while marks.last().is_some_and(|(m, _)| *m > list.num_deleted()) {
                        marks.pop();
                    }
                }
                _ => {
                    if let Some((m, snapshot)) = marks.pop() {
                        while list.num_deleted() > m {
                            list.undo();
                        }
                        if list != snapshot {
                            list_failures += 1;
                        }
                    }
                }
            }
        }
        while let Some((m, snapshot)) = marks.pop() {
            while list.num_deleted() > m {
                list.undo();
            }
            list_failures += (list != snapshot) as usize;
        }
    }
    // Set trie against a naive scan.
    let mut queries = 0usize;
    let mut trie_failures = 0;
    let random_set = |rng: &mut ChaCha8Rng, universe: u32| -> Vec<u32> {
        let size = rng.gen_range(0..=6);
        let set: BTreeSet<u32> = (0..size).map(|_| rng.gen_range(0..universe)).collect();
        set.into_iter().collect()
    };
    while queries < 10_000 {
        let universe = rng.gen_range(1..=16);
        let stored: Vec<Vec<u32>> = (0..rng.gen_range(0..40))
            .map(|_| random_set(&mut rng, universe))
            .collect();
        let mut trie = SetTrie::new();
        for s in &stored {
            trie.add(s);
        }
        for _ in 0..50 {
            let q = random_set(&mut rng, universe);
            let sub = stored.iter().any(|s| s.iter().all(|x| q.contains(x)));
            let sup = stored.iter().any(|s| q.iter().all(|x| s.contains(x)));
            trie_failures += (trie.has_subset(&q) != sub) as usize;
            trie_failures += (trie.has_superset(&q) != sup) as usize;
            queries += 2;
        }
    }
    outcome(
        list_failures == 0 && trie_failures == 0,
        format!("{ops} list ops, {list_failures} failures; {queries} trie queries, {trie_failures} disagreements"),
    )
}

fn incremental_equals_scratch() -> Outcome {
    let mut checked = 0;
    let mut mismatches = 0;
    for mut h in corpus(CORPUS_SIZE) {
        let eff = efficiency_bound(&h);
        let vertices: Vec<u32> = h.vertices().collect();
        for v in vertices {
            let incremental = eff.without_vertex(&h, v);
            let mark = h.mark();
            h.discard_vertex(v);
            let scratch = efficiency_bound(&h).value;
            h.rollback_to(mark);
            checked += 1;
            mismatches += (incremental != scratch) as usize;
        }
    }
    outcome(
        mismatches == 0,
        format!("{checked} vertices, {mismatches} mismatches"),
    )
}

fn ablation() -> Outcome {
    let all = Settings::default();
    let only_max_degree = Settings {
        enabled_bounds: [LoopItem::MaxDegree].into_iter().collect(),
        ..Settings::default()
    };
    let singles: Vec<Settings> = LoopItem::BOUNDS
        .into_iter()
        .map(|b| Settings {
            enabled_bounds: [b].into_iter().collect(),
            ..Settings::default()
        })
        .collect();
    let (mut not_worse, mut total_all, mut total_md, mut opt_mismatch) = (0, 0u64, 0u64, 0);
    const INSTANCES: u64 = 50;
    for seed in 0..INSTANCES {
        let mut h = generate_random(40, 200, 2, 5, 8_000 + seed)
            .unwrap()
            .to_hypergraph()
            .unwrap();
        let a = solve(&mut h, &all);
        let b = solve(&mut h, &only_max_degree);
        total_all += a.tree_nodes;
        total_md += b.tree_nodes;
        not_worse += (a.tree_nodes <= b.tree_nodes) as u64;
        let mut opts = vec![a.opt_size, b.opt_size];
        opts.extend(singles.iter().map(|s| solve(&mut h, s).opt_size));
        opt_mismatch += opts.iter().any(|&o| o != a.opt_size) as u64;
    }
    let share = not_worse as f64 / INSTANCES as f64;
    outcome(
        share >= 0.9 && total_all <= total_md && opt_mismatch == 0,
        format!(
            "{not_worse}/{INSTANCES} instances not worse, nodes {total_all} vs {total_md}, {opt_mismatch} opt mismatches"
        ),
    )
}

fn determinism() -> Outcome {
    let mut differing = 0;
    let settings = Settings {
        rng_seed: 17,
        ..Settings::default()
    };
    for seed in 0..20 {
        let file = generate_random(40, 200, 2, 5, seed).unwrap();
        let mut a = file.to_hypergraph().unwrap();
        let mut b = file.to_hypergraph().unwrap();
        let ra = solve(&mut a, &settings).without_timings().to_json();
        let rb = solve(&mut b, &settings).without_timings().to_json();
        differing += (ra != rb) as usize;
    }
    for mut h in corpus(50) {
        let ra = solve(&mut h, &settings).without_timings().to_json();
        let rb = solve(&mut h, &settings).without_timings().to_json();
        differing += (ra != rb) as usize;
    }
    outcome(
        differing == 0,
        format!("70 instance pairs, {differing} differing reports"),
    )
}

fn performance() -> Outcome {
    let limit = Duration::from_secs(300);
    let mut h = generate_random(1000, 5000, 2, 10, 0)
        .unwrap()
        .to_hypergraph()
        .unwrap();
    let settings = Settings {
        time_limit_secs: Some(limit.as_secs_f64()),
        ..Settings::default()
    };
    let start = Instant::now();
    let r = solve(&mut h, &settings);
    let elapsed = start.elapsed();
    let pruning = r.prunes_by_bound.values().filter(|&&c| c > 0).count();
    let root = hsbb_core::solver::root_lower_bounds(&h);
    let root_best = root.iter().map(|(_, b)| *b).max().unwrap_or(0);
    outcome(
        r.optimal && elapsed < limit && pruning >= 2,
        format!(
            "optimal {} in {elapsed:.1?}, best {} vs root lower bound {root_best}, {} nodes, {pruning} bounds pruned",
            r.optimal, r.opt_size, r.tree_nodes
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("bound soundness", bound_soundness),
        ("bound hierarchy", bound_hierarchy),
        ("incomparability witnesses", incomparability_witnesses),
        ("reduction safety", reduction_safety),
        ("data-structure fuzzing", data_structure_fuzzing),
        ("incremental equals scratch", incremental_equals_scratch),
        ("ablation monotonicity", ablation),
        ("determinism", determinism),
        ("performance smoke", performance),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
