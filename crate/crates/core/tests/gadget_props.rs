use std::collections::BTreeSet;

use altfree_core::gadgets::{
    circular_intervals, equivalent_orders, has_structure, is_circular_run, normalize_to_structure,
    two_interval_blocks, two_intervals, BlockList,
};
use altfree_core::oracle::{for_each_free_ordering, random_edge, random_order, seeded_rng};
use altfree_core::pattern::alternation_count;
use altfree_core::{Hypergraph, PatternSpec, Vertex, VertexOrder};
use rand::Rng;

fn free_orderings(h: &Hypergraph, spec: PatternSpec) -> BTreeSet<Vec<Vertex>> {
    let mut out = BTreeSet::new();
    for_each_free_ordering(h, spec, 10, |seq| {
        out.insert(seq.to_vec());
        true
    })
    .unwrap();
    out
}

fn is_linear_run(seq: &[Vertex], set: &[Vertex]) -> bool {
    let hits: Vec<usize> = (0..seq.len()).filter(|&i| set.contains(&seq[i])).collect();
    hits.windows(2).all(|w| w[1] == w[0] + 1)
}

fn complement(n: u32, s: &[Vertex]) -> Vec<Vertex> {
    (1..=n).filter(|v| !s.contains(v)).collect()
}

#[test]
fn circular_interval_free_orderings_are_one_class() {
    for n in 4..=6 {
        let free = free_orderings(&circular_intervals(n), PatternSpec::ABAB);
        let class: BTreeSet<Vec<Vertex>> = equivalent_orders(&VertexOrder::identity(n))
            .map(VertexOrder::into_vec)
            .collect();
        assert_eq!(class.len(), 2 * n as usize);
        assert_eq!(free, class, "N={n}");
    }
}

#[test]
fn two_interval_free_orderings_are_monotone() {
    let free = free_orderings(&two_intervals(7), PatternSpec::ABABA);
    let id = VertexOrder::identity(7);
    let want: BTreeSet<Vec<Vertex>> = [id.clone().into_vec(), id.reversed().into_vec()].into();
    assert_eq!(free, want);
}

#[test]
fn small_two_interval_counts_are_stable() {
    // below seven vertices the free orderings are not forced to be monotone
    let counts: Vec<usize> = (4..=6)
        .map(|n| free_orderings(&two_intervals(n), PatternSpec::ABABA).len())
        .collect();
    for (n, &c) in (4..=6).zip(&counts) {
        assert!(c >= 2, "N={n} lost the monotone orderings");
    }
    assert!(counts[0] > 2);
}

#[test]
fn complement_pairs_force_a_circular_run() {
    let mut rng = seeded_rng(0x5eed_0002);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(3..=6);
        let s = random_edge(&mut rng, n, 1, n as usize - 1);
        let sc = complement(n, &s);
        let mut edges = vec![s.clone(), sc.clone()];
        for _ in 0..rng.gen_range(0..=4) {
            edges.push(random_edge(&mut rng, n, 1, n as usize));
        }
        let h = Hypergraph::merged(n, edges).unwrap();
        for seq in free_orderings(&h, PatternSpec::ABAB) {
            assert!(
                is_linear_run(&seq, &s) || is_linear_run(&seq, &sc),
                "S={s:?} split in {seq:?}"
            );
        }
        checked += 1;
    }
}

#[test]
fn circular_run_never_joins_a_pattern() {
    let mut rng = seeded_rng(0x5eed_0003);
    let mut hits = 0;
    for _ in 0..3000 {
        let n = rng.gen_range(3..=9);
        let order = random_order(&mut rng, n);
        let s = random_edge(&mut rng, n, 1, n as usize - 1);
        if !is_circular_run(&order, &s) {
            continue;
        }
        hits += 1;
        let sc = complement(n, &s);
        for _ in 0..10 {
            let e = random_edge(&mut rng, n, 1, n as usize);
            assert!(alternation_count(&order, &s, &e) <= 3);
            assert!(alternation_count(&order, &sc, &e) <= 3);
        }
    }
    assert!(hits > 100);
}

#[test]
fn two_interval_blocks_force_block_order() {
    let blocks = BlockList::new(vec![
        vec![1, 2],
        vec![3],
        vec![4],
        vec![5],
        vec![6],
        vec![7],
        vec![8, 9],
    ])
    .unwrap();
    let h = Hypergraph::merged(9, two_interval_blocks(&blocks)).unwrap();
    let free = free_orderings(&h, PatternSpec::ABABA);
    // 2 directions times 2 orders inside each of the two doubleton blocks
    assert_eq!(free.len(), 8);
    for seq in free {
        let o = VertexOrder::new(seq).unwrap();
        assert!(has_structure(&o, &blocks) || has_structure(&o.reversed(), &blocks));
        assert_eq!(
            normalize_to_structure(&o, &blocks).map(|n| has_structure(&n, &blocks)),
            Ok(true)
        );
    }
}
