//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use altfree::clock::solve_timed;
use altfree::corpus::{complete_graph, cycle, small_hypergraphs};
use altfree_core::gadgets::{circular_intervals, is_circular_run, two_intervals};
use altfree_core::oracle::{
    brute_free_ordering, brute_two_colorable, for_each_free_ordering, naive_pattern_search,
    random_3uniform, random_edge, random_hypergraph, random_order, seeded_rng, RandomSpec,
};
use altfree_core::pattern::{find_pattern_witness, is_free_ordering, max_pair_alternation};
use altfree_core::reduction::{
    apex_augment, coloring_from_ordering, lift_ht, ordering_from_coloring, reduce_2col_to_abab,
};
use altfree_core::solver::{count_free_orderings, solve};
use altfree_core::{
    BlockRole, Budget, Color, Coloring, Family, Hypergraph, Instance, PatternSpec, SolveStatus,
    SourceHypergraph3, Vertex, VertexOrder,
};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn complement(n: u32, s: &[Vertex]) -> Vec<Vertex> {
    (1..=n).filter(|v| !s.contains(v)).collect()
}

fn free_set(h: &Hypergraph, spec: PatternSpec) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for_each_free_ordering(h, spec, 10, |seq| {
        out.push(seq.to_vec());
        true
    })
    .expect("within the enumeration cap");
    out
}

fn exists_free(h: &Hypergraph, spec: PatternSpec) -> bool {
    brute_free_ordering(h, spec)
        .expect("within the enumeration cap")
        .is_some()
}

fn circular_counts() -> Check {
    let mut got = Vec::new();
    for n in 4..=6u32 {
        let c = count_free_orderings(&circular_intervals(n), PatternSpec::ABAB).unwrap();
        ensure(c == 2 * n as u64, || {
            format!("N={n}: {c} free orderings, want {}", 2 * n)
        })?;
        got.push(format!("N={n}:{c}"));
    }
    Ok(got.join(" "))
}

fn two_interval_count() -> Check {
    let h = two_intervals(7);
    let c = count_free_orderings(&h, PatternSpec::ABABA).unwrap();
    ensure(c == 2, || format!("{c} ABABA-free orderings, want 2"))?;
    let id = VertexOrder::identity(7);
    let want = vec![id.clone().into_vec(), id.reversed().into_vec()];
    let free = free_set(&h, PatternSpec::ABABA);
    ensure(free == want, || format!("free orderings {free:?}"))?;
    Ok("2 orderings: identity and its reverse".into())
}

fn checker_agreement() -> Check {
    let mut rng = seeded_rng(0xacce_0003);
    let cases = 5000;
    let mut positive = 0;
    for i in 0..cases {
        let n = rng.gen_range(1..=10u32);
        let order = random_order(&mut rng, n);
        let e1 = random_edge(&mut rng, n, 1, n as usize);
        let e2 = random_edge(&mut rng, n, 1, n as usize);
        let spec = PatternSpec::new(rng.gen_range(1..=3), rng.gen_bool(0.5)).unwrap();
        let fast = find_pattern_witness(&order, &e1, &e2, spec).is_some();
        let slow = naive_pattern_search(&order, &e1, &e2, spec).is_some();
        ensure(fast == slow, || {
            format!("case {i}: order {order} e1 {e1:?} e2 {e2:?} {spec}: {fast} vs {slow}")
        })?;
        positive += fast as usize;
    }
    Ok(format!("{cases} cases agree, {positive} with a pattern"))
}

fn complement_pairs() -> Check {
    let mut rng = seeded_rng(0xacce_0004);
    let mut orderings = 0usize;
    for i in 0..200 {
        let n = rng.gen_range(3..=6u32);
        let s = random_edge(&mut rng, n, 1, n as usize - 1);
        let sc = complement(n, &s);
        let mut edges = vec![s.clone(), sc.clone()];
        for _ in 0..rng.gen_range(0..=4) {
            edges.push(random_edge(&mut rng, n, 1, n as usize));
        }
        let h = Hypergraph::merged(n, edges).unwrap();
        for seq in free_set(&h, PatternSpec::ABAB) {
            let order = VertexOrder::new(seq).unwrap();
            ensure(
                is_circular_run(&order, &s) || is_circular_run(&order, &sc),
                || format!("set {i}: S={s:?} is split in {order}"),
            )?;
            orderings += 1;
        }
    }
    Ok(format!(
        "200 sets, {orderings} free orderings, 0 violations"
    ))
}

fn random_source(seed: u64) -> SourceHypergraph3 {
    let mut rng = seeded_rng(seed);
    let n = rng.gen_range(3..=6u32);
    let max_m = (n * (n - 1) * (n - 2) / 6) as usize;
    let m = rng.gen_range(1..=5usize.min(max_m));
    random_3uniform(RandomSpec::triples(seed, n, m)).unwrap()
}

fn completeness() -> Check {
    let mut done = 0;
    let mut seed = 0xacce_0005;
    while done < 100 {
        seed += 1;
        let g = random_source(seed);
        let Some(c) = brute_two_colorable(&g).unwrap() else {
            continue;
        };
        let inst = reduce_2col_to_abab(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        let order = ordering_from_coloring(&inst, &c).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(
            is_free_ordering(&inst.hypergraph, &order, PatternSpec::ABAB).is_free(),
            || format!("seed {seed}: ordering {order} has a pattern"),
        )?;
        let back =
            coloring_from_ordering(&inst, &order).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(back == c, || {
            format!("seed {seed}: read back {back}, want {c}")
        })?;
        done += 1;
    }
    Ok("100 colorable sources certified and round-tripped".into())
}

/// Ordering laid out block by block: R-blocks by color and S-blocks by the
/// pair encoding with `t, t+3` adjacent. A monochromatic triple gets its
/// S-block increasing (red) or decreasing (blue).
fn derived_ordering(inst: &Instance, c: &Coloring) -> VertexOrder {
    let g = inst.source.as_ref().unwrap();
    let mut seq = Vec::new();
    for block in &inst.blocks {
        match block.role {
            BlockRole::R(i) => {
                let (a, b) = (block.members[0], block.members[1]);
                seq.extend(if c.get(i) == Color::Red {
                    [a, b]
                } else {
                    [b, a]
                });
            }
            BlockRole::S(j) => {
                let colors = g.triples()[j as usize - 1].map(|v| c.get(v));
                let t = block.members[0];
                if colors.iter().all(|&x| x == colors[0]) {
                    let mut s: Vec<Vertex> = (t..t + 4).collect();
                    if colors[0] == Color::Blue {
                        s.reverse();
                    }
                    seq.extend(s);
                    continue;
                }
                let layout = permutations4()
                    .into_iter()
                    .find(|p| {
                        let pos = |o: u32| p.iter().position(|&x| x == o).unwrap();
                        let adjacent = pos(0).abs_diff(pos(3)) == 1;
                        adjacent
                            && (1..=3u32).all(|rank| {
                                let off = 3 - rank;
                                (pos(off) < pos(off + 1))
                                    == (colors[rank as usize - 1] == Color::Red)
                            })
                    })
                    .expect("a proper triple has a layout");
                seq.extend(layout.iter().map(|o| t + o));
            }
            BlockRole::Apex | BlockRole::Lift => seq.extend(block.members.iter().copied()),
        }
    }
    VertexOrder::for_hypergraph(seq, &inst.hypergraph).unwrap()
}

fn permutations4() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn separator_witness(inst: &Instance, order: &VertexOrder) -> bool {
    let h = &inst.hypergraph;
    (0..h.num_edges())
        .filter(|&a| inst.families_of(a).contains(Family::Separator))
        .any(|a| {
            (0..h.num_edges()).filter(|&b| b != a).any(|b| {
                find_pattern_witness(order, h.edge(a), h.edge(b), PatternSpec::ABAB).is_some()
            })
        })
}

fn coloring_of(bits: u32, n: u32) -> Coloring {
    Coloring::new(
        (0..n)
            .map(|i| {
                if bits >> i & 1 == 0 {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect(),
    )
}

fn single_triple() -> Check {
    let g = SourceHypergraph3::new(3, vec![[1, 2, 3]]).unwrap();
    let inst = reduce_2col_to_abab(&g).unwrap();
    let mut proper = 0;
    for bits in 0..8 {
        let c = coloring_of(bits, 3);
        if !c.is_proper(&g) {
            continue;
        }
        let order = ordering_from_coloring(&inst, &c).unwrap();
        ensure(
            is_free_ordering(&inst.hypergraph, &order, PatternSpec::ABAB).is_free(),
            || format!("coloring {c}: ordering {order} has a pattern"),
        )?;
        proper += 1;
    }
    ensure(proper == 6, || format!("{proper} proper colorings, want 6"))?;
    for (seq, name) in [
        (vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10], "all red"),
        (vec![2, 1, 4, 3, 6, 5, 10, 9, 8, 7], "all blue"),
    ] {
        let order = VertexOrder::new(seq).unwrap();
        ensure(
            !is_free_ordering(&inst.hypergraph, &order, PatternSpec::ABAB).is_free(),
            || format!("{name} layout {order} accepted"),
        )?;
        ensure(separator_witness(&inst, &order), || {
            format!("{name} layout {order} has no separator-edge witness")
        })?;
    }
    Ok("6 proper colorings free, both monochromatic layouts rejected via a separator edge".into())
}

fn small_hypergraph(rng: &mut impl Rng, max_n: u32, seed: u64) -> Hypergraph {
    if rng.gen_bool(0.5) {
        return random_hypergraph(RandomSpec::hypergraph(seed, 4, 4, 2, 2)).unwrap();
    }
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=4usize.min((1 << n) - 1));
    random_hypergraph(RandomSpec::hypergraph(seed, n, m, 1, n as usize)).unwrap()
}

fn lifts() -> Check {
    let mut rng = seeded_rng(0xacce_0007);
    let ab3 = PatternSpec::new(3, false).unwrap();
    let mut odd_free = 0;
    let mut even_free = 0;
    for i in 0..50u64 {
        let h = small_hypergraph(&mut rng, 4, 0xacce_0700 + i);
        let odd = exists_free(&h, PatternSpec::ABA);
        ensure(
            odd == exists_free(&lift_ht(&h, 5), PatternSpec::ABABA),
            || {
                format!(
                    "hypergraph {i} {:?}: ABA {odd} but lift disagrees",
                    h.edges()
                )
            },
        )?;
        let even = exists_free(&h, PatternSpec::ABAB);
        ensure(even == exists_free(&lift_ht(&h, 6), ab3), || {
            format!(
                "hypergraph {i} {:?}: ABAB {even} but lift disagrees",
                h.edges()
            )
        })?;
        odd_free += odd as usize;
        even_free += even as usize;
    }
    Ok(format!(
        "50 hypergraphs agree ({odd_free} ABA-free, {even_free} ABAB-free)"
    ))
}

fn apex() -> Check {
    let mut rng = seeded_rng(0xacce_0008);
    let mut free_count = 0;
    for i in 0..50u64 {
        let seed = 0xacce_0800 + i;
        let h = if rng.gen_bool(0.5) {
            random_hypergraph(RandomSpec::hypergraph(seed, 5, 7, 2, 2)).unwrap()
        } else {
            small_hypergraph(&mut rng, 5, seed)
        };
        let free = exists_free(&h, PatternSpec::ABAB);
        ensure(
            free == exists_free(&apex_augment(&h), PatternSpec::ABAB),
            || format!("hypergraph {i} {:?}: apex changes status", h.edges()),
        )?;
        free_count += free as usize;
    }
    Ok(format!("50 hypergraphs agree ({free_count} ABAB-free)"))
}

fn outerplanar() -> Check {
    for n in 3..=8 {
        let out = solve(&cycle(n), PatternSpec::ABAB, Budget::unlimited());
        ensure(out.status == SolveStatus::Sat, || {
            format!("C{n}: {}", out.status.name())
        })?;
    }
    let out = solve(&complete_graph(4), PatternSpec::ABAB, Budget::unlimited());
    ensure(out.status == SolveStatus::Unsat, || {
        format!("K4: {}", out.status.name())
    })?;
    Ok("C3..C8 SAT, K4 UNSAT".into())
}

fn solver_corpus() -> Check {
    let corpus = small_hypergraphs(6);
    for (name, h) in &corpus {
        for spec in [PatternSpec::ABAB, PatternSpec::ABABA] {
            let count = count_free_orderings(h, spec).unwrap();
            let out = solve(h, spec, Budget::unlimited());
            let want = if count > 0 {
                SolveStatus::Sat
            } else {
                SolveStatus::Unsat
            };
            ensure(out.status == want, || {
                format!(
                    "{name} {spec}: {} but {count} free orderings",
                    out.status.name()
                )
            })?;
            if let Some(o) = &out.ordering {
                ensure(is_free_ordering(h, o, spec).is_free(), || {
                    format!("{name} {spec}: witness {o} fails the checker")
                })?;
            }
        }
    }
    Ok(format!(
        "{} instances x 2 patterns consistent",
        corpus.len()
    ))
}

fn fano() -> Check {
    let g = SourceHypergraph3::fano();
    ensure(brute_two_colorable(&g).unwrap().is_none(), || {
        "Fano plane 2-colored".into()
    })?;
    let inst = reduce_2col_to_abab(&g).unwrap();
    ensure(inst.hypergraph.n_vertices() == 42, || {
        format!("instance has N={}", inst.hypergraph.n_vertices())
    })?;
    for bits in 0..1u32 << 7 {
        let c = coloring_of(bits, 7);
        let order = derived_ordering(&inst, &c);
        ensure(
            !is_free_ordering(&inst.hypergraph, &order, PatternSpec::ABAB).is_free(),
            || format!("coloring {c}: derived ordering {order} accepted"),
        )?;
    }
    let budget = Budget {
        max_nodes: None,
        time_limit: Some(Duration::from_secs(600)),
    };
    let out = solve_timed(&inst.hypergraph, PatternSpec::ABAB, budget);
    ensure(out.status != SolveStatus::Sat, || {
        "solver claims SAT".into()
    })?;
    Ok(format!(
        "not 2-colorable, 128 derived orderings rejected, solver {} after {} nodes",
        out.status.name(),
        out.nodes_explored
    ))
}

fn performance() -> Check {
    let h = random_hypergraph(RandomSpec::hypergraph(0xacce_0012, 1000, 100, 1, 1000)).unwrap();
    let order = random_order(&mut seeded_rng(0xacce_0013), 1000);
    let start = Instant::now();
    let free = is_free_ordering(&h, &order, PatternSpec::ABAB).is_free();
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || {
        format!("took {:.3}s", t.as_secs_f64())
    })?;
    // every pair scanned, no early exit
    let start = Instant::now();
    let (most, _) = max_pair_alternation(&h, &order);
    let full = start.elapsed();
    ensure(full < Duration::from_secs(1), || {
        format!("full scan took {:.3}s", full.as_secs_f64())
    })?;
    Ok(format!(
        "N=1000 M=100 checked in {:.1}ms (free: {free}), all pairs in {:.1}ms (max count {most})",
        t.as_secs_f64() * 1e3,
        full.as_secs_f64() * 1e3
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("circular-interval counts", Some(10), circular_counts),
        ("two-interval count", Some(10), two_interval_count),
        ("checker vs naive search", Some(60), checker_agreement),
        (
            "complement pairs force circular runs",
            None,
            complement_pairs,
        ),
        ("colorings give free orderings", Some(120), completeness),
        ("single triple soundness", Some(10), single_triple),
        ("lift equivalences", Some(1800), lifts),
        ("apex preserves ABAB status", Some(300), apex),
        ("cycles free, K4 not", Some(60), outerplanar),
        ("solver vs exhaustive count", None, solver_corpus),
        ("Fano instance negative", None, fano),
        ("checker performance", None, performance),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        let timing = match limit {
            Some(l) => format!("{secs:.2}s, limit {l}s"),
            None => format!("{secs:.2}s"),
        };
        let result = match (result, limit) {
            (Ok(_), Some(l)) if secs >= l as f64 => Err(format!("over the {l}s limit")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} ({timing})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why} ({timing})", i + 1);
            }
        }
    }
    println!("{}/12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
