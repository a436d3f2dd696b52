//! Strategies and brute-force oracles shared by the property suites.
//!
//! The oracles only use `has_edge` and the host; they never go through the
//! crate's caches, colorings or incremental checkers.

#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use satgame::families::{ForbiddenFamily, MoveOracle};
use satgame::graph::{Edge, GameGraph, HostGraph, Vertex};

/// Proptest settings without on-disk failure persistence.
pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

pub fn arb_host(max_order: usize) -> impl Strategy<Value = HostGraph> {
    let complete = (1..=max_order).prop_map(|n| HostGraph::complete(n).unwrap());
    let bipartite = (1..max_order, 1..max_order)
        .prop_filter("order bound", move |&(m, n)| m + n <= max_order)
        .prop_map(|(m, n)| HostGraph::bipartite(m, n).unwrap());
    prop_oneof![complete, bipartite]
}

pub fn arb_bipartite_host(max_order: usize) -> impl Strategy<Value = HostGraph> {
    (1..max_order, 1..max_order)
        .prop_filter("order bound", move |&(m, n)| m + n <= max_order)
        .prop_map(|(m, n)| HostGraph::bipartite(m, n).unwrap())
}

/// An arbitrary subgraph of a host drawn from `hosts`.
pub fn arb_graph(hosts: impl Strategy<Value = HostGraph>) -> impl Strategy<Value = GameGraph> {
    hosts
        .prop_flat_map(|h| {
            let pairs = h.edge_count();
            (Just(h), 0.0..1.0f64, proptest::collection::vec(0.0..1.0f64, pairs))
        })
        .prop_map(|(h, density, coins)| {
            let edges = h.edges().zip(coins).filter(|&(_, c)| c < density).map(|(e, _)| e.endpoints());
            GameGraph::from_edges(h, edges).unwrap()
        })
}

/// A free position reached by `steps` uniformly random legal moves.
pub fn random_position(f: ForbiddenFamily, h: HostGraph, seed: u64, steps: usize) -> GameGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = MoveOracle::new(f, GameGraph::empty(h)).unwrap();
    for _ in 0..steps {
        match oracle.random_legal(&mut rng) {
            Some(e) => oracle.play(e).unwrap(),
            None => break,
        }
    }
    oracle.into_graph()
}

/// Families whose empty position on `h` is free.
pub fn families_for(h: HostGraph) -> Vec<ForbiddenFamily> {
    let mut out = vec![
        ForbiddenFamily::OddCycles,
        ForbiddenFamily::star(1).unwrap(),
        ForbiddenFamily::star(2).unwrap(),
        ForbiddenFamily::star(3).unwrap(),
        ForbiddenFamily::path(3).unwrap(),
        ForbiddenFamily::path(4).unwrap(),
        ForbiddenFamily::path(5).unwrap(),
        ForbiddenFamily::Cycle4,
    ];
    if h.order() > 1 {
        out.push(ForbiddenFamily::trees_for(h));
    }
    out
}

pub fn arb_family(h: HostGraph) -> impl Strategy<Value = ForbiddenFamily> {
    proptest::sample::select(families_for(h))
}

fn neighbours(g: &GameGraph, v: Vertex) -> Vec<Vertex> {
    (0..g.order()).filter(|&w| w != v && g.has_edge(v, w)).collect()
}

/// Extends simple paths from `path` and reports whether `found` accepts any.
fn search_paths(g: &GameGraph, path: &mut Vec<Vertex>, found: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    if found(path) {
        return true;
    }
    let last = *path.last().unwrap();
    for w in neighbours(g, last) {
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        if search_paths(g, path, found) {
            return true;
        }
        path.pop();
    }
    false
}

/// Whether `g` contains a simple cycle of odd length.
pub fn brute_odd_cycle(g: &GameGraph) -> bool {
    (0..g.order()).any(|s| {
        let mut path = vec![s];
        search_paths(g, &mut path, &mut |p: &[Vertex]| {
            p.len() >= 3 && p.len() % 2 == 1 && p.iter().all(|&v| v >= s) && g.has_edge(*p.last().unwrap(), s)
        })
    })
}

pub fn brute_path(g: &GameGraph, k: usize) -> bool {
    (0..g.order()).any(|s| {
        let mut path = vec![s];
        search_paths(g, &mut path, &mut |p: &[Vertex]| p.len() >= k)
    })
}

/// Connectivity by union-find over the edge list.
pub fn brute_connected(g: &GameGraph) -> bool {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    (0..n).all(|v| find(&mut parent, v) == find(&mut parent, 0))
}

pub fn brute_c4(g: &GameGraph) -> bool {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Whether `g` contains a member of `f`.
pub fn brute_contains(f: ForbiddenFamily, g: &GameGraph) -> bool {
    match f {
        ForbiddenFamily::OddCycles => brute_odd_cycle(g),
        ForbiddenFamily::AllSpanningTrees { .. } => brute_connected(g),
        ForbiddenFamily::Star { r } => (0..g.order()).any(|v| neighbours(g, v).len() > r),
        ForbiddenFamily::Path { k } => brute_path(g, k),
        ForbiddenFamily::Cycle4 => brute_c4(g),
    }
}

pub fn brute_legal(f: ForbiddenFamily, g: &GameGraph) -> Vec<Edge> {
    g.non_edges().filter(|&e| !brute_contains(f, &g.add_edge(e).unwrap())).collect()
}

/// Largest matching by exhaustive search over edge subsets.
pub fn brute_matching(g: &GameGraph) -> usize {
    fn go(edges: &[Edge], used: &mut Vec<bool>) -> usize {
        let Some((&e, rest)) = edges.split_first() else {
            return 0;
        };
        let skip = go(rest, used);
        let (u, v) = e.endpoints();
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + go(rest, used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    go(&g.edges(), &mut vec![false; g.order()])
}

/// All host automorphisms, as vertex maps. Exhaustive; keep hosts tiny.
pub fn host_automorphisms(h: HostGraph) -> Vec<Vec<Vertex>> {
    fn perms(items: &[Vertex]) -> Vec<Vec<Vertex>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    match h {
        HostGraph::Complete { n } => perms(&(0..n).collect::<Vec<_>>()),
        HostGraph::Bipartite { m, n } => {
            let xs = perms(&(0..m).collect::<Vec<_>>());
            let ys = perms(&(m..m + n).collect::<Vec<_>>());
            let mut out = Vec::new();
            for x in &xs {
                for y in &ys {
                    let map: Vec<Vertex> = x.iter().chain(y).copied().collect();
                    if m == n {
                        // Exchange the parts as well.
                        let swapped: Vec<Vertex> = map.iter().map(|&v| if v < m { v + m } else { v - m }).collect();
                        out.push(swapped);
                    }
                    out.push(map);
                }
            }
            out
        }
    }
}

pub fn apply(g: &GameGraph, map: &[Vertex]) -> GameGraph {
    GameGraph::from_edges(g.host(), g.edges().into_iter().map(|e| (map[e.u()], map[e.v()]))).unwrap()
}

/// A uniformly random host automorphism.
pub fn random_automorphism(h: HostGraph, rng: &mut impl rand::Rng) -> Vec<Vertex> {
    use rand::seq::SliceRandom;
    match h {
        HostGraph::Complete { n } => {
            let mut p: Vec<Vertex> = (0..n).collect();
            p.shuffle(rng);
            p
        }
        HostGraph::Bipartite { m, n } => {
            let mut x: Vec<Vertex> = (0..m).collect();
            let mut y: Vec<Vertex> = (m..m + n).collect();
            x.shuffle(rng);
            y.shuffle(rng);
            let map: Vec<Vertex> = x.into_iter().chain(y).collect();
            if m == n && rng.gen_bool(0.5) {
                map.iter().map(|&v| if v < m { v + m } else { v - m }).collect()
            } else {
                map
            }
        }
    }
}
