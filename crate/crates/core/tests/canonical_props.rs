mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use satgame::canonical::{certificate, move_orbits};
use satgame::graph::{GameGraph, HostGraph};

fn isomorphic_by_search(a: &GameGraph, b: &GameGraph, autos: &[Vec<usize>]) -> bool {
    a.edge_count() == b.edge_count() && autos.iter().any(|map| apply(a, map) == *b)
}

proptest! {
    #![proptest_config(cases(1000))]

    #[test]
    fn certificate_ignores_host_automorphisms(g in arb_graph(arb_host(10)), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = random_automorphism(g.host(), &mut rng);
        prop_assert_eq!(certificate(&g), certificate(&apply(&g, &map)));
    }
}

proptest! {
    #![proptest_config(cases(400))]

    /// Equal certificates exactly when an exhaustive automorphism search
    /// maps one edge set onto the other.
    #[test]
    fn certificates_decide_isomorphism(
        (a, b) in arb_host(7).prop_flat_map(|h| (arb_graph(Just(h)), arb_graph(Just(h)))),
        seed in any::<u64>(),
    ) {
        let autos = host_automorphisms(a.host());
        prop_assert_eq!(certificate(&a) == certificate(&b), isomorphic_by_search(&a, &b, &autos));
        // A scrambled copy is always isomorphic; exercises the positive side.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = apply(&a, &random_automorphism(a.host(), &mut rng));
        prop_assert_eq!(certificate(&a), certificate(&c));
        prop_assert!(isomorphic_by_search(&a, &c, &autos));
    }

    #[test]
    fn orbit_members_reach_isomorphic_children(
        (f, h) in arb_host(8).prop_flat_map(|h| (arb_family(h), Just(h))),
        seed in any::<u64>(),
        steps in 0usize..10,
    ) {
        let g = random_position(f, h, seed, steps);
        let orbits = move_orbits(f, &g).unwrap();
        let legal = f.legal_moves(&g).unwrap();
        prop_assert_eq!(orbits.iter().map(|o| o.size).sum::<usize>(), legal.len());
        for e in legal {
            let cert = certificate(&g.add_edge(e).unwrap());
            let owners: Vec<_> = orbits.iter().filter(|o| o.certificate == cert).collect();
            prop_assert_eq!(owners.len(), 1);
            prop_assert!(owners[0].representative <= e);
        }
    }
}

#[test]
fn certificate_examples() {
    let k5 = HostGraph::complete(5).unwrap();
    let a = GameGraph::from_edges(k5, [(0, 1)]).unwrap();
    let b = GameGraph::from_edges(k5, [(2, 3)]).unwrap();
    assert_eq!(certificate(&a), certificate(&b));

    let k4 = HostGraph::complete(4).unwrap();
    let p3 = GameGraph::from_edges(k4, [(0, 1), (1, 2)]).unwrap();
    let two_k2 = GameGraph::from_edges(k4, [(0, 1), (2, 3)]).unwrap();
    assert_ne!(certificate(&p3), certificate(&two_k2));

    let k22 = HostGraph::bipartite(2, 2).unwrap();
    let x0y0 = GameGraph::from_edges(k22, [(0, 2)]).unwrap();
    let x1y1 = GameGraph::from_edges(k22, [(1, 3)]).unwrap();
    assert_eq!(certificate(&x0y0), certificate(&x1y1));

    // Same edge count, different hosts.
    let k4e = GameGraph::empty(k4);
    let k22e = GameGraph::empty(k22);
    assert_ne!(certificate(&k4e), certificate(&k22e));
}
