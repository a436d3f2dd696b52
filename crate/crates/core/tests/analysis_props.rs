mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use satgame::analysis::{
    c4_bound_constant, closed_form, essential_path_report, match_bound_report, parse_rational, rational, Branch,
    C4BoundParams, ClosedForm, Value, THEOREM_IDS,
};
use satgame::families::ForbiddenFamily;
use satgame::graph::{GameGraph, HostGraph, Vertex};
use satgame::policies::{designated_stars, Policy};
use satgame::simulate::{play, random_process};
use satgame::solver::PlayerRole;

use PlayerRole::{Max, Min};

/// Whether `x` and `y` are the ends of a path `x b a y`.
fn brute_p4_ends(g: &GameGraph, x: Vertex, y: Vertex) -> bool {
    g.neighbors(x).any(|b| b != y && g.neighbors(b).any(|a| a != x && a != y && g.has_edge(a, y)))
}

proptest! {
    #![proptest_config(cases(500))]

    #[test]
    fn matching_bound_holds_on_saturated_positions(h in arb_bipartite_host(10), seed in any::<u64>()) {
        let t = random_process(ForbiddenFamily::path(4).unwrap(), h, seed).unwrap();
        let g = t.replay().unwrap();
        let r = match_bound_report(&g).unwrap();
        prop_assert_eq!(r.matching, brute_matching(&g));
        prop_assert!(r.edges <= r.bound);
        if r.full || r.isolated_edge {
            prop_assert!(r.equality, "{:?} {:?}", g, r);
        }
    }

    /// `max_central_edge_paths <= D^2` where `D = max |N(v) ∩ S|`.
    #[test]
    fn central_edge_load_is_at_most_d_squared(g in arb_graph(arb_bipartite_host(12)), bits in any::<u32>()) {
        let s: Vec<Vertex> = (0..g.order()).filter(|&v| bits >> v & 1 == 1).collect();
        let r = essential_path_report(&g, &s).unwrap();
        let d = r.max_s_neighbors;
        prop_assert!(r.max_central_edge_paths <= d * d, "{:?}", r);
        prop_assert_eq!(r.sx + r.sy, s.len());
        prop_assert!(r.joined_by_p4 <= r.nonadjacent_cross_pairs);
        let (m, _) = g.host().parts().unwrap();
        let brute_joined = s.iter().filter(|&&x| x < m)
            .flat_map(|&x| s.iter().filter(|&&y| y >= m).map(move |&y| (x, y)))
            .filter(|&(x, y)| !g.has_edge(x, y) && brute_p4_ends(&g, x, y))
            .count();
        prop_assert_eq!(r.joined_by_p4, brute_joined);
    }
}

#[test]
fn c4_saturated_positions_are_p4_closed() {
    for n in [20, 50] {
        let h = HostGraph::bipartite(n, n).unwrap();
        for seed in 0..4 {
            let g = random_process(ForbiddenFamily::Cycle4, h, seed).unwrap().replay().unwrap();
            for x in 0..n {
                for y in n..2 * n {
                    assert!(g.has_edge(x, y) || brute_p4_ends(&g, x, y), "n={n} seed={seed}: {x} {y}");
                }
            }
        }
    }
}

#[test]
fn star_builder_leaves_are_joined_by_paths() {
    let h = HostGraph::bipartite(50, 50).unwrap();
    let t = play(&Policy::C4StarBuilderMax, &Policy::random(4), ForbiddenFamily::Cycle4, h, Max, Some(4)).unwrap();
    let g = t.replay().unwrap();
    let leaves: Vec<Vertex> = designated_stars(&g).into_iter().flat_map(|(_, l)| l).collect();
    let r = essential_path_report(&g, &leaves).unwrap();
    assert!(r.nonadjacent_cross_pairs > 0);
    assert_eq!(r.joined_by_p4, r.nonadjacent_cross_pairs);
}

#[test]
fn essential_path_examples() {
    let k22 = HostGraph::bipartite(2, 2).unwrap();
    // x0 - y0 - x1 - y1: the ends x0, y1 are the only nonadjacent cross pair.
    let p4 = GameGraph::from_edges(k22, [(0, 2), (1, 2), (1, 3)]).unwrap();
    let r = essential_path_report(&p4, &[0, 1, 2, 3]).unwrap();
    assert_eq!((r.nonadjacent_cross_pairs, r.joined_by_p4), (1, 1));
    assert!(brute_p4_ends(&p4, 0, 3));

    let r = essential_path_report(&p4, &[]).unwrap();
    assert_eq!(
        (r.sx, r.sy, r.nonadjacent_cross_pairs, r.joined_by_p4, r.max_s_neighbors, r.max_central_edge_paths),
        (0, 0, 0, 0, 0, 0)
    );
    assert!(essential_path_report(&GameGraph::empty(HostGraph::complete(4).unwrap()), &[]).is_err());
}

#[test]
fn match_report_examples() {
    let k33 = HostGraph::bipartite(3, 3).unwrap();
    let m = GameGraph::from_edges(k33, [(0, 3), (1, 4), (2, 5)]).unwrap();
    let r = match_bound_report(&m).unwrap();
    assert_eq!((r.matching, r.bound, r.edges, r.equality), (3, 3, 3, true));

    // A Y-centred star on all of X.
    let k43 = HostGraph::bipartite(4, 3).unwrap();
    let star = GameGraph::from_edges(k43, [(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
    let r = match_bound_report(&star).unwrap();
    assert_eq!((r.matching, r.bound), (1, 6));

    let t = play(&Policy::BipP4Max, &Policy::bip_p4_min(), ForbiddenFamily::path(4).unwrap(), k33, Max, None).unwrap();
    let r = match_bound_report(&t.replay().unwrap()).unwrap();
    assert!(r.equality);
}

#[test]
fn odd_cycle_game_attains_the_extremal_number() {
    for k in 1..200 {
        for first in [Max, Min] {
            let game = closed_form(ClosedForm::OddCycles { k, first }).unwrap().value;
            let ex = closed_form(ClosedForm::ExOdd { k }).unwrap().value;
            assert_eq!(game, ex);
            assert_eq!(game, Value::Exact { value: k * k });
        }
    }
}

#[test]
fn formula_examples() {
    let v = |cf| closed_form(cf).unwrap().value;
    assert_eq!(v(ClosedForm::Trees { n: 5, first: Max }), Value::Exact { value: 6 });
    assert_eq!(v(ClosedForm::Claw { n: 6, first: Min }), Value::Exact { value: 5 });
    assert_eq!(v(ClosedForm::P4Kmn { m: 4, n: 4, first: Min }), Value::Exact { value: 6 });
    assert_eq!(v(ClosedForm::P4Kn { n: 10, first: Max }), Value::Interval { lo: 7, hi: 8 });
    assert_eq!(v(ClosedForm::P4Kmn { m: 3, n: 5, first: Max }), v(ClosedForm::P4Kmn { m: 5, n: 3, first: Max }));
    assert!(closed_form(ClosedForm::Trees { n: 2, first: Max }).is_err());
    assert!(closed_form(ClosedForm::P4Kn { n: 3, first: Max }).is_err());
    let star = closed_form(ClosedForm::StarConjecture { r: 3, n: 12 }).unwrap();
    assert!(star.conjectured);
    assert!(!closed_form(ClosedForm::StarConjecture { r: 3, n: 8 }).unwrap().conjectured);
    assert_eq!(THEOREM_IDS.len(), 10);
}

#[test]
fn bound_constant_examples() {
    // c = 1/3, d = 1/sqrt 3: linear branch, a = sqrt(3)/18.
    let p = C4BoundParams::new(rational(1, 3), rational(1, 3)).unwrap();
    let r = c4_bound_constant(&p, 1);
    assert_eq!(r.branch, Branch::Linear);
    assert!((r.a - 3f64.sqrt() / 18.0).abs() < 1e-12);
    assert!((1.0 / r.a - 10.4).abs() < 0.01);

    // c = 1, d = 1/4: the branches meet at 2.
    let p = C4BoundParams::with_d(rational(1, 1), rational(1, 4)).unwrap();
    let r = c4_bound_constant(&p, 1);
    assert_eq!(r.branch, Branch::Equal);
    assert_eq!(r.a_exact, Some(rational(2, 1)));

    // c = 1, d = 1: a = (1/2)(1/2)^{2/3}.
    let p = C4BoundParams::with_d(rational(1, 1), rational(1, 1)).unwrap();
    let r = c4_bound_constant(&p, 1);
    assert_eq!(r.branch, Branch::Power);
    assert!((r.a - 0.5 * 0.5f64.powf(2.0 / 3.0)).abs() < 1e-12);

    assert!(C4BoundParams::new(rational(0, 1), rational(1, 1)).is_err());
    assert_eq!(parse_rational("0.25"), Some(rational(1, 4)));
}

/// Along `d` with `c = 1` fixed, the branch flips exactly where the two
/// formulas agree, and `a` is the smaller of the two on both sides.
#[test]
fn bound_constant_takes_the_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let c = rational(rng.gen_range(1..40), rng.gen_range(1..40));
        let d = rational(rng.gen_range(1..40), rng.gen_range(1..40));
        let p = C4BoundParams::with_d(c.clone(), d.clone()).unwrap();
        let r = c4_bound_constant(&p, 1000);
        let (cf, df) = (to_f64(&c), to_f64(&d));
        let power = 0.5 * (cf * cf / (2.0 * df * df)).powf(2.0 / 3.0);
        let linear = cf * cf / (2.0 * df);
        assert!((r.a - power.min(linear)).abs() <= 1e-9 * power.max(linear), "c={c} d={d}");
        assert!(r.a > 0.0 && r.b > 0.0);
        assert_eq!(r.bound, (r.a * 1000f64.powf(13.0 / 12.0)).floor() as u64);
    }
}

fn to_f64(q: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}
