//! Move-selection policies: the strategies from the game-theoretic proofs
//! plus random and first-legal baselines.
//!
//! Every strategy states a condition it tries to maintain. When no legal move
//! keeps the condition, or the strategy leaves the move free, the policy plays
//! the lexicographically least legal move (the fallback rule).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::families::{FamilyError, ForbiddenFamily, MoveOracle};
use crate::graph::{ComponentClass, ComponentSummary, Edge, GameGraph, HostGraph, Part, Vertex};
use crate::solver::{PlayerRole, SolveConfig, Solver};

#[derive(Debug, Error)]
pub enum PolicyError {
    #[error("position is saturated")]
    PositionSaturated,
    #[error("policy {policy} does not play {family} on {host}")]
    PolicyHostMismatch {
        policy: String,
        family: String,
        host: String,
    },
    #[error("policy chose {0}, which is not a legal move")]
    IllegalMove(Edge),
    #[error("unknown policy {0:?}")]
    Parse(String),
    #[error("endgame table failed: {0}")]
    Endgame(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Which proof branch [`Policy::BipP4Min`] is following.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BipMinMode {
    /// Allow only stars whose leaves lie in the given part.
    OnlyStars(Part),
    /// Make isolated edges until the matching number reaches the target.
    Matching { target: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// Odd cycles on `K_{2k}`: keep every nontrivial component's bipartition balanced.
    OddCycleBalanceMax,
    /// Spanning trees: keep exactly one nontrivial component.
    TreeOneComponentMax,
    /// Spanning trees: keep two nontrivial components once they exist; pair isolated vertices.
    TreeSplitMin,
    /// Claws: play for the player the outcome favours, through one path, an
    /// even number of isolated vertices and closed cycles, with solved
    /// endgames once at most seven vertices lie outside cycles.
    ClawParityW,
    /// `P_4` on `K_n`, Min's strategy.
    P4MinKn,
    /// `P_4` on `K_n`, Max's strategy.
    P4MaxKn,
    /// `P_4` on `K_{m,n}`, Min's strategy. `mode` is fixed once the opening decides it.
    BipP4Min { mode: Option<BipMinMode> },
    /// `P_4` on `K_{m,n}`, Max's strategy: force a full subgraph and grow one star.
    BipP4Max,
    /// `C_4` on `K_{n,n}`: build disjoint stars of size `k` on `k` centres per part.
    C4StarBuilderMax,
    /// Uniformly random legal moves; the generator state travels with the policy.
    RandomLegal { seed: u64, rng: ChaCha8Rng },
    /// The lexicographically least legal move.
    FirstLegal,
}

impl Hash for Policy {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::mem::discriminant(self).hash(state);
        match self {
            Policy::BipP4Min { mode } => mode.hash(state),
            Policy::RandomLegal { seed, rng } => {
                seed.hash(state);
                rng.get_word_pos().hash(state);
            }
            _ => {}
        }
    }
}

impl Policy {
    pub fn random(seed: u64) -> Self {
        Policy::RandomLegal {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn bip_p4_min() -> Self {
        Policy::BipP4Min { mode: None }
    }

    /// Parses the CLI syntax, e.g. `p4-min` or `random:7`.
    ///
    /// A bare `random` takes `default_seed`.
    pub fn parse(text: &str, default_seed: Option<u64>) -> Result<Self, PolicyError> {
        let bad = || PolicyError::Parse(text.to_string());
        Ok(match text.trim() {
            "odd-balance-max" => Policy::OddCycleBalanceMax,
            "tree-one-max" => Policy::TreeOneComponentMax,
            "tree-split-min" => Policy::TreeSplitMin,
            "claw-parity" => Policy::ClawParityW,
            "p4-min" => Policy::P4MinKn,
            "p4-max" => Policy::P4MaxKn,
            "bip-p4-min" => Policy::bip_p4_min(),
            "bip-p4-max" => Policy::BipP4Max,
            "c4-star-max" => Policy::C4StarBuilderMax,
            "first" => Policy::FirstLegal,
            "random" => Policy::random(default_seed.ok_or_else(bad)?),
            other => {
                let seed = other.strip_prefix("random:").ok_or_else(bad)?;
                Policy::random(seed.parse().map_err(|_| bad())?)
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Policy::OddCycleBalanceMax => "odd-balance-max",
            Policy::TreeOneComponentMax => "tree-one-max",
            Policy::TreeSplitMin => "tree-split-min",
            Policy::ClawParityW => "claw-parity",
            Policy::P4MinKn => "p4-min",
            Policy::P4MaxKn => "p4-max",
            Policy::BipP4Min { .. } => "bip-p4-min",
            Policy::BipP4Max => "bip-p4-max",
            Policy::C4StarBuilderMax => "c4-star-max",
            Policy::RandomLegal { .. } => "random",
            Policy::FirstLegal => "first",
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Policy::RandomLegal { .. })
    }

    /// The same policy with a fresh generator seeded by `seed`, if randomized.
    pub fn reseeded(&self, seed: u64) -> Self {
        match self {
            Policy::RandomLegal { .. } => Policy::random(seed),
            other => other.clone(),
        }
    }

    pub fn check_compatible(&self, f: ForbiddenFamily, host: HostGraph) -> Result<(), PolicyError> {
        let complete = !host.is_bipartite();
        let ok = match self {
            Policy::OddCycleBalanceMax => f == ForbiddenFamily::OddCycles && complete,
            Policy::TreeOneComponentMax | Policy::TreeSplitMin => {
                matches!(f, ForbiddenFamily::AllSpanningTrees { .. }) && complete
            }
            Policy::ClawParityW => f == ForbiddenFamily::Star { r: 2 } && complete,
            Policy::P4MinKn | Policy::P4MaxKn => f == ForbiddenFamily::Path { k: 4 } && complete,
            Policy::BipP4Min { .. } | Policy::BipP4Max => f == ForbiddenFamily::Path { k: 4 } && !complete,
            Policy::C4StarBuilderMax => f == ForbiddenFamily::Cycle4 && !complete,
            Policy::RandomLegal { .. } | Policy::FirstLegal => true,
        };
        if ok {
            Ok(())
        } else {
            Err(PolicyError::PolicyHostMismatch {
                policy: self.name().to_string(),
                family: f.to_string(),
                host: host.to_string(),
            })
        }
    }

    /// Chooses a move for `mover` at `g`; returns it with the policy to use next.
    pub fn select_move(&self, f: ForbiddenFamily, g: &GameGraph, mover: PlayerRole) -> Result<(Edge, Policy), PolicyError> {
        let mut oracle = MoveOracle::new(f, g.clone())?;
        self.select_with(&mut oracle, mover)
    }

    /// [`Policy::select_move`] against a caching oracle holding the position.
    pub fn select_with(&self, oracle: &mut MoveOracle, mover: PlayerRole) -> Result<(Edge, Policy), PolicyError> {
        self.check_compatible(oracle.family(), oracle.graph().host())?;
        let mut next = self.clone();
        let choice = match self {
            Policy::OddCycleBalanceMax => odd_balance(oracle),
            Policy::TreeOneComponentMax => tree_one(oracle),
            Policy::TreeSplitMin => tree_split(oracle),
            Policy::ClawParityW => claw_parity(oracle, mover)?,
            Policy::P4MinKn => p4_min(oracle),
            Policy::P4MaxKn => p4_max(oracle, mover),
            Policy::BipP4Min { mode } => {
                let (choice, mode) = bip_min(oracle, mover, *mode);
                next = Policy::BipP4Min { mode };
                choice
            }
            Policy::BipP4Max => bip_max(oracle, mover),
            Policy::C4StarBuilderMax => c4_builder(oracle),
            Policy::RandomLegal { seed, rng } => {
                let mut rng = rng.clone();
                let e = oracle.random_legal(&mut rng);
                next = Policy::RandomLegal { seed: *seed, rng };
                e
            }
            Policy::FirstLegal => None,
        };
        let e = match choice {
            Some(e) => e,
            None => oracle.first_legal().ok_or(PolicyError::PositionSaturated)?,
        };
        if !oracle.is_legal(e) {
            return Err(PolicyError::IllegalMove(e));
        }
        Ok((e, next))
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::RandomLegal { seed, .. } => write!(f, "random:{seed}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Structural view of a position shared by the strategy code.
struct View {
    comps: Vec<ComponentSummary>,
    comp_of: Vec<usize>,
    isolated: Vec<Vertex>,
}

impl View {
    fn of(g: &GameGraph) -> Self {
        let comps = g.components();
        let mut comp_of = vec![0; g.order()];
        for (i, c) in comps.iter().enumerate() {
            for &v in &c.vertices {
                comp_of[v] = i;
            }
        }
        let isolated = g.isolated_vertices().collect();
        View {
            comps,
            comp_of,
            isolated,
        }
    }

    fn nontrivial(&self) -> impl Iterator<Item = (usize, &ComponentSummary)> {
        self.comps.iter().enumerate().filter(|(_, c)| !c.is_trivial())
    }

    fn nontrivial_count(&self) -> usize {
        self.nontrivial().count()
    }
}

/// First legal move among `candidates`.
fn first_of(oracle: &mut MoveOracle, candidates: impl IntoIterator<Item = Edge>) -> Option<Edge> {
    candidates.into_iter().find(|&e| oracle.is_legal(e))
}

fn edge(u: Vertex, v: Vertex) -> Edge {
    Edge::of(u, v)
}

/// The centre of a star-shaped component (`K_2` gives its smaller endpoint).
fn star_center(g: &GameGraph, c: &ComponentSummary) -> Option<Vertex> {
    match c.class {
        ComponentClass::SingleEdge => c.vertices.first().copied(),
        ComponentClass::Path { vertices: 3 } => c.vertices.iter().copied().find(|&v| g.degree(v) == 2),
        ComponentClass::Star { center, .. } => Some(center),
        _ => None,
    }
}

fn odd_balance(oracle: &mut MoveOracle) -> Option<Edge> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    let coloring = g.two_coloring();
    let comp = |v: Vertex| coloring.component[v];

    // Repair an unbalanced component: a new vertex joins its smaller class.
    for (_, c) in view.nontrivial() {
        let mut sizes = [0usize; 2];
        for &v in &c.vertices {
            sizes[coloring.color[v] as usize] += 1;
        }
        if sizes[0] != sizes[1] {
            let larger = u8::from(sizes[1] > sizes[0]);
            let anchors: Vec<Vertex> = c.vertices.iter().copied().filter(|&v| coloring.color[v] == larger).collect();
            let cands = anchors
                .iter()
                .flat_map(|&a| view.isolated.iter().map(move |&w| edge(a, w)))
                .collect::<Vec<_>>();
            let mut cands = cands;
            cands.sort_unstable();
            if let Some(e) = first_of(oracle, cands) {
                return Some(e);
            }
        }
    }
    let non_edges: Vec<Edge> = g.non_edges().collect();
    let nontrivial = |v: Vertex| g.degree(v) > 0;
    // An edge inside a component.
    if let Some(e) = first_of(
        oracle,
        non_edges.iter().copied().filter(|e| nontrivial(e.u()) && comp(e.u()) == comp(e.v())),
    ) {
        return Some(e);
    }
    // Join two nontrivial components.
    if let Some(e) = first_of(
        oracle,
        non_edges.iter().copied().filter(|e| nontrivial(e.u()) && nontrivial(e.v())),
    ) {
        return Some(e);
    }
    // Two isolated vertices.
    first_of(
        oracle,
        non_edges.iter().copied().filter(|e| !nontrivial(e.u()) && !nontrivial(e.v())),
    )
}

/// Nontrivial component count and isolated count after adding `e`.
fn after_move(g: &GameGraph, view: &View, e: Edge) -> (usize, usize) {
    let (u, v) = e.endpoints();
    let t = view.nontrivial_count();
    let i = view.isolated.len();
    if view.comp_of[u] == view.comp_of[v] {
        return (t, i);
    }
    let nu = usize::from(g.degree(u) > 0);
    let nv = usize::from(g.degree(v) > 0);
    (t + 1 - nu - nv, i - (1 - nu) - (1 - nv))
}

fn tree_one(oracle: &mut MoveOracle) -> Option<Edge> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    let legal = oracle.legal_moves();
    let keeps_one: Vec<(Edge, usize)> = legal
        .iter()
        .map(|&e| (e, after_move(&g, &view, e)))
        .filter(|&(_, (t, _))| t == 1)
        .map(|(e, (_, i))| (e, i))
        .collect();
    // Prefer leaving an odd number of isolated vertices: then Min can never
    // pair off the last two.
    keeps_one
        .iter()
        .find(|&&(_, i)| i % 2 == 1)
        .or_else(|| keeps_one.first())
        .map(|&(e, _)| e)
}

fn tree_split(oracle: &mut MoveOracle) -> Option<Edge> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    let legal = oracle.legal_moves();
    let t = view.nontrivial_count();
    let iso = view.isolated.len();
    let isolated_pair = |e: &Edge| g.degree(e.u()) == 0 && g.degree(e.v()) == 0;
    let internal = |e: &Edge| view.comp_of[e.u()] == view.comp_of[e.v()];
    let attaches = |e: &Edge| (g.degree(e.u()) == 0) != (g.degree(e.v()) == 0);
    let pick = |pred: &dyn Fn(&Edge) -> bool| legal.iter().copied().find(|e| pred(e));
    if t >= 2 {
        if iso >= 2 {
            return pick(&isolated_pair);
        }
        if iso == 1 {
            return pick(&attaches);
        }
        return pick(&internal);
    }
    if t == 1 {
        if iso % 2 == 0 && iso >= 2 {
            return pick(&isolated_pair);
        }
        return pick(&internal).or_else(|| pick(&attaches));
    }
    None
}

/// The claw policy consults a solved endgame once the compressed position
/// (cycles dropped, long paths shortened to `P_3`) has at most this many vertices.
pub const CLAW_ENDGAME_VERTICES: usize = 7;

/// Isolated-vertex count at which the path phase hands over to the endgame.
pub const CLAW_REDUCTION_ISOLATED: usize = 6;

/// Compressed positions larger than this are never solved inside the policy.
const CLAW_TABLE_LIMIT: usize = 12;

type EndgameKey = (usize, PlayerRole);

fn endgame_solver(order: usize, first: PlayerRole) -> Result<Arc<Solver>, PolicyError> {
    static TABLES: OnceLock<Mutex<HashMap<EndgameKey, Arc<Solver>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("endgame table lock");
    if let Some(s) = guard.get(&(order, first)) {
        return Ok(s.clone());
    }
    let host = HostGraph::complete(order).map_err(|e| PolicyError::Endgame(e.to_string()))?;
    let solver = Solver::new(SolveConfig::new(ForbiddenFamily::Star { r: 2 }, host, first))
        .map_err(|e| PolicyError::Endgame(e.to_string()))?;
    let solver = Arc::new(solver);
    guard.insert((order, first), solver.clone());
    Ok(solver)
}

fn is_cycle(c: &ComponentSummary) -> bool {
    matches!(c.class, ComponentClass::Triangle | ComponentClass::Cycle { .. })
}

fn claw_parity(oracle: &mut MoveOracle, mover: PlayerRole) -> Result<Option<Edge>, PolicyError> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    // Cycle vertices and path interiors have degree 2 and take no further
    // edges. A path on j >= 3 vertices therefore plays like P_3 on its
    // endpoints and one interior vertex, and the rest of the game is the game
    // on the compressed vertex set.
    let mut relevant: Vec<Vertex> = Vec::new();
    let mut kept: Vec<(Vertex, Vertex)> = Vec::new();
    for c in view.comps.iter().filter(|c| !is_cycle(c)) {
        let ends: Vec<Vertex> = c.vertices.iter().copied().filter(|&v| g.degree(v) <= 1).collect();
        if c.vertices.len() <= 3 {
            relevant.extend(&c.vertices);
            kept.extend(g.edges().into_iter().filter(|e| c.vertices.contains(&e.u())).map(|e| e.endpoints()));
        } else {
            let mid = g.neighbors(ends[0]).next().expect("path endpoint has a neighbour");
            relevant.extend([ends[0], mid, ends[1]]);
            kept.extend([(ends[0], mid), (mid, ends[1])]);
        }
    }
    relevant.sort_unstable();

    let isolated = view.isolated.len();
    if relevant.len() <= CLAW_ENDGAME_VERTICES
        || (isolated <= CLAW_REDUCTION_ISOLATED && relevant.len() <= CLAW_TABLE_LIMIT)
    {
        let host = HostGraph::complete(relevant.len()).map_err(|e| PolicyError::Endgame(e.to_string()))?;
        let local = |v: Vertex| relevant.binary_search(&v).expect("kept vertices are relevant");
        let mut sub = GameGraph::empty(host);
        for (u, v) in kept {
            sub.insert_edge(edge(local(u), local(v))).expect("kept edges are distinct");
        }
        let first = PlayerRole::first_from(mover, sub.edge_count());
        let e = endgame_solver(relevant.len(), first)?
            .best_move(&sub)
            .map_err(|e| PolicyError::Endgame(e.to_string()))?;
        return Ok(Some(edge(relevant[e.u()], relevant[e.v()])));
    }

    let paths: Vec<&ComponentSummary> = view
        .comps
        .iter()
        .filter(|c| !c.is_trivial() && !is_cycle(c))
        .collect();
    let iso = &view.isolated;
    let ends = |c: &ComponentSummary| -> Vec<Vertex> {
        c.vertices.iter().copied().filter(|&v| g.degree(v) <= 1).collect()
    };
    Ok(match paths.as_slice() {
        [] if iso.len() >= 2 => first_of(oracle, [edge(iso[0], iso[1])]),
        [p] => {
            let e = ends(p);
            if iso.len() % 2 == 1 && iso.len() <= 5 && p.vertices.len() >= 3 {
                // Six isolated vertices were left and the path grew: close it,
                // leaving the five-vertex game to the other player.
                first_of(oracle, [edge(e[0], e[1])])
            } else if iso.len() % 2 == 1 {
                // The other player extended the path: extend it again.
                let cands: Vec<Edge> = e.iter().flat_map(|&a| iso.iter().map(move |&w| edge(a, w))).collect();
                first_of(oracle, sorted(cands))
            } else if p.vertices.len() >= 3 {
                first_of(oracle, [edge(e[0], e[1])])
            } else {
                None
            }
        }
        [p, q] => {
            // An isolated edge appeared: join it to the path.
            let cands: Vec<Edge> = ends(p)
                .iter()
                .flat_map(|&a| ends(q).into_iter().map(move |b| edge(a, b)))
                .collect();
            first_of(oracle, sorted(cands))
        }
        _ => None,
    })
}

fn sorted(mut v: Vec<Edge>) -> Vec<Edge> {
    v.sort_unstable();
    v
}

fn stars<'a>(g: &'a GameGraph, view: &'a View) -> impl Iterator<Item = (&'a ComponentSummary, Vertex)> + 'a {
    view.comps.iter().filter_map(move |c| star_center(g, c).map(|s| (c, s)))
}

fn p4_min(oracle: &mut MoveOracle) -> Option<Edge> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    let iso = &view.isolated;
    let attach = |center: Vertex| iso.first().map(|&w| edge(center, w));

    if iso.len() >= 2 {
        // Convert a P_3 to K_{1,3}.
        let p3 = stars(&g, &view).find(|(c, _)| c.edges == 2);
        if let Some((_, center)) = p3 {
            if let Some(e) = attach(center).and_then(|e| first_of(oracle, [e])) {
                return Some(e);
            }
        }
    }
    let largest = stars(&g, &view)
        .filter(|(c, _)| c.edges >= 2)
        .max_by_key(|(c, center)| (c.edges, std::cmp::Reverse(*center)))
        .map(|(_, center)| center);
    if iso.len() == 3 {
        if let Some(e) = largest.and_then(attach).and_then(|e| first_of(oracle, [e])) {
            return Some(e);
        }
    }
    if iso.len() == 1 {
        let any_largest = stars(&g, &view)
            .max_by_key(|(c, center)| (c.edges, std::cmp::Reverse(*center)))
            .map(|(_, center)| center);
        return any_largest.and_then(attach).and_then(|e| first_of(oracle, [e]));
    }
    if iso.len() >= 2 {
        return first_of(oracle, [edge(iso[0], iso[1])]);
    }
    None
}

fn p4_max(oracle: &mut MoveOracle, mover: PlayerRole) -> Option<Edge> {
    let g = oracle.graph().clone();
    let view = View::of(&g);
    let iso = &view.isolated;
    if g.edge_count() == 0 && PlayerRole::first_from(mover, 0) == PlayerRole::Max {
        return first_of(oracle, [edge(iso[0], iso[1])]);
    }
    if let Some(&w) = iso.first() {
        // Extend an isolated edge to P_3.
        if let Some(c) = view.comps.iter().find(|c| c.class == ComponentClass::SingleEdge) {
            return first_of(oracle, [edge(c.vertices[0], w)]);
        }
        // Grow the largest star with at least three edges.
        let big = stars(&g, &view)
            .filter(|(c, _)| c.edges >= 3)
            .max_by_key(|(c, center)| (c.edges, std::cmp::Reverse(*center)));
        if let Some((_, center)) = big {
            return first_of(oracle, [edge(center, w)]);
        }
    }
    // Complete a triangle.
    if let Some(c) = view.comps.iter().find(|c| c.class == (ComponentClass::Path { vertices: 3 })) {
        let ends: Vec<Vertex> = c.vertices.iter().copied().filter(|&v| g.degree(v) == 1).collect();
        return first_of(oracle, [edge(ends[0], ends[1])]);
    }
    if !iso.is_empty() {
        let legal = oracle.legal_moves();
        let makes_p2 = |e: &Edge| g.degree(e.u()) == 0 && g.degree(e.v()) == 0;
        return legal.iter().copied().find(|e| !makes_p2(e));
    }
    None
}

/// Stars of a bipartite position by the part holding their leaves.
///
/// An X-star has at least two leaves in X (centre in Y), a Y-star at least
/// two leaves in Y.
struct BipStars {
    /// `(leaf part, centre, edge count)` for every star with two or more edges.
    stars: Vec<(Part, Vertex, usize)>,
    /// Isolated edges as `(x, y)`.
    k2: Vec<(Vertex, Vertex)>,
    iso_x: Vec<Vertex>,
    iso_y: Vec<Vertex>,
}

impl BipStars {
    fn of(g: &GameGraph) -> Self {
        let host = g.host();
        let mut out = BipStars {
            stars: Vec::new(),
            k2: Vec::new(),
            iso_x: Vec::new(),
            iso_y: Vec::new(),
        };
        for c in g.components() {
            match c.vertices.len() {
                1 => match host.part_of(c.vertices[0]) {
                    Some(Part::X) => out.iso_x.push(c.vertices[0]),
                    _ => out.iso_y.push(c.vertices[0]),
                },
                2 => out.k2.push((c.vertices[0], c.vertices[1])),
                _ => {
                    let center = *c.vertices.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
                    let leaf_part = match host.part_of(center) {
                        Some(Part::X) => Part::Y,
                        _ => Part::X,
                    };
                    out.stars.push((leaf_part, center, c.edges));
                }
            }
        }
        out
    }

    fn has(&self, part: Part) -> bool {
        self.stars.iter().any(|&(p, _, _)| p == part)
    }

    fn iso(&self, part: Part) -> &[Vertex] {
        match part {
            Part::X => &self.iso_x,
            Part::Y => &self.iso_y,
        }
    }

    /// Largest star with leaves in `part` (ties to the smaller centre).
    fn largest(&self, part: Part) -> Option<Vertex> {
        self.stars
            .iter()
            .filter(|&&(p, _, _)| p == part)
            .max_by_key(|&&(_, c, e)| (e, std::cmp::Reverse(c)))
            .map(|&(_, c, _)| c)
    }

    /// Turns an isolated edge into a star with leaves in `part`.
    fn from_k2(&self, part: Part) -> Option<Edge> {
        let &(x, y) = self.k2.first()?;
        let leaf = *self.iso(part).first()?;
        Some(match part {
            Part::X => edge(leaf, y),
            Part::Y => edge(x, leaf),
        })
    }

    /// Adds a leaf to the largest star with leaves in `part`.
    fn grow(&self, part: Part) -> Option<Edge> {
        let center = self.largest(part)?;
        let leaf = *self.iso(part).first()?;
        Some(edge(center, leaf))
    }

    fn new_k2(&self) -> Option<Edge> {
        Some(edge(*self.iso_x.first()?, *self.iso_y.first()?))
    }
}

fn other(part: Part) -> Part {
    match part {
        Part::X => Part::Y,
        Part::Y => Part::X,
    }
}

fn bip_min(oracle: &mut MoveOracle, mover: PlayerRole, mode: Option<BipMinMode>) -> (Option<Edge>, Option<BipMinMode>) {
    let g = oracle.graph().clone();
    let (m, n, px, py) = normalized(g.host());
    let first = PlayerRole::first_from(mover, g.edge_count());
    let s = BipStars::of(&g);
    let odd = m % 2 == 1 && n % 2 == 1;
    let mode = mode.or_else(|| match first {
        PlayerRole::Max if n % 2 == 0 => Some(BipMinMode::OnlyStars(py)),
        PlayerRole::Max if m % 2 == 0 => Some(BipMinMode::OnlyStars(px)),
        PlayerRole::Max => Some(BipMinMode::Matching { target: n.div_ceil(2) }),
        PlayerRole::Min if !odd => Some(BipMinMode::Matching {
            target: if n <= 2 { n } else { n.div_ceil(2) },
        }),
        // Min opens with an isolated edge; Max's reply picks the branch.
        PlayerRole::Min if n <= 2 => Some(BipMinMode::Matching { target: n }),
        PlayerRole::Min => match g.edge_count() {
            0 => None,
            _ if s.has(px) && !s.has(py) => Some(BipMinMode::OnlyStars(px)),
            _ if s.has(py) && !s.has(px) => Some(BipMinMode::OnlyStars(py)),
            _ => Some(BipMinMode::Matching {
                target: n.div_ceil(2) + 1,
            }),
        },
    });
    let choice = match mode {
        None => s.new_k2(),
        Some(BipMinMode::OnlyStars(part)) => s.from_k2(part).or_else(|| s.grow(part)),
        Some(BipMinMode::Matching { target }) => {
            if g.max_matching() < target {
                s.new_k2()
            } else {
                None
            }
        }
    };
    (choice.and_then(|e| first_of(oracle, [e])), mode)
}

fn bip_max(oracle: &mut MoveOracle, mover: PlayerRole) -> Option<Edge> {
    let g = oracle.graph().clone();
    let (m, n, px, py) = normalized(g.host());
    let first = PlayerRole::first_from(mover, g.edge_count());
    let s = BipStars::of(&g);
    let odd = m % 2 == 1 && n % 2 == 1;
    let full = s.has(px) && s.has(py);
    let e = if (first == PlayerRole::Max && n % 2 == 1 && m % 2 == 0) || (first == PlayerRole::Min && n <= 2) {
        // Any X-star forces every X vertex into a star.
        if s.has(px) {
            None
        } else {
            s.from_k2(px).or_else(|| s.new_k2())
        }
    } else if first == PlayerRole::Max && n % 2 == 0 {
        // Min can hold the game to n; nothing to gain.
        None
    } else if first == PlayerRole::Min && odd {
        if g.edge_count() == 1 {
            // A star now would let Min confine the game to one star type.
            s.new_k2()
        } else if !full {
            let missing = if s.has(px) { py } else { px };
            s.from_k2(missing).or_else(|| s.new_k2())
        } else {
            s.grow(py).or_else(|| s.grow(px))
        }
    } else if !full {
        match [px, py].into_iter().find(|&p| s.has(p)) {
            None => {
                let start = if first == PlayerRole::Max || n % 2 == 0 { py } else { px };
                s.from_k2(start).or_else(|| s.new_k2())
            }
            Some(t) if s.iso(other(t)).len() == 1 && s.from_k2(other(t)).is_some() => {
                // Last chance to make the other star type.
                s.from_k2(other(t))
            }
            Some(t) if s.iso(t).len() == 1 && s.k2.is_empty() && !s.iso(other(t)).is_empty() => {
                // Every move so far left a leaf in this part, so Min must
                // answer the isolated edge with the other star type.
                s.new_k2()
            }
            // With an X-star in place, a Y-star from Min's isolated edge makes
            // the graph full and spends a vertex of the smaller part.
            Some(t) if t == px && s.from_k2(py).is_some() => s.from_k2(py),
            Some(t) => s.grow(t).or_else(|| s.from_k2(other(t))),
        }
    } else {
        // Every later component needs a vertex of the smaller part; use them up.
        s.grow(py).or_else(|| s.grow(px))
    };
    e.and_then(|e| first_of(oracle, [e]))
}

/// Part sizes with the larger part first, and the parts playing X and Y.
fn normalized(host: HostGraph) -> (usize, usize, Part, Part) {
    let HostGraph::Bipartite { m, n } = host else {
        unreachable!("compatibility checked")
    };
    if m >= n {
        (m, n, Part::X, Part::Y)
    } else {
        (n, m, Part::Y, Part::X)
    }
}

/// Number of stars per part for the `C_4` builder on a host whose smaller part has `n` vertices.
pub fn c4_star_count(n: usize) -> usize {
    let mut r = (n as f64 / 3.0).sqrt().floor() as usize;
    // Correct floating error so that r = floor(sqrt(n / 3)) exactly.
    while 3 * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r > 0 && 3 * r * r > n {
        r -= 1;
    }
    r.saturating_sub(1)
}

/// The designated stars of the `C_4` builder as `(centre, leaves)`.
///
/// Centres are the `k` lowest vertices of each part, X first. Each centre's
/// leaves are its lowest non-centre neighbours not already claimed by an
/// earlier centre, at most `k` of them.
pub fn designated_stars(g: &GameGraph) -> Vec<(Vertex, Vec<Vertex>)> {
    let HostGraph::Bipartite { m, n } = g.host() else {
        return Vec::new();
    };
    let k = c4_star_count(n);
    let centers: Vec<Vertex> = (0..k).chain(m..m + k).collect();
    let is_center = |v: Vertex| v < k || (m..m + k).contains(&v);
    let mut claimed = vec![false; g.order()];
    centers
        .iter()
        .map(|&c| {
            let leaves: Vec<Vertex> = g
                .neighbors(c)
                .filter(|&v| !is_center(v) && !claimed[v])
                .take(k)
                .collect();
            for &v in &leaves {
                claimed[v] = true;
            }
            (c, leaves)
        })
        .collect()
}

/// Whether the builder's star phase is over: every designated star is
/// complete or no fresh leaf is left for an unfinished one.
pub fn c4_building_done(g: &GameGraph) -> bool {
    c4_next_leaf(g).is_none()
}

fn c4_next_leaf(g: &GameGraph) -> Option<Edge> {
    let HostGraph::Bipartite { m, n } = g.host() else {
        return None;
    };
    let k = c4_star_count(n);
    let is_center = |v: Vertex| v < k || (m..m + k).contains(&v);
    for (c, leaves) in designated_stars(g) {
        if leaves.len() >= k {
            continue;
        }
        let side = if c < m { m..m + n } else { 0..m };
        if let Some(w) = side.into_iter().find(|&w| !is_center(w) && g.degree(w) == 0) {
            return Some(edge(c, w));
        }
    }
    None
}

fn c4_builder(oracle: &mut MoveOracle) -> Option<Edge> {
    let e = c4_next_leaf(oracle.graph())?;
    first_of(oracle, [e])
}
