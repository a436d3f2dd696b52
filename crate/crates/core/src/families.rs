//! Forbidden families: freeness, legal moves and saturation.
//!
//! Every family is decided through a structural characterization instead of
//! subgraph search, and move legality is decided incrementally through
//! [`MoveChecker`], so a legality test costs at most a small local search.

use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, GameGraph, HostGraph, TwoColoring, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family bound to trees of order {family} used on a host of order {host}")]
    HostOrderMismatch { family: usize, host: usize },
    #[error("position already contains a member of the family")]
    PositionNotFree,
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not a legal move")]
    IllegalMove(Edge),
    #[error("unknown family {0:?}; expected odd-cycles, trees, star:r+1=N, path:K or cycle:4")]
    Parse(String),
}

/// The forbidden family `F` of a saturation game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenFamily {
    /// All odd cycles.
    OddCycles,
    /// All spanning trees of a host with `order` vertices.
    AllSpanningTrees { order: usize },
    /// The star `K_{1,r+1}`.
    Star { r: usize },
    /// The path on `k` vertices.
    Path { k: usize },
    /// The 4-cycle.
    Cycle4,
}

impl ForbiddenFamily {
    pub fn star(r: usize) -> Result<Self, FamilyError> {
        if r == 0 {
            return Err(FamilyError::InvalidParameter("star needs r >= 1".into()));
        }
        Ok(ForbiddenFamily::Star { r })
    }

    pub fn path(k: usize) -> Result<Self, FamilyError> {
        if k < 3 {
            return Err(FamilyError::InvalidParameter("path needs k >= 3".into()));
        }
        Ok(ForbiddenFamily::Path { k })
    }

    /// Spanning trees of `host`, bound to its order.
    pub fn trees_for(host: HostGraph) -> Self {
        ForbiddenFamily::AllSpanningTrees {
            order: host.order(),
        }
    }

    /// Parses the CLI syntax. `trees` binds to `host`.
    pub fn parse(text: &str, host: HostGraph) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Parse(text.to_string());
        let text = text.trim();
        match text {
            "odd-cycles" => return Ok(ForbiddenFamily::OddCycles),
            "trees" => return Ok(ForbiddenFamily::trees_for(host)),
            _ => {}
        }
        let (kind, arg) = text.split_once(':').ok_or_else(bad)?;
        match kind {
            "star" => {
                if let Some(size) = arg.strip_prefix("r+1=") {
                    let size: usize = size.parse().map_err(|_| bad())?;
                    if size < 2 {
                        return Err(FamilyError::InvalidParameter("star needs r+1 >= 2".into()));
                    }
                    ForbiddenFamily::star(size - 1)
                } else if let Some(r) = arg.strip_prefix("r=") {
                    ForbiddenFamily::star(r.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
            "path" => ForbiddenFamily::path(arg.parse().map_err(|_| bad())?),
            "cycle" if arg == "4" => Ok(ForbiddenFamily::Cycle4),
            _ => Err(bad()),
        }
    }

    fn check_host(&self, host: HostGraph) -> Result<(), FamilyError> {
        match *self {
            ForbiddenFamily::AllSpanningTrees { order } if order != host.order() => {
                Err(FamilyError::HostOrderMismatch {
                    family: order,
                    host: host.order(),
                })
            }
            _ => Ok(()),
        }
    }

    /// Whether `g` contains no member of the family.
    pub fn is_free(&self, g: &GameGraph) -> Result<bool, FamilyError> {
        self.check_host(g.host())?;
        Ok(match *self {
            ForbiddenFamily::OddCycles => g.is_bipartite(),
            ForbiddenFamily::AllSpanningTrees { .. } => !g.is_connected(),
            ForbiddenFamily::Star { r } => g.max_degree() <= r,
            ForbiddenFamily::Path { k } => !has_path(g, k),
            ForbiddenFamily::Cycle4 => !has_c4(g),
        })
    }

    /// Host edges `e` not in `g` with `g + e` still free, in lexicographic order.
    pub fn legal_moves(&self, g: &GameGraph) -> Result<Vec<Edge>, FamilyError> {
        let checker = MoveChecker::new(*self, g)?;
        Ok(g.non_edges().filter(|&e| checker.is_legal(e)).collect())
    }

    /// Free and without legal moves.
    pub fn is_saturated(&self, g: &GameGraph) -> Result<bool, FamilyError> {
        match MoveChecker::new(*self, g) {
            Ok(checker) => Ok(g.non_edges().all(|e| !checker.is_legal(e))),
            Err(FamilyError::PositionNotFree) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ForbiddenFamily::OddCycles => f.write_str("odd-cycles"),
            ForbiddenFamily::AllSpanningTrees { .. } => f.write_str("trees"),
            ForbiddenFamily::Star { r } => write!(f, "star:r+1={}", r + 1),
            ForbiddenFamily::Path { k } => write!(f, "path:{k}"),
            ForbiddenFamily::Cycle4 => f.write_str("cycle:4"),
        }
    }
}

/// Incremental legality oracle for one free position.
///
/// Construction does the per-position work (coloring, components); each
/// [`MoveChecker::creates`] query is then local to the two endpoints.
pub struct MoveChecker<'a> {
    family: ForbiddenFamily,
    g: &'a GameGraph,
    state: CheckerState,
}

/// Per-position data the incremental rules need.
#[derive(Debug, Clone)]
enum CheckerState {
    None,
    Coloring(TwoColoring),
    Components { label: Vec<usize>, count: usize },
}

impl CheckerState {
    fn build(family: ForbiddenFamily, g: &GameGraph) -> Self {
        match family {
            ForbiddenFamily::OddCycles => CheckerState::Coloring(g.two_coloring()),
            ForbiddenFamily::AllSpanningTrees { .. } => {
                let (label, count) = g.component_labels();
                CheckerState::Components { label, count }
            }
            _ => CheckerState::None,
        }
    }

    fn creates(&self, family: ForbiddenFamily, g: &GameGraph, u: Vertex, v: Vertex) -> bool {
        match (self, family) {
            (CheckerState::Coloring(c), _) => c.component[u] == c.component[v] && c.color[u] == c.color[v],
            (CheckerState::Components { label, count }, _) => *count == 2 && label[u] != label[v],
            (_, ForbiddenFamily::Star { r }) => g.degree(u) >= r || g.degree(v) >= r,
            (_, ForbiddenFamily::Path { k }) => creates_path(g, u, v, k),
            (_, ForbiddenFamily::Cycle4) => g.p4_between(u, v),
            _ => unreachable!("checker state matches family"),
        }
    }
}

impl<'a> MoveChecker<'a> {
    /// Fails with [`FamilyError::PositionNotFree`] unless `g` is free.
    pub fn new(family: ForbiddenFamily, g: &'a GameGraph) -> Result<Self, FamilyError> {
        family.check_host(g.host())?;
        let free = match family {
            ForbiddenFamily::OddCycles | ForbiddenFamily::AllSpanningTrees { .. } => true,
            _ => family.is_free(g)?,
        };
        let state = CheckerState::build(family, g);
        let free = free
            && match &state {
                CheckerState::Coloring(c) => c.bipartite.iter().all(|&b| b),
                CheckerState::Components { count, .. } => *count > 1,
                CheckerState::None => true,
            };
        if !free {
            return Err(FamilyError::PositionNotFree);
        }
        Ok(MoveChecker { family, g, state })
    }

    /// Builds a checker for a position the caller already knows to be free.
    pub(crate) fn new_unchecked(family: ForbiddenFamily, g: &'a GameGraph) -> Self {
        MoveChecker {
            family,
            g,
            state: CheckerState::build(family, g),
        }
    }

    pub fn graph(&self) -> &'a GameGraph {
        self.g
    }

    /// Whether adding `uv` completes a member of the family.
    pub fn creates(&self, u: Vertex, v: Vertex) -> bool {
        self.state.creates(self.family, self.g, u, v)
    }

    /// `e` is a host edge, absent from the position, and safe to add.
    pub fn is_legal(&self, e: Edge) -> bool {
        let (u, v) = e.endpoints();
        self.g.host().allows(u, v) && !self.g.has_edge(u, v) && !self.creates(u, v)
    }

    pub fn legal_moves(&self) -> Vec<Edge> {
        self.g.non_edges().filter(|&e| !self.creates(e.u(), e.v())).collect()
    }
}

/// A position under play with a cache of moves known to be dead.
///
/// Freeness is hereditary, so once `g + e` contains a member of the family it
/// does for every later position too. The oracle records such edges (and
/// played ones) by host-edge index and never checks them again. The cache
/// only skips work: every answer equals the from-scratch answer.
#[derive(Debug, Clone)]
pub struct MoveOracle {
    family: ForbiddenFamily,
    g: GameGraph,
    dead: Vec<bool>,
    /// Every index below the cursor is dead.
    cursor: usize,
    /// Indices not yet known dead, for full scans.
    live: Vec<usize>,
    state: Option<CheckerState>,
}

/// Uniform draws over host edges before [`MoveOracle::random_legal`] falls back to a full scan.
const REJECTION_TRIES: usize = 128;

impl MoveOracle {
    pub fn new(family: ForbiddenFamily, g: GameGraph) -> Result<Self, FamilyError> {
        MoveChecker::new(family, &g)?;
        let host = g.host();
        let total = host.edge_count();
        let mut dead = vec![false; total];
        for e in g.edges() {
            dead[host.edge_index(e).expect("position edges are host edges")] = true;
        }
        let live = (0..total).filter(|&i| !dead[i]).collect();
        Ok(MoveOracle {
            family,
            g,
            dead,
            cursor: 0,
            live,
            state: None,
        })
    }

    pub fn family(&self) -> ForbiddenFamily {
        self.family
    }

    pub fn graph(&self) -> &GameGraph {
        &self.g
    }

    pub fn into_graph(self) -> GameGraph {
        self.g
    }

    fn check_index(&mut self, i: usize) -> bool {
        if self.dead[i] {
            return false;
        }
        let (u, v) = self.g.host().edge_at(i).endpoints();
        let family = self.family;
        let g = &self.g;
        let state = self.state.get_or_insert_with(|| CheckerState::build(family, g));
        if state.creates(family, g, u, v) {
            self.dead[i] = true;
            false
        } else {
            true
        }
    }

    /// Whether `e` can be played now.
    pub fn is_legal(&mut self, e: Edge) -> bool {
        match self.g.host().edge_index(e) {
            Some(i) => self.check_index(i),
            None => false,
        }
    }

    /// The lexicographically least legal move.
    pub fn first_legal(&mut self) -> Option<Edge> {
        let total = self.dead.len();
        while self.cursor < total {
            if self.check_index(self.cursor) {
                return Some(self.g.host().edge_at(self.cursor));
            }
            self.cursor += 1;
        }
        None
    }

    /// All legal moves in lexicographic order.
    pub fn legal_moves(&mut self) -> Vec<Edge> {
        let mut live = std::mem::take(&mut self.live);
        live.retain(|&i| self.check_index(i));
        let host = self.g.host();
        let out = live.iter().map(|&i| host.edge_at(i)).collect();
        self.live = live;
        out
    }

    pub fn is_saturated(&mut self) -> bool {
        self.first_legal().is_none()
    }

    /// A uniformly random legal move.
    ///
    /// Draws host edges uniformly and keeps the first legal one; after
    /// [`REJECTION_TRIES`] misses it picks uniformly from the full sorted list.
    /// The result depends only on the position and the generator.
    pub fn random_legal<R: rand::Rng + ?Sized>(&mut self, rng: &mut R) -> Option<Edge> {
        let total = self.dead.len();
        if total == 0 {
            return None;
        }
        for _ in 0..REJECTION_TRIES {
            let i = rng.gen_range(0..total);
            if self.check_index(i) {
                return Some(self.g.host().edge_at(i));
            }
        }
        let legal = self.legal_moves();
        if legal.is_empty() {
            None
        } else {
            Some(legal[rng.gen_range(0..legal.len())])
        }
    }

    /// Plays `e`, which must be legal.
    pub fn play(&mut self, e: Edge) -> Result<(), FamilyError> {
        if !self.is_legal(e) {
            return Err(FamilyError::IllegalMove(e));
        }
        let i = self.g.host().edge_index(e).unwrap();
        self.g.insert_edge(e).expect("legal moves are host non-edges");
        self.dead[i] = true;
        self.state = None;
        Ok(())
    }
}

/// Whether `g` has a simple path on `k` vertices.
pub(crate) fn has_path(g: &GameGraph, k: usize) -> bool {
    if k <= 1 {
        return g.order() >= k;
    }
    let mut visited = vec![false; g.order()];
    (0..g.order()).any(|s| g.degree(s) > 0 && extends_to(g, s, k - 1, &mut visited))
}

/// DFS: can a simple path starting at `v` (avoiding `visited`) reach `need` more vertices after `v`?
fn extends_to(g: &GameGraph, v: Vertex, need: usize, visited: &mut [bool]) -> bool {
    if need == 0 {
        return true;
    }
    visited[v] = true;
    let found = g
        .neighbors(v)
        .any(|w| !visited[w] && extends_to(g, w, need - 1, visited));
    visited[v] = false;
    found
}

/// Whether `g + uv` has a path on `k` vertices, assuming `g` has none.
///
/// Such a path must use `uv`: a path ending at `u` (avoiding `v`) glued to a
/// disjoint path starting at `v`.
pub(crate) fn creates_path(g: &GameGraph, u: Vertex, v: Vertex, k: usize) -> bool {
    if k == 3 {
        return g.degree(u) + g.degree(v) > 0;
    }
    let mut visited = vec![false; g.order()];
    visited[v] = true;
    left_arm(g, u, 1, k, v, &mut visited)
}

fn left_arm(g: &GameGraph, x: Vertex, used: usize, k: usize, v: Vertex, visited: &mut [bool]) -> bool {
    visited[x] = true;
    // `used` vertices on the u-side; v must reach k - used vertices on its side.
    visited[v] = false;
    let mut found = extends_to(g, v, k - used - 1, visited);
    visited[v] = true;
    if !found && used + 1 < k {
        let next: Vec<Vertex> = g.neighbors(x).filter(|&w| !visited[w]).collect();
        found = next
            .into_iter()
            .any(|w| left_arm(g, w, used + 1, k, v, visited));
    }
    visited[x] = false;
    found
}

/// Whether some pair of vertices has two common neighbors.
pub(crate) fn has_c4(g: &GameGraph) -> bool {
    let order = g.order();
    (0..order).any(|u| {
        g.degree(u) >= 2
            && ((u + 1)..order).any(|w| g.degree(w) >= 2 && g.common_neighbor_count(u, w) >= 2)
    })
}
