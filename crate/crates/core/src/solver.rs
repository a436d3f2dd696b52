//! Exact game values by memoized minimax over canonical positions.
//!
//! The value of a position is 0 when it is saturated and otherwise one more
//! than the best child value for the player to move. The player to move is
//! fixed by the first player and the parity of the edge count, so the memo is
//! keyed by certificate alone.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::{self, certificate, Certificate};
use crate::families::{FamilyError, ForbiddenFamily, MoveChecker};
use crate::graph::{Edge, GameGraph, HostGraph};
use crate::policies::{Policy, PolicyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlayerRole {
    Max,
    Min,
}

impl PlayerRole {
    pub fn opponent(self) -> Self {
        match self {
            PlayerRole::Max => PlayerRole::Min,
            PlayerRole::Min => PlayerRole::Max,
        }
    }

    /// The player to move after `edges` moves when `first` started.
    pub fn to_move(first: PlayerRole, edges: usize) -> PlayerRole {
        if edges % 2 == 0 {
            first
        } else {
            first.opponent()
        }
    }

    /// The first player of a game in which `mover` is to move after `edges` moves.
    pub fn first_from(mover: PlayerRole, edges: usize) -> PlayerRole {
        PlayerRole::to_move(mover, edges)
    }
}

impl fmt::Display for PlayerRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlayerRole::Max => "max",
            PlayerRole::Min => "min",
        })
    }
}

impl FromStr for PlayerRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(PlayerRole::Max),
            "min" => Ok(PlayerRole::Min),
            _ => Err(format!("expected max or min, got {s:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search stopped after {nodes} nodes ({reason}); value lies in [{lower}, {upper}]")]
    NodeBudgetExceeded {
        nodes: u64,
        reason: &'static str,
        lower: u32,
        upper: u32,
    },
    #[error("position is saturated")]
    PositionSaturated,
    #[error("{mover} is not to move: {edges} edges played with {first} first")]
    MoverMismatch {
        mover: PlayerRole,
        first: PlayerRole,
        edges: usize,
    },
    #[error("randomized policies cannot be certified")]
    RandomPolicyNotCertifiable,
    #[error("legality check disagrees with the from-scratch check at {position} for {edge}")]
    LegalityMismatch { position: String, edge: Edge },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub family: ForbiddenFamily,
    pub host: HostGraph,
    pub first: PlayerRole,
    /// Maximum number of memo entries; filling the table aborts the solve.
    pub memo_capacity: usize,
    /// Maximum number of expanded positions.
    pub node_budget: Option<u64>,
    /// Expand one move per isomorphism class of children instead of every move.
    pub orbit_reduction: bool,
    /// Shuffle move enumeration with this seed. Values must not change.
    pub shuffle_seed: Option<u64>,
    /// Cross-check every incremental legality answer against `is_free`.
    pub verify_legality: bool,
    /// Expand the top levels of the tree on the rayon pool.
    pub parallel: bool,
}

impl SolveConfig {
    pub fn new(family: ForbiddenFamily, host: HostGraph, first: PlayerRole) -> Self {
        SolveConfig {
            family,
            host,
            first,
            memo_capacity: 1 << 26,
            node_budget: None,
            orbit_reduction: true,
            shuffle_seed: None,
            verify_legality: false,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u32,
    pub optimal_move: Option<Edge>,
    pub nodes: u64,
    pub memo_entries: usize,
    pub elapsed: Duration,
}

/// The JSON form of a solve.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolveReport {
    pub family: String,
    pub host: String,
    pub first: PlayerRole,
    pub value: u32,
    pub optimal_move: Option<Edge>,
    pub nodes: u64,
    pub memo_entries: usize,
    pub seconds: f64,
    pub exact: bool,
}

impl SolveResult {
    pub fn report(&self, cfg: &SolveConfig) -> SolveReport {
        SolveReport {
            family: cfg.family.to_string(),
            host: cfg.host.to_string(),
            first: cfg.first,
            value: self.value,
            optimal_move: self.optimal_move,
            nodes: self.nodes,
            memo_entries: self.memo_entries,
            seconds: self.elapsed.as_secs_f64(),
            exact: true,
        }
    }
}

/// Internal abort signal; turned into [`SolveError`] at the root.
#[derive(Debug)]
enum Stop {
    Budget,
    MemoFull,
    Error(SolveError),
}

impl From<FamilyError> for Stop {
    fn from(e: FamilyError) -> Self {
        Stop::Error(e.into())
    }
}

/// Depth below which children are expanded in parallel.
const PARALLEL_DEPTH: usize = 3;

/// A solver with a persistent memo, for repeated queries on one game.
pub struct Solver {
    cfg: SolveConfig,
    memo: DashMap<Certificate, u32>,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

impl Solver {
    pub fn new(cfg: SolveConfig) -> Result<Self, SolveError> {
        let empty = GameGraph::empty(cfg.host);
        if !cfg.family.is_free(&empty)? {
            return Err(FamilyError::PositionNotFree.into());
        }
        Ok(Solver {
            cfg,
            memo: DashMap::new(),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        })
    }

    pub fn config(&self) -> &SolveConfig {
        &self.cfg
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn memo_entries(&self) -> usize {
        self.memo.len()
    }

    /// Value of `g` under optimal play by both sides.
    pub fn value(&self, g: &GameGraph) -> Result<u32, SolveError> {
        self.check_position(g)?;
        let cert = certificate(g);
        self.eval(g, &cert, 0).map_err(|stop| self.stop_error(stop, g, &[]))
    }

    /// Values of the children reached by one representative move per orbit.
    ///
    /// Representatives are the lexicographically least moves of their
    /// classes, in increasing order.
    pub fn move_values(&self, g: &GameGraph) -> Result<Vec<(Edge, u32)>, SolveError> {
        self.check_position(g)?;
        let checker = MoveChecker::new(self.cfg.family, g)?;
        let moves = checker.legal_moves();
        let orbits = if self.cfg.orbit_reduction {
            canonical::orbits_of(g, moves)
        } else {
            plain_children(g, moves)
        };
        let mut out = Vec::with_capacity(orbits.len());
        for o in orbits {
            match self.eval(&o.child, &o.certificate, 1) {
                Ok(v) => out.push((o.representative, v)),
                Err(stop) => return Err(self.stop_error(stop, g, &out)),
            }
        }
        Ok(out)
    }

    /// The lexicographically least move attaining the minimax value.
    pub fn best_move(&self, g: &GameGraph) -> Result<Edge, SolveError> {
        let values = self.move_values(g)?;
        let mover = PlayerRole::to_move(self.cfg.first, g.edge_count());
        pick_best(mover, &values).ok_or(SolveError::PositionSaturated)
    }

    /// Value and optimal move from `g`.
    pub fn solve_from(&self, g: &GameGraph) -> Result<(u32, Option<Edge>), SolveError> {
        let values = self.move_values(g)?;
        let mover = PlayerRole::to_move(self.cfg.first, g.edge_count());
        Ok(match pick_best(mover, &values) {
            None => (0, None),
            Some(e) => {
                let v = values.iter().find(|(m, _)| *m == e).unwrap().1;
                (v + 1, Some(e))
            }
        })
    }

    fn check_position(&self, g: &GameGraph) -> Result<(), SolveError> {
        if g.host() != self.cfg.host {
            return Err(SolveError::Family(FamilyError::InvalidParameter(format!(
                "position on {} given to a solver for {}",
                g.host(),
                self.cfg.host
            ))));
        }
        Ok(())
    }

    fn stop_error(&self, stop: Stop, g: &GameGraph, done: &[(Edge, u32)]) -> SolveError {
        let reason = match stop {
            Stop::Error(e) => return e,
            Stop::Budget => "node budget exhausted",
            Stop::MemoFull => "memo table full",
        };
        let ceiling = (self.cfg.host.edge_count() - g.edge_count()) as u32;
        let mover = PlayerRole::to_move(self.cfg.first, g.edge_count());
        let best = match mover {
            PlayerRole::Max => done.iter().map(|&(_, v)| v + 1).max(),
            PlayerRole::Min => done.iter().map(|&(_, v)| v + 1).min(),
        };
        let (lower, upper) = match (mover, best) {
            (PlayerRole::Max, Some(b)) => (b, ceiling),
            (PlayerRole::Min, Some(b)) => (0, b),
            (_, None) => (0, ceiling),
        };
        SolveError::NodeBudgetExceeded {
            nodes: self.nodes(),
            reason,
            lower,
            upper,
        }
    }

    fn eval(&self, g: &GameGraph, cert: &Certificate, depth: usize) -> Result<u32, Stop> {
        if let Some(v) = self.memo.get(cert) {
            return Ok(*v);
        }
        if self.stopped.load(Ordering::Relaxed) {
            return Err(Stop::Budget);
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.cfg.node_budget.is_some_and(|b| nodes > b) {
            self.stopped.store(true, Ordering::Relaxed);
            return Err(Stop::Budget);
        }

        let checker = MoveChecker::new_unchecked(self.cfg.family, g);
        let mut moves = checker.legal_moves();
        if self.cfg.verify_legality {
            self.verify(g, &moves).map_err(Stop::Error)?;
        }
        if let Some(seed) = self.cfg.shuffle_seed {
            let mut h = DefaultHasher::new();
            cert.hash(&mut h);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h.finish());
            moves.shuffle(&mut rng);
        }
        let children = if self.cfg.orbit_reduction {
            canonical::orbits_of(g, moves)
        } else {
            plain_children(g, moves)
        };

        let value = if children.is_empty() {
            0
        } else {
            let maximize = PlayerRole::to_move(self.cfg.first, g.edge_count()) == PlayerRole::Max;
            let values: Vec<u32> = if self.cfg.parallel && depth < PARALLEL_DEPTH {
                children
                    .par_iter()
                    .map(|o| self.eval(&o.child, &o.certificate, depth + 1))
                    .collect::<Result<_, _>>()?
            } else {
                children
                    .iter()
                    .map(|o| self.eval(&o.child, &o.certificate, depth + 1))
                    .collect::<Result<_, _>>()?
            };
            let best = if maximize {
                values.into_iter().max()
            } else {
                values.into_iter().min()
            };
            1 + best.unwrap()
        };

        if self.memo.len() >= self.cfg.memo_capacity {
            self.stopped.store(true, Ordering::Relaxed);
            return Err(Stop::MemoFull);
        }
        // Concurrent workers may race on the same key; they compute equal values.
        self.memo.insert(cert.clone(), value);
        Ok(value)
    }

    fn verify(&self, g: &GameGraph, legal: &[Edge]) -> Result<(), SolveError> {
        let f = self.cfg.family;
        for e in g.non_edges() {
            let expected = f.is_free(&g.add_edge(e).unwrap())?;
            if expected != legal.binary_search(&e).is_ok() {
                return Err(SolveError::LegalityMismatch {
                    position: g.to_json(),
                    edge: e,
                });
            }
        }
        Ok(())
    }
}

fn plain_children(g: &GameGraph, moves: Vec<Edge>) -> Vec<canonical::MoveOrbit> {
    moves
        .into_iter()
        .map(|e| {
            let child = g.add_edge(e).unwrap();
            let certificate = certificate(&child);
            canonical::MoveOrbit {
                representative: e,
                size: 1,
                child,
                certificate,
            }
        })
        .collect()
}

fn pick_best(mover: PlayerRole, values: &[(Edge, u32)]) -> Option<Edge> {
    let target = match mover {
        PlayerRole::Max => values.iter().map(|&(_, v)| v).max()?,
        PlayerRole::Min => values.iter().map(|&(_, v)| v).min()?,
    };
    values.iter().filter(|&&(_, v)| v == target).map(|&(e, _)| e).min()
}

/// Game value from the empty position.
pub fn game_value(cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let solver = Solver::new(cfg.clone())?;
    let (value, optimal_move) = solver.solve_from(&GameGraph::empty(cfg.host))?;
    Ok(SolveResult {
        value,
        optimal_move,
        nodes: solver.nodes(),
        memo_entries: solver.memo_entries(),
        elapsed: start.elapsed(),
    })
}

/// Optimal move at `g` for `mover` in the game started by `first`.
pub fn best_move(
    f: ForbiddenFamily,
    g: &GameGraph,
    mover: PlayerRole,
    first: PlayerRole,
) -> Result<Edge, SolveError> {
    if PlayerRole::to_move(first, g.edge_count()) != mover {
        return Err(SolveError::MoverMismatch {
            mover,
            first,
            edges: g.edge_count(),
        });
    }
    if f.is_saturated(g)? {
        return Err(SolveError::PositionSaturated);
    }
    Solver::new(SolveConfig::new(f, g.host(), first))?.best_move(g)
}

/// Game length when `fixed_role` plays `policy` and the opponent searches
/// exhaustively for its own objective.
///
/// With `fixed_role = Max` this is the length Max forces with the policy;
/// with `Min`, the length Min holds the game to.
pub fn best_response(policy: &Policy, fixed_role: PlayerRole, cfg: &SolveConfig) -> Result<u32, SolveError> {
    if policy.is_randomized() {
        return Err(SolveError::RandomPolicyNotCertifiable);
    }
    policy.check_compatible(cfg.family, cfg.host)?;
    let mut search = Response {
        family: cfg.family,
        first: cfg.first,
        fixed: fixed_role,
        memo: HashMap::new(),
        nodes: 0,
        budget: cfg.node_budget,
    };
    search.go(&GameGraph::empty(cfg.host), policy)
}

struct Response {
    family: ForbiddenFamily,
    first: PlayerRole,
    fixed: PlayerRole,
    memo: HashMap<(GameGraph, Policy), u32>,
    nodes: u64,
    budget: Option<u64>,
}

impl Response {
    fn go(&mut self, g: &GameGraph, policy: &Policy) -> Result<u32, SolveError> {
        let key = (g.clone(), policy.clone());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            return Err(SolveError::NodeBudgetExceeded {
                nodes: self.nodes,
                reason: "node budget exhausted",
                lower: 0,
                upper: g.host().edge_count() as u32,
            });
        }
        let moves = MoveChecker::new(self.family, g)?.legal_moves();
        let mover = PlayerRole::to_move(self.first, g.edge_count());
        let value = if moves.is_empty() {
            0
        } else if mover == self.fixed {
            let (e, next) = policy.select_move(self.family, g, mover)?;
            if moves.binary_search(&e).is_err() {
                return Err(PolicyError::IllegalMove(e).into());
            }
            1 + self.go(&g.add_edge(e).unwrap(), &next)?
        } else {
            let mut best: Option<u32> = None;
            for e in moves {
                let v = self.go(&g.add_edge(e).unwrap(), policy)?;
                best = Some(match (best, mover) {
                    (None, _) => v,
                    (Some(b), PlayerRole::Max) => b.max(v),
                    (Some(b), PlayerRole::Min) => b.min(v),
                });
            }
            1 + best.unwrap()
        };
        self.memo.insert(key, value);
        Ok(value)
    }
}
