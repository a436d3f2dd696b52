//! Policy-vs-policy games, the random F-free process, and scaling experiments.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{FamilyError, ForbiddenFamily, MoveOracle};
use crate::graph::{Edge, GameGraph, GraphError, HostGraph};
use crate::policies::{Policy, PolicyError};
use crate::solver::PlayerRole;

#[derive(Debug, Error)]
pub enum SimulateError {
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("transcript does not replay: {0}")]
    Replay(String),
    #[error("experiment needs at least one trial and ascending sizes")]
    BadExperiment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptConfig {
    pub family: String,
    pub host: HostGraph,
    pub first: PlayerRole,
    pub max_policy: String,
    pub min_policy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub index: usize,
    pub mover: PlayerRole,
    pub edge: Edge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub config: TranscriptConfig,
    pub moves: Vec<MoveRecord>,
    pub final_size: usize,
    pub saturated: bool,
}

impl Transcript {
    pub fn family(&self) -> Result<ForbiddenFamily, FamilyError> {
        ForbiddenFamily::parse(&self.config.family, self.config.host)
    }

    /// Re-applies the moves from the empty position, checking every one is
    /// legal and that the recorded size and saturation flag come out again.
    pub fn replay(&self) -> Result<GameGraph, SimulateError> {
        let f = self.family()?;
        let mut oracle = MoveOracle::new(f, GameGraph::empty(self.config.host))?;
        for (i, rec) in self.moves.iter().enumerate() {
            let expected = PlayerRole::to_move(self.config.first, i);
            if rec.index != i || rec.mover != expected {
                return Err(SimulateError::Replay(format!("move {i} is out of turn")));
            }
            oracle
                .play(rec.edge)
                .map_err(|e| SimulateError::Replay(format!("move {i}: {e}")))?;
        }
        let g = oracle.into_graph();
        if g.edge_count() != self.final_size {
            return Err(SimulateError::Replay(format!(
                "{} moves replay to {} edges, transcript says {}",
                self.moves.len(),
                g.edge_count(),
                self.final_size
            )));
        }
        if f.is_saturated(&g)? != self.saturated {
            return Err(SimulateError::Replay("saturation flag disagrees".into()));
        }
        Ok(g)
    }

    pub fn final_graph(&self) -> Result<GameGraph, SimulateError> {
        self.replay()
    }
}

/// Plays `pmax` against `pmin` from the empty position until saturation.
///
/// `seed` is recorded in the transcript; randomized policies carry their own
/// generators, so callers seed them (see [`Policy::reseeded`]).
pub fn play(
    pmax: &Policy,
    pmin: &Policy,
    f: ForbiddenFamily,
    h: HostGraph,
    first: PlayerRole,
    seed: Option<u64>,
) -> Result<Transcript, SimulateError> {
    pmax.check_compatible(f, h)?;
    pmin.check_compatible(f, h)?;
    let config = TranscriptConfig {
        family: f.to_string(),
        host: h,
        first,
        max_policy: pmax.to_string(),
        min_policy: pmin.to_string(),
        seed,
    };
    let mut policies = [pmax.clone(), pmin.clone()];
    let mut oracle = MoveOracle::new(f, GameGraph::empty(h))?;
    let mut moves = Vec::new();
    while !oracle.is_saturated() {
        let index = oracle.graph().edge_count();
        let mover = PlayerRole::to_move(first, index);
        let slot = usize::from(mover == PlayerRole::Min);
        let (e, next) = policies[slot].select_with(&mut oracle, mover)?;
        oracle.play(e)?;
        policies[slot] = next;
        moves.push(MoveRecord { index, mover, edge: e });
    }
    let g = oracle.into_graph();
    Ok(Transcript {
        config,
        final_size: g.edge_count(),
        saturated: f.is_saturated(&g)?,
        moves,
    })
}

/// The random F-free process: a uniformly random legal edge every step,
/// all drawn from one generator seeded with `seed`.
pub fn random_process(f: ForbiddenFamily, h: HostGraph, seed: u64) -> Result<Transcript, SimulateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = MoveOracle::new(f, GameGraph::empty(h))?;
    let mut moves = Vec::new();
    while let Some(e) = oracle.random_legal(&mut rng) {
        let index = oracle.graph().edge_count();
        oracle.play(e)?;
        moves.push(MoveRecord {
            index,
            mover: PlayerRole::to_move(PlayerRole::Max, index),
            edge: e,
        });
    }
    let g = oracle.into_graph();
    Ok(Transcript {
        config: TranscriptConfig {
            family: f.to_string(),
            host: h,
            first: PlayerRole::Max,
            max_policy: "process".into(),
            min_policy: "process".into(),
            seed: Some(seed),
        },
        final_size: g.edge_count(),
        saturated: f.is_saturated(&g)?,
        moves,
    })
}

/// SplitMix64 output function; mixes the master seed with a trial index.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    let mut z = (master ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15)).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub host: HostGraph,
    pub n: usize,
    pub trials: usize,
    pub min: usize,
    pub mean: f64,
    pub max: usize,
    pub seconds: f64,
    pub seed: u64,
}

impl ExperimentRow {
    pub const CSV_HEADER: &'static str = "n,trials,min,mean,max,seconds";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{:.3},{},{:.3}",
            self.n, self.trials, self.min, self.mean, self.max, self.seconds
        )
    }
}

pub fn experiment_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(ExperimentRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Plays `trials` games on each host and summarizes the final sizes.
///
/// Trial `i` on row `j` uses `trial_seed(seed, j * trials + i)`; a randomized
/// policy is reseeded from it (Min's generator with the seed's complement).
/// `n` in each row is the smaller part size, or the order of `K_n`.
pub fn scaling_experiment(
    family: &str,
    hosts: &[HostGraph],
    pmax: &Policy,
    pmin: &Policy,
    first: PlayerRole,
    trials: usize,
    seed: u64,
) -> Result<Vec<ExperimentRow>, SimulateError> {
    if trials == 0 || hosts.windows(2).any(|w| w[0].order() > w[1].order()) {
        return Err(SimulateError::BadExperiment);
    }
    let mut rows = Vec::with_capacity(hosts.len());
    for (j, &host) in hosts.iter().enumerate() {
        let f = ForbiddenFamily::parse(family, host)?;
        let start = Instant::now();
        let sizes = (0..trials)
            .into_par_iter()
            .map(|i| {
                let s = trial_seed(seed, (j * trials + i) as u64);
                let t = play(&pmax.reseeded(s), &pmin.reseeded(!s), f, host, first, Some(s))?;
                Ok(t.final_size)
            })
            .collect::<Result<Vec<usize>, SimulateError>>()?;
        let n = match host {
            HostGraph::Complete { n } => n,
            HostGraph::Bipartite { m, n } => m.min(n),
        };
        rows.push(ExperimentRow {
            host,
            n,
            trials,
            min: *sizes.iter().min().expect("trials >= 1"),
            mean: sizes.iter().sum::<usize>() as f64 / trials as f64,
            max: *sizes.iter().max().expect("trials >= 1"),
            seconds: start.elapsed().as_secs_f64(),
            seed,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_policies_on_k10() {
        let h = HostGraph::complete(10).unwrap();
        let f = ForbiddenFamily::path(4).unwrap();
        let t = play(&Policy::P4MaxKn, &Policy::P4MinKn, f, h, PlayerRole::Max, None).unwrap();
        assert!((7..=8).contains(&t.final_size), "{}", t.final_size);
        assert!(t.saturated);
        t.replay().unwrap();
    }

    #[test]
    fn first_legal_tree_game_on_k3() {
        let h = HostGraph::complete(3).unwrap();
        let t = play(
            &Policy::FirstLegal,
            &Policy::FirstLegal,
            ForbiddenFamily::trees_for(h),
            h,
            PlayerRole::Max,
            None,
        )
        .unwrap();
        assert_eq!(t.final_size, 1);
    }

    #[test]
    fn bipartite_policies_on_k33() {
        let h = HostGraph::bipartite(3, 3).unwrap();
        let f = ForbiddenFamily::path(4).unwrap();
        let t = play(&Policy::BipP4Max, &Policy::bip_p4_min(), f, h, PlayerRole::Max, None).unwrap();
        assert_eq!(t.final_size, 4);
    }

    #[test]
    fn process_examples() {
        let t = random_process(ForbiddenFamily::Cycle4, HostGraph::bipartite(8, 8).unwrap(), 3).unwrap();
        assert!(t.final_size >= 15);
        let t = random_process(ForbiddenFamily::star(3).unwrap(), HostGraph::complete(6).unwrap(), 3).unwrap();
        assert!(t.final_size <= 9);
        let t = random_process(ForbiddenFamily::path(4).unwrap(), HostGraph::bipartite(1, 1).unwrap(), 3).unwrap();
        assert_eq!(t.final_size, 1);
    }

    #[test]
    fn seeds_reproduce() {
        let h = HostGraph::complete(9).unwrap();
        let a = random_process(ForbiddenFamily::OddCycles, h, 42).unwrap();
        let b = random_process(ForbiddenFamily::OddCycles, h, 42).unwrap();
        assert_eq!(a, b);
        a.replay().unwrap();
    }

    #[test]
    fn tampered_transcripts_fail_replay() {
        let h = HostGraph::complete(6).unwrap();
        let mut t = random_process(ForbiddenFamily::OddCycles, h, 1).unwrap();
        t.final_size += 1;
        assert!(t.replay().is_err());
    }

    #[test]
    fn single_trial_rows_collapse() {
        let hosts = [HostGraph::complete(6).unwrap(), HostGraph::complete(8).unwrap()];
        let rows = scaling_experiment(
            "odd-cycles",
            &hosts,
            &Policy::random(0),
            &Policy::random(0),
            PlayerRole::Max,
            1,
            9,
        )
        .unwrap();
        for r in &rows {
            assert_eq!(r.min as f64, r.mean);
            assert_eq!(r.min, r.max);
        }
        assert!(experiment_csv(&rows).starts_with("n,trials,min,mean,max,seconds\n6,1,"));
    }
}
