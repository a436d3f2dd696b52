//! Exact solver and analysis toolkit for F-saturation games.
//!
//! Two players, Max and Min, alternately add edges of a host graph (`K_n` or
//! `K_{m,n}`) to a growing subgraph that must stay free of a forbidden family
//! `F`. The game ends when no edge can be added; Max wants it long, Min short.
//!
//! ```
//! use satgame::{families::ForbiddenFamily, graph::HostGraph, solver::{game_value, PlayerRole, SolveConfig}};
//!
//! let host = HostGraph::complete(4).unwrap();
//! let cfg = SolveConfig::new(ForbiddenFamily::OddCycles, host, PlayerRole::Max);
//! assert_eq!(game_value(&cfg).unwrap().value, 4);
//! ```

mod bitset;
pub mod analysis;
pub mod canonical;
pub mod families;
pub mod graph;
pub mod policies;
pub mod simulate;
pub mod solver;
pub mod verify;

/// The book's chapters, compiled as doctests.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub struct $name;
        };
    }
    chapter!(Overview, "overview.md");
    chapter!(Positions, "positions.md");
    chapter!(Families, "families.md");
    chapter!(Certificates, "certificates.md");
    chapter!(Solving, "solving.md");
    chapter!(Strategies, "strategies.md");
    chapter!(Simulation, "simulation.md");
    chapter!(Analysis, "analysis.md");
    chapter!(Cli, "cli.md");
    chapter!(Acceptance, "acceptance.md");
}
