//! Canonical certificates of positions under host automorphisms.
//!
//! The labeling is found by colour refinement followed by individualization
//! with backtracking; among all discrete colourings reached, the one giving
//! the lexicographically least adjacency encoding wins. Host parts act as
//! initial colours, so automorphisms of `K_{m,n}` never mix parts except by
//! the explicit part swap tried when `m == n`.

use std::collections::HashMap;
use std::fmt;

use crate::families::{FamilyError, ForbiddenFamily, MoveChecker};
use crate::graph::{Edge, GameGraph, HostGraph, Vertex};

/// Canonical key of a position. Equal for positions related by a host automorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Box<[u8]>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

const FORMAT_VERSION: u8 = 1;

pub fn certificate(g: &GameGraph) -> Certificate {
    let mut bytes = header(g.host());
    bytes.extend(canonical_encoding(g));
    Certificate(bytes.into_boxed_slice())
}

fn header(host: HostGraph) -> Vec<u8> {
    let (kind, a, b) = match host {
        HostGraph::Complete { n } => (0u8, n, 0),
        HostGraph::Bipartite { m, n } => (1u8, m, n),
    };
    let mut out = vec![FORMAT_VERSION, kind];
    out.extend((a as u32).to_le_bytes());
    out.extend((b as u32).to_le_bytes());
    out
}

/// Vertex order of the canonical form: `order[i]` is the vertex labelled `i`.
pub fn canonical_order(g: &GameGraph) -> Vec<Vertex> {
    search(g).1
}

fn canonical_encoding(g: &GameGraph) -> Vec<u8> {
    search(g).0
}

fn search(g: &GameGraph) -> (Vec<u8>, Vec<Vertex>) {
    let order = g.order();
    let starts: Vec<Vec<u32>> = match g.host() {
        HostGraph::Complete { .. } => vec![vec![0; order]],
        HostGraph::Bipartite { m, n } => {
            let xy: Vec<u32> = (0..order).map(|v| u32::from(v >= m)).collect();
            if m == n {
                let yx = xy.iter().map(|&c| 1 - c).collect();
                vec![xy, yx]
            } else {
                vec![xy]
            }
        }
    };
    let mut search = Search {
        g,
        best: None,
    };
    for colors in starts {
        let colors = refine(g, colors);
        search.descend(colors);
    }
    let (code, labeling) = search.best.expect("at least one leaf");
    (code, labeling)
}

struct Search<'a> {
    g: &'a GameGraph,
    best: Option<(Vec<u8>, Vec<Vertex>)>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        let order = colors.len();
        let mut sizes = vec![0usize; order];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        // Target cell: smallest colour among non-singleton cells.
        let Some(target) = (0..order).find(|&c| sizes[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<Vertex> = (0..order).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<Vertex> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            // Individualize v: it keeps colour `target`, the rest of its cell moves up by one.
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| if c as usize > target || (c as usize == target && w != v) { c + 1 } else { c })
                .collect();
            self.descend(refine(self.g, split));
        }
    }

    /// Transposing twins is an automorphism of the coloured graph, so their subtrees agree.
    fn twins(&self, u: Vertex, v: Vertex) -> bool {
        let g = self.g;
        let (ru, rv) = (g.row(u), g.row(v));
        ru.iter().zip(rv).enumerate().all(|(i, (&a, &b))| {
            let mut mask = !0u64;
            for w in [u, v] {
                if w / 64 == i {
                    mask &= !(1u64 << (w % 64));
                }
            }
            a & mask == b & mask
        })
    }

    fn leaf(&mut self, colors: &[u32]) {
        let order = colors.len();
        let mut labeling = vec![0; order];
        for (v, &c) in colors.iter().enumerate() {
            labeling[c as usize] = v;
        }
        let code = encode(self.g, &labeling);
        match &self.best {
            Some((best, _)) if *best <= code => {}
            _ => self.best = Some((code, labeling)),
        }
    }
}

/// Adjacency bits in label order, packed most significant bit first.
///
/// Complete hosts encode the upper triangle; bipartite hosts encode the
/// block between the first `m` labels and the rest.
fn encode(g: &GameGraph, labeling: &[Vertex]) -> Vec<u8> {
    let order = labeling.len();
    let mut bits = BitWriter::default();
    match g.host() {
        HostGraph::Complete { .. } => {
            for i in 0..order {
                for j in (i + 1)..order {
                    bits.push(g.has_edge(labeling[i], labeling[j]));
                }
            }
        }
        HostGraph::Bipartite { m, .. } => {
            for i in 0..m {
                for j in m..order {
                    bits.push(g.has_edge(labeling[i], labeling[j]));
                }
            }
        }
    }
    bits.finish()
}

#[derive(Default)]
struct BitWriter {
    out: Vec<u8>,
    used: u8,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        if self.used == 0 {
            self.out.push(0);
        }
        if bit {
            *self.out.last_mut().unwrap() |= 0x80 >> self.used;
        }
        self.used = (self.used + 1) % 8;
    }

    fn finish(self) -> Vec<u8> {
        self.out
    }
}

/// Colour refinement to the coarsest equitable partition finer than `colors`.
///
/// New colours are ranks of `(old colour, sorted neighbour colours)`, so the
/// result depends only on the coloured graph up to isomorphism and preserves
/// the relative order of existing cells.
fn refine(g: &GameGraph, mut colors: Vec<u32>) -> Vec<u32> {
    let order = colors.len();
    let mut cells = count_distinct(&colors);
    loop {
        let mut signatures: Vec<(u32, Vec<u32>, Vertex)> = (0..order)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        signatures.sort_unstable();
        let mut next = vec![0u32; order];
        let mut rank = 0u32;
        for i in 0..order {
            if i > 0 && (signatures[i].0, &signatures[i].1) != (signatures[i - 1].0, &signatures[i - 1].1) {
                rank += 1;
            }
            next[signatures[i].2] = rank;
        }
        let new_cells = rank as usize + 1;
        colors = next;
        if new_cells == cells {
            return colors;
        }
        cells = new_cells;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// One legal move per class of moves leading to isomorphic positions.
#[derive(Debug, Clone)]
pub struct MoveOrbit {
    /// Lexicographically least move in the class.
    pub representative: Edge,
    pub size: usize,
    pub child: GameGraph,
    pub certificate: Certificate,
}

/// Legal moves of `g` grouped by the certificate of the resulting position,
/// ordered by representative.
pub fn move_orbits(f: ForbiddenFamily, g: &GameGraph) -> Result<Vec<MoveOrbit>, FamilyError> {
    let checker = MoveChecker::new(f, g)?;
    Ok(orbits_of(g, checker.legal_moves()))
}

pub(crate) fn orbits_of(g: &GameGraph, moves: Vec<Edge>) -> Vec<MoveOrbit> {
    let mut index: HashMap<Certificate, usize> = HashMap::new();
    let mut orbits: Vec<MoveOrbit> = Vec::new();
    for e in moves {
        let child = g.add_edge(e).expect("legal moves are host non-edges");
        let cert = certificate(&child);
        match index.get(&cert) {
            Some(&i) => orbits[i].size += 1,
            None => {
                index.insert(cert.clone(), orbits.len());
                orbits.push(MoveOrbit {
                    representative: e,
                    size: 1,
                    child,
                    certificate: cert,
                });
            }
        }
    }
    orbits
}

/// Representatives of [`move_orbits`].
pub fn legal_move_orbits(f: ForbiddenFamily, g: &GameGraph) -> Result<Vec<Edge>, FamilyError> {
    Ok(move_orbits(f, g)?.into_iter().map(|o| o.representative).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> HostGraph {
        HostGraph::complete(n).unwrap()
    }

    fn graph(host: HostGraph, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(host, edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edges_agree() {
        assert_eq!(certificate(&graph(k(5), &[(0, 1)])), certificate(&graph(k(5), &[(2, 3)])));
    }

    #[test]
    fn p3_and_matching_differ() {
        assert_ne!(
            certificate(&graph(k(4), &[(0, 1), (1, 2)])),
            certificate(&graph(k(4), &[(0, 1), (2, 3)]))
        );
    }

    #[test]
    fn balanced_bipartite_swaps_parts() {
        let host = HostGraph::bipartite(2, 2).unwrap();
        assert_eq!(certificate(&graph(host, &[(0, 2)])), certificate(&graph(host, &[(1, 3)])));
        // A star centred in X is a star centred in Y after the swap.
        assert_eq!(
            certificate(&graph(host, &[(0, 2), (0, 3)])),
            certificate(&graph(host, &[(0, 2), (1, 2)]))
        );
    }

    #[test]
    fn unbalanced_bipartite_keeps_parts() {
        let host = HostGraph::bipartite(3, 2).unwrap();
        assert_ne!(
            certificate(&graph(host, &[(0, 3), (0, 4)])),
            certificate(&graph(host, &[(0, 3), (1, 3)]))
        );
    }

    #[test]
    fn hosts_do_not_collide() {
        assert_ne!(certificate(&GameGraph::empty(k(4))), certificate(&GameGraph::empty(k(5))));
        let b = HostGraph::bipartite(2, 2).unwrap();
        assert_ne!(certificate(&GameGraph::empty(k(4))), certificate(&GameGraph::empty(b)));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // C6 against two triangles: refinement alone cannot tell them apart.
        let c6 = graph(k(6), &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let two_k3 = graph(k(6), &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_ne!(certificate(&c6), certificate(&two_k3));
        let relabelled = graph(k(6), &[(3, 0), (0, 5), (5, 1), (1, 2), (2, 4), (4, 3)]);
        assert_eq!(certificate(&c6), certificate(&relabelled));
    }

    #[test]
    fn orbit_examples() {
        let f = ForbiddenFamily::OddCycles;
        assert_eq!(legal_move_orbits(f, &GameGraph::empty(k(6))).unwrap().len(), 1);
        let one = graph(k(4), &[(0, 1)]);
        let reps = legal_move_orbits(f, &one).unwrap();
        assert_eq!(reps, vec![Edge::new(0, 2).unwrap(), Edge::new(2, 3).unwrap()]);
        let b = HostGraph::bipartite(3, 2).unwrap();
        let p4 = ForbiddenFamily::path(4).unwrap();
        assert_eq!(legal_move_orbits(p4, &GameGraph::empty(b)).unwrap().len(), 1);
    }

    #[test]
    fn canonical_order_reproduces_encoding() {
        let g = graph(k(5), &[(0, 4), (4, 2), (1, 3)]);
        let order = canonical_order(&g);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..5).collect::<Vec<_>>());
        assert_eq!(encode(&g, &order), canonical_encoding(&g));
    }
}
