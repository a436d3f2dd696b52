//! Host graphs, game positions and the structural queries used by every other module.
//!
//! Vertex ids are dense and fixed by the host. On a bipartite host `K_{m,n}`
//! (always stored with `m >= n`) the part `X` is `0..m` and `Y` is `m..m+n`.

mod json;
mod matching;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset;

pub use json::{GraphDocument, GraphJsonError};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0} is not an edge of the host")]
    EdgeNotInHost(Edge),
    #[error("edge {0} is already present")]
    EdgeAlreadyPresent(Edge),
    #[error("invalid host: {0}")]
    InvalidHost(String),
    #[error("vertex {vertex} out of range for a host of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
}

/// An unordered vertex pair kept in normal form `(min, max)`.
///
/// The derived ordering is the lexicographic order used for transcripts and
/// every tie-break in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Normalizes `(u, v)`. Loops are rejected.
    pub fn new(u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge(u, v)),
            std::cmp::Ordering::Greater => Ok(Edge(v, u)),
            std::cmp::Ordering::Equal => Err(GraphError::Loop(u)),
        }
    }

    /// Builds an edge from endpoints the caller knows to be distinct.
    #[inline]
    pub(crate) fn of(u: Vertex, v: Vertex) -> Self {
        debug_assert_ne!(u, v);
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    #[inline]
    pub fn u(self) -> Vertex {
        self.0
    }

    #[inline]
    pub fn v(self) -> Vertex {
        self.1
    }

    #[inline]
    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    /// The endpoint that is not `w`, if `w` is an endpoint.
    pub fn other(self, w: Vertex) -> Option<Vertex> {
        if w == self.0 {
            Some(self.1)
        } else if w == self.1 {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [u, v] = <[Vertex; 2]>::deserialize(d)?;
        Edge::new(u, v).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    X,
    Y,
}

/// The arena: `K_n` or `K_{m,n}` with `m >= n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HostGraph {
    Complete { n: usize },
    Bipartite { m: usize, n: usize },
}

impl HostGraph {
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidHost("K_n needs n >= 1".into()));
        }
        Ok(HostGraph::Complete { n })
    }

    /// Builds `K_{m,n}`, swapping the parts if `m < n`.
    pub fn bipartite(m: usize, n: usize) -> Result<Self, GraphError> {
        if m == 0 || n == 0 {
            return Err(GraphError::InvalidHost("K_{m,n} needs m, n >= 1".into()));
        }
        let (m, n) = if m >= n { (m, n) } else { (n, m) };
        Ok(HostGraph::Bipartite { m, n })
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n,
            HostGraph::Bipartite { m, n } => m + n,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, HostGraph::Bipartite { .. })
    }

    /// Part sizes `(|X|, |Y|)` for bipartite hosts.
    pub fn parts(&self) -> Option<(usize, usize)> {
        match *self {
            HostGraph::Complete { .. } => None,
            HostGraph::Bipartite { m, n } => Some((m, n)),
        }
    }

    pub fn part_of(&self, v: Vertex) -> Option<Part> {
        match *self {
            HostGraph::Complete { .. } => None,
            HostGraph::Bipartite { m, .. } => Some(if v < m { Part::X } else { Part::Y }),
        }
    }

    /// Vertex ids of one part of a bipartite host.
    pub fn part_vertices(&self, part: Part) -> std::ops::Range<Vertex> {
        match (*self, part) {
            (HostGraph::Bipartite { m, .. }, Part::X) => 0..m,
            (HostGraph::Bipartite { m, n }, Part::Y) => m..m + n,
            (HostGraph::Complete { n }, _) => 0..n,
        }
    }

    /// Whether `{u, v}` is an edge of the host.
    pub fn allows(&self, u: Vertex, v: Vertex) -> bool {
        let order = self.order();
        if u == v || u >= order || v >= order {
            return false;
        }
        match *self {
            HostGraph::Complete { .. } => true,
            HostGraph::Bipartite { m, .. } => (u < m) != (v < m),
        }
    }

    /// `|E(H)|`.
    pub fn edge_count(&self) -> usize {
        match *self {
            HostGraph::Complete { n } => n * (n - 1) / 2,
            HostGraph::Bipartite { m, n } => m * n,
        }
    }

    /// The `index`-th host edge in lexicographic order.
    pub fn edge_at(&self, index: usize) -> Edge {
        debug_assert!(index < self.edge_count());
        match *self {
            HostGraph::Complete { n } => {
                let mut rest = index;
                let mut u = 0;
                while rest >= n - 1 - u {
                    rest -= n - 1 - u;
                    u += 1;
                }
                Edge(u, u + 1 + rest)
            }
            HostGraph::Bipartite { m, n } => Edge(index / n, m + index % n),
        }
    }

    /// Inverse of [`HostGraph::edge_at`].
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.allows(e.0, e.1) {
            return None;
        }
        Some(match *self {
            HostGraph::Complete { n } => e.0 * (2 * n - e.0 - 1) / 2 + (e.1 - e.0 - 1),
            HostGraph::Bipartite { m, n } => e.0 * n + (e.1 - m),
        })
    }

    /// All host edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let host = *self;
        (0..host.order()).flat_map(move |u| {
            ((u + 1)..host.order())
                .filter(move |&v| host.allows(u, v))
                .map(move |v| Edge(u, v))
        })
    }
}

impl fmt::Display for HostGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HostGraph::Complete { n } => write!(f, "K:{n}"),
            HostGraph::Bipartite { m, n } => write!(f, "B:{m},{n}"),
        }
    }
}

impl FromStr for HostGraph {
    type Err = GraphError;

    /// Parses `K:n` or `B:m,n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::InvalidHost(format!("expected K:n or B:m,n, got {s:?}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        match kind {
            "K" | "k" => HostGraph::complete(rest.trim().parse().map_err(|_| bad())?),
            "B" | "b" => {
                let (m, n) = rest.split_once(',').ok_or_else(bad)?;
                HostGraph::bipartite(
                    m.trim().parse().map_err(|_| bad())?,
                    n.trim().parse().map_err(|_| bad())?,
                )
            }
            _ => Err(bad()),
        }
    }
}

/// A game position: a simple subgraph of the host.
///
/// Positions are values. [`GameGraph::add_edge`] returns a new position and
/// leaves the receiver untouched; [`GameGraph::insert_edge`] is the in-place
/// form used by simulations on large hosts.
#[derive(Clone)]
pub struct GameGraph {
    host: HostGraph,
    words: usize,
    adj: Vec<u64>,
    degree: Vec<u32>,
    edge_count: usize,
}

impl PartialEq for GameGraph {
    fn eq(&self, other: &Self) -> bool {
        self.host == other.host && self.adj == other.adj
    }
}

impl Eq for GameGraph {}

impl std::hash::Hash for GameGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.host.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for GameGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameGraph")
            .field("host", &self.host)
            .field("edges", &self.edges())
            .finish()
    }
}

impl GameGraph {
    pub fn empty(host: HostGraph) -> Self {
        let order = host.order();
        let words = bitset::words_for(order);
        GameGraph {
            host,
            words,
            adj: vec![0; order * words],
            degree: vec![0; order],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(host: HostGraph, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = GameGraph::empty(host);
        for (u, v) in edges {
            g.insert_edge(Edge::new(u, v)?)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn host(&self) -> HostGraph {
        self.host
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v] as usize
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0) as usize
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && bitset::test(self.row(u), v)
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    /// Neighbor bitset of `v`.
    #[inline]
    pub(crate) fn row(&self, v: Vertex) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bitset::ones(self.row(v))
    }

    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> usize {
        bitset::intersection_count(self.row(u), self.row(v))
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.degree[v] == 0
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.order()).filter(|&v| self.degree[v] == 0)
    }

    /// Edge set in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.order() {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| Edge(u, v)));
        }
        out
    }

    /// Host edges not yet present, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.host.edges().filter(|e| !self.contains(*e))
    }

    /// Returns the position with `e` added.
    pub fn add_edge(&self, e: Edge) -> Result<GameGraph, GraphError> {
        let mut next = self.clone();
        next.insert_edge(e)?;
        Ok(next)
    }

    /// Adds `e` in place.
    pub fn insert_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        let (u, v) = e.endpoints();
        let order = self.order();
        for w in [u, v] {
            if w >= order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order });
            }
        }
        if !self.host.allows(u, v) {
            return Err(GraphError::EdgeNotInHost(e));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgeAlreadyPresent(e));
        }
        let w = self.words;
        bitset::set(&mut self.adj[u * w..(u + 1) * w], v);
        bitset::set(&mut self.adj[v * w..(v + 1) * w], u);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.edge_count += 1;
        Ok(())
    }

    /// Connected-component label per vertex plus the number of components.
    ///
    /// Labels are assigned in order of each component's smallest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let order = self.order();
        let mut label = vec![usize::MAX; order];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..order {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for y in bitset::ones(self.row(x)) {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// A proper 2-coloring of every bipartite component.
    ///
    /// `color[v]` is 0 or 1, with the smallest vertex of each component
    /// colored 0. `bipartite[c]` is false for components containing an odd
    /// cycle; their colors are meaningless.
    pub fn two_coloring(&self) -> TwoColoring {
        let order = self.order();
        let mut color = vec![u8::MAX; order];
        let mut component = vec![usize::MAX; order];
        let mut bipartite = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..order {
            if color[start] != u8::MAX {
                continue;
            }
            let c = bipartite.len();
            let mut ok = true;
            color[start] = 0;
            component[start] = c;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for y in bitset::ones(self.row(x)) {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        component[y] = c;
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        ok = false;
                    }
                }
            }
            bipartite.push(ok);
        }
        TwoColoring {
            color,
            component,
            bipartite,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().bipartite.iter().all(|&b| b)
    }

    /// Connected components with their structural class, ordered by smallest vertex.
    pub fn components(&self) -> Vec<ComponentSummary> {
        let (label, count) = self.component_labels();
        let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            members[c].push(v);
        }
        members
            .into_iter()
            .map(|vertices| ComponentSummary::classify(self, vertices))
            .collect()
    }

    /// Color-class sizes of each nontrivial component, or `NotBipartite`.
    pub fn bipartition_balance(&self) -> Vec<ComponentBipartition> {
        let coloring = self.two_coloring();
        let mut sizes = vec![[0usize; 2]; coloring.bipartite.len()];
        let mut smallest = vec![usize::MAX; coloring.bipartite.len()];
        let mut nontrivial = vec![false; coloring.bipartite.len()];
        for v in 0..self.order() {
            let c = coloring.component[v];
            sizes[c][coloring.color[v] as usize] += 1;
            smallest[c] = smallest[c].min(v);
            nontrivial[c] |= self.degree[v] > 0;
        }
        (0..sizes.len())
            .filter(|&c| nontrivial[c])
            .map(|c| ComponentBipartition {
                smallest_vertex: smallest[c],
                coloring: if coloring.bipartite[c] {
                    Bipartition::Bipartite {
                        first: sizes[c][0],
                        second: sizes[c][1],
                    }
                } else {
                    Bipartition::NotBipartite
                },
            })
            .collect()
    }

    /// Matching number `α'(G)`.
    ///
    /// Kuhn's augmenting paths on bipartite hosts, Edmonds' blossom search
    /// otherwise.
    pub fn max_matching(&self) -> usize {
        match self.host {
            HostGraph::Bipartite { .. } => matching::bipartite_matching(self),
            HostGraph::Complete { .. } => matching::general_matching(self),
        }
    }

    /// Whether `G` contains a 3-edge path `u-a-b-v` on four distinct vertices.
    pub fn p4_between(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let row_v = self.row(v);
        for a in self.neighbors(u) {
            if a == v {
                continue;
            }
            for (i, (&x, &y)) in self.row(a).iter().zip(row_v).enumerate() {
                let mut both = x & y;
                // b must differ from u (a and v are never in N(a) ∩ N(v) ∖ loops).
                if i == u / 64 {
                    both &= !(1u64 << (u % 64));
                }
                if both != 0 {
                    return true;
                }
            }
        }
        false
    }
}

/// Result of [`GameGraph::two_coloring`].
#[derive(Debug, Clone)]
pub struct TwoColoring {
    pub color: Vec<u8>,
    pub component: Vec<usize>,
    pub bipartite: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bipartition {
    /// Class sizes; `first` is the class holding the component's smallest vertex.
    Bipartite { first: usize, second: usize },
    NotBipartite,
}

impl Bipartition {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Bipartition::Bipartite { first, second } if first == second)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentBipartition {
    pub smallest_vertex: Vertex,
    pub coloring: Bipartition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentClass {
    IsolatedVertex,
    SingleEdge,
    /// A path on `k >= 3` vertices.
    Path { vertices: usize },
    /// `K_{1,leaves}`; `P_3` is reported as a path, so `leaves >= 3` here.
    Star { center: Vertex, leaves: usize },
    Triangle,
    /// A cycle on `k >= 4` vertices.
    Cycle { vertices: usize },
    Tree,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub vertices: Vec<Vertex>,
    pub edges: usize,
    pub class: ComponentClass,
    /// Vertex counts in `(X, Y)` on bipartite hosts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<(usize, usize)>,
}

impl ComponentSummary {
    fn classify(g: &GameGraph, vertices: Vec<Vertex>) -> Self {
        let k = vertices.len();
        let degree_sum: usize = vertices.iter().map(|&v| g.degree(v)).sum();
        let edges = degree_sum / 2;
        let max_deg = vertices.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
        let class = if k == 1 {
            ComponentClass::IsolatedVertex
        } else if k == 2 {
            ComponentClass::SingleEdge
        } else if edges == k - 1 {
            if max_deg <= 2 {
                ComponentClass::Path { vertices: k }
            } else if max_deg == k - 1 {
                let center = *vertices.iter().find(|&&v| g.degree(v) == k - 1).unwrap();
                ComponentClass::Star {
                    center,
                    leaves: k - 1,
                }
            } else {
                ComponentClass::Tree
            }
        } else if edges == k && vertices.iter().all(|&v| g.degree(v) == 2) {
            if k == 3 {
                ComponentClass::Triangle
            } else {
                ComponentClass::Cycle { vertices: k }
            }
        } else {
            ComponentClass::Other
        };
        let parts = g.host.parts().map(|(m, _)| {
            let x = vertices.iter().filter(|&&v| v < m).count();
            (x, k - x)
        });
        ComponentSummary {
            vertices,
            edges,
            class,
            parts,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Whether the component is a star in the broad sense: `K_2`, `P_3` or `K_{1,r}`.
    pub fn is_star(&self) -> bool {
        match self.class {
            ComponentClass::SingleEdge | ComponentClass::Star { .. } => true,
            ComponentClass::Path { vertices } => vertices == 3,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> HostGraph {
        HostGraph::complete(n).unwrap()
    }

    #[test]
    fn add_edge_on_k2() {
        let g = GameGraph::empty(k(2));
        let h = g.add_edge(Edge::new(0, 1).unwrap()).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn add_edge_rejects_partite_violation() {
        let g = GameGraph::empty(HostGraph::bipartite(2, 2).unwrap());
        let e = Edge::new(0, 1).unwrap();
        assert_eq!(g.add_edge(e), Err(GraphError::EdgeNotInHost(e)));
    }

    #[test]
    fn add_edge_rejects_duplicate() {
        let g = GameGraph::from_edges(k(4), [(0, 1)]).unwrap();
        let e = Edge::new(1, 0).unwrap();
        assert_eq!(g.add_edge(e), Err(GraphError::EdgeAlreadyPresent(e)));
    }

    #[test]
    fn loops_and_out_of_range() {
        assert_eq!(Edge::new(3, 3), Err(GraphError::Loop(3)));
        let g = GameGraph::empty(k(3));
        assert!(matches!(
            g.add_edge(Edge::new(1, 5).unwrap()),
            Err(GraphError::VertexOutOfRange { vertex: 5, order: 3 })
        ));
    }

    #[test]
    fn components_of_empty_k3() {
        let comps = GameGraph::empty(k(3)).components();
        assert_eq!(comps.len(), 3);
        assert!(comps
            .iter()
            .all(|c| c.class == ComponentClass::IsolatedVertex));
    }

    #[test]
    fn components_triangle_and_isolated() {
        let g = GameGraph::from_edges(k(4), [(0, 1), (1, 2), (0, 2)]).unwrap();
        let classes: Vec<_> = g.components().into_iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            vec![ComponentClass::Triangle, ComponentClass::IsolatedVertex]
        );
    }

    #[test]
    fn components_star() {
        let g = GameGraph::from_edges(k(5), [(0, 1), (0, 2), (0, 3)]).unwrap();
        let classes: Vec<_> = g.components().into_iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            vec![
                ComponentClass::Star {
                    center: 0,
                    leaves: 3
                },
                ComponentClass::IsolatedVertex
            ]
        );
    }

    #[test]
    fn components_paths_cycles_and_bipartite_counts() {
        let g = GameGraph::from_edges(k(9), [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let classes: Vec<_> = g.components().into_iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            vec![
                ComponentClass::Path { vertices: 3 },
                ComponentClass::Cycle { vertices: 4 },
                ComponentClass::IsolatedVertex,
                ComponentClass::IsolatedVertex,
            ]
        );
        let b = GameGraph::from_edges(HostGraph::bipartite(3, 2).unwrap(), [(0, 3), (1, 3)]).unwrap();
        let comps = b.components();
        assert_eq!(comps[0].parts, Some((2, 1)));
        assert_eq!(comps[0].class, ComponentClass::Path { vertices: 3 });
    }

    #[test]
    fn bipartition_examples() {
        let edge = GameGraph::from_edges(k(2), [(0, 1)]).unwrap();
        assert_eq!(
            edge.bipartition_balance()[0].coloring,
            Bipartition::Bipartite { first: 1, second: 1 }
        );
        let p4 = GameGraph::from_edges(k(5), [(0, 1), (1, 2), (2, 3)]).unwrap();
        let bal = p4.bipartition_balance();
        assert_eq!(bal.len(), 1);
        assert_eq!(bal[0].coloring, Bipartition::Bipartite { first: 2, second: 2 });
        let tri = GameGraph::from_edges(k(3), [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.bipartition_balance()[0].coloring, Bipartition::NotBipartite);
    }

    #[test]
    fn matching_examples() {
        let three = GameGraph::from_edges(k(6), [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(three.max_matching(), 3);
        let star = GameGraph::from_edges(k(5), [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.max_matching(), 1);
        let p4 = GameGraph::from_edges(k(4), [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.max_matching(), 2);
    }

    #[test]
    fn p4_between_examples() {
        let p4 = GameGraph::from_edges(k(4), [(0, 2), (2, 3), (3, 1)]).unwrap();
        assert!(p4.p4_between(0, 1));
        let star = GameGraph::from_edges(k(3), [(2, 0), (2, 1)]).unwrap();
        assert!(!star.p4_between(0, 1));
        let c6 = GameGraph::from_edges(k(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert!(c6.p4_between(0, 3));
        assert!(!c6.p4_between(0, 2));
    }

    #[test]
    fn host_edge_indexing_round_trips() {
        for host in [k(1), k(2), k(7), HostGraph::bipartite(3, 5).unwrap()] {
            let all: Vec<_> = host.edges().collect();
            assert_eq!(all.len(), host.edge_count());
            for (i, e) in all.iter().enumerate() {
                assert_eq!(host.edge_at(i), *e);
                assert_eq!(host.edge_index(*e), Some(i));
            }
        }
    }

    #[test]
    fn host_parsing_normalizes() {
        assert_eq!("K:6".parse::<HostGraph>().unwrap(), k(6));
        assert_eq!(
            "B:3,4".parse::<HostGraph>().unwrap(),
            HostGraph::Bipartite { m: 4, n: 3 }
        );
        assert!("B:0,4".parse::<HostGraph>().is_err());
        assert!("Q:3".parse::<HostGraph>().is_err());
        assert_eq!(HostGraph::bipartite(2, 5).unwrap().to_string(), "B:5,2");
    }
}
