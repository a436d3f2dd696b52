use serde::{Deserialize, Serialize};

use super::{Edge, GameGraph, GraphError, HostGraph};

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum HostRepr {
    Complete { n: usize },
    Bipartite { m: usize, n: usize },
}

impl Serialize for HostGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            HostGraph::Complete { n } => HostRepr::Complete { n },
            HostGraph::Bipartite { m, n } => HostRepr::Bipartite { m, n },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HostGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match HostRepr::deserialize(d)? {
            HostRepr::Complete { n } => HostGraph::complete(n),
            HostRepr::Bipartite { m, n } => HostGraph::bipartite(m, n),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// The on-disk form of a position:
/// `{"host": {"type": "complete", "n": 6}, "edges": [[0,1], ...]}`.
///
/// Edges are written in lexicographic order. A bipartite host given with
/// `m < n` is normalized by swapping the parts, which relabels vertices, so
/// documents should be written with `m >= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub host: HostGraph,
    pub edges: Vec<Edge>,
}

impl GraphDocument {
    pub fn into_graph(self) -> Result<GameGraph, GraphError> {
        let mut g = GameGraph::empty(self.host);
        for e in self.edges {
            g.insert_edge(e)?;
        }
        Ok(g)
    }
}

impl From<&GameGraph> for GraphDocument {
    fn from(g: &GameGraph) -> Self {
        GraphDocument {
            host: g.host(),
            edges: g.edges(),
        }
    }
}

impl GameGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDocument::from(self)).expect("graph documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphJsonError> {
        let doc: GraphDocument = serde_json::from_str(text)?;
        Ok(doc.into_graph()?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphJsonError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_match_the_published_shape() {
        let g = GameGraph::from_edges(HostGraph::bipartite(4, 3).unwrap(), [(2, 5), (0, 4)]).unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"host":{"type":"bipartite","m":4,"n":3},"edges":[[0,4],[2,5]]}"#
        );
        let k = GameGraph::from_json(r#"{"host": {"type": "complete", "n": 6}, "edges": [[3,1]]}"#).unwrap();
        assert_eq!(k.edges(), vec![Edge::new(1, 3).unwrap()]);
    }

    #[test]
    fn rejects_edges_outside_host() {
        let err = GameGraph::from_json(r#"{"host":{"type":"bipartite","m":2,"n":2},"edges":[[0,1]]}"#);
        assert!(matches!(err, Err(GraphJsonError::Graph(GraphError::EdgeNotInHost(_)))));
    }
}
