//! Simple undirected graphs on dense vertex indices, plus the text formats
//! and decomposition primitives the rest of the crate is built on.

mod blocks;
mod canon;
mod embedding;
mod graph6;
mod outerplanar;

pub use blocks::{blocks_and_cutvertices, BcNode, BcTree, Block};
pub use canon::{
    all_graphs_up_to_iso, canonical_form, canonical_form_colored, canonical_graph6, CanonicalForm,
};
pub use embedding::{outerplane_embedding, weak_dual, OuterplaneEmbedding};
pub use graph6::{encode_graph6, parse_graph6, parse_graph6_all};
pub use outerplanar::{is_outerplanar, outer_cycle};

use std::collections::VecDeque;

use thiserror::Error;

/// Vertex index. Vertices are always `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Validation(String),
    #[error("structure error: {0}")]
    Structure(String),
}

/// A finite simple undirected graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Adjacency lists are
/// kept sorted as well, so iteration order is deterministic everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Validation(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(GraphError::Validation(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            labels: None,
        })
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::Validation(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// New graph with the extra edges added (and `extra` new isolated vertices
    /// appended first).
    pub fn extended<I>(&self, extra: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Graph::from_edges(
            self.n + extra,
            self.edges.iter().copied().chain(edges),
        )
    }

    /// Graph with the given edges removed (vertex set unchanged).
    pub fn without_edges(&self, remove: &[(Vertex, Vertex)]) -> Self {
        let norm: Vec<_> = remove.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        Graph::from_edges(
            self.n,
            self.edges.iter().copied().filter(|e| !norm.contains(e)),
        )
        .expect("subset of a valid edge set")
    }

    /// Subgraph induced by `vertices`, relabelled to `0..k` in the order given.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            (index[u] != usize::MAX && index[v] != usize::MAX).then_some((index[u], index[v]))
        });
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph is valid")
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("permutation of a valid graph")
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([s]);
        dist[s] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// True when the graph is a simple path (a single vertex counts).
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adj.iter().all(|a| a.len() <= 2)
    }

    /// Adjacency bitmasks; only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "adjacency masks need n <= 64");
        self.adj
            .iter()
            .map(|a| a.iter().fold(0u64, |m, &w| m | (1 << w)))
            .collect()
    }
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}`.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

/// Parses the plain edge-list format: one `u v` pair per line, with an
/// optional `n <count>` header. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_index: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() == 2 && fields[0] == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: "vertex-count header must come first and only once".into(),
                });
            }
            let count = fields[1].parse::<usize>().map_err(|e| GraphError::Parse {
                line: line_no,
                msg: format!("bad vertex count {:?}: {e}", fields[1]),
            })?;
            declared = Some(count);
            continue;
        }
        if fields.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                msg: format!("expected `u v`, found {line:?}"),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|e| GraphError::Parse {
                line: line_no,
                msg: format!("bad vertex {s:?}: {e}"),
            })
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(GraphError::Validation(format!(
                "line {line_no}: self-loop at vertex {u}"
            )));
        }
        max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = match (declared, max_index) {
        (Some(n), Some(m)) if m >= n => {
            return Err(GraphError::Validation(format!(
                "vertex {m} out of range for declared n = {n}"
            )))
        }
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Graph::from_edges(n, edges)
}

/// Serializes to the edge-list format, always with the `n` header.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads either format: a single whitespace-free token per line is taken as
/// graph6, anything else as an edge list.
pub fn parse_auto(text: &str) -> Result<Graph, GraphError> {
    let meaningful: Vec<&str> = text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let looks_g6 = !meaningful.is_empty()
        && meaningful
            .iter()
            .all(|l| !l.contains(char::is_whitespace) && !l.chars().all(|c| c.is_ascii_digit()));
    if looks_g6 {
        parse_graph6(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_triangle() {
        let g = parse_edge_list("0 1\n1 2\n0 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn edge_list_empty() {
        let g = parse_edge_list("").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn edge_list_dedup() {
        let g = parse_edge_list("0 1\n0 1").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = parse_edge_list("1 0\n0 1").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn edge_list_header_and_errors() {
        let g = parse_edge_list("n 5\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert!(matches!(
            parse_edge_list("0 1\n2 2"),
            Err(GraphError::Validation(_))
        ));
        assert_eq!(
            parse_edge_list("0 1\nfoo bar"),
            Err(GraphError::Parse {
                line: 2,
                msg: "bad vertex \"foo\": invalid digit found in string".into()
            })
        );
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 2\n0 3"),
            Err(GraphError::Validation(_))
        ));
    }

    #[test]
    fn auto_detects_format() {
        assert_eq!(parse_auto("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_auto("0 1\n1 2\n0 2\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn components_and_distances() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(g.distances_from(0)[2], 2);
        assert_eq!(g.distances_from(0)[3], usize::MAX);
        assert!(Graph::path(4).is_path());
        assert!(!Graph::cycle(4).is_tree());
    }
}
