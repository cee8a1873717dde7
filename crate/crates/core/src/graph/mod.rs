//! Simple undirected graphs with optional (P, N) side labels, plus exact
//! maximal-independent-set machinery.
//!
//! Vertex ids are `0..len()`. Every graph is limited to [`MAX_VERTICES`]
//! vertices; the enumeration and search routines are exponential and meant
//! for instances of a few dozen vertices.

mod hitting;
mod mis;
mod vertex_set;
mod views;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::formula::ParseError;

pub use hitting::{min_hitting_set, min_transversal, MinTransversal};
pub use mis::{
    enumerate_mis, enumerate_mis_limited, find_disjoint_mis, is_independent,
    is_maximal_independent, is_transversal, TransversalCheck, DEFAULT_MIS_LIMIT,
};
pub use vertex_set::{VertexSet, MAX_VERTICES};
pub use views::{complement, maximal_cliques, to_height_two_poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("edge {0}-{1} joins two vertices on the same side")]
    SameSideEdge(usize, usize),
    #[error("graph has {0} vertices; the limit is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("more than {0} maximal independent sets")]
    TooManyMis(usize),
    #[error("vertex {0} has no side assigned")]
    UnassignedSide(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    P,
    N,
    Unassigned,
}

impl Side {
    pub fn code(self) -> char {
        match self {
            Side::P => 'P',
            Side::N => 'N',
            Side::Unassigned => 'U',
        }
    }
}

/// An undirected simple graph with a label and a side per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    sides: Vec<Side>,
    adj: Vec<VertexSet>,
    index: HashMap<String, usize>,
}

impl Graph {
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = (S, Side)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph {
            labels: Vec::new(),
            sides: Vec::new(),
            adj: Vec::new(),
            index: HashMap::new(),
        };
        for (label, side) in vertices {
            g.add_vertex(label, side)?;
        }
        Ok(g)
    }

    /// Graph with vertices labelled by their ids and no sides.
    pub fn unlabelled(len: usize) -> Result<Self, GraphError> {
        Graph::new((0..len).map(|v| (v.to_string(), Side::Unassigned)))
    }

    pub fn add_vertex(
        &mut self,
        label: impl Into<String>,
        side: Side,
    ) -> Result<usize, GraphError> {
        let label = label.into();
        if self.labels.len() == MAX_VERTICES {
            return Err(GraphError::TooManyVertices(MAX_VERTICES + 1));
        }
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateLabel(label));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.sides.push(side);
        self.adj.push(VertexSet::new());
        Ok(id)
    }

    /// Adds `u–v`; returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (su, sv) = (self.sides[u], self.sides[v]);
        if su == sv && su != Side::Unassigned {
            return Err(GraphError::SameSideEdge(u, v));
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.len() && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Neighbors of `v` together with `v`.
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn side_set(&self, side: Side) -> VertexSet {
        (0..self.len()).filter(|&v| self.sides[v] == side).collect()
    }

    /// True when every vertex has a side and every edge crosses sides.
    pub fn is_bipartitioned(&self) -> bool {
        self.sides.iter().all(|&s| s != Side::Unassigned)
            && self.edges().all(|(u, v)| self.sides[u] != self.sides[v])
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Builds a set from labels or decimal ids (labels take precedence).
    pub fn parse_set<'a>(
        &self,
        tokens: impl IntoIterator<Item = &'a str>,
    ) -> Result<VertexSet, String> {
        let mut s = VertexSet::new();
        for tok in tokens {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v = match self.vertex_by_label(tok) {
                Some(v) => v,
                None => tok
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v < self.len())
                    .ok_or_else(|| format!("unknown vertex `{tok}`"))?,
            };
            s.insert(v);
        }
        Ok(s)
    }

    /// `{a,b,c}` using vertex labels, ascending by id.
    pub fn format_set(&self, s: &VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p graph {} {}\n", self.len(), self.edge_count());
        for v in 0..self.len() {
            let _ = writeln!(out, "v {v} {} {}", self.sides[v].code(), self.labels[v]);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    /// Parses the `p graph` format. A trailing `k <value>` line, as written
    /// by the reduction, is returned alongside the graph.
    pub fn parse(text: &str) -> Result<(Graph, Option<usize>), ParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut g = Graph::new(Vec::<(String, Side)>::new()).expect("empty graph");
        let mut edges = 0usize;
        let mut budget = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| ParseError::new(line_no, format!("invalid number `{tok}`")))
            };
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(ParseError::new(line_no, "duplicate header"));
                    }
                    if fields.len() != 4 || fields[1] != "graph" {
                        return Err(ParseError::new(
                            line_no,
                            "expected header `p graph <#vertices> <#edges>`",
                        ));
                    }
                    let nv = num(fields[2])?;
                    if nv > MAX_VERTICES {
                        return Err(ParseError::new(
                            line_no,
                            GraphError::TooManyVertices(nv).to_string(),
                        ));
                    }
                    header = Some((line_no, nv, num(fields[3])?));
                }
                "v" => {
                    if header.is_none() {
                        return Err(ParseError::new(line_no, "vertex before header"));
                    }
                    if fields.len() != 4 {
                        return Err(ParseError::new(
                            line_no,
                            "expected `v <id> <P|N|U> <label>`",
                        ));
                    }
                    let id = num(fields[1])?;
                    if id != g.len() {
                        return Err(ParseError::new(
                            line_no,
                            format!("expected vertex id {}, found {id}", g.len()),
                        ));
                    }
                    let side = match fields[2] {
                        "P" => Side::P,
                        "N" => Side::N,
                        "U" => Side::Unassigned,
                        other => {
                            return Err(ParseError::new(line_no, format!("unknown side `{other}`")))
                        }
                    };
                    g.add_vertex(fields[3], side)
                        .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                }
                "e" => {
                    let Some((_, nv, _)) = header else {
                        return Err(ParseError::new(line_no, "edge before header"));
                    };
                    if fields.len() != 3 {
                        return Err(ParseError::new(line_no, "expected `e <id> <id>`"));
                    }
                    let (u, v) = (num(fields[1])?, num(fields[2])?);
                    if g.len() != nv {
                        return Err(ParseError::new(line_no, "edges must follow all vertices"));
                    }
                    match g.add_edge(u, v) {
                        Ok(true) => edges += 1,
                        Ok(false) => {
                            return Err(ParseError::new(line_no, format!("parallel edge {u}-{v}")))
                        }
                        Err(e) => return Err(ParseError::new(line_no, e.to_string())),
                    }
                }
                "k" => {
                    if fields.len() != 2 {
                        return Err(ParseError::new(line_no, "expected `k <value>`"));
                    }
                    budget = Some(num(fields[1])?);
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        format!("unknown line type `{other}`"),
                    ))
                }
            }
        }
        let Some((line, nv, ne)) = header else {
            return Err(ParseError::new(0, "missing `p graph` header"));
        };
        if g.len() != nv {
            return Err(ParseError::new(
                line,
                format!("header declares {nv} vertices, found {}", g.len()),
            ));
        }
        if edges != ne {
            return Err(ParseError::new(
                line,
                format!("header declares {ne} edges, found {edges}"),
            ));
        }
        Ok((g, budget))
    }

    /// Graphviz rendering with P-side vertices on one rank and N-side
    /// vertices on the other. `group` may tag vertices with a cluster key;
    /// vertices sharing a key are listed together inside their rank.
    pub fn to_dot_grouped(&self, group: impl Fn(&str) -> Option<String>) -> String {
        let mut out = String::from("graph G {\n  node [shape=circle];\n");
        for (side, name) in [(Side::P, "P"), (Side::N, "N"), (Side::Unassigned, "U")] {
            let mut members: Vec<(Option<String>, usize)> = (0..self.len())
                .filter(|&v| self.sides[v] == side)
                .map(|v| (group(&self.labels[v]), v))
                .collect();
            if members.is_empty() {
                continue;
            }
            members.sort();
            if side == Side::Unassigned {
                out.push_str("  {\n");
            } else {
                let _ = writeln!(out, "  subgraph side_{name} {{\n    rank=same;");
            }
            let mut current: Option<&Option<String>> = None;
            for (key, v) in &members {
                if current != Some(key) {
                    if let Some(k) = key {
                        let _ = writeln!(out, "    // {k}");
                    }
                    current = Some(key);
                }
                let _ = writeln!(out, "    v{v} [label=\"{}\"];", escape(&self.labels[*v]));
            }
            out.push_str("  }\n");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_grouped(|_| None)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.len())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    /// Graph on `len` unlabelled vertices with the given edges.
    pub fn graph(len: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::unlabelled(len).unwrap();
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    pub fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> Graph {
        let mut g = Graph::new([("a", Side::P), ("b", Side::N), ("c", Side::P)]).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        g
    }

    #[test]
    fn structural_invariants() {
        let mut g = path_abc();
        assert_eq!(g.add_edge(0, 0), Err(GraphError::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 2), Err(GraphError::SameSideEdge(0, 2)));
        assert_eq!(g.add_edge(0, 5), Err(GraphError::UnknownVertex(5)));
        assert_eq!(g.add_edge(1, 0), Ok(false));
        assert_eq!(
            g.add_vertex("a", Side::N),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert!(g.is_bipartitioned());
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn text_round_trip() {
        let g = path_abc();
        let text = g.to_text();
        assert_eq!(
            text,
            "p graph 3 2\nv 0 P a\nv 1 N b\nv 2 P c\ne 0 1\ne 1 2\n"
        );
        let (h, k) = Graph::parse(&format!("{text}k 4\n")).unwrap();
        assert_eq!(h, g);
        assert_eq!(k, Some(4));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Graph::parse("p graph 2 1\nv 0 P a\nv 1 P b\ne 0 1\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = Graph::parse("p graph 2 1\nv 0 P a\nv 1 N b\ne 0 1\ne 1 0\n").unwrap_err();
        assert_eq!(err.line, 5);
        let err = Graph::parse("p graph 2 0\nv 0 P a\nv 2 N b\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = Graph::parse("p graph 2 0\nv 0 P a\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(Graph::parse("v 0 P a\n").is_err());
    }

    #[test]
    fn parse_set_accepts_labels_and_ids() {
        let g = path_abc();
        assert_eq!(g.parse_set(["b"]).unwrap(), VertexSet::singleton(1));
        assert_eq!(g.parse_set("a,2".split(',')).unwrap().to_vec(), vec![0, 2]);
        assert!(g.parse_set(["z"]).is_err());
        assert_eq!(g.format_set(&g.parse_set(["c", "a"]).unwrap()), "{a,c}");
    }

    #[test]
    fn dot_ranks_sides() {
        let dot = path_abc().to_dot();
        assert!(dot.contains("subgraph side_P {\n    rank=same;\n    v0 [label=\"a\"];\n    v2"));
        assert!(dot.contains("subgraph side_N"));
        assert!(dot.contains("v1 -- v2;"));
    }
}
