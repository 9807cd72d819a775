//! Weighted graphs, their text format and the Laplacian.
//!
//! Vertices are 0-based inside the crate. The file format numbers them from 1,
//! and [`WeightedGraph::parse`] / the `Display` impl are the only places that
//! translate between the two.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseErrorKind, Result};
use crate::matrix::Matrix;

/// An undirected edge with a strictly positive conductance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    /// Edge resistance `1/ω`.
    pub fn resistance(&self) -> f64 {
        1.0 / self.weight
    }
}

/// A simple undirected graph on `n >= 2` vertices with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
}

fn valid_weight(w: f64) -> bool {
    w.is_finite() && w > 0.0
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "vertex count must be at least 2, got {n}"
            )));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has an endpoint outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {}", e.u)));
            }
            if !valid_weight(e.weight) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.u, e.v, e.weight
                )));
            }
            if !seen.insert(e.key()) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    e.u, e.v
                )));
            }
        }
        Ok(WeightedGraph { n, edges })
    }

    /// Builds from `(u, v, weight)` triples with 0-based vertices.
    pub fn from_triples(n: usize, triples: &[(usize, usize, f64)]) -> Result<Self> {
        let edges = triples
            .iter()
            .map(|&(u, v, weight)| Edge { u, v, weight })
            .collect();
        WeightedGraph::new(n, edges)
    }

    /// The path `v_0 - v_1 - ... - v_{n-1}` with `weights[k]` on edge `{v_k, v_{k+1}}`.
    pub fn path(n: usize, weights: &[f64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "a path needs at least 2 vertices, got {n}"
            )));
        }
        if weights.len() != n - 1 {
            return Err(Error::InvalidGraph(format!(
                "path on {n} vertices needs {} weights, got {}",
                n - 1,
                weights.len()
            )));
        }
        let edges = weights
            .iter()
            .enumerate()
            .map(|(k, &weight)| Edge {
                u: k,
                v: k + 1,
                weight,
            })
            .collect();
        WeightedGraph::new(n, edges)
    }

    /// Unweighted cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges = (0..n)
            .map(|k| Edge {
                u: k,
                v: (k + 1) % n,
                weight: 1.0,
            })
            .collect();
        WeightedGraph::new(n, edges)
    }

    /// Parses the line-oriented graph format (`n <count>`, `e <i> <j> [<w>]`, `#` comments).
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "n" => {
                    if n.is_some() {
                        return Err(Error::parse(line_no, ParseErrorKind::DuplicateHeader));
                    }
                    if fields.len() != 2 {
                        return Err(malformed(line_no, line));
                    }
                    let count: usize = fields[1].parse().map_err(|_| malformed(line_no, line))?;
                    if count < 2 {
                        return Err(Error::parse(line_no, ParseErrorKind::TooFewVertices(count)));
                    }
                    n = Some(count);
                }
                "e" => {
                    let count = n.ok_or(Error::parse(line_no, ParseErrorKind::MissingHeader))?;
                    if !(3..=4).contains(&fields.len()) {
                        return Err(malformed(line_no, line));
                    }
                    let i: usize = fields[1].parse().map_err(|_| malformed(line_no, line))?;
                    let j: usize = fields[2].parse().map_err(|_| malformed(line_no, line))?;
                    for vertex in [i, j] {
                        if vertex == 0 || vertex > count {
                            return Err(Error::parse(
                                line_no,
                                ParseErrorKind::VertexOutOfRange { vertex, n: count },
                            ));
                        }
                    }
                    if i == j {
                        return Err(Error::parse(line_no, ParseErrorKind::SelfLoop(i)));
                    }
                    let weight = match fields.get(3) {
                        Some(tok) => f64::from_str(tok).map_err(|_| malformed(line_no, line))?,
                        None => 1.0,
                    };
                    if !valid_weight(weight) {
                        return Err(Error::parse(
                            line_no,
                            ParseErrorKind::NonPositiveWeight(weight),
                        ));
                    }
                    if !seen.insert((i.min(j), i.max(j))) {
                        return Err(Error::parse(line_no, ParseErrorKind::DuplicateEdge(i, j)));
                    }
                    edges.push(Edge {
                        u: i - 1,
                        v: j - 1,
                        weight,
                    });
                }
                _ => return Err(malformed(line_no, line)),
            }
        }
        let n = n.ok_or(Error::EmptyInput)?;
        WeightedGraph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Same edge set, new weights (in edge order).
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} weights, got {}",
                self.edges.len(),
                weights.len()
            )));
        }
        let edges = self
            .edges
            .iter()
            .zip(weights)
            .map(|(e, &weight)| Edge { weight, ..*e })
            .collect();
        WeightedGraph::new(self.n, edges)
    }

    /// All weights set to 1.
    pub fn unweighted(&self) -> Self {
        WeightedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge { weight: 1.0, ..*e })
                .collect(),
        }
    }

    /// All weights multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let w: Vec<f64> = self.edges.iter().map(|e| e.weight * factor).collect();
        self.with_weights(&w)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|e| e.key() == key)
    }

    /// Neighbor lists of the unweighted skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn laplacian(&self) -> Laplacian {
        let mut m = Matrix::zeros(self.n, self.n);
        for e in &self.edges {
            m[(e.u, e.u)] += e.weight;
            m[(e.v, e.v)] += e.weight;
            m[(e.u, e.v)] -= e.weight;
            m[(e.v, e.u)] -= e.weight;
        }
        Laplacian(m)
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// Edge weights `c_1..c_{n-1}` in path order, if the graph is the path
    /// `v_0 - v_1 - ... - v_{n-1}`.
    pub fn path_weights(&self) -> Option<Vec<f64>> {
        if self.edges.len() != self.n - 1 {
            return None;
        }
        let mut weights = vec![f64::NAN; self.n - 1];
        for e in &self.edges {
            let (a, b) = e.key();
            if b != a + 1 {
                return None;
            }
            weights[a] = e.weight;
        }
        Some(weights)
    }

    pub fn is_path(&self) -> bool {
        self.path_weights().is_some()
    }
}

fn malformed(line: usize, text: &str) -> Error {
    Error::parse(line, ParseErrorKind::Malformed(text.to_string()))
}

impl FromStr for WeightedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WeightedGraph::parse(s)
    }
}

/// Writes the file format; weights use the shortest representation that parses
/// back to the same `f64`.
impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for e in &self.edges {
            writeln!(f, "e {} {} {}", e.u + 1, e.v + 1, e.weight)?;
        }
        Ok(())
    }
}

/// Weighted graph Laplacian `L = D - W`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian(Matrix);

impl Laplacian {
    /// Wraps an arbitrary square matrix; callers vouch for the Laplacian structure.
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument("Laplacian must be square".into()));
        }
        Ok(Laplacian(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.0.mul_vec(x)
    }

    /// `<Lx, x>`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        crate::matrix::dot(&self.apply(x), x)
    }
}
