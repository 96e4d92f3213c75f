//! Simple undirected graphs in sorted adjacency form, plus the traversal
//! machinery the rest of the crate leans on: BFS distances, diameters,
//! longest paths on trees and the path-plus-attachments decomposition.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on vertex indices accepted from text input.
pub const MAX_VERTICES: usize = 1 << 24;

const UNREACHED: usize = usize::MAX;

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge {v}-{}", w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    fn bfs_raw(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_raw(0).iter().all(|&d| d != UNREACHED)
    }

    pub fn is_tree(&self) -> bool {
        self.m + 1 == self.n() && self.is_connected()
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Unweighted shortest-path distances from `source`.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        let dist = self.bfs_raw(source);
        if dist.contains(&UNREACHED) {
            return Err(Error::Disconnected);
        }
        Ok(dist)
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)?[v])
    }

    /// Diameter and every unordered pair `(u, v)`, `u < v`, realising it.
    /// Runs a traversal from every vertex.
    pub fn diameter_and_diametral_pairs(&self) -> Result<(usize, Vec<(usize, usize)>)> {
        self.require_connected()?;
        let mut diam = 0;
        let mut pairs = Vec::new();
        for u in 0..self.n() {
            let dist = self.bfs_raw(u);
            for (v, &d) in dist.iter().enumerate().skip(u + 1) {
                if d > diam {
                    diam = d;
                    pairs.clear();
                }
                if d == diam && d > 0 {
                    pairs.push((u, v));
                }
            }
        }
        Ok((diam, pairs))
    }

    /// A longest path of a tree: among all diametral paths, the
    /// lexicographically smallest vertex sequence once each path is oriented
    /// to start at its smaller endpoint.
    pub fn longest_path(&self) -> Result<Vec<usize>> {
        self.require_connected()?;
        if !self.is_tree() {
            return Err(Error::Unsupported(
                "longest path search is only supported on trees; supply a certified path".into(),
            ));
        }
        if self.n() == 1 {
            return Ok(vec![0]);
        }
        // double sweep: a and b are the ends of one diameter
        let d0 = self.bfs_raw(0);
        let a = argmax_first(&d0);
        let da = self.bfs_raw(a);
        let b = argmax_first(&da);
        let db = self.bfs_raw(b);
        let diam = da[b];
        // in a tree ecc(u) = max(d(u,a), d(u,b)), so peripheral vertices are
        // exactly the diametral endpoints
        let start = (0..self.n())
            .find(|&u| da[u].max(db[u]) == diam)
            .expect("a diametral endpoint exists");

        let dist = self.bfs_raw(start);
        // reaches[v]: the subtree hanging below v (away from start) contains
        // a vertex at distance diam
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
        let mut reaches = vec![false; self.n()];
        for &v in &order {
            if dist[v] == diam {
                reaches[v] = true;
                continue;
            }
            reaches[v] = self.adj[v]
                .iter()
                .any(|&w| dist[w] == dist[v] + 1 && reaches[w]);
        }
        let mut path = Vec::with_capacity(diam + 1);
        let mut cur = start;
        path.push(cur);
        while dist[cur] < diam {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dist[w] == dist[cur] + 1 && reaches[w])
                .expect("a continuation toward a far endpoint exists");
            path.push(cur);
        }
        Ok(path)
    }

    /// Checks that `path` is a simple path of this graph.
    pub fn validate_path(&self, path: &[usize]) -> Result<()> {
        if path.is_empty() {
            return Err(Error::InvalidArgument("path is empty".into()));
        }
        let mut seen = vec![false; self.n()];
        for &v in path {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("path repeats vertex {v}")));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !self.has_edge(w[0], w[1])) {
            return Err(Error::InvalidArgument(format!(
                "path vertices {} and {} are not adjacent",
                w[0], w[1]
            )));
        }
        Ok(())
    }

    /// Splits `self` into `path` plus the connected components of the
    /// remaining vertices, each assigned to the path position it hangs off.
    /// A component touching more than one path vertex is anchored at the
    /// smallest such position and flagged as not isolated.
    pub fn decompose_along_path(&self, path: &[usize]) -> Result<PathDecomposition> {
        self.validate_path(path)?;
        let mut position = vec![UNREACHED; self.n()];
        for (k, &v) in path.iter().enumerate() {
            position[v] = k;
        }
        let mut attachments: Vec<Vec<AttachedComponent>> = vec![Vec::new(); path.len()];
        let mut comp_of = vec![UNREACHED; self.n()];
        for root in 0..self.n() {
            if position[root] != UNREACHED || comp_of[root] != UNREACHED {
                continue;
            }
            let mut vertices = vec![root];
            let mut touched: Vec<usize> = Vec::new();
            comp_of[root] = root;
            let mut i = 0;
            while i < vertices.len() {
                let u = vertices[i];
                i += 1;
                for &w in &self.adj[u] {
                    if position[w] != UNREACHED {
                        touched.push(position[w]);
                    } else if comp_of[w] == UNREACHED {
                        comp_of[w] = root;
                        vertices.push(w);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let Some(&anchor) = touched.first() else {
                return Err(Error::Disconnected);
            };
            vertices.sort_unstable();
            attachments[anchor].push(AttachedComponent {
                anchor,
                size: vertices.len(),
                vertices,
                isolated: touched.len() == 1,
            });
        }
        Ok(PathDecomposition {
            path: path.to_vec(),
            attachments,
        })
    }

    /// Subgraph induced on `vertices` (in the given order); vertex `i` of the
    /// result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![UNREACHED; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter(move |&&w| index[w] != UNREACHED && index[w] > i)
                .map(move |&w| (i, index[w]))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>())
    }

    /// Edge-list text, one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn argmax_first(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// A connected piece of the graph hanging off path position `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttachedComponent {
    /// Edge distance of the anchor vertex from the start of the path.
    pub anchor: usize,
    /// Sorted vertex indices of the component.
    pub vertices: Vec<usize>,
    pub size: usize,
    /// Every edge leaving the component lands on the anchor.
    pub isolated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    pub path: Vec<usize>,
    /// `attachments[k]` lists the components anchored at `path[k]`.
    pub attachments: Vec<Vec<AttachedComponent>>,
}

impl PathDecomposition {
    /// Path length in edges.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }

    pub fn components(&self) -> impl Iterator<Item = &AttachedComponent> {
        self.attachments.iter().flatten()
    }

    pub fn anchor_vertex(&self, component: &AttachedComponent) -> usize {
        self.path[component.anchor]
    }
}

/// Parses the edge-list text format: one `u v` pair per line, `#` starts a
/// comment, blank lines are ignored. Vertices are `0..=max index`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut max_index = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let mut next_vertex = || -> Result<usize> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line,
                msg: "expected two vertex indices".into(),
            })?;
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("not a nonnegative integer: {tok:?}"),
            })?;
            if v >= MAX_VERTICES {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex index {v} exceeds limit {MAX_VERTICES}"),
                });
            }
            Ok(v)
        };
        let u = next_vertex()?;
        let v = next_vertex()?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "trailing tokens after edge".into(),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        max_index = Some(max_index.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let Some(max_index) = max_index else {
        return Err(Error::Parse {
            line: 0,
            msg: "no edges".into(),
        });
    };
    Graph::from_edges(max_index + 1, edges)
}
