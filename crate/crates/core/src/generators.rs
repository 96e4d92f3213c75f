//! Constructions for the graph families used throughout: paths, roses and
//! roses hung off long paths, spines with stubs, caterpillars, the drift
//! graph, and random trees.
//!
//! Vertex numbering is stable: path vertices first (`0..=d`), then the
//! attached structure in construction order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissibility::CaterpillarSpec;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

fn path_edges(len: usize) -> Vec<(usize, usize)> {
    (1..=len).map(|i| (i - 1, i)).collect()
}

/// Path on `n ≥ 1` vertices.
pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "path needs at least one vertex".into(),
        ));
    }
    Ok(build(n, path_edges(n - 1)))
}

/// Hub `0` with `petals` leaves `1..=petals`.
pub fn gen_rose(petals: usize) -> Result<Graph> {
    if petals == 0 {
        return Err(Error::InvalidArgument(
            "rose needs at least one petal".into(),
        ));
    }
    Ok(build(petals + 1, (1..=petals).map(|i| (0, i)).collect()))
}

/// Path `0..=d`, hub `d + 1` joined to path vertex `attach_pos`, leaves
/// `d + 2 ..` on the hub.
pub fn gen_rose_on_path(d: usize, attach_pos: usize, petals: usize) -> Result<Graph> {
    if attach_pos > d {
        return Err(Error::InvalidArgument(format!(
            "attach position {attach_pos} outside 0..={d}"
        )));
    }
    let hub = d + 1;
    let mut edges = path_edges(d);
    edges.push((attach_pos, hub));
    edges.extend((0..petals).map(|i| (hub, hub + 1 + i)));
    Ok(build(d + petals + 2, edges))
}

/// Path `0..=d` with a pendant path of `stub_len` edges at vertex `⌊d/2⌋`.
pub fn gen_spine(d: usize, stub_len: usize) -> Graph {
    gen_spine_with_leaves(d, stub_len, 0)
}

/// [`gen_spine`] plus `leaves` pendant leaves on every stub vertex.
pub fn gen_spine_with_leaves(d: usize, stub_len: usize, leaves: usize) -> Graph {
    let mut edges = path_edges(d);
    let mut prev = d / 2;
    let mut next = d + 1;
    let mut stub = Vec::with_capacity(stub_len);
    for _ in 0..stub_len {
        edges.push((prev, next));
        stub.push(next);
        prev = next;
        next += 1;
    }
    for s in stub {
        for _ in 0..leaves {
            edges.push((s, next));
            next += 1;
        }
    }
    build(next, edges)
}

/// Spine `0..=spine` with pendant paths per position as listed in `spec`.
pub fn gen_caterpillar(spec: &CaterpillarSpec) -> Graph {
    let mut edges = path_edges(spec.spine);
    let mut next = spec.spine + 1;
    for (k, legs) in spec.legs.iter().enumerate() {
        for &len in legs {
            let mut prev = k;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    build(next, edges)
}

/// Complete `(delta − 1)`-ary tree of depth `levels` rooted at `0`,
/// numbered level by level, with every deepest vertex also joined to the
/// root. At depth one the deepest vertices already are the root's children
/// and gain no second edge.
pub fn gen_drift_graph(delta: usize, levels: usize) -> Result<Graph> {
    if delta < 3 || levels == 0 {
        return Err(Error::InvalidArgument(format!(
            "drift graph needs delta >= 3 and levels >= 1 (got {delta}, {levels})"
        )));
    }
    let branching = delta - 1;
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next = 1;
    for _ in 0..levels {
        let mut deeper = Vec::with_capacity(level.len() * branching);
        for &parent in &level {
            for _ in 0..branching {
                edges.push((parent, next));
                deeper.push(next);
                next += 1;
            }
        }
        level = deeper;
    }
    if levels > 1 {
        edges.extend(level.iter().map(|&v| (0, v)));
    }
    Ok(build(next, edges))
}

/// Vertex count of [`gen_drift_graph`].
pub fn drift_graph_order(delta: usize, levels: usize) -> usize {
    let b = delta - 1;
    (0..=levels).map(|l| b.pow(l as u32)).sum()
}

/// Tree with the given Prüfer sequence on `seq.len() + 2` vertices.
pub fn prufer_decode(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    // linear-time decoding: `leaf` is the smallest current leaf
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edges(n, edges)
}

/// Prüfer sequence of a labelled tree on `n ≥ 2` vertices.
pub fn prufer_encode(tree: &Graph) -> Result<Vec<usize>> {
    let n = tree.n();
    if n < 2 || !tree.is_tree() {
        return Err(Error::InvalidArgument(
            "Prüfer code needs a tree on >= 2 vertices".into(),
        ));
    }
    let mut parent = vec![usize::MAX; n];
    // root at n-1
    let mut stack = vec![n - 1];
    let mut seen = vec![false; n];
    seen[n - 1] = true;
    while let Some(u) = stack.pop() {
        for &w in tree.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        seq.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(seq)
}

/// Uniform random labelled tree on `n` vertices, via a uniform Prüfer
/// sequence. Deterministic per seed.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    match n {
        0 => Err(Error::InvalidArgument(
            "tree needs at least one vertex".into(),
        )),
        1 => Ok(Graph::empty(1)),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

/// Random tree with maximum degree at most `max_degree`: vertex `i` joins a
/// uniformly chosen earlier vertex that still has spare degree.
pub fn gen_random_tree_bounded(n: usize, max_degree: usize, seed: u64) -> Result<Graph> {
    if n == 0 || (n > 2 && max_degree < 2) || (n == 2 && max_degree == 0) {
        return Err(Error::InvalidArgument(format!(
            "no tree on {n} vertices with maximum degree {max_degree}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let slot = rng.gen_range(0..open.len());
        let u = open[slot];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
        if degree[u] == max_degree {
            open.swap_remove(slot);
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// A named family with its integer parameters, as accepted on the command
/// line: `path:10`, `rose:12`, `rose-on-path:9,3,12`, `spine:60,20`,
/// `spine-leaves:60,20,3`, `drift:4,3`, `random-tree:50,7`, and
/// `caterpillar:<spine>;<k>=<len>[/<len>...],...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path {
        n: usize,
    },
    Rose {
        petals: usize,
    },
    RoseOnPath {
        d: usize,
        attach_pos: usize,
        petals: usize,
    },
    Spine {
        d: usize,
        stub_len: usize,
    },
    SpineLeaves {
        d: usize,
        stub_len: usize,
        leaves: usize,
    },
    Caterpillar {
        spec: CaterpillarSpec,
    },
    Drift {
        delta: usize,
        levels: usize,
    },
    RandomTree {
        n: usize,
        seed: u64,
    },
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Path { n } => gen_path(n),
            Family::Rose { petals } => gen_rose(petals),
            Family::RoseOnPath {
                d,
                attach_pos,
                petals,
            } => gen_rose_on_path(d, attach_pos, petals),
            Family::Spine { d, stub_len } => Ok(gen_spine(d, stub_len)),
            Family::SpineLeaves {
                d,
                stub_len,
                leaves,
            } => Ok(gen_spine_with_leaves(d, stub_len, leaves)),
            Family::Caterpillar { ref spec } => Ok(gen_caterpillar(spec)),
            Family::Drift { delta, levels } => gen_drift_graph(delta, levels),
            Family::RandomTree { n, seed } => gen_random_tree(n, seed),
        }
    }

    /// Parses a family name plus its parameter list.
    pub fn from_parts(name: &str, params: &[&str]) -> Result<Self> {
        let ints = |count: usize| -> Result<Vec<u64>> {
            if params.len() != count {
                return Err(Error::InvalidArgument(format!(
                    "family {name} takes {count} parameter(s), got {}",
                    params.len()
                )));
            }
            params
                .iter()
                .map(|p| {
                    p.trim().parse::<u64>().map_err(|_| {
                        Error::InvalidArgument(format!("bad parameter {p:?} for family {name}"))
                    })
                })
                .collect()
        };
        let u = |x: u64| x as usize;
        Ok(match name {
            "path" => Family::Path { n: u(ints(1)?[0]) },
            "rose" => Family::Rose {
                petals: u(ints(1)?[0]),
            },
            "rose-on-path" => {
                let p = ints(3)?;
                Family::RoseOnPath {
                    d: u(p[0]),
                    attach_pos: u(p[1]),
                    petals: u(p[2]),
                }
            }
            "spine" => {
                let p = ints(2)?;
                Family::Spine {
                    d: u(p[0]),
                    stub_len: u(p[1]),
                }
            }
            "spine-leaves" => {
                let p = ints(3)?;
                Family::SpineLeaves {
                    d: u(p[0]),
                    stub_len: u(p[1]),
                    leaves: u(p[2]),
                }
            }
            "drift" => {
                let p = ints(2)?;
                Family::Drift {
                    delta: u(p[0]),
                    levels: u(p[1]),
                }
            }
            "random-tree" => {
                let p = ints(2)?;
                Family::RandomTree {
                    n: u(p[0]),
                    seed: p[1],
                }
            }
            "caterpillar" => Family::Caterpillar {
                spec: params.join(",").parse()?,
            },
            other => {
                return Err(Error::InvalidArgument(format!("unknown family {other:?}")));
            }
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // shorthand P_10 for path:10
        if let Some(n) = s.strip_prefix("P_") {
            return Family::from_parts("path", &[n]);
        }
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        if name == "caterpillar" {
            return Family::from_parts(name, &[rest]);
        }
        let params: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').collect()
        };
        Family::from_parts(name, &params)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Rose { petals } => write!(f, "rose:{petals}"),
            Family::RoseOnPath {
                d,
                attach_pos,
                petals,
            } => write!(f, "rose-on-path:{d},{attach_pos},{petals}"),
            Family::Spine { d, stub_len } => write!(f, "spine:{d},{stub_len}"),
            Family::SpineLeaves {
                d,
                stub_len,
                leaves,
            } => write!(f, "spine-leaves:{d},{stub_len},{leaves}"),
            Family::Caterpillar { spec } => write!(f, "caterpillar:{spec}"),
            Family::Drift { delta, levels } => write!(f, "drift:{delta},{levels}"),
            Family::RandomTree { n, seed } => write!(f, "random-tree:{n},{seed}"),
        }
    }
}
