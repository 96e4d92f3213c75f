//! Expected hitting times of the simple random walk, by direct sparse
//! elimination of the absorbing system.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AttachedComponent, Graph, PathDecomposition};
use crate::linalg::{solve_refined, GroundedLaplacian, LdlFactor};

/// Largest system the direct solvers accept.
pub const MAX_SOLVE_VERTICES: usize = 1 << 22;
/// Allowed residual of `h(v) − 1 − mean_{w∼v} h(w)`.
pub const HITTING_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HittingProfile {
    pub targets: Vec<usize>,
    /// Expected steps to reach the target set from each vertex.
    pub h: Vec<f64>,
    pub hit_max: f64,
    pub argmax: usize,
    /// Max-norm residual of the defining recurrence.
    pub residual: f64,
}

pub(crate) fn target_mask(g: &Graph, targets: &[usize]) -> Result<Vec<bool>> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("target set is empty".into()));
    }
    if g.n() > MAX_SOLVE_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: MAX_SOLVE_VERTICES,
        });
    }
    let mut mask = vec![false; g.n()];
    for &t in targets {
        g.check_vertex(t)?;
        mask[t] = true;
    }
    g.require_connected()?;
    Ok(mask)
}

/// Solves `L_NN x = rhs` on the non-target rows and scatters the result
/// into a full-length vector that is zero on the targets.
pub(crate) fn solve_absorbing(
    g: &Graph,
    is_target: &[bool],
    rhs: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<Vec<f64>> {
    let grounded = GroundedLaplacian::new(g, is_target);
    let mut full = vec![0.0; g.n()];
    if grounded.free.is_empty() {
        return Ok(full);
    }
    let factor = LdlFactor::new(&grounded.matrix)?;
    let b: Vec<f64> = grounded.free.iter().map(|&v| rhs(v)).collect();
    let (x, _) = solve_refined(&grounded.matrix, &factor, &b, tol);
    for (&v, xi) in grounded.free.iter().zip(x) {
        full[v] = xi;
    }
    Ok(full)
}

fn recurrence_residual(g: &Graph, is_target: &[bool], h: &[f64]) -> f64 {
    (0..g.n())
        .filter(|&v| !is_target[v])
        .map(|v| {
            let mean = g.neighbors(v).iter().map(|&w| h[w]).sum::<f64>() / g.degree(v) as f64;
            (h[v] - 1.0 - mean).abs()
        })
        .fold(0.0, f64::max)
}

/// Hitting times of a single vertex on a tree, exactly: crossing the edge
/// from `u` towards the target takes `2·|subtree(u)| − 1` steps on average,
/// so every entry is an integer sum.
fn tree_hitting_times(g: &Graph, target: usize) -> Vec<f64> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[target] = target;
    let mut stack = vec![target];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in g.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1u64; n];
    for &v in order.iter().rev().filter(|&&v| v != target) {
        size[parent[v]] += size[v];
    }
    let mut steps = vec![0u64; n];
    for &v in order.iter().filter(|&&v| v != target) {
        steps[v] = steps[parent[v]] + 2 * size[v] - 1;
    }
    steps.into_iter().map(|s| s as f64).collect()
}

/// Expected number of steps for the walk started at each vertex to reach
/// `targets`.
pub fn hitting_times(g: &Graph, targets: &[usize]) -> Result<HittingProfile> {
    let is_target = target_mask(g, targets)?;
    let single = targets.iter().all(|&t| t == targets[0]);
    let h = if single && g.is_tree() {
        tree_hitting_times(g, targets[0])
    } else {
        solve_absorbing(g, &is_target, |v| g.degree(v) as f64, HITTING_RESIDUAL)?
    };
    let residual = recurrence_residual(g, &is_target, &h);
    if residual > HITTING_RESIDUAL * h.iter().fold(1.0f64, |m, x| m.max(x.abs())) {
        return Err(Error::Singular(format!(
            "hitting-time residual {residual:e}"
        )));
    }
    let mut argmax = 0;
    for v in 0..h.len() {
        if h[v] > h[argmax] {
            argmax = v;
        }
    }
    let mut targets = targets.to_vec();
    targets.sort_unstable();
    targets.dedup();
    Ok(HittingProfile {
        targets,
        hit_max: h[argmax],
        argmax,
        h,
        residual,
    })
}

/// Worst expected time for a walk started inside `component` to reach its
/// anchor on the path. Only meaningful for isolated components, whose
/// vertices keep their full degree inside component ∪ {anchor}.
pub fn attachment_hit(
    g: &Graph,
    decomp: &PathDecomposition,
    component: &AttachedComponent,
) -> Result<f64> {
    if !component.isolated {
        return Err(Error::NotIsolated {
            anchor: component.anchor,
        });
    }
    let mut vertices = component.vertices.clone();
    vertices.push(decomp.anchor_vertex(component));
    let sub = g.induced_subgraph(&vertices)?;
    let profile = hitting_times(&sub, &[vertices.len() - 1])?;
    Ok(profile.hit_max)
}

/// `diam · Δ^diam`, the explicit bound on the worst hitting time of a
/// marked vertex in a connected graph of maximum degree `Δ`. Saturates to
/// `+∞` when it overflows.
pub fn proposition_bound(delta: usize, diam: usize) -> Result<f64> {
    if delta == 0 {
        return Err(Error::InvalidArgument(
            "maximum degree must be at least 1".into(),
        ));
    }
    let Ok(exp) = i32::try_from(diam) else {
        return Ok(f64::INFINITY);
    };
    let value = diam as f64 * (delta as f64).powi(exp);
    Ok(if value.is_finite() {
        value
    } else {
        f64::INFINITY
    })
}
