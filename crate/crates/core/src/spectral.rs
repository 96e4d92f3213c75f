//! Laplacian eigenpairs, with the Fiedler pair as the main product, and
//! verifiers that check the classical facts about it: nodal-domain
//! connectivity, monotone growth toward leaves on trees, and the elementary
//! bounds in terms of the diameter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, dot, norm2, GroundedLaplacian, LdlFactor};

/// Above this many vertices the Fiedler pair is computed iteratively.
pub const DENSE_LIMIT: usize = 2000;
/// Entries of a unit eigenvector below this magnitude count as zero.
pub const ZERO_TOL: f64 = 1e-10;
/// Eigenvalue gaps at or below this mark the pair as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Target residual of the iterative solver.
pub const ITERATIVE_RESIDUAL: f64 = 1e-10;
const SIGN_TOL: f64 = 1e-8;
const BLOCK: usize = 6;

/// `x ↦ (D − A)x` for a fixed graph.
#[derive(Debug, Clone, Copy)]
pub struct Laplacian<'a> {
    graph: &'a Graph,
}

impl<'a> Laplacian<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        Laplacian { graph }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.graph.n())
            .map(|v| {
                let nb: f64 = self.graph.neighbors(v).iter().map(|&w| x[w]).sum();
                self.graph.degree(v) as f64 * x[v] - nb
            })
            .collect()
    }

    /// `⟨x, Lx⟩ = Σ_{uv ∈ E} (x_u − x_v)²`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.graph.edges().map(|(u, v)| (x[u] - x[v]).powi(2)).sum()
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.graph.n();
        let mut a = vec![0.0; n * n];
        for v in 0..n {
            a[v * n + v] = self.graph.degree(v) as f64;
            for &w in self.graph.neighbors(v) {
                a[v * n + w] = -1.0;
            }
        }
        a
    }

    pub fn residual(&self, lambda: f64, phi: &[f64]) -> f64 {
        let lx = self.apply(phi);
        norm2(
            &lx.iter()
                .zip(phi)
                .map(|(a, b)| a - lambda * b)
                .collect::<Vec<_>>(),
        )
    }
}

/// An eigenvalue `λ_k` (1-based rank, `λ_1 = 0`) with a unit eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub k: usize,
    pub lambda: f64,
    pub phi: Vec<f64>,
    /// `‖Lφ − λφ‖₂`.
    pub residual: f64,
    /// `λ_{k+1} − λ_k`, absent for `k = n`.
    pub gap_to_next: Option<f64>,
    /// The eigenvalue is (numerically) repeated, so `phi` is one of many
    /// valid representatives.
    pub degenerate: bool,
}

impl EigenPair {
    pub fn n(&self) -> usize {
        self.phi.len()
    }

    /// Same pair with the eigenvector negated.
    pub fn negated(&self) -> EigenPair {
        EigenPair {
            phi: self.phi.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }

    /// Export record `{n, k, lambda, residual, gap, phi}`.
    pub fn export(&self) -> EigenPairExport<'_> {
        EigenPairExport {
            n: self.n(),
            k: self.k,
            lambda: self.lambda,
            residual: self.residual,
            gap: self.gap_to_next,
            phi: &self.phi,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EigenPairExport<'a> {
    pub n: usize,
    pub k: usize,
    pub lambda: f64,
    pub residual: f64,
    pub gap: Option<f64>,
    pub phi: &'a [f64],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    /// Dense up to [`DENSE_LIMIT`] vertices, iterative beyond.
    #[default]
    Auto,
    Dense,
    Iterative,
}

/// Flips `phi` so that its first clearly nonzero entry is positive.
fn orient(phi: &mut [f64]) {
    if let Some(&first) = phi.iter().find(|x| x.abs() > SIGN_TOL) {
        if first < 0.0 {
            phi.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn project_out_constant(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = norm2(x);
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

fn dense_spectrum(g: &Graph) -> Result<linalg::SymmetricEigen> {
    if g.n() > DENSE_LIMIT {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: DENSE_LIMIT,
        });
    }
    linalg::symmetric_eigen(&Laplacian::new(g).to_dense(), g.n())
}

fn pair_from_spectrum(g: &Graph, spectrum: &linalg::SymmetricEigen, k: usize) -> EigenPair {
    let n = g.n();
    let lambda = spectrum.values[k - 1].max(0.0);
    let mut phi = spectrum.vectors[k - 1].clone();
    if k == 1 {
        phi = vec![1.0 / (n as f64).sqrt(); n];
    } else {
        project_out_constant(&mut phi);
        normalize(&mut phi);
    }
    orient(&mut phi);
    let gap_to_next = (k < n).then(|| (spectrum.values[k] - spectrum.values[k - 1]).abs());
    let gap_prev = (k >= 3).then(|| (spectrum.values[k - 1] - spectrum.values[k - 2]).abs());
    let degenerate = gap_to_next.is_some_and(|gap| gap <= DEGENERACY_GAP)
        || gap_prev.is_some_and(|gap| gap <= DEGENERACY_GAP);
    EigenPair {
        k,
        lambda,
        residual: Laplacian::new(g).residual(lambda, &phi),
        phi,
        gap_to_next,
        degenerate,
    }
}

/// The `k`-th smallest eigenpair (dense path only).
pub fn eigenpair_k(g: &Graph, k: usize) -> Result<EigenPair> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidArgument(format!(
            "rank {k} outside 1..={}",
            g.n()
        )));
    }
    g.require_connected()?;
    let spectrum = dense_spectrum(g)?;
    Ok(pair_from_spectrum(g, &spectrum, k))
}

/// All eigenpairs, ascending (dense path only).
pub fn all_eigenpairs(g: &Graph) -> Result<Vec<EigenPair>> {
    g.require_connected()?;
    let spectrum = dense_spectrum(g)?;
    Ok((1..=g.n())
        .map(|k| pair_from_spectrum(g, &spectrum, k))
        .collect())
}

/// The Fiedler pair `(λ₂, φ₂)`.
pub fn fiedler_pair(g: &Graph) -> Result<EigenPair> {
    fiedler_pair_with(g, Solver::Auto)
}

pub fn fiedler_pair_with(g: &Graph, solver: Solver) -> Result<EigenPair> {
    if g.n() < 2 {
        return Err(Error::InvalidArgument(
            "Fiedler pair needs at least 2 vertices".into(),
        ));
    }
    g.require_connected()?;
    let use_dense = match solver {
        Solver::Dense => true,
        Solver::Iterative => false,
        Solver::Auto => g.n() <= DENSE_LIMIT,
    };
    if use_dense {
        let spectrum = dense_spectrum(g)?;
        Ok(pair_from_spectrum(g, &spectrum, 2))
    } else {
        block_inverse_iteration(g, 10 * g.n())
    }
}

/// Modified Gram–Schmidt (two passes); drops vectors that collapse.
fn orthonormalize(block: &mut Vec<Vec<f64>>) {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(block.len());
    for mut v in block.drain(..) {
        for _ in 0..2 {
            for q in &out {
                let c = dot(&v, q);
                v.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        if normalize(&mut v) > 1e-12 {
            out.push(v);
        }
    }
    *block = out;
}

/// Subspace inverse iteration on the Laplacian deflated against the
/// constants, with Rayleigh–Ritz extraction. Each step solves `Lx = b` for
/// `b ⊥ 1` through a sparse factorisation of `L` grounded at the last vertex.
fn block_inverse_iteration(g: &Graph, max_iterations: usize) -> Result<EigenPair> {
    let n = g.n();
    let lap = Laplacian::new(g);
    let mut is_target = vec![false; n];
    is_target[n - 1] = true;
    let grounded = GroundedLaplacian::new(g, &is_target);
    let factor = LdlFactor::new(&grounded.matrix)?;
    let pinv = |b: &[f64]| -> Vec<f64> {
        let mut rhs = b.to_vec();
        project_out_constant(&mut rhs);
        let reduced: Vec<f64> = grounded.free.iter().map(|&v| rhs[v]).collect();
        let y = factor.solve(&reduced);
        let mut x = vec![0.0; n];
        for (&v, yi) in grounded.free.iter().zip(y) {
            x[v] = yi;
        }
        project_out_constant(&mut x);
        x
    };

    let width = BLOCK.min(n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1ed);
    let mut block: Vec<Vec<f64>> = (0..width)
        .map(|_| {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            project_out_constant(&mut v);
            v
        })
        .collect();
    orthonormalize(&mut block);

    let mut last_residual = f64::INFINITY;
    for iteration in 1..=max_iterations {
        let mut next: Vec<Vec<f64>> = block.iter().map(|v| pinv(v)).collect();
        orthonormalize(&mut next);
        let b = next.len();
        let applied: Vec<Vec<f64>> = next.iter().map(|q| lap.apply(q)).collect();
        let mut h = vec![0.0; b * b];
        for i in 0..b {
            for j in 0..b {
                h[i * b + j] = dot(&next[i], &applied[j]);
            }
        }
        let ritz = linalg::symmetric_eigen(&h, b)?;
        block = ritz
            .vectors
            .iter()
            .map(|y| {
                let mut v = vec![0.0; n];
                for (c, q) in y.iter().zip(&next) {
                    v.iter_mut().zip(q).for_each(|(a, b)| *a += c * b);
                }
                project_out_constant(&mut v);
                normalize(&mut v);
                v
            })
            .collect();
        let theta = ritz.values[0].max(0.0);
        last_residual = lap.residual(theta, &block[0]);
        if last_residual <= ITERATIVE_RESIDUAL * theta.max(1.0) {
            let mut phi = block[0].clone();
            orient(&mut phi);
            let gap_to_next = ritz.values.get(1).map(|t| (t - theta).abs());
            return Ok(EigenPair {
                k: 2,
                lambda: theta,
                residual: lap.residual(theta, &phi),
                phi,
                gap_to_next,
                degenerate: gap_to_next.is_some_and(|gap| gap <= DEGENERACY_GAP),
            });
        }
        if iteration == max_iterations {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iterations,
        residual: last_residual,
    })
}

/// Whether the subgraph induced on `mask` is connected (empty counts as
/// connected).
pub fn induced_connected(g: &Graph, mask: &[bool]) -> bool {
    let Some(start) = mask.iter().position(|&m| m) else {
        return true;
    };
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if mask[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == mask.iter().filter(|&&m| m).count()
}

/// Fiedler's theorem for both orientations: `{φ ≥ 0}` and `{φ ≤ 0}` (up to
/// [`ZERO_TOL`]) each induce a connected subgraph.
pub fn verify_fiedler_connectivity(g: &Graph, pair: &EigenPair) -> bool {
    let nonneg: Vec<bool> = pair.phi.iter().map(|&x| x >= -ZERO_TOL).collect();
    let nonpos: Vec<bool> = pair.phi.iter().map(|&x| -x >= -ZERO_TOL).collect();
    induced_connected(g, &nonneg) && induced_connected(g, &nonpos)
}

/// Vertices whose value is within `tol` of the maximum / minimum.
pub fn extreme_sets(phi: &[f64], tol: f64) -> (Vec<usize>, Vec<usize>) {
    let max = phi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
    let argmax = (0..phi.len()).filter(|&v| phi[v] >= max - tol).collect();
    let argmin = (0..phi.len()).filter(|&v| phi[v] <= min + tol).collect();
    (argmax, argmin)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MonotonicityVerdict {
    Pass,
    /// An edge along which `|φ|` fails to grow away from the sign change,
    /// or an extreme vertex that is not a leaf.
    Fail {
        edge: Option<(usize, usize)>,
        vertex: Option<usize>,
    },
    /// λ₂ is repeated; the check is not meaningful.
    Inconclusive,
}

impl MonotonicityVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, MonotonicityVerdict::Pass)
    }
}

fn multi_source_distances(g: &Graph, sources: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..g.n() {
        if sources[v] {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// On a tree: `φ₂` strictly increases moving away from the negative region
/// inside the positive region (and mirrored), and the extrema sit at leaves.
pub fn verify_monotonicity(g: &Graph, pair: &EigenPair) -> Result<MonotonicityVerdict> {
    if !g.is_tree() {
        return Err(Error::Unsupported(
            "monotonicity check requires a tree".into(),
        ));
    }
    if pair.degenerate {
        return Ok(MonotonicityVerdict::Inconclusive);
    }
    let phi = &pair.phi;
    for sign in [1.0, -1.0] {
        let value = |v: usize| sign * phi[v];
        let other: Vec<bool> = (0..g.n()).map(|v| value(v) < -ZERO_TOL).collect();
        if !other.contains(&true) {
            continue;
        }
        let dist = multi_source_distances(g, &other);
        for (u, v) in g.edges() {
            if value(u) <= ZERO_TOL || value(v) <= ZERO_TOL {
                continue;
            }
            let (near, far) = match dist[u].cmp(&dist[v]) {
                std::cmp::Ordering::Less => (u, v),
                std::cmp::Ordering::Greater => (v, u),
                std::cmp::Ordering::Equal => continue,
            };
            if value(far) <= value(near) - 1e-12 {
                return Ok(MonotonicityVerdict::Fail {
                    edge: Some((near, far)),
                    vertex: None,
                });
            }
        }
    }
    if g.n() > 2 {
        let (argmax, argmin) = extreme_sets(phi, 1e-9);
        if let Some(&v) = argmax.iter().chain(&argmin).find(|&&v| g.degree(v) != 1) {
            return Ok(MonotonicityVerdict::Fail {
                edge: None,
                vertex: Some(v),
            });
        }
    }
    Ok(MonotonicityVerdict::Pass)
}

/// Measured quantities against the diameter-based bounds on `λ₂` and `φ₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub diam: usize,
    pub lambda2: f64,
    /// `4 / (n·D)`.
    pub mckay_lower: f64,
    /// `λ₂` of the path on `D + 1` vertices, `2(1 − cos(π/(D+1)))`.
    pub path_upper_exact: f64,
    /// `10 / D²`.
    pub ten_over_d2: f64,
    pub linf: f64,
    /// `4 / √D`.
    pub linf_bound: f64,
    /// `Σ max(φ, 0)`.
    pub positive_mass: f64,
    /// `√D / 8`.
    pub positive_mass_lower: f64,
    pub mckay_holds: bool,
    pub path_upper_holds: bool,
    pub ten_over_d2_holds: bool,
    pub linf_holds: bool,
    pub positive_mass_holds: bool,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.mckay_holds
            && self.path_upper_holds
            && self.ten_over_d2_holds
            && self.linf_holds
            && self.positive_mass_holds
    }
}

pub fn bounds_report(g: &Graph, pair: &EigenPair) -> Result<BoundsReport> {
    const SLACK: f64 = 1e-12;
    let (diam, _) = g.diameter_and_diametral_pairs()?;
    if diam == 0 {
        return Err(Error::InvalidArgument(
            "bounds need at least one edge".into(),
        ));
    }
    let n = g.n();
    let d = diam as f64;
    let lambda2 = pair.lambda;
    let mckay_lower = 4.0 / (n as f64 * d);
    let path_upper_exact = 2.0 * (1.0 - (std::f64::consts::PI / (d + 1.0)).cos());
    let ten_over_d2 = 10.0 / (d * d);
    let linf = pair.phi.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let linf_bound = 4.0 / d.sqrt();
    let positive_mass: f64 = pair.phi.iter().map(|&x| x.max(0.0)).sum();
    let positive_mass_lower = d.sqrt() / 8.0;
    Ok(BoundsReport {
        n,
        diam,
        lambda2,
        mckay_lower,
        path_upper_exact,
        ten_over_d2,
        linf,
        linf_bound,
        positive_mass,
        positive_mass_lower,
        mckay_holds: mckay_lower <= lambda2 + SLACK,
        path_upper_holds: lambda2 <= path_upper_exact + SLACK,
        ten_over_d2_holds: lambda2 <= ten_over_d2 + SLACK,
        linf_holds: linf <= linf_bound + SLACK,
        positive_mass_holds: positive_mass >= positive_mass_lower - SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn p2_pair() {
        let pair = fiedler_pair(&path(2)).unwrap();
        assert!((pair.lambda - 2.0).abs() < 1e-14);
        let h = 1.0 / 2f64.sqrt();
        assert!((pair.phi[0] - h).abs() < 1e-14 && (pair.phi[1] + h).abs() < 1e-14);
        assert_eq!(pair.gap_to_next, None);
    }

    #[test]
    fn p3_and_star_spectra() {
        assert!((fiedler_pair(&path(3)).unwrap().lambda - 1.0).abs() < 1e-13);
        assert!((eigenpair_k(&path(3), 3).unwrap().lambda - 3.0).abs() < 1e-13);
        // star on 4 vertices: spectrum {0, 1, 1, 4}
        let pair = fiedler_pair(&star(3)).unwrap();
        assert!((pair.lambda - 1.0).abs() < 1e-13);
        assert!(pair.gap_to_next.unwrap() < 1e-12);
        assert!(pair.degenerate);
    }

    #[test]
    fn kernel_pair_is_constant() {
        let g = star(5);
        let pair = eigenpair_k(&g, 1).unwrap();
        assert!(pair.lambda.abs() < 1e-12);
        assert!(pair
            .phi
            .iter()
            .all(|&x| (x - 1.0 / 6f64.sqrt()).abs() < 1e-15));
        assert!(eigenpair_k(&g, 0).is_err());
        assert!(eigenpair_k(&g, 7).is_err());
    }

    #[test]
    fn pair_invariants_on_paths() {
        for n in [2, 5, 17, 64] {
            let pair = fiedler_pair(&path(n)).unwrap();
            assert!((pair.lambda - 2.0 * (1.0 - (PI / n as f64).cos())).abs() < 1e-12);
            assert!((norm2(&pair.phi) - 1.0).abs() < 1e-10);
            assert!(pair.residual <= 1e-9 * pair.lambda.max(1.0));
            assert!(pair.phi.iter().sum::<f64>().abs() <= 1e-10 * (n as f64).sqrt());
            assert!(pair.phi[0] > 0.0);
        }
    }

    #[test]
    fn iterative_matches_dense_on_path() {
        let g = path(150);
        let dense = fiedler_pair_with(&g, Solver::Dense).unwrap();
        let iter = fiedler_pair_with(&g, Solver::Iterative).unwrap();
        assert!((dense.lambda - iter.lambda).abs() < 1e-10);
        for (a, b) in dense.phi.iter().zip(&iter.phi) {
            assert!((a - b).abs() < 1e-6);
        }
        assert!(iter.gap_to_next.unwrap() > 1e-4);
    }

    #[test]
    fn rejects_disconnected_and_tiny() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(fiedler_pair(&g), Err(Error::Disconnected));
        assert!(fiedler_pair(&Graph::empty(1)).is_err());
    }

    #[test]
    fn connectivity_verifier() {
        let g = path(4);
        let pair = fiedler_pair(&g).unwrap();
        assert!(verify_fiedler_connectivity(&g, &pair));
        let fake = EigenPair {
            phi: vec![0.5, -0.5, 0.5, -0.5],
            ..pair
        };
        assert!(!verify_fiedler_connectivity(&g, &fake));
    }

    #[test]
    fn monotonicity_on_paths_and_stars() {
        let g = path(5);
        let pair = fiedler_pair(&g).unwrap();
        assert_eq!(
            verify_monotonicity(&g, &pair).unwrap(),
            MonotonicityVerdict::Pass
        );
        let (argmax, argmin) = extreme_sets(&pair.phi, 1e-9);
        assert_eq!((argmax, argmin), (vec![0], vec![4]));
        assert_eq!(
            verify_monotonicity(&g, &pair.negated()).unwrap(),
            MonotonicityVerdict::Pass
        );

        let s = star(3);
        let pair = fiedler_pair(&s).unwrap();
        assert_eq!(
            verify_monotonicity(&s, &pair).unwrap(),
            MonotonicityVerdict::Inconclusive
        );

        // values decreasing toward the leaf on the positive side
        let fake = EigenPair {
            phi: vec![0.3, 0.5, 0.1, -0.4, -0.5],
            degenerate: false,
            ..pair.clone()
        };
        assert!(matches!(
            verify_monotonicity(&g, &fake).unwrap(),
            MonotonicityVerdict::Fail {
                edge: Some((1, 0)),
                ..
            }
        ));
    }

    #[test]
    fn bounds_on_p10_and_big_star() {
        let g = path(10);
        let report = bounds_report(&g, &fiedler_pair(&g).unwrap()).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert!((report.path_upper_exact - report.lambda2).abs() < 1e-12);

        let s = star(50);
        let report = bounds_report(&s, &fiedler_pair(&s).unwrap()).unwrap();
        assert!(report.mckay_holds);
        assert!((report.lambda2 - 1.0).abs() < 1e-12);
        assert!((report.mckay_lower - 4.0 / 102.0).abs() < 1e-15);
    }

    #[test]
    fn laplacian_operator_properties() {
        let g = star(4);
        let lap = Laplacian::new(&g);
        assert!(lap.apply(&[1.0; 5]).iter().all(|x| x.abs() < 1e-15));
        let x = [0.3, -1.0, 2.0, 0.5, 0.25];
        let y = [1.0, 0.0, -2.0, 0.7, 0.1];
        assert!((dot(&lap.apply(&x), &y) - dot(&x, &lap.apply(&y))).abs() < 1e-12);
        assert!((lap.quadratic_form(&x) - dot(&x, &lap.apply(&x))).abs() < 1e-12);
    }
}
