//! Independent reference implementations used as test oracles. None of them
//! share code with the library beyond the `Graph` container.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use fiedler_core::Graph;

/// Gaussian elimination with partial pivoting on a dense copy.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        assert!(a[col][col].abs() > 1e-300, "singular oracle system");
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Solves the absorbing-chain equations written straight from the walk:
/// `x(w) = r(w) + (1/deg w) Σ_{u∼w} x(u)` for `w` outside `targets`,
/// `x = 0` on `targets`.
pub fn absorbing_oracle(g: &Graph, targets: &[usize], reward: impl Fn(usize) -> f64) -> Vec<f64> {
    let free: Vec<usize> = (0..g.n()).filter(|v| !targets.contains(v)).collect();
    let mut row = vec![usize::MAX; g.n()];
    for (i, &v) in free.iter().enumerate() {
        row[v] = i;
    }
    let m = free.len();
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for (i, &w) in free.iter().enumerate() {
        let d = g.degree(w) as f64;
        a[i][i] = 1.0;
        for &u in g.neighbors(w) {
            if row[u] != usize::MAX {
                a[i][row[u]] -= 1.0 / d;
            }
        }
        b[i] = reward(w);
    }
    let x = if m == 0 {
        Vec::new()
    } else {
        dense_solve(a, b)
    };
    let mut out = vec![0.0; g.n()];
    for (i, &w) in free.iter().enumerate() {
        out[w] = x[i];
    }
    out
}

pub fn hitting_oracle(g: &Graph, targets: &[usize]) -> Vec<f64> {
    absorbing_oracle(g, targets, |_| 1.0)
}

pub fn laplacian_dense(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut l = vec![vec![0.0; n]; n];
    for v in 0..n {
        l[v][v] = g.degree(v) as f64;
        for &u in g.neighbors(v) {
            l[v][u] = -1.0;
        }
    }
    l
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Vertices of minimum eccentricity (one or two in a tree).
pub fn tree_centers(g: &Graph) -> Vec<usize> {
    let ecc: Vec<usize> = (0..g.n())
        .map(|v| *bfs(g, v).iter().max().unwrap())
        .collect();
    let r = *ecc.iter().min().unwrap();
    (0..g.n()).filter(|&v| ecc[v] == r).collect()
}

fn ahu(g: &Graph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| ahu(g, u, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical string of a free tree: the smallest AHU encoding over its
/// centers.
pub fn canonical_form(g: &Graph) -> String {
    tree_centers(g)
        .into_iter()
        .map(|c| ahu(g, c, usize::MAX))
        .min()
        .unwrap()
}

/// Textbook Prüfer decoding with a linear scan for the smallest leaf.
pub fn prufer_to_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Number of isomorphism classes among all labelled trees on `n` vertices.
pub fn prufer_census(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut classes = BTreeSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let g = Graph::from_edges(n, prufer_to_edges(&seq, n)).unwrap();
        classes.insert(canonical_form(&g));
        let mut i = 0;
        loop {
            if i == seq.len() {
                return classes.len();
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Free-tree counts from power series: `R(x) = x Π_k (1 − x^k)^{−r_k}` for
/// rooted trees, then `F = R − (R² − R(x²)) / 2`.
pub fn free_tree_counts_by_series(max_n: usize) -> Vec<u128> {
    let len = max_n + 1;
    let mut r = vec![0u128; len];
    r[1] = 1;
    for n in 2..len {
        // coefficient of x^{n-1} in Π_{k<n} (1 − x^k)^{−r_k}
        let mut prod = vec![0u128; n];
        prod[0] = 1;
        for k in 1..n {
            for _ in 0..r[k] {
                // multiply by 1/(1 − x^k)
                for i in k..n {
                    prod[i] += prod[i - k];
                }
            }
        }
        r[n] = prod[n - 1];
    }
    let mut f = vec![0u128; len];
    for n in 1..len {
        let sq: u128 = (1..n).map(|i| r[i] * r[n - i]).sum();
        let half = if n % 2 == 0 { r[n / 2] } else { 0 };
        f[n] = r[n] - (sq - half) / 2;
    }
    f
}

/// Path `0 – 1 – … – (n−1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// The 23-vertex rose counterexample, written out edge by edge: path
/// `0..=9`, hub 10 on vertex 3, leaves 11..=22.
pub fn rose_example() -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=9).map(|i| (i - 1, i)).collect();
    edges.push((3, 10));
    edges.extend((11..=22).map(|l| (10, l)));
    Graph::from_edges(23, edges).unwrap()
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// A long path with small random trees hung off interior vertices, sized to
/// stay inside both attachment bounds most of the time. The caller decides
/// admissibility with the checker.
pub fn random_attached_path(seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(64..=320);
    let mut edges: Vec<(usize, usize)> = (1..=d).map(|i| (i - 1, i)).collect();
    let mut next = d + 1;
    let count = rng.gen_range(1..=d / 16);
    for _ in 0..count {
        let size = rng.gen_range(1..=d / 32);
        let reach_needed = ((50 * size * size) as f64).sqrt().ceil() as usize;
        if 2 * reach_needed > d {
            continue;
        }
        let k = rng.gen_range(reach_needed..=d - reach_needed);
        let sub = fiedler_core::generators::gen_random_tree(size, rng.gen()).unwrap();
        let root = rng.gen_range(0..size);
        edges.push((k, next + root));
        edges.extend(sub.edges().map(|(u, v)| (next + u, next + v)));
        next += size;
    }
    Graph::from_edges(next, edges).unwrap()
}
