//! In-repo numerical kernels: a dense symmetric eigensolver (Householder
//! tridiagonalisation followed by implicit-shift QL) and a sparse symmetric
//! LDLᵀ factorisation with minimum-degree ordering for grounded Laplacians.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Eigenvalues in ascending order, `vectors[i]` the unit eigenvector of
/// `values[i]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Full eigendecomposition of the dense symmetric `n × n` row-major matrix
/// `a`. Only the lower triangle is read.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    if n == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let mut v = a.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            v[i * n + j] = v[j * n + i];
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, n, &mut d, &mut e);
    // columns of v become contiguous rows of z
    let mut z = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            z[c * n + r] = v[r * n + c];
        }
    }
    implicit_ql(&mut z, n, &mut d, &mut e)?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    Ok(SymmetricEigen {
        values: idx.iter().map(|&i| d[i]).collect(),
        vectors: idx
            .iter()
            .map(|&i| z[i * n..(i + 1) * n].to_vec())
            .collect(),
    })
}

/// Householder reduction to tridiagonal form, accumulating the orthogonal
/// transform in `v`. On return `d` holds the diagonal and `e[1..]` the
/// subdiagonal.
fn tridiagonalize(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    let at = |r: usize, c: usize| r * n + c;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                v[at(j, i)] = f;
                let mut g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`; `z` holds the transform
/// with one vector per row.
fn implicit_ql(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let max_sweeps = 60;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > max_sweeps {
                    return Err(Error::NoConvergence {
                        iterations: sweeps,
                        residual: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for k in 0..n {
                        let t = zi1[k];
                        zi1[k] = s * zi[k] + c * t;
                        zi[k] = c * zi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Sparse symmetric matrix: diagonal plus mirrored off-diagonal entries.
#[derive(Debug, Clone)]
pub struct SparseSymmetric {
    pub diag: Vec<f64>,
    pub off: Vec<Vec<(usize, f64)>>,
}

impl SparseSymmetric {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        self.diag
            .iter()
            .zip(&self.off)
            .zip(x)
            .map(|((&d, row), &xi)| d * xi + row.iter().map(|&(j, a)| a * x[j]).sum::<f64>())
            .collect()
    }
}

/// The Laplacian restricted to the non-target vertices (Dirichlet boundary
/// on the targets), together with the vertex ↔ row maps.
#[derive(Debug, Clone)]
pub struct GroundedLaplacian {
    pub matrix: SparseSymmetric,
    /// Row index → vertex.
    pub free: Vec<usize>,
    /// Vertex → row index, `None` on targets.
    pub row_of: Vec<Option<usize>>,
}

impl GroundedLaplacian {
    pub fn new(g: &Graph, is_target: &[bool]) -> Self {
        let free: Vec<usize> = (0..g.n()).filter(|&v| !is_target[v]).collect();
        let mut row_of = vec![None; g.n()];
        for (i, &v) in free.iter().enumerate() {
            row_of[v] = Some(i);
        }
        let diag = free.iter().map(|&v| g.degree(v) as f64).collect();
        let off = free
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter_map(|&w| row_of[w].map(|j| (j, -1.0)))
                    .collect()
            })
            .collect();
        GroundedLaplacian {
            matrix: SparseSymmetric { diag, off },
            free,
            row_of,
        }
    }
}

/// `A = L D Lᵀ` for a symmetric positive definite sparse `A`, eliminated in
/// greedy minimum-degree order. Trees factor with no fill.
#[derive(Debug, Clone)]
pub struct LdlFactor {
    order: Vec<usize>,
    pivots: Vec<f64>,
    columns: Vec<Vec<(usize, f64)>>,
}

impl LdlFactor {
    pub fn new(a: &SparseSymmetric) -> Result<Self> {
        let n = a.dim();
        let mut rows: Vec<BTreeMap<usize, f64>> = a
            .off
            .iter()
            .map(|row| {
                let mut map = BTreeMap::new();
                for &(j, v) in row {
                    *map.entry(j).or_insert(0.0) += v;
                }
                map
            })
            .collect();
        let mut diag = a.diag.clone();
        let scale = diag.iter().fold(0.0f64, |m, d| m.max(d.abs())).max(1.0);
        let mut eliminated = vec![false; n];
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..n).map(|i| Reverse((rows[i].len(), i))).collect();
        let mut order = Vec::with_capacity(n);
        let mut pivots = Vec::with_capacity(n);
        let mut columns = Vec::with_capacity(n);

        while let Some(Reverse((deg, p))) = heap.pop() {
            if eliminated[p] || rows[p].len() != deg {
                continue;
            }
            let pivot = diag[p];
            // written negated so a NaN pivot is rejected too
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            let too_small = !(pivot > 1e-14 * scale);
            if too_small || !pivot.is_finite() {
                return Err(Error::Singular(format!(
                    "nonpositive pivot {pivot:e} at row {p}"
                )));
            }
            let nbrs: Vec<(usize, f64)> = std::mem::take(&mut rows[p]).into_iter().collect();
            for &(i, _) in &nbrs {
                rows[i].remove(&p);
            }
            for (x, &(i, a_ip)) in nbrs.iter().enumerate() {
                diag[i] -= a_ip * a_ip / pivot;
                for &(j, a_jp) in &nbrs[x + 1..] {
                    let update = a_ip * a_jp / pivot;
                    *rows[i].entry(j).or_insert(0.0) -= update;
                    *rows[j].entry(i).or_insert(0.0) -= update;
                }
            }
            for &(i, _) in &nbrs {
                heap.push(Reverse((rows[i].len(), i)));
            }
            eliminated[p] = true;
            order.push(p);
            pivots.push(pivot);
            columns.push(nbrs.into_iter().map(|(i, a)| (i, a / pivot)).collect());
        }
        Ok(LdlFactor {
            order,
            pivots,
            columns,
        })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        for (s, &p) in self.order.iter().enumerate() {
            let yp = y[p];
            for &(i, l) in &self.columns[s] {
                y[i] -= l * yp;
            }
        }
        for (s, &p) in self.order.iter().enumerate() {
            y[p] /= self.pivots[s];
        }
        for (s, &p) in self.order.iter().enumerate().rev() {
            let mut acc = y[p];
            for &(i, l) in &self.columns[s] {
                acc -= l * y[i];
            }
            y[p] = acc;
        }
        y
    }
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Solves `A x = b` with one step of iterative refinement when the first
/// residual exceeds `tol`. Returns the solution and its final residual norm.
pub fn solve_refined(
    a: &SparseSymmetric,
    factor: &LdlFactor,
    b: &[f64],
    tol: f64,
) -> (Vec<f64>, f64) {
    let residual =
        |x: &[f64]| -> Vec<f64> { a.mul(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect() };
    let mut x = factor.solve(b);
    let mut r = residual(&x);
    if norm2(&r) > tol {
        let dx = factor.solve(&r);
        for (xi, di) in x.iter_mut().zip(dx) {
            *xi += di;
        }
        r = residual(&x);
    }
    (x, norm2(&r))
}
