//! Sufficient conditions for the Fiedler vector to take its extreme values
//! at the ends of a longest path, and the extrema check itself.
//!
//! Path positions `k` are edge distances from the first path vertex, so a
//! path of length `D` has positions `0..=D`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, PathDecomposition};
use crate::hitting::attachment_hit;
use crate::spectral::{self, EigenPair};

/// Ties among extreme values are resolved at this absolute tolerance.
pub const EXTREMA_TOL: f64 = 1e-9;
const MARGIN_SLACK: f64 = 1e-9;

/// One attached component checked against both size and hitting bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentRow {
    pub anchor: usize,
    pub size: usize,
    /// `D / 32`.
    pub size_bound: f64,
    /// Worst hitting time of the anchor; `None` if the component is not
    /// isolated.
    pub hit: Option<f64>,
    /// `min(k, D − k)² / 50`.
    pub hit_bound: f64,
    pub isolated: bool,
    pub size_ok: bool,
    pub hit_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub diam: usize,
    pub path: Vec<usize>,
    pub rows: Vec<ComponentRow>,
    pub admissible: bool,
    pub lambda2: f64,
    /// Largest attachment hitting time (0 without attachments).
    pub hit_max: f64,
    /// `λ₂ · hit_max`; at most 1/2 whenever the graph is admissible.
    pub lambda_hit_margin: f64,
    /// `D²`, the worst hitting time along the path itself.
    pub path_hit: f64,
    /// `λ₂ · D² / 2`; at most 5 for every graph containing the path.
    pub lambda_path_margin: f64,
    pub margins_hold: bool,
}

/// Evaluates both conditions along the graph's longest path (trees only).
pub fn check_theorem2(g: &Graph) -> Result<AdmissibilityReport> {
    let path = g.longest_path()?;
    let pair = spectral::fiedler_pair(g)?;
    check_theorem2_along(g, &path, &pair)
}

/// Evaluates both conditions along a caller-certified longest `path`.
pub fn check_theorem2_along(
    g: &Graph,
    path: &[usize],
    pair: &EigenPair,
) -> Result<AdmissibilityReport> {
    let decomp = g.decompose_along_path(path)?;
    let diam = decomp.length();
    let d = diam as f64;
    let mut rows = Vec::new();
    for comp in decomp.components() {
        let k = comp.anchor;
        let reach = k.min(diam - k) as f64;
        let hit = if comp.isolated {
            Some(attachment_hit(g, &decomp, comp)?)
        } else {
            None
        };
        let size_bound = d / 32.0;
        let hit_bound = reach * reach / 50.0;
        rows.push(ComponentRow {
            anchor: k,
            size: comp.size,
            size_bound,
            hit,
            hit_bound,
            isolated: comp.isolated,
            size_ok: comp.size as f64 <= size_bound,
            hit_ok: hit.is_some_and(|h| h <= hit_bound),
        });
    }
    let admissible = rows.iter().all(|r| r.isolated && r.size_ok && r.hit_ok);
    let hit_max = rows.iter().filter_map(|r| r.hit).fold(0.0, f64::max);
    let lambda2 = pair.lambda;
    let path_hit = d * d;
    let lambda_hit_margin = lambda2 * hit_max;
    let lambda_path_margin = lambda2 * path_hit / 2.0;
    Ok(AdmissibilityReport {
        diam,
        path: decomp.path,
        rows,
        admissible,
        lambda2,
        hit_max,
        lambda_hit_margin,
        path_hit,
        lambda_path_margin,
        margins_hold: lambda_hit_margin <= 0.5 + MARGIN_SLACK
            && lambda_path_margin <= 5.0 + MARGIN_SLACK,
    })
}

/// A path of `spine` edges (positions `0..=spine`) with pendant paths:
/// `legs[k]` lists the lengths of the legs hung at position `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaterpillarSpec {
    pub spine: usize,
    pub legs: Vec<Vec<usize>>,
}

impl CaterpillarSpec {
    pub fn bare(spine: usize) -> Self {
        CaterpillarSpec {
            spine,
            legs: vec![Vec::new(); spine + 1],
        }
    }

    /// At most one leg per position, `f[k]` long (0 for none).
    pub fn single_legs(spine: usize, f: &[usize]) -> Result<Self> {
        if f.len() != spine + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} leg lengths, got {}",
                spine + 1,
                f.len()
            )));
        }
        Ok(CaterpillarSpec {
            spine,
            legs: f
                .iter()
                .map(|&len| if len == 0 { Vec::new() } else { vec![len] })
                .collect(),
        })
    }

    pub fn with_leg(mut self, position: usize, len: usize) -> Result<Self> {
        let slot = self.legs.get_mut(position).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "leg position {position} outside 0..={}",
                self.spine
            ))
        })?;
        if len > 0 {
            slot.push(len);
        }
        Ok(self)
    }

    /// Longest leg at position `k`.
    pub fn f(&self, k: usize) -> usize {
        self.legs[k].iter().copied().max().unwrap_or(0)
    }
}

impl FromStr for CaterpillarSpec {
    type Err = Error;

    /// `<spine>[;<k>=<len>[/<len>...],...]`, e.g. `100;50=2` or `10;5=1/2,6=1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("caterpillar {s:?}: {msg}"));
        let (spine, legs) = s.split_once(';').unwrap_or((s, ""));
        let spine: usize = spine
            .trim()
            .parse()
            .map_err(|_| bad("spine length is not an integer".into()))?;
        if spine > crate::graph::MAX_VERTICES {
            return Err(bad("spine too long".into()));
        }
        let mut spec = CaterpillarSpec::bare(spine);
        for item in legs.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, lens) = item
                .split_once('=')
                .ok_or_else(|| bad(format!("expected k=len in {item:?}")))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad position {k:?}")))?;
            for len in lens.split('/') {
                let len: usize = len
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad leg length {len:?}")))?;
                if len > crate::graph::MAX_VERTICES {
                    return Err(bad("leg too long".into()));
                }
                spec = spec.with_leg(k, len)?;
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spine)?;
        let mut sep = ';';
        for (k, legs) in self.legs.iter().enumerate().filter(|(_, l)| !l.is_empty()) {
            let lens: Vec<String> = legs.iter().map(usize::to_string).collect();
            write!(f, "{sep}{k}={}", lens.join("/"))?;
            sep = ',';
        }
        Ok(())
    }
}

/// Every leg at position `k` is at most `min(k, spine − k) / 20` long.
pub fn check_corollary2(spec: &CaterpillarSpec) -> bool {
    spec.legs.iter().enumerate().all(|(k, legs)| {
        let reach = k.min(spec.spine - k);
        legs.iter().all(|&len| 20 * len <= reach)
    })
}

/// Where the extreme values of `φ₂` sit relative to the diametral pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremaVerdict {
    pub argmax: Vec<usize>,
    pub argmin: Vec<usize>,
    pub diam: usize,
    pub diametral_pairs: Vec<(usize, usize)>,
    /// Unique maximiser and minimiser, and they form a diametral pair.
    pub strict: bool,
    /// Some diametral pair joins a maximiser to a minimiser.
    pub relaxed: bool,
    /// λ₂ is repeated, so the verdicts depend on the chosen eigenvector.
    pub degenerate: bool,
}

pub fn extrema_verdict(g: &Graph, pair: &EigenPair) -> Result<ExtremaVerdict> {
    let (diam, diametral_pairs) = g.diameter_and_diametral_pairs()?;
    let (argmax, argmin) = spectral::extreme_sets(&pair.phi, EXTREMA_TOL);
    let joins = |&(u, v): &(usize, usize)| {
        (argmax.contains(&u) && argmin.contains(&v)) || (argmax.contains(&v) && argmin.contains(&u))
    };
    let relaxed = diametral_pairs.iter().any(joins);
    let strict = argmax.len() == 1 && argmin.len() == 1 && relaxed;
    Ok(ExtremaVerdict {
        argmax,
        argmin,
        diam,
        diametral_pairs,
        strict,
        relaxed,
        degenerate: pair.degenerate,
    })
}

/// Smallest graph distance between a maximiser and a minimiser.
pub fn distance_between_extrema(g: &Graph, verdict: &ExtremaVerdict) -> Result<usize> {
    if verdict.degenerate {
        return Err(Error::Degenerate { gap: 0.0 });
    }
    let mut best = usize::MAX;
    for &u in &verdict.argmax {
        let dist = g.bfs_distances(u)?;
        for &v in &verdict.argmin {
            best = best.min(dist[v]);
        }
    }
    Ok(best)
}

/// For a decomposition and Fiedler vector: the attachments that contain
/// every vertex of one sign, i.e. the sign change happens inside them.
pub fn sign_change_attachments<'d>(
    decomp: &'d PathDecomposition,
    pair: &EigenPair,
) -> Vec<&'d crate::graph::AttachedComponent> {
    let mut found = Vec::new();
    for sign in [1.0, -1.0] {
        let signed: Vec<usize> = (0..pair.phi.len())
            .filter(|&v| sign * pair.phi[v] > spectral::ZERO_TOL)
            .collect();
        if signed.is_empty() {
            continue;
        }
        for comp in decomp.components() {
            if signed
                .iter()
                .all(|v| comp.vertices.binary_search(v).is_ok())
            {
                found.push(comp);
            }
        }
    }
    found
}
