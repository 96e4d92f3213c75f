//! Free trees up to isomorphism, generated as canonical level sequences
//! (Wright–Richmond–Odlyzko–McKay successor rule). Each tree is rooted at
//! a center, with subtrees in decreasing order.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order the enumerator accepts.
pub const MAX_ORDER: usize = 22;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Depth of each vertex in preorder; vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelSequence(Vec<u8>);

impl LevelSequence {
    pub fn levels(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the preorder shape: a single root at depth 0 and every later
    /// depth between 1 and one more than its predecessor.
    pub fn new(levels: Vec<u8>) -> Result<Self> {
        match levels.first() {
            None => return Err(Error::LevelSequence("empty sequence".into())),
            Some(0) => {}
            Some(&l) => return Err(Error::LevelSequence(format!("root at level {l}"))),
        }
        for (i, w) in levels.windows(2).enumerate() {
            if w[1] == 0 || w[1] > w[0] + 1 {
                return Err(Error::LevelSequence(format!(
                    "level {} at position {} after level {}",
                    w[1],
                    i + 1,
                    w[0]
                )));
            }
        }
        Ok(LevelSequence(levels))
    }

    /// Parses the compact code: one base-36 digit per vertex.
    pub fn parse(code: &str) -> Result<Self> {
        let levels = code
            .bytes()
            .map(|b| {
                DIGITS
                    .iter()
                    .position(|&d| d == b)
                    .map(|p| p as u8)
                    .ok_or_else(|| Error::LevelSequence(format!("invalid digit {:?}", b as char)))
            })
            .collect::<Result<Vec<u8>>>()?;
        LevelSequence::new(levels)
    }

    /// Compact code, one base-36 digit per vertex.
    pub fn code(&self) -> String {
        self.0.iter().map(|&l| DIGITS[l as usize] as char).collect()
    }

    /// The tree: vertex `i` is the `i`-th entry, its parent the closest
    /// earlier vertex one level up.
    pub fn to_graph(&self) -> Graph {
        let mut stack: Vec<usize> = Vec::new();
        let mut edges = Vec::with_capacity(self.0.len().saturating_sub(1));
        for (i, &level) in self.0.iter().enumerate() {
            stack.truncate(level as usize);
            if let Some(&parent) = stack.last() {
                edges.push((parent, i));
            }
            stack.push(i);
        }
        Graph::from_edges(self.0.len(), edges).expect("level sequences describe trees")
    }
}

impl fmt::Display for LevelSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

fn next_rooted(pred: &[u8], p: Option<usize>) -> Option<Vec<u8>> {
    let p = p.unwrap_or_else(|| {
        let mut p = pred.len() - 1;
        while pred[p] == 1 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the root's first subtree: `(left, rest)` with `left`
/// re-based to depth 0 and `rest` keeping the root.
fn split(layout: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let second_child = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &l)| l == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..second_child].iter().map(|l| l - 1).collect();
    let mut rest = Vec::with_capacity(layout.len() - second_child + 1);
    rest.push(0);
    rest.extend_from_slice(&layout[second_child..]);
    (left, rest)
}

fn max_level(levels: &[u8]) -> u8 {
    levels.iter().copied().max().unwrap_or(0)
}

/// Returns `candidate` if it is a canonical free tree, else the next
/// canonical one below it.
fn next_free(candidate: Vec<u8>) -> Vec<u8> {
    let (left, rest) = split(&candidate);
    let (lh, rh) = (max_level(&left), max_level(&rest));
    let valid = rh > lh || (rh == lh && (left.len(), &left) <= (rest.len(), &rest));
    if valid {
        return candidate;
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p)).expect("p is past the root");
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let height = max_level(&new_left) as usize;
        let len = next.len();
        for (slot, level) in next[len - height - 1..].iter_mut().zip(1u8..) {
            *slot = level;
        }
    }
    next
}

/// Streams every free tree on `n` vertices exactly once, as a canonical
/// level sequence. Order: strictly decreasing lexicographically, from the
/// path to the star.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    state: Option<Vec<u8>>,
    small: Option<LevelSequence>,
}

impl FreeTrees {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidArgument(format!(
                "tree order {n} outside 1..={MAX_ORDER}"
            )));
        }
        if n <= 2 {
            let levels = (0..n as u8).collect();
            return Ok(FreeTrees {
                state: None,
                small: Some(LevelSequence(levels)),
            });
        }
        // the path, rooted at its center
        let mut layout: Vec<u8> = (0..=(n / 2) as u8).collect();
        layout.extend(1..=((n - 1) / 2) as u8);
        Ok(FreeTrees {
            state: Some(layout),
            small: None,
        })
    }
}

impl Iterator for FreeTrees {
    type Item = LevelSequence;

    fn next(&mut self) -> Option<LevelSequence> {
        if let Some(small) = self.small.take() {
            return Some(small);
        }
        let candidate = self.state.take()?;
        let tree = next_free(candidate);
        self.state = next_rooted(&tree, None);
        Some(LevelSequence(tree))
    }
}

/// All free trees on `n` vertices as graphs.
pub fn enumerate_free_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    Ok(FreeTrees::new(n)?.map(|seq| seq.to_graph()))
}

/// Number of free trees on `n` vertices, from the rooted-tree recurrence
/// and the dissimilarity relation between rooted and free trees.
pub fn free_tree_count(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut rooted = vec![0u128; n + 1];
    rooted[1] = 1;
    // s[k] = Σ_{d | k} d·r(d)
    let mut s = vec![0u128; n + 1];
    for m in 1..n {
        s[m] = (1..=m)
            .filter(|d| m % d == 0)
            .map(|d| d as u128 * rooted[d])
            .sum();
        let total: u128 = (1..=m).map(|k| s[k] * rooted[m - k + 1]).sum();
        rooted[m + 1] = total / m as u128;
    }
    let pairs: u128 = (1..n).map(|i| rooted[i] * rooted[n - i]).sum();
    let sym = if n.is_multiple_of(2) {
        rooted[n / 2]
    } else {
        0
    };
    rooted[n] - (pairs - sym) / 2
}
