//! Augmenting paths: search for the shortest one from a vertex, and the
//! symmetric-difference flip that applies one.
//!
//! A path `x_0..x_{2k+1}` augments a matching when both endpoints are
//! unmatched, edges alternate non-matching/matching, and all vertices are
//! distinct; `k` is its length parameter. Flipping it grows the matching by
//! one edge.

use crate::error::{Error, Result};
use crate::graph::{AdjacencyView, Graph, Vertex};
use crate::matching::Matching;

/// A validated augmenting path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    vertices: Vec<Vertex>,
}

impl AugmentingPath {
    /// Builds and fully validates a path against a graph and matching.
    pub fn new(g: &Graph, m: &Matching, vertices: Vec<Vertex>) -> Result<AugmentingPath> {
        let path = AugmentingPath { vertices };
        path.check_alternation(m)?;
        for pair in path.vertices.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(Error::InvalidPath("step is not an edge"));
            }
        }
        Ok(path)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// The length parameter: a path of `2k + 2` vertices has parameter `k`.
    pub fn len_param(&self) -> usize {
        self.vertices.len() / 2 - 1
    }

    fn check_alternation(&self, m: &Matching) -> Result<()> {
        let verts = &self.vertices;
        if verts.len() < 2 || !verts.len().is_multiple_of(2) {
            return Err(Error::InvalidPath("length must be even and at least 2"));
        }
        let mut seen = verts.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPath("repeated vertex"));
        }
        if m.is_matched(verts[0]) || m.is_matched(*verts.last().unwrap()) {
            return Err(Error::InvalidPath("endpoint is matched"));
        }
        for (i, pair) in verts.windows(2).enumerate() {
            let in_matching = m.partner(pair[0]) == Some(pair[1]);
            if i % 2 == 0 && in_matching {
                return Err(Error::InvalidPath("even step lies in the matching"));
            }
            if i % 2 == 1 && !in_matching {
                return Err(Error::InvalidPath("odd step outside the matching"));
            }
        }
        Ok(())
    }
}

/// Returns `M` improved by `p` (the symmetric difference): one more edge,
/// strictly more matched vertices. Alternation is re-checked against `m`.
pub fn augment(m: &Matching, p: &AugmentingPath) -> Result<Matching> {
    p.check_alternation(m)?;
    let mut next = m.clone();
    next.flip_path(p.vertices());
    Ok(next)
}

/// Shortest augmenting path from `v` with length parameter at most `cap`,
/// ties broken by lexicographically smallest vertex sequence. Returns `None`
/// for matched `v` or when no such path exists.
///
/// The search never leaves the ball of radius `2 * cap + 1` around `v`; the
/// depth bound enforces that implicitly.
pub fn find_augmenting_path(
    g: &Graph,
    m: &Matching,
    v: Vertex,
    cap: usize,
) -> Option<AugmentingPath> {
    find_in_view(g, m, v, cap, |_| true).map(|vertices| AugmentingPath { vertices })
}

/// View-generic search used both publicly and inside ball replays. `allowed`
/// restricts which vertices the path may visit (the start is always allowed).
pub(crate) fn find_in_view<V: AdjacencyView + ?Sized>(
    view: &V,
    m: &Matching,
    start: Vertex,
    cap: usize,
    allowed: impl Fn(Vertex) -> bool + Copy,
) -> Option<Vec<Vertex>> {
    if m.is_matched(start) {
        return None;
    }
    // Iterative deepening over the length parameter gives minimal k; visiting
    // neighbors in ascending order makes the first hit lexicographically
    // smallest.
    for k in 0..=cap {
        if let Some(path) = find_exact_in_view(view, m, start, k, allowed) {
            return Some(path);
        }
    }
    None
}

/// Search for an augmenting path of length parameter exactly `k`; first hit
/// in lexicographic order.
pub(crate) fn find_exact_in_view<V: AdjacencyView + ?Sized>(
    view: &V,
    m: &Matching,
    start: Vertex,
    k: usize,
    allowed: impl Fn(Vertex) -> bool + Copy,
) -> Option<Vec<Vertex>> {
    if m.is_matched(start) {
        return None;
    }
    let mut path = vec![start];
    if extend(view, m, &mut path, 2 * k + 2, allowed) {
        Some(path)
    } else {
        None
    }
}

fn extend<V: AdjacencyView + ?Sized>(
    view: &V,
    m: &Matching,
    path: &mut Vec<Vertex>,
    target_len: usize,
    allowed: impl Fn(Vertex) -> bool + Copy,
) -> bool {
    let cur = *path.last().unwrap();
    if path.len() == target_len {
        return !m.is_matched(cur);
    }
    if path.len() % 2 == 1 {
        // Next step must avoid the matching.
        for &w in view.view_neighbors(cur) {
            if m.partner(cur) == Some(w) || !allowed(w) || path.contains(&w) {
                continue;
            }
            path.push(w);
            if extend(view, m, path, target_len, allowed) {
                return true;
            }
            path.pop();
        }
    } else {
        // Next step is forced along the matching edge.
        match m.partner(cur) {
            None => return false, // free interior vertex: shorter paths belong to smaller k
            Some(w) => {
                if allowed(w) && !path.contains(&w) {
                    path.push(w);
                    if extend(view, m, path, target_len, allowed) {
                        return true;
                    }
                    path.pop();
                }
            }
        }
    }
    false
}
