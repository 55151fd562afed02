//! Matchings as partner maps, plus the matching ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub(crate) const UNMATCHED: usize = usize::MAX;

/// A matching stored as a per-vertex partner map. Symmetry is a structural
/// invariant of every constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    /// The empty matching on `n` vertices.
    pub fn empty(n: usize) -> Matching {
        Matching {
            partner: vec![UNMATCHED; n],
        }
    }

    /// Builds a matching from explicit pairs, validating disjointness,
    /// range, and (against `g`) that every pair is an edge.
    pub fn from_pairs(g: &Graph, pairs: &[(Vertex, Vertex)]) -> Result<Matching> {
        let n = g.vertex_count();
        let mut partner = vec![UNMATCHED; n];
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidMatching("vertex out of range"));
            }
            if u == v {
                return Err(Error::InvalidMatching("self-pair"));
            }
            if !g.has_edge(u, v) {
                return Err(Error::InvalidMatching("pair is not an edge"));
            }
            if partner[u] != UNMATCHED || partner[v] != UNMATCHED {
                return Err(Error::InvalidMatching("vertex in two pairs"));
            }
            partner[u] = v;
            partner[v] = u;
        }
        Ok(Matching { partner })
    }

    pub(crate) fn from_partner_vec(partner: Vec<usize>) -> Matching {
        Matching { partner }
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len()
    }

    /// Number of matched edges (pairs).
    pub fn edge_count(&self) -> usize {
        self.matched_vertex_count() / 2
    }

    pub fn matched_vertex_count(&self) -> usize {
        self.partner.iter().filter(|&&p| p != UNMATCHED).count()
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.partner[v] != UNMATCHED
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        match self.partner[v] {
            UNMATCHED => None,
            p => Some(p),
        }
    }

    /// Matched edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(v, &p)| p != UNMATCHED && v < p)
            .map(|(v, &p)| (v, p))
    }

    /// Checks the matching is valid for `g`: symmetric and edge-supported.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        if self.partner.len() != g.vertex_count() {
            return Err(Error::InvalidMatching("size mismatch with graph"));
        }
        for (v, &p) in self.partner.iter().enumerate() {
            if p == UNMATCHED {
                continue;
            }
            if p >= self.partner.len() {
                return Err(Error::InvalidMatching("partner out of range"));
            }
            if self.partner[p] != v {
                return Err(Error::InvalidMatching("asymmetric partner map"));
            }
            if !g.has_edge(v, p) {
                return Err(Error::InvalidMatching("matched pair is not an edge"));
            }
        }
        Ok(())
    }

    /// Flips an augmenting path in place. Callers guarantee validity.
    pub(crate) fn flip_path(&mut self, vertices: &[Vertex]) {
        debug_assert!(vertices.len() >= 2 && vertices.len().is_multiple_of(2));
        for pair in vertices.chunks_exact(2) {
            self.partner[pair[0]] = pair[1];
            self.partner[pair[1]] = pair[0];
        }
    }
}

/// Exact nonnegative rational, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub numer: u64,
    pub denom: u64,
}

impl Ratio {
    pub fn new(numer: u64, denom: u64) -> Ratio {
        if denom == 0 {
            return Ratio { numer: 0, denom: 1 };
        }
        let g = gcd(numer, denom);
        Ratio {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn value(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.numer as u128 * other.denom as u128).cmp(&(other.numer as u128 * self.denom as u128))
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `|M| / |V(G)|` with `|M|` counted in edges. Zero for the empty graph.
pub fn matching_ratio(g: &Graph, m: &Matching) -> Ratio {
    Ratio::new(m.edge_count() as u64, g.vertex_count() as u64)
}
