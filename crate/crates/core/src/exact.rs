//! Exact maximum matching: blossom-contraction augmenting-path search for
//! general graphs, and an exhaustive validator for small instances.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matching::{Matching, UNMATCHED};

/// Maximum-cardinality matching via repeated augmenting-path search with
/// blossom contraction. Plain O(V * E) per augmentation; seeded with a greedy
/// maximal matching so few augmentations remain on sparse graphs.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut partner = vec![UNMATCHED; n];
    for v in 0..n {
        if partner[v] == UNMATCHED {
            for &w in g.neighbors(v) {
                if partner[w] == UNMATCHED {
                    partner[v] = w;
                    partner[w] = v;
                    break;
                }
            }
        }
    }
    let mut searcher = BlossomSearch::new(n);
    for v in 0..n {
        if partner[v] == UNMATCHED {
            if let Some(finish) = searcher.find_path(g, &partner, v) {
                augment_along(&mut partner, &searcher.parent, v, finish);
            }
        }
    }
    Matching::from_partner_vec(partner)
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![UNMATCHED; n],
            base: (0..n).collect(),
            used: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Alternating BFS from the free vertex `start`; returns the free vertex
    /// ending an augmenting path, if any. Odd cycles met along the way are
    /// contracted by lifting every cycle vertex to a common base.
    fn find_path(&mut self, g: &Graph, partner: &[usize], start: usize) -> Option<usize> {
        let n = g.vertex_count();
        self.parent.iter_mut().for_each(|p| *p = UNMATCHED);
        self.used.iter_mut().for_each(|u| *u = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.queue.push_back(start);
        self.used[start] = true;
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || partner[v] == to {
                    continue;
                }
                if to == start || (partner[to] != UNMATCHED && self.parent[partner[to]] != UNMATCHED)
                {
                    // Odd cycle: contract the blossom rooted at the LCA.
                    let cur = self.lca(partner, v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(partner, v, cur, to, &mut in_blossom);
                    self.mark_path(partner, to, cur, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == UNMATCHED {
                    self.parent[to] = v;
                    if partner[to] == UNMATCHED {
                        return Some(to);
                    }
                    self.used[partner[to]] = true;
                    self.queue.push_back(partner[to]);
                }
            }
        }
        None
    }

    fn lca(&self, partner: &[usize], mut v: usize, mut w: usize) -> usize {
        let mut seen = vec![false; self.base.len()];
        loop {
            v = self.base[v];
            seen[v] = true;
            if partner[v] == UNMATCHED {
                break;
            }
            v = self.parent[partner[v]];
        }
        loop {
            w = self.base[w];
            if seen[w] {
                return w;
            }
            w = self.parent[partner[w]];
        }
    }

    fn mark_path(
        &mut self,
        partner: &[usize],
        mut v: usize,
        cycle_base: usize,
        mut child: usize,
        in_blossom: &mut [bool],
    ) {
        while self.base[v] != cycle_base {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[partner[v]]] = true;
            self.parent[v] = child;
            child = partner[v];
            v = self.parent[partner[v]];
        }
    }
}

fn augment_along(partner: &mut [usize], parent: &[usize], start: usize, finish: usize) {
    let mut cur = finish;
    while cur != start {
        let prev = parent[cur];
        let next = partner[prev];
        partner[cur] = prev;
        partner[prev] = cur;
        if next == UNMATCHED {
            break;
        }
        cur = next;
    }
}

/// Hard cap for [`brute_force_matching`].
pub const BRUTE_FORCE_CAP: usize = 20;

/// Maximum matching by exhaustive branch-and-bound over per-vertex choices.
/// Test referee only; errors with `TooLarge` beyond [`BRUTE_FORCE_CAP`].
pub fn brute_force_matching(g: &Graph) -> Result<Matching> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut state = BruteState {
        partner: vec![UNMATCHED; n],
        banned: vec![false; n],
        best_size: 0,
        best: vec![UNMATCHED; n],
    };
    brute_recurse(g, 0, 0, &mut state);
    Ok(Matching::from_partner_vec(state.best))
}

struct BruteState {
    partner: Vec<usize>,
    banned: Vec<bool>,
    best_size: usize,
    best: Vec<usize>,
}

fn brute_recurse(g: &Graph, v: Vertex, size: usize, state: &mut BruteState) {
    let n = g.vertex_count();
    if size > state.best_size {
        state.best_size = size;
        state.best.copy_from_slice(&state.partner);
    }
    if v == n {
        return;
    }
    // Optimistic bound: everyone still free and unbanned gets matched.
    let free = (v..n)
        .filter(|&u| state.partner[u] == UNMATCHED && !state.banned[u])
        .count();
    if size + free / 2 <= state.best_size {
        return;
    }
    if state.partner[v] != UNMATCHED {
        brute_recurse(g, v + 1, size, state);
        return;
    }
    // Match v with each available neighbor.
    for &w in g.neighbors(v) {
        if w > v && state.partner[w] == UNMATCHED && !state.banned[w] {
            state.partner[v] = w;
            state.partner[w] = v;
            brute_recurse(g, v + 1, size + 1, state);
            state.partner[v] = UNMATCHED;
            state.partner[w] = UNMATCHED;
        }
    }
    // Or leave v unmatched for good.
    state.banned[v] = true;
    brute_recurse(g, v + 1, size, state);
    state.banned[v] = false;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::matching::matching_ratio;
    use crate::paths::find_augmenting_path;

    pub(crate) fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
            edges.push((i, 5 + i)); // spokes
        }
        Graph::build(10, &edges, 3).unwrap()
    }

    #[test]
    fn odd_cycle_matching() {
        let g = FamilySpec::parse("cycle:n=5").unwrap().generate().unwrap();
        let m = maximum_matching(&g);
        assert_eq!(m.edge_count(), 2);
        m.validate_for(&g).unwrap();
    }

    #[test]
    fn path4_perfect() {
        let g = FamilySpec::parse("path:n=4").unwrap().generate().unwrap();
        assert_eq!(maximum_matching(&g).edge_count(), 2);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let g = petersen();
        let exact = maximum_matching(&g);
        let brute = brute_force_matching(&g).unwrap();
        assert_eq!(exact.edge_count(), brute.edge_count());
        assert_eq!(exact.edge_count(), 5);
        exact.validate_for(&g).unwrap();
    }

    #[test]
    fn blossom_with_chord() {
        // Five-cycle plus a chord: classic contraction case.
        let g = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)], 4).unwrap();
        assert_eq!(maximum_matching(&g).edge_count(), 2);
    }

    #[test]
    fn brute_force_examples() {
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 3).unwrap();
        assert_eq!(brute_force_matching(&k4).unwrap().edge_count(), 2);

        let empty = Graph::build(5, &[], 0).unwrap();
        assert_eq!(brute_force_matching(&empty).unwrap().edge_count(), 0);

        let big = FamilySpec::parse("cycle:n=30").unwrap().generate().unwrap();
        assert!(matches!(
            brute_force_matching(&big),
            Err(Error::TooLarge { n: 30, cap: 20 })
        ));
    }

    #[test]
    fn cross_validation_small_random() {
        for seed in 0..60u64 {
            let spec = format!("random_bounded:n=12,d=3,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            let fast = maximum_matching(&g);
            let slow = brute_force_matching(&g).unwrap();
            fast.validate_for(&g).unwrap();
            assert_eq!(fast.edge_count(), slow.edge_count(), "seed {seed}");
        }
    }

    #[test]
    fn output_admits_no_augmenting_path() {
        // Berge: a matching is maximum iff no augmenting path exists. The
        // path cap n/2 makes the search exhaustive.
        for seed in [3u64, 11, 42] {
            let spec = format!("random_regular:n=30,d=3,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            let m = maximum_matching(&g);
            for v in 0..g.vertex_count() {
                assert!(find_augmenting_path(&g, &m, v, 15).is_none());
            }
        }
    }

    #[test]
    fn ratio_never_exceeds_half() {
        for seed in 0..10u64 {
            let spec = format!("random_bounded:n=40,d=4,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            let r = matching_ratio(&g, &maximum_matching(&g));
            assert!(r.value() <= 0.5);
        }
    }
}
