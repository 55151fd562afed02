//! The phased local improvement process and the certified bracket.
//!
//! Starting from the empty matching, each round hashes every vertex to a key;
//! a vertex whose key is a strict minimum over its 8T-ball becomes an active
//! center, which forces any two centers' 4T-balls to be disjoint. Each center
//! then exhaustively removes every augmenting path of length parameter at
//! most T lying inside its 4T-ball, always flipping the minimal path (smallest
//! length parameter, then lexicographically smallest vertex sequence).
//!
//! The result is certified rather than assumed: [`verify_bracket`] counts the
//! vertices still starting short augmenting paths and emits an interval that
//! provably contains the true maximum-matching ratio.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyView, Graph, Vertex};
use crate::hashing::hash3;
use crate::matching::Matching;
use crate::paths::{find_augmenting_path, find_exact_in_view};

/// Parameters of the phased improver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImproverConfig {
    /// Cap on the augmenting-path length parameter (a path of `2k + 2`
    /// vertices has parameter `k`). At least 1.
    pub path_cap: usize,
    /// Number of improvement rounds. Zero is allowed as a diagnostic bypass
    /// and leaves the matching empty.
    pub phases: usize,
    /// Seed for the per-round activation keys.
    pub seed: u64,
}

impl ImproverConfig {
    pub fn new(path_cap: usize, phases: usize, seed: u64) -> Result<ImproverConfig> {
        if path_cap == 0 {
            return Err(Error::InvalidParameter("path cap must be at least 1".into()));
        }
        Ok(ImproverConfig {
            path_cap,
            phases,
            seed,
        })
    }

    /// Key of a vertex in a given round; strict minima over 8T-balls act.
    #[inline]
    pub fn round_key(&self, round: usize, vertex_id: u64) -> u64 {
        hash3(self.seed, round as u64, vertex_id)
    }

    /// Radius of the key-comparison ball (8T).
    pub fn activation_radius(&self) -> usize {
        8 * self.path_cap
    }

    /// Radius of the ball a center improves (4T).
    pub fn improvement_radius(&self) -> usize {
        4 * self.path_cap
    }
}

/// Whether `u` is an active center in `round`: its key must be a strict
/// minimum over its 8T-ball. Ties deactivate both sides. The scan stops at
/// the first smaller-or-equal key, so the expected cost is logarithmic in
/// the ball size.
pub(crate) fn is_active<V: AdjacencyView + ?Sized>(
    view: &V,
    cfg: &ImproverConfig,
    round: usize,
    u: Vertex,
) -> bool {
    let own_key = cfg.round_key(round, view.key_id(u));
    let mut seen: HashSet<Vertex> = HashSet::with_capacity(64);
    seen.insert(u);
    let mut frontier = vec![u];
    for _ in 0..cfg.activation_radius() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &w in view.view_neighbors(x) {
                if seen.insert(w) {
                    if cfg.round_key(round, view.key_id(w)) <= own_key {
                        return false;
                    }
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    true
}

/// Removes every augmenting path with parameter `<= path_cap` lying inside
/// the 4T-ball of `center`, repeatedly flipping the minimal one.
fn eliminate_in_ball<V: AdjacencyView + ?Sized>(
    view: &V,
    cfg: &ImproverConfig,
    matching: &mut Matching,
    center: Vertex,
) {
    let mut ball: HashSet<Vertex> = HashSet::new();
    ball.insert(center);
    let mut frontier = vec![center];
    for _ in 0..cfg.improvement_radius() {
        let mut next = Vec::new();
        for &x in &frontier {
            for &w in view.view_neighbors(x) {
                if ball.insert(w) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let allowed = |v: Vertex| ball.contains(&v);
    let mut unmatched: BTreeSet<Vertex> = ball
        .iter()
        .copied()
        .filter(|&v| !matching.is_matched(v))
        .collect();

    // Parameter 0 first: free edges in lexicographic order. Augmenting never
    // unmatches a vertex, so exhausted free edges stay exhausted and a resume
    // cursor is sound.
    let mut cursor: Vertex = 0;
    loop {
        let mut hit: Option<(Vertex, Vertex)> = None;
        'scan: for &s in unmatched.range(cursor..) {
            for &w in view.view_neighbors(s) {
                if allowed(w) && !matching.is_matched(w) {
                    hit = Some((s, w));
                    break 'scan;
                }
            }
        }
        match hit {
            Some((s, w)) => {
                matching.flip_path(&[s, w]);
                unmatched.remove(&s);
                unmatched.remove(&w);
                cursor = s;
            }
            None => break,
        }
    }

    // Longer parameters: rescan from 1 after every flip, because a flip can
    // re-route alternation and create paths at smaller parameters (never at
    // parameter 0).
    'rescan: loop {
        for k in 1..=cfg.path_cap {
            let starts: Vec<Vertex> = unmatched.iter().copied().collect();
            for s in starts {
                if let Some(path) = find_exact_in_view(view, matching, s, k, allowed) {
                    matching.flip_path(&path);
                    unmatched.remove(&path[0]);
                    unmatched.remove(path.last().unwrap());
                    continue 'rescan;
                }
            }
        }
        break;
    }
}

/// One full run of the phased process over any adjacency view.
pub(crate) fn improver_rounds<V: AdjacencyView + ?Sized>(
    view: &V,
    cfg: &ImproverConfig,
    mut hook: impl FnMut(usize, &[Vertex], &Matching),
) -> Matching {
    let n = view.view_len();
    let mut matching = Matching::empty(n);
    for round in 1..=cfg.phases {
        let mut actives: Vec<Vertex> = (0..n)
            .into_par_iter()
            .filter(|&u| view.center_eligible(u) && is_active(view, cfg, round, u))
            .collect();
        actives.sort_unstable();
        for &u in &actives {
            eliminate_in_ball(view, cfg, &mut matching, u);
        }
        hook(round, &actives, &matching);
    }
    matching
}

/// Runs the phased improver from the empty matching. Deterministic in
/// `(g, cfg)`: same output on every run, platform, and thread count.
pub fn run_improver(g: &Graph, cfg: &ImproverConfig) -> Matching {
    improver_rounds(g, cfg, |_, _, _| {})
}

/// Per-round record retained by [`run_improver_trace`].
#[derive(Debug, Clone)]
pub struct ImproverRound {
    pub round: usize,
    pub actives: Vec<Vertex>,
    pub matching: Matching,
}

/// Like [`run_improver`], but keeps each round's active centers and matching
/// snapshot. Intended for diagnostics and invariant checks.
pub fn run_improver_trace(g: &Graph, cfg: &ImproverConfig) -> Vec<ImproverRound> {
    let mut rounds = Vec::with_capacity(cfg.phases);
    improver_rounds(g, cfg, |round, actives, matching| {
        rounds.push(ImproverRound {
            round,
            actives: actives.to_vec(),
            matching: matching.clone(),
        });
    });
    rounds
}

/// Certified interval for the maximum-matching ratio, from any matching.
///
/// With `s = matched_edges / n` and `q` the fraction of vertices starting an
/// augmenting path of parameter at most `path_cap`, the true ratio lies in
/// `[s, s * (path_cap + 1) / path_cap + q]`. The raw integer counts are kept
/// so the containment test is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BracketReport {
    pub n: u64,
    pub matched_edges: u64,
    pub bad_vertices: u64,
    pub path_cap: u64,
}

impl BracketReport {
    /// Matched-edge ratio `s`.
    pub fn matched_ratio(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.matched_edges as f64 / self.n as f64
        }
    }

    /// Short-path starter fraction `q`.
    pub fn bad_fraction(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.bad_vertices as f64 / self.n as f64
        }
    }

    pub fn lower(&self) -> f64 {
        self.matched_ratio()
    }

    pub fn upper(&self) -> f64 {
        let t = self.path_cap as f64;
        self.matched_ratio() * (t + 1.0) / t + self.bad_fraction()
    }

    /// Exact integer form of the bracket test: does a maximum matching with
    /// `max_edges` edges lie inside? Both inequalities are checked without
    /// rounding.
    pub fn contains_edge_count(&self, max_edges: u64) -> bool {
        let t = self.path_cap as u128;
        let lower_ok = self.matched_edges <= max_edges;
        let upper_ok = max_edges as u128 * t
            <= self.matched_edges as u128 * (t + 1) + self.bad_vertices as u128 * t;
        lower_ok && upper_ok
    }
}

/// Measures the certified bracket of `m` at `path_cap` by running the path
/// search at every unmatched vertex. Exact, not sampled.
pub fn verify_bracket(g: &Graph, m: &Matching, path_cap: usize) -> BracketReport {
    assert!(path_cap >= 1, "path cap must be at least 1");
    let n = g.vertex_count();
    let bad = (0..n)
        .into_par_iter()
        .filter(|&v| !m.is_matched(v) && find_augmenting_path(g, m, v, path_cap).is_some())
        .count();
    BracketReport {
        n: n as u64,
        matched_edges: m.edge_count() as u64,
        bad_vertices: bad as u64,
        path_cap: path_cap as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::maximum_matching;
    use crate::families::FamilySpec;
    use crate::matching::matching_ratio;

    fn cfg(path_cap: usize, phases: usize, seed: u64) -> ImproverConfig {
        ImproverConfig::new(path_cap, phases, seed).unwrap()
    }

    #[test]
    fn single_edge_is_taken() {
        let g = FamilySpec::parse("path:n=2").unwrap().generate().unwrap();
        let m = run_improver(&g, &cfg(1, 1, 9));
        assert_eq!(m.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn six_cycle_reaches_perfect() {
        let g = FamilySpec::parse("cycle:n=6").unwrap().generate().unwrap();
        for seed in [0u64, 1, 2, 3, 17] {
            let m = run_improver(&g, &cfg(3, 3, seed));
            assert_eq!(m.edge_count(), 3, "seed {seed}");
            m.validate_for(&g).unwrap();
        }
    }

    #[test]
    fn empty_graph_stays_empty() {
        let g = Graph::build(7, &[], 0).unwrap();
        let m = run_improver(&g, &cfg(2, 4, 5));
        assert_eq!(m.edge_count(), 0);
    }

    #[test]
    fn zero_phases_is_a_bypass() {
        let g = FamilySpec::parse("cycle:n=8").unwrap().generate().unwrap();
        let m = run_improver(&g, &cfg(2, 0, 5));
        assert_eq!(m.edge_count(), 0);
    }

    #[test]
    fn matching_grows_monotonically() {
        let g = FamilySpec::parse("random_regular:n=300,d=3,seed=4")
            .unwrap()
            .generate()
            .unwrap();
        let trace = run_improver_trace(&g, &cfg(1, 6, 11));
        let mut last = 0;
        for round in &trace {
            round.matching.validate_for(&g).unwrap();
            assert!(round.matching.edge_count() >= last);
            last = round.matching.edge_count();
        }
    }

    #[test]
    fn active_centers_are_pairwise_distant() {
        // Large cycle with path_cap 1: activation balls have radius 8, so
        // several centers act per round and must sit more than 8 apart.
        let g = FamilySpec::parse("cycle:n=400").unwrap().generate().unwrap();
        let c = cfg(1, 3, 23);
        let trace = run_improver_trace(&g, &c);
        let mut saw_parallel_round = false;
        for round in &trace {
            if round.actives.len() > 1 {
                saw_parallel_round = true;
            }
            for (i, &u) in round.actives.iter().enumerate() {
                let dist = g.distances_up_to(u, c.activation_radius());
                for &w in &round.actives[i + 1..] {
                    assert!(
                        !dist.contains_key(&w),
                        "centers {u} and {w} within 8T in round {}",
                        round.round
                    );
                }
            }
        }
        assert!(saw_parallel_round, "suite never exercised parallel centers");
    }

    #[test]
    fn no_short_path_survives_inside_acted_balls() {
        let g = FamilySpec::parse("cycle:n=300").unwrap().generate().unwrap();
        let c = cfg(2, 2, 7);
        let trace = run_improver_trace(&g, &c);
        for round in &trace {
            for &u in &round.actives {
                let ball = g.distances_up_to(u, c.improvement_radius());
                for &v in ball.keys() {
                    if let Some(p) =
                        find_augmenting_path(&g, &round.matching, v, c.path_cap)
                    {
                        assert!(
                            !p.vertices().iter().all(|x| ball.contains_key(x)),
                            "short path inside the ball of {u} after round {}",
                            round.round
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn improver_is_deterministic() {
        let g = FamilySpec::parse("random_regular:n=500,d=3,seed=1")
            .unwrap()
            .generate()
            .unwrap();
        let c = cfg(2, 4, 99);
        assert_eq!(run_improver(&g, &c), run_improver(&g, &c));
    }

    #[test]
    fn round_result_is_schedule_independent() {
        // Centers of one round have disjoint improvement balls, so applying
        // them in reverse order must give the same matching as ascending
        // order.
        let g = FamilySpec::parse("cycle:n=500").unwrap().generate().unwrap();
        let c = cfg(1, 4, 13);
        let trace = run_improver_trace(&g, &c);
        let mut matching = Matching::empty(g.vertex_count());
        let mut multi_center_rounds = 0;
        for round in &trace {
            if round.actives.len() > 1 {
                multi_center_rounds += 1;
            }
            for &u in round.actives.iter().rev() {
                eliminate_in_ball(&g, &c, &mut matching, u);
            }
            assert_eq!(matching, round.matching, "round {}", round.round);
        }
        assert!(multi_center_rounds > 0);
    }

    #[test]
    fn bracket_examples() {
        // Perfect matching on a six-cycle: q = 0.
        let g = FamilySpec::parse("cycle:n=6").unwrap().generate().unwrap();
        let m = Matching::from_pairs(&g, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let report = verify_bracket(&g, &m, 3);
        assert_eq!(report.matched_ratio(), 0.5);
        assert_eq!(report.bad_fraction(), 0.0);
        assert!((report.upper() - 2.0 / 3.0).abs() < 1e-12);
        assert!(report.contains_edge_count(3));

        // Stuck matching on a four-path: both ends start short paths.
        let p4 = FamilySpec::parse("path:n=4").unwrap().generate().unwrap();
        let m = Matching::from_pairs(&p4, &[(1, 2)]).unwrap();
        let report = verify_bracket(&p4, &m, 2);
        assert_eq!(report.matched_ratio(), 0.25);
        assert_eq!(report.bad_fraction(), 0.5);
        assert!((report.upper() - 0.875).abs() < 1e-12);
        let exact = maximum_matching(&p4);
        assert_eq!(matching_ratio(&p4, &exact).value(), 0.5);
        assert!(report.contains_edge_count(exact.edge_count() as u64));

        // Empty graph: the bracket collapses to [0, 0].
        let empty = Graph::build(5, &[], 0).unwrap();
        let report = verify_bracket(&empty, &Matching::empty(5), 4);
        assert_eq!((report.lower(), report.upper()), (0.0, 0.0));
        assert!(report.contains_edge_count(0));
    }

    #[test]
    fn sandwich_holds_on_a_small_suite() {
        for seed in 0..12u64 {
            let spec = format!("random_bounded:n=60,d=4,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            let exact_edges = maximum_matching(&g).edge_count() as u64;
            for path_cap in [1usize, 2, 3] {
                let c = cfg(path_cap, 1 + (seed as usize % 4), seed ^ 0xABCD);
                for round in run_improver_trace(&g, &c) {
                    let report = verify_bracket(&g, &round.matching, path_cap);
                    assert!(
                        report.contains_edge_count(exact_edges),
                        "seed {seed} cap {path_cap} round {}",
                        round.round
                    );
                }
            }
        }
    }
}
