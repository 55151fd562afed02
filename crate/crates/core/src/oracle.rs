//! Bounded-probe matched-status oracle and the sampling estimator.
//!
//! A query extracts the ball around the query vertex whose radius suffices to
//! replay the phased improver locally, then replays it. Influence propagates
//! at most 8T per round (a center up to 4T away rewrites edges that feed a
//! center up to 4T on the other side next round), and activation is decided
//! by keys over 8T-balls, so the replay activates only centers whose full
//! activation ball lies inside the extraction. The dependency radius
//! `8T * phases + 4T + 1` makes the replayed answer provably equal to the
//! global one; the short-path query extends it by `2T + 1`.
//!
//! When the extraction exhausts a whole connected component inside the
//! activation-faithful zone, replay coincides with the global run restricted
//! to that component, and a cached global matching answers directly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyView, Graph, Vertex};
use crate::hashing::{hash3, uniform_below};
use crate::improver::{improver_rounds, run_improver, ImproverConfig};
use crate::matching::Matching;
use crate::paths::{find_augmenting_path, find_in_view};

/// Oracle parameters: the improver being simulated plus an optional cap on
/// adjacency probes per query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub improver: ImproverConfig,
    pub probe_budget: Option<u64>,
}

impl OracleConfig {
    pub fn new(improver: ImproverConfig) -> OracleConfig {
        OracleConfig {
            improver,
            probe_budget: None,
        }
    }

    /// Extraction radius for matched-status queries: `8T * phases + 4T + 1`.
    pub fn dependency_radius(&self) -> usize {
        let t = self.improver.path_cap;
        8 * t * self.improver.phases + 4 * t + 1
    }

    /// Extraction radius for short-path queries: the final matching must be
    /// faithful out to `2T + 1` around the query vertex.
    pub fn endpoint_radius(&self) -> usize {
        self.dependency_radius() + 2 * self.improver.path_cap + 1
    }
}

/// Matched-status oracle over one graph. Queries are pure functions of
/// `(graph, config, vertex)`; the oracle object only adds probe accounting
/// and a cache for the saturated case.
pub struct Oracle<'g> {
    graph: &'g Graph,
    cfg: OracleConfig,
    probes: AtomicU64,
    global: OnceLock<Matching>,
}

/// Outcome of one combined sample query.
#[derive(Debug, Clone, Copy)]
struct SampleOutcome {
    matched: bool,
    partner: Option<Vertex>,
    bad: bool,
    probes: u64,
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g Graph, cfg: OracleConfig) -> Oracle<'g> {
        Oracle {
            graph,
            cfg,
            probes: AtomicU64::new(0),
            global: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &OracleConfig {
        &self.cfg
    }

    /// Total adjacency probes consumed by queries so far.
    pub fn probes_consumed(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    /// Matched status and partner of `v` — exactly as in the global improver
    /// run, computed from the ball around `v` alone.
    pub fn query_matched(&self, v: Vertex) -> Result<(bool, Option<Vertex>)> {
        let out = self.resolve(v, self.cfg.dependency_radius(), false)?;
        Ok((out.matched, out.partner))
    }

    /// Whether `v` is unmatched and starts an augmenting path of length
    /// parameter at most T under the improver matching.
    pub fn query_short_path_endpoint(&self, v: Vertex) -> Result<bool> {
        Ok(self.resolve(v, self.cfg.endpoint_radius(), true)?.bad)
    }

    fn resolve(&self, v: Vertex, radius: usize, want_bad: bool) -> Result<SampleOutcome> {
        let n = self.graph.vertex_count();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let zone = radius - self.cfg.improver.activation_radius().min(radius);
        let ext = self.extract(v, radius, zone)?;
        self.probes.fetch_add(ext.probes(), Ordering::Relaxed);
        let cap = self.cfg.improver.path_cap;

        if ext.saturated {
            // Whole component inside the faithful zone: global and local runs
            // coincide, so answer from the global matching.
            if let Some(m) = self.global_matching_for_component(&ext) {
                let partner = m.partner(v);
                let bad = want_bad
                    && partner.is_none()
                    && find_augmenting_path(self.graph, m, v, cap).is_some();
                return Ok(SampleOutcome {
                    matched: partner.is_some(),
                    partner,
                    bad,
                    probes: ext.probes(),
                });
            }
        }

        let probes = ext.probes();
        let view = ext.into_view(self.graph, zone);
        let local_m = improver_rounds(&view, &self.cfg.improver, |_, _, _| {});
        let center = view.center_local;
        let partner_local = local_m.partner(center);
        let partner = partner_local.map(|p| view.verts[p]);
        let bad = want_bad
            && partner.is_none()
            && find_in_view(&view, &local_m, center, cap, |_| true).is_some();
        // Whole-graph views replay the full run; keep it for later queries.
        if view.verts.len() == self.graph.vertex_count() && view.all_eligible {
            let _ = self.global.set(local_m);
        }
        Ok(SampleOutcome {
            matched: partner.is_some(),
            partner,
            bad,
            probes,
        })
    }

    /// The cached global matching, or a fresh one when the saturated view
    /// covers the whole graph (small components fall back to view replay,
    /// which is cheaper than a full global run).
    fn global_matching_for_component(&self, ext: &Extraction) -> Option<&Matching> {
        if let Some(m) = self.global.get() {
            return Some(m);
        }
        if ext.order.len() == self.graph.vertex_count() {
            // Non-blocking set: a racing thread may compute it redundantly,
            // never deadlock.
            let m = run_improver(self.graph, &self.cfg.improver);
            let _ = self.global.set(m);
            return Some(self.global.get().expect("just set"));
        }
        None
    }

    fn extract(&self, center: Vertex, radius: usize, zone: usize) -> Result<Extraction> {
        let mut dist: HashMap<Vertex, u32> = HashMap::new();
        dist.insert(center, 0);
        let mut order = vec![center];
        let mut reads: Vec<Vertex> = Vec::new();
        let mut frontier = vec![center];
        let mut depth = 0u32;
        let mut exhausted = true;
        while !frontier.is_empty() {
            if depth as usize >= radius {
                exhausted = false;
                break;
            }
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                if let Some(budget) = self.cfg.probe_budget {
                    if reads.len() as u64 >= budget {
                        return Err(Error::ProbeBudgetExceeded {
                            used: reads.len() as u64 + 1,
                            budget,
                        });
                    }
                }
                reads.push(u);
                for &w in self.graph.neighbors(u) {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(depth);
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            order.extend_from_slice(&next);
            frontier = next;
        }
        let max_dist = depth.saturating_sub(if frontier.is_empty() { 1 } else { 0 });
        let saturated = exhausted && (max_dist as usize) <= zone;
        Ok(Extraction {
            center,
            radius,
            dist,
            order,
            reads,
            saturated,
        })
    }

    /// Sampling estimator: draws vertices uniformly with replacement, queries
    /// matched status and short-path-endpoint status for each, and emits a
    /// bracket widened by the sampling accuracy.
    pub fn estimate_matching_ratio(
        &self,
        epsilon: f64,
        delta: f64,
        sample_seed: u64,
    ) -> Result<EstimateReport> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be in (0, 1), got {epsilon}"
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "delta must be in (0, 1), got {delta}"
            )));
        }
        let n = self.graph.vertex_count() as u64;
        if n == 0 {
            return Err(Error::InvalidParameter("empty graph".into()));
        }
        let samples = hoeffding_samples(epsilon, delta);
        let sample_vertex =
            |i: u64| uniform_below(hash3(sample_seed, 0x5A17, i), n) as Vertex;

        // First sample runs alone so a saturated graph caches its global
        // matching before the parallel fan-out.
        let first = self.sample_query(sample_vertex(0))?;
        let rest: Vec<SampleOutcome> = (1..samples)
            .into_par_iter()
            .map(|i| self.sample_query(sample_vertex(i)))
            .collect::<Result<Vec<_>>>()?;

        let mut matched_hits = first.matched as u64;
        let mut bad_hits = first.bad as u64;
        let mut probes = first.probes;
        for out in &rest {
            matched_hits += out.matched as u64;
            bad_hits += out.bad as u64;
            probes += out.probes;
        }

        let s_hat = matched_hits as f64 / (2.0 * samples as f64);
        let q_hat = bad_hits as f64 / samples as f64;
        let t = self.cfg.improver.path_cap as f64;
        let lower = (s_hat - epsilon).max(0.0);
        let upper = ((s_hat + epsilon) * (t + 1.0) / t + q_hat + epsilon).min(1.0);
        Ok(EstimateReport {
            epsilon,
            delta,
            samples,
            matched_hits,
            bad_hits,
            s_hat,
            q_hat,
            lower,
            upper,
            probes,
            path_cap: self.cfg.improver.path_cap as u64,
            phases: self.cfg.improver.phases as u64,
        })
    }

    /// One combined query: matched status and badness from a single
    /// extraction at the endpoint radius.
    fn sample_query(&self, v: Vertex) -> Result<SampleOutcome> {
        self.resolve(v, self.cfg.endpoint_radius(), true)
    }
}

/// Raw extraction: BFS ball with distances, discovery order, and accounting.
struct Extraction {
    center: Vertex,
    radius: usize,
    dist: HashMap<Vertex, u32>,
    order: Vec<Vertex>,
    /// Vertices whose adjacency list was read; one probe each.
    reads: Vec<Vertex>,
    saturated: bool,
}

impl Extraction {
    fn probes(&self) -> u64 {
        self.reads.len() as u64
    }

    /// Builds the replay view: local ids are ranks in global-id order, so
    /// ascending local order coincides with ascending global order and the
    /// replay makes the same tie-break choices as the global run.
    fn into_view(self, g: &Graph, zone: usize) -> LocalView {
        let mut verts = self.order;
        verts.sort_unstable();
        let local_of: HashMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let radius = self.radius as u32;
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|&v| {
                if self.dist[&v] >= radius && !self.saturated {
                    Vec::new() // boundary shell: present but never expanded
                } else {
                    g.neighbors(v).iter().map(|w| local_of[w]).collect()
                }
            })
            .collect();
        let dist: Vec<u32> = verts.iter().map(|&v| self.dist[&v]).collect();
        let all_eligible = dist.iter().all(|&d| d as usize <= zone);
        LocalView {
            center_local: local_of[&self.center],
            verts,
            adj,
            dist,
            zone: zone as u32,
            boundary: if self.saturated { u32::MAX } else { radius },
            all_eligible,
        }
    }
}

/// Extracted ball acting as an adjacency view for the improver replay.
struct LocalView {
    verts: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    center_local: usize,
    zone: u32,
    /// Distance at which adjacency was not probed; reads there are a logic
    /// error (the replay never needs them).
    boundary: u32,
    all_eligible: bool,
}

impl AdjacencyView for LocalView {
    fn view_len(&self) -> usize {
        self.verts.len()
    }
    fn view_neighbors(&self, v: Vertex) -> &[Vertex] {
        debug_assert!(
            self.dist[v] < self.boundary,
            "adjacency read on the unexplored boundary shell"
        );
        &self.adj[v]
    }
    fn key_id(&self, v: Vertex) -> u64 {
        self.verts[v] as u64
    }
    fn center_eligible(&self, v: Vertex) -> bool {
        self.dist[v] <= self.zone
    }
}

/// Two-sided Hoeffding sample count with a union bound over the two
/// estimated quantities: `ceil(ln(4 / delta) / (2 * epsilon^2))`.
pub fn hoeffding_samples(epsilon: f64, delta: f64) -> u64 {
    ((4.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil().max(1.0) as u64
}

/// Report of one estimator run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateReport {
    pub epsilon: f64,
    pub delta: f64,
    pub samples: u64,
    pub matched_hits: u64,
    pub bad_hits: u64,
    /// Estimated matched-edge ratio (each matched vertex counts half an edge).
    pub s_hat: f64,
    /// Estimated short-path starter fraction.
    pub q_hat: f64,
    pub lower: f64,
    pub upper: f64,
    pub probes: u64,
    pub path_cap: u64,
    pub phases: u64,
}

impl EstimateReport {
    pub fn contains(&self, ratio: f64) -> bool {
        self.lower <= ratio && ratio <= self.upper
    }

    pub fn probes_per_query(&self) -> f64 {
        self.probes as f64 / self.samples as f64
    }
}

/// One-shot wrapper over [`Oracle::query_matched`].
pub fn query_matched(
    g: &Graph,
    cfg: &OracleConfig,
    v: Vertex,
) -> Result<(bool, Option<Vertex>)> {
    Oracle::new(g, *cfg).query_matched(v)
}

/// One-shot wrapper over [`Oracle::query_short_path_endpoint`].
pub fn query_short_path_endpoint(g: &Graph, cfg: &OracleConfig, v: Vertex) -> Result<bool> {
    Oracle::new(g, *cfg).query_short_path_endpoint(v)
}

/// One-shot wrapper over [`Oracle::estimate_matching_ratio`].
pub fn estimate_matching_ratio(
    g: &Graph,
    cfg: &OracleConfig,
    epsilon: f64,
    delta: f64,
    sample_seed: u64,
) -> Result<EstimateReport> {
    Oracle::new(g, *cfg).estimate_matching_ratio(epsilon, delta, sample_seed)
}
