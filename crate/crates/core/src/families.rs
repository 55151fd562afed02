//! Deterministic bounded-degree graph families.
//!
//! Every generator is a pure function of its spec: random families draw from
//! the pinned hash stream, so the same spec yields the same graph on every
//! platform. Spec strings look like `random_regular:n=100,d=3,seed=7`.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::hashing::{hash3, HashStream};

// The chance one configuration-model draw is simple is roughly
// exp(-(d-1)/2 - (d-1)^2/4), about 1/400 at d = 5; the budget leaves the
// failure probability negligible for every feasible spec at desk scale.
const CONFIG_MODEL_RETRIES: u32 = 20_000;

/// A concrete graph family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Cycle { n: usize },
    /// `side x side` grid; a torus by default, open boundaries on request.
    Grid2d { side: usize, open: bool },
    /// Disjoint cliques of `degree + 1` vertices covering `n` vertices; the
    /// last block may be smaller. Degree stays capped at `degree`.
    CompleteCapped { n: usize, degree: usize },
    /// Uniform-ish random `degree`-regular graph via the configuration model
    /// with rejection of loops and multi-edges.
    RandomRegular { n: usize, degree: usize, seed: u64 },
    /// Random graph with every degree at most `degree`: `n * degree` edge
    /// proposals from the hash stream, kept when simple and within bounds.
    RandomBounded { n: usize, degree: usize, seed: u64 },
    /// Breadth-first prefix of the infinite `degree`-regular tree.
    TreeRegular { n: usize, degree: usize },
}

impl FamilySpec {
    /// Parses `name:key=val,key=val`. Keys: `n`, `side`, `d`, `seed`, `open`.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let bad = |msg: String| Error::InfeasibleSpec(msg);
        let (name, rest) = match text.split_once(':') {
            Some((name, rest)) => (name, rest),
            None => (text, ""),
        };
        let mut n = None;
        let mut side = None;
        let mut degree = None;
        let mut seed = 0u64;
        let mut open = false;
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=val, got `{part}`")))?;
            match key {
                "n" => n = Some(val.parse::<usize>().map_err(|e| bad(format!("n: {e}")))?),
                "side" => {
                    side = Some(val.parse::<usize>().map_err(|e| bad(format!("side: {e}")))?)
                }
                "d" => {
                    degree = Some(val.parse::<usize>().map_err(|e| bad(format!("d: {e}")))?)
                }
                "seed" => seed = val.parse::<u64>().map_err(|e| bad(format!("seed: {e}")))?,
                "open" => {
                    open = val
                        .parse::<bool>()
                        .map_err(|e| bad(format!("open: {e}")))?
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        let need_n = || n.ok_or_else(|| bad(format!("{name} needs n")));
        let need_d = || degree.ok_or_else(|| bad(format!("{name} needs d")));
        Ok(match name {
            "path" => FamilySpec::Path { n: need_n()? },
            "cycle" => FamilySpec::Cycle { n: need_n()? },
            "grid2d" => FamilySpec::Grid2d {
                side: side.or(n).ok_or_else(|| bad("grid2d needs side".into()))?,
                open,
            },
            "complete_capped" => FamilySpec::CompleteCapped {
                n: need_n()?,
                degree: need_d()?,
            },
            "random_regular" => FamilySpec::RandomRegular {
                n: need_n()?,
                degree: need_d()?,
                seed,
            },
            "random_bounded" => FamilySpec::RandomBounded {
                n: need_n()?,
                degree: need_d()?,
                seed,
            },
            "tree_regular" => FamilySpec::TreeRegular {
                n: need_n()?,
                degree: need_d()?,
            },
            other => return Err(bad(format!("unknown family `{other}`"))),
        })
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Grid2d { .. } => "grid2d",
            FamilySpec::CompleteCapped { .. } => "complete_capped",
            FamilySpec::RandomRegular { .. } => "random_regular",
            FamilySpec::RandomBounded { .. } => "random_bounded",
            FamilySpec::TreeRegular { .. } => "tree_regular",
        }
    }

    /// Same family, new target size (`side` for grids, `n` otherwise).
    pub fn with_size(&self, size: usize) -> FamilySpec {
        let mut spec = self.clone();
        match &mut spec {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::CompleteCapped { n, .. }
            | FamilySpec::RandomRegular { n, .. }
            | FamilySpec::RandomBounded { n, .. }
            | FamilySpec::TreeRegular { n, .. } => *n = size,
            FamilySpec::Grid2d { side, .. } => *side = size,
        }
        spec
    }

    /// Same family, new seed (no-op for deterministic families).
    pub fn reseeded(&self, new_seed: u64) -> FamilySpec {
        let mut spec = self.clone();
        match &mut spec {
            FamilySpec::RandomRegular { seed, .. } | FamilySpec::RandomBounded { seed, .. } => {
                *seed = new_seed
            }
            _ => {}
        }
        spec
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Path { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::CompleteCapped { n, .. }
            | FamilySpec::RandomRegular { n, .. }
            | FamilySpec::RandomBounded { n, .. }
            | FamilySpec::TreeRegular { n, .. } => n,
            FamilySpec::Grid2d { side, .. } => side * side,
        }
    }

    /// Builds the graph. Deterministic in the spec.
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Path { n } => {
                let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
                Graph::build(n, &edges, if n > 2 { 2 } else { n.saturating_sub(1) })
            }
            FamilySpec::Cycle { n } => {
                if n < 3 {
                    return Err(Error::InfeasibleSpec(format!("cycle needs n >= 3, got {n}")));
                }
                let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
                Graph::build(n, &edges, 2)
            }
            FamilySpec::Grid2d { side, open } => grid2d(side, open),
            FamilySpec::CompleteCapped { n, degree } => complete_capped(n, degree),
            FamilySpec::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
            FamilySpec::RandomBounded { n, degree, seed } => random_bounded(n, degree, seed),
            FamilySpec::TreeRegular { n, degree } => tree_regular(n, degree),
        }
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            FamilySpec::Path { n } => write!(f, "path:n={n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:n={n}"),
            FamilySpec::Grid2d { side, open } => write!(f, "grid2d:side={side},open={open}"),
            FamilySpec::CompleteCapped { n, degree } => {
                write!(f, "complete_capped:n={n},d={degree}")
            }
            FamilySpec::RandomRegular { n, degree, seed } => {
                write!(f, "random_regular:n={n},d={degree},seed={seed}")
            }
            FamilySpec::RandomBounded { n, degree, seed } => {
                write!(f, "random_bounded:n={n},d={degree},seed={seed}")
            }
            FamilySpec::TreeRegular { n, degree } => write!(f, "tree_regular:n={n},d={degree}"),
        }
    }
}

fn grid2d(side: usize, open: bool) -> Result<Graph> {
    if side == 0 || (!open && side < 3) {
        return Err(Error::InfeasibleSpec(format!(
            "grid2d needs side >= 3 for a torus (side >= 1 open), got {side}"
        )));
    }
    let at = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            if open {
                if c + 1 < side {
                    edges.push((at(r, c), at(r, c + 1)));
                }
                if r + 1 < side {
                    edges.push((at(r, c), at(r + 1, c)));
                }
            } else {
                edges.push((at(r, c), at(r, (c + 1) % side)));
                edges.push((at(r, c), at((r + 1) % side, c)));
            }
        }
    }
    Graph::build(side * side, &edges, if side == 1 { 0 } else { 4 })
}

fn complete_capped(n: usize, degree: usize) -> Result<Graph> {
    let block = degree + 1;
    let mut edges = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + block).min(n);
        for u in start..end {
            for v in (u + 1)..end {
                edges.push((u, v));
            }
        }
        start = end;
    }
    Graph::build(n, &edges, degree)
}

fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree == 0 {
        return Graph::build(n, &[], 0);
    }
    if !(n * degree).is_multiple_of(2) {
        return Err(Error::InfeasibleSpec(format!(
            "random_regular needs even n*d, got n={n} d={degree}"
        )));
    }
    if degree >= n {
        return Err(Error::InfeasibleSpec(format!(
            "random_regular needs d < n, got n={n} d={degree}"
        )));
    }
    for attempt in 0..CONFIG_MODEL_RETRIES {
        let mut stubs: Vec<Vertex> = Vec::with_capacity(n * degree);
        for v in 0..n {
            stubs.extend(std::iter::repeat_n(v, degree));
        }
        HashStream::new(seed, attempt as u64).shuffle(&mut stubs);
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::with_capacity(degree); n];
        let mut simple = true;
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                simple = false;
                break;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if simple {
            let edges: Vec<(Vertex, Vertex)> = adj
                .iter()
                .enumerate()
                .flat_map(|(u, list)| {
                    list.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
                })
                .collect();
            return Graph::build(n, &edges, degree);
        }
    }
    Err(Error::RetryBudgetExceeded {
        attempts: CONFIG_MODEL_RETRIES,
    })
}

fn random_bounded(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Graph::build(0, &[], degree);
    }
    let mut stream = HashStream::new(seed, 0x0b0d);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for _ in 0..n.saturating_mul(degree) {
        let u = stream.next_below(n as u64) as usize;
        let v = stream.next_below(n as u64) as usize;
        if u == v || adj[u].len() >= degree || adj[v].len() >= degree || adj[u].contains(&v) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u.min(v), u.max(v)));
    }
    Graph::build(n, &edges, degree)
}

fn tree_regular(n: usize, degree: usize) -> Result<Graph> {
    if degree == 0 && n > 1 {
        return Err(Error::InfeasibleSpec(
            "tree_regular needs d >= 1 for n > 1".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut next_child = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if next_child >= n {
            break;
        }
        let want = if v == 0 { degree } else { degree - 1 };
        for _ in 0..want {
            if next_child >= n {
                break;
            }
            edges.push((v, next_child));
            queue.push_back(next_child);
            next_child += 1;
        }
    }
    Graph::build(n, &edges, degree)
}

/// Seed for the i-th member of a deterministic family schedule.
pub fn schedule_seed(base: u64, index: usize) -> u64 {
    hash3(base, 0x5eed, index as u64)
}
