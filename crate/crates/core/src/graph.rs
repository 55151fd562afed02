//! Immutable bounded-degree simple graphs, rooted-ball extraction, and the
//! neighborhood growth check.

use crate::error::{Error, Result};

/// Vertex identifier. Ids are dense, `0..n`.
pub type Vertex = usize;

/// Immutable simple graph with an explicit degree bound.
///
/// Invariants (enforced at build time): no self-loops, no duplicate edges,
/// symmetric adjacency, every degree at most the declared bound, adjacency
/// lists sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    degree_bound: usize,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an undirected edge list, validating every invariant.
    pub fn build(n: usize, edges: &[(Vertex, Vertex)], degree_bound: usize) -> Result<Graph> {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
            if list.len() > degree_bound {
                return Err(Error::DegreeBoundExceeded {
                    vertex: v,
                    degree: list.len(),
                    bound: degree_bound,
                });
            }
        }
        Ok(Graph {
            adj,
            degree_bound,
            edge_count: edges.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// The declared degree bound (may exceed the actual maximum degree).
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Extracts the rooted ball of the given radius around `root`: the induced
    /// subgraph on all vertices at distance at most `radius`.
    ///
    /// Local ids are assigned in breadth-first order, ties within a distance
    /// layer broken by ascending global id, so extraction is deterministic.
    pub fn ball(&self, root: Vertex, radius: usize) -> Result<RootedBall> {
        let n = self.vertex_count();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        let mut dist_of: std::collections::HashMap<Vertex, u32> = std::collections::HashMap::new();
        dist_of.insert(root, 0);
        let mut order = vec![root];
        let mut frontier = vec![root];
        let mut depth = 0u32;
        while !frontier.is_empty() && (depth as usize) < radius {
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist_of.entry(w) {
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
        let local_of: std::collections::HashMap<Vertex, usize> = order
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let adj = order
            .iter()
            .map(|&g| {
                let mut nbrs: Vec<usize> = self
                    .neighbors(g)
                    .iter()
                    .filter_map(|w| local_of.get(w).copied())
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        let dist = order.iter().map(|&g| dist_of[&g]).collect();
        Ok(RootedBall {
            radius,
            root: 0,
            adj,
            dist,
            globals: order,
        })
    }

    /// `|B_k(seeds)|` against the `(d+1)^k * |seeds|` growth bound.
    ///
    /// The bound holds for every graph, seed set and radius; the check exists
    /// as an executable witness and returns the measured quantities.
    pub fn growth_check(&self, seeds: &[Vertex], k: usize) -> Result<GrowthCheck> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut frontier = Vec::new();
        for &s in seeds {
            if s >= n {
                return Err(Error::VertexOutOfRange { vertex: s, n });
            }
            if !seen[s] {
                seen[s] = true;
                frontier.push(s);
            }
        }
        let mut grown = frontier.len();
        for _ in 0..k {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            grown += next.len();
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let base = self.degree_bound as u128 + 1;
        let mut bound: u128 = seeds.len() as u128;
        for _ in 0..k {
            bound = bound.saturating_mul(base);
            if bound > u64::MAX as u128 {
                bound = u64::MAX as u128;
                break;
            }
        }
        Ok(GrowthCheck {
            grown,
            bound: bound as u64,
            ok: (grown as u128) <= bound,
        })
    }

    /// Distances from `root` out to `radius` (inclusive), as a map. Plain BFS.
    pub fn distances_up_to(
        &self,
        root: Vertex,
        radius: usize,
    ) -> std::collections::HashMap<Vertex, u32> {
        let mut dist = std::collections::HashMap::new();
        dist.insert(root, 0u32);
        let mut frontier = vec![root];
        let mut depth = 0u32;
        while !frontier.is_empty() && (depth as usize) < radius {
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(depth);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// Result of [`Graph::growth_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthCheck {
    /// `|B_k(seeds)|`.
    pub grown: usize,
    /// `(d+1)^k * |seeds|`, saturating.
    pub bound: u64,
    pub ok: bool,
}

/// A rooted ball: the induced subgraph on all vertices within `radius` of a
/// root, with deterministic local ids (breadth-first order, global-id
/// tie-break; the root is always local id 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    radius: usize,
    root: usize,
    adj: Vec<Vec<usize>>,
    dist: Vec<u32>,
    globals: Vec<Vertex>,
}

impl RootedBall {
    /// Builds a ball directly from local adjacency lists. Distances are
    /// recomputed from `root`; the ball must be connected and fit the radius.
    pub fn from_adjacency(radius: usize, root: usize, adj: Vec<Vec<usize>>) -> Result<RootedBall> {
        let n = adj.len();
        if root >= n {
            return Err(Error::InvalidBall("root out of range"));
        }
        for (v, list) in adj.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(Error::InvalidBall("neighbor out of range"));
                }
                if w == v {
                    return Err(Error::InvalidBall("self-loop"));
                }
                if !adj[w].contains(&v) {
                    return Err(Error::InvalidBall("asymmetric adjacency"));
                }
            }
        }
        let mut dist = vec![u32::MAX; n];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return Err(Error::InvalidBall("not connected"));
        }
        if dist.iter().any(|&d| d as usize > radius) {
            return Err(Error::InvalidBall("vertex beyond declared radius"));
        }
        let mut adj = adj;
        for list in &mut adj {
            list.sort_unstable();
        }
        let globals = (0..n).collect();
        Ok(RootedBall {
            radius,
            root,
            adj,
            dist,
            globals,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Local id of the root (0 for extracted balls).
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn dist(&self, local: usize) -> u32 {
        self.dist[local]
    }

    /// Global id behind a local id (identity for hand-built balls).
    pub fn global_id(&self, local: usize) -> Vertex {
        self.globals[local]
    }

    pub fn neighbors(&self, local: usize) -> &[usize] {
        &self.adj[local]
    }

    pub fn degree(&self, local: usize) -> usize {
        self.adj[local].len()
    }
}

/// Read-only adjacency abstraction shared by the full graph and extracted
/// local views, so the improver runs identically on both.
pub(crate) trait AdjacencyView: Sync {
    fn view_len(&self) -> usize;
    fn view_neighbors(&self, v: Vertex) -> &[Vertex];
    /// Id fed to the key hash; global vertex id regardless of representation.
    fn key_id(&self, v: Vertex) -> u64;
    /// Whether `v` may act as an improvement center (local views restrict
    /// this to the region where activation can be decided faithfully).
    fn center_eligible(&self, v: Vertex) -> bool;
}

impl AdjacencyView for Graph {
    fn view_len(&self) -> usize {
        self.vertex_count()
    }
    fn view_neighbors(&self, v: Vertex) -> &[Vertex] {
        self.neighbors(v)
    }
    fn key_id(&self, v: Vertex) -> u64 {
        v as u64
    }
    fn center_eligible(&self, _v: Vertex) -> bool {
        true
    }
}
