//! Canonical codes for rooted balls.
//!
//! Two balls get equal codes exactly when they are isomorphic as rooted
//! graphs. The algorithm is iterative refinement of a (distance-from-root,
//! degree) coloring, followed by individualization branch-and-bound over the
//! remaining symmetric cells. Automorphisms discovered at equal-code leaves
//! prune branches that are equivalent under the stabilizer of the current
//! individualization path, which keeps highly symmetric balls (regular trees,
//! torus neighborhoods) tractable.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::RootedBall;
use crate::hashing::mix64;

/// Default vertex cap for canonicalization.
pub const DEFAULT_CANON_CAP: usize = 10_000;

/// Canonical serialization of a rooted ball's isomorphism class.
///
/// Layout: `n: u32`, `radius: u32`, distances (`u16` each, canonical order),
/// `m: u32`, then `m` edges as `(u16, u16)` pairs in lexicographic order.
/// All integers little-endian.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// 64-bit digest of the code, for compact display and trace records.
    pub fn digest(&self) -> u64 {
        let mut h = mix64(0x6265_6e6a_616d_696e ^ self.bytes.len() as u64);
        for chunk in self.bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            h = mix64(h ^ u64::from_le_bytes(word));
        }
        h
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:016x}", self.digest())
    }
}

impl serde::Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:016x}", self.digest()))
    }
}

impl RootedBall {
    /// Canonical code with the default vertex cap.
    pub fn canonical_code(&self) -> Result<CanonicalCode> {
        self.canonical_code_with_cap(DEFAULT_CANON_CAP)
    }

    /// Canonical code, erroring with `BallTooLarge` beyond `cap` vertices.
    pub fn canonical_code_with_cap(&self, cap: usize) -> Result<CanonicalCode> {
        let n = self.vertex_count();
        let cap = cap.min(u16::MAX as usize);
        if n > cap {
            return Err(Error::BallTooLarge { size: n, cap });
        }
        let mut search = CanonSearch::new(self);
        let initial = search.initial_coloring();
        let mut path = Vec::new();
        search.recurse(initial, &mut path);
        let (best, _) = search.best.expect("canonical search always reaches a leaf");
        Ok(CanonicalCode { bytes: best })
    }
}

struct CanonSearch<'b> {
    ball: &'b RootedBall,
    /// Best (smallest) serialized leaf and the vertex order that produced it.
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Automorphism generators discovered at equal-code leaves.
    autos: Vec<Vec<usize>>,
}

impl<'b> CanonSearch<'b> {
    fn new(ball: &'b RootedBall) -> Self {
        CanonSearch {
            ball,
            best: None,
            autos: Vec::new(),
        }
    }

    /// Colors by rank of the (distance, degree) pair, then refines.
    fn initial_coloring(&self) -> Vec<u32> {
        let n = self.ball.vertex_count();
        let mut pairs: Vec<(u32, usize)> = (0..n)
            .map(|v| (self.ball.dist(v), self.ball.degree(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let rank: HashMap<(u32, usize), u32> = pairs
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i as u32))
            .collect();
        let colors = (0..n)
            .map(|v| rank[&(self.ball.dist(v), self.ball.degree(v))])
            .collect();
        self.refine(colors)
    }

    /// Canonical color refinement: repeatedly re-colors by (old color, sorted
    /// neighbor colors) signatures until the partition stops splitting. New
    /// color ids are ranks of sorted signatures, so they are invariant under
    /// isomorphism.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.ball.vertex_count();
        loop {
            let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
            for v in 0..n {
                let mut around: Vec<u32> = self
                    .ball
                    .neighbors(v)
                    .iter()
                    .map(|&w| colors[w])
                    .collect();
                around.sort_unstable();
                sigs.push((colors[v], around));
            }
            let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            let rank: HashMap<&(u32, Vec<u32>), u32> = distinct
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i as u32))
                .collect();
            let next: Vec<u32> = sigs.iter().map(|s| rank[s]).collect();
            let old_classes = class_count(&colors);
            let new_classes = class_count(&next);
            colors = next;
            if new_classes == old_classes {
                return colors;
            }
        }
    }

    fn recurse(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        // First non-singleton color class, in color order.
        let mut target: Option<(u32, Vec<usize>)> = None;
        let mut cells: HashMap<u32, Vec<usize>> = HashMap::new();
        for (v, &color) in colors.iter().enumerate() {
            cells.entry(color).or_default().push(v);
        }
        for (&c, members) in &cells {
            if members.len() > 1 && target.as_ref().is_none_or(|(tc, _)| c < *tc) {
                target = Some((c, members.clone()));
            }
        }
        let Some((target_color, mut members)) = target else {
            self.leaf(&colors);
            return;
        };
        members.sort_unstable();
        let mut branched: Vec<usize> = Vec::new();
        for &x in &members {
            // Prune x if an automorphism fixing every vertex individualized so
            // far maps an already-explored candidate to x.
            if !branched.is_empty() {
                let mut orbits = self.stabilizer_orbits(path);
                if branched.iter().any(|&y| orbits.same_root(x, y)) {
                    continue;
                }
            }
            branched.push(x);
            let mut split = colors.clone();
            for (v, color) in split.iter_mut().enumerate() {
                if *color > target_color || (*color == target_color && v != x) {
                    *color += 1;
                }
            }
            path.push(x);
            let refined = self.refine(split);
            self.recurse(refined, path);
            path.pop();
        }
    }

    /// Orbits of the subgroup generated by the discovered automorphisms that
    /// fix every vertex in `path` pointwise. A subgroup of the path
    /// stabilizer, so pruning with it is sound.
    fn stabilizer_orbits(&self, path: &[usize]) -> Orbits {
        let mut orbits = Orbits::new(self.ball.vertex_count());
        for sigma in &self.autos {
            if path.iter().all(|&v| sigma[v] == v) {
                for (v, &image) in sigma.iter().enumerate() {
                    orbits.union(v, image);
                }
            }
        }
        orbits
    }

    /// Discrete coloring reached: serialize under the induced order, keep the
    /// minimum, and record an automorphism when a leaf ties the minimum.
    fn leaf(&mut self, colors: &[u32]) {
        let n = self.ball.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&v| colors[v]);
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let bytes = self.serialize(&order, &pos);
        match &self.best {
            None => self.best = Some((bytes, order)),
            Some((best_bytes, best_order)) => {
                if bytes < *best_bytes {
                    self.best = Some((bytes, order));
                } else if bytes == *best_bytes {
                    // Both orders realize the same code, so position i of each
                    // holds corresponding vertices: that correspondence is an
                    // automorphism.
                    let mut sigma = vec![0usize; n];
                    for i in 0..n {
                        sigma[best_order[i]] = order[i];
                    }
                    if sigma.iter().enumerate().any(|(v, &w)| v != w) {
                        self.autos.push(sigma);
                    }
                }
            }
        }
    }

    fn serialize(&self, order: &[usize], pos: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut edges: Vec<(u16, u16)> = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            for &w in self.ball.neighbors(v) {
                let j = pos[w];
                if i < j {
                    edges.push((i as u16, j as u16));
                }
            }
        }
        edges.sort_unstable();
        let mut bytes = Vec::with_capacity(8 + 2 * n + 4 + 4 * edges.len());
        bytes.extend_from_slice(&(n as u32).to_le_bytes());
        bytes.extend_from_slice(&(self.ball.radius() as u32).to_le_bytes());
        for &v in order {
            bytes.extend_from_slice(&(self.ball.dist(v) as u16).to_le_bytes());
        }
        bytes.extend_from_slice(&(edges.len() as u32).to_le_bytes());
        for (a, b) in edges {
            bytes.extend_from_slice(&a.to_le_bytes());
            bytes.extend_from_slice(&b.to_le_bytes());
        }
        bytes
    }
}

fn class_count(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn same_root(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::graph::Graph;
    use crate::hashing::HashStream;

    fn path3_rooted(root: usize) -> RootedBall {
        RootedBall::from_adjacency(2, root, vec![vec![1], vec![0, 2], vec![1]]).unwrap()
    }

    #[test]
    fn isomorphic_by_construction_codes_match() {
        // Same P3 shape on different global ids via extraction.
        let g = Graph::build(6, &[(0, 1), (1, 2), (3, 4), (4, 5)], 2).unwrap();
        let a = g.ball(1, 1).unwrap().canonical_code().unwrap();
        let b = g.ball(4, 1).unwrap().canonical_code().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn root_placement_separates() {
        let center = path3_rooted(1).canonical_code().unwrap();
        let end = path3_rooted(0).canonical_code().unwrap();
        assert_ne!(center, end);
        // Both ends are the same class.
        let other_end = path3_rooted(2).canonical_code().unwrap();
        assert_eq!(end, other_end);
    }

    #[test]
    fn cap_is_enforced() {
        let g = FamilySpec::parse("cycle:n=12").unwrap().generate().unwrap();
        let b = g.ball(0, 3).unwrap();
        assert!(matches!(
            b.canonical_code_with_cap(5),
            Err(Error::BallTooLarge { size: 7, cap: 5 })
        ));
    }

    /// Relabeling harness: permute the non-root vertices of a ball and check
    /// the code is unchanged.
    fn permuted_copy(ball: &RootedBall, stream: &mut HashStream) -> RootedBall {
        let n = ball.vertex_count();
        let mut map: Vec<usize> = (0..n).collect();
        // Keep the root fixed, shuffle the rest.
        let mut rest: Vec<usize> = (0..n).filter(|&v| v != ball.root()).collect();
        stream.shuffle(&mut rest);
        let mut it = rest.into_iter();
        for (v, slot) in map.iter_mut().enumerate() {
            if v != ball.root() {
                *slot = it.next().unwrap();
            }
        }
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            for &w in ball.neighbors(v) {
                adj[map[v]].push(map[w]);
            }
        }
        RootedBall::from_adjacency(ball.radius(), map[ball.root()], adj).unwrap()
    }

    #[test]
    fn code_invariant_under_relabeling() {
        let mut stream = HashStream::new(0xC0DE, 0);
        for seed in 0..30u64 {
            let spec = format!("random_bounded:n=30,d=4,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            let root = (seed as usize * 7) % 30;
            let ball = g.ball(root, 2).unwrap();
            let code = ball.canonical_code().unwrap();
            for _ in 0..3 {
                let permuted = permuted_copy(&ball, &mut stream);
                assert_eq!(permuted.canonical_code().unwrap(), code);
            }
        }
    }

    /// Exhaustive rooted-isomorphism oracle for tiny balls.
    fn brute_force_iso(a: &RootedBall, b: &RootedBall) -> bool {
        let n = a.vertex_count();
        if n != b.vertex_count() || a.radius() != b.radius() {
            return false;
        }
        fn try_all(a: &RootedBall, b: &RootedBall, perm: &mut Vec<usize>, k: usize) -> bool {
            let n = perm.len();
            if k == n {
                if perm[a.root()] != b.root() {
                    return false;
                }
                for v in 0..n {
                    let mut mapped: Vec<usize> =
                        a.neighbors(v).iter().map(|&w| perm[w]).collect();
                    mapped.sort_unstable();
                    if mapped != b.neighbors(perm[v]) {
                        return false;
                    }
                }
                return true;
            }
            for i in k..n {
                perm.swap(k, i);
                if try_all(a, b, perm, k + 1) {
                    perm.swap(k, i);
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        let mut perm: Vec<usize> = (0..n).collect();
        try_all(a, b, &mut perm, 0)
    }

    #[test]
    fn code_equality_matches_brute_force_iso() {
        // Code equality must coincide with rooted isomorphism decided by
        // exhaustive search over tiny balls.
        let mut balls = Vec::new();
        for seed in 0..12u64 {
            let spec = format!("random_bounded:n=7,d=3,seed={seed}");
            let g = FamilySpec::parse(&spec).unwrap().generate().unwrap();
            for root in [0usize, 3] {
                balls.push(g.ball(root, 2).unwrap());
            }
        }
        let codes: Vec<_> = balls.iter().map(|b| b.canonical_code().unwrap()).collect();
        let mut nontrivial = 0;
        for i in 0..balls.len() {
            for j in (i + 1)..balls.len() {
                let same_code = codes[i] == codes[j];
                let iso = brute_force_iso(&balls[i], &balls[j]);
                assert_eq!(same_code, iso, "code/isomorphism disagreement");
                if iso {
                    nontrivial += 1;
                }
            }
        }
        assert!(nontrivial > 0, "suite never produced isomorphic pairs");
    }

    #[test]
    fn symmetric_tree_ball_is_tractable() {
        // Regular-tree balls have huge automorphism groups; stabilizer-orbit
        // pruning must keep the search fast.
        let g = FamilySpec::parse("tree_regular:n=400,d=3")
            .unwrap()
            .generate()
            .unwrap();
        let b = g.ball(0, 4).unwrap();
        assert!(b.vertex_count() > 20);
        let code = b.canonical_code().unwrap();
        assert_eq!(code, b.canonical_code().unwrap());
    }

    #[test]
    fn distance_profile_separation() {
        let g1 = FamilySpec::parse("path:n=9").unwrap().generate().unwrap();
        let g2 = FamilySpec::parse("cycle:n=9").unwrap().generate().unwrap();
        let b1 = g1.ball(4, 2).unwrap(); // interior of a path: path of 5
        let b2 = g2.ball(0, 2).unwrap(); // cycle segment: same rooted shape
        assert_eq!(b1.canonical_code().unwrap(), b2.canonical_code().unwrap());
        let b3 = g1.ball(0, 2).unwrap(); // endpoint-rooted: different profile
        assert_ne!(b1.canonical_code().unwrap(), b3.canonical_code().unwrap());
    }
}
