//! Browser demo bindings: three interactive views over the core toolkit.
//!
//! Every function takes plain parameters, runs the corresponding library
//! operation, and returns a JSON string for the page to render (an object
//! with an `error` field on failure). All heavy lifting lives in the core
//! crate; this is a thin adapter, equally callable from native tests.

use serde_json::json;
use wasm_bindgen::prelude::*;

use matchprobe::hashing::hash3;
use matchprobe::{
    maximum_matching, run_convergence_experiment, run_improver, verify_bracket,
    find_augmenting_path, FamilySpec, Graph, ImproverConfig, Oracle, OracleConfig,
};

const DRAW_CAP: usize = 5_000;

fn err(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// Deterministic 2D layout in the unit square, chosen per family.
fn layout(spec: &FamilySpec, g: &Graph) -> Vec<(f64, f64)> {
    let n = g.vertex_count();
    match *spec {
        FamilySpec::Grid2d { side, .. } => (0..n)
            .map(|v| {
                let (r, c) = (v / side, v % side);
                let step = 1.0 / (side.max(2) - 1) as f64;
                (0.05 + 0.9 * c as f64 * step, 0.05 + 0.9 * r as f64 * step)
            })
            .collect(),
        FamilySpec::Path { .. } => (0..n)
            .map(|v| {
                let t = v as f64 / (n.max(2) - 1) as f64;
                let wave = (t * 12.0 * std::f64::consts::PI).sin();
                (0.05 + 0.9 * t, 0.5 + 0.35 * wave)
            })
            .collect(),
        FamilySpec::TreeRegular { .. } => {
            // Rows by BFS depth.
            let dist = g.distances_up_to(0, n);
            let depth_of = |v: usize| *dist.get(&v).unwrap_or(&0) as usize;
            let max_depth = (0..n).map(depth_of).max().unwrap_or(0);
            let mut row_width = vec![0usize; max_depth + 1];
            for v in 0..n {
                row_width[depth_of(v)] += 1;
            }
            let mut row_seen = vec![0usize; max_depth + 1];
            (0..n)
                .map(|v| {
                    let d = depth_of(v);
                    let i = row_seen[d];
                    row_seen[d] += 1;
                    let x = (i as f64 + 0.5) / row_width[d] as f64;
                    let y = if max_depth == 0 {
                        0.5
                    } else {
                        0.08 + 0.84 * d as f64 / max_depth as f64
                    };
                    (0.05 + 0.9 * x, y)
                })
                .collect()
        }
        _ => (0..n)
            .map(|v| {
                let angle = 2.0 * std::f64::consts::PI * v as f64 / n.max(1) as f64;
                (0.5 + 0.45 * angle.cos(), 0.5 + 0.45 * angle.sin())
            })
            .collect(),
    }
}

/// Runs the phased improver on a family graph and reports everything the
/// graph view needs: layout, edges, the matching, per-vertex status, the
/// certified bracket, and (for small graphs) the exact ratio.
#[wasm_bindgen]
pub fn improve_view(family: &str, path_cap: u32, phases: u32, seed: u32) -> String {
    let spec = match FamilySpec::parse(family) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let g = match spec.generate() {
        Ok(g) => g,
        Err(e) => return err(e),
    };
    if g.vertex_count() > DRAW_CAP {
        return err(format!(
            "graph has {} vertices; the drawing view caps at {DRAW_CAP}",
            g.vertex_count()
        ));
    }
    let cfg = match ImproverConfig::new(path_cap as usize, phases as usize, seed as u64) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let m = run_improver(&g, &cfg);
    let bracket = verify_bracket(&g, &m, cfg.path_cap);
    let bad: Vec<bool> = (0..g.vertex_count())
        .map(|v| !m.is_matched(v) && find_augmenting_path(&g, &m, v, cfg.path_cap).is_some())
        .collect();
    let exact = maximum_matching(&g);
    let positions: Vec<[f64; 2]> = layout(&spec, &g).into_iter().map(|(x, y)| [x, y]).collect();
    json!({
        "family": spec.to_string(),
        "n": g.vertex_count(),
        "positions": positions,
        "edges": g.edges().collect::<Vec<_>>(),
        "matching": m.edges().collect::<Vec<_>>(),
        "matched": (0..g.vertex_count()).map(|v| m.is_matched(v)).collect::<Vec<_>>(),
        "bad": bad,
        "s": bracket.matched_ratio(),
        "q": bracket.bad_fraction(),
        "lower": bracket.lower(),
        "upper": bracket.upper(),
        "exact_ratio": exact.edge_count() as f64 / g.vertex_count().max(1) as f64,
        "exact_edges": exact.edge_count(),
        "matched_edges": m.edge_count(),
    })
    .to_string()
}

/// Runs the sampling estimator and reports the bracket, sample counts, and
/// probe statistics; includes the exact ratio when the graph is small enough
/// to solve outright.
#[wasm_bindgen]
pub fn estimate_view(
    family: &str,
    path_cap: u32,
    phases: u32,
    seed: u32,
    epsilon: f64,
    delta: f64,
    sample_seed: u32,
) -> String {
    let spec = match FamilySpec::parse(family) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let g = match spec.generate() {
        Ok(g) => g,
        Err(e) => return err(e),
    };
    let improver = match ImproverConfig::new(path_cap as usize, phases as usize, seed as u64) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let cfg = OracleConfig::new(improver);
    let oracle = Oracle::new(&g, cfg);
    let report = match oracle.estimate_matching_ratio(epsilon, delta, sample_seed as u64) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let exact_ratio = if g.vertex_count() <= 50_000 {
        let exact = maximum_matching(&g);
        Some(exact.edge_count() as f64 / g.vertex_count().max(1) as f64)
    } else {
        None
    };
    json!({
        "family": spec.to_string(),
        "n": g.vertex_count(),
        "report": report,
        "probes_per_query": report.probes_per_query(),
        "dependency_radius": cfg.dependency_radius(),
        "exact_ratio": exact_ratio,
    })
    .to_string()
}

/// Runs the convergence experiment over comma-separated sizes and returns
/// the trace rows for plotting. Flat scalars keep the JS call site simple.
#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn converge_view(
    family: &str,
    sizes_csv: &str,
    radius: u32,
    path_cap: u32,
    phases: u32,
    seed: u32,
    use_exact: bool,
    epsilon: f64,
    delta: f64,
) -> String {
    let spec = match FamilySpec::parse(family) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let sizes: Result<Vec<usize>, _> = sizes_csv
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect();
    let sizes = match sizes {
        Ok(s) if !s.is_empty() => s,
        Ok(_) => return err("no sizes given"),
        Err(e) => return err(format!("bad sizes: {e}")),
    };
    let improver = match ImproverConfig::new(path_cap as usize, phases as usize, seed as u64) {
        Ok(c) => c,
        Err(e) => return err(e),
    };
    let cfg = OracleConfig::new(improver);
    match run_convergence_experiment(&spec, &sizes, radius as usize, &cfg, use_exact, epsilon, delta)
    {
        Ok(trace) => json!({ "entries": trace.entries }).to_string(),
        Err(e) => err(e),
    }
}

/// Fresh seeds for the page's "reroll" buttons, derived from the pinned hash.
#[wasm_bindgen]
pub fn reroll_seed(current: u32, nonce: u32) -> u32 {
    hash3(current as u64, 0xDE40, nonce as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn improve_view_reports_consistent_bracket() {
        let out = improve_view("cycle:n=30", 2, 3, 7);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none(), "{out}");
        assert_eq!(v["n"], 30);
        assert_eq!(v["positions"].as_array().unwrap().len(), 30);
        let lower = v["lower"].as_f64().unwrap();
        let upper = v["upper"].as_f64().unwrap();
        let exact = v["exact_ratio"].as_f64().unwrap();
        assert!(lower <= exact && exact <= upper);
    }

    #[test]
    fn estimate_view_brackets_the_truth() {
        let out = estimate_view("random_regular:n=400,d=3,seed=3", 2, 3, 5, 0.1, 0.1, 42);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none(), "{out}");
        let lower = v["report"]["lower"].as_f64().unwrap();
        let upper = v["report"]["upper"].as_f64().unwrap();
        let exact = v["exact_ratio"].as_f64().unwrap();
        assert!(lower <= exact && exact <= upper);
    }

    #[test]
    fn converge_view_emits_rows() {
        let out = converge_view("cycle:n=10", "50,100,200", 2, 2, 2, 1, true, 0.1, 0.1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[2]["m_exact"], 0.5);
    }

    #[test]
    fn errors_are_json() {
        let out = improve_view("bogus:n=1", 2, 2, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].as_str().unwrap().contains("bogus"));
        let out = improve_view("cycle:n=2", 2, 2, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_some());
    }
}
