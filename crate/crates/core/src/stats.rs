//! Neighborhood statistics: empirical distributions over rooted-ball
//! isomorphism types, total-variation distances, and the convergence
//! experiment driver.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalCode;
use crate::error::{Error, Result};
use crate::exact::maximum_matching;
use crate::families::{schedule_seed, FamilySpec};
use crate::graph::Graph;
use crate::hashing::{hash3, mix64};
use crate::matching::matching_ratio;
use crate::oracle::{Oracle, OracleConfig};

/// Empirical distribution of rooted-ball types at one radius. Counts are kept
/// raw so weights are exact rationals with denominator `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallDistribution {
    radius: usize,
    total: u64,
    counts: BTreeMap<CanonicalCode, u64>,
}

impl BallDistribution {
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of sampled roots (the vertex count for exact counting).
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn type_count(&self) -> usize {
        self.counts.len()
    }

    /// Raw `(type, count)` pairs in canonical code order.
    pub fn counts(&self) -> impl Iterator<Item = (&CanonicalCode, u64)> {
        self.counts.iter().map(|(c, &k)| (c, k))
    }

    pub fn weight(&self, code: &CanonicalCode) -> f64 {
        *self.counts.get(code).unwrap_or(&0) as f64 / self.total as f64
    }

    /// 64-bit digest of the distribution: the sorted (type, weight) pairs
    /// with weights as reduced rationals, so equal distributions digest
    /// equally regardless of the underlying vertex count.
    pub fn digest(&self) -> u64 {
        let mut h = mix64(0xd157 ^ self.radius as u64);
        for (code, count) in &self.counts {
            let weight = crate::matching::Ratio::new(*count, self.total);
            h = mix64(h ^ code.digest());
            h = mix64(h ^ weight.numer);
            h = mix64(h ^ weight.denom);
        }
        h
    }
}

/// Exact empirical distribution of ball types around every vertex of `g`.
pub fn ball_distribution(g: &Graph, radius: usize) -> Result<BallDistribution> {
    let n = g.vertex_count();
    let codes: Vec<CanonicalCode> = (0..n)
        .into_par_iter()
        .map(|v| g.ball(v, radius)?.canonical_code())
        .collect::<Result<Vec<_>>>()?;
    let mut counts: BTreeMap<CanonicalCode, u64> = BTreeMap::new();
    for code in codes {
        *counts.entry(code).or_insert(0) += 1;
    }
    Ok(BallDistribution {
        radius,
        total: n as u64,
        counts,
    })
}

/// Total-variation distance between two distributions of equal radius:
/// half the sum of absolute weight differences over the union of supports.
/// Computed in exact integer arithmetic before the final division.
pub fn tv_distance(a: &BallDistribution, b: &BallDistribution) -> Result<f64> {
    if a.radius != b.radius {
        return Err(Error::RadiusMismatch(a.radius, b.radius));
    }
    if a.total == 0 || b.total == 0 {
        return Err(Error::InvalidParameter(
            "tv distance of an empty distribution".into(),
        ));
    }
    let mut numer: u128 = 0;
    let keys = a.counts.keys().chain(b.counts.keys());
    let mut last: Option<&CanonicalCode> = None;
    let mut sorted: Vec<&CanonicalCode> = keys.collect();
    sorted.sort_unstable();
    for code in sorted {
        if last == Some(code) {
            continue;
        }
        last = Some(code);
        let ca = *a.counts.get(code).unwrap_or(&0) as u128;
        let cb = *b.counts.get(code).unwrap_or(&0) as u128;
        let lhs = ca * b.total as u128;
        let rhs = cb * a.total as u128;
        numer += lhs.abs_diff(rhs);
    }
    Ok(numer as f64 / (2.0 * a.total as f64 * b.total as f64))
}

/// One row of a convergence experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub family: String,
    pub n: u64,
    pub r: u64,
    /// Digest of the ball-type distribution at radius `r`.
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tv_to_prev: Option<f64>,
    pub m_lower: f64,
    pub m_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_exact: Option<f64>,
}

/// Recorded sequence of a convergence experiment, ordered by size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub entries: Vec<TraceEntry>,
}

impl ConvergenceTrace {
    /// One JSON document per line, trailing newline included.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            out.push_str(&serde_json::to_string(entry).expect("trace serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<ConvergenceTrace> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            entries.push(serde_json::from_str(line).map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?);
        }
        Ok(ConvergenceTrace { entries })
    }
}

/// Runs the convergence experiment: for each size, build the family member,
/// record its ball-type distribution digest, the distance to the previous
/// member, and the matching ratio — exact when `use_exact`, otherwise the
/// estimator bracket with the given accuracy.
pub fn run_convergence_experiment(
    model: &FamilySpec,
    sizes: &[usize],
    radius: usize,
    cfg: &OracleConfig,
    use_exact: bool,
    epsilon: f64,
    delta: f64,
) -> Result<ConvergenceTrace> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    let mut entries: Vec<TraceEntry> = Vec::with_capacity(sizes.len());
    let mut prev: Option<BallDistribution> = None;
    for (index, &size) in sizes.iter().enumerate() {
        let spec = model.with_size(size).reseeded(schedule_seed(
            match *model {
                FamilySpec::RandomRegular { seed, .. } | FamilySpec::RandomBounded { seed, .. } => {
                    seed
                }
                _ => 0,
            },
            index,
        ));
        let g = spec.generate()?;
        let dist = ball_distribution(&g, radius)?;
        let tv_to_prev = match &prev {
            Some(p) => Some(tv_distance(p, &dist)?),
            None => None,
        };
        let (m_lower, m_upper, m_exact) = if use_exact {
            let ratio = matching_ratio(&g, &maximum_matching(&g)).value();
            (ratio, ratio, Some(ratio))
        } else {
            let oracle = Oracle::new(&g, *cfg);
            let sample_seed = hash3(cfg.improver.seed, 0x7a11, index as u64);
            let report = oracle.estimate_matching_ratio(epsilon, delta, sample_seed)?;
            (report.lower, report.upper, None)
        };
        entries.push(TraceEntry {
            family: spec.family_name().to_string(),
            n: g.vertex_count() as u64,
            r: radius as u64,
            digest: format!("{:016x}", dist.digest()),
            tv_to_prev,
            m_lower,
            m_upper,
            m_exact,
        });
        prev = Some(dist);
    }
    Ok(ConvergenceTrace { entries })
}
