//! Bounded-degree graph toolkit built around local matching improvement.
//!
//! The pieces fit together like this:
//!
//! - [`graph`]: immutable bounded-degree graphs, rooted-ball extraction, and
//!   the `(d+1)^k` neighborhood growth check.
//! - [`canon`]: canonical codes deciding rooted-ball isomorphism.
//! - [`matching`] / [`exact`]: matchings, the exact blossom solver used as
//!   ground truth, and an exhaustive validator for small instances.
//! - [`paths`] / [`improver`]: short augmenting-path search, the phased
//!   random-key improvement process, and the certified bracket that encloses
//!   the true maximum-matching ratio without assuming convergence.
//! - [`oracle`]: per-vertex matched-status queries answered from a bounded
//!   ball by replaying the improver locally, plus the sampling estimator with
//!   Hoeffding-sized confidence brackets.
//! - [`stats`]: rooted-ball type distributions, total-variation distances,
//!   and the convergence experiment driver.
//! - [`families`] / [`io`]: deterministic graph generators and the edge-list
//!   file format.
//!
//! Everything randomized is driven by the pinned mixing function in
//! [`hashing`], so identical inputs give identical outputs on every platform
//! and thread count.

pub mod canon;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod hashing;
pub mod improver;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod paths;
pub mod stats;

pub use canon::{CanonicalCode, DEFAULT_CANON_CAP};
pub use error::{Error, Result};
pub use exact::{brute_force_matching, maximum_matching, BRUTE_FORCE_CAP};
pub use families::FamilySpec;
pub use graph::{Graph, GrowthCheck, RootedBall, Vertex};
pub use improver::{
    run_improver, run_improver_trace, verify_bracket, BracketReport, ImproverConfig,
};
pub use matching::{matching_ratio, Matching, Ratio};
pub use oracle::{
    estimate_matching_ratio, hoeffding_samples, query_matched, query_short_path_endpoint,
    EstimateReport, Oracle, OracleConfig,
};
pub use paths::{augment, find_augmenting_path, AugmentingPath};
pub use stats::{
    ball_distribution, run_convergence_experiment, tv_distance, BallDistribution,
    ConvergenceTrace, TraceEntry,
};
