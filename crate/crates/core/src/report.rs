//! Machine-readable run reports.

use serde::{Deserialize, Serialize};

use crate::group_iso::IsoDecision;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub isomorphic: bool,
    pub algorithm: String,
    pub n: usize,
    pub p: Option<usize>,
    /// Split depth; for the series pipeline, the split index `t`.
    pub d: Option<usize>,
    /// `None` when unbounded or not applicable.
    pub delta: Option<usize>,
    pub a_count: usize,
    pub b_count: usize,
    pub chunk_pairs: usize,
    pub peak_fingerprints: usize,
    pub millis: u64,
    pub witness: Option<Vec<usize>>,
}

impl RunReport {
    pub fn new(decision: &IsoDecision, n: usize) -> Self {
        let s = &decision.stats;
        RunReport {
            schema: SCHEMA_VERSION,
            isomorphic: decision.isomorphic,
            algorithm: s.algorithm.as_str().to_string(),
            n,
            p: s.p,
            d: s.d,
            delta: s.delta.filter(|&d| d != usize::MAX),
            a_count: s.a_count,
            b_count: s.b_count,
            chunk_pairs: s.chunk_pairs,
            peak_fingerprints: s.peak_fingerprints,
            millis: u64::try_from(s.millis).unwrap_or(u64::MAX),
            witness: decision.witness.as_ref().map(|w| w.map.clone()),
        }
    }
}
