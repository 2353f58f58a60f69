//! Isomorphism testing for finite groups and rings given by their tables.
//!
//! The main entry points are [`is_isomorphic_groups`], [`is_isomorphic_rings`]
//! and, for p-groups, [`p_group_iso_via_series`]. All three search over a
//! choice tree from both ends and look for a collision between canonical
//! fingerprints (or series) computed on each side; [`ChunkPlan`] bounds how
//! many fingerprints are held at once.

pub mod algebra;
pub mod collision;
pub mod corpus;
pub mod elements;
pub mod generators;
pub mod group_iso;
pub mod report;
pub mod ring;
pub mod series;
pub mod tablefile;

pub use algebra::{smallest_prime_divisor, AlgebraError, CayleyTable, QuotientResult};
pub use collision::{detect_common, tradeoff_stats, ChoiceTree, ChunkPlan, Fingerprint, TradeoffStats};
pub use corpus::{make_group, make_ring, CorpusError, GroupSpec, RingSpec};
pub use elements::ElementSet;
pub use generators::GeneratorSequence;
pub use group_iso::{
    canonical_fingerprint, generator_enumeration, induced_isomorphism, is_isomorphic_groups, Algorithm,
    IsoDecision, IsoError, IsoWitness, SearchStats, Shortcut,
};
pub use report::RunReport;
pub use ring::{is_isomorphic_rings, RingError, RingTable};
pub use series::{compute_t, p_group_iso_via_series, CompositionSeriesRec, SeriesError, TParams};
pub use tablefile::{parse_table_file, TableFile, TableFileError};
