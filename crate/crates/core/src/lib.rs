//! Exact point counts on hypersurfaces in weighted projective spaces over
//! finite fields, with exhaustive auditors for the partition, preimage,
//! pullback, and bound statements they support.

pub mod counting;
pub mod experiments;
pub mod gf;
pub mod search;
pub mod wpoly;
pub mod wps;

pub use counting::{
    audit_antecedent, audit_identities, audit_les_zi, audit_mondo, bounds, count_zeros,
    count_zeros_on, is_safe, partition_counts, partition_counts_space, preimage_count, unscrew,
    unscrew_with_budget, AuditReport, BoundSet, CountError, OverlapRecord, PartitionCounts,
    PartitionMode, Verdict, DEFAULT_UNSCREW_BUDGET,
};
pub use experiments::{run_suite, SuiteReport, SuiteRow, SUITES};
pub use gf::{Field, FieldError, SubgroupData, MAX_FIELD_SIZE};
pub use search::{
    cache_append, cache_lookup, eq_exhaustive, eq_exhaustive_with_budget, eq_random,
    verify_result, CandidateStream, SearchError, SearchMode, SearchResult, DEFAULT_SEARCH_BUDGET,
    WITNESS_CAP,
};
pub use wpoly::{
    is_homogeneous, monomial_basis, parse_poly, product_of_forms, pullback, saturating_poly,
    twist, HomogeneityCheck, Monomial, PolyError, WeightedPolynomial,
};
pub use wps::{
    canonicalize, enumerate_points, enumerate_points_with_budget, pn, representatives,
    CanonicalPoint, WeightSystem, WpsError, DEFAULT_ENUM_BUDGET,
};
