//! Exact highest-weight dimensions for the simple Lie types, prime-degree
//! censuses of irreducible modules, and screening of the quasisimple
//! Lie-type groups that can act irreducibly in prime degree.

pub mod bounds;
pub mod cache;
pub mod candidates;
pub mod cli;
pub mod census;
pub mod error;
pub mod rootsystem;
pub mod sieve;
pub mod weyldim;

pub use bounds::{
    alternating_cap, candidate_count_caps, p_bound, rep_count_cap, weyl_cap, BoundExpr, CandidateCaps, CapScope, WeylCap,
};
pub use cache::WeightCache;
pub use candidates::{
    allowed_types, candidate_weights, enumerate_candidates, field_exponents, AllowedType, CandidateFlag,
    CandidateOptions, CandidateRecord, CandidateRun, FiniteGroupDescriptor,
};
pub use census::{enumerate_weights, prime_degree_census, rank_cap, verify_kac, CensusEntry, KacReport};
pub use error::{Error, Result};
pub use rootsystem::{build_root_system, positive_root_count, root_system, Family, LieType, RootSystemData};
pub use sieve::{is_prime, primes_below};
pub use weyldim::{bn1_bound, dual_weight, is_self_dual, weyl_dim, DimValue, Weight};
