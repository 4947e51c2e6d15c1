use thiserror::Error;

use crate::rootsystem::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank {rank} is not valid for family {family}")]
    RankDomain { family: Family, rank: usize },

    #[error("weight has {found} entries but the type has rank {expected}")]
    Shape { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),

    #[error("{0}")]
    Inapplicable(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// An internal invariant failed, e.g. a Weyl product that does not reduce
    /// to an integer. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Stable short identifier used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RankDomain { .. } => "rank_domain",
            Error::Shape { .. } => "shape",
            Error::Domain(_) => "domain",
            Error::Inapplicable(_) => "inapplicable",
            Error::ResourceLimit(_) => "resource_limit",
            Error::Invariant(_) => "invariant",
            Error::Cache(_) => "cache",
        }
    }
}
