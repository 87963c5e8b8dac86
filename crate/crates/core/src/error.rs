use thiserror::Error;

use crate::weight::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidSpec(String),

    #[error("characters belong to different root data ({0} vs {1})")]
    DatumMismatch(String, String),

    #[error("weight has length {got}, expected rank {rank}")]
    RankMismatch { rank: usize, got: usize },

    #[error("Weyl orbit exceeds the cap of {cap} elements")]
    OrbitTooLarge { cap: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("character is not W-invariant (term {0})")]
    NotWInvariant(Weight),

    #[error("weight {weight} is not restricted for p={p}, r={r}")]
    NotRestricted { weight: Weight, p: u64, r: u32 },

    #[error("maximal dominant term {weight} lies outside X_{r} for p={p}")]
    TermNotRestricted { weight: Weight, p: u64, r: u32 },

    #[error("no exact quotient exists")]
    NotDivisible,

    #[error("weight {weight} is not {p}-minuscule")]
    NotPMinuscule { weight: Weight, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("simple character of {weight} at p={p} undetermined (tried: {tried})")]
    Undetermined { weight: Weight, p: u64, tried: String },

    #[error("tilting character of {0} could not be resolved")]
    ProviderUndetermined(Weight),

    #[error("negative coefficient {coefficient} at {nu}")]
    NegativeCoefficient { nu: Weight, coefficient: String },

    #[error("carrier {nu} is not ({p},{r})-minuscule")]
    CarrierNotPrMinuscule { nu: Weight, p: u64, r: u32 },

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),

    #[error("simple character table disagrees with computation at {weight}, p={p}")]
    TableMismatch { weight: Weight, p: u64 },

    #[error("malformed input: {0}")]
    Format(String),
}
