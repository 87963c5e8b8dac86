//! Exact formal-character computations for reductive groups in positive
//! characteristic: Weyl characters, simple characters, and the tilting
//! characters attached to Steinberg tensor products.

pub mod charring;
pub mod error;
pub mod minuscule;
pub mod rootsys;
pub mod scalar;
pub mod simplechar;
pub mod suites;
pub mod tilting;
pub mod weight;

pub use charring::FormalCharacter;
pub use error::{Error, Result};
pub use rootsys::{build_root_datum, Caps, RootDatum, RootSystemSpec, Series};
pub use scalar::Coefficient;
pub use weight::Weight;

/// Characters with machine-word multiplicities; enough for desk-scale work.
pub type Character = FormalCharacter<i64>;
pub type WideCharacter = FormalCharacter<i128>;
pub type BigCharacter = FormalCharacter<num_bigint::BigInt>;
