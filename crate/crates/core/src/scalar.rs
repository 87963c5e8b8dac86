//! Coefficient types for formal characters.
//!
//! Every character computation is exact. The ring operations are generic
//! over any signed integer type implementing [`Coefficient`]; `i64`, `i128`
//! and [`num_bigint::BigInt`] are provided.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer usable as a multiplicity.
pub trait Coefficient:
    Signed + Clone + Ord + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Lifts a machine integer. Panics only if the type cannot hold it,
    /// which none of the provided types do for `i64` input.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient type cannot represent i64")
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }
}

impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}
