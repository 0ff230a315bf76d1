//! Symplectic lattices with a group action: induced polarization types,
//! exponents, norm endomorphisms, and the isotypical decomposition.
//!
//! Coordinates are ordered `(a_1..a_g, b_1..b_g)` with the alternating form
//! `J = [[0, I], [-I, 0]]`. Matrices act on column vectors and compose as
//! `M_(gh) = M_g * M_h`.

mod action;
mod decomposition;
mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

pub use action::{block_signed_permutation, SymplecticGAction};
pub use decomposition::{isotypical_decomposition, Decomposition, IsotypicalComponent};
pub use lattice::{
    image_sublattice, norm_endomorphism, polarization_type, relative_exponent, restricted_gram,
    sum_index, Sublattice,
};

use crate::error::{Error, Result};

/// Polarization type `(d_1, ..., d_n)` with `d_1 | d_2 | ... | d_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolarizationType {
    divisors: Vec<BigInt>,
}

impl PolarizationType {
    /// Rejects nonpositive entries and broken divisibility chains.
    pub fn new(divisors: Vec<BigInt>) -> Result<Self> {
        let positive = divisors.iter().all(|d| d.sign() == num_bigint::Sign::Plus);
        let chain = divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if positive && chain {
            Ok(PolarizationType { divisors })
        } else {
            Err(Error::InconsistentFacts(format!(
                "({}) is not a polarization type",
                join(&divisors)
            )))
        }
    }

    pub fn from_u64(divisors: &[u64]) -> Result<Self> {
        Self::new(divisors.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub(crate) fn from_divisors_unchecked(divisors: Vec<BigInt>) -> Self {
        PolarizationType { divisors }
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn dim(&self) -> usize {
        self.divisors.len()
    }

    /// `d_n`, or 1 for the empty type.
    pub fn exponent(&self) -> BigInt {
        self.divisors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// `d_1 * ... * d_n`.
    pub fn degree(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_principal(&self) -> bool {
        self.divisors.iter().all(One::is_one)
    }

    /// Nonempty with all entries equal.
    pub fn is_prym_tyurin(&self) -> bool {
        !self.divisors.is_empty() && self.divisors.iter().all(|d| d == &self.divisors[0])
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.divisors))
    }
}

fn join(xs: &[BigInt]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
