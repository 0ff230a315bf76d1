use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::PolarizationType;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::normal_form::{hermite_contains, hermite_rows, lattice_index, saturate_rows, smith};

/// A sublattice of `Z^n` stored as a row basis in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
    saturated: bool,
}

impl Sublattice {
    /// The lattice spanned by the rows of `generators`.
    pub fn from_generators(ambient: usize, generators: &IntMatrix) -> Self {
        assert_eq!(
            generators.cols(),
            ambient,
            "generator width must match the ambient rank"
        );
        let basis = hermite_rows(generators);
        let saturated = smith(&basis).divisors.iter().all(One::is_one);
        Sublattice {
            ambient,
            basis,
            saturated,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
            saturated: true,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::identity(ambient),
            saturated: true,
        }
    }

    /// The smallest saturated sublattice containing `self`.
    pub fn saturate(&self) -> Self {
        if self.saturated {
            return self.clone();
        }
        Sublattice {
            ambient: self.ambient,
            basis: saturate_rows(&self.basis),
            saturated: true,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        hermite_contains(&self.basis, v)
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        (0..other.rank()).all(|i| self.contains(other.basis.row(i)))
    }

    /// The span of both lattices, saturated.
    pub fn sum(&self, other: &Sublattice) -> Self {
        Sublattice::from_generators(self.ambient, &self.basis.vstack(&other.basis)).saturate()
    }

    /// Whether the two lattices meet only in zero.
    pub fn intersects_trivially(&self, other: &Sublattice) -> bool {
        hermite_rows(&self.basis.vstack(&other.basis)).rows() == self.rank() + other.rank()
    }
}

/// Period lattice of the image of a rational endomorphism: the saturation of
/// its column span.
pub fn image_sublattice(m: &RatMatrix) -> Sublattice {
    let n = m.rows();
    let lcm = m.denominator_lcm();
    let integral = m
        .transpose()
        .scaled_to_integer(&lcm)
        .expect("lcm of denominators clears them");
    Sublattice::from_generators(n, &integral).saturate()
}

/// `B * J * B^T` for the basis matrix `B`.
pub fn restricted_gram(lattice: &Sublattice, j: &IntMatrix) -> IntMatrix {
    let b = lattice.basis();
    &(b * j) * &b.transpose()
}

/// Type of a nondegenerate alternating integer form, read off from its
/// elementary divisors `(d1, d1, ..., dn, dn)`.
pub fn polarization_type(gram: &IntMatrix) -> Result<PolarizationType> {
    let size = gram.rows();
    if gram.cols() != size || gram != &gram.transpose().map(|x| -x) {
        return Err(Error::NotAlternating);
    }
    if size % 2 == 1 {
        return Err(Error::OddRank(size));
    }
    let divisors = smith(gram).divisors;
    if divisors.len() < size {
        return Err(Error::Degenerate {
            rank: divisors.len(),
            size,
        });
    }
    let paired = divisors.chunks(2).all(|p| p[0] == p[1]);
    if !paired {
        return Err(Error::DivisorsDoNotPair(
            divisors.iter().map(ToString::to_string).collect(),
        ));
    }
    Ok(PolarizationType::from_divisors_unchecked(
        divisors.into_iter().step_by(2).collect(),
    ))
}

/// Norm endomorphism `N = B^T (e G^-1) B J` of a saturated sublattice with
/// restricted Gram `G` and exponent `e`. Satisfies `N^2 = eN` and acts as
/// multiplication by `e` on the sublattice.
pub fn norm_endomorphism(lattice: &Sublattice, j: &IntMatrix) -> Result<IntMatrix> {
    let n = lattice.ambient();
    if lattice.rank() == 0 {
        return Ok(IntMatrix::zeros(n, n));
    }
    let gram = restricted_gram(lattice, j);
    let e = polarization_type(&gram)?.exponent();
    let inv = gram
        .to_rational()
        .inverse()
        .expect("type computation rejects degenerate forms")
        .scale(&Rational::from_integer(e));
    let b = lattice.basis().to_rational();
    let total = &(&(&b.transpose() * &inv) * &b) * &j.to_rational();
    total
        .scaled_to_integer(&BigInt::one())
        .ok_or(Error::NonIntegral)
}

/// Exponent of `sub` with respect to the principal form `Gram(sup) / e_sup`.
pub fn relative_exponent(
    sub: &Sublattice,
    sup: &Sublattice,
    j: &IntMatrix,
    e_sup: &BigInt,
) -> Result<BigInt> {
    if !sup.contains_lattice(sub) {
        return Err(Error::NotContained);
    }
    let divide = |g: IntMatrix| -> Result<IntMatrix> {
        if g.entries().all(|x| x.is_multiple_of(e_sup)) {
            Ok(g.map(|x| x / e_sup))
        } else {
            Err(Error::NonIntegralInducedForm(e_sup.to_string()))
        }
    };
    let induced = divide(restricted_gram(sup, j))?;
    if !polarization_type(&induced)?.is_principal() {
        return Err(Error::NonIntegralInducedForm(e_sup.to_string()));
    }
    if sub.rank() == 0 {
        return Ok(BigInt::one());
    }
    Ok(polarization_type(&divide(restricted_gram(sub, j))?)?.exponent())
}

/// Index of the span of the given lattices inside its saturation.
pub fn sum_index(ambient: usize, lattices: &[&Sublattice]) -> BigInt {
    let stacked = lattices
        .iter()
        .fold(IntMatrix::zeros(0, ambient), |acc, l| acc.vstack(l.basis()));
    if stacked.rows() == 0 || stacked.is_zero() {
        return BigInt::one();
    }
    lattice_index(&hermite_rows(&stacked))
}
