use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// An element of the rational group algebra `Q[G]`.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, Rational>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraElement {}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupAlgebraElement {
            group: Arc::clone(group),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        Self::from_coeffs(group, [(g, Rational::one())])
    }

    /// Sums repeated indices and drops zero coefficients.
    pub fn from_coeffs(
        group: &Arc<FiniteGroup>,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (g, c) in coeffs {
            assert!(g < group.order(), "element {g} out of range");
            *map.entry(g).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        GroupAlgebraElement {
            group: Arc::clone(group),
            coeffs: map,
        }
    }

    /// The averaging projector `(1/|H|) * sum of h in H`.
    pub fn subgroup_projector(h: &Subgroup) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(h.order()));
        Self::from_coeffs(h.group(), h.elements().iter().map(|&g| (g, w.clone())))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self, g: usize) -> Rational {
        self.coeffs.get(&g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in element order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        Ok(Self::from_coeffs(
            &self.group,
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(&g, c)| (g, c.clone())),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Convolution product through the Cayley table.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (&g, a) in &self.coeffs {
            for (&h, b) in &other.coeffs {
                terms.push((self.group.mul(g, h), a * b));
            }
        }
        Ok(Self::from_coeffs(&self.group, terms))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(&self.group, self.coeffs.iter().map(|(&g, c)| (g, c * q)))
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: usize) -> Self {
        Self::from_coeffs(
            &self.group,
            self.coeffs
                .iter()
                .map(|(&x, c)| (self.group.conjugate(g, x), c.clone())),
        )
    }

    /// Least positive `m` with `m * self` integral: the lcm of the denominators.
    pub fn minimal_integer_multiplier(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Human-readable form such as `1/2*1 - 1/2*a^2`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&g, c)) in self.coeffs.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format!("{}*{}", mag, self.group.label(g)));
        }
        out
    }
}
