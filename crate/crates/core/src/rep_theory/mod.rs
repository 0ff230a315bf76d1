//! Character tables, Galois orbits of characters, representation kernels, and
//! the central idempotents of the rational group algebra.

mod algebra;
mod builtin;

use std::sync::Arc;

use num_bigint::BigInt;

pub(crate) use algebra::same_group;
pub use algebra::GroupAlgebraElement;
pub use builtin::{builtin_table, Family};

use crate::cyclotomic::{euler_phi, units, Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// One irreducible character, given by its values on conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub degree: u64,
    pub values: Vec<Cyclotomic>,
}

/// A Galois orbit of irreducible characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalClass {
    /// Table rows in the orbit, ascending.
    pub rows: Vec<usize>,
    /// Degree of the character field over `Q`, equal to the orbit size.
    pub field_degree: usize,
}

impl RationalClass {
    pub fn representative(&self) -> usize {
        self.rows[0]
    }
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    field_order: u64,
    rows: Vec<Character>,
}

impl CharacterTable {
    /// Stores a table whose columns follow `group.conjugacy_classes()`.
    /// Values are moved into `Q(zeta_N)` with `N` the group exponent.
    /// Nothing is validated here; see [`CharacterTable::validate`].
    pub fn new(group: Arc<FiniteGroup>, rows: Vec<Character>) -> Result<Self> {
        let field_order = group.exponent() as u64;
        let classes = group.conjugacy_classes();
        let mut class_of = vec![0; group.order()];
        for (c, class) in classes.iter().enumerate() {
            for &g in class {
                class_of[g] = c;
            }
        }
        let rows = rows
            .into_iter()
            .map(|ch| {
                let values = ch
                    .values
                    .iter()
                    .map(|v| v.embed(field_order))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Character {
                    degree: ch.degree,
                    values,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            group,
            classes,
            class_of,
            field_order,
            rows,
        })
    }

    pub fn validated(group: Arc<FiniteGroup>, rows: Vec<Character>) -> Result<Self> {
        let t = Self::new(group, rows)?;
        t.validate()?;
        Ok(t)
    }

    /// Same table over a relabeled copy of the group.
    pub fn with_group_labels(&self, labels: Vec<String>) -> Result<Self> {
        let group = Arc::new((*self.group).clone().with_labels(labels)?);
        Ok(CharacterTable {
            group,
            ..self.clone()
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn rows(&self) -> &[Character] {
        &self.rows
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// `chi_row(g)`.
    pub fn value(&self, row: usize, g: usize) -> &Cyclotomic {
        &self.rows[row].values[self.class_of[g]]
    }

    /// Checks shape, degrees, and the row orthogonality relations exactly.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if let Some(bad) = self.rows.iter().find(|r| r.values.len() != k) {
            return Err(Error::ClassCountMismatch {
                classes: k,
                rows: self.rows.len(),
                width: bad.values.len(),
            });
        }
        if self.rows.len() != k {
            return Err(Error::ClassCountMismatch {
                classes: k,
                rows: self.rows.len(),
                width: k,
            });
        }
        for (i, row) in self.rows.iter().enumerate() {
            let expected = Rational::from_integer(BigInt::from(row.degree));
            if row.degree == 0 || row.values[0].as_rational() != Some(expected) {
                return Err(Error::DegreeMismatch(i));
            }
        }
        let n = self.field_order;
        let order = Cyclotomic::from_integer(n, self.group.order() as i64);
        let sizes: Vec<Cyclotomic> = self
            .classes
            .iter()
            .map(|c| Cyclotomic::from_integer(n, c.len() as i64))
            .collect();
        for i in 0..k {
            for j in i..k {
                let mut sum = Cyclotomic::zero(n);
                for c in 0..k {
                    let term = &self.rows[i].values[c] * &self.rows[j].values[c].conj();
                    sum = &sum + &(&sizes[c] * &term);
                }
                let expected = if i == j {
                    order.clone()
                } else {
                    Cyclotomic::zero(n)
                };
                if sum != expected {
                    return Err(Error::OrthogonalityFailure { i, j });
                }
            }
        }
        Ok(())
    }

    /// Partition of the rows into orbits under `sigma_k: z -> z^k`, listed by
    /// least row index.
    pub fn galois_orbits(&self) -> Result<Vec<RationalClass>> {
        let mut assigned = vec![false; self.rows.len()];
        let mut orbits = Vec::new();
        for i in 0..self.rows.len() {
            if assigned[i] {
                continue;
            }
            let mut members = vec![i];
            for k in units(self.field_order) {
                let image: Vec<Cyclotomic> = self.rows[i]
                    .values
                    .iter()
                    .map(|v| v.galois_apply(k as i64))
                    .collect::<Result<_>>()?;
                let j = self
                    .rows
                    .iter()
                    .position(|r| r.values == image)
                    .ok_or(Error::OrbitNotInTable { row: i, k })?;
                if !members.contains(&j) {
                    members.push(j);
                }
            }
            members.sort_unstable();
            for &j in &members {
                assigned[j] = true;
            }
            orbits.push(RationalClass {
                field_degree: members.len(),
                rows: members,
            });
        }
        Ok(orbits)
    }

    /// `{g : chi(g) = chi(1)}`, the kernel of the representation.
    pub fn kernel_of_character(&self, row: usize) -> Result<Subgroup> {
        let one = &self.rows[row].values[0];
        let elements = (0..self.group.order())
            .filter(|&g| self.value(row, g) == one)
            .collect();
        Subgroup::from_elements(&self.group, elements).ok_or(Error::NotASubgroup(row))
    }

    /// Central idempotent of a rational class:
    /// `e = (chi(1)/|G|) * sum_g tr_{L/Q}(chi(g^-1)) g`.
    ///
    /// The relative trace is computed twice, once as the sum over the orbit
    /// and once as the absolute trace scaled by `[L:Q]/phi(N)`; both must
    /// agree, and the result must satisfy `e*e = e`.
    pub fn central_idempotent(
        &self,
        class_index: usize,
        class: &RationalClass,
    ) -> Result<GroupAlgebraElement> {
        let rep = class.representative();
        let degree = Rational::from_integer(BigInt::from(self.rows[rep].degree));
        let scale = degree / Rational::from_integer(BigInt::from(self.group.order()));
        let trace_scale = Rational::new(
            BigInt::from(class.field_degree),
            BigInt::from(euler_phi(self.field_order)),
        );

        let mut per_class = Vec::with_capacity(self.classes.len());
        for class_members in &self.classes {
            let inverse = self.class_of(self.group.inv(class_members[0]));
            let orbit_sum = class
                .rows
                .iter()
                .fold(Cyclotomic::zero(self.field_order), |acc, &r| {
                    &acc + &self.rows[r].values[inverse]
                });
            let by_orbit = orbit_sum
                .as_rational()
                .ok_or(Error::NotIdempotent(class_index))?;
            let by_trace = self.rows[rep].values[inverse].absolute_trace() * &trace_scale;
            if by_orbit != by_trace {
                return Err(Error::NotIdempotent(class_index));
            }
            per_class.push(by_orbit * &scale);
        }
        let e = GroupAlgebraElement::from_coeffs(
            &self.group,
            (0..self.group.order()).map(|g| (g, per_class[self.class_of(g)].clone())),
        );
        if e.is_zero() || e.mul(&e)? != e {
            return Err(Error::NotIdempotent(class_index));
        }
        Ok(e)
    }

    /// Idempotents for every rational class, in orbit order.
    pub fn central_idempotents(&self) -> Result<Vec<(RationalClass, GroupAlgebraElement)>> {
        self.galois_orbits()?
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.central_idempotent(i, &c)?;
                Ok((c, e))
            })
            .collect()
    }
}

/// Sum of a list of group-algebra elements, or zero for an empty list.
pub fn algebra_sum(
    group: &Arc<FiniteGroup>,
    xs: &[GroupAlgebraElement],
) -> Result<GroupAlgebraElement> {
    xs.iter()
        .try_fold(GroupAlgebraElement::zero(group), |acc, x| acc.add(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{int, rat};

    fn rational_table(group: FiniteGroup, rows: &[(u64, Vec<i64>)]) -> CharacterTable {
        let g = Arc::new(group);
        let n = g.exponent() as u64;
        let rows = rows
            .iter()
            .map(|(d, vals)| Character {
                degree: *d,
                values: vals
                    .iter()
                    .map(|&v| Cyclotomic::from_integer(n, v))
                    .collect(),
            })
            .collect();
        CharacterTable::new(g, rows).unwrap()
    }

    fn d4_alternate_order() -> CharacterTable {
        // columns follow conjugacy_classes(): 1, {a,a^3}, a^2, {b,a^2b}, {ab,a^3b}
        rational_table(
            FiniteGroup::dihedral_with_names(4, "a", "b"),
            &[
                (1, vec![1, 1, 1, 1, 1]),
                (1, vec![1, 1, 1, -1, -1]),
                (1, vec![1, -1, 1, 1, -1]),
                (1, vec![1, -1, 1, -1, 1]),
                (2, vec![2, 0, -2, 0, 0]),
            ],
        )
    }

    #[test]
    fn z2_table_validates() {
        let t = rational_table(FiniteGroup::cyclic(2), &[(1, vec![1, 1]), (1, vec![1, -1])]);
        t.validate().unwrap();
        let k0 = t.kernel_of_character(0).unwrap();
        assert_eq!(k0.order(), 2);
    }

    #[test]
    fn duplicate_rows_fail_orthogonality() {
        let t = rational_table(FiniteGroup::cyclic(2), &[(1, vec![1, 1]), (1, vec![1, 1])]);
        assert!(matches!(
            t.validate(),
            Err(Error::OrthogonalityFailure { i: 0, j: 1 })
        ));
    }

    #[test]
    fn degree_and_shape_errors() {
        let t = rational_table(FiniteGroup::cyclic(2), &[(2, vec![1, 1]), (1, vec![1, -1])]);
        assert!(matches!(t.validate(), Err(Error::DegreeMismatch(0))));
        let t = rational_table(FiniteGroup::cyclic(2), &[(1, vec![1, 1])]);
        assert!(matches!(
            t.validate(),
            Err(Error::ClassCountMismatch { .. })
        ));
    }

    #[test]
    fn d4_table_and_idempotents() {
        let t = d4_alternate_order();
        t.validate().unwrap();
        let orbits = t.galois_orbits().unwrap();
        assert_eq!(orbits.len(), 5);
        assert!(orbits.iter().all(|o| o.field_degree == 1));

        let g = t.group();
        let l = |s: &str| g.element_by_label(s).unwrap();
        let e1 = t.central_idempotent(1, &orbits[1]).unwrap();
        let expected = GroupAlgebraElement::from_coeffs(
            g,
            ["1", "a", "a^2", "a^3"]
                .iter()
                .map(|s| (l(s), rat(1, 8)))
                .chain(
                    ["b", "ab", "a^2b", "a^3b"]
                        .iter()
                        .map(|s| (l(s), rat(-1, 8))),
                ),
        );
        assert_eq!(e1, expected);
        assert_eq!(e1.minimal_integer_multiplier(), BigInt::from(8));

        let e4 = t.central_idempotent(4, &orbits[4]).unwrap();
        let expected =
            GroupAlgebraElement::from_coeffs(g, [(0, rat(1, 2)), (l("a^2"), rat(-1, 2))]);
        assert_eq!(e4, expected);

        // the published form (1/4)(1 - 2a^2) is not idempotent
        let published =
            GroupAlgebraElement::from_coeffs(g, [(0, rat(1, 4)), (l("a^2"), rat(-1, 2))]);
        assert_ne!(published.mul(&published).unwrap(), published);

        assert!(t.kernel_of_character(4).unwrap().order() == 1);
    }

    #[test]
    fn z2_idempotent() {
        let t = rational_table(FiniteGroup::cyclic(2), &[(1, vec![1, 1]), (1, vec![1, -1])]);
        let orbits = t.galois_orbits().unwrap();
        let e0 = t.central_idempotent(0, &orbits[0]).unwrap();
        assert_eq!(e0.coeff(0), rat(1, 2));
        assert_eq!(e0.coeff(1), rat(1, 2));
        let e1 = t.central_idempotent(1, &orbits[1]).unwrap();
        assert_eq!(e1.coeff(1), int(-1) / int(2));
    }

    #[test]
    fn missing_conjugate_row() {
        // Z3 with only the trivial character and one complex one, plus a bogus row
        let g = Arc::new(FiniteGroup::cyclic(3));
        let z = Cyclotomic::zeta(3);
        let rows = vec![
            Character {
                degree: 1,
                values: vec![Cyclotomic::one(3); 3],
            },
            Character {
                degree: 1,
                values: vec![Cyclotomic::one(3), z.clone(), &z * &z],
            },
            Character {
                degree: 1,
                values: vec![Cyclotomic::one(3), z.clone(), &z * &z],
            },
        ];
        let t = CharacterTable::new(g, rows).unwrap();
        assert!(matches!(
            t.galois_orbits(),
            Err(Error::OrbitNotInTable { row: 1, .. })
        ));
    }

    #[test]
    fn d5_complex_characters_form_one_orbit() {
        let t = builtin_table(Family::Dihedral(5)).unwrap();
        let orbits = t.galois_orbits().unwrap();
        let sizes: Vec<usize> = orbits.iter().map(|o| o.field_degree).collect();
        assert_eq!(sizes, vec![1, 1, 2]);
        assert_eq!(orbits[2].rows, vec![2, 3]);
        let r = t.group().element_by_label("r").unwrap();
        let k1 = t.kernel_of_character(1).unwrap();
        assert_eq!(k1, Subgroup::generated(t.group(), &[r]).unwrap());
    }
}
