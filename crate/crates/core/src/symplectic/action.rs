use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;

use super::lattice::{image_sublattice, Sublattice};
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::matrix::{standard_symplectic, IntMatrix, RatMatrix};
use crate::rep_theory::{same_group, GroupAlgebraElement};

/// A validated action of a finite group on `Z^(2g)` by symplectic matrices.
#[derive(Debug, Clone)]
pub struct SymplecticGAction {
    genus: usize,
    group: Arc<FiniteGroup>,
    matrices: Vec<IntMatrix>,
    generators: Vec<(usize, IntMatrix)>,
}

impl SymplecticGAction {
    /// Expands generator matrices to the whole group through the Cayley
    /// table, then validates every element and every product.
    pub fn from_generator_matrices(
        group: &Arc<FiniteGroup>,
        genus: usize,
        generators: Vec<(usize, IntMatrix)>,
    ) -> Result<Self> {
        let size = 2 * genus;
        if genus == 0 {
            return Err(Error::MalformedAction("genus must be positive".into()));
        }
        for (g, m) in &generators {
            if *g >= group.order() {
                return Err(Error::ElementOutOfRange(*g));
            }
            if m.rows() != size || m.cols() != size {
                return Err(Error::MalformedAction(format!(
                    "matrix for {} is {}x{}, expected {size}x{size}",
                    group.label(*g),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let mut slots: Vec<Option<IntMatrix>> = vec![None; group.order()];
        slots[0] = Some(IntMatrix::identity(size));
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in &generators {
                let y = group.mul(*s, x);
                if slots[y].is_none() {
                    slots[y] = Some(ms * slots[x].as_ref().expect("queued elements are filled"));
                    queue.push_back(y);
                }
            }
        }
        let missing = slots.iter().filter(|m| m.is_none()).count();
        if missing > 0 {
            return Err(Error::MalformedAction(format!(
                "generators leave {missing} group elements without a matrix"
            )));
        }
        let action = SymplecticGAction {
            genus,
            group: Arc::clone(group),
            matrices: slots.into_iter().map(Option::unwrap).collect(),
            generators,
        };
        action.validate()?;
        Ok(action)
    }

    /// Symplectic check for every element, then the exhaustive homomorphism
    /// check `M_(gh) = M_g * M_h`.
    pub fn validate(&self) -> Result<()> {
        let j = standard_symplectic(self.genus);
        for (g, m) in self.matrices.iter().enumerate() {
            let pulled = &(&m.transpose() * &j) * m;
            if pulled != j {
                let size = j.rows();
                let (row, col) = (0..size * size)
                    .map(|k| (k / size, k % size))
                    .find(|&(r, c)| pulled[(r, c)] != j[(r, c)])
                    .expect("matrices differ somewhere");
                return Err(Error::NotSymplectic { g, row, col });
            }
        }
        if self.matrices[0] != IntMatrix::identity(2 * self.genus) {
            return Err(Error::NotHomomorphism { g: 0, h: 0 });
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                if self.matrices[self.group.mul(g, h)] != &self.matrices[g] * &self.matrices[h] {
                    return Err(Error::NotHomomorphism { g, h });
                }
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn matrix(&self, g: usize) -> &IntMatrix {
        &self.matrices[g]
    }

    /// The generator matrices the action was built from.
    pub fn generators(&self) -> &[(usize, IntMatrix)] {
        &self.generators
    }

    pub fn form(&self) -> IntMatrix {
        standard_symplectic(self.genus)
    }

    /// `sum_g x_g * M_g`.
    pub fn act_algebra(&self, x: &GroupAlgebraElement) -> Result<RatMatrix> {
        if !same_group(x.group(), &self.group) {
            return Err(Error::GroupMismatch);
        }
        let size = 2 * self.genus;
        let mut out = RatMatrix::zeros(size, size);
        for (g, c) in x.terms() {
            out = out.add(&self.matrices[g].map(|v| Rational::from_integer(v.clone()) * c));
        }
        Ok(out)
    }

    /// Saturated image of the averaging projector of `h`.
    pub fn fixed_sublattice(&self, h: &Subgroup) -> Result<Sublattice> {
        let p = GroupAlgebraElement::subgroup_projector(h);
        Ok(image_sublattice(&self.act_algebra(&p)?))
    }

    /// Genus of the quotient curve by `h`: half the rank of the fixed lattice.
    pub fn quotient_genus(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.fixed_sublattice(h)?.rank() / 2)
    }

    /// Whether every group element maps `lattice` into itself.
    pub fn stabilizes(&self, lattice: &Sublattice) -> bool {
        self.matrices.iter().all(|m| {
            lattice
                .basis()
                .to_rows()
                .iter()
                .all(|v| lattice.contains(&m.mul_vec(v)))
        })
    }
}

/// Signed permutation matrix acting the same way on the `a` and `b` blocks:
/// `images[i] = (j, sign)` sends `a_i -> sign * a_j` and `b_i -> sign * b_j`.
pub fn block_signed_permutation(images: &[(usize, i64)]) -> IntMatrix {
    let g = images.len();
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for (i, &(j, sign)) in images.iter().enumerate() {
        m[(j, i)] = BigInt::from(sign);
        m[(g + j, g + i)] = BigInt::from(sign);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;

    fn z2() -> SymplecticGAction {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let sigma = block_signed_permutation(&[(2, 1), (1, 1), (0, 1)]);
        SymplecticGAction::from_generator_matrices(&g, 3, vec![(1, sigma)]).unwrap()
    }

    fn d4() -> SymplecticGAction {
        let g = Arc::new(FiniteGroup::dihedral_with_names(4, "a", "b"));
        let a = block_signed_permutation(&[(1, 1), (2, 1), (3, 1), (0, 1)]);
        let b = block_signed_permutation(&[(1, -1), (0, -1), (3, -1), (2, -1)]);
        SymplecticGAction::from_generator_matrices(&g, 4, vec![(1, a), (4, b)]).unwrap()
    }

    #[test]
    fn catalog_actions_validate() {
        z2().validate().unwrap();
        d4().validate().unwrap();
    }

    #[test]
    fn swap_on_a_only_is_not_symplectic() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let mut m = IntMatrix::identity(6);
        for (i, j) in [(0, 0), (2, 2)] {
            m[(i, j)] = BigInt::from(0);
        }
        m[(2, 0)] = BigInt::from(1);
        m[(0, 2)] = BigInt::from(1);
        let err = SymplecticGAction::from_generator_matrices(&g, 3, vec![(1, m)]).unwrap_err();
        assert!(matches!(err, Error::NotSymplectic { g: 1, .. }));
    }

    #[test]
    fn wrong_relation_is_not_a_homomorphism() {
        // a 90 degree rotation in one block has order 4, not 2
        let g = Arc::new(FiniteGroup::cyclic(2));
        let r = IntMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]);
        let err = SymplecticGAction::from_generator_matrices(&g, 1, vec![(1, r)]).unwrap_err();
        assert!(matches!(err, Error::NotHomomorphism { .. }));
    }

    #[test]
    fn missing_generator() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let err = SymplecticGAction::from_generator_matrices(
            &g,
            1,
            vec![(2, IntMatrix::identity(2).scale(&BigInt::from(-1)))],
        );
        assert!(matches!(err, Err(Error::MalformedAction(_))));
    }

    #[test]
    fn algebra_action() {
        let rho = z2();
        let g = Arc::clone(rho.group());
        let one = GroupAlgebraElement::one(&g);
        assert_eq!(rho.act_algebra(&one).unwrap(), RatMatrix::identity(6));
        let e0 = GroupAlgebraElement::from_coeffs(&g, [(0, rat(1, 2)), (1, rat(1, 2))]);
        let m = rho.act_algebra(&e0).unwrap();
        // column 0 is the image of a_1
        assert_eq!(m[(0, 0)], rat(1, 2));
        assert_eq!(m[(2, 0)], rat(1, 2));
        assert_eq!(m[(1, 1)], rat(1, 1));
        assert_eq!(&m * &m, m);
        let other = GroupAlgebraElement::one(&Arc::new(FiniteGroup::cyclic(3)));
        assert!(matches!(rho.act_algebra(&other), Err(Error::GroupMismatch)));
    }

    #[test]
    fn fixed_lattices_and_quotient_genera() {
        let rho = z2();
        let g = Arc::clone(rho.group());
        let whole = Subgroup::whole(&g);
        let fixed = rho.fixed_sublattice(&whole).unwrap();
        assert_eq!(fixed.rank(), 4);
        for v in [
            [1, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 1],
            [0, 0, 0, 0, 1, 0],
        ] {
            assert!(fixed.contains(&v.map(BigInt::from)));
        }
        assert_eq!(rho.quotient_genus(&whole).unwrap(), 2);
        assert_eq!(rho.quotient_genus(&Subgroup::trivial(&g)).unwrap(), 3);

        let rho = d4();
        let g = Arc::clone(rho.group());
        assert_eq!(rho.quotient_genus(&Subgroup::whole(&g)).unwrap(), 0);
        assert_eq!(rho.quotient_genus(&Subgroup::trivial(&g)).unwrap(), 4);
    }
}
