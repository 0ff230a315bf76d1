use num_bigint::BigInt;

use super::action::SymplecticGAction;
use super::lattice::{image_sublattice, polarization_type, restricted_gram, sum_index, Sublattice};
use super::PolarizationType;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rep_theory::{same_group, CharacterTable, GroupAlgebraElement, RationalClass};

/// One isotypical component, attached to a rational class of characters.
#[derive(Debug, Clone)]
pub struct IsotypicalComponent {
    pub class_index: usize,
    pub class: RationalClass,
    pub idempotent: GroupAlgebraElement,
    /// Least `m` with `m * e` integral.
    pub multiplier: BigInt,
    pub lattice: Sublattice,
    pub dim: usize,
    pub ptype: PolarizationType,
    pub exponent: BigInt,
    pub kernel: Subgroup,
    pub quotient_genus: usize,
    pub is_prym_tyurin: bool,
}

impl IsotypicalComponent {
    pub fn kernel_order(&self) -> usize {
        self.kernel.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 0
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub genus: usize,
    pub components: Vec<IsotypicalComponent>,
    /// Index of the sum of all component lattices in `Z^(2g)`.
    pub sum_index: BigInt,
}

/// Decomposes the lattice along the central idempotents of `table`, one
/// component per rational class, and cross-checks the pieces: each lattice
/// is stable, lies in the fixed lattice of its kernel, the lattices meet
/// pairwise in zero, and together they have full rank.
pub fn isotypical_decomposition(
    action: &SymplecticGAction,
    table: &CharacterTable,
) -> Result<Decomposition> {
    if !same_group(action.group(), table.group()) {
        return Err(Error::GroupMismatch);
    }
    let j = action.form();
    let mut components = Vec::new();
    for (class_index, (class, e)) in table.central_idempotents()?.into_iter().enumerate() {
        let lattice = image_sublattice(&action.act_algebra(&e)?);
        if lattice.rank() % 2 == 1 {
            return Err(Error::DecompositionInconsistent(format!(
                "component {class_index} has odd rank {}",
                lattice.rank()
            )));
        }
        let ptype = polarization_type(&restricted_gram(&lattice, &j))?;
        let kernel = table.kernel_of_character(class.representative())?;
        let fixed = action.fixed_sublattice(&kernel)?;
        if !fixed.contains_lattice(&lattice) {
            return Err(Error::DecompositionInconsistent(format!(
                "component {class_index} is not fixed by its kernel"
            )));
        }
        if !action.stabilizes(&lattice) {
            return Err(Error::DecompositionInconsistent(format!(
                "component {class_index} is not stable under the group"
            )));
        }
        components.push(IsotypicalComponent {
            class_index,
            multiplier: e.minimal_integer_multiplier(),
            dim: lattice.rank() / 2,
            exponent: ptype.exponent(),
            is_prym_tyurin: ptype.is_prym_tyurin(),
            quotient_genus: fixed.rank() / 2,
            class,
            idempotent: e,
            lattice,
            ptype,
            kernel,
        });
    }
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            if !a.lattice.intersects_trivially(&b.lattice) {
                return Err(Error::DecompositionInconsistent(format!(
                    "components {} and {} intersect",
                    a.class_index, b.class_index
                )));
            }
        }
    }
    let genus = action.genus();
    let total: usize = components.iter().map(|c| c.lattice.rank()).sum();
    if total != 2 * genus {
        return Err(Error::DecompositionInconsistent(format!(
            "component ranks sum to {total}, expected {}",
            2 * genus
        )));
    }
    let lattices: Vec<&Sublattice> = components.iter().map(|c| &c.lattice).collect();
    let sum_index = sum_index(2 * genus, &lattices);
    Ok(Decomposition {
        genus,
        components,
        sum_index,
    })
}
