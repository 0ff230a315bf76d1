use std::sync::Arc;

use num_integer::Integer;

use super::{Character, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const MAX_FAMILY_PARAMETER: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `Z_n`, `n >= 1`.
    Cyclic(usize),
    /// `D_n` of order `2n`, `n >= 3`.
    Dihedral(usize),
    Quaternion8,
}

/// Standard character table of a small family, columns in conjugacy-class
/// order of the family's built-in group. The table is validated.
pub fn builtin_table(family: Family) -> Result<CharacterTable> {
    let table = match family {
        Family::Cyclic(n) if (1..=MAX_FAMILY_PARAMETER).contains(&n) => cyclic(n),
        Family::Dihedral(n) if (3..=MAX_FAMILY_PARAMETER).contains(&n) => dihedral(n),
        Family::Quaternion8 => quaternion8(),
        other => return Err(Error::UnsupportedFamily(format!("{other:?}"))),
    }?;
    table.validate()?;
    Ok(table)
}

fn cyclic(n: usize) -> Result<CharacterTable> {
    let group = Arc::new(FiniteGroup::cyclic(n));
    let rows = (0..n)
        .map(|j| Character {
            degree: 1,
            values: (0..n)
                .map(|k| Cyclotomic::zeta_pow(n as u64, (j * k) as i64))
                .collect(),
        })
        .collect();
    CharacterTable::new(group, rows)
}

/// Linear characters first (trivial, `s -> -1`, and for even `n` the two with
/// `r -> -1`), then the degree-2 characters `r^k -> z^(hk) + z^(-hk)`.
fn dihedral(n: usize) -> Result<CharacterTable> {
    let group = Arc::new(FiniteGroup::dihedral(n));
    let order = n.lcm(&2) as u64;
    let step = (order / n as u64) as i64;
    let reps: Vec<(usize, usize)> = group
        .conjugacy_classes()
        .iter()
        .map(|c| (c[0] % n, c[0] / n))
        .collect();
    let sign = |b: bool| if b { -1 } else { 1 };
    let linear = |f: &dyn Fn(usize, usize) -> i64| Character {
        degree: 1,
        values: reps
            .iter()
            .map(|&(k, j)| Cyclotomic::from_integer(order, f(k, j)))
            .collect(),
    };
    let mut rows = vec![linear(&|_, _| 1), linear(&|_, j| sign(j == 1))];
    if n.is_multiple_of(2) {
        rows.push(linear(&|k, _| sign(k % 2 == 1)));
        rows.push(linear(&|k, j| sign(k % 2 == 1) * sign(j == 1)));
    }
    for h in 1..=(n - 1) / 2 {
        let values = reps
            .iter()
            .map(|&(k, j)| {
                if j == 1 {
                    Cyclotomic::zero(order)
                } else {
                    let e = step * (h * k) as i64;
                    &Cyclotomic::zeta_pow(order, e) + &Cyclotomic::zeta_pow(order, -e)
                }
            })
            .collect();
        rows.push(Character { degree: 2, values });
    }
    CharacterTable::new(group, rows)
}

/// Kernels of the three nontrivial linear characters are `<i>`, `<j>`, `<ij>`.
fn quaternion8() -> Result<CharacterTable> {
    let group = Arc::new(FiniteGroup::quaternion8());
    let row = |degree: u64, v: [i64; 5]| Character {
        degree,
        values: v.iter().map(|&x| Cyclotomic::from_integer(4, x)).collect(),
    };
    let rows = vec![
        row(1, [1, 1, 1, 1, 1]),
        row(1, [1, 1, 1, -1, -1]),
        row(1, [1, 1, -1, 1, -1]),
        row(1, [1, 1, -1, -1, 1]),
        row(2, [2, -2, 0, 0, 0]),
    ];
    CharacterTable::new(group, rows)
}
