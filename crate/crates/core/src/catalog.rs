//! Built-in instances: two explicit lattice actions and two families of
//! scenario facts for groups whose action is only described structurally.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bounds::ComponentFacts;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rep_theory::{builtin_table, CharacterTable, Family};
use crate::symplectic::{block_signed_permutation, SymplecticGAction};

pub const INSTANCE_NAMES: [&str; 4] = ["Z2_genus3", "D4_genus4", "Dp_scenario", "Q8_scenario"];

/// Largest prime accepted for the dihedral scenario.
pub const MAX_SCENARIO_PRIME: u64 = 97;

/// Hypothesis toggles. Each instance has its own defaults, and a toggle set
/// here can only switch a hypothesis on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    pub p: Option<u64>,
    pub dim: Option<usize>,
    pub assume_pullback_embedding: bool,
    pub assume_abel_prym_embedding: bool,
    pub apply_divisor_rule: bool,
    pub assume_two_point_or_unramified: bool,
}

/// Hypotheses applied to components derived from a lattice decomposition,
/// and recorded in every report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub assume_pullback_embedding: bool,
    pub assume_abel_prym_embedding: bool,
    pub apply_divisor_rule: bool,
    pub assume_two_point_or_unramified: bool,
}

impl Flags {
    pub fn from_options(options: &Options) -> Self {
        Flags {
            assume_pullback_embedding: options.assume_pullback_embedding,
            assume_abel_prym_embedding: options.assume_abel_prym_embedding,
            apply_divisor_rule: options.apply_divisor_rule,
            assume_two_point_or_unramified: options.assume_two_point_or_unramified,
        }
    }

    /// Names of the flags that are on, in a fixed order.
    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.assume_pullback_embedding, "pullback_embedding"),
            (
                self.assume_abel_prym_embedding,
                "abel_prym_pullback_embedding",
            ),
            (self.apply_divisor_rule, "divisor_rule"),
            (
                self.assume_two_point_or_unramified,
                "two_point_or_unramified",
            ),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect()
    }
}

/// Labeled facts for one component of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub label: String,
    pub facts: ComponentFacts,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub table: CharacterTable,
    pub action: Option<SymplecticGAction>,
    pub scenarios: Vec<Scenario>,
    pub flags: Flags,
    /// Minimal-class coefficients supplied for decomposition components,
    /// keyed by component label.
    pub k_overrides: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl Instance {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    /// Switches on extra hypotheses for an instance read from a file. The
    /// scenario facts pick up every toggle they have a field for.
    pub fn enable(&mut self, extra: &Flags) {
        let f = &mut self.flags;
        f.assume_pullback_embedding |= extra.assume_pullback_embedding;
        f.assume_abel_prym_embedding |= extra.assume_abel_prym_embedding;
        f.apply_divisor_rule |= extra.apply_divisor_rule;
        f.assume_two_point_or_unramified |= extra.assume_two_point_or_unramified;
        for s in &mut self.scenarios {
            let facts = &mut s.facts;
            facts.assume_pullback_embedding |= extra.assume_pullback_embedding;
            facts.assume_abel_prym_pullback_embedding |= extra.assume_abel_prym_embedding;
            facts.apply_divisor_rule |= extra.apply_divisor_rule;
        }
    }
}

/// One-line description of each instance.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "Z2_genus3" => "involution on a genus 3 lattice swapping a1<->a3 and b1<->b3",
        "D4_genus4" => "dihedral group of order 8 on a genus 4 lattice",
        "Dp_scenario" => "dihedral group of order 2p, p an odd prime; scenario facts only",
        "Q8_scenario" => "quaternion group; scenario facts only",
        _ => return None,
    })
}

pub fn get(name: &str, options: &Options) -> Result<Instance> {
    if options.p.is_some() && name != "Dp_scenario" {
        return Err(Error::BadParameter(format!("{name} takes no parameter p")));
    }
    match name {
        "Z2_genus3" => z2_genus3(options),
        "D4_genus4" => d4_genus4(options),
        "Dp_scenario" => dp_scenario(options),
        "Q8_scenario" => q8_scenario(options),
        other => Err(Error::UnknownInstance(other.to_string())),
    }
}

fn z2_genus3(options: &Options) -> Result<Instance> {
    let table =
        builtin_table(Family::Cyclic(2))?.with_group_labels(vec!["1".into(), "sigma".into()])?;
    let sigma = block_signed_permutation(&[(2, 1), (1, 1), (0, 1)]);
    let action = SymplecticGAction::from_generator_matrices(table.group(), 3, vec![(1, sigma)])?;
    Ok(Instance {
        name: "Z2_genus3".into(),
        table,
        action: Some(action),
        scenarios: Vec::new(),
        flags: Flags::from_options(options),
        k_overrides: BTreeMap::new(),
        notes: Vec::new(),
    })
}

fn d4_genus4(options: &Options) -> Result<Instance> {
    let labels = FiniteGroup::dihedral_with_names(4, "a", "b")
        .labels()
        .expect("built-in groups are labeled")
        .to_vec();
    let table = builtin_table(Family::Dihedral(4))?.with_group_labels(labels)?;
    let a = block_signed_permutation(&[(1, 1), (2, 1), (3, 1), (0, 1)]);
    let b = block_signed_permutation(&[(1, -1), (0, -1), (3, -1), (2, -1)]);
    let action =
        SymplecticGAction::from_generator_matrices(table.group(), 4, vec![(1, a), (4, b)])?;
    let literature = ComponentFacts {
        k: Some(5),
        genus_c: Some(4),
        apply_divisor_rule: true,
        assume_abel_prym_pullback_embedding: true,
        ..ComponentFacts::prym_tyurin(2, 5, 1)
    };
    Ok(Instance {
        name: "D4_genus4".into(),
        table,
        action: Some(action),
        scenarios: vec![Scenario {
            label: "A4_literature_exponent_5".into(),
            facts: literature,
        }],
        flags: Flags::from_options(options),
        k_overrides: BTreeMap::new(),
        notes: vec![
            "A4 idempotent: the computed value is 1/2*1 - 1/2*a^2; the published value 1/4*(1 - 2*a^2) squares to 1/16*(5*1 - 4*a^2) and is not idempotent".into(),
            "A4 lattice: the computed basis is a1-a3, a2-a4, b1-b3, b2-b4 with type (2,2) and exponent 2; the published type is (5,5) with generators a1-2a3, a2-2a4, b1-2b3, b2-2b4".into(),
            "A4_literature_exponent_5 reproduces the published degree argument from the published exponent 5".into(),
        ],
    })
}

fn scenario_dim(options: &Options) -> Result<usize> {
    match options.dim.unwrap_or(2) {
        0 => Err(Error::BadParameter("dim must be positive".into())),
        d => Ok(d),
    }
}

fn with_flags(facts: ComponentFacts, options: &Options) -> ComponentFacts {
    ComponentFacts {
        assume_abel_prym_pullback_embedding: options.assume_abel_prym_embedding,
        apply_divisor_rule: options.apply_divisor_rule,
        ..facts
    }
}

fn kernel_order(table: &CharacterTable, row: usize) -> Result<u64> {
    Ok(table.kernel_of_character(row)?.order() as u64)
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|q| q * q <= p)
            .all(|q| !p.is_multiple_of(q))
}

/// Components: trivial, alternating, and the sum of the degree-2 characters.
/// Both the involution hypothesis and the two-point ramification hypothesis
/// are part of the scenario, so they are always on.
fn dp_scenario(options: &Options) -> Result<Instance> {
    let p = options
        .p
        .ok_or_else(|| Error::BadParameter("Dp_scenario needs p".into()))?;
    if p % 2 == 0 || !is_prime(p) || p > MAX_SCENARIO_PRIME {
        return Err(Error::BadParameter(format!(
            "p = {p} is not an odd prime at most {MAX_SCENARIO_PRIME}"
        )));
    }
    let n = scenario_dim(options)?;
    let table = builtin_table(Family::Dihedral(p as usize))?;
    let k0 = kernel_order(&table, 0)?;
    let k1 = kernel_order(&table, 1)?;
    let k2 = kernel_order(&table, 2)?;
    let a0 = ComponentFacts {
        assume_pullback_embedding: true,
        ..ComponentFacts::prym_tyurin(n, 2 * p, k0)
    };
    let a1 = ComponentFacts {
        assume_pullback_embedding: true,
        ..ComponentFacts::prym_tyurin(n, 2 * p, k1)
    };
    let a2 = ComponentFacts::kernel_only(n, k2);
    let scenarios = [("A0", a0), ("A1", a1), ("A2", a2)]
        .into_iter()
        .map(|(label, facts)| Scenario {
            label: label.into(),
            facts: with_flags(facts, options),
        })
        .collect();
    Ok(Instance {
        name: "Dp_scenario".into(),
        table,
        action: None,
        scenarios,
        flags: Flags {
            assume_pullback_embedding: true,
            assume_two_point_or_unramified: true,
            ..Flags::from_options(options)
        },
        k_overrides: BTreeMap::new(),
        notes: vec![format!(
            "p = {p}; an involution is assumed whose quotient map is not a cyclic etale covering; the double cover C/<r> -> C/D_p is assumed unramified or ramified in exactly two points"
        )],
    })
}

/// Components in table order; kernels have orders 8, 4, 4, 4, 1.
fn q8_scenario(options: &Options) -> Result<Instance> {
    let n = scenario_dim(options)?;
    let table = builtin_table(Family::Quaternion8)?;
    let mut scenarios = Vec::new();
    let k0 = kernel_order(&table, 0)?;
    let a0 = if options.assume_pullback_embedding {
        ComponentFacts {
            assume_pullback_embedding: true,
            ..ComponentFacts::prym_tyurin(n, 8, k0)
        }
    } else {
        ComponentFacts::kernel_only(n, k0)
    };
    scenarios.push(("A0".to_string(), a0));
    for row in 1..=3 {
        let k = kernel_order(&table, row)?;
        let facts = if options.assume_two_point_or_unramified {
            ComponentFacts::prym_tyurin(n, 8, k)
        } else {
            ComponentFacts::kernel_only(n, k)
        };
        scenarios.push((format!("A{row}"), facts));
    }
    let k4 = kernel_order(&table, 4)?;
    let a4 = if options.assume_two_point_or_unramified {
        ComponentFacts::prym_tyurin(n, 2, k4)
    } else {
        ComponentFacts::kernel_only(n, k4)
    };
    scenarios.push(("A4".to_string(), a4));
    let mut notes = Vec::new();
    if options.assume_pullback_embedding {
        notes.push("C -> C/Q8 is assumed not to factor through a cyclic etale cover".into());
    }
    if options.assume_two_point_or_unramified {
        notes.push("the double covers C/K_l -> C/Q8 and C -> C/<-1> are assumed unramified or ramified in exactly two points".into());
    }
    Ok(Instance {
        name: "Q8_scenario".into(),
        table,
        action: None,
        scenarios: scenarios
            .into_iter()
            .map(|(label, facts)| Scenario {
                label,
                facts: with_flags(facts, options),
            })
            .collect(),
        flags: Flags::from_options(options),
        k_overrides: BTreeMap::new(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::degree_report;

    #[test]
    fn every_instance_builds() {
        for name in INSTANCE_NAMES {
            let opts = Options {
                p: (name == "Dp_scenario").then_some(5),
                ..Options::default()
            };
            let inst = get(name, &opts).unwrap();
            inst.table.validate().unwrap();
            if let Some(a) = &inst.action {
                a.validate().unwrap();
            }
            assert!(describe(name).is_some());
        }
    }

    #[test]
    fn bad_requests() {
        assert!(matches!(
            get("nope", &Options::default()),
            Err(Error::UnknownInstance(_))
        ));
        for p in [None, Some(2), Some(9), Some(101)] {
            let opts = Options {
                p,
                ..Options::default()
            };
            assert!(matches!(
                get("Dp_scenario", &opts),
                Err(Error::BadParameter(_))
            ));
        }
        let opts = Options {
            p: Some(3),
            ..Options::default()
        };
        assert!(matches!(
            get("Z2_genus3", &opts),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn dihedral_scenario_bounds() {
        for p in [3u64, 5, 7] {
            let inst = get(
                "Dp_scenario",
                &Options {
                    p: Some(p),
                    ..Options::default()
                },
            )
            .unwrap();
            let r0 = degree_report(&inst.scenarios[0].facts).unwrap();
            assert_eq!(r0.exact, Some(2 * p as u128));
            let r1 = degree_report(&inst.scenarios[1].facts).unwrap();
            assert_eq!((r1.lower, r1.upper), (p as u128, Some(2 * p as u128)));
            let r2 = degree_report(&inst.scenarios[2].facts).unwrap();
            assert_eq!((r2.lower, r2.upper), (1, None));
        }
    }

    #[test]
    fn quaternion_scenario_bounds() {
        let plain = get("Q8_scenario", &Options::default()).unwrap();
        let lowers: Vec<u128> = plain
            .scenarios
            .iter()
            .map(|s| degree_report(&s.facts).unwrap().lower)
            .collect();
        assert_eq!(lowers, vec![8, 4, 4, 4, 1]);
        assert!(plain
            .scenarios
            .iter()
            .all(|s| degree_report(&s.facts).unwrap().upper.is_none()));

        let opts = Options {
            assume_pullback_embedding: true,
            assume_two_point_or_unramified: true,
            ..Options::default()
        };
        let full = get("Q8_scenario", &opts).unwrap();
        let reports: Vec<_> = full
            .scenarios
            .iter()
            .map(|s| degree_report(&s.facts).unwrap())
            .collect();
        assert_eq!(reports[0].exact, Some(8));
        for r in &reports[1..4] {
            assert_eq!((r.lower, r.upper), (4, Some(8)));
        }
        assert_eq!((reports[4].lower, reports[4].upper), (1, Some(2)));
    }

    #[test]
    fn literature_scenario() {
        let inst = get("D4_genus4", &Options::default()).unwrap();
        let r = degree_report(&inst.scenarios[0].facts).unwrap();
        assert_eq!(r.exact, Some(1));
    }
}
