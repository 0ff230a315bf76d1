//! JSON input documents: parsing into an [`Instance`] and exporting one back.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::ComponentFacts;
use crate::catalog::{Flags, Instance, Scenario};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::IntMatrix;
use crate::rep_theory::{Character, CharacterTable};
use crate::symplectic::{PolarizationType, SymplecticGAction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    /// Labels of one element per conjugacy class, fixing the column order of
    /// `characters`. Defaults to classes ordered by least element index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_representatives: Option<Vec<String>>,
    pub characters: Vec<CharacterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    /// Matrices for generators, keyed by element label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scenarios: Vec<ScenarioSpec>,
    #[serde(default, skip_serializing_if = "FlagSpec::is_empty")]
    pub flags: FlagSpec,
    /// Minimal-class coefficients for decomposition components, by label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub k_overrides: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cayley: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation_generators: Option<Vec<Vec<usize>>>,
    /// Element labels for `cayley`, or generator names for
    /// `permutation_generators`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub degree: u64,
    pub values: Vec<ValueSpec>,
}

/// A character value: an integer, a rational string such as `"-1/2"`, or a
/// polynomial in `z = exp(2 pi i / order)` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueSpec {
    Integer(i64),
    Rational(String),
    Cyclotomic { order: u64, coeffs: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub label: String,
    pub facts: FactsSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactsSpec {
    pub n: usize,
    #[serde(default)]
    pub ptype: Option<Vec<u64>>,
    #[serde(default)]
    pub k: Option<u64>,
    pub kernel_order: u64,
    #[serde(default)]
    pub genus_c: Option<u64>,
    #[serde(default)]
    pub quotient_genus: Option<u64>,
    #[serde(default)]
    pub is_prym_tyurin: bool,
    #[serde(default)]
    pub assume_pullback_embedding: bool,
    #[serde(default)]
    pub assume_abel_prym_pullback_embedding: bool,
    #[serde(default)]
    pub apply_divisor_rule: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    #[serde(default)]
    pub assume_pullback_embedding: bool,
    #[serde(default)]
    pub assume_abel_prym_embedding: bool,
    #[serde(default)]
    pub apply_divisor_rule: bool,
    #[serde(default)]
    pub assume_two_point_or_unramified: bool,
}

impl FlagSpec {
    fn is_empty(&self) -> bool {
        self == &FlagSpec::default()
    }
}

impl From<&Flags> for FlagSpec {
    fn from(f: &Flags) -> Self {
        FlagSpec {
            assume_pullback_embedding: f.assume_pullback_embedding,
            assume_abel_prym_embedding: f.assume_abel_prym_embedding,
            apply_divisor_rule: f.apply_divisor_rule,
            assume_two_point_or_unramified: f.assume_two_point_or_unramified,
        }
    }
}

impl From<&FlagSpec> for Flags {
    fn from(f: &FlagSpec) -> Self {
        Flags {
            assume_pullback_embedding: f.assume_pullback_embedding,
            assume_abel_prym_embedding: f.assume_abel_prym_embedding,
            apply_divisor_rule: f.apply_divisor_rule,
            assume_two_point_or_unramified: f.assume_two_point_or_unramified,
        }
    }
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the group, table, and action.
    pub fn load(&self, max_group_order: usize) -> Result<Instance> {
        let group = Arc::new(self.group.build(max_group_order)?);
        let table = self.table(&group)?;
        table.validate()?;
        let action = match (&self.action, self.genus) {
            (Some(gens), Some(genus)) => Some(load_action(&group, genus, gens)?),
            (None, None) => None,
            (Some(_), None) => return Err(Error::Schema("action given without genus".into())),
            (None, Some(_)) => return Err(Error::Schema("genus given without action".into())),
        };
        let scenarios = self
            .scenarios
            .iter()
            .map(|s| {
                Ok(Scenario {
                    label: s.label.clone(),
                    facts: s.facts.to_facts()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Instance {
            name: self.name.clone().unwrap_or_else(|| "input".into()),
            table,
            action,
            scenarios,
            flags: (&self.flags).into(),
            k_overrides: self.k_overrides.clone(),
            notes: self.notes.clone(),
        })
    }

    fn table(&self, group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
        let classes = group.conjugacy_classes();
        let columns: Vec<usize> = match &self.class_representatives {
            None => (0..classes.len()).collect(),
            Some(reps) => {
                let mut cols = Vec::with_capacity(reps.len());
                for r in reps {
                    let g = group.element_by_label(r).ok_or_else(|| {
                        Error::Schema(format!("unknown class representative {r:?}"))
                    })?;
                    let c = classes
                        .iter()
                        .position(|cl| cl.contains(&g))
                        .expect("classes partition");
                    if cols.contains(&c) {
                        return Err(Error::Schema(format!("class of {r:?} listed twice")));
                    }
                    cols.push(c);
                }
                if cols.len() != classes.len() {
                    return Err(Error::ClassCountMismatch {
                        classes: classes.len(),
                        rows: self.characters.len(),
                        width: cols.len(),
                    });
                }
                cols
            }
        };
        let order = group.exponent() as u64;
        let mut rows = Vec::with_capacity(self.characters.len());
        for ch in &self.characters {
            if ch.values.len() != columns.len() {
                return Err(Error::ClassCountMismatch {
                    classes: classes.len(),
                    rows: self.characters.len(),
                    width: ch.values.len(),
                });
            }
            let mut values = vec![Cyclotomic::zero(order); columns.len()];
            for (v, &c) in ch.values.iter().zip(&columns) {
                values[c] = v.to_cyclotomic(order)?;
            }
            rows.push(Character {
                degree: ch.degree,
                values,
            });
        }
        CharacterTable::new(Arc::clone(group), rows)
    }

    /// Canonical document for an instance: Cayley table with labels, classes
    /// by least element, generator matrices keyed by label.
    pub fn export(instance: &Instance) -> Result<Self> {
        let group = instance.group();
        let labels = (0..group.order()).map(|g| group.label(g)).collect();
        let classes = group.conjugacy_classes();
        let characters = instance
            .table
            .rows()
            .iter()
            .map(|ch| CharacterSpec {
                degree: ch.degree,
                values: ch.values.iter().map(ValueSpec::from_cyclotomic).collect(),
            })
            .collect();
        let (genus, action) = match &instance.action {
            None => (None, None),
            Some(a) => {
                let mut gens = BTreeMap::new();
                for (g, m) in a.generators() {
                    gens.insert(group.label(*g), matrix_to_i64(m)?);
                }
                (Some(a.genus()), Some(gens))
            }
        };
        Ok(InputDocument {
            name: Some(instance.name.clone()),
            group: GroupSpec {
                cayley: Some(group.cayley_table()),
                permutation_generators: None,
                labels: Some(labels),
            },
            class_representatives: Some(classes.iter().map(|c| group.label(c[0])).collect()),
            characters,
            genus,
            action,
            scenarios: instance
                .scenarios
                .iter()
                .map(|s| {
                    Ok(ScenarioSpec {
                        label: s.label.clone(),
                        facts: FactsSpec::from_facts(&s.facts)?,
                    })
                })
                .collect::<Result<_>>()?,
            flags: (&instance.flags).into(),
            k_overrides: instance.k_overrides.clone(),
            notes: instance.notes.clone(),
        })
    }
}

impl GroupSpec {
    fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match (&self.cayley, &self.permutation_generators) {
            (Some(table), None) => {
                if table.len() > cap {
                    return Err(Error::ClosureTooLarge { cap });
                }
                match &self.labels {
                    Some(l) => FiniteGroup::from_cayley_table_labeled(table, l.clone()),
                    None => FiniteGroup::from_cayley_table(table),
                }
            }
            (None, Some(perms)) => {
                FiniteGroup::from_permutation_generators(perms, self.labels.as_deref(), cap)
            }
            _ => Err(Error::Schema(
                "group needs exactly one of cayley or permutation_generators".into(),
            )),
        }
    }
}

impl ValueSpec {
    fn to_cyclotomic(&self, order: u64) -> Result<Cyclotomic> {
        match self {
            ValueSpec::Integer(n) => Ok(Cyclotomic::from_integer(order, *n)),
            ValueSpec::Rational(s) => Ok(Cyclotomic::from_rational(order, parse_rational(s)?)),
            ValueSpec::Cyclotomic { order: m, coeffs } => {
                if *m == 0 || !order.is_multiple_of(*m) {
                    return Err(Error::Schema(format!(
                        "value of order {m} does not embed in order {order}"
                    )));
                }
                let poly = coeffs
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<_>>()?;
                Cyclotomic::from_poly(*m, poly).embed(order)
            }
        }
    }

    fn from_cyclotomic(v: &Cyclotomic) -> Self {
        match v.as_rational() {
            Some(q) if q.is_integer() && q.to_integer().to_i64().is_some() => {
                ValueSpec::Integer(q.to_integer().to_i64().unwrap())
            }
            Some(q) => ValueSpec::Rational(q.to_string()),
            None => ValueSpec::Cyclotomic {
                order: v.order(),
                coeffs: v.coeffs().iter().map(ToString::to_string).collect(),
            },
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Schema(format!("{s:?} is not a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn load_action(
    group: &Arc<FiniteGroup>,
    genus: usize,
    gens: &BTreeMap<String, Vec<Vec<i64>>>,
) -> Result<SymplecticGAction> {
    let mut list = Vec::with_capacity(gens.len());
    for (label, rows) in gens {
        let g = group
            .element_by_label(label)
            .ok_or_else(|| Error::Schema(format!("unknown generator label {label:?}")))?;
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Schema(format!("matrix for {label:?} is ragged")));
        }
        list.push((g, IntMatrix::from_i64(rows)));
    }
    SymplecticGAction::from_generator_matrices(group, genus, list)
}

fn matrix_to_i64(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Schema(format!("matrix entry {x} exceeds 64 bits")))
                })
                .collect()
        })
        .collect()
}

impl FactsSpec {
    fn to_facts(&self) -> Result<ComponentFacts> {
        let ptype = self
            .ptype
            .as_ref()
            .map(|d| PolarizationType::from_u64(d).map_err(|e| Error::Schema(e.to_string())))
            .transpose()?;
        Ok(ComponentFacts {
            n: self.n,
            ptype,
            k: self.k,
            kernel_order: self.kernel_order,
            genus_c: self.genus_c,
            quotient_genus: self.quotient_genus,
            is_prym_tyurin: self.is_prym_tyurin,
            assume_pullback_embedding: self.assume_pullback_embedding,
            assume_abel_prym_pullback_embedding: self.assume_abel_prym_pullback_embedding,
            apply_divisor_rule: self.apply_divisor_rule,
        })
    }

    fn from_facts(f: &ComponentFacts) -> Result<Self> {
        let ptype = f
            .ptype
            .as_ref()
            .map(|t| {
                t.divisors()
                    .iter()
                    .map(|d| {
                        d.to_u64()
                            .ok_or_else(|| Error::Schema(format!("type entry {d} exceeds 64 bits")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(FactsSpec {
            n: f.n,
            ptype,
            k: f.k,
            kernel_order: f.kernel_order,
            genus_c: f.genus_c,
            quotient_genus: f.quotient_genus,
            is_prym_tyurin: f.is_prym_tyurin,
            assume_pullback_embedding: f.assume_pullback_embedding,
            assume_abel_prym_pullback_embedding: f.assume_abel_prym_pullback_embedding,
            apply_divisor_rule: f.apply_divisor_rule,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{get, Options, INSTANCE_NAMES};
    use crate::group::DEFAULT_MAX_GROUP_ORDER;

    #[test]
    fn export_import_export_is_stable() {
        for name in INSTANCE_NAMES {
            let opts = Options {
                p: (name == "Dp_scenario").then_some(7),
                ..Options::default()
            };
            let inst = get(name, &opts).unwrap();
            let doc = InputDocument::export(&inst).unwrap();
            let text = doc.to_json();
            let back = InputDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            let again =
                InputDocument::export(&back.load(DEFAULT_MAX_GROUP_ORDER).unwrap()).unwrap();
            assert_eq!(again.to_json(), text);
        }
    }

    #[test]
    fn permutation_input_with_reordered_classes() {
        // Z2 acting by swapping two points, columns given as (sigma, 1)
        let text = r#"{
            "group": {"permutation_generators": [[1, 0]], "labels": ["s"]},
            "class_representatives": ["s", "1"],
            "characters": [
                {"degree": 1, "values": [1, 1]},
                {"degree": 1, "values": [-1, 1]}
            ],
            "genus": 1,
            "action": {"s": [[-1, 0], [0, -1]]}
        }"#;
        let inst = InputDocument::from_json(text).unwrap().load(100).unwrap();
        let s = inst.group().element_by_label("s").unwrap();
        assert_eq!(inst.table.value(1, s), &Cyclotomic::from_integer(2, -1));
        assert_eq!(inst.action.unwrap().genus(), 1);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            InputDocument::from_json("{"),
            Err(Error::Schema(_))
        ));
        let both = r#"{"group": {}, "characters": []}"#;
        let doc = InputDocument::from_json(both).unwrap();
        assert!(matches!(doc.load(100), Err(Error::Schema(_))));
        let unknown = r#"{"group": {"cayley": [[0]]}, "characters": [{"degree": 1, "values": [1]}],
            "genus": 1, "action": {"x": [[1, 0], [0, 1]]}}"#;
        let doc = InputDocument::from_json(unknown).unwrap();
        assert!(matches!(doc.load(100), Err(Error::Schema(_))));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(
            parse_rational("-3/6").unwrap(),
            Rational::new((-1).into(), 2.into())
        );
    }

    #[test]
    fn cyclotomic_values_round_trip() {
        let z = Cyclotomic::zeta(3);
        let spec = ValueSpec::from_cyclotomic(&z);
        assert_eq!(spec.to_cyclotomic(6).unwrap(), z.embed(6).unwrap());
        assert!(ValueSpec::Cyclotomic {
            order: 4,
            coeffs: vec![]
        }
        .to_cyclotomic(6)
        .is_err());
    }
}
