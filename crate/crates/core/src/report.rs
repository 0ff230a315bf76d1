//! Report documents: decomposition records, bound reports with their traces,
//! and a plain-text rendering. Every number is rendered as a string.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{degree_report, BoundReport, ComponentFacts};
use crate::catalog::Instance;
use crate::error::Result;
use crate::symplectic::{isotypical_decomposition, Decomposition, IsotypicalComponent};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub instance: String,
    pub assumptions: Vec<String>,
    pub validation: Validation,
    pub global: Option<GlobalRecord>,
    pub components: Vec<ComponentRecord>,
    pub scenarios: Vec<ScenarioRecord>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validation {
    pub group: String,
    pub character_table: String,
    pub action: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalRecord {
    pub genus: String,
    pub group_order: String,
    pub component_count: String,
    pub sum_index: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentRecord {
    pub index: String,
    pub label: String,
    pub characters: Vec<String>,
    pub idempotent: String,
    pub multiplier: String,
    pub dim: String,
    #[serde(rename = "type")]
    pub ptype: Vec<String>,
    pub degree: String,
    pub exponent: String,
    pub kernel_order: String,
    pub kernel: Vec<String>,
    pub quotient_genus: String,
    pub is_prym_tyurin: bool,
    pub lattice_basis: Vec<Vec<String>>,
    pub bounds: Option<BoundRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioRecord {
    pub label: String,
    pub facts: FactsRecord,
    pub bounds: BoundRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactsRecord {
    pub n: String,
    #[serde(rename = "type")]
    pub ptype: Option<Vec<String>>,
    pub k: Option<String>,
    pub kernel_order: String,
    pub genus_c: Option<String>,
    pub quotient_genus: Option<String>,
    pub is_prym_tyurin: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub lower: String,
    pub upper: Option<String>,
    pub candidates: Option<Vec<String>>,
    pub exact: Option<String>,
    pub assumptions: Vec<String>,
    pub trace: Vec<TraceOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceOut {
    pub rule: String,
    pub citation: String,
    pub numbers: BTreeMap<String, String>,
}

/// The part of a report that `bounds` prints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsDocument {
    pub instance: String,
    pub assumptions: Vec<String>,
    pub components: Vec<LabeledBounds>,
    pub scenarios: Vec<LabeledBounds>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledBounds {
    pub label: String,
    pub bounds: BoundRecord,
}

impl From<&BoundReport> for BoundRecord {
    fn from(r: &BoundReport) -> Self {
        BoundRecord {
            lower: r.lower.to_string(),
            upper: r.upper.map(|u| u.to_string()),
            candidates: r
                .candidates
                .as_ref()
                .map(|c| c.iter().map(ToString::to_string).collect()),
            exact: r.exact.map(|x| x.to_string()),
            assumptions: r.assumptions.iter().map(|s| s.to_string()).collect(),
            trace: r
                .trace
                .iter()
                .map(|t| TraceOut {
                    rule: t.rule.to_string(),
                    citation: t.citation.to_string(),
                    numbers: t.numbers.clone(),
                })
                .collect(),
        }
    }
}

impl From<&ComponentFacts> for FactsRecord {
    fn from(f: &ComponentFacts) -> Self {
        FactsRecord {
            n: f.n.to_string(),
            ptype: f
                .ptype
                .as_ref()
                .map(|t| t.divisors().iter().map(ToString::to_string).collect()),
            k: f.k.map(|k| k.to_string()),
            kernel_order: f.kernel_order.to_string(),
            genus_c: f.genus_c.map(|g| g.to_string()),
            quotient_genus: f.quotient_genus.map(|g| g.to_string()),
            is_prym_tyurin: f.is_prym_tyurin,
        }
    }
}

pub fn component_label(c: &IsotypicalComponent) -> String {
    format!("A{}", c.class_index)
}

/// Facts for a nontrivial decomposition component under the instance flags.
pub fn component_facts(
    instance: &Instance,
    decomposition: &Decomposition,
    c: &IsotypicalComponent,
) -> ComponentFacts {
    let flags = &instance.flags;
    ComponentFacts {
        n: c.dim,
        ptype: Some(c.ptype.clone()),
        k: instance.k_overrides.get(&component_label(c)).copied(),
        kernel_order: c.kernel_order() as u64,
        genus_c: Some(decomposition.genus as u64),
        quotient_genus: Some(c.quotient_genus as u64),
        is_prym_tyurin: c.is_prym_tyurin,
        assume_pullback_embedding: flags.assume_pullback_embedding,
        assume_abel_prym_pullback_embedding: flags.assume_abel_prym_embedding,
        apply_divisor_rule: flags.apply_divisor_rule,
    }
}

/// Decomposes (when the instance has an action) and runs the degree
/// calculus on every nontrivial component and every scenario.
pub fn build_report(instance: &Instance) -> Result<ReportDocument> {
    let group = instance.group();
    let decomposition = instance
        .action
        .as_ref()
        .map(|a| isotypical_decomposition(a, &instance.table))
        .transpose()?;
    let mut components = Vec::new();
    if let Some(d) = &decomposition {
        for c in &d.components {
            let bounds = if c.is_trivial() {
                None
            } else {
                Some(BoundRecord::from(&degree_report(&component_facts(
                    instance, d, c,
                ))?))
            };
            components.push(ComponentRecord {
                index: c.class_index.to_string(),
                label: component_label(c),
                characters: c.class.rows.iter().map(ToString::to_string).collect(),
                idempotent: c.idempotent.render(),
                multiplier: c.multiplier.to_string(),
                dim: c.dim.to_string(),
                ptype: c.ptype.divisors().iter().map(ToString::to_string).collect(),
                degree: c.ptype.degree().to_string(),
                exponent: c.exponent.to_string(),
                kernel_order: c.kernel_order().to_string(),
                kernel: c
                    .kernel
                    .elements()
                    .iter()
                    .map(|&g| group.label(g))
                    .collect(),
                quotient_genus: c.quotient_genus.to_string(),
                is_prym_tyurin: c.is_prym_tyurin,
                lattice_basis: c
                    .lattice
                    .basis()
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
                bounds,
            });
        }
    }
    let scenarios = instance
        .scenarios
        .iter()
        .map(|s| {
            Ok(ScenarioRecord {
                label: s.label.clone(),
                facts: FactsRecord::from(&s.facts),
                bounds: BoundRecord::from(&degree_report(&s.facts)?),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ReportDocument {
        instance: instance.name.clone(),
        assumptions: instance
            .flags
            .names()
            .iter()
            .map(|s| s.to_string())
            .collect(),
        validation: Validation {
            group: "ok".into(),
            character_table: "ok".into(),
            action: if instance.action.is_some() {
                "ok"
            } else {
                "absent"
            }
            .into(),
        },
        global: decomposition.as_ref().map(|d| GlobalRecord {
            genus: d.genus.to_string(),
            group_order: group.order().to_string(),
            component_count: d.components.len().to_string(),
            sum_index: d.sum_index.to_string(),
        }),
        components,
        scenarios,
        notes: instance.notes.clone(),
    })
}

impl ReportDocument {
    pub fn bounds_only(&self) -> BoundsDocument {
        BoundsDocument {
            instance: self.instance.clone(),
            assumptions: self.assumptions.clone(),
            components: self
                .components
                .iter()
                .filter_map(|c| {
                    c.bounds.as_ref().map(|b| LabeledBounds {
                        label: c.label.clone(),
                        bounds: b.clone(),
                    })
                })
                .collect(),
            scenarios: self
                .scenarios
                .iter()
                .map(|s| LabeledBounds {
                    label: s.label.clone(),
                    bounds: s.bounds.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance: {}", self.instance);
        let _ = writeln!(out, "assumptions: {}", list_or_none(&self.assumptions));
        let v = &self.validation;
        let _ = writeln!(
            out,
            "validation: group {}, character table {}, action {}",
            v.group, v.character_table, v.action
        );
        if let Some(g) = &self.global {
            let _ = writeln!(
                out,
                "genus {}, group order {}, {} components, sum index {}",
                g.genus, g.group_order, g.component_count, g.sum_index
            );
        }
        for c in &self.components {
            let _ = writeln!(out);
            let _ = writeln!(out, "{} (characters {})", c.label, c.characters.join(","));
            let _ = writeln!(out, "  idempotent: {}", c.idempotent);
            if c.dim == "0" {
                let _ = writeln!(out, "  trivial");
                continue;
            }
            let _ = writeln!(
                out,
                "  dim {}, type ({}), degree {}, exponent {}, prym-tyurin {}",
                c.dim,
                c.ptype.join(","),
                c.degree,
                c.exponent,
                yes_no(c.is_prym_tyurin)
            );
            let _ = writeln!(
                out,
                "  kernel order {} {{{}}}, quotient genus {}",
                c.kernel_order,
                c.kernel.join(","),
                c.quotient_genus
            );
            for row in &c.lattice_basis {
                let _ = writeln!(out, "  basis [{}]", row.join(" "));
            }
            if let Some(b) = &c.bounds {
                render_bounds(&mut out, b);
            }
        }
        for s in &self.scenarios {
            let _ = writeln!(out);
            let ptype = s
                .facts
                .ptype
                .as_ref()
                .map_or("unknown".to_string(), |t| format!("({})", t.join(",")));
            let _ = writeln!(
                out,
                "scenario {}: n {}, type {}, kernel order {}, prym-tyurin {}",
                s.label,
                s.facts.n,
                ptype,
                s.facts.kernel_order,
                yes_no(s.facts.is_prym_tyurin)
            );
            render_bounds(&mut out, &s.bounds);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out);
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        out
    }
}

impl BoundsDocument {
    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance: {}", self.instance);
        let _ = writeln!(out, "assumptions: {}", list_or_none(&self.assumptions));
        for (kind, list) in [
            ("component", &self.components),
            ("scenario", &self.scenarios),
        ] {
            for item in list {
                let _ = writeln!(out, "{kind} {}", item.label);
                render_bounds(&mut out, &item.bounds);
            }
        }
        out
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn render_bounds(out: &mut String, b: &BoundRecord) {
    let _ = writeln!(
        out,
        "  degree: lower {}, upper {}, exact {}",
        b.lower,
        b.upper.as_deref().unwrap_or("-"),
        b.exact.as_deref().unwrap_or("-")
    );
    if let Some(c) = &b.candidates {
        let _ = writeln!(out, "  candidates: {{{}}}", c.join(","));
    }
    for t in &b.trace {
        let numbers: Vec<String> = t.numbers.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "  - {}: {}", t.rule, numbers.join(" "));
    }
}

fn list_or_none(xs: &[String]) -> String {
    if xs.is_empty() {
        "none".into()
    } else {
        xs.join(", ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
