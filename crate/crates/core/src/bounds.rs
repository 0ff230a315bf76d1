//! Degree calculus for Abel-Prym maps.
//!
//! All arithmetic is exact. Degrees are `u128`; roots use integer `n`-th
//! roots checked by `r^n <= x < (r+1)^n`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::symplectic::PolarizationType;

/// Largest candidate set the divisor rule will build.
pub const MAX_CANDIDATES: usize = 1_000_000;

/// Exponents above this are not factored by trial division.
const MAX_FACTORABLE: u128 = 100_000_000_000_000;

/// Integer `n`-th root `r` with `r^n <= x < (r+1)^n`.
pub fn integer_root(x: &BigUint, n: u32) -> BigUint {
    assert!(n >= 1);
    let r = x.nth_root(n);
    debug_assert!(r.pow(n) <= *x && (&r + 1u32).pow(n) > *x);
    r
}

/// Largest `delta` with `delta^n <= k^n * d^(n-1)`, the integer form of
/// `delta <= k*d / d^(1/n)`.
pub fn theorem_a_upper(k: u64, d: u64, n: u32) -> u128 {
    assert!(k >= 1 && d >= 1 && n >= 1);
    let x = BigUint::from(k).pow(n) * BigUint::from(d).pow(n - 1);
    integer_root(&x, n).to_u128().expect("root is at most k*d")
}

/// `k^n * d^(n-1) >= 1`, the integer form of `k >= d^(1/n) / d`.
pub fn debarre_class_check(k: u64, d: u64, n: u32) -> bool {
    BigUint::from(k).pow(n) * BigUint::from(d).pow(n.saturating_sub(1)) >= BigUint::one()
}

pub fn dim1_exact(e: u128) -> u128 {
    e
}

/// Whether `deg_f` is a perfect `g_prime`-th power. When it is not, the
/// pulled-back polarization along a cyclic etale cover of that degree is not
/// a multiple of a principal one.
pub fn etale_power_obstruction(deg_f: u128, g_prime: u32) -> bool {
    let x = BigUint::from(deg_f);
    integer_root(&x, g_prime).pow(g_prime) == x
}

pub fn multiplicativity_check(e: u128, e_prime: u128, rel: u128) -> bool {
    e_prime.checked_mul(rel) == Some(e)
}

/// `R = (2 g_C - 2) - delta (2n - 2)`, the ramification degree forced by
/// Riemann-Hurwitz if the image were a smooth curve of genus `n`.
pub fn ramification_degree(genus_c: u64, n: u64, delta: u128) -> i128 {
    (2 * genus_c as i128 - 2) - delta as i128 * (2 * n as i128 - 2)
}

/// Drops `k` from `candidates` when a degree-`k` map onto a smooth genus-`n`
/// curve would need negative ramification. Returns the pruned set and `R`.
pub fn rh_prune(candidates: &[u128], genus_c: u64, n: u64, k: u128) -> (Vec<u128>, i128) {
    let r = ramification_degree(genus_c, n, k);
    let kept = candidates
        .iter()
        .copied()
        .filter(|&d| !(d == k && r < 0))
        .collect();
    (kept, r)
}

/// Divisors of `e` in `[lo, hi]`, ascending.
pub fn divisors_in_range(e: u128, lo: u128, hi: u128) -> Result<Vec<u128>> {
    if e > MAX_FACTORABLE {
        return Err(Error::InconsistentFacts(format!(
            "exponent {e} is too large for divisor enumeration"
        )));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut q = 1u128;
    while q * q <= e {
        if e.is_multiple_of(q) {
            small.push(q);
            if q * q != e {
                large.push(e / q);
            }
        }
        q += 1;
    }
    large.reverse();
    let all: Vec<u128> = small
        .into_iter()
        .chain(large)
        .filter(|d| (lo..=hi).contains(d))
        .collect();
    if all.len() > MAX_CANDIDATES {
        return Err(Error::InconsistentFacts(
            "candidate set exceeds the cap".into(),
        ));
    }
    Ok(all)
}

/// Everything known about one component, plus the hypotheses in force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentFacts {
    pub n: usize,
    /// Induced polarization type; may be unknown for scenario components
    /// that are not Prym-Tyurin.
    pub ptype: Option<PolarizationType>,
    /// Coefficient of the minimal class; defaults to `e` for Prym-Tyurin
    /// components.
    pub k: Option<u64>,
    pub kernel_order: u64,
    pub genus_c: Option<u64>,
    pub quotient_genus: Option<u64>,
    pub is_prym_tyurin: bool,
    pub assume_pullback_embedding: bool,
    pub assume_abel_prym_pullback_embedding: bool,
    pub apply_divisor_rule: bool,
}

impl ComponentFacts {
    /// Facts for a Prym-Tyurin component of exponent `e` and dimension `n`.
    pub fn prym_tyurin(n: usize, e: u64, kernel_order: u64) -> Self {
        ComponentFacts {
            n,
            ptype: Some(PolarizationType::from_u64(&vec![e; n]).expect("constant type")),
            k: None,
            kernel_order,
            genus_c: None,
            quotient_genus: None,
            is_prym_tyurin: true,
            assume_pullback_embedding: false,
            assume_abel_prym_pullback_embedding: false,
            apply_divisor_rule: false,
        }
    }

    /// Facts for a component known only through its kernel.
    pub fn kernel_only(n: usize, kernel_order: u64) -> Self {
        ComponentFacts {
            ptype: None,
            is_prym_tyurin: false,
            ..Self::prym_tyurin(n, 1, kernel_order)
        }
    }

    /// Exponent of the stated type, if any.
    pub fn exponent(&self) -> Result<Option<u128>> {
        self.ptype
            .as_ref()
            .map(|t| big_to_u128(&t.exponent()))
            .transpose()
    }

    /// Names of the hypotheses switched on.
    pub fn assumptions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.assume_pullback_embedding {
            out.push("pullback_embedding");
        }
        if self.assume_abel_prym_pullback_embedding {
            out.push("abel_prym_pullback_embedding");
        }
        if self.apply_divisor_rule {
            out.push("divisor_rule");
        }
        out
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::TrivialComponent);
        }
        let bad = |msg: String| Err(Error::InconsistentFacts(msg));
        if self.kernel_order == 0 {
            return bad("kernel order must be positive".into());
        }
        if let Some(t) = &self.ptype {
            if t.dim() != self.n {
                return bad(format!("type {t} does not have {} entries", self.n));
            }
            if self.is_prym_tyurin && !t.is_prym_tyurin() {
                return bad(format!("type {t} is not a multiple of a principal type"));
            }
        } else if self.is_prym_tyurin {
            return bad("a Prym-Tyurin component needs its type".into());
        }
        if self.k == Some(0) {
            return bad("k must be positive".into());
        }
        if let Some(q) = self.quotient_genus {
            if q < self.n as u64 {
                return bad(format!(
                    "quotient genus {q} is below the dimension {}",
                    self.n
                ));
            }
        }
        Ok(())
    }
}

fn big_to_u128(x: &num_bigint::BigInt) -> Result<u128> {
    x.to_u128()
        .ok_or_else(|| Error::InconsistentFacts(format!("{x} does not fit a degree")))
}

/// One applied rule with the numbers it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub rule: &'static str,
    pub citation: &'static str,
    pub numbers: BTreeMap<String, String>,
}

impl TraceRecord {
    fn new(rule: &'static str, citation: &'static str, numbers: &[(&str, String)]) -> Self {
        TraceRecord {
            rule,
            citation,
            numbers: numbers
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub lower: u128,
    pub upper: Option<u128>,
    pub candidates: Option<Vec<u128>>,
    pub exact: Option<u128>,
    pub assumptions: Vec<&'static str>,
    pub trace: Vec<TraceRecord>,
}

/// Runs the rule pipeline on one component.
pub fn degree_report(facts: &ComponentFacts) -> Result<BoundReport> {
    facts.check()?;
    let n = facts.n as u32;
    let kernel = facts.kernel_order as u128;
    let e = facts.exponent()?;
    let mut trace = Vec::new();
    let inconsistent = |msg: String| Error::InconsistentFacts(msg);

    let lower = kernel;
    trace.push(TraceRecord::new(
        "kernel_lower_bound",
        "the Abel-Prym map factors through the quotient by the representation kernel",
        &[("kernel_order", kernel.to_string())],
    ));

    let mut exact: Option<u128> = None;
    let settle = |value: u128, exact: &mut Option<u128>| -> Result<()> {
        match *exact {
            Some(prev) if prev != value => Err(inconsistent(format!(
                "rules give different exact degrees {prev} and {value}"
            ))),
            _ => {
                *exact = Some(value);
                Ok(())
            }
        }
    };

    if facts.n == 1 {
        if let Some(e) = e {
            trace.push(TraceRecord::new(
                "dimension_one_exact",
                "on an elliptic component the degree equals the exponent",
                &[("exponent", e.to_string())],
            ));
            settle(dim1_exact(e), &mut exact)?;
        }
    }

    let mut upper = None;
    if let Some(t) = &facts.ptype {
        let (k, d) = if facts.is_prym_tyurin {
            let e = e.expect("checked above") as u64;
            if facts.k.is_some_and(|k| k != e) {
                return Err(inconsistent(format!(
                    "k = {} differs from the exponent {e} of a Prym-Tyurin component",
                    facts.k.unwrap()
                )));
            }
            (Some(e), 1u64)
        } else {
            let degree = big_to_u128(&t.degree())?;
            (
                facts.k,
                u64::try_from(degree).map_err(|_| inconsistent("degree too large".into()))?,
            )
        };
        if let Some(k) = k {
            if !debarre_class_check(k, d, n) {
                return Err(inconsistent(format!(
                    "k = {k} fails the curve class inequality"
                )));
            }
            let bound = theorem_a_upper(k, d, n);
            trace.push(TraceRecord::new(
                "class_upper_bound",
                "degree bound for a curve whose image class is k times the minimal class",
                &[
                    ("k", k.to_string()),
                    ("d", d.to_string()),
                    ("n", n.to_string()),
                    ("upper", bound.to_string()),
                ],
            ));
            upper = Some(bound);
        }
    }
    if let Some(u) = upper {
        if lower > u {
            return Err(inconsistent(format!(
                "kernel order {lower} exceeds the upper bound {u}"
            )));
        }
    }

    if facts.is_prym_tyurin {
        let e = e.expect("checked above");
        if e == kernel {
            trace.push(TraceRecord::new(
                "normalization_case",
                "exponent equal to the kernel order makes the induced map a normalization",
                &[
                    ("exponent", e.to_string()),
                    ("kernel_order", kernel.to_string()),
                ],
            ));
            settle(kernel, &mut exact)?;
        }
        if facts.assume_pullback_embedding {
            if e % kernel != 0 {
                return Err(inconsistent(format!(
                    "kernel order {kernel} does not divide the exponent {e}"
                )));
            }
            let rel = e / kernel;
            let holds = multiplicativity_check(e, kernel, rel);
            trace.push(TraceRecord::new(
                "quotient_exponent",
                "with an embedding pullback the component is Prym-Tyurin for the quotient curve",
                &[
                    ("exponent", e.to_string()),
                    ("kernel_order", kernel.to_string()),
                    ("relative_exponent", rel.to_string()),
                    ("multiplicative", holds.to_string()),
                ],
            ));
        }
    }

    let mut candidates = None;
    if facts.apply_divisor_rule && facts.is_prym_tyurin {
        let e = e.expect("checked above");
        let hi = upper.unwrap_or(e);
        let set = divisors_in_range(e, lower, hi)?;
        trace.push(TraceRecord::new(
            "divisor_rule",
            "the degree of the Abel-Prym map divides the exponent",
            &[
                ("exponent", e.to_string()),
                ("candidates", render_set(&set)),
            ],
        ));
        candidates = Some(set);
    }

    if facts.assume_abel_prym_pullback_embedding && facts.is_prym_tyurin {
        if let (Some(set), Some(genus_c)) = (candidates.as_ref(), facts.genus_c) {
            let k = e.expect("checked above");
            let (kept, r) = rh_prune(set, genus_c, facts.n as u64, k);
            trace.push(TraceRecord::new(
                "riemann_hurwitz_prune",
                "degree k forces a smooth image of genus n; Riemann-Hurwitz then needs R >= 0",
                &[
                    ("genus_C", genus_c.to_string()),
                    ("n", facts.n.to_string()),
                    ("k", k.to_string()),
                    ("R", r.to_string()),
                    ("candidates", render_set(&kept)),
                ],
            ));
            candidates = Some(kept);
        }
    }

    if let Some(set) = &candidates {
        if let Some(x) = exact {
            if !set.contains(&x) {
                return Err(inconsistent(format!("exact degree {x} is not a candidate")));
            }
            candidates = Some(vec![x]);
        } else {
            match set.as_slice() {
                [] => return Err(inconsistent("no feasible degree remains".into())),
                [only] => {
                    trace.push(TraceRecord::new(
                        "single_candidate",
                        "exactly one feasible degree remains",
                        &[("degree", only.to_string())],
                    ));
                    exact = Some(*only);
                }
                _ => {}
            }
        }
    }
    if let Some(x) = exact {
        if x < lower || upper.is_some_and(|u| x > u) {
            return Err(inconsistent(format!(
                "exact degree {x} lies outside the bounds"
            )));
        }
    }

    Ok(BoundReport {
        lower,
        upper,
        candidates,
        exact,
        assumptions: facts.assumptions(),
        trace,
    })
}

fn render_set(xs: &[u128]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}
