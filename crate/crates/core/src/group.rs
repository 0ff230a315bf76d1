//! Finite groups given by a dense multiplication table.
//!
//! Elements are the indices `0..order`; index 0 is always the identity.
//! Products follow the composition convention `(g * h)(x) = g(h(x))` when a
//! group comes from permutations, which matches left-multiplying matrices
//! acting on column vectors.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, GroupDefect, Result};

/// Default cap on the order of a group generated by permutations.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 10_000;

/// Cayley tables up to this order get an exhaustive associativity check.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, relabeling so the identity is index 0.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(Error::NotAGroup(GroupDefect::NotSquare));
        }
        for (i, row) in table.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x >= n) {
                return Err(Error::NotAGroup(GroupDefect::EntryOutOfRange {
                    row: i,
                    col: j,
                }));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(Error::NotAGroup(GroupDefect::NoIdentity))?;

        // swap the identity into slot 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }

        let mut inv = vec![0; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| mul[x * n + y] == 0 && mul[y * n + x] == 0)
                .ok_or(Error::NotAGroup(GroupDefect::NoInverse {
                    element: relabel(x),
                }))?;
        }

        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b];
                    for c in 0..n {
                        if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                            return Err(Error::NotAGroup(GroupDefect::NotAssociative {
                                a: relabel(a),
                                b: relabel(b),
                                c: relabel(c),
                            }));
                        }
                    }
                }
            }
        }

        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            labels: None,
        })
    }

    /// Like [`FiniteGroup::from_cayley_table`], carrying one label per input
    /// row. Labels follow their elements through the identity relabeling.
    pub fn from_cayley_table_labeled(table: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        if labels.len() != table.len() {
            return Err(Error::Schema(format!(
                "{} labels for a table of size {}",
                labels.len(),
                table.len()
            )));
        }
        let mut group = Self::from_cayley_table(table)?;
        let n = table.len();
        let identity = (0..n).find(|&e| table[e].iter().enumerate().all(|(x, &y)| x == y));
        let mut labels = labels;
        if let Some(e) = identity {
            labels.swap(0, e);
        }
        group.labels = Some(labels);
        Ok(group)
    }

    /// Closes a set of permutations of `0..m` (given as image arrays) under
    /// composition. Elements are numbered in breadth-first order from the
    /// identity, left-multiplying by generators; each element is labeled by
    /// the shortest generator word that reaches it.
    pub fn from_permutation_generators(
        perms: &[Vec<usize>],
        labels: Option<&[String]>,
        cap: usize,
    ) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        for (index, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::NotAPermutation {
                    index,
                    reason: format!("length {} differs from {}", p.len(), degree),
                });
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::NotAPermutation {
                        index,
                        reason: format!("image {x} out of range or repeated"),
                    });
                }
                seen[x] = true;
            }
        }
        if let Some(l) = labels {
            if l.len() != perms.len() {
                return Err(Error::Schema(format!(
                    "{} labels for {} generators",
                    l.len(),
                    perms.len()
                )));
            }
        }
        let gen_label =
            |i: usize| -> String { labels.map_or_else(|| format!("g{}", i + 1), |l| l[i].clone()) };

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, gen) in perms.iter().enumerate() {
                let y: Vec<usize> = elements[x].iter().map(|&i| gen[i]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::ClosureTooLarge { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    let mut word = vec![s];
                    word.extend_from_slice(&words[x]);
                    words.push(word);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut mul = vec![0; n * n];
        let mut buf = vec![0; degree];
        for a in 0..n {
            for b in 0..n {
                for (i, slot) in buf.iter_mut().enumerate() {
                    *slot = elements[a][elements[b][i]];
                }
                mul[a * n + b] = index[&buf];
            }
        }
        let inv = (0..n)
            .map(|a| {
                let mut p = vec![0; degree];
                for (i, &img) in elements[a].iter().enumerate() {
                    p[img] = i;
                }
                index[&p]
            })
            .collect();
        let names: Vec<String> = (0..perms.len()).map(gen_label).collect();
        let labels = words.iter().map(|w| render_word(w, &names)).collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            labels: Some(labels),
        })
    }

    /// Cyclic group of order `n`; element `k` is `g^k`.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n).map(|k| power_label("g", k)).collect();
        Self::trusted(table, labels)
    }

    /// Dihedral group of order `2n`; element `k + n*j` is `r^k s^j`, with
    /// `s r s = r^-1`.
    pub fn dihedral(n: usize) -> Self {
        Self::dihedral_with_names(n, "r", "s")
    }

    pub fn dihedral_with_names(n: usize, rot: &str, refl: &str) -> Self {
        let decode = |x: usize| (x % n, x / n);
        let table = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (ka, ja) = decode(a);
                        let (kb, jb) = decode(b);
                        let k = if ja == 0 { ka + kb } else { ka + n - kb };
                        (k % n) + n * ((ja + jb) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..2 * n)
            .map(|x| {
                let (k, j) = decode(x);
                match (k, j) {
                    (0, 1) => refl.to_string(),
                    (_, 1) => format!("{}{}", power_label(rot, k), refl),
                    _ => power_label(rot, k),
                }
            })
            .collect();
        Self::trusted(table, labels)
    }

    /// Quaternion group, elements ordered `1, -1, i, -i, j, -j, ij, -ij`.
    pub fn quaternion8() -> Self {
        // unit quaternion as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
        fn unit_mul(a: usize, b: usize) -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        }
        let decode = |x: usize| (x % 2 == 1, x / 2);
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ua) = decode(a);
                        let (sb, ub) = decode(b);
                        let (s, u) = unit_mul(ua, ub);
                        2 * u + usize::from(s ^ sa ^ sb)
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "-1", "i", "-i", "j", "-j", "ij", "-ij"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::trusted(table, labels)
    }

    fn trusted(table: Vec<Vec<usize>>, labels: Vec<String>) -> Self {
        let mut g = Self::from_cayley_table(&table).expect("built-in table is a group");
        g.labels = Some(labels);
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Schema(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    /// Finds an element by label, falling back to a decimal index.
    pub fn element_by_label(&self, name: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|s| s == name) {
                return Some(i);
            }
        }
        name.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    /// Conjugacy classes, each sorted, listed by their least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn render_word(word: &[usize], names: &[String]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let sep = if names.iter().all(|n| n.chars().count() == 1) {
        ""
    } else {
        "*"
    };
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        parts.push(power_label(&names[word[i]], j - i));
        i = j;
    }
    parts.join(sep)
}

/// A subgroup, stored as the sorted list of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Smallest subgroup containing `gens`.
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= group.order()) {
            return Err(Error::ElementOutOfRange(g));
        }
        let mut inside = vec![false; group.order()];
        inside[0] = true;
        let mut elements = vec![0];
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in gens {
                let y = group.mul(s, x);
                if !inside[y] {
                    inside[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Ok(Subgroup {
            group: Arc::clone(group),
            elements,
        })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            elements: vec![0],
        }
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Self {
        Subgroup {
            group: Arc::clone(group),
            elements: (0..group.order()).collect(),
        }
    }

    /// Wraps a subset after checking it is a subgroup; `None` otherwise.
    pub fn from_elements(group: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Option<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) || elements.iter().any(|&x| x >= group.order()) {
            return None;
        }
        let closed = elements.iter().all(|&a| {
            elements
                .iter()
                .all(|&b| elements.binary_search(&group.mul(a, b)).is_ok())
        });
        closed.then(|| Subgroup {
            group: Arc::clone(group),
            elements,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_normal(&self) -> bool {
        (0..self.group.order()).all(|g| {
            self.elements
                .iter()
                .all(|&k| self.contains(self.group.conjugate(g, k)))
        })
    }
}
