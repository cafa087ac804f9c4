//! Permutation groups on root indices, subgroup enumeration, and Galois's
//! arrangements: rows of the array, arrangement groups, and their
//! substitution groups.
//!
//! Conventions. A [`Permutation`] maps index `i` to `images[i]`, and
//! `a.compose(&b)` is `a` after `b`. An [`Arrangement`] lists, position by
//! position, which root letter sits there. The group acts on arrangements on
//! the left by `(s . base)(i) = base(s^-1(i))`, so `(s t) . base = s . (t . base)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest group order the enumeration routines accept.
pub const MAX_GROUP_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("permutations act on different numbers of letters: {0} and {1}")]
    MixedDegree(usize, usize),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("element set is not closed under composition")]
    NotClosed,
    #[error("arrangement closure fails: the substitution taking {alpha} to {beta} sends {gamma} outside the set")]
    NotArrangementGroup {
        alpha: Arrangement,
        beta: Arrangement,
        gamma: Arrangement,
    },
    #[error("empty arrangement set")]
    EmptyArrangementGroup,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::InvalidPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds from zero-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(GroupError::InvalidPermutation(n));
                }
                images[a] = b;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        let mut transpositions = 0;
        for start in 0..self.images.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// Cycle notation with one-based letters; `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push((i + 1).to_string());
                i = self.images[i];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.cycle_string())
    }
}

/// A permutation group stored as its sorted element list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            elements: vec![Permutation::identity(n)],
        }
    }

    /// Validates that `elements` is a group.
    pub fn from_elements(
        n: usize,
        elements: impl IntoIterator<Item = Permutation>,
    ) -> Result<Self, GroupError> {
        let set: BTreeSet<Permutation> = elements.into_iter().collect();
        for p in &set {
            if p.degree() != n {
                return Err(GroupError::MixedDegree(n, p.degree()));
            }
        }
        if !set.contains(&Permutation::identity(n)) {
            return Err(GroupError::NotClosed);
        }
        for a in &set {
            if !set.contains(&a.inverse()) {
                return Err(GroupError::NotClosed);
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(GroupError::NotClosed);
                }
            }
        }
        Ok(PermGroup {
            degree: n,
            elements: set.into_iter().collect(),
        })
    }

    pub fn symmetric(n: usize) -> Self {
        let mut elements = Vec::new();
        permutations_of(&mut (0..n).collect::<Vec<_>>(), 0, &mut elements);
        elements.sort();
        PermGroup {
            degree: n,
            elements,
        }
    }

    pub fn alternating(n: usize) -> Self {
        let s = PermGroup::symmetric(n);
        PermGroup {
            degree: n,
            elements: s
                .elements
                .into_iter()
                .filter(Permutation::is_even)
                .collect(),
        }
    }

    /// `{(), (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}`.
    pub fn klein_four() -> Self {
        let gens = [
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid"),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("valid"),
        ];
        closure(4, &gens).expect("same degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|p| other.contains(p))
    }

    /// Left cosets `s H` of `h` in `self`, each represented by its smallest
    /// element, sorted by representative.
    pub fn left_cosets(
        &self,
        h: &PermGroup,
    ) -> Result<Vec<(Permutation, Vec<Permutation>)>, GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotSubgroup);
        }
        let mut covered = BTreeSet::new();
        let mut out = Vec::new();
        for s in &self.elements {
            if covered.contains(s) {
                continue;
            }
            let coset: Vec<Permutation> = h.elements.iter().map(|t| s.compose(t)).collect();
            covered.extend(coset.iter().cloned());
            let rep = coset.iter().min().expect("nonempty coset").clone();
            out.push((rep, coset));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    pub fn cycle_strings(&self) -> Vec<String> {
        self.elements
            .iter()
            .map(Permutation::cycle_string)
            .collect()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.cycle_strings().join(", "))
    }
}

fn permutations_of(items: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == items.len() {
        out.push(Permutation {
            images: items.clone(),
        });
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations_of(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Smallest group on `n` letters containing `generators`.
pub fn closure(n: usize, generators: &[Permutation]) -> Result<PermGroup, GroupError> {
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(GroupError::MixedDegree(n, g.degree()));
    }
    let id = Permutation::identity(n);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(PermGroup {
        degree: n,
        elements: seen.into_iter().collect(),
    })
}

/// Every subgroup of `g` exactly once, sorted by order and then by element
/// list. Each subgroup of a group of order at most 24 is generated by at most
/// two elements; three-element generating sets are closed as well.
pub fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>, GroupError> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(GroupError::OrderCap {
            order: g.order(),
            cap: MAX_GROUP_ORDER,
        });
    }
    let n = g.degree();
    let gens: Vec<&Permutation> = g.elements.iter().filter(|p| !p.is_identity()).collect();
    let mut found: BTreeSet<PermGroup> = BTreeSet::from([PermGroup::trivial(n)]);
    for i in 0..gens.len() {
        let ci = closure(n, &[gens[i].clone()])?;
        found.insert(ci);
        for j in i + 1..gens.len() {
            let cij = closure(n, &[gens[i].clone(), gens[j].clone()])?;
            for k in j + 1..gens.len() {
                if cij.contains(gens[k]) {
                    continue;
                }
                found.insert(closure(
                    n,
                    &[gens[i].clone(), gens[j].clone(), gens[k].clone()],
                )?);
            }
            found.insert(cij);
        }
    }
    let mut out: Vec<PermGroup> = found.into_iter().collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(out)
}

/// One row of the array: `order[i]` is the root letter at position `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrangement {
    order: Vec<usize>,
}

impl Arrangement {
    pub fn new(order: Vec<usize>) -> Result<Self, GroupError> {
        Permutation::new(order.clone())?;
        Ok(Arrangement { order })
    }

    pub fn identity(n: usize) -> Self {
        Arrangement {
            order: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The arrangement read as the permutation position -> letter.
    pub fn as_permutation(&self) -> Permutation {
        Permutation {
            images: self.order.clone(),
        }
    }

    /// `s . self`, with `(s . base)(i) = base(s^-1(i))`.
    pub fn acted_on_by(&self, s: &Permutation) -> Arrangement {
        let inv = s.inverse();
        Arrangement {
            order: (0..self.order.len())
                .map(|i| self.order[inv.apply(i)])
                .collect(),
        }
    }

    /// Relabels letters by `phi`.
    pub fn substitute(&self, phi: &Permutation) -> Arrangement {
        Arrangement {
            order: self.order.iter().map(|&x| phi.apply(x)).collect(),
        }
    }

    /// Letters `a, b, c, ...`.
    pub fn letters(&self) -> String {
        self.order
            .iter()
            .map(|&i| char::from(b'a' + i as u8).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letters().replace(' ', ","))
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The letter substitution taking arrangement `alpha` to `beta`.
pub fn transition(alpha: &Arrangement, beta: &Arrangement) -> Permutation {
    let mut images = vec![0; alpha.len()];
    for (a, b) in alpha.order.iter().zip(&beta.order) {
        images[*a] = *b;
    }
    Permutation { images }
}

/// A set of arrangements closed under its own transition substitutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementGroup {
    rows: Vec<Arrangement>,
}

impl ArrangementGroup {
    /// Validates the closure property, reporting a witnessing triple.
    pub fn new(rows: Vec<Arrangement>) -> Result<Self, GroupError> {
        let Some(first) = rows.first() else {
            return Err(GroupError::EmptyArrangementGroup);
        };
        let n = first.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(GroupError::MixedDegree(n, r.len()));
        }
        let set: BTreeSet<&Arrangement> = rows.iter().collect();
        for alpha in &rows {
            for beta in &rows {
                let phi = transition(alpha, beta);
                for gamma in &rows {
                    if !set.contains(&gamma.substitute(&phi)) {
                        return Err(GroupError::NotArrangementGroup {
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            gamma: gamma.clone(),
                        });
                    }
                }
            }
        }
        let mut rows = rows;
        let mut seen = BTreeSet::new();
        rows.retain(|r| seen.insert(r.clone()));
        Ok(ArrangementGroup { rows })
    }

    pub fn rows(&self) -> &[Arrangement] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, a: &Arrangement) -> bool {
        self.rows.contains(a)
    }
}

/// `Pi(G)`: all transition substitutions between rows of `ag`.
pub fn substitution_group(ag: &ArrangementGroup) -> Result<PermGroup, GroupError> {
    let checked = ArrangementGroup::new(ag.rows.clone())?;
    let n = checked.rows[0].len();
    let subs: BTreeSet<Permutation> = checked
        .rows
        .iter()
        .flat_map(|a| checked.rows.iter().map(move |b| transition(a, b)))
        .collect();
    PermGroup::from_elements(n, subs)
}

/// One block of the array: the rows `s t . base` for `t` in `H`.
#[derive(Clone, Debug)]
pub struct ArrangementBlock {
    /// Smallest element of the coset `s H`.
    pub representative: Permutation,
    pub arrangements: ArrangementGroup,
    /// `Pi(block) = c H c^-1` with `c` this permutation (the base read as
    /// position -> letter).
    pub conjugator: Permutation,
}

/// The `|G|` arrangements `s . base` split into `[G:H]` arrangement groups,
/// one per left coset of `h`.
pub fn arrangement_array(
    g: &PermGroup,
    h: &PermGroup,
    base: &Arrangement,
) -> Result<Vec<ArrangementBlock>, GroupError> {
    if base.len() != g.degree() {
        return Err(GroupError::MixedDegree(g.degree(), base.len()));
    }
    g.left_cosets(h)?
        .into_iter()
        .map(|(rep, coset)| {
            let rows = coset.iter().map(|s| base.acted_on_by(s)).collect();
            Ok(ArrangementBlock {
                representative: rep,
                arrangements: ArrangementGroup::new(rows)?,
                conjugator: base.as_permutation(),
            })
        })
        .collect()
}

/// Conjugate `c H c^-1`.
pub fn conjugate(h: &PermGroup, c: &Permutation) -> PermGroup {
    let ci = c.inverse();
    PermGroup::from_elements(
        h.degree(),
        h.elements.iter().map(|t| c.compose(t).compose(&ci)),
    )
    .expect("conjugate of a group is a group")
}
