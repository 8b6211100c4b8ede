//! Finite groups as validated Cayley tables, with subgroup, conjugacy and
//! quotient machinery.
//!
//! Elements are plain indices `0..order`. Every construction path ends in
//! [`FiniteGroup::from_table`], which checks the Latin-square, identity,
//! inverse and associativity axioms and relabels so that index 0 is the
//! identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::permutation::Permutation;

/// Index of an element inside its [`FiniteGroup`].
pub type Element = usize;

/// Groups up to this order get the full O(n³) associativity scan; larger
/// ones are checked against a generating set only.
pub const FULL_ASSOCIATIVITY_SCAN_MAX: usize = 64;

/// Default cap for subgroup enumeration and permutation closure.
pub const DEFAULT_ORDER_CAP: usize = 64;

/// The identity always sits at this index after construction.
pub const IDENTITY: Element = 0;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inverses: Vec<Element>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and builds the group.
    ///
    /// `table[a][b]` is the index of `a·b`. If the identity is not at index 0
    /// the elements are relabelled by swapping it with 0.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::build(table, None)
    }

    pub fn from_table_with_labels(
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        Self::build(table, Some(labels))
    }

    fn build(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(GroupError::LabelCount {
                    found: l.len(),
                    order: n,
                });
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::DimensionMismatch {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
            }
            table.extend_from_slice(row);
        }
        check_latin(n, &table)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or(GroupError::NoInverse { element: a })?;
            inverses[a] = b;
        }
        check_associative(n, &table)?;

        let mut group = FiniteGroup {
            order: n,
            table,
            inverses,
            labels,
        };
        if identity != IDENTITY {
            group = group.swap_labels(IDENTITY, identity);
        }
        Ok(group)
    }

    fn swap_labels(self, x: usize, y: usize) -> Self {
        let n = self.order;
        let s = |a: usize| {
            if a == x {
                y
            } else if a == y {
                x
            } else {
                a
            }
        };
        let mut table = vec![0; n * n];
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[s(a)] = s(self.inverses[a]);
            for b in 0..n {
                table[s(a) * n + s(b)] = s(self.table[a * n + b]);
            }
        }
        let labels = self.labels.map(|mut l| {
            l.swap(x, y);
            l
        });
        FiniteGroup {
            order: n,
            table,
            inverses,
            labels,
        }
    }

    /// Closure of the generators under composition, as a Cayley table.
    ///
    /// Element 0 is the identity permutation; the rest appear in breadth-first
    /// order of left multiplication by the generators. The product `a·b` is
    /// the composition "apply `b`, then `a`".
    pub fn from_permutations(
        degree: usize,
        generators: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    index,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let p = g.compose(&elements[next]);
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(GroupError::ClosureTooLarge { cap });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            next += 1;
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Self::from_table_with_labels(table, labels)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        IDENTITY
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[Element] {
        &self.inverses
    }

    /// `g·a·g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: Element, a: Element) -> Element {
        self.mul(self.mul(g, a), self.inverses[g])
    }

    pub fn pow(&self, a: Element, k: i64) -> Element {
        let base = if k < 0 { self.inverses[a] } else { a };
        let mut e = k.unsigned_abs() % self.element_order(a) as u64;
        let mut acc = IDENTITY;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self, a: Element) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn table_rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: Element) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a^0, a^1, ..., a^(ord(a)-1)]`
    pub fn powers(&self, a: Element) -> Vec<Element> {
        let mut out = vec![IDENTITY];
        let mut x = a;
        while x != IDENTITY {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    pub fn cyclic_subgroup(&self, a: Element) -> Subgroup<'_> {
        let mut members = self.powers(a);
        members.sort_unstable();
        Subgroup::from_sorted(self, members)
    }

    /// Smallest subgroup containing `seed`.
    pub fn generated_subgroup(&self, seed: &[Element]) -> Subgroup<'_> {
        let mut seen = vec![false; self.order];
        seen[IDENTITY] = true;
        let mut members = vec![IDENTITY];
        let mut queue = VecDeque::from([IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in seed {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(self, members)
    }

    /// Validates an element set as a subgroup.
    pub fn subgroup(&self, members: &[Element]) -> Result<Subgroup<'_>, GroupError> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= self.order) {
            return Err(GroupError::NotASubgroup {
                reason: format!("{bad} is not an element"),
            });
        }
        if members.first() != Some(&IDENTITY) {
            return Err(GroupError::NotASubgroup {
                reason: "identity missing".into(),
            });
        }
        let mut inside = vec![false; self.order];
        for &m in &members {
            inside[m] = true;
        }
        for &a in &members {
            if !inside[self.inverses[a]] {
                return Err(GroupError::NotASubgroup {
                    reason: format!("inverse of {a} missing"),
                });
            }
            for &b in &members {
                if !inside[self.mul(a, b)] {
                    return Err(GroupError::NotASubgroup {
                        reason: format!("product {a}*{b} missing"),
                    });
                }
            }
        }
        Ok(Subgroup::from_sorted(self, members))
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, vec![IDENTITY])
    }

    /// Conjugacy classes, ordered by smallest member, members ascending.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Element>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for a in self.elements() {
            if assigned[a] {
                continue;
            }
            let mut class: Vec<Element> = self
                .elements()
                .map(|g| self.conjugate(g, a))
                .filter(|&b| !std::mem::replace(&mut assigned[b], true))
                .collect();
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Subgroup<'_> {
        let members = self
            .elements()
            .filter(|&z| self.elements().all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect();
        Subgroup::from_sorted(self, members)
    }

    /// Normal closure of all commutators `a·b·a⁻¹·b⁻¹`.
    pub fn commutator_subgroup(&self) -> Subgroup<'_> {
        let mut seen = vec![false; self.order];
        let commutators: Vec<Element> = self
            .elements()
            .flat_map(|a| {
                self.elements()
                    .map(move |b| self.mul(self.conjugate(a, b), self.inverses[b]))
            })
            .filter(|&c| !std::mem::replace(&mut seen[c], true))
            .collect();
        self.normal_closure(&commutators)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[Element]) -> Subgroup<'_> {
        let mut seen = vec![false; self.order];
        let conjugates: Vec<Element> = seed
            .iter()
            .flat_map(|&s| self.elements().map(move |g| self.conjugate(g, s)))
            .filter(|&c| !std::mem::replace(&mut seen[c], true))
            .collect();
        // the subgroup generated by a conjugation-closed set is normal
        self.generated_subgroup(&conjugates)
    }

    pub fn is_normal(&self, h: &Subgroup<'_>) -> bool {
        self.normality_violation(h).is_none()
    }

    /// First `(g, h)` with `g·h·g⁻¹ ∉ H`, scanning `g` then `h` in index order.
    pub fn normality_violation(&self, h: &Subgroup<'_>) -> Option<(Element, Element)> {
        let mask = h.mask();
        self.elements().find_map(|g| {
            h.members()
                .iter()
                .find(|&&m| !mask[self.conjugate(g, m)])
                .map(|&m| (g, m))
        })
    }

    /// Distinct conjugates `g·H·g⁻¹` as sorted member lists, in order of first
    /// appearance scanning `g` by index (so `H` itself comes first).
    pub fn subgroup_conjugates(&self, h: &Subgroup<'_>) -> Vec<Vec<Element>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in self.elements() {
            let mut c: Vec<Element> = h.members().iter().map(|&m| self.conjugate(g, m)).collect();
            c.sort_unstable();
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }

    /// Every subgroup exactly once, with the default cap.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup<'_>>, GroupError> {
        self.all_subgroups_capped(DEFAULT_ORDER_CAP)
    }

    /// Every subgroup exactly once, sorted by order then members.
    ///
    /// Starts from the cyclic subgroups and keeps joining each new subgroup
    /// with every cyclic subgroup until no new subgroup appears. Every
    /// subgroup is a join of cyclic subgroups, so this reaches all of them.
    pub fn all_subgroups_capped(&self, cap: usize) -> Result<Vec<Subgroup<'_>>, GroupError> {
        if self.order > cap {
            return Err(GroupError::OrderCapExceeded {
                order: self.order,
                cap,
            });
        }
        let mut cyclic_gens: Vec<Element> = Vec::new();
        let mut cyclic_masks: Vec<Vec<bool>> = Vec::new();
        let mut known: HashSet<Vec<Element>> = HashSet::new();
        // (members, generators)
        let mut found: Vec<(Vec<Element>, Vec<Element>)> = Vec::new();
        for a in self.elements() {
            let c = self.cyclic_subgroup(a);
            if known.insert(c.members.clone()) {
                cyclic_gens.push(a);
                cyclic_masks.push(c.mask());
                found.push((c.members, vec![a]));
            }
        }
        let mut next = 0;
        while next < found.len() {
            let (members, gens) = found[next].clone();
            let inside = {
                let mut m = vec![false; self.order];
                members.iter().for_each(|&x| m[x] = true);
                m
            };
            for (&c, c_mask) in cyclic_gens.iter().zip(&cyclic_masks) {
                if inside[c] || c_mask.iter().zip(&inside).all(|(&x, &y)| !x || y) {
                    continue;
                }
                let mut join_gens = gens.clone();
                join_gens.push(c);
                let join = self.generated_subgroup(&join_gens);
                if known.insert(join.members.clone()) {
                    found.push((join.members, join_gens));
                }
            }
            next += 1;
        }
        let mut subgroups: Vec<Subgroup<'_>> = found
            .into_iter()
            .map(|(m, _)| Subgroup::from_sorted(self, m))
            .collect();
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.members.cmp(&b.members))
        });
        Ok(subgroups)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup<'_>>, GroupError> {
        Ok(self
            .all_subgroups()?
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect())
    }

    /// True iff the only normal subgroups are the trivial one and the whole
    /// group. The trivial group counts as not simple.
    pub fn is_simple(&self) -> bool {
        self.order > 1
            && self
                .elements()
                .skip(1)
                .all(|a| self.normal_closure(&[a]).order() == self.order)
    }

    pub fn quotient(&self, n: &Subgroup<'_>) -> Result<CosetQuotient, GroupError> {
        if let Some((conjugator, member)) = self.normality_violation(n) {
            return Err(GroupError::NotNormal { conjugator, member });
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in self.elements() {
            if projection[a] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(a);
            for &h in n.members() {
                projection[self.mul(a, h)] = k;
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table(table)?;
        Ok(CosetQuotient {
            group,
            projection,
            kernel_order: n.order(),
        })
    }

    /// A generator when the group is cyclic (the smallest such index).
    pub fn is_cyclic(&self) -> Option<Element> {
        self.elements()
            .find(|&a| self.element_order(a) == self.order)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, crate::permutation::lcm)
    }
}

/// The Latin-square scan reports the first repeated value by row, then by column.
fn check_latin(n: usize, table: &[usize]) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = table[r * n + c];
            if seen[v] == r {
                return Err(GroupError::NotLatinSquare {
                    row: r,
                    col: c,
                    value: v,
                });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = table[r * n + c];
            if seen[v] == c {
                return Err(GroupError::NotLatinSquare {
                    row: r,
                    col: c,
                    value: v,
                });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn check_associative(n: usize, table: &[usize]) -> Result<(), GroupError> {
    let m = |a: usize, b: usize| table[a * n + b];
    let middles: Vec<usize> = if n <= FULL_ASSOCIATIVITY_SCAN_MAX {
        (0..n).collect()
    } else {
        magma_generators(n, table)
    };
    // (a·g)·c = a·(g·c) for g in a generating set implies associativity
    for a in 0..n {
        for &b in &middles {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// Greedy generating set for the table viewed as a magma.
fn magma_generators(n: usize, table: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    for candidate in 0..n {
        if inside[candidate] {
            continue;
        }
        gens.push(candidate);
        inside[candidate] = true;
        members.push(candidate);
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for j in 0..=i {
                let y = members[j];
                for z in [table[x * n + y], table[y * n + x]] {
                    if !inside[z] {
                        inside[z] = true;
                        members.push(z);
                    }
                }
            }
            i += 1;
        }
    }
    gens
}

/// A subgroup of a parent group, stored as a strictly increasing member list.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<Element>,
}

impl<'g> Subgroup<'g> {
    fn from_sorted(parent: &'g FiniteGroup, members: Vec<Element>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: Element) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub(crate) fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        self.members.iter().for_each(|&x| m[x] = true);
        m
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Subgroup").field(&self.members).finish()
    }
}

impl Serialize for Subgroup<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// `G/N` together with the projection `G → G/N`.
///
/// Coset `k` is the `k`-th coset in order of its smallest member, so the
/// identity coset is 0.
#[derive(Clone, Debug)]
pub struct CosetQuotient {
    pub group: FiniteGroup,
    pub projection: Vec<Element>,
    pub kernel_order: usize,
}

impl CosetQuotient {
    pub fn project(&self, a: Element) -> Element {
        self.projection[a]
    }
}

/// On-disk group description: either a Cayley table or permutation generators
/// in cycle notation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Permutations {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        generators: Vec<String>,
    },
}

impl GroupFile {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupFile::Table {
                order,
                table,
                labels,
            } => {
                if table.len() != *order {
                    return Err(GroupError::Construction(format!(
                        "declared order {order} but the table has {} rows",
                        table.len()
                    )));
                }
                if *order > cap {
                    return Err(GroupError::OrderCapExceeded { order: *order, cap });
                }
                match labels {
                    Some(l) => FiniteGroup::from_table_with_labels(table.clone(), l.clone()),
                    None => FiniteGroup::from_table(table.clone()),
                }
            }
            GroupFile::Permutations { degree, generators } => {
                let mut perms = generators
                    .iter()
                    .map(|g| Permutation::parse_cycles(g, *degree))
                    .collect::<Result<Vec<_>, _>>()?;
                let degree = degree
                    .unwrap_or_else(|| perms.iter().map(Permutation::degree).max().unwrap_or(0));
                // cycles parsed without an explicit degree may be shorter
                for p in &mut perms {
                    let mut images = p.images().to_vec();
                    images.extend(images.len()..degree);
                    *p = Permutation::from_images(images)?;
                }
                FiniteGroup::from_permutations(degree, &perms, cap)
            }
        }
    }
}

impl From<&FiniteGroup> for GroupFile {
    fn from(g: &FiniteGroup) -> Self {
        GroupFile::Table {
            order: g.order(),
            table: g.table_rows(),
            labels: g.labels.clone(),
        }
    }
}
