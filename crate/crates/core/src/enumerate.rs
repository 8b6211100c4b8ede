//! Brute-force enumeration of all groups of a tiny order.
//!
//! Cayley tables are filled cell by cell with the identity row and column
//! fixed. After each choice, associativity is propagated to a fixpoint: for
//! every triple with `ab` and `bc` known, `(ab)c` and `a(bc)` are forced equal.
//! Finished tables are deduplicated up to isomorphism.

use crate::catalog::{CatalogEntry, Construction};
use crate::error::GroupError;
use crate::group::{Element, FiniteGroup};

pub const EXHAUSTIVE_ORDER_CAP: usize = 8;

const EMPTY: u8 = u8::MAX;

#[derive(Clone)]
struct Partial {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
}

impl Partial {
    fn new(n: usize) -> Self {
        let mut p = Partial {
            n,
            cells: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
        };
        for i in 0..n {
            p.set(0, i, i);
            p.set(i, 0, i);
        }
        p
    }

    fn get(&self, a: usize, b: usize) -> Option<usize> {
        match self.cells[a * self.n + b] {
            EMPTY => None,
            v => Some(v as usize),
        }
    }

    fn can_set(&self, a: usize, b: usize, v: usize) -> bool {
        self.row_used[a] & (1 << v) == 0 && self.col_used[b] & (1 << v) == 0
    }

    fn set(&mut self, a: usize, b: usize, v: usize) {
        if self.cells[a * self.n + b] == EMPTY {
            self.cells[a * self.n + b] = v as u8;
            self.row_used[a] |= 1 << v;
            self.col_used[b] |= 1 << v;
        }
    }

    /// Forces `x = y` for cells `x`, `y`; false on contradiction.
    fn unify(&mut self, x: (usize, usize), y: (usize, usize), changed: &mut bool) -> bool {
        match (self.get(x.0, x.1), self.get(y.0, y.1)) {
            (Some(l), Some(r)) => l == r,
            (Some(v), None) => self.force(y, v, changed),
            (None, Some(v)) => self.force(x, v, changed),
            (None, None) => true,
        }
    }

    fn force(&mut self, cell: (usize, usize), v: usize, changed: &mut bool) -> bool {
        if !self.can_set(cell.0, cell.1, v) {
            return false;
        }
        self.set(cell.0, cell.1, v);
        *changed = true;
        true
    }

    fn propagate(&mut self) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for a in 1..n {
                for b in 1..n {
                    let Some(ab) = self.get(a, b) else { continue };
                    for c in 1..n {
                        let Some(bc) = self.get(b, c) else { continue };
                        if !self.unify((ab, c), (a, bc), &mut changed) {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn first_empty(&self) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .position(|&v| v == EMPTY)
            .map(|i| (i / self.n, i % self.n))
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }
}

fn search(p: Partial, candidates: &[usize], out: &mut Vec<Vec<Vec<usize>>>) {
    let Some((a, b)) = p.first_empty() else {
        out.push(p.table());
        return;
    };
    for &v in candidates {
        if !p.can_set(a, b, v) {
            continue;
        }
        let mut next = p.clone();
        next.set(a, b, v);
        if next.propagate() {
            search(next, candidates, out);
        }
    }
}

/// One representative per isomorphism class of groups of the given order.
pub fn enumerate_groups_exhaustive(order: usize) -> Result<Vec<FiniteGroup>, GroupError> {
    let candidates: Vec<usize> = (0..order).collect();
    enumerate_groups_with_candidates(order, &candidates)
}

/// As [`enumerate_groups_exhaustive`], but the backtracking tries cell values
/// in the order given by `candidates`, a permutation of `0..order`. The
/// representatives may differ; their number may not.
pub fn enumerate_groups_with_candidates(
    order: usize,
    candidates: &[usize],
) -> Result<Vec<FiniteGroup>, GroupError> {
    if order > EXHAUSTIVE_ORDER_CAP {
        return Err(GroupError::OrderCapExceeded {
            order,
            cap: EXHAUSTIVE_ORDER_CAP,
        });
    }
    if order == 0 {
        return Err(GroupError::Empty);
    }
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    if sorted != (0..order).collect::<Vec<_>>() {
        return Err(GroupError::Construction(format!(
            "candidate order must be a permutation of 0..{order}"
        )));
    }

    let mut tables = Vec::new();
    let start = Partial::new(order);
    if start.clone().propagate() {
        search(start, candidates, &mut tables);
    }

    let mut reps: Vec<(Vec<usize>, FiniteGroup)> = Vec::new();
    for t in tables {
        let g = FiniteGroup::from_table(t)?;
        let profile = order_profile(&g);
        let seen = reps
            .iter()
            .any(|(p, h)| *p == profile && are_isomorphic(h, &g));
        if !seen {
            reps.push((profile, g));
        }
    }
    // independent of the candidate order: by element-order profile, then table
    reps.sort_by(|(p, g), (q, h)| p.cmp(q).then_with(|| g.table_rows().cmp(&h.table_rows())));
    Ok(reps.into_iter().map(|(_, g)| g).collect())
}

/// Catalog entries `E{order}.{index}` for every order up to `max_order`.
pub fn exhaustive_entries(max_order: usize) -> Result<Vec<CatalogEntry>, GroupError> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        for (index, group) in enumerate_groups_exhaustive(order)?.into_iter().enumerate() {
            out.push(CatalogEntry {
                name: format!("E{order}.{}", index + 1),
                group,
                construction: Construction::Exhaustive {
                    order,
                    index: index + 1,
                },
            });
        }
    }
    Ok(out)
}

/// Element orders, sorted descending.
fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Greedy generating set: each generator is the smallest element outside the
/// span of the previous ones.
fn generators(g: &FiniteGroup) -> Vec<Element> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup().members().to_vec();
    for a in g.elements() {
        if !span.contains(&a) {
            gens.push(a);
            span = g.generated_subgroup(&gens).members().to_vec();
        }
    }
    gens
}

/// Isomorphism test by mapping a generating set of `g` into `h` in every
/// order-compatible way. Only meant for the tiny orders enumerated here.
pub(crate) fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return false;
    }
    let gens = generators(g);
    let mut images = Vec::with_capacity(gens.len());
    try_images(g, h, &gens, &mut images)
}

fn try_images(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Element],
    images: &mut Vec<Element>,
) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(g, h, gens, images);
    }
    let want = g.element_order(gens[images.len()]);
    for y in h.elements() {
        if h.element_order(y) == want && !images.contains(&y) {
            images.push(y);
            if try_images(g, h, gens, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

/// Extends `gens[i] ↦ images[i]` along right multiplication by generators and
/// checks that the result is a well-defined bijective homomorphism.
fn extends_to_isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Element],
    images: &[Element],
) -> bool {
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[g.identity()] = h.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let (xs, img) = (g.mul(x, s), h.mul(phi[x], t));
            if phi[xs] == usize::MAX {
                phi[xs] = img;
                queue.push(xs);
            } else if phi[xs] != img {
                return false;
            }
        }
    }
    let mut hit = vec![false; n];
    for &y in &phi {
        if y == usize::MAX || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    g.elements().all(|a| {
        g.elements()
            .all(|b| phi[g.mul(a, b)] == h.mul(phi[a], phi[b]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, dihedral, direct_product, klein, quaternion};

    #[test]
    fn class_counts_small_orders() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_groups_exhaustive(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2]);
    }

    #[test]
    fn order_four_split_by_max_element_order() {
        let gs = enumerate_groups_exhaustive(4).unwrap();
        let mut maxima: Vec<usize> = gs
            .iter()
            .map(|g| g.elements().map(|a| g.element_order(a)).max().unwrap())
            .collect();
        maxima.sort();
        assert_eq!(maxima, vec![2, 4]);
    }

    #[test]
    fn reversed_candidates_agree() {
        for n in 1..=6 {
            let rev: Vec<usize> = (0..n).rev().collect();
            assert_eq!(
                enumerate_groups_with_candidates(n, &rev).unwrap().len(),
                enumerate_groups_exhaustive(n).unwrap().len()
            );
        }
    }

    #[test]
    fn cap_and_bad_candidates() {
        assert!(matches!(
            enumerate_groups_exhaustive(9),
            Err(GroupError::OrderCapExceeded { order: 9, cap: 8 })
        ));
        assert!(enumerate_groups_with_candidates(3, &[0, 1, 1]).is_err());
    }

    #[test]
    fn isomorphism_test() {
        let d4 = dihedral(4).unwrap();
        assert!(!are_isomorphic(&d4, &quaternion()));
        assert!(are_isomorphic(
            &direct_product(&cyclic(2), &cyclic(2)),
            &klein()
        ));
        assert!(are_isomorphic(
            &direct_product(&cyclic(2), &cyclic(3)),
            &cyclic(6)
        ));
        assert!(!are_isomorphic(&cyclic(4), &klein()));
    }
}
