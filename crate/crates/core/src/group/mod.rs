//! Element-level finite groups, homomorphisms, extensions and the finite
//! data describing surface-group homomorphisms and their extensions.
//!
//! A group is a validated Cayley table; elements are plain indices into it.
//! Subgroups are sorted index lists, generated by breadth-first closure.

mod datum;
mod extension;
mod surface;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

pub(crate) use datum::handle_commutator;
pub use datum::{pullback_datum, Automorphism, ExtensionDatum, SurfaceAction};
pub use extension::{mixed_commutator, Extension, GroupHom};
pub use surface::{build_surface_hom, SurfaceHom};

use crate::error::{Error, Result};

/// Index of an element in its group's Cayley table.
pub type Elem = usize;

/// A finite group stored as its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table (row `a`, column `b` holds `a*b`).
    pub fn from_table(
        rows: &[Vec<usize>],
        labels: Option<Vec<String>>,
        max_order: usize,
    ) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > max_order {
            return Err(Error::OrderCap { order: n, cap: max_order });
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::Malformed(format!("entry {v} in row {a} is out of range")));
                }
                table.push(v);
            }
        }
        Self::from_flat(n, table, labels)
    }

    /// Builds a group from a multiplication function on `0..order`.
    pub fn from_fn(order: usize, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::Malformed(format!("product {a}*{b} = {c} out of range")));
                }
                table.push(c);
            }
        }
        Self::from_flat(order, table, None)
    }

    fn from_flat(n: usize, table: Vec<Elem>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Malformed(format!("{} labels for {n} elements", l.len())));
            }
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NonAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, identity, inverses, labels })
    }

    /// Closure of a set of permutations (images arrays on `0..degree`) under composition.
    ///
    /// Elements are numbered in breadth-first order from the identity; the
    /// product `a*b` applies `b` first, then `a`.
    pub fn from_permutations(gens: &[Vec<usize>], degree: usize, max_order: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Malformed(format!("generator {i} has wrong degree")));
            }
            for &p in g {
                if p >= degree || std::mem::replace(&mut seen[p], true) {
                    return Err(Error::Malformed(format!("generator {i} is not a permutation")));
                }
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&p| a[p]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = compose(g, &elems[i]);
                if !index.contains_key(&p) {
                    if elems.len() >= max_order {
                        return Err(Error::OrderCap { order: elems.len() + 1, cap: max_order });
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&compose(a, b)]);
            }
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat(n, table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `a b a⁻¹ b⁻¹`
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// `a h a⁻¹`
    #[inline]
    pub fn conj(&self, a: Elem, h: Elem) -> Elem {
        self.mul(self.mul(a, h), self.inv(a))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Looks up an element by label (or by its decimal index when unlabeled).
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&a| a < self.order),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Malformed("label count does not match order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generate(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        (0..self.order).filter(|&a| seen[a]).collect()
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generate(&gens);
                if span.len() == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// True when `elems` is nonempty and closed under products and inverses.
    pub fn is_subgroup(&self, elems: &[Elem]) -> bool {
        let mut member = vec![false; self.order];
        for &a in elems {
            if a >= self.order {
                return false;
            }
            member[a] = true;
        }
        !elems.is_empty()
            && elems.iter().all(|&a| {
                member[self.inv(a)] && elems.iter().all(|&b| member[self.mul(a, b)])
            })
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&z| self.elements().all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect()
    }

    /// The same group with element `a` renamed to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order;
        if perm.len() != n {
            return Err(Error::Malformed("relabeling has wrong length".into()));
        }
        let mut back = vec![usize::MAX; n];
        for (a, &p) in perm.iter().enumerate() {
            if p >= n || back[p] != usize::MAX {
                return Err(Error::Malformed("relabeling is not a bijection".into()));
            }
            back[p] = a;
        }
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| (0..n).map(|p| l[back[p]].clone()).collect());
        Self::from_flat(n, table, labels)
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(i + 1).to_string());
            first = false;
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A subgroup realized as a group of its own, with its embedding.
///
/// Subgroup element `i` corresponds to parent element `elements[i]`; the
/// element list is sorted.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    elements: Vec<Elem>,
    index: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, elements: &[Elem]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if !parent.is_subgroup(&elements) {
            return Err(Error::InvalidGroup("element set is not a subgroup".into()));
        }
        let mut index = vec![None; parent.order()];
        for (i, &a) in elements.iter().enumerate() {
            index[a] = Some(i);
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &elements {
            for &b in &elements {
                table.push(index[parent.mul(a, b)].expect("closed"));
            }
        }
        let labels = parent
            .labels()
            .map(|l| elements.iter().map(|&a| l[a].clone()).collect());
        let group = FiniteGroup::from_flat(m, table, labels)?;
        Ok(Subgroup { group: Arc::new(group), elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Parent indices, sorted.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn to_parent(&self, i: usize) -> Elem {
        self.elements[i]
    }

    pub fn from_parent(&self, a: Elem) -> Option<usize> {
        self.index.get(a).copied().flatten()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.from_parent(a).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cyclic_two_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]], None, 64).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A Latin square with identity 0 whose law is not associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(&rows, None, 64) {
            Err(Error::NonAssociative { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_identity_is_rejected() {
        let rows = vec![vec![1, 0], vec![1, 0]];
        assert!(FiniteGroup::from_table(&rows, None, 64).is_err());
    }

    #[test]
    fn order_cap_applies_to_tables_and_closures() {
        let rows: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        assert_eq!(
            FiniteGroup::from_table(&rows, None, 2),
            Err(Error::OrderCap { order: 3, cap: 2 })
        );
        let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        assert!(matches!(
            FiniteGroup::from_permutations(&gens, 4, 10),
            Err(Error::OrderCap { .. })
        ));
    }

    #[test]
    fn transposition_and_three_cycle_generate_s3() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]], 3, 64).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.label(g.identity()), "()");
        assert!(!g.is_abelian());
    }

    #[test]
    fn centers() {
        let z6 = catalog::cyclic(6);
        assert_eq!(z6.center().len(), 6);
        let s3 = catalog::symmetric(3);
        assert_eq!(s3.center(), vec![s3.identity()]);
        let q8 = catalog::quaternion();
        let z = q8.center();
        assert_eq!(z.len(), 2);
        assert!(q8.is_subgroup(&z));
        // brute force: the nontrivial central element squares to the identity
        let minus_one = *z.iter().find(|&&a| a != q8.identity()).unwrap();
        assert_eq!(q8.element_order(minus_one), 2);
    }

    #[test]
    fn generators_span_the_group() {
        for g in [catalog::symmetric(4), catalog::quaternion(), catalog::dihedral(4)] {
            let gens = g.generators();
            assert_eq!(g.generate(&gens).len(), g.order());
            assert!(gens.len() <= 3);
        }
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = catalog::symmetric(3);
        let perm = vec![3, 5, 0, 1, 4, 2];
        let h = g.relabel(&perm).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(h.mul(perm[a], perm[b]), perm[g.mul(a, b)]);
            }
        }
    }

    #[test]
    fn subgroup_embedding_round_trips() {
        let s4 = catalog::symmetric(4);
        let gens: Vec<Elem> = vec![1, 2];
        let h = s4.generate(&gens);
        let sub = Subgroup::new(&s4, &h).unwrap();
        for i in 0..sub.order() {
            assert_eq!(sub.from_parent(sub.to_parent(i)), Some(i));
        }
        for i in 0..sub.order() {
            for j in 0..sub.order() {
                let p = s4.mul(sub.to_parent(i), sub.to_parent(j));
                assert_eq!(sub.to_parent(sub.group.mul(i, j)), p);
            }
        }
    }
}
