//! Finite groups as dense multiplication tables.
//!
//! Elements are indices `0..order`; index `0` is always the identity. Every
//! constructor in this module keeps that invariant, so callers never need to
//! look the identity up.

mod homs;
mod invariants;
mod isoclinic;
mod perm;

use std::collections::HashMap;
use std::fmt;

use crate::error::GroupError;

pub(crate) use homs::{ExtraHook, PartialMap};
pub use homs::{
    all_homs, all_isos, automorphism_group, automorphisms, for_each_hom, for_each_iso,
    is_isomorphic, AutomorphismGroup, MapGroup, Target,
};
pub use invariants::{GroupFingerprint, GroupInvariants, Log2Order, Nilpotency};
pub use isoclinic::{
    group_family_partition, group_family_partition_with, is_isoclinic_group,
    is_isoclinic_group_with, validate_group_isoclinism, GroupIsoclinism, SearchMode,
};
pub use perm::Perm;

/// Element index within a [`FiniteGroup`].
pub type Elem = usize;

/// Default cap on the order of groups generated from permutations.
pub const DEFAULT_MAX_ORDER: usize = 512;

/// Orders up to which [`FiniteGroup::from_table`] checks associativity.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// `(order, index)` of a group in a catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct CatalogId {
    pub order: usize,
    pub index: usize,
}

/// Parses `"order:index"`.
impl std::str::FromStr for CatalogId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::MalformedTable(format!("expected order:index, got {s:?}"));
        let (o, i) = s.trim().split_once(':').ok_or_else(bad)?;
        let order: usize = o.parse().map_err(|_| bad())?;
        let index: usize = i.parse().map_err(|_| bad())?;
        if order == 0 || index == 0 {
            return Err(bad());
        }
        Ok(CatalogId { order, index })
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.order, self.index)
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    elem_order: Vec<usize>,
    gens: Vec<Elem>,
    catalog_id: Option<CatalogId>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("catalog_id", &self.catalog_id)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// The group of order one.
    pub fn trivial() -> Self {
        Self::from_table_unchecked(1, vec![0])
    }

    /// Builds a group from a row-major table, validating every group axiom.
    ///
    /// Associativity is checked exhaustively for orders up to 64.
    pub fn from_table(rows: &[Vec<Elem>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!("row {i} has wrong length")));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || seen[x] {
                    return Err(GroupError::MalformedTable(format!(
                        "row {i} is not a permutation"
                    )));
                }
                seen[x] = true;
            }
            mul.extend_from_slice(row);
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let x = mul[i * n + j];
                if seen[x] {
                    return Err(GroupError::MalformedTable(format!(
                        "column {j} is not a permutation"
                    )));
                }
                seen[x] = true;
            }
        }
        for x in 0..n {
            if mul[x] != x || mul[x * n] != x {
                return Err(GroupError::MalformedTable("element 0 is not the identity".into()));
            }
        }
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b];
                    for c in 0..n {
                        if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(n, mul))
    }

    /// Builds a group from a trusted flat table whose element 0 is the identity.
    pub(crate) fn from_table_unchecked(order: usize, mul: Vec<Elem>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&x| x == 0).expect("latin square");
        }
        let mut elem_order = vec![1; order];
        for a in 1..order {
            let mut k = 1;
            let mut x = a;
            while x != 0 {
                x = mul[x * order + a];
                k += 1;
            }
            elem_order[a] = k;
        }
        let mut group = FiniteGroup {
            order,
            mul,
            inv,
            elem_order,
            gens: Vec::new(),
            catalog_id: None,
        };
        group.gens = group.greedy_generators();
        group
    }

    /// Closes a list of permutations into a group.
    ///
    /// Element 0 is the identity; the remaining elements appear in
    /// breadth-first discovery order, which is deterministic.
    pub fn from_permutations(perms: &[Perm], max_order: usize) -> Result<Self, GroupError> {
        let degree = perms.iter().map(Perm::degree).max().unwrap_or(0);
        let gens: Vec<Perm> = perms.iter().map(|p| p.extended(degree)).collect();
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, Elem> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens {
                let y = x.compose(g);
                if !index.contains_key(&y) {
                    if elements.len() >= max_order {
                        return Err(GroupError::OrderCapExceeded { cap: max_order });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&a.compose(b)]);
            }
        }
        Ok(Self::from_table_unchecked(n, mul))
    }

    pub(crate) fn with_catalog_id(mut self, id: CatalogId) -> Self {
        self.catalog_id = Some(id);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn catalog_id(&self) -> Option<CatalogId> {
        self.catalog_id
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.elem_order[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv[g])
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// A deterministic generating set: greedily add the element of largest
    /// order not yet covered (ties go to the smallest index).
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Row-major copy of the multiplication table.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(<[Elem]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v = self.elem_order.clone();
        v.sort_unstable();
        v
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = self.subgroup_generated(&[]);
        while current.order() < self.order {
            let pick = self
                .elements()
                .filter(|&x| !current.contains(x))
                .max_by(|&a, &b| self.elem_order[a].cmp(&self.elem_order[b]).then(b.cmp(&a)))
                .expect("proper subgroup has an outside element");
            gens.push(pick);
            current = self.subgroup_generated(&gens);
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self.order, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.order, vec![0])
    }

    /// Smallest subgroup containing `seeds`.
    pub fn subgroup_generated(&self, seeds: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in seeds {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// Checks that an element set is a subgroup and wraps it.
    pub fn subgroup(&self, members: &[Elem]) -> Result<Subgroup, GroupError> {
        if members.iter().any(|&x| x >= self.order) {
            return Err(GroupError::NotASubgroup);
        }
        let mut mask = vec![false; self.order];
        for &x in members {
            mask[x] = true;
        }
        if !mask[0] {
            return Err(GroupError::NotASubgroup);
        }
        for &a in members {
            for &b in members {
                if !mask[self.mul(a, b)] {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup::from_mask(mask))
    }

    pub fn center(&self) -> Subgroup {
        let mask = self
            .elements()
            .map(|z| self.gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_mask(mask)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator_subgroup(&self.whole(), &self.whole())
    }

    /// `[A, B]`, generated by all `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seeds = Vec::new();
        let mut seen = vec![false; self.order];
        for &x in a.members() {
            for &y in b.members() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    seeds.push(c);
                }
            }
        }
        self.subgroup_generated(&seeds)
    }

    /// Returns a witness `(member, conjugator)` if `n` is not normal.
    pub fn normality_witness(&self, n: &Subgroup) -> Option<(Elem, Elem)> {
        for &g in &self.gens {
            for &x in n.members() {
                if !n.contains(self.conj(g, x)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.normality_witness(n).is_none()
    }

    /// Centralizer of a subset.
    pub fn centralizer(&self, of: &[Elem]) -> Subgroup {
        let mask = self
            .elements()
            .map(|z| of.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_mask(mask)
    }

    /// Quotient by a normal subgroup; cosets are numbered by their minimum
    /// member.
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient, GroupError> {
        if let Some((member, by)) = self.normality_witness(n) {
            return Err(GroupError::NotNormal { member, by });
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &m in n.members() {
                coset_of[self.mul(x, m)] = c;
            }
        }
        let k = reps.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[self.mul(a, b)]);
            }
        }
        Ok(Quotient {
            group: FiniteGroup::from_table_unchecked(k, mul),
            projection: GroupHom::new(coset_of),
            reps,
        })
    }

    /// The subgroup as a group in its own right; element `i` of the result is
    /// `s.members()[i]`.
    pub fn restrict(&self, s: &Subgroup) -> FiniteGroup {
        let members = s.members();
        let k = members.len();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let mut mul = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                mul.push(pos[self.mul(a, b)]);
            }
        }
        FiniteGroup::from_table_unchecked(k, mul)
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Elem]) -> Subgroup {
        let mut s = self.subgroup_generated(seeds);
        loop {
            let mut extra: Vec<Elem> = s.members().to_vec();
            for &g in &self.gens {
                for &x in s.members() {
                    extra.push(self.conj(g, x));
                }
            }
            let next = self.subgroup_generated(&extra);
            if next.order() == s.order() {
                return s;
            }
            s = next;
        }
    }
}

/// Result of [`FiniteGroup::quotient`].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// Minimum member of each coset, indexed by quotient element.
    pub reps: Vec<Elem>,
}

/// A subgroup of some parent group, as a sorted member list plus mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub(crate) fn from_members(parent_order: usize, members: Vec<Elem>) -> Self {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Self::from_mask(mask)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Subgroup::from_mask(mask)
    }

    /// Position of a member within [`Self::members`].
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }
}

/// A map between groups given by its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(images: Vec<Elem>) -> Self {
        GroupHom { images }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom::new(g.elements().collect())
    }

    pub fn trivial(source: &FiniteGroup) -> Self {
        GroupHom::new(vec![0; source.order()])
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Elem> {
        self.images
    }

    /// Exhaustive homomorphism check.
    pub fn is_hom(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        if self.images.len() != source.order() || self.images.iter().any(|&y| y >= target.order())
        {
            return false;
        }
        source.elements().all(|a| {
            source.elements().all(|b| {
                self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b])
            })
        })
    }

    pub fn is_bijective(&self, target_order: usize) -> bool {
        if self.images.len() != target_order {
            return false;
        }
        let mut seen = vec![false; target_order];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        GroupHom::new(other.images.iter().map(|&x| self.images[x]).collect())
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> GroupHom {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupHom::new(inv)
    }

    pub fn kernel(&self, source: &FiniteGroup) -> Subgroup {
        Subgroup::from_mask(source.elements().map(|x| self.images[x] == 0).collect())
    }

    pub fn image(&self, target: &FiniteGroup) -> Subgroup {
        let mut mask = vec![false; target.order()];
        for &y in &self.images {
            mask[y] = true;
        }
        Subgroup::from_mask(mask)
    }
}

/// Convenience: a group generated by permutations, with the default cap.
pub fn group_from_generators(perms: &[Perm]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_permutations(perms, DEFAULT_MAX_ORDER)
}
