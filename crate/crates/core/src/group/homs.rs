//! Homomorphism, isomorphism and automorphism search by backtracking over
//! the images of a generating set.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{Elem, FiniteGroup, GroupHom};
use crate::error::GroupError;

const UNSET: Elem = Elem::MAX;

/// Anything with a multiplication on indices `0..order` (identity `0`) that a
/// homomorphism can land in.
pub trait Target {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    fn elem_order(&self, a: Elem) -> usize;
}

impl Target for FiniteGroup {
    fn order(&self) -> usize {
        FiniteGroup::order(self)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        FiniteGroup::mul(self, a, b)
    }
    fn elem_order(&self, a: Elem) -> usize {
        FiniteGroup::elem_order(self, a)
    }
}

/// Called for each new pair `(x, y)`; may queue implied pairs or reject.
pub(crate) type ExtraHook<'a> = dyn FnMut(Elem, Elem, &mut Vec<(Elem, Elem)>) -> bool + 'a;

/// A partially defined map `src -> tgt`, closed under products of defined
/// elements. Assignments are undone by rolling back to a mark.
pub(crate) struct PartialMap<'a, T: Target + ?Sized> {
    src: &'a FiniteGroup,
    tgt: &'a T,
    img: Vec<Elem>,
    defined: Vec<Elem>,
    preimg: Option<Vec<Elem>>,
    pending: Vec<(Elem, Elem)>,
}

impl<'a, T: Target + ?Sized> PartialMap<'a, T> {
    pub(crate) fn new(src: &'a FiniteGroup, tgt: &'a T, injective: bool) -> Self {
        let mut map = PartialMap {
            src,
            tgt,
            img: vec![UNSET; src.order()],
            defined: Vec::with_capacity(src.order()),
            preimg: injective.then(|| vec![UNSET; tgt.order()]),
            pending: Vec::new(),
        };
        let ok = map.assign(0, 0);
        debug_assert!(ok);
        map
    }

    pub(crate) fn is_complete(&self) -> bool {
        self.defined.len() == self.src.order()
    }

    pub(crate) fn images(&self) -> &[Elem] {
        &self.img
    }

    pub(crate) fn mark(&self) -> usize {
        self.defined.len()
    }

    pub(crate) fn rollback(&mut self, mark: usize) {
        for &x in &self.defined[mark..] {
            if let Some(pre) = self.preimg.as_mut() {
                pre[self.img[x]] = UNSET;
            }
            self.img[x] = UNSET;
        }
        self.defined.truncate(mark);
    }

    pub(crate) fn assign(&mut self, x: Elem, y: Elem) -> bool {
        self.assign_with(x, y, &mut |_, _, _| true)
    }

    /// Defines `x -> y` and everything it forces. `extra` sees every newly
    /// defined pair, may push further forced pairs, and may veto by
    /// returning `false`. On `false` the caller must roll back.
    pub(crate) fn assign_with(
        &mut self,
        x: Elem,
        y: Elem,
        extra: &mut ExtraHook<'_>,
    ) -> bool {
        let mut pending = std::mem::take(&mut self.pending);
        pending.clear();
        pending.push((x, y));
        let ok = self.drain(&mut pending, extra);
        self.pending = pending;
        ok
    }

    fn drain(
        &mut self,
        pending: &mut Vec<(Elem, Elem)>,
        extra: &mut ExtraHook<'_>,
    ) -> bool {
        while let Some((a, b)) = pending.pop() {
            let cur = self.img[a];
            if cur != UNSET {
                if cur != b {
                    return false;
                }
                continue;
            }
            if let Some(pre) = self.preimg.as_mut() {
                if pre[b] != UNSET {
                    return false;
                }
                pre[b] = a;
            }
            self.img[a] = b;
            self.defined.push(a);
            if !extra(a, b, pending) {
                return false;
            }
            for i in 0..self.defined.len() {
                let d = self.defined[i];
                let e = self.img[d];
                pending.push((self.src.mul(a, d), self.tgt.mul(b, e)));
                pending.push((self.src.mul(d, a), self.tgt.mul(e, b)));
            }
        }
        true
    }
}

/// Visits every homomorphism `src -> tgt` in deterministic order (generator
/// images tried in increasing index). Set `injective` to visit embeddings only.
pub fn for_each_hom<T: Target + ?Sized>(
    src: &FiniteGroup,
    tgt: &T,
    injective: bool,
    visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if injective && src.order() > tgt.order() {
        return ControlFlow::Continue(());
    }
    let mut map = PartialMap::new(src, tgt, injective);
    let gens = src.generators().to_vec();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let k = src.elem_order(g);
            (0..tgt.order())
                .filter(|&y| {
                    let o = tgt.elem_order(y);
                    if injective {
                        o == k
                    } else {
                        k.is_multiple_of(o)
                    }
                })
                .collect()
        })
        .collect();
    hom_search(&mut map, &gens, &candidates, 0, visit)
}

fn hom_search<T: Target + ?Sized>(
    map: &mut PartialMap<'_, T>,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    depth: usize,
    visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == gens.len() {
        debug_assert!(map.is_complete());
        return visit(map.images());
    }
    let g = gens[depth];
    for &y in &candidates[depth] {
        let mark = map.mark();
        if map.assign(g, y) {
            hom_search(map, gens, candidates, depth + 1, visit)?;
        }
        map.rollback(mark);
    }
    ControlFlow::Continue(())
}

/// Every homomorphism `g -> h`.
pub fn all_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    let _ = for_each_hom(g, h, false, &mut |img| {
        out.push(GroupHom::new(img.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

fn quick_mismatch(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() != h.order()
        || g.order_profile() != h.order_profile()
        || g.is_abelian() != h.is_abelian()
}

/// Visits every isomorphism `g -> h`; nothing is visited when cheap
/// invariants already differ.
pub fn for_each_iso(
    g: &FiniteGroup,
    h: &FiniteGroup,
    visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if quick_mismatch(g, h) {
        return ControlFlow::Continue(());
    }
    for_each_hom(g, h, true, visit)
}

pub fn all_isos(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    let _ = for_each_iso(g, h, &mut |img| {
        out.push(GroupHom::new(img.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    for_each_iso(g, h, &mut |_| ControlFlow::Break(())).is_break()
}

/// All automorphisms of `g`, identity first.
pub fn automorphisms(g: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = all_isos(g, g);
    let id = out
        .iter()
        .position(|f| f.images().iter().enumerate().all(|(i, &j)| i == j))
        .expect("identity is an automorphism");
    let identity = out.remove(id);
    out.insert(0, identity);
    out
}

/// `Aut(G)` realised as a table group. Element `i` of `group` is `maps[i]`,
/// and the product is composition `(f∘g)(x) = f(g(x))`.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    pub maps: Vec<GroupHom>,
}

impl AutomorphismGroup {
    pub fn index_of(&self, f: &GroupHom) -> Option<Elem> {
        self.maps.iter().position(|m| m == f)
    }
}

pub fn automorphism_group(g: &FiniteGroup, cap: usize) -> Result<AutomorphismGroup, GroupError> {
    let maps = automorphisms(g);
    if maps.len() > cap {
        return Err(GroupError::OrderCapExceeded { cap });
    }
    let group = MapGroup::new(maps.iter().map(|m| m.images().to_vec()).collect()).to_table_group();
    Ok(AutomorphismGroup { group, maps })
}

/// A group of bijections of `0..n` under composition, given by its element
/// list (identity first). Products are looked up on demand, so very large
/// groups such as `Aut(C2^4)` never need a full table.
pub struct MapGroup {
    maps: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
    orders: Vec<usize>,
}

impl MapGroup {
    pub fn new(maps: Vec<Vec<Elem>>) -> Self {
        let index: HashMap<Vec<Elem>, Elem> =
            maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut orders = Vec::with_capacity(maps.len());
        for m in &maps {
            let mut k = 1;
            let mut cur = m.clone();
            while cur.iter().enumerate().any(|(i, &j)| i != j) {
                cur = cur.iter().map(|&x| m[x]).collect();
                k += 1;
            }
            orders.push(k);
        }
        MapGroup { maps, index, orders }
    }

    pub fn map(&self, i: Elem) -> &[Elem] {
        &self.maps[i]
    }

    pub fn index_of(&self, m: &[Elem]) -> Option<Elem> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    fn to_table_group(&self) -> FiniteGroup {
        let n = self.maps.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(Target::mul(self, a, b));
            }
        }
        FiniteGroup::from_table_unchecked(n, mul)
    }
}

impl Target for MapGroup {
    fn order(&self) -> usize {
        self.maps.len()
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (fa, fb) = (&self.maps[a], &self.maps[b]);
        let composed: Vec<Elem> = fb.iter().map(|&x| fa[x]).collect();
        self.index[&composed]
    }
    fn elem_order(&self, a: Elem) -> usize {
        self.orders[a]
    }
}
