//! Crossed modules `d: G1 -> G0` with a dense action table.

mod iso;
mod serial;

use std::fmt;
use std::sync::Arc;

use crate::error::XModError;
use crate::group::{automorphism_group, Elem, FiniteGroup, GroupHom, Subgroup};

pub use iso::{
    for_each_xmod_iso, is_isomorphic_xmod, is_isomorphic_xmod_with, xmod_automorphisms,
    XModFingerprint,
};
pub use serial::{
    xmod_from_json, xmod_from_json_with, xmod_to_json, xmod_to_json_with, XMOD_FORMAT_VERSION,
};

/// A finite crossed module. `action[g0 * |G1| + g1]` is `^{g0}g1`.
///
/// Structural equality: same tables, not isomorphism.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossedModule {
    g1: Arc<FiniteGroup>,
    g0: Arc<FiniteGroup>,
    boundary: Vec<Elem>,
    action: Vec<Elem>,
}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedModule{:?}", self.order())
    }
}

/// Validates every axiom and builds the crossed module. `action[g0][g1]` is
/// `^{g0}g1`.
pub fn make_xmod(
    g1: FiniteGroup,
    g0: FiniteGroup,
    boundary: GroupHom,
    action: Vec<Vec<Elem>>,
) -> Result<CrossedModule, XModError> {
    let n1 = g1.order();
    if action.len() != g0.order() || action.iter().any(|row| row.len() != n1) {
        return Err(XModError::Malformed("action table has the wrong shape".into()));
    }
    CrossedModule::new(Arc::new(g1), Arc::new(g0), boundary.into_images(), action.concat())
}

impl CrossedModule {
    /// Validating constructor on a flat action table.
    pub fn new(
        g1: Arc<FiniteGroup>,
        g0: Arc<FiniteGroup>,
        boundary: Vec<Elem>,
        action: Vec<Elem>,
    ) -> Result<Self, XModError> {
        let x = CrossedModule { g1, g0, boundary, action };
        x.validate()?;
        Ok(x)
    }

    /// Trusted constructor; the caller guarantees the axioms.
    pub(crate) fn from_parts(
        g1: Arc<FiniteGroup>,
        g0: Arc<FiniteGroup>,
        boundary: Vec<Elem>,
        action: Vec<Elem>,
    ) -> Self {
        let x = CrossedModule { g1, g0, boundary, action };
        debug_assert!(x.validate().is_ok());
        x
    }

    /// Exhaustive axiom check; the error carries a witness.
    pub fn validate(&self) -> Result<(), XModError> {
        let (g1, g0) = (&*self.g1, &*self.g0);
        let (n1, n0) = (g1.order(), g0.order());
        if self.boundary.len() != n1 || self.boundary.iter().any(|&y| y >= n0) {
            return Err(XModError::Malformed("boundary table has the wrong shape".into()));
        }
        if self.action.len() != n0 * n1 || self.action.iter().any(|&y| y >= n1) {
            return Err(XModError::Malformed("action table has the wrong shape".into()));
        }
        let d = &self.boundary;
        for a in g1.elements() {
            for b in g1.elements() {
                if d[g1.mul(a, b)] != g0.mul(d[a], d[b]) {
                    return Err(XModError::BoundaryNotHomomorphic(a, b));
                }
            }
        }
        for t in g0.elements() {
            let row = self.action_row(t);
            let mut seen = vec![usize::MAX; n1];
            for (x, &y) in row.iter().enumerate() {
                if seen[y] != usize::MAX {
                    return Err(XModError::ActionNotAutomorphic { g0: t, x: seen[y], y: x });
                }
                seen[y] = x;
            }
            for x in g1.elements() {
                for y in g1.elements() {
                    if row[g1.mul(x, y)] != g1.mul(row[x], row[y]) {
                        return Err(XModError::ActionNotAutomorphic { g0: t, x, y });
                    }
                }
            }
        }
        for x in g0.elements() {
            for y in g0.elements() {
                let xy = g0.mul(x, y);
                for h in g1.elements() {
                    if self.act(xy, h) != self.act(x, self.act(y, h)) {
                        return Err(XModError::ActionNotHomomorphic { x, y, g1: h });
                    }
                }
            }
        }
        if let Some(h) = g1.elements().find(|&h| self.act(0, h) != h) {
            return Err(XModError::ActionNotHomomorphic { x: 0, y: 0, g1: h });
        }
        for t in g0.elements() {
            for a in g1.elements() {
                if d[self.act(t, a)] != g0.conj(t, d[a]) {
                    return Err(XModError::Cm1Violated { g0: t, g1: a });
                }
            }
        }
        for a in g1.elements() {
            for h in g1.elements() {
                if self.act(d[a], h) != g1.conj(a, h) {
                    return Err(XModError::Cm2Violated { g1: a, h1: h });
                }
            }
        }
        Ok(())
    }

    pub fn g1(&self) -> &FiniteGroup {
        &self.g1
    }

    pub fn g0(&self) -> &FiniteGroup {
        &self.g0
    }

    pub fn g1_arc(&self) -> &Arc<FiniteGroup> {
        &self.g1
    }

    pub fn g0_arc(&self) -> &Arc<FiniteGroup> {
        &self.g0
    }

    #[inline]
    pub fn d(&self, g1: Elem) -> Elem {
        self.boundary[g1]
    }

    pub fn boundary(&self) -> &[Elem] {
        &self.boundary
    }

    pub fn boundary_hom(&self) -> GroupHom {
        GroupHom::new(self.boundary.clone())
    }

    /// `^{g0}g1`.
    #[inline]
    pub fn act(&self, g0: Elem, g1: Elem) -> Elem {
        self.action[g0 * self.g1.order() + g1]
    }

    pub fn action_row(&self, g0: Elem) -> &[Elem] {
        let n1 = self.g1.order();
        &self.action[g0 * n1..(g0 + 1) * n1]
    }

    pub fn action_table(&self) -> Vec<Vec<Elem>> {
        self.action.chunks(self.g1.order()).map(<[Elem]>::to_vec).collect()
    }

    /// `[|G1|, |G0|]`.
    pub fn order(&self) -> [usize; 2] {
        [self.g1.order(), self.g0.order()]
    }

    pub fn full(&self) -> SubXMod {
        SubXMod { s1: self.g1.whole(), s0: self.g0.whole() }
    }

    pub fn trivial_sub(&self) -> SubXMod {
        SubXMod { s1: self.g1.trivial_subgroup(), s0: self.g0.trivial_subgroup() }
    }

    /// Subcrossed module on the given member sets.
    pub fn sub_xmod(&self, s1: &[Elem], s0: &[Elem]) -> Result<SubXMod, XModError> {
        let s1 = self.g1.subgroup(s1)?;
        let s0 = self.g0.subgroup(s0)?;
        self.check_sub(SubXMod { s1, s0 })
    }

    /// Checks `d(S1) ⊆ S0` and that `S1` is closed under the `S0`-action.
    pub fn check_sub(&self, s: SubXMod) -> Result<SubXMod, XModError> {
        if s.s1.parent_order() != self.g1.order() || s.s0.parent_order() != self.g0.order() {
            return Err(XModError::ParentMismatch);
        }
        if s.s1.members().iter().any(|&x| !s.s0.contains(self.d(x))) {
            return Err(XModError::BoundaryLeavesSubgroup);
        }
        for &t in s.s0.members() {
            if s.s1.members().iter().any(|&x| !s.s1.contains(self.act(t, x))) {
                return Err(XModError::NotActionClosed);
            }
        }
        Ok(s)
    }

    /// `S0 ⊴ G0`, `^{g0}h1 ∈ S1` and `^{h0}g1·g1⁻¹ ∈ S1` for all arguments.
    pub fn is_normal_sub(&self, s: &SubXMod) -> bool {
        let (g1, g0) = (&*self.g1, &*self.g0);
        g0.is_normal(&s.s0)
            && g0.elements().all(|t| s.s1.members().iter().all(|&h| s.s1.contains(self.act(t, h))))
            && s.s0.members().iter().all(|&h0| {
                g1.elements().all(|x| s.s1.contains(g1.mul(self.act(h0, x), g1.inv(x))))
            })
    }

    /// The subobject as a crossed module; element `i` at each level is
    /// `members()[i]` of the corresponding subgroup.
    pub fn restrict(&self, s: &SubXMod) -> CrossedModule {
        let h1 = self.g1.restrict(&s.s1);
        let h0 = self.g0.restrict(&s.s0);
        let boundary = s
            .s1
            .members()
            .iter()
            .map(|&x| s.s0.position(self.d(x)).expect("d(S1) ⊆ S0"))
            .collect();
        let mut action = Vec::with_capacity(h0.order() * h1.order());
        for &t in s.s0.members() {
            for &x in s.s1.members() {
                action.push(s.s1.position(self.act(t, x)).expect("action closed"));
            }
        }
        CrossedModule::from_parts(Arc::new(h1), Arc::new(h0), boundary, action)
    }

    /// Quotient by a normal subcrossed module, with its projection.
    pub fn quotient(&self, n: &SubXMod) -> Result<XModQuotient, XModError> {
        if !self.is_normal_sub(n) {
            return Err(XModError::NotNormal);
        }
        let q1 = self.g1.quotient(&n.s1)?;
        let q0 = self.g0.quotient(&n.s0)?;
        let (k1, k0) = (q1.group.order(), q0.group.order());
        let boundary: Vec<Elem> =
            q1.reps.iter().map(|&r| q0.projection.apply(self.d(r))).collect();
        let mut action = Vec::with_capacity(k0 * k1);
        for &t in &q0.reps {
            for &x in &q1.reps {
                action.push(q1.projection.apply(self.act(t, x)));
            }
        }
        // independence of representatives
        for t in self.g0.elements() {
            let qt = q0.projection.apply(t);
            for x in self.g1.elements() {
                let qx = q1.projection.apply(x);
                if q1.projection.apply(self.act(t, x)) != action[qt * k1 + qx] {
                    return Err(XModError::Malformed("quotient action not well defined".into()));
                }
            }
        }
        let xmod = CrossedModule::new(Arc::new(q1.group), Arc::new(q0.group), boundary, action)?;
        Ok(XModQuotient {
            xmod,
            projection: XModMorphism { alpha: q1.projection, beta: q0.projection },
            reps1: q1.reps,
            reps0: q0.reps,
        })
    }

    /// Levelwise intersection.
    pub fn intersection(&self, h: &SubXMod, k: &SubXMod) -> Result<SubXMod, XModError> {
        self.same_parent(h)?;
        self.same_parent(k)?;
        self.check_sub(SubXMod { s1: h.s1.intersection(&k.s1), s0: h.s0.intersection(&k.s0) })
    }

    /// Levelwise product `H1K1 -> H0K0`; `k` must be normal.
    pub fn product(&self, h: &SubXMod, k: &SubXMod) -> Result<SubXMod, XModError> {
        self.same_parent(h)?;
        self.same_parent(k)?;
        if !self.is_normal_sub(k) {
            return Err(XModError::NotNormal);
        }
        let s1 = product_set(&self.g1, &h.s1, &k.s1);
        let s0 = product_set(&self.g0, &h.s0, &k.s0);
        self.check_sub(SubXMod { s1, s0 })
    }

    fn same_parent(&self, s: &SubXMod) -> Result<(), XModError> {
        if s.s1.parent_order() == self.g1.order() && s.s0.parent_order() == self.g0.order() {
            Ok(())
        } else {
            Err(XModError::ParentMismatch)
        }
    }

    /// Preimage of a subobject of a quotient under its projection.
    pub fn preimage(&self, q: &XModQuotient, s: &SubXMod) -> SubXMod {
        let s1 = self.g1.subgroup_generated(
            &self.g1.elements().filter(|&x| s.s1.contains(q.projection.alpha.apply(x))).collect::<Vec<_>>(),
        );
        let s0 = self.g0.subgroup_generated(
            &self.g0.elements().filter(|&x| s.s0.contains(q.projection.beta.apply(x))).collect::<Vec<_>>(),
        );
        SubXMod { s1, s0 }
    }
}

fn product_set(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut seeds = a.members().to_vec();
    seeds.extend_from_slice(b.members());
    let s = g.subgroup_generated(&seeds);
    debug_assert_eq!(
        s.order() * a.intersection(b).order(),
        a.order() * b.order(),
        "product of subgroups with a normal factor is a subgroup"
    );
    s
}

/// The trivial crossed module `1 -> 1`.
pub fn trivial_xmod() -> CrossedModule {
    let t = Arc::new(FiniteGroup::trivial());
    CrossedModule::from_parts(t.clone(), t, vec![0], vec![0])
}

/// `M -> M` with the identity boundary and conjugation.
pub fn identity_xmod(m: &FiniteGroup) -> CrossedModule {
    let g = Arc::new(m.clone());
    let mut action = Vec::with_capacity(m.order() * m.order());
    for t in m.elements() {
        for x in m.elements() {
            action.push(m.conj(t, x));
        }
    }
    CrossedModule::from_parts(g.clone(), g, m.elements().collect(), action)
}

/// `N -> M` for a normal subgroup `N`, with conjugation.
pub fn inclusion_xmod(m: &FiniteGroup, n: &Subgroup) -> Result<CrossedModule, XModError> {
    if let Some((member, by)) = m.normality_witness(n) {
        return Err(crate::error::GroupError::NotNormal { member, by }.into());
    }
    Ok(identity_xmod(m).restrict(&SubXMod { s1: n.clone(), s0: m.whole() }))
}

/// `K -> L` with the trivial boundary; `action[l][k]` is `^{l}k`.
pub fn module_xmod(
    k: &FiniteGroup,
    l: &FiniteGroup,
    action: Vec<Vec<Elem>>,
) -> Result<CrossedModule, XModError> {
    if !k.is_abelian() {
        return Err(XModError::SourceNotAbelian);
    }
    make_xmod(k.clone(), l.clone(), GroupHom::trivial(k), action)
}

/// `M -> Aut(M)`, `x ↦ c_x`, with the natural action.
pub fn aut_xmod(m: &FiniteGroup, cap: usize) -> Result<CrossedModule, XModError> {
    let aut = automorphism_group(m, cap)?;
    let boundary = m
        .elements()
        .map(|x| {
            let c = GroupHom::new(m.elements().map(|y| m.conj(x, y)).collect());
            aut.index_of(&c).expect("inner automorphisms are automorphisms")
        })
        .collect();
    let action = aut.maps.iter().flat_map(|f| f.images().to_vec()).collect();
    CrossedModule::new(Arc::new(m.clone()), Arc::new(aut.group), boundary, action)
}

/// A subcrossed module of some parent: subgroups at both levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubXMod {
    pub s1: Subgroup,
    pub s0: Subgroup,
}

impl SubXMod {
    pub fn order(&self) -> [usize; 2] {
        [self.s1.order(), self.s0.order()]
    }

    pub fn is_trivial(&self) -> bool {
        self.s1.is_trivial() && self.s0.is_trivial()
    }

    pub fn is_full(&self) -> bool {
        self.s1.is_whole() && self.s0.is_whole()
    }

    pub fn is_subset_of(&self, other: &SubXMod) -> bool {
        self.s1.is_subset_of(&other.s1) && self.s0.is_subset_of(&other.s0)
    }
}

/// Result of [`CrossedModule::quotient`].
#[derive(Debug, Clone)]
pub struct XModQuotient {
    pub xmod: CrossedModule,
    pub projection: XModMorphism,
    pub reps1: Vec<Elem>,
    pub reps0: Vec<Elem>,
}

/// A pair of group maps `(α, β)` between crossed modules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XModMorphism {
    pub alpha: GroupHom,
    pub beta: GroupHom,
}

impl XModMorphism {
    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism { alpha: GroupHom::identity(x.g1()), beta: GroupHom::identity(x.g0()) }
    }

    /// Exhaustive check: homomorphisms, `β∘d = d'∘α`, and equivariance.
    pub fn is_morphism(&self, src: &CrossedModule, tgt: &CrossedModule) -> bool {
        self.alpha.is_hom(src.g1(), tgt.g1())
            && self.beta.is_hom(src.g0(), tgt.g0())
            && src
                .g1()
                .elements()
                .all(|x| self.beta.apply(src.d(x)) == tgt.d(self.alpha.apply(x)))
            && src.g0().elements().all(|t| {
                src.g1().elements().all(|x| {
                    self.alpha.apply(src.act(t, x))
                        == tgt.act(self.beta.apply(t), self.alpha.apply(x))
                })
            })
    }

    pub fn is_isomorphism(&self, src: &CrossedModule, tgt: &CrossedModule) -> bool {
        self.is_morphism(src, tgt)
            && self.alpha.is_bijective(tgt.g1().order())
            && self.beta.is_bijective(tgt.g0().order())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &XModMorphism) -> XModMorphism {
        XModMorphism {
            alpha: self.alpha.compose(&other.alpha),
            beta: self.beta.compose(&other.beta),
        }
    }

    pub fn inverse(&self) -> XModMorphism {
        XModMorphism { alpha: self.alpha.inverse(), beta: self.beta.inverse() }
    }

    /// `(ker α, ker β)`, a normal subobject of the source.
    pub fn kernel(&self, src: &CrossedModule) -> SubXMod {
        SubXMod { s1: self.alpha.kernel(src.g1()), s0: self.beta.kernel(src.g0()) }
    }

    /// `(im α, im β)` in the target.
    pub fn image(&self, tgt: &CrossedModule) -> SubXMod {
        SubXMod { s1: self.alpha.image(tgt.g1()), s0: self.beta.image(tgt.g0()) }
    }
}
