//! Crossed-module isomorphism search: `β` first, then `α` constrained by
//! `β` through the boundary and the action.

use std::ops::ControlFlow;

use super::{CrossedModule, XModMorphism};
use crate::group::{for_each_hom, for_each_iso, Elem, GroupFingerprint, GroupHom, PartialMap, SearchMode};
use crate::invariants::{displacement_subgroup, fixed_points, stabilizer_center};

/// Isomorphism invariants of a crossed module, used to bucket and to reject
/// pairs before backtracking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XModFingerprint {
    pub order: [usize; 2],
    pub kernel_order: usize,
    pub image_order: usize,
    pub fixed_order: usize,
    pub stab_center_order: usize,
    pub displacement_order: usize,
    pub derived0_order: usize,
    pub g1: GroupFingerprint,
    pub g0: GroupFingerprint,
    /// Sorted `(|x|, |d x|)` over `G1`.
    pub boundary_profile: Vec<(usize, usize)>,
    /// Sorted `(|t|, #fixed points of t, t ∈ im d)` over `G0`.
    pub action_profile: Vec<(usize, usize, bool)>,
}

impl XModFingerprint {
    pub fn of(x: &CrossedModule) -> Self {
        let (g1, g0) = (x.g1(), x.g0());
        let image = x.boundary_hom().image(g0);
        let mut boundary_profile: Vec<(usize, usize)> =
            g1.elements().map(|a| (g1.elem_order(a), g0.elem_order(x.d(a)))).collect();
        boundary_profile.sort_unstable();
        let mut action_profile: Vec<(usize, usize, bool)> = g0
            .elements()
            .map(|t| {
                let fixed = g1.elements().filter(|&a| x.act(t, a) == a).count();
                (g0.elem_order(t), fixed, image.contains(t))
            })
            .collect();
        action_profile.sort_unstable();
        XModFingerprint {
            order: x.order(),
            kernel_order: x.boundary_hom().kernel(g1).order(),
            image_order: image.order(),
            fixed_order: fixed_points(x).order(),
            stab_center_order: stabilizer_center(x).order(),
            displacement_order: displacement_subgroup(x).order(),
            derived0_order: g0.derived_subgroup().order(),
            g1: g1.fingerprint(),
            g0: g0.fingerprint(),
            boundary_profile,
            action_profile,
        }
    }
}

/// Visits every isomorphism `x -> y`.
///
/// [`SearchMode::Fast`] rejects on fingerprints and derives `α` from `β`;
/// [`SearchMode::BruteForce`] pairs every bijective `β` with every bijective
/// `α` and checks each pair exhaustively.
pub fn for_each_xmod_iso(
    x: &CrossedModule,
    y: &CrossedModule,
    mode: SearchMode,
    visit: &mut dyn FnMut(&XModMorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if x.order() != y.order() {
        return ControlFlow::Continue(());
    }
    match mode {
        SearchMode::Fast => {
            if XModFingerprint::of(x) != XModFingerprint::of(y) {
                return ControlFlow::Continue(());
            }
            fast_search(x, y, visit)
        }
        SearchMode::BruteForce => brute_search(x, y, visit),
    }
}

fn fast_search(
    x: &CrossedModule,
    y: &CrossedModule,
    visit: &mut dyn FnMut(&XModMorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let (g1, g0, h1) = (x.g1(), x.g0(), y.g1());
    let gens1 = g1.generators().to_vec();
    let gens0 = g0.generators().to_vec();
    let x_image = x.boundary_hom().image(g0);
    let y_image = y.boundary_hom().image(y.g0());
    for_each_iso(g0, y.g0(), &mut |beta| {
        if x_image.members().iter().any(|&t| !y_image.contains(beta[t])) {
            return ControlFlow::Continue(());
        }
        let candidates: Vec<Vec<Elem>> = gens1
            .iter()
            .map(|&a| {
                let target = beta[x.d(a)];
                h1.elements()
                    .filter(|&b| h1.elem_order(b) == g1.elem_order(a) && y.d(b) == target)
                    .collect()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return ControlFlow::Continue(());
        }
        let mut map = PartialMap::new(g1, h1, true);
        let mut extra = |a: Elem, b: Elem, pending: &mut Vec<(Elem, Elem)>| {
            if y.d(b) != beta[x.d(a)] {
                return false;
            }
            for &t in &gens0 {
                pending.push((x.act(t, a), y.act(beta[t], b)));
            }
            true
        };
        alpha_search(&mut map, &gens1, &candidates, 0, &mut extra, &mut |alpha| {
            visit(&XModMorphism {
                alpha: GroupHom::new(alpha.to_vec()),
                beta: GroupHom::new(beta.to_vec()),
            })
        })
    })
}

type Extra<'a> = dyn FnMut(Elem, Elem, &mut Vec<(Elem, Elem)>) -> bool + 'a;

fn alpha_search(
    map: &mut PartialMap<'_, crate::group::FiniteGroup>,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    depth: usize,
    extra: &mut Extra<'_>,
    visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if depth == gens.len() {
        debug_assert!(map.is_complete());
        return visit(map.images());
    }
    for &b in &candidates[depth] {
        let mark = map.mark();
        if map.assign_with(gens[depth], b, extra) {
            alpha_search(map, gens, candidates, depth + 1, extra, visit)?;
        }
        map.rollback(mark);
    }
    ControlFlow::Continue(())
}

fn brute_search(
    x: &CrossedModule,
    y: &CrossedModule,
    visit: &mut dyn FnMut(&XModMorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut alphas = Vec::new();
    let _ = for_each_hom(x.g1(), y.g1(), true, &mut |a| {
        alphas.push(GroupHom::new(a.to_vec()));
        ControlFlow::Continue(())
    });
    if alphas.is_empty() {
        return ControlFlow::Continue(());
    }
    for_each_hom(x.g0(), y.g0(), true, &mut |b| {
        let beta = GroupHom::new(b.to_vec());
        for alpha in &alphas {
            let m = XModMorphism { alpha: alpha.clone(), beta: beta.clone() };
            if m.is_isomorphism(x, y) {
                visit(&m)?;
            }
        }
        ControlFlow::Continue(())
    })
}

pub fn is_isomorphic_xmod(x: &CrossedModule, y: &CrossedModule) -> Option<XModMorphism> {
    is_isomorphic_xmod_with(x, y, SearchMode::Fast)
}

pub fn is_isomorphic_xmod_with(
    x: &CrossedModule,
    y: &CrossedModule,
    mode: SearchMode,
) -> Option<XModMorphism> {
    let mut found = None;
    let _ = for_each_xmod_iso(x, y, mode, &mut |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}

/// `Aut(X)`, identity first.
pub fn xmod_automorphisms(x: &CrossedModule) -> Vec<XModMorphism> {
    let mut out = Vec::new();
    let _ = fast_search(x, x, &mut |m| {
        out.push(m.clone());
        ControlFlow::Continue(())
    });
    let id = XModMorphism::identity(x);
    let pos = out.iter().position(|m| *m == id).expect("identity is an automorphism");
    let first = out.remove(pos);
    out.insert(0, first);
    out
}
