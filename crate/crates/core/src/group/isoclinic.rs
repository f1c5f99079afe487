//! Isoclinism of groups.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::homs::{for_each_iso, PartialMap};
use super::{Elem, FiniteGroup, GroupHom};

/// How isoclinism and isomorphism searches explore candidate maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SearchMode {
    /// Derive forced maps and propagate constraints.
    #[default]
    Fast,
    /// Enumerate every candidate pair and check everything exhaustively.
    BruteForce,
}

/// Witness of an isoclinism `G ~ H`.
///
/// `eta` acts on central-quotient indices, `xi` on positions within the
/// sorted member lists of the derived subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupIsoclinism {
    pub eta: GroupHom,
    pub xi: GroupHom,
}

/// Per-group data needed by isoclinism tests.
pub(crate) struct IsoclinismData {
    pub(crate) quotient: FiniteGroup,
    pub(crate) derived: FiniteGroup,
    /// `comm[a * q + b]`: position in `derived` of `[rep a, rep b]`.
    pub(crate) comm: Vec<Elem>,
}

impl IsoclinismData {
    pub(crate) fn new(g: &FiniteGroup) -> Self {
        let q = g.quotient(&g.center()).expect("center is normal");
        let d = g.derived_subgroup();
        let derived = g.restrict(&d);
        let k = q.group.order();
        let mut comm = Vec::with_capacity(k * k);
        for &a in &q.reps {
            for &b in &q.reps {
                comm.push(d.position(g.commutator(a, b)).expect("commutator in G'"));
            }
        }
        IsoclinismData { quotient: q.group, derived, comm }
    }

    fn k(&self) -> usize {
        self.quotient.order()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.k() == other.k()
            && self.derived.order() == other.derived.order()
            && self.quotient.order_profile() == other.quotient.order_profile()
            && self.derived.order_profile() == other.derived.order_profile()
    }

    /// The commutator map forces `xi`; extend it by closure and check it.
    fn forced_xi(&self, other: &Self, eta: &[Elem]) -> Option<Vec<Elem>> {
        let k = self.k();
        let mut map = PartialMap::new(&self.derived, &other.derived, true);
        for a in 0..k {
            for b in 0..k {
                let x = self.comm[a * k + b];
                let y = other.comm[eta[a] * k + eta[b]];
                if !map.assign(x, y) {
                    return None;
                }
            }
        }
        map.is_complete().then(|| map.images().to_vec())
    }

    fn diagram_commutes(&self, other: &Self, eta: &[Elem], xi: &[Elem]) -> bool {
        let k = self.k();
        (0..k).all(|a| (0..k).all(|b| xi[self.comm[a * k + b]] == other.comm[eta[a] * k + eta[b]]))
    }
}

pub(crate) fn isoclinism_between(
    a: &IsoclinismData,
    b: &IsoclinismData,
    mode: SearchMode,
) -> Option<GroupIsoclinism> {
    if !a.compatible(b) {
        return None;
    }
    let mut found = None;
    let _ = for_each_iso(&a.quotient, &b.quotient, &mut |eta| match mode {
        SearchMode::Fast => match a.forced_xi(b, eta) {
            Some(xi) => {
                found = Some(GroupIsoclinism {
                    eta: GroupHom::new(eta.to_vec()),
                    xi: GroupHom::new(xi),
                });
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        },
        SearchMode::BruteForce => {
            let eta_v = eta.to_vec();
            for_each_iso(&a.derived, &b.derived, &mut |xi| {
                if a.diagram_commutes(b, &eta_v, xi) {
                    found = Some(GroupIsoclinism {
                        eta: GroupHom::new(eta_v.clone()),
                        xi: GroupHom::new(xi.to_vec()),
                    });
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })
        }
    });
    found
}

pub fn is_isoclinic_group(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupIsoclinism> {
    is_isoclinic_group_with(g, h, SearchMode::Fast)
}

pub fn is_isoclinic_group_with(
    g: &FiniteGroup,
    h: &FiniteGroup,
    mode: SearchMode,
) -> Option<GroupIsoclinism> {
    isoclinism_between(&IsoclinismData::new(g), &IsoclinismData::new(h), mode)
}

/// Re-checks a witness from scratch: both maps bijective homomorphisms and
/// the commutator square commuting.
pub fn validate_group_isoclinism(g: &FiniteGroup, h: &FiniteGroup, w: &GroupIsoclinism) -> bool {
    let a = IsoclinismData::new(g);
    let b = IsoclinismData::new(h);
    a.k() == b.k()
        && a.derived.order() == b.derived.order()
        && w.eta.is_hom(&a.quotient, &b.quotient)
        && w.eta.is_bijective(b.k())
        && w.xi.is_hom(&a.derived, &b.derived)
        && w.xi.is_bijective(b.derived.order())
        && a.diagram_commutes(&b, w.eta.images(), w.xi.images())
}

/// Isoclinism families; each family lists indices into `groups`, led by its
/// first occurrence.
pub fn group_family_partition(groups: &[FiniteGroup]) -> Vec<Vec<usize>> {
    group_family_partition_with(groups, SearchMode::Fast)
}

pub fn group_family_partition_with(groups: &[FiniteGroup], mode: SearchMode) -> Vec<Vec<usize>> {
    let data: Vec<IsoclinismData> = groups.iter().map(IsoclinismData::new).collect();
    let mut families: Vec<Vec<usize>> = Vec::new();
    for i in 0..groups.len() {
        match families
            .iter_mut()
            .find(|f| isoclinism_between(&data[f[0]], &data[i], mode).is_some())
        {
            Some(f) => f.push(i),
            None => families.push(vec![i]),
        }
    }
    families
}
