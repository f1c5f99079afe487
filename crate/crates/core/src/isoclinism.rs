//! Commutator pairings and isoclinism of crossed modules.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::XModError;
use crate::group::{is_isoclinic_group, Elem, FiniteGroup, GroupHom, PartialMap, SearchMode};
use crate::invariants::{center_xmod, derived_subxmod, is_aspherical, is_simply_connected, xmod_invariants};
use crate::xmod::{for_each_xmod_iso, CrossedModule, SubXMod, XModMorphism, XModQuotient};

/// The maps `c1(ḡ1, ḡ0) = ^{g0}g1·g1⁻¹` and `c0(ḡ0, ḡ0') = [g0, g0']` on the
/// central quotient, with values in the commutator subcrossed module.
#[derive(Debug, Clone)]
pub struct CommutatorPairing {
    pub quotient: XModQuotient,
    pub derived: SubXMod,
    pub derived_xmod: CrossedModule,
    /// `c1[q1 * k0 + q0]`, a position in `derived.s1`.
    pub c1: Vec<Elem>,
    /// `c0[q0 * k0 + q0']`, a position in `derived.s0`.
    pub c0: Vec<Elem>,
}

impl CommutatorPairing {
    fn k1(&self) -> usize {
        self.quotient.xmod.g1().order()
    }

    fn k0(&self) -> usize {
        self.quotient.xmod.g0().order()
    }

    pub fn c1(&self, q1: Elem, q0: Elem) -> Elem {
        self.c1[q1 * self.k0() + q0]
    }

    pub fn c0(&self, a: Elem, b: Elem) -> Elem {
        self.c0[a * self.k0() + b]
    }

    fn diagrams_commute(&self, other: &Self, eta: &XModMorphism, xi: &XModMorphism) -> bool {
        let (k1, k0) = (self.k1(), self.k0());
        (0..k1).all(|a| {
            (0..k0).all(|b| {
                xi.alpha.apply(self.c1(a, b)) == other.c1(eta.alpha.apply(a), eta.beta.apply(b))
            })
        }) && (0..k0).all(|a| {
            (0..k0).all(|b| {
                xi.beta.apply(self.c0(a, b)) == other.c0(eta.beta.apply(a), eta.beta.apply(b))
            })
        })
    }
}

/// Builds both tables by evaluating on every representative, failing if two
/// representatives of the same cosets disagree.
pub fn commutator_pairing(x: &CrossedModule) -> Result<CommutatorPairing, XModError> {
    let quotient = x.quotient(&center_xmod(x))?;
    let derived = derived_subxmod(x);
    let derived_xmod = x.restrict(&derived);
    let (g1, g0) = (x.g1(), x.g0());
    let k1 = quotient.xmod.g1().order();
    let k0 = quotient.xmod.g0().order();
    let (p1, p0) = (&quotient.projection.alpha, &quotient.projection.beta);
    let mut c1 = vec![Elem::MAX; k1 * k0];
    for a in g1.elements() {
        for t in g0.elements() {
            let v = derived.s1.position(g1.mul(x.act(t, a), g1.inv(a))).expect("value in D");
            let slot = &mut c1[p1.apply(a) * k0 + p0.apply(t)];
            if *slot == Elem::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(XModError::PairingNotWellDefined(a, t));
            }
        }
    }
    let mut c0 = vec![Elem::MAX; k0 * k0];
    for a in g0.elements() {
        for b in g0.elements() {
            let v = derived.s0.position(g0.commutator(a, b)).expect("value in G0'");
            let slot = &mut c0[p0.apply(a) * k0 + p0.apply(b)];
            if *slot == Elem::MAX {
                *slot = v;
            } else if *slot != v {
                return Err(XModError::PairingNotWellDefined(a, b));
            }
        }
    }
    Ok(CommutatorPairing { quotient, derived, derived_xmod, c1, c0 })
}

/// `(η1, η0)` between central quotients and `(ξ1, ξ0)` between commutator
/// subcrossed modules (on member positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoclinismWitness {
    pub quotient_iso: XModMorphism,
    pub derived_iso: XModMorphism,
}

fn forced_xi(a: &CommutatorPairing, b: &CommutatorPairing, eta: &XModMorphism) -> Option<XModMorphism> {
    let (da, db) = (&a.derived_xmod, &b.derived_xmod);
    let mut m1 = PartialMap::new(da.g1(), db.g1(), true);
    for p in 0..a.k1() {
        for q in 0..a.k0() {
            if !m1.assign(a.c1(p, q), b.c1(eta.alpha.apply(p), eta.beta.apply(q))) {
                return None;
            }
        }
    }
    let mut m0 = PartialMap::new(da.g0(), db.g0(), true);
    for p in 0..a.k0() {
        for q in 0..a.k0() {
            if !m0.assign(a.c0(p, q), b.c0(eta.beta.apply(p), eta.beta.apply(q))) {
                return None;
            }
        }
    }
    if !m1.is_complete() || !m0.is_complete() {
        return None;
    }
    let xi = XModMorphism {
        alpha: GroupHom::new(m1.images().to_vec()),
        beta: GroupHom::new(m0.images().to_vec()),
    };
    xi.is_isomorphism(da, db).then_some(xi)
}

pub(crate) fn isoclinism_between(
    a: &CommutatorPairing,
    b: &CommutatorPairing,
    mode: SearchMode,
) -> Option<IsoclinismWitness> {
    if a.quotient.xmod.order() != b.quotient.xmod.order()
        || a.derived_xmod.order() != b.derived_xmod.order()
    {
        return None;
    }
    let mut found = None;
    match mode {
        SearchMode::Fast => {
            let _ = for_each_xmod_iso(&a.quotient.xmod, &b.quotient.xmod, mode, &mut |eta| {
                match forced_xi(a, b, eta) {
                    Some(xi) => {
                        found = Some(IsoclinismWitness { quotient_iso: eta.clone(), derived_iso: xi });
                        ControlFlow::Break(())
                    }
                    None => ControlFlow::Continue(()),
                }
            });
        }
        SearchMode::BruteForce => {
            let mut xis = Vec::new();
            let _ = for_each_xmod_iso(&a.derived_xmod, &b.derived_xmod, mode, &mut |xi| {
                xis.push(xi.clone());
                ControlFlow::Continue(())
            });
            if xis.is_empty() {
                return None;
            }
            let _ = for_each_xmod_iso(&a.quotient.xmod, &b.quotient.xmod, mode, &mut |eta| {
                match xis.iter().find(|xi| a.diagrams_commute(b, eta, xi)) {
                    Some(xi) => {
                        found = Some(IsoclinismWitness {
                            quotient_iso: eta.clone(),
                            derived_iso: xi.clone(),
                        });
                        ControlFlow::Break(())
                    }
                    None => ControlFlow::Continue(()),
                }
            });
        }
    }
    found
}

pub fn is_isoclinic_xmod(x: &CrossedModule, y: &CrossedModule) -> Option<IsoclinismWitness> {
    is_isoclinic_xmod_with(x, y, SearchMode::Fast)
}

pub fn is_isoclinic_xmod_with(
    x: &CrossedModule,
    y: &CrossedModule,
    mode: SearchMode,
) -> Option<IsoclinismWitness> {
    let a = commutator_pairing(x).expect("pairing is well defined");
    let b = commutator_pairing(y).expect("pairing is well defined");
    isoclinism_between(&a, &b, mode)
}

/// Re-checks a witness: both maps bijective crossed-module morphisms and
/// both diagrams commuting on every argument pair.
pub fn validate_isoclinism(x: &CrossedModule, y: &CrossedModule, w: &IsoclinismWitness) -> bool {
    let (Ok(a), Ok(b)) = (commutator_pairing(x), commutator_pairing(y)) else {
        return false;
    };
    a.quotient.xmod.order() == b.quotient.xmod.order()
        && a.derived_xmod.order() == b.derived_xmod.order()
        && w.quotient_iso.is_isomorphism(&a.quotient.xmod, &b.quotient.xmod)
        && w.derived_iso.is_isomorphism(&a.derived_xmod, &b.derived_xmod)
        && a.diagrams_commute(&b, &w.quotient_iso, &w.derived_iso)
}

/// Isoclinism families over `reps`, each led by its first member.
pub fn xmod_family_partition(reps: &[CrossedModule]) -> Vec<Vec<usize>> {
    xmod_family_partition_with(reps, SearchMode::Fast)
}

/// In fast mode pairs whose invariant rows differ are never compared; in
/// brute-force mode every pair goes through the exhaustive check.
pub fn xmod_family_partition_with(reps: &[CrossedModule], mode: SearchMode) -> Vec<Vec<usize>> {
    let data: Vec<(CommutatorPairing, _)> = reps
        .par_iter()
        .map(|x| {
            let inv = xmod_invariants(x);
            let key = (inv.rank, inv.middle_length, inv.nilpotency, inv.central_quotient, inv.gamma_sizes);
            (commutator_pairing(x).expect("pairing is well defined"), key)
        })
        .collect();
    let mut families: Vec<Vec<usize>> = Vec::new();
    for i in 0..reps.len() {
        let hit = families.par_iter().position_first(|f| {
            let lead = f[0];
            (mode == SearchMode::BruteForce || data[lead].1 == data[i].1)
                && isoclinism_between(&data[lead].0, &data[i].0, mode).is_some()
        });
        match hit {
            Some(k) => families[k].push(i),
            None => families.push(vec![i]),
        }
    }
    families
}

/// Canonical witness `H ~ X` when `H·Z(X) = X`: the quotient map induced by
/// inclusion and the identity on commutators. `Ok(None)` means the witness
/// failed validation.
pub fn hz_subxmod_isoclinism(
    x: &CrossedModule,
    h: &SubXMod,
) -> Result<Option<IsoclinismWitness>, XModError> {
    let h = x.check_sub(h.clone())?;
    if !x.product(&h, &center_xmod(x))?.is_full() {
        return Err(XModError::HypothesisFails("H·Z(X) is not all of X".into()));
    }
    let hx = x.restrict(&h);
    let ph = commutator_pairing(&hx)?;
    let px = commutator_pairing(x)?;
    let eta = XModMorphism {
        alpha: GroupHom::new(
            ph.quotient.reps1.iter().map(|&r| px.quotient.projection.alpha.apply(h.s1.members()[r])).collect(),
        ),
        beta: GroupHom::new(
            ph.quotient.reps0.iter().map(|&r| px.quotient.projection.beta.apply(h.s0.members()[r])).collect(),
        ),
    };
    let lift = |sub_in_h: &crate::group::Subgroup, parent_members: &[Elem], target: &crate::group::Subgroup| {
        sub_in_h
            .members()
            .iter()
            .map(|&i| target.position(parent_members[i]))
            .collect::<Option<Vec<Elem>>>()
    };
    let (Some(xi1), Some(xi0)) = (
        lift(&ph.derived.s1, h.s1.members(), &px.derived.s1),
        lift(&ph.derived.s0, h.s0.members(), &px.derived.s0),
    ) else {
        return Ok(None);
    };
    let w = IsoclinismWitness {
        quotient_iso: eta,
        derived_iso: XModMorphism { alpha: GroupHom::new(xi1), beta: GroupHom::new(xi0) },
    };
    Ok(validate_isoclinism(&hx, x, &w).then_some(w))
}

/// Component-level consequences of an isoclinism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentChecks {
    pub g1_isoclinic: bool,
    pub g0_isoclinic: bool,
    pub both_aspherical: bool,
    pub both_simply_connected: bool,
}

impl ComponentChecks {
    pub fn passes(&self) -> bool {
        self.g1_isoclinic && self.g0_isoclinic
    }
}

pub fn component_isoclinism_checks(
    x: &CrossedModule,
    y: &CrossedModule,
    w: &IsoclinismWitness,
) -> ComponentChecks {
    assert!(validate_isoclinism(x, y, w), "component checks need a valid witness");
    let iso = |a: &FiniteGroup, b: &FiniteGroup| is_isoclinic_group(a, b).is_some();
    ComponentChecks {
        g1_isoclinic: iso(x.g1(), y.g1()),
        g0_isoclinic: iso(x.g0(), y.g0()),
        both_aspherical: is_aspherical(x) && is_aspherical(y),
        both_simply_connected: is_simply_connected(x) && is_simply_connected(y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_group;
    use crate::xmod::{identity_xmod, inclusion_xmod, module_xmod};

    #[test]
    fn identity_pairing_matches_group_commutators() {
        let d8 = catalog_group(8, 3).unwrap();
        let x = identity_xmod(&d8);
        let p = commutator_pairing(&x).unwrap();
        let k0 = p.quotient.xmod.g0().order();
        assert_eq!(k0, 4);
        for (i, &a) in p.quotient.reps0.iter().enumerate() {
            for (j, &b) in p.quotient.reps0.iter().enumerate() {
                assert_eq!(p.derived.s0.members()[p.c0(i, j)], d8.commutator(a, b));
            }
        }
    }

    #[test]
    fn abelian_pairing_is_constant() {
        let c4 = catalog_group(4, 1).unwrap();
        let c2 = catalog_group(2, 1).unwrap();
        let x = module_xmod(&c4, &c2, vec![c4.elements().collect(); 2]).unwrap();
        let p = commutator_pairing(&x).unwrap();
        assert!(p.c1.iter().chain(&p.c0).all(|&v| v == 0));
    }

    #[test]
    fn q8_d8_identity_xmods() {
        let q = identity_xmod(&catalog_group(8, 4).unwrap());
        let d = identity_xmod(&catalog_group(8, 3).unwrap());
        let w = is_isoclinic_xmod(&q, &d).unwrap();
        assert!(validate_isoclinism(&q, &d, &w));
        let c = component_isoclinism_checks(&q, &d, &w);
        assert!(c.passes() && c.both_aspherical && c.both_simply_connected);
        let slow = is_isoclinic_xmod_with(&q, &d, SearchMode::BruteForce).unwrap();
        assert!(validate_isoclinism(&q, &d, &slow));
    }

    #[test]
    fn hz_witness() {
        let d8 = catalog_group(8, 3).unwrap();
        let x = identity_xmod(&d8);
        assert!(hz_subxmod_isoclinism(&x, &x.full()).unwrap().is_some());
        assert!(hz_subxmod_isoclinism(&x, &x.trivial_sub()).is_err());
        // D8 ⊂ C2 x D8 with N·Z = M
        let m = catalog_group(16, 11).unwrap();
        let z = m.center();
        let n = m
            .elements()
            .flat_map(|a| m.elements().map(move |b| (a, b)))
            .map(|(a, b)| m.subgroup_generated(&[a, b]))
            .find(|s| s.order() == 8 && !s.members().iter().all(|&e| m.elem_order(e) <= 2) && {
                let mut seeds = s.members().to_vec();
                seeds.extend_from_slice(z.members());
                m.subgroup_generated(&seeds).is_whole() && !m.restrict(s).is_abelian()
            })
            .unwrap();
        let inc = inclusion_xmod(&m, &n).unwrap();
        let id = identity_xmod(&m);
        assert!(is_isoclinic_xmod(&inc, &id).is_some());
    }
}
