//! Centers, commutators, series and numeric invariants of crossed modules.

use serde::{Deserialize, Serialize};

use crate::error::XModError;
use crate::group::{Elem, Log2Order, Nilpotency, Subgroup};
use crate::xmod::{CrossedModule, SubXMod};

/// `G1^{G0}`: elements of `G1` fixed by every element of `G0`.
pub fn fixed_points(x: &CrossedModule) -> Subgroup {
    let gens0 = x.g0().generators();
    let members: Vec<Elem> =
        x.g1().elements().filter(|&a| gens0.iter().all(|&t| x.act(t, a) == a)).collect();
    x.g1().subgroup(&members).expect("fixed points form a subgroup")
}

/// `St_{G0}(G1)`: elements of `G0` acting trivially.
pub fn stabilizer(x: &CrossedModule) -> Subgroup {
    let members: Vec<Elem> =
        x.g0().elements().filter(|&t| x.action_row(t).iter().enumerate().all(|(a, &b)| a == b)).collect();
    x.g0().subgroup(&members).expect("stabilizer is a subgroup")
}

/// `St_{G0}(G1) ∩ Z(G0)`.
pub fn stabilizer_center(x: &CrossedModule) -> Subgroup {
    stabilizer(x).intersection(&x.g0().center())
}

/// `Z(X) = (G1^{G0} -> St_{G0}(G1) ∩ Z(G0))`.
pub fn center_xmod(x: &CrossedModule) -> SubXMod {
    SubXMod { s1: fixed_points(x), s0: stabilizer_center(x) }
}

/// `D_{G0}(G1) = ⟨^{g0}g1·g1⁻¹⟩`.
pub fn displacement_subgroup(x: &CrossedModule) -> Subgroup {
    displacement_within(x, x.g0().elements(), x.g1().elements())
}

fn displacement_within(
    x: &CrossedModule,
    by: impl IntoIterator<Item = Elem>,
    of: impl IntoIterator<Item = Elem> + Clone,
) -> Subgroup {
    let g1 = x.g1();
    let mut seen = vec![false; g1.order()];
    let mut seeds = Vec::new();
    for t in by {
        for a in of.clone() {
            let c = g1.mul(x.act(t, a), g1.inv(a));
            if !std::mem::replace(&mut seen[c], true) {
                seeds.push(c);
            }
        }
    }
    g1.subgroup_generated(&seeds)
}

/// `[X, X] = (D_{G0}(G1) -> [G0, G0])`.
pub fn derived_subxmod(x: &CrossedModule) -> SubXMod {
    SubXMod { s1: displacement_subgroup(x), s0: x.g0().derived_subgroup() }
}

/// `[N, X]`: level 1 generated by `^{g0}n1·n1⁻¹` and `^{n0}g1·g1⁻¹`,
/// level 0 is `[N0, G0]`.
pub fn relative_commutator(x: &CrossedModule, n: &SubXMod) -> Result<SubXMod, XModError> {
    if !x.is_normal_sub(n) {
        return Err(XModError::NotNormal);
    }
    let g1 = x.g1();
    let a = displacement_within(x, x.g0().elements(), n.s1.members().iter().copied());
    let b = displacement_within(x, n.s0.members().iter().copied(), g1.elements());
    let mut seeds = a.members().to_vec();
    seeds.extend_from_slice(b.members());
    let s1 = g1.subgroup_generated(&seeds);
    let s0 = x.g0().commutator_subgroup(&n.s0, &x.g0().whole());
    Ok(SubXMod { s1, s0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesKind {
    LowerCentral,
    UpperCentral,
    Derived,
}

/// A chain of subcrossed modules, ending at its first repeated term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesRecord {
    pub kind: SeriesKind,
    /// Distinct terms in order; the repeat is not duplicated.
    pub terms: Vec<SubXMod>,
}

impl SeriesRecord {
    pub fn last(&self) -> &SubXMod {
        self.terms.last().expect("series is nonempty")
    }

    pub fn sizes(&self) -> Vec<[usize; 2]> {
        self.terms.iter().map(SubXMod::order).collect()
    }
}

fn iterate(
    kind: SeriesKind,
    first: SubXMod,
    mut step: impl FnMut(&SubXMod) -> SubXMod,
) -> SeriesRecord {
    let mut terms = vec![first];
    loop {
        let next = step(terms.last().unwrap());
        if &next == terms.last().unwrap() {
            return SeriesRecord { kind, terms };
        }
        terms.push(next);
    }
}

/// `Γ₁ = X`, `Γᵢ₊₁ = [Γᵢ, X]`.
pub fn lower_central_series(x: &CrossedModule) -> SeriesRecord {
    iterate(SeriesKind::LowerCentral, x.full(), |t| {
        relative_commutator(x, t).expect("lower central terms are normal")
    })
}

/// `ξ₀ = 1`, `ξᵢ₊₁` the preimage of the center of `X/ξᵢ`.
pub fn upper_central_series(x: &CrossedModule) -> SeriesRecord {
    iterate(SeriesKind::UpperCentral, x.trivial_sub(), |t| {
        let q = x.quotient(t).expect("upper central terms are normal");
        let z = center_xmod(&q.xmod);
        x.preimage(&q, &z)
    })
}

/// `X⁰ = X`, `Xⁿ = [Xⁿ⁻¹, Xⁿ⁻¹]`.
pub fn derived_series(x: &CrossedModule) -> SeriesRecord {
    iterate(SeriesKind::Derived, x.full(), |t| SubXMod {
        s1: displacement_within(x, t.s0.members().iter().copied(), t.s1.members().iter().copied()),
        s0: x.g0().commutator_subgroup(&t.s0, &t.s0),
    })
}

/// Least `c ≥ 1` with `Γ_{c+1}` trivial.
pub fn nilpotency_class(x: &CrossedModule) -> Nilpotency {
    let s = lower_central_series(x);
    match s.terms.iter().position(SubXMod::is_trivial) {
        Some(c) => Nilpotency::Class(c.max(1)),
        None => Nilpotency::NotNilpotent,
    }
}

/// Least `c ≥ 1` with `ξ_c = X`.
pub fn nilpotency_class_upper(x: &CrossedModule) -> Nilpotency {
    let s = upper_central_series(x);
    match s.terms.iter().position(SubXMod::is_full) {
        Some(c) => Nilpotency::Class(c.max(1)),
        None => Nilpotency::NotNilpotent,
    }
}

pub fn is_nilpotent(x: &CrossedModule) -> bool {
    nilpotency_class(x).is_nilpotent()
}

/// Least `n` with `Xⁿ` trivial, or `None` when not solvable.
pub fn derived_length(x: &CrossedModule) -> Option<usize> {
    derived_series(x).terms.iter().position(SubXMod::is_trivial)
}

pub fn is_solvable(x: &CrossedModule) -> bool {
    derived_length(x).is_some()
}

pub fn is_abelian_xmod(x: &CrossedModule) -> bool {
    center_xmod(x).is_full()
}

/// Center contained in the commutator subcrossed module.
pub fn is_stem_xmod(x: &CrossedModule) -> bool {
    center_xmod(x).is_subset_of(&derived_subxmod(x))
}

pub fn is_aspherical(x: &CrossedModule) -> bool {
    x.boundary_hom().kernel(x.g1()).is_trivial()
}

pub fn is_simply_connected(x: &CrossedModule) -> bool {
    x.boundary_hom().image(x.g0()).is_whole()
}

/// `(|G1^{G0} ∩ D|·|G1/G1^{G0}|, |(St∩Z) ∩ G0'|·|G0/(St∩Z)|)`.
pub fn rank_of_xmod(x: &CrossedModule) -> [Log2Order; 2] {
    let z = center_xmod(x);
    let d = derived_subxmod(x);
    let (g1, g0) = (x.g1().order(), x.g0().order());
    [
        Log2Order((z.s1.intersection(&d.s1).order() * (g1 / z.s1.order())) as u64),
        Log2Order((z.s0.intersection(&d.s0).order() * (g0 / z.s0.order())) as u64),
    ]
}

/// `(|D / (G1^{G0} ∩ D)|, |G0' / ((St∩Z) ∩ G0')|)`.
pub fn middle_length_of_xmod(x: &CrossedModule) -> [Log2Order; 2] {
    let z = center_xmod(x);
    let d = derived_subxmod(x);
    [
        Log2Order((d.s1.order() / z.s1.intersection(&d.s1).order()) as u64),
        Log2Order((d.s0.order() / z.s0.intersection(&d.s0).order()) as u64),
    ]
}

/// The invariants reported per family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XModInvariants {
    pub rank: [Log2Order; 2],
    pub middle_length: [Log2Order; 2],
    pub nilpotency: Nilpotency,
    /// `|X / Z(X)|`.
    pub central_quotient: [usize; 2],
    /// Sizes of `Γ₂, Γ₃, …` while nontrivial and not repeated.
    pub gamma_sizes: Vec<[usize; 2]>,
    pub derived_length: Option<usize>,
}

pub fn xmod_invariants(x: &CrossedModule) -> XModInvariants {
    let z = center_xmod(x);
    let lower = lower_central_series(x);
    let gamma_sizes = lower
        .terms
        .iter()
        .skip(1)
        .take_while(|t| !t.is_trivial())
        .map(SubXMod::order)
        .collect();
    let nilpotency = match lower.terms.iter().position(SubXMod::is_trivial) {
        Some(c) => Nilpotency::Class(c.max(1)),
        None => Nilpotency::NotNilpotent,
    };
    XModInvariants {
        rank: rank_of_xmod(x),
        middle_length: middle_length_of_xmod(x),
        nilpotency,
        central_quotient: [x.g1().order() / z.s1.order(), x.g0().order() / z.s0.order()],
        gamma_sizes,
        derived_length: derived_length(x),
    }
}

/// Outcome of the simply-connected and aspherical center checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterChecks {
    pub simply_connected: bool,
    pub aspherical: bool,
    /// `G1^{G0} = Z(G1)`, checked when simply connected.
    pub fixed_is_center: Option<bool>,
    /// `D_{G0}(G1) = [G1, G1]`, checked when simply connected.
    pub displacement_is_derived: Option<bool>,
    /// `St ∩ Z(G0) = Z(G0)`, checked when aspherical.
    pub stab_center_is_center: Option<bool>,
    /// Observed `D_{G0}(G1) = [G1, G1]`, whatever the hypotheses.
    pub displacement_equals_derived: bool,
}

impl CenterChecks {
    pub fn passes(&self) -> bool {
        [self.fixed_is_center, self.displacement_is_derived, self.stab_center_is_center]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

pub fn center_checks(x: &CrossedModule) -> CenterChecks {
    let sc = is_simply_connected(x);
    let asph = is_aspherical(x);
    let d_eq = displacement_subgroup(x) == x.g1().derived_subgroup();
    CenterChecks {
        simply_connected: sc,
        aspherical: asph,
        fixed_is_center: sc.then(|| fixed_points(x) == x.g1().center()),
        displacement_is_derived: sc.then_some(d_eq),
        stab_center_is_center: asph.then(|| stabilizer_center(x) == x.g0().center()),
        displacement_equals_derived: d_eq,
    }
}
