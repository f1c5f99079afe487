//! Derivations, the Whitehead group and actor crossed modules.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::XModError;
use crate::group::{Elem, FiniteGroup, GroupHom};
use crate::xmod::{xmod_automorphisms, CrossedModule, SubXMod, XModMorphism};

/// Default bound on `|G0|` and `|G1|` for derivation enumeration.
pub const DEFAULT_DERIVATION_CAP: usize = 24;
/// Bound on the number of derivations whose circle table is built.
pub const MAX_DERIVATIONS: usize = 1024;
/// Default bound on `|Aut(X)|` for actors.
pub const DEFAULT_AUT_CAP: usize = 512;

/// A derivation `G0 -> G1` as its image table.
pub type Derivation = Vec<Elem>;

/// `∂(xy) = ∂(x)·^{x}∂(y)` for all `x, y`.
pub fn is_derivation(x: &CrossedModule, der: &[Elem]) -> bool {
    let (g1, g0) = (x.g1(), x.g0());
    der.len() == g0.order()
        && der.iter().all(|&v| v < g1.order())
        && g0.elements().all(|a| {
            g0.elements().all(|b| der[g0.mul(a, b)] == g1.mul(der[a], x.act(a, der[b])))
        })
}

/// `(∂1∘∂2)(g) = ∂1(d(∂2 g)·g)·∂2(g)`.
pub fn circle(x: &CrossedModule, d1: &[Elem], d2: &[Elem]) -> Derivation {
    let (g1, g0) = (x.g1(), x.g0());
    g0.elements().map(|g| g1.mul(d1[g0.mul(x.d(d2[g]), g)], d2[g])).collect()
}

/// All derivations with the circle product; index 0 is the zero map.
#[derive(Debug, Clone)]
pub struct DerivationMonoid {
    pub derivations: Vec<Derivation>,
    table: Vec<usize>,
}

impl DerivationMonoid {
    pub fn len(&self) -> usize {
        self.derivations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.derivations.is_empty()
    }

    /// Index of `derivations[i] ∘ derivations[j]`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i * self.len() + j]
    }

    /// Indices with a two-sided inverse.
    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).any(|j| self.compose(i, j) == 0 && self.compose(j, i) == 0))
            .collect()
    }
}

pub fn all_derivations(x: &CrossedModule) -> Result<DerivationMonoid, XModError> {
    all_derivations_capped(x, DEFAULT_DERIVATION_CAP)
}

/// Enumerates generator images and extends each tuple along the Cayley graph
/// of `G0`, keeping the consistent ones.
pub fn all_derivations_capped(x: &CrossedModule, cap: usize) -> Result<DerivationMonoid, XModError> {
    let (g1, g0) = (x.g1(), x.g0());
    if g0.order() > cap || g1.order() > cap {
        return Err(XModError::CapExceeded { cap });
    }
    let gens = g0.generators().to_vec();
    let mut tuple = vec![0; gens.len()];
    let mut derivations = Vec::new();
    loop {
        if let Some(der) = extend(x, &gens, &tuple) {
            derivations.push(der);
            if derivations.len() > MAX_DERIVATIONS {
                return Err(XModError::CapExceeded { cap: MAX_DERIVATIONS });
            }
        }
        // odometer, last position fastest
        let mut i = gens.len();
        loop {
            if i == 0 {
                return Ok(monoid(x, derivations));
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < g1.order() {
                break;
            }
            tuple[i] = 0;
        }
    }
}

fn extend(x: &CrossedModule, gens: &[Elem], images: &[Elem]) -> Option<Derivation> {
    let (g1, g0) = (x.g1(), x.g0());
    let mut der = vec![Elem::MAX; g0.order()];
    der[0] = 0;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let a = queue[head];
        head += 1;
        for (&t, &u) in gens.iter().zip(images) {
            let b = g0.mul(a, t);
            let v = g1.mul(der[a], x.act(a, u));
            if der[b] == Elem::MAX {
                der[b] = v;
                queue.push(b);
            } else if der[b] != v {
                return None;
            }
        }
    }
    Some(der)
}

fn monoid(x: &CrossedModule, derivations: Vec<Derivation>) -> DerivationMonoid {
    let index: HashMap<&Derivation, usize> =
        derivations.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let n = derivations.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &derivations {
        for b in &derivations {
            table.push(index[&circle(x, a, b)]);
        }
    }
    DerivationMonoid { derivations, table }
}

/// A finite group of concrete objects; element `i` is `members[i]`.
#[derive(Debug, Clone)]
pub struct ConcreteGroup<T> {
    pub group: FiniteGroup,
    pub members: Vec<T>,
}

impl<T: Hash + Eq> ConcreteGroup<T> {
    pub fn index_of(&self, m: &T) -> Option<Elem> {
        self.members.iter().position(|x| x == m)
    }
}

/// Tabulates a finite set under `mul` (first member the identity), failing
/// if it is not closed or the table is not a group.
fn tabulate<T: Hash + Eq + Clone>(
    members: Vec<T>,
    mul: impl Fn(&T, &T) -> T,
) -> Result<ConcreteGroup<T>, XModError> {
    let index: HashMap<T, usize> = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(members.len());
    for a in &members {
        let mut row = Vec::with_capacity(members.len());
        for b in &members {
            let c = mul(a, b);
            row.push(*index.get(&c).ok_or_else(|| XModError::Malformed("set is not closed".into()))?);
        }
        rows.push(row);
    }
    let group = FiniteGroup::from_table(&rows)?;
    Ok(ConcreteGroup { group, members })
}

fn dedup<T: Hash + Eq + Clone>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut seen = std::collections::HashSet::new();
    items.into_iter().filter(|t| seen.insert(t.clone())).collect()
}

/// The Whitehead group: units of the circle monoid, zero map first.
pub type WhiteheadGroup = ConcreteGroup<Derivation>;

pub fn whitehead_group(x: &CrossedModule, monoid: &DerivationMonoid) -> WhiteheadGroup {
    let members: Vec<Derivation> =
        monoid.units().into_iter().map(|i| monoid.derivations[i].clone()).collect();
    tabulate(members, |a, b| circle(x, a, b)).expect("units form a group")
}

/// `Aut(X)` under composition `(f∘g)(x) = f(g(x))`, identity first.
pub type XModAutGroup = ConcreteGroup<XModMorphism>;

pub fn xmod_automorphism_group(x: &CrossedModule, cap: usize) -> Result<XModAutGroup, XModError> {
    let maps = xmod_automorphisms(x);
    if maps.len() > cap {
        return Err(XModError::CapExceeded { cap });
    }
    tabulate(maps, |f, g| f.compose(g))
}

/// `η_{g1}(g0) = g1·^{g0}g1⁻¹`.
pub fn principal_derivation(x: &CrossedModule, g1: Elem) -> Derivation {
    let h = x.g1();
    x.g0().elements().map(|t| h.mul(g1, x.act(t, h.inv(g1)))).collect()
}

/// `γ(g0)`: action by `g0` on `G1`, conjugation by `g0` on `G0`.
pub fn inner_automorphism(x: &CrossedModule, g0: Elem) -> XModMorphism {
    XModMorphism {
        alpha: GroupHom::new(x.action_row(g0).to_vec()),
        beta: GroupHom::new(x.g0().elements().map(|t| x.g0().conj(g0, t)).collect()),
    }
}

/// `Δ(∂) = (σ, ρ)`, `σ(g1) = ∂(d g1)·g1`, `ρ(g0) = d(∂ g0)·g0`.
pub fn delta(x: &CrossedModule, der: &[Elem]) -> XModMorphism {
    let (g1, g0) = (x.g1(), x.g0());
    XModMorphism {
        alpha: GroupHom::new(g1.elements().map(|a| g1.mul(der[x.d(a)], a)).collect()),
        beta: GroupHom::new(g0.elements().map(|t| g0.mul(x.d(der[t]), t)).collect()),
    }
}

/// `^{(α,β)}∂ = α∘∂∘β⁻¹`.
pub fn act_on_derivation(f: &XModMorphism, der: &[Elem]) -> Derivation {
    let binv = f.beta.inverse();
    (0..der.len()).map(|t| f.alpha.apply(der[binv.apply(t)])).collect()
}

/// An actor-type crossed module with its concrete carriers.
#[derive(Debug, Clone)]
pub struct ActorXMod {
    pub xmod: CrossedModule,
    pub derivations: WhiteheadGroup,
    pub automorphisms: XModAutGroup,
}

fn assemble(
    x: &CrossedModule,
    ders: WhiteheadGroup,
    auts: XModAutGroup,
    action: impl Fn(&XModMorphism, &Derivation) -> Derivation,
) -> Result<ActorXMod, XModError> {
    let aut_index: HashMap<&XModMorphism, usize> =
        auts.members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let der_index: HashMap<&Derivation, usize> =
        ders.members.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let missing = |what: &str| XModError::Malformed(format!("{what} leaves the carrier"));
    let boundary = ders
        .members
        .iter()
        .map(|d| aut_index.get(&delta(x, d)).copied().ok_or_else(|| missing("boundary")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Vec::with_capacity(auts.members.len() * ders.members.len());
    for f in &auts.members {
        for d in &ders.members {
            table.push(der_index.get(&action(f, d)).copied().ok_or_else(|| missing("action"))?);
        }
    }
    let xmod = CrossedModule::new(
        Arc::new(ders.group.clone()),
        Arc::new(auts.group.clone()),
        boundary,
        table,
    )?;
    Ok(ActorXMod { xmod, derivations: ders, automorphisms: auts })
}

/// `Act(X) = (D(G0, G1) -Δ-> Aut(X))`.
pub fn actor(x: &CrossedModule) -> Result<ActorXMod, XModError> {
    actor_capped(x, DEFAULT_DERIVATION_CAP, DEFAULT_AUT_CAP)
}

pub fn actor_capped(x: &CrossedModule, der_cap: usize, aut_cap: usize) -> Result<ActorXMod, XModError> {
    let w = whitehead_group(x, &all_derivations_capped(x, der_cap)?);
    let auts = xmod_automorphism_group(x, aut_cap)?;
    assemble(x, w, auts, |f, d| act_on_derivation(f, d))
}

/// The canonical morphism `(η, γ): X -> Act(X)` and its image.
pub fn inner_actor(x: &CrossedModule, act: &ActorXMod) -> Result<(XModMorphism, SubXMod), XModError> {
    let missing = || XModError::Malformed("inner element missing from actor".into());
    let alpha = x
        .g1()
        .elements()
        .map(|a| act.derivations.index_of(&principal_derivation(x, a)).ok_or_else(missing))
        .collect::<Result<Vec<_>, _>>()?;
    let beta = x
        .g0()
        .elements()
        .map(|t| act.automorphisms.index_of(&inner_automorphism(x, t)).ok_or_else(missing))
        .collect::<Result<Vec<_>, _>>()?;
    let m = XModMorphism { alpha: GroupHom::new(alpha), beta: GroupHom::new(beta) };
    let image = m.image(&act.xmod);
    Ok((m, image))
}

/// `D_C`: principal derivations, as a group under the circle product.
pub fn class_preserving_derivations(x: &CrossedModule) -> Result<WhiteheadGroup, XModError> {
    let members = dedup(x.g1().elements().map(|a| principal_derivation(x, a)));
    tabulate(members, |a, b| circle(x, a, b))
}

/// `Aut_C`: the pairs `γ(g0)`, as a group under composition.
pub fn class_preserving_auts(x: &CrossedModule) -> Result<XModAutGroup, XModError> {
    let members = dedup(x.g0().elements().map(|t| inner_automorphism(x, t)));
    tabulate(members, |f, g| f.compose(g))
}

/// `Act_C(X) = (D_C -Δ-> Aut_C)` with `^{(α,β)}η_{g1} = η_{α(g1)}`. The
/// action is checked to be independent of the chosen `g1`.
pub fn class_preserving_actor(x: &CrossedModule) -> Result<ActorXMod, XModError> {
    let ders = class_preserving_derivations(x)?;
    let auts = class_preserving_auts(x)?;
    let reps: HashMap<Derivation, Vec<Elem>> = x.g1().elements().fold(HashMap::new(), |mut m, a| {
        m.entry(principal_derivation(x, a)).or_insert_with(Vec::new).push(a);
        m
    });
    for f in &auts.members {
        for (der, gs) in &reps {
            let images = dedup(gs.iter().map(|&a| principal_derivation(x, f.alpha.apply(a))));
            if images.len() != 1 {
                return Err(XModError::Malformed(format!(
                    "induced action depends on the representative of {der:?}"
                )));
            }
        }
    }
    assemble(x, ders, auts, |f, d| {
        let a = reps[d][0];
        principal_derivation(x, f.alpha.apply(a))
    })
}
