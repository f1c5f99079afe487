use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Subgroup};

/// An exact positive integer order whose base-2 logarithm is the displayed
/// invariant. Comparisons are always on the integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Log2Order(pub u64);

impl Log2Order {
    pub fn log2(self) -> f64 {
        (self.0 as f64).log2()
    }

    pub fn is_power_of_two(self) -> bool {
        self.0.is_power_of_two()
    }

    /// log2 rounded half-up to two decimals, e.g. 18 -> "4.17", 3 -> "1.58".
    pub fn render_2dp(self) -> String {
        let hundredths = (self.log2() * 100.0 + 0.5 + 1e-9).floor() as i64;
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }

    /// Integer rendering for exact powers of two, otherwise two decimals.
    pub fn render(self, integral: bool) -> String {
        if integral && self.is_power_of_two() {
            self.0.trailing_zeros().to_string()
        } else {
            self.render_2dp()
        }
    }
}

/// Nilpotency class, or the marker for a lower central series that
/// stabilises above the trivial subgroup. Tables render the marker as `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Nilpotency {
    Class(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn is_nilpotent(self) -> bool {
        matches!(self, Nilpotency::Class(_))
    }
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Class(c) => write!(f, "{c}"),
            Nilpotency::NotNilpotent => f.write_str("0"),
        }
    }
}

/// Classification invariants of a single group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupInvariants {
    /// `|Z ∩ G'| · |G/Z|`.
    pub rank: Log2Order,
    /// `|G' / (Z ∩ G')|`.
    pub middle_length: Log2Order,
    pub nilpotency: Nilpotency,
    pub central_quotient_order: usize,
    /// Orders of `γ₂, γ₃, …` up to the first trivial or repeated term.
    pub gamma_orders: Vec<usize>,
}

/// Cheap isomorphism invariants used to bucket groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupFingerprint {
    pub order: usize,
    pub order_profile: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization_profile: Vec<usize>,
}

impl FiniteGroup {
    /// `γ₁ = G`, `γᵢ₊₁ = [γᵢ, G]`, up to and including the first repeat.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &whole);
            let stable = &next == series.last().unwrap();
            series.push(next);
            if stable {
                return series;
            }
        }
    }

    pub fn nilpotency(&self) -> Nilpotency {
        let series = self.lower_central_series();
        match series.iter().position(Subgroup::is_trivial) {
            // γ_{c+1} trivial at position c
            Some(c) => Nilpotency::Class(c.max(1)),
            None => Nilpotency::NotNilpotent,
        }
    }

    pub fn rank(&self) -> Log2Order {
        let z = self.center();
        let d = self.derived_subgroup();
        let zd = z.intersection(&d).order();
        Log2Order((zd * (self.order() / z.order())) as u64)
    }

    pub fn middle_length(&self) -> Log2Order {
        let z = self.center();
        let d = self.derived_subgroup();
        Log2Order((d.order() / z.intersection(&d).order()) as u64)
    }

    pub fn invariants(&self) -> GroupInvariants {
        let series = self.lower_central_series();
        let mut gamma_orders = Vec::new();
        for w in series.windows(2) {
            if w[1].is_trivial() || w[1] == w[0] {
                break;
            }
            gamma_orders.push(w[1].order());
        }
        GroupInvariants {
            rank: self.rank(),
            middle_length: self.middle_length(),
            nilpotency: self.nilpotency(),
            central_quotient_order: self.order() / self.center().order(),
            gamma_orders,
        }
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let derived = self.derived_subgroup();
        let abelianization = self
            .quotient(&derived)
            .expect("derived subgroup is normal")
            .group
            .order_profile();
        GroupFingerprint {
            order: self.order(),
            order_profile: self.order_profile(),
            center_order: self.center().order(),
            derived_order: derived.order(),
            abelianization_profile: abelianization,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_from_generators, Perm};

    fn grp(gens: &[&str]) -> FiniteGroup {
        let perms: Vec<Perm> = gens.iter().map(|p| p.parse().unwrap()).collect();
        group_from_generators(&perms).unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(Log2Order(18).render_2dp(), "4.17");
        assert_eq!(Log2Order(3).render_2dp(), "1.58");
        assert_eq!(Log2Order(6).render_2dp(), "2.58");
        assert_eq!(Log2Order(9).render_2dp(), "3.17");
        assert_eq!(Log2Order(1).render_2dp(), "0.00");
        assert_eq!(Log2Order(2).render_2dp(), "1.00");
        assert_eq!(Log2Order(8).render(true), "3");
        assert_eq!(Log2Order(1).render(true), "0");
        assert_eq!(Log2Order(3).render(true), "1.58");
        assert_eq!(Nilpotency::NotNilpotent.to_string(), "0");
    }

    #[test]
    fn abelian_invariants() {
        let c6 = grp(&["(0,1,2,3,4,5)"]);
        let inv = c6.invariants();
        assert_eq!(inv.rank, Log2Order(1));
        assert_eq!(inv.middle_length, Log2Order(1));
        assert_eq!(inv.nilpotency, Nilpotency::Class(1));
        assert!(inv.gamma_orders.is_empty());
        let trivial = FiniteGroup::trivial();
        assert_eq!(trivial.nilpotency(), Nilpotency::Class(1));
    }

    #[test]
    fn dihedral_invariants() {
        let d8 = grp(&["(0,1,2,3)", "(1,3)"]);
        let inv = d8.invariants();
        assert_eq!(inv.rank, Log2Order(8));
        assert_eq!(inv.middle_length, Log2Order(1));
        assert_eq!(inv.nilpotency, Nilpotency::Class(2));
        assert_eq!(inv.central_quotient_order, 4);
        assert_eq!(inv.gamma_orders, vec![2]);
    }

    #[test]
    fn dihedral18_invariants() {
        let d18 = grp(&["(0,1,2,3,4,5,6,7,8)", "(1,8)(2,7)(3,6)(4,5)"]);
        let inv = d18.invariants();
        assert_eq!(inv.rank.render_2dp(), "4.17");
        assert_eq!(inv.middle_length.render_2dp(), "3.17");
        assert_eq!(inv.nilpotency, Nilpotency::NotNilpotent);
        assert_eq!(inv.gamma_orders, vec![9]);
    }
}
