use crossmod::catalog::catalog_group;
use crossmod::enumeration::census;
use crossmod::group::{Log2Order, Nilpotency};
use crossmod::invariants::{
    center_checks, center_xmod, derived_subxmod, displacement_subgroup, is_simply_connected,
    lower_central_series, middle_length_of_xmod, nilpotency_class, nilpotency_class_upper,
    rank_of_xmod, relative_commutator, xmod_invariants,
};
use crossmod::isoclinism::is_isoclinic_xmod;
use crossmod::xmod::{identity_xmod, is_isomorphic_xmod, module_xmod, CrossedModule, XModFingerprint};

fn logs(v: [Log2Order; 2]) -> [u32; 2] {
    v.map(|o| o.0.trailing_zeros())
}

#[test]
fn order_16_2_examples() {
    let r = census(16, 2).unwrap();
    let reps = &r.representatives;
    // rank [3,1], middle length [1,0], series X > [4,1] > [2,1] > 1
    let hits: Vec<&CrossedModule> = reps
        .iter()
        .filter(|x| {
            logs(rank_of_xmod(x)) == [3, 1]
                && logs(middle_length_of_xmod(x)) == [1, 0]
                && rank_of_xmod(x).iter().all(|o| o.is_power_of_two())
        })
        .collect();
    assert!(!hits.is_empty());
    for x in &hits {
        let lcs = lower_central_series(x);
        assert_eq!(lcs.sizes(), vec![[16, 2], [4, 1], [2, 1], [1, 1]]);
        assert_eq!(nilpotency_class(x), Nilpotency::Class(3));
    }
    // two members of that family: isoclinic, different fingerprints, not isomorphic
    let pair = hits
        .iter()
        .flat_map(|a| hits.iter().map(move |b| (a, b)))
        .find(|(a, b)| XModFingerprint::of(a) != XModFingerprint::of(b))
        .expect("family has distinguishable members");
    assert!(is_isomorphic_xmod(pair.0, pair.1).is_none());
    assert!(is_isoclinic_xmod(pair.0, pair.1).is_some());
}

#[test]
fn middle_length_bounded_by_rank() {
    for (n, m) in [(4, 4), (8, 8), (16, 2)] {
        for x in &census(n, m).unwrap().representatives {
            let (r, ml) = (rank_of_xmod(x), middle_length_of_xmod(x));
            assert!(ml[0] <= r[0] && ml[1] <= r[1], "{x:?}");
        }
    }
}

#[test]
fn lower_and_upper_series_agree() {
    for (n, m) in [(4, 4), (8, 8)] {
        for x in &census(n, m).unwrap().representatives {
            let lower = nilpotency_class(x);
            let upper = nilpotency_class_upper(x);
            if lower.is_nilpotent() || upper.is_nilpotent() {
                assert_eq!(lower, upper, "{x:?}");
            }
        }
    }
}

#[test]
fn center_and_commutator_are_normal() {
    for x in &census(8, 8).unwrap().representatives {
        let z = center_xmod(x);
        let d = derived_subxmod(x);
        assert!(x.is_normal_sub(&z));
        assert!(x.is_normal_sub(&d));
        assert_eq!(relative_commutator(x, &x.full()).unwrap(), d);
    }
}

#[test]
fn simply_connected_8_8_pass_center_checks() {
    let r = census(8, 8).unwrap();
    let sc: Vec<_> = r.representatives.iter().filter(|x| is_simply_connected(x)).collect();
    assert!(!sc.is_empty());
    for x in sc {
        let c = center_checks(x);
        assert!(c.passes(), "{x:?}: {c:?}");
        assert_eq!(c.displacement_is_derived, Some(true));
    }
}

#[test]
fn inversion_on_c8_displacement_differs_from_derived() {
    let c8 = catalog_group(8, 1).unwrap();
    let c2 = catalog_group(2, 1).unwrap();
    let inv: Vec<usize> = c8.elements().map(|a| c8.inv(a)).collect();
    let x = module_xmod(&c8, &c2, vec![c8.elements().collect(), inv]).unwrap();
    let c = center_checks(&x);
    assert!(!c.simply_connected);
    assert!(c.passes());
    assert!(!c.displacement_equals_derived);
    assert_eq!(displacement_subgroup(&x).order(), 4);
}

#[test]
fn identity_xmods_match_group_invariants() {
    for (o, i) in [(8, 3), (8, 4), (18, 3), (12, 3)] {
        let g = catalog_group(o, i).unwrap();
        let x = identity_xmod(&g);
        let inv = xmod_invariants(&x);
        let gi = g.invariants();
        assert_eq!(inv.nilpotency, gi.nilpotency);
        let c = center_checks(&x);
        assert!(c.simply_connected && c.aspherical && c.passes());
    }
}

#[test]
fn first_8_8_family_is_the_abelian_one() {
    let r = census(8, 8).unwrap();
    let rep = &r.reports[0];
    assert_eq!(rep.member_count, 37);
    assert_eq!(logs(rep.invariants.rank), [0, 0]);
    assert_eq!(logs(rep.invariants.middle_length), [0, 0]);
    assert_eq!(rep.invariants.nilpotency, Nilpotency::Class(1));
    assert_eq!(rep.invariants.central_quotient, [1, 1]);
    assert!(rep.invariants.gamma_sizes.is_empty());
}
